#pragma once

#include <chrono>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "gmd/gqws.hpp"
#include "gmd/model.hpp"
#include "gmd/wire.hpp"

namespace gmd::client {

enum class ErrorKind {
    Remote,     // the service answered status="error"
    Transport,  // connection or HTTP-level failure
    Protocol,   // the answer could not be decoded
    Timeout,
};

const char* to_string(ErrorKind kind);

class GmdError : public std::runtime_error {
public:
    GmdError(ErrorKind kind, const std::string& message);

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

enum class Transport { Bare, Soap };

/**
 * Typed access to the query web service. XML and SOAP stay inside; callers
 * get service records or a GmdError.
 *
 * A client is immutable configuration and can be shared between threads;
 * every call opens its own connection. Nothing is cached, since prices may
 * change between calls.
 */
class GmdClient {
public:
    /// `endpoint` is a URL such as "http://localhost:8100/gqws"; the path
    /// defaults to /gqws when omitted.
    explicit GmdClient(std::string endpoint, Transport transport = Transport::Bare,
                       std::chrono::milliseconds timeout = std::chrono::seconds(10));

    const std::string& endpoint() const noexcept { return endpoint_; }
    Transport transport() const noexcept { return transport_; }
    std::chrono::milliseconds timeout() const noexcept { return timeout_; }

    /// `argument` is required for every kind except All.
    std::vector<ServiceRecord> invoke(gqws::QueryKind kind, std::optional<std::string> argument = std::nullopt) const;

    /// Any constraint combination, including ones without a named method.
    std::vector<ServiceRecord> query(const wire::QueryMessage& message) const;

    /// Sends the message and returns the bare response document exactly as
    /// the service produced it (status="error" included). Only transport
    /// failures throw. For tools that need the wire form.
    std::string exchange(const wire::QueryMessage& message) const;

    std::vector<ServiceRecord> query_service() const;
    std::vector<ServiceRecord> query_service_by_type(std::string service_type) const;
    std::vector<ServiceRecord> query_service_by_host(std::string host_name) const;
    std::vector<ServiceRecord> query_service_by_provider(std::string provider_name) const;
    std::vector<ServiceRecord> query_service_contact(std::string service_type) const;
    std::vector<ServiceRecord> query_price(std::string service_name) const;

private:
    std::string endpoint_;
    std::string origin_;  // scheme://host:port
    std::string path_;
    Transport transport_;
    std::chrono::milliseconds timeout_;
};

/// Splits "http://host:port/path" into origin and path ("/" if none).
std::pair<std::string, std::string> split_url(const std::string& url);

}  // namespace gmd::client
