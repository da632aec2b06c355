#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "gmd/model.hpp"

// XML query and response messages exchanged with the query web service.
//
// Writers emit one canonical form: UTF-8, no whitespace between elements,
// children in fixed order, empty leaves self-closed. Readers accept any
// insignificant whitespace and any child order.
namespace gmd::wire {

inline constexpr std::string_view kXmlDeclaration = R"(<?xml version="1.0" encoding="UTF-8"?>)";

/// Wildcard type label for responses to queries without a type constraint.
inline constexpr std::string_view kAnyType = "*";

enum class Detail { Full, Contact };

/**
 * Constraints of a `<query_service>` message; each is optional and they
 * combine as a conjunction. `service_type` and `provider_name` are the
 * elements shown in the original message format; `host_name`,
 * `service_name` and `<detail>contact</detail>` extend it for the by-host,
 * price and contact queries.
 */
struct QueryMessage {
    std::optional<std::string> service_type;
    std::optional<std::string> provider_name;
    std::optional<std::string> host_name;
    std::optional<std::string> service_name;
    Detail detail = Detail::Full;

    friend bool operator==(const QueryMessage&, const QueryMessage&) = default;
};

enum class Status { Ok, Error };

struct QueryResponse {
    std::string type_label{kAnyType};
    Status status = Status::Ok;
    std::vector<ServiceRecord> services;  // only when status is Ok
    std::string reason;                   // only when status is Error

    static QueryResponse ok(std::string type_label, std::vector<ServiceRecord> services);
    static QueryResponse error(std::string type_label, std::string reason);

    friend bool operator==(const QueryResponse&, const QueryResponse&) = default;
};

enum class ProtocolErrorCode {
    MalformedXml,
    UnknownRoot,
    UnknownElement,
    DuplicateConstraint,
    MissingStatus,
    BadPrice,
};

const char* to_string(ProtocolErrorCode code);

class ProtocolError : public std::runtime_error {
public:
    ProtocolError(ProtocolErrorCode code, const std::string& detail);

    ProtocolErrorCode code() const noexcept { return code_; }

private:
    ProtocolErrorCode code_;
};

std::string encode_query(const QueryMessage& query);
QueryMessage decode_query(std::string_view xml);

std::string encode_response(const QueryResponse& response);
QueryResponse decode_response(std::string_view xml);

// SOAP 1.1 shim: a fixed Envelope/Body around the bare message.

inline constexpr std::string_view kSoapEnvelopeNs = "http://schemas.xmlsoap.org/soap/envelope/";

/// Wraps a bare message. A leading XML declaration moves to the envelope.
std::string soap_wrap(std::string_view bare);

/// If the document is a SOAP Envelope, returns the exact bytes of the single
/// element inside its Body; otherwise std::nullopt. A leading XML declaration
/// is re-attached when `with_declaration` is set, so unwrapping a wrapped
/// response yields the bare bytes again. Throws ProtocolError for malformed
/// XML or an Envelope without exactly one Body child.
std::optional<std::string> soap_unwrap(std::string_view document, bool with_declaration);

}  // namespace gmd::wire
