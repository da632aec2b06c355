#include "gmd/client.hpp"

#include <httplib.h>

namespace gmd::client {

const char* to_string(ErrorKind kind)
{
    switch (kind) {
    case ErrorKind::Remote: return "Remote";
    case ErrorKind::Transport: return "Transport";
    case ErrorKind::Protocol: return "Protocol";
    case ErrorKind::Timeout: return "Timeout";
    }
    return "Unknown";
}

GmdError::GmdError(ErrorKind kind, const std::string& message) : std::runtime_error(message), kind_(kind) {}

std::pair<std::string, std::string> split_url(const std::string& url)
{
    const auto scheme = url.find("://");
    const auto host_start = scheme == std::string::npos ? 0 : scheme + 3;
    const auto slash = url.find('/', host_start);
    if (slash == std::string::npos) return {url, "/"};
    return {url.substr(0, slash), url.substr(slash)};
}

GmdClient::GmdClient(std::string endpoint, Transport transport, std::chrono::milliseconds timeout)
    : endpoint_(std::move(endpoint)), transport_(transport), timeout_(timeout)
{
    if (endpoint_.empty()) throw std::invalid_argument("endpoint must not be empty");
    if (timeout_.count() <= 0) throw std::invalid_argument("timeout must be positive");
    std::tie(origin_, path_) = split_url(endpoint_);
    if (path_ == "/") path_ = "/gqws";
}

std::string GmdClient::exchange(const wire::QueryMessage& message) const
{
    httplib::Client http(origin_);
    http.set_connection_timeout(timeout_);
    http.set_read_timeout(timeout_);
    http.set_write_timeout(timeout_);

    std::string body = wire::encode_query(message);
    if (transport_ == Transport::Soap) body = wire::soap_wrap(body);

    const auto started = std::chrono::steady_clock::now();
    auto result = http.Post(path_, body, "text/xml; charset=utf-8");
    if (!result) {
        const auto error = result.error();
        const bool timed_out = error == httplib::Error::ConnectionTimeout ||
                               (error == httplib::Error::Read && std::chrono::steady_clock::now() - started >= timeout_);
        throw GmdError(timed_out ? ErrorKind::Timeout : ErrorKind::Transport,
                       endpoint_ + ": " + httplib::to_string(error));
    }
    const int status = result->status;
    if (status != 200 && status != 400 && status != 500) {
        throw GmdError(ErrorKind::Transport, endpoint_ + ": unexpected HTTP status " + std::to_string(status));
    }
    if (transport_ == Transport::Bare) return std::move(result->body);

    try {
        auto inner = wire::soap_unwrap(result->body, true);
        if (!inner) throw GmdError(ErrorKind::Protocol, endpoint_ + ": expected a SOAP Envelope in the response");
        return std::move(*inner);
    } catch (const wire::ProtocolError& e) {
        throw GmdError(ErrorKind::Protocol, endpoint_ + ": " + e.what());
    }
}

std::vector<ServiceRecord> GmdClient::query(const wire::QueryMessage& message) const
{
    const std::string raw = exchange(message);
    wire::QueryResponse response;
    try {
        response = wire::decode_response(raw);
    } catch (const wire::ProtocolError& e) {
        throw GmdError(ErrorKind::Protocol, endpoint_ + ": " + e.what());
    }
    if (response.status == wire::Status::Error) throw GmdError(ErrorKind::Remote, response.reason);
    return std::move(response.services);
}

std::vector<ServiceRecord> GmdClient::invoke(gqws::QueryKind kind, std::optional<std::string> argument) const
{
    if (kind != gqws::QueryKind::All && !argument) {
        throw std::invalid_argument(std::string(gqws::method_name(kind)) + " needs an argument");
    }
    return query(gqws::make_query(kind, argument.value_or("")));
}

std::vector<ServiceRecord> GmdClient::query_service() const { return invoke(gqws::QueryKind::All); }

std::vector<ServiceRecord> GmdClient::query_service_by_type(std::string service_type) const
{
    return invoke(gqws::QueryKind::ByType, std::move(service_type));
}

std::vector<ServiceRecord> GmdClient::query_service_by_host(std::string host_name) const
{
    return invoke(gqws::QueryKind::ByHost, std::move(host_name));
}

std::vector<ServiceRecord> GmdClient::query_service_by_provider(std::string provider_name) const
{
    return invoke(gqws::QueryKind::ByProvider, std::move(provider_name));
}

std::vector<ServiceRecord> GmdClient::query_service_contact(std::string service_type) const
{
    return invoke(gqws::QueryKind::ContactByType, std::move(service_type));
}

std::vector<ServiceRecord> GmdClient::query_price(std::string service_name) const
{
    return invoke(gqws::QueryKind::PriceByName, std::move(service_name));
}

}  // namespace gmd::client
