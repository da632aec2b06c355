#include "gmd/gqws.hpp"

namespace gmd::gqws {

using wire::Detail;
using wire::QueryMessage;
using wire::QueryResponse;

const char* method_name(QueryKind kind)
{
    switch (kind) {
    case QueryKind::All: return "QueryService";
    case QueryKind::ByType: return "QueryServiceByType";
    case QueryKind::ByHost: return "QueryServiceByHost";
    case QueryKind::ByProvider: return "QueryServiceByProvider";
    case QueryKind::ContactByType: return "QueryServiceContact";
    case QueryKind::PriceByName: return "QueryPrice";
    }
    return "Unknown";
}

std::optional<QueryKind> classify(const QueryMessage& q)
{
    const int count = int(q.service_type.has_value()) + int(q.provider_name.has_value()) +
                      int(q.host_name.has_value()) + int(q.service_name.has_value());
    const bool contact = q.detail == Detail::Contact;

    if (count == 0) return contact ? std::nullopt : std::optional(QueryKind::All);
    if (count > 1) return std::nullopt;
    if (q.service_type) return contact ? QueryKind::ContactByType : QueryKind::ByType;
    if (contact) return std::nullopt;
    if (q.host_name) return QueryKind::ByHost;
    if (q.provider_name) return QueryKind::ByProvider;
    return QueryKind::PriceByName;
}

QueryMessage make_query(QueryKind kind, std::string argument)
{
    QueryMessage q;
    switch (kind) {
    case QueryKind::All: break;
    case QueryKind::ByType: q.service_type = std::move(argument); break;
    case QueryKind::ByHost: q.host_name = std::move(argument); break;
    case QueryKind::ByProvider: q.provider_name = std::move(argument); break;
    case QueryKind::ContactByType:
        q.service_type = std::move(argument);
        q.detail = Detail::Contact;
        break;
    case QueryKind::PriceByName: q.service_name = std::move(argument); break;
    }
    return q;
}

QueryResponse QueryProcessor::execute(const QueryMessage& q) const
{
    const ServiceFilter filter{q.service_type, q.provider_name, q.host_name, q.service_name};
    const auto services = repository_.find_services(filter);
    std::string label = q.service_type ? *q.service_type : std::string(wire::kAnyType);

    if (services.empty() && classify(q) == QueryKind::PriceByName) {
        return QueryResponse::error(std::move(label), "no service named '" + *q.service_name + "'");
    }

    std::vector<ServiceRecord> records;
    records.reserve(services.size());
    for (const auto& s : services) {
        records.push_back(q.detail == Detail::Contact ? to_contact_record(s) : to_record(s));
    }
    return QueryResponse::ok(std::move(label), std::move(records));
}

QueryResponse QueryProcessor::query_service() const { return execute(make_query(QueryKind::All)); }

QueryResponse QueryProcessor::query_service_by_type(std::string service_type) const
{
    return execute(make_query(QueryKind::ByType, std::move(service_type)));
}

QueryResponse QueryProcessor::query_service_by_host(std::string host_name) const
{
    return execute(make_query(QueryKind::ByHost, std::move(host_name)));
}

QueryResponse QueryProcessor::query_service_by_provider(std::string provider_name) const
{
    return execute(make_query(QueryKind::ByProvider, std::move(provider_name)));
}

QueryResponse QueryProcessor::query_service_contact(std::string service_type) const
{
    return execute(make_query(QueryKind::ContactByType, std::move(service_type)));
}

QueryResponse QueryProcessor::query_price(std::string service_name) const
{
    return execute(make_query(QueryKind::PriceByName, std::move(service_name)));
}

Reply QueryProcessor::handle_query(std::string_view body, Envelope envelope) const noexcept
{
    const auto package = [envelope](int status, const QueryResponse& response) {
        std::string bare = wire::encode_response(response);
        return Reply{status, envelope == Envelope::Soap ? wire::soap_wrap(bare) : std::move(bare)};
    };

    try {
        try {
            std::string inner;
            std::string_view message = body;
            if (envelope == Envelope::Soap) {
                auto unwrapped = wire::soap_unwrap(body, false);
                if (!unwrapped) {
                    throw wire::ProtocolError(wire::ProtocolErrorCode::UnknownRoot, "expected a SOAP Envelope");
                }
                inner = std::move(*unwrapped);
                message = inner;
            }
            return package(200, execute(wire::decode_query(message)));
        } catch (const wire::ProtocolError& e) {
            return package(400, QueryResponse::error(std::string(wire::kAnyType), e.what()));
        } catch (const std::exception& e) {
            return package(500, QueryResponse::error(std::string(wire::kAnyType), std::string("internal error: ") + e.what()));
        }
    } catch (...) {
        return Reply{500, std::string(wire::kXmlDeclaration) +
                              R"(<service-details type="*" status="error"><reason>internal error</reason></service-details>)"};
    }
}

Reply QueryProcessor::handle_query(std::string_view body) const noexcept
{
    bool soap = false;
    try {
        soap = wire::soap_unwrap(body, false).has_value();
    } catch (...) {
        // Malformed documents are answered on the bare path.
    }
    return handle_query(body, soap ? Envelope::Soap : Envelope::Bare);
}

}  // namespace gmd::gqws
