#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "gmd/repository.hpp"
#include "gmd/wire.hpp"

namespace gmd::gqws {

/// The six query methods. Each maps to one constraint shape of QueryMessage.
enum class QueryKind {
    All,            // QueryService()
    ByType,         // QueryServiceByType(serviceType)
    ByHost,         // QueryServiceByHost(hostName)
    ByProvider,     // QueryServiceByProvider(providerName)
    ContactByType,  // QueryServiceContact(serviceType)
    PriceByName,    // QueryPrice(serviceName)
};

inline constexpr QueryKind kAllKinds[] = {QueryKind::All,        QueryKind::ByType,        QueryKind::ByHost,
                                          QueryKind::ByProvider, QueryKind::ContactByType, QueryKind::PriceByName};

/// Method name, e.g. "QueryServiceByType".
const char* method_name(QueryKind kind);

/// Which named method a message corresponds to; std::nullopt for
/// combined-constraint messages, which run as a generic filtered search.
std::optional<QueryKind> classify(const wire::QueryMessage& query);

/// The message for a named method. `argument` is ignored for All.
wire::QueryMessage make_query(QueryKind kind, std::string argument = {});

enum class Envelope { Bare, Soap };

struct Reply {
    int http_status = 200;
    std::string body;
};

/**
 * Parses query messages, runs them against the repository and builds the
 * response. Never throws to its caller: protocol errors become 400 error
 * responses and anything unexpected a 500.
 */
class QueryProcessor {
public:
    explicit QueryProcessor(const Repository& repository) : repository_(repository) {}

    wire::QueryResponse execute(const wire::QueryMessage& query) const;

    wire::QueryResponse query_service() const;
    wire::QueryResponse query_service_by_type(std::string service_type) const;
    wire::QueryResponse query_service_by_host(std::string host_name) const;
    wire::QueryResponse query_service_by_provider(std::string provider_name) const;
    wire::QueryResponse query_service_contact(std::string service_type) const;
    wire::QueryResponse query_price(std::string service_name) const;

    Reply handle_query(std::string_view body, Envelope envelope) const noexcept;

    /// As handle_query, choosing the envelope by looking at the root element.
    Reply handle_query(std::string_view body) const noexcept;

private:
    const Repository& repository_;
};

}  // namespace gmd::gqws
