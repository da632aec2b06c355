#include "gmd/broker.hpp"

#include <algorithm>
#include <tuple>

namespace gmd::broker {

Decimal price_of(const ServiceRecord& record, PricingMode mode)
{
    if (!record.price) throw std::invalid_argument("service '" + record.name + "' carries no price");
    return mode == PricingMode::CpuSecond ? record.price->hardware : record.price->software;
}

namespace {

bool cheaper(const ServiceRecord& a, const ServiceRecord& b, PricingMode mode)
{
    static const std::string none;
    return std::forward_as_tuple(price_of(a, mode), a.provider ? *a.provider : none, a.name) <
           std::forward_as_tuple(price_of(b, mode), b.provider ? *b.provider : none, b.name);
}

}  // namespace

std::vector<ServiceRecord> rank_by_price(std::vector<ServiceRecord> candidates, PricingMode mode)
{
    std::stable_sort(candidates.begin(), candidates.end(),
                     [mode](const auto& a, const auto& b) { return cheaper(a, b, mode); });
    return candidates;
}

std::optional<ServiceRecord> select_cheapest(std::span<const ServiceRecord> candidates, PricingMode mode,
                                             std::optional<Decimal> budget_limit)
{
    const ServiceRecord* best = nullptr;
    for (const auto& c : candidates) {
        if (budget_limit && price_of(c, mode) > *budget_limit) continue;
        if (best == nullptr || cheaper(c, *best, mode)) best = &c;
    }
    if (best == nullptr) return std::nullopt;
    return *best;
}

std::vector<ServiceRecord> rank_by_price(const client::GmdClient& client, const std::string& service_type,
                                         PricingMode mode)
{
    return rank_by_price(client.query_service_by_type(service_type), mode);
}

std::optional<ServiceRecord> select_cheapest(const client::GmdClient& client, const std::string& service_type,
                                             PricingMode mode, std::optional<Decimal> budget_limit)
{
    const auto candidates = client.query_service_by_type(service_type);
    return select_cheapest(candidates, mode, budget_limit);
}

}  // namespace gmd::broker
