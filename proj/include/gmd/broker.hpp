#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gmd/client.hpp"
#include "gmd/decimal.hpp"
#include "gmd/model.hpp"

// Price-based service selection for economy-driven schedulers.
namespace gmd::broker {

enum class PricingMode {
    CpuSecond,             // hardware price
    ApplicationOperation,  // software price
};

/// The price component the mode orders by. Throws std::invalid_argument
/// for records without a price (contact-only records).
Decimal price_of(const ServiceRecord& record, PricingMode mode);

/// Ascending by price, ties by (provider, name).
std::vector<ServiceRecord> rank_by_price(std::vector<ServiceRecord> candidates, PricingMode mode);

/// Cheapest candidate whose price is at most `budget_limit` (a per-unit cap)
/// when one is given; std::nullopt if none qualifies.
std::optional<ServiceRecord> select_cheapest(std::span<const ServiceRecord> candidates, PricingMode mode,
                                             std::optional<Decimal> budget_limit = std::nullopt);

// The same, over the services of one type fetched from the directory.

std::vector<ServiceRecord> rank_by_price(const client::GmdClient& client, const std::string& service_type,
                                         PricingMode mode);

std::optional<ServiceRecord> select_cheapest(const client::GmdClient& client, const std::string& service_type,
                                             PricingMode mode, std::optional<Decimal> budget_limit = std::nullopt);

}  // namespace gmd::broker
