#pragma once

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace gmd {

class DecimalError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Text is not a plain decimal with at most four fractional digits.
class MalformedDecimal : public DecimalError {
public:
    using DecimalError::DecimalError;
};

/// Text is a well-formed decimal below zero.
class NegativeDecimal : public DecimalError {
public:
    using DecimalError::DecimalError;
};

/**
 * Non-negative exact decimal with up to four fractional digits, stored as
 * an integer count of 1/10000 units.
 *
 * Accepted text: `digits [ "." 1-4 digits ]`. Leading zeros and trailing
 * fractional zeros are accepted on input; to_string() always produces the
 * canonical form ("0", "2", "2.5", "0.0001").
 */
class Decimal {
public:
    static constexpr int kFractionDigits = 4;
    static constexpr std::int64_t kUnitsPerWhole = 10000;
    static constexpr int kMaxIntegerDigits = 14;

    constexpr Decimal() = default;

    static Decimal parse(std::string_view text);
    static Decimal from_units(std::int64_t units);

    constexpr std::int64_t units() const noexcept { return units_; }
    std::string to_string() const;

    friend constexpr auto operator<=>(Decimal, Decimal) = default;

private:
    constexpr explicit Decimal(std::int64_t units) : units_(units) {}

    std::int64_t units_ = 0;
};

}  // namespace gmd
