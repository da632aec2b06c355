#include "gmd/decimal.hpp"

namespace gmd {

namespace {

bool is_digit(char c) { return c >= '0' && c <= '9'; }

}  // namespace

Decimal Decimal::parse(std::string_view text)
{
    const std::string quoted = "\"" + std::string(text) + "\"";
    bool negative = false;
    std::string_view body = text;
    if (!body.empty() && body.front() == '-') {
        negative = true;
        body.remove_prefix(1);
    }

    const auto dot = body.find('.');
    const std::string_view whole = body.substr(0, dot);
    const std::string_view frac = dot == std::string_view::npos ? std::string_view{} : body.substr(dot + 1);

    if (whole.empty() || (dot != std::string_view::npos && frac.empty())) {
        throw MalformedDecimal("not a decimal: " + quoted);
    }
    if (frac.size() > static_cast<std::size_t>(kFractionDigits)) {
        throw MalformedDecimal("more than 4 fractional digits: " + quoted);
    }
    for (char c : whole) {
        if (!is_digit(c)) throw MalformedDecimal("not a decimal: " + quoted);
    }
    for (char c : frac) {
        if (!is_digit(c)) throw MalformedDecimal("not a decimal: " + quoted);
    }

    std::string_view significant = whole;
    while (significant.size() > 1 && significant.front() == '0') significant.remove_prefix(1);
    if (significant.size() > static_cast<std::size_t>(kMaxIntegerDigits)) {
        throw MalformedDecimal("value out of range: " + quoted);
    }

    std::int64_t units = 0;
    for (char c : significant) units = units * 10 + (c - '0');
    std::int64_t frac_units = 0;
    for (int i = 0; i < kFractionDigits; ++i) {
        frac_units *= 10;
        if (static_cast<std::size_t>(i) < frac.size()) frac_units += frac[i] - '0';
    }
    units = units * kUnitsPerWhole + frac_units;

    if (negative && units != 0) {
        throw NegativeDecimal("negative value: " + quoted);
    }
    return Decimal(units);
}

Decimal Decimal::from_units(std::int64_t units)
{
    if (units < 0) throw NegativeDecimal("negative value: " + std::to_string(units) + " units");
    return Decimal(units);
}

std::string Decimal::to_string() const
{
    std::string out = std::to_string(units_ / kUnitsPerWhole);
    std::int64_t frac = units_ % kUnitsPerWhole;
    if (frac == 0) return out;

    std::string digits(kFractionDigits, '0');
    for (int i = kFractionDigits - 1; i >= 0; --i) {
        digits[i] = static_cast<char>('0' + frac % 10);
        frac /= 10;
    }
    while (digits.back() == '0') digits.pop_back();
    out += '.';
    out += digits;
    return out;
}

}  // namespace gmd
