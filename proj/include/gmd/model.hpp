#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "gmd/decimal.hpp"

namespace gmd {

/// Hardware price is per CPU-second, software price per Application Operation.
struct PriceQuote {
    Decimal hardware;
    Decimal software;

    friend bool operator==(const PriceQuote&, const PriceQuote&) = default;
};

struct Provider {
    std::string provider_name;
    std::string login_name;
    std::string password_digest;
    std::string contact_address;
    std::string extra_info;

    friend bool operator==(const Provider&, const Provider&) = default;
};

struct Service {
    std::string service_name;
    std::string service_type;
    std::string provider_name;
    std::string host_name;
    std::string application_path;
    PriceQuote price;
    std::string description;

    friend bool operator==(const Service&, const Service&) = default;
};

/**
 * What a query returns for one service. `name` and `address` (the host name)
 * are always present; a contact-only record carries nothing else. Full records
 * carry provider, price and description as well. The application path is
 * never part of a record.
 */
struct ServiceRecord {
    std::string name;
    std::string address;
    std::optional<std::string> provider;
    std::optional<PriceQuote> price;
    std::optional<std::string> description;

    bool is_contact_only() const { return !provider && !price && !description; }

    friend bool operator==(const ServiceRecord&, const ServiceRecord&) = default;
};

ServiceRecord to_record(const Service& service);
ServiceRecord to_contact_record(const Service& service);

// Unvalidated input, as it arrives from a form, a fixture or the API.
struct ProviderInput {
    std::string provider_name;
    std::string login_name;
    std::string password_digest;
    std::string contact_address;
    std::string extra_info;
};

struct ServiceInput {
    std::string service_name;
    std::string service_type;
    std::string provider_name;
    std::string host_name;
    std::string application_path;
    std::string hardware_price;
    std::string software_price;
    std::string description;
};

enum class FieldRule {
    EmptyField,
    NegativePrice,
    MalformedDecimal,
    InvalidCharacter,
};

const char* to_string(FieldRule rule);

struct FieldError {
    FieldRule rule;
    std::string field;

    friend bool operator==(const FieldError&, const FieldError&) = default;
};

class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(std::vector<FieldError> errors);

    const std::vector<FieldError>& errors() const noexcept { return errors_; }
    bool has(FieldRule rule, std::string_view field) const;

private:
    std::vector<FieldError> errors_;
};

/// Trims the text fields and checks field shape. Uniqueness is the
/// repository's business. Throws ValidationError listing every violation.
Provider validate_provider(const ProviderInput& candidate);

/// As validate_provider; prices are parsed as exact decimals.
Service validate_service(const ServiceInput& candidate);

/// True if the text can be carried in an XML 1.0 document: valid UTF-8 and
/// no C0 control characters other than tab, line feed and carriage return.
bool is_xml_safe(std::string_view text);

std::string trim(std::string_view text);

}  // namespace gmd
