#include "gmd/model.hpp"

#include <cstdint>

namespace gmd {

ServiceRecord to_record(const Service& service)
{
    return ServiceRecord{
        .name = service.service_name,
        .address = service.host_name,
        .provider = service.provider_name,
        .price = service.price,
        .description = service.description,
    };
}

ServiceRecord to_contact_record(const Service& service)
{
    ServiceRecord record;
    record.name = service.service_name;
    record.address = service.host_name;
    return record;
}

const char* to_string(FieldRule rule)
{
    switch (rule) {
    case FieldRule::EmptyField: return "EmptyField";
    case FieldRule::NegativePrice: return "NegativePrice";
    case FieldRule::MalformedDecimal: return "MalformedDecimal";
    case FieldRule::InvalidCharacter: return "InvalidCharacter";
    }
    return "Unknown";
}

namespace {

std::string describe(const std::vector<FieldError>& errors)
{
    std::string out = "validation failed:";
    for (const auto& e : errors) {
        out += ' ';
        out += to_string(e.rule);
        out += '(' + e.field + ')';
    }
    return out;
}

class Checker {
public:
    std::string required(std::string_view field, std::string_view value)
    {
        std::string trimmed = trim(value);
        if (trimmed.empty()) {
            errors_.push_back({FieldRule::EmptyField, std::string(field)});
        } else {
            text(field, trimmed);
        }
        return trimmed;
    }

    void text(std::string_view field, std::string_view value)
    {
        if (!is_xml_safe(value)) errors_.push_back({FieldRule::InvalidCharacter, std::string(field)});
    }

    Decimal price(std::string_view field, std::string_view value)
    {
        try {
            return Decimal::parse(trim(value));
        } catch (const NegativeDecimal&) {
            errors_.push_back({FieldRule::NegativePrice, std::string(field)});
        } catch (const MalformedDecimal&) {
            errors_.push_back({FieldRule::MalformedDecimal, std::string(field)});
        }
        return {};
    }

    void finish()
    {
        if (!errors_.empty()) throw ValidationError(std::move(errors_));
    }

private:
    std::vector<FieldError> errors_;
};

}  // namespace

ValidationError::ValidationError(std::vector<FieldError> errors)
    : std::runtime_error(describe(errors)), errors_(std::move(errors))
{
}

bool ValidationError::has(FieldRule rule, std::string_view field) const
{
    for (const auto& e : errors_) {
        if (e.rule == rule && e.field == field) return true;
    }
    return false;
}

Provider validate_provider(const ProviderInput& candidate)
{
    Checker check;
    Provider p;
    p.provider_name = check.required("provider_name", candidate.provider_name);
    p.login_name = check.required("login_name", candidate.login_name);
    if (candidate.password_digest.empty()) {
        check.required("password_digest", candidate.password_digest);
    }
    p.password_digest = candidate.password_digest;
    p.contact_address = check.required("contact_address", candidate.contact_address);
    p.extra_info = trim(candidate.extra_info);
    check.text("extra_info", p.extra_info);
    check.finish();
    return p;
}

Service validate_service(const ServiceInput& candidate)
{
    Checker check;
    Service s;
    s.service_name = check.required("service_name", candidate.service_name);
    s.service_type = check.required("service_type", candidate.service_type);
    s.provider_name = check.required("provider_name", candidate.provider_name);
    s.host_name = check.required("host_name", candidate.host_name);
    s.application_path = trim(candidate.application_path);
    check.text("application_path", s.application_path);
    s.price.hardware = check.price("hardware", candidate.hardware_price);
    s.price.software = check.price("software", candidate.software_price);
    s.description = candidate.description;
    check.text("description", s.description);
    check.finish();
    return s;
}

bool is_xml_safe(std::string_view text)
{
    std::size_t i = 0;
    while (i < text.size()) {
        const auto c = static_cast<unsigned char>(text[i]);
        if (c < 0x80) {
            if (c < 0x20 && c != '\t' && c != '\n' && c != '\r') return false;
            ++i;
            continue;
        }
        int extra = 0;
        std::uint32_t cp = 0;
        if ((c & 0xE0) == 0xC0) {
            extra = 1;
            cp = c & 0x1F;
        } else if ((c & 0xF0) == 0xE0) {
            extra = 2;
            cp = c & 0x0F;
        } else if ((c & 0xF8) == 0xF0) {
            extra = 3;
            cp = c & 0x07;
        } else {
            return false;
        }
        if (i + extra >= text.size()) return false;
        for (int k = 1; k <= extra; ++k) {
            const auto cc = static_cast<unsigned char>(text[i + k]);
            if ((cc & 0xC0) != 0x80) return false;
            cp = (cp << 6) | (cc & 0x3F);
        }
        static constexpr std::uint32_t kMin[] = {0, 0x80, 0x800, 0x10000};
        if (cp < kMin[extra] || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) return false;
        if (cp == 0xFFFE || cp == 0xFFFF) return false;
        i += extra + 1;
    }
    return true;
}

std::string trim(std::string_view text)
{
    constexpr std::string_view kSpace = " \t\r\n";
    const auto first = text.find_first_not_of(kSpace);
    if (first == std::string_view::npos) return {};
    const auto last = text.find_last_not_of(kSpace);
    return std::string(text.substr(first, last - first + 1));
}

}  // namespace gmd
