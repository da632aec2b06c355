#include "gmd/store_json.hpp"

#include <stdexcept>

namespace gmd {

using nlohmann::json;

namespace {

std::string string_field(const json& j, const char* key)
{
    const auto it = j.find(key);
    if (it == j.end() || it->is_null()) return {};
    if (!it->is_string()) throw std::invalid_argument(std::string("field '") + key + "' must be a string");
    return it->get<std::string>();
}

const json& array_field(const json& doc, const char* key)
{
    static const json empty = json::array();
    const auto it = doc.find(key);
    if (it == doc.end()) return empty;
    if (!it->is_array()) throw std::invalid_argument(std::string("'") + key + "' must be an array");
    return *it;
}

json parse_object(std::string_view text)
{
    json doc = json::parse(text);
    if (!doc.is_object()) throw std::invalid_argument("top level must be an object");
    return doc;
}

}  // namespace

json to_json(const PriceQuote& price)
{
    return {{"hardware", price.hardware.to_string()}, {"software", price.software.to_string()}};
}

json to_json(const Provider& provider, bool with_digest)
{
    json j = {
        {"provider_name", provider.provider_name},
        {"login_name", provider.login_name},
        {"contact_address", provider.contact_address},
        {"extra_info", provider.extra_info},
    };
    if (with_digest) j["password_digest"] = provider.password_digest;
    return j;
}

json to_json(const Service& service)
{
    return {
        {"service_name", service.service_name},
        {"service_type", service.service_type},
        {"provider_name", service.provider_name},
        {"host_name", service.host_name},
        {"application_path", service.application_path},
        {"price", to_json(service.price)},
        {"description", service.description},
    };
}

ServiceInput service_input_from_json(const json& j)
{
    if (!j.is_object()) throw std::invalid_argument("service entry must be an object");
    ServiceInput in;
    in.service_name = string_field(j, "service_name");
    in.service_type = string_field(j, "service_type");
    in.provider_name = string_field(j, "provider_name");
    in.host_name = string_field(j, "host_name");
    in.application_path = string_field(j, "application_path");
    in.description = string_field(j, "description");
    if (const auto price = j.find("price"); price != j.end()) {
        if (!price->is_object()) throw std::invalid_argument("field 'price' must be an object");
        in.hardware_price = string_field(*price, "hardware");
        in.software_price = string_field(*price, "software");
    }
    return in;
}

ProviderInput provider_input_from_json(const json& j)
{
    if (!j.is_object()) throw std::invalid_argument("provider entry must be an object");
    ProviderInput in;
    in.provider_name = string_field(j, "provider_name");
    in.login_name = string_field(j, "login_name");
    in.password_digest = string_field(j, "password_digest");
    in.contact_address = string_field(j, "contact_address");
    in.extra_info = string_field(j, "extra_info");
    return in;
}

std::string encode_store(const StoreSnapshot& snapshot)
{
    json doc = {{"providers", json::array()}, {"services", json::array()}};
    for (const auto& p : snapshot.providers) doc["providers"].push_back(to_json(p));
    for (const auto& s : snapshot.services) doc["services"].push_back(to_json(s));
    return doc.dump(2) + "\n";
}

StoreSnapshot decode_store(std::string_view text)
{
    try {
        const json doc = parse_object(text);
        StoreSnapshot snap;
        for (const auto& p : array_field(doc, "providers")) {
            snap.providers.push_back(validate_provider(provider_input_from_json(p)));
        }
        for (const auto& s : array_field(doc, "services")) {
            snap.services.push_back(validate_service(service_input_from_json(s)));
        }
        return snap;
    } catch (const json::exception& e) {
        throw StorageError(std::string("store document: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw StorageError(std::string("store document: ") + e.what());
    } catch (const ValidationError& e) {
        throw StorageError(std::string("store document: ") + e.what());
    }
}

Fixture decode_fixture(std::string_view text)
{
    json doc;
    try {
        doc = parse_object(text);
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("fixture is not valid JSON: ") + e.what());
    }
    Fixture fixture;
    for (const auto& p : array_field(doc, "providers")) {
        FixtureProvider fp;
        fp.account = provider_input_from_json(p);
        fp.password = string_field(p, "password");
        fixture.providers.push_back(std::move(fp));
    }
    for (const auto& s : array_field(doc, "services")) {
        fixture.services.push_back(service_input_from_json(s));
    }
    return fixture;
}

}  // namespace gmd
