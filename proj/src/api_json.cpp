#include "gmd/api_json.hpp"

#include "gmd/store_json.hpp"

namespace gmd::api {

using nlohmann::json;

json to_json(const portal::Catalog& catalog)
{
    json groups = json::array();
    for (const auto& g : catalog.groups) {
        json services = json::array();
        for (const auto& s : g.services) services.push_back(gmd::to_json(s));
        groups.push_back({{"service_type", g.service_type}, {"services", std::move(services)}});
    }
    return {{"types", catalog.types}, {"groups", std::move(groups)}};
}

portal::Catalog catalog_from_json(const json& j)
{
    portal::Catalog catalog;
    catalog.types = j.at("types").get<std::vector<std::string>>();
    for (const auto& g : j.at("groups")) {
        portal::CatalogGroup group;
        group.service_type = g.at("service_type").get<std::string>();
        for (const auto& s : g.at("services")) group.services.push_back(validate_service(service_input_from_json(s)));
        catalog.groups.push_back(std::move(group));
    }
    return catalog;
}

json error_body(const portal::PortalError& error)
{
    json fields = json::array();
    for (const auto& f : error.fields()) fields.push_back({{"rule", gmd::to_string(f.rule)}, {"field", f.field}});
    return {{"error", portal::to_string(error.code())}, {"message", error.what()}, {"fields", std::move(fields)}};
}

std::optional<portal::PortalError> error_from_body(const json& j)
{
    if (!j.is_object() || !j.contains("error") || !j["error"].is_string()) return std::nullopt;
    const auto code = portal::error_code_from_string(j["error"].get<std::string>());
    if (!code) return std::nullopt;

    std::vector<FieldError> fields;
    if (const auto it = j.find("fields"); it != j.end() && it->is_array()) {
        for (const auto& f : *it) {
            const auto rule_name = f.value("rule", "");
            for (auto rule : {FieldRule::EmptyField, FieldRule::NegativePrice, FieldRule::MalformedDecimal,
                              FieldRule::InvalidCharacter}) {
                if (rule_name == gmd::to_string(rule)) fields.push_back({rule, f.value("field", "")});
            }
        }
    }
    return portal::PortalError(*code, j.value("message", portal::to_string(*code)), std::move(fields));
}

int http_status(portal::ErrorCode code)
{
    switch (code) {
    case portal::ErrorCode::Duplicate: return 409;
    case portal::ErrorCode::Invalid: return 422;
    case portal::ErrorCode::AuthFailed: return 401;
    case portal::ErrorCode::Unauthenticated: return 401;
    case portal::ErrorCode::Forbidden: return 403;
    case portal::ErrorCode::NotFound: return 404;
    }
    return 500;
}

}  // namespace gmd::api
