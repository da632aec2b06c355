#pragma once

#include <nlohmann/json.hpp>

#include "gmd/portal.hpp"

// Bodies of the management API.
namespace gmd::api {

nlohmann::json to_json(const portal::Catalog& catalog);
portal::Catalog catalog_from_json(const nlohmann::json& j);

nlohmann::json error_body(const portal::PortalError& error);
/// Rebuilds the PortalError carried by an error body; std::nullopt if the
/// body does not name a known error code.
std::optional<portal::PortalError> error_from_body(const nlohmann::json& j);

/// HTTP status for each portal error.
int http_status(portal::ErrorCode code);

inline constexpr const char* kSessionCookie = "gmd_session";

}  // namespace gmd::api
