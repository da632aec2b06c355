#pragma once

#include <chrono>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "gmd/model.hpp"
#include "gmd/password.hpp"
#include "gmd/repository.hpp"
#include "gmd/session.hpp"

namespace gmd::portal {

enum class ErrorCode { Duplicate, Invalid, AuthFailed, Unauthenticated, Forbidden, NotFound };

const char* to_string(ErrorCode code);
std::optional<ErrorCode> error_code_from_string(std::string_view name);

class PortalError : public std::runtime_error {
public:
    PortalError(ErrorCode code, const std::string& message, std::vector<FieldError> fields = {});

    ErrorCode code() const noexcept { return code_; }
    const std::vector<FieldError>& fields() const noexcept { return fields_; }

private:
    ErrorCode code_;
    std::vector<FieldError> fields_;
};

struct Registration {
    std::string provider_name;
    std::string login_name;
    std::string password;
    std::string contact_address;
    std::string extra_info;
};

struct LoginResult {
    std::string token;
    std::string provider_name;
};

enum class ServiceAction { Add, Update, Remove };
enum class ManageOutcome { Created, Updated, Removed };

struct BrowseView {
    enum class Kind { All, ByType, ByProvider };
    Kind kind = Kind::All;
    std::string value;

    static BrowseView all() { return {}; }
    static BrowseView by_type(std::string type) { return {Kind::ByType, std::move(type)}; }
    static BrowseView by_provider(std::string provider) { return {Kind::ByProvider, std::move(provider)}; }
};

struct CatalogGroup {
    std::string service_type;
    std::vector<Service> services;

    friend bool operator==(const CatalogGroup&, const CatalogGroup&) = default;
};

/// Listing for display: the selected services grouped by type, plus every
/// type in the registry for navigation.
struct Catalog {
    std::vector<std::string> types;
    std::vector<CatalogGroup> groups;

    friend bool operator==(const Catalog&, const Catalog&) = default;
};

struct PortalConfig {
    std::chrono::seconds session_ttl = std::chrono::minutes(30);
    PasswordHashParams hash = PasswordHashParams::interactive();
};

/**
 * Provider administration, service management and browsing.
 *
 * Management calls need a live session token and only ever touch the
 * session provider's own services. Browsing is public.
 */
class Portal {
public:
    Portal(Repository& repository, PortalConfig config, SteadyClock clock = {});

    /// Returns the stored provider with the digest blanked. No session is issued.
    Provider register_provider(const Registration& form);

    /// Unknown login and wrong password both fail with the same AuthFailed error.
    LoginResult login(std::string_view login_name, std::string_view password);

    /// Idempotent; unknown tokens are ignored.
    void logout(std::string_view token);

    Provider whoami(std::string_view token);

    /**
     * Add is an upsert; Update requires the service to exist. The payload's
     * provider is always the session provider: naming any other provider is
     * Forbidden. For Remove only service_name is read.
     */
    ManageOutcome manage_service(std::string_view token, ServiceAction action, ServiceInput payload);

    std::vector<Service> my_services(std::string_view token);

    Catalog browse(const BrowseView& view) const;

    /// Deletes the provider, its services and all of its sessions.
    void remove_own_account(std::string_view token);

    SessionTable& sessions() noexcept { return sessions_; }

private:
    Provider authenticate(std::string_view token);

    Repository& repository_;
    PasswordHasher hasher_;
    SessionTable sessions_;
    std::string decoy_digest_;
};

}  // namespace gmd::portal
