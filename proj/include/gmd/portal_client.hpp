#pragma once

#include <chrono>
#include <string>
#include <vector>

#include "gmd/client.hpp"
#include "gmd/portal.hpp"
#include "gmd/store_json.hpp"

namespace gmd::client {

/**
 * Management API client used by the command line tool. Failures reported by
 * the server are rethrown as portal::PortalError; connection problems as
 * GmdError(Transport or Timeout).
 */
class PortalClient {
public:
    explicit PortalClient(std::string base_url, std::chrono::milliseconds timeout = std::chrono::seconds(10));

    void set_token(std::string token) { token_ = std::move(token); }
    const std::string& token() const noexcept { return token_; }

    Provider register_provider(const portal::Registration& form) const;
    /// Stores the returned token on this client.
    portal::LoginResult login(const std::string& login_name, const std::string& password);
    void logout();
    Provider whoami() const;

    portal::ManageOutcome add_service(const ServiceInput& service) const;
    void update_service(const ServiceInput& service) const;
    void remove_service(const std::string& service_name) const;
    std::vector<Service> my_services() const;
    void remove_account();

    portal::Catalog browse(const portal::BrowseView& view) const;

private:
    struct Response {
        int status;
        nlohmann::json body;
    };

    Response send(const std::string& method, const std::string& path, const nlohmann::json* body) const;
    static nlohmann::json ok_or_throw(Response response);

    std::string origin_;
    std::string prefix_;
    std::chrono::milliseconds timeout_;
    std::string token_;
};

struct SeedReport {
    int providers_registered = 0;
    int providers_existing = 0;
    int services_created = 0;
    int services_updated = 0;
};

/// Checks every entry locally and throws std::invalid_argument before
/// contacting the server if anything is malformed.
void check_fixture(const Fixture& fixture);

/**
 * Registers the fixture's providers and upserts their services through the
 * API. Re-seeding is idempotent. Each provider is seeded as a unit: if one
 * of a newly registered provider's services is rejected, the account is
 * removed again before the error propagates.
 */
SeedReport seed_fixture(const Fixture& fixture, const std::string& base_url);

}  // namespace gmd::client
