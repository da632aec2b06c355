#pragma once

#include <chrono>
#include <functional>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>

namespace gmd {

using SteadyClock = std::function<std::chrono::steady_clock::time_point()>;

struct Session {
    std::string login_name;
    std::chrono::steady_clock::time_point created_at;
    std::chrono::steady_clock::time_point expires_at;
};

/**
 * Live login sessions keyed by opaque token. A token is valid while it is in
 * the table and its idle deadline has not passed; every successful lookup
 * pushes the deadline out by the idle TTL. Logging out deletes the binding.
 */
class SessionTable {
public:
    explicit SessionTable(std::chrono::seconds idle_ttl, SteadyClock clock = {});

    /// 128 random bits, URL-safe base64 without padding.
    std::string create(std::string login_name);

    /// Bound login name, or std::nullopt if unknown or expired.
    std::optional<std::string> touch(std::string_view token);

    void remove(std::string_view token);
    void remove_all_for(std::string_view login_name);

    std::size_t size() const;

private:
    std::chrono::steady_clock::time_point now() const;

    std::chrono::seconds idle_ttl_;
    SteadyClock clock_;
    mutable std::mutex mutex_;
    std::unordered_map<std::string, Session> sessions_;
};

}  // namespace gmd
