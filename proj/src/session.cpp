#include "gmd/session.hpp"

#include <sodium.h>

#include <array>
#include <stdexcept>

namespace gmd {

SessionTable::SessionTable(std::chrono::seconds idle_ttl, SteadyClock clock)
    : idle_ttl_(idle_ttl), clock_(std::move(clock))
{
    if (sodium_init() < 0) throw std::runtime_error("libsodium initialisation failed");
}

std::chrono::steady_clock::time_point SessionTable::now() const
{
    return clock_ ? clock_() : std::chrono::steady_clock::now();
}

std::string SessionTable::create(std::string login_name)
{
    std::array<unsigned char, 16> raw{};
    randombytes_buf(raw.data(), raw.size());
    constexpr int variant = sodium_base64_VARIANT_URLSAFE_NO_PADDING;
    std::string token(sodium_base64_ENCODED_LEN(raw.size(), variant), '\0');
    sodium_bin2base64(token.data(), token.size(), raw.data(), raw.size(), variant);
    token.resize(token.find('\0'));

    const auto t = now();
    std::lock_guard lock(mutex_);
    std::erase_if(sessions_, [t](const auto& kv) { return kv.second.expires_at <= t; });
    sessions_.insert_or_assign(token, Session{std::move(login_name), t, t + idle_ttl_});
    return token;
}

std::optional<std::string> SessionTable::touch(std::string_view token)
{
    const auto t = now();
    std::lock_guard lock(mutex_);
    const auto it = sessions_.find(std::string(token));
    if (it == sessions_.end()) return std::nullopt;
    if (it->second.expires_at <= t) {
        sessions_.erase(it);
        return std::nullopt;
    }
    it->second.expires_at = t + idle_ttl_;
    return it->second.login_name;
}

void SessionTable::remove(std::string_view token)
{
    std::lock_guard lock(mutex_);
    sessions_.erase(std::string(token));
}

void SessionTable::remove_all_for(std::string_view login_name)
{
    std::lock_guard lock(mutex_);
    std::erase_if(sessions_, [login_name](const auto& kv) { return kv.second.login_name == login_name; });
}

std::size_t SessionTable::size() const
{
    std::lock_guard lock(mutex_);
    return sessions_.size();
}

}  // namespace gmd
