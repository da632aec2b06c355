#pragma once

#include <cstddef>
#include <string>
#include <string_view>

namespace gmd {

/// Argon2id cost parameters. The digest string records them, so digests made
/// under one setting still verify after the setting changes.
struct PasswordHashParams {
    unsigned long long ops_limit;
    std::size_t mem_limit;

    static PasswordHashParams interactive();
    /// Cheapest setting libsodium allows; for tests only.
    static PasswordHashParams minimal();
};

class PasswordHasher {
public:
    explicit PasswordHasher(PasswordHashParams params = PasswordHashParams::interactive());

    /// Salted digest in the standard `$argon2id$...` encoding.
    std::string digest(std::string_view password) const;

    /// Constant-time with respect to the password. False for unparsable digests.
    bool verify(const std::string& digest, std::string_view password) const;

private:
    PasswordHashParams params_;
};

}  // namespace gmd
