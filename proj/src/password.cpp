#include "gmd/password.hpp"

#include <sodium.h>

#include <stdexcept>

namespace gmd {

PasswordHashParams PasswordHashParams::interactive()
{
    return {crypto_pwhash_OPSLIMIT_INTERACTIVE, crypto_pwhash_MEMLIMIT_INTERACTIVE};
}

PasswordHashParams PasswordHashParams::minimal()
{
    return {crypto_pwhash_OPSLIMIT_MIN, crypto_pwhash_MEMLIMIT_MIN};
}

PasswordHasher::PasswordHasher(PasswordHashParams params) : params_(params)
{
    if (sodium_init() < 0) throw std::runtime_error("libsodium initialisation failed");
}

std::string PasswordHasher::digest(std::string_view password) const
{
    char out[crypto_pwhash_STRBYTES];
    if (crypto_pwhash_str(out, password.data(), password.size(), params_.ops_limit, params_.mem_limit) != 0) {
        throw std::runtime_error("password hashing ran out of memory");
    }
    return std::string(out);
}

bool PasswordHasher::verify(const std::string& digest, std::string_view password) const
{
    if (digest.size() >= crypto_pwhash_STRBYTES) return false;
    return crypto_pwhash_str_verify(digest.c_str(), password.data(), password.size()) == 0;
}

}  // namespace gmd
