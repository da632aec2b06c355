#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "gmd/model.hpp"
#include "gmd/repository.hpp"

namespace gmd {

// Object-notation forms shared by the store file, the fixture file and the
// management API. Prices are carried as canonical decimal strings.

nlohmann::json to_json(const PriceQuote& price);
nlohmann::json to_json(const Provider& provider, bool with_digest = true);
nlohmann::json to_json(const Service& service);

/// Missing keys read as empty strings. Non-string values throw
/// std::invalid_argument naming the key.
ServiceInput service_input_from_json(const nlohmann::json& j);
ProviderInput provider_input_from_json(const nlohmann::json& j);

std::string encode_store(const StoreSnapshot& snapshot);
/// Throws StorageError on malformed documents or field violations.
StoreSnapshot decode_store(std::string_view text);

/// A fixture has the store's shape, except providers carry a plaintext
/// `password` (they are registered through the API) instead of a digest.
struct FixtureProvider {
    ProviderInput account;
    std::string password;
};

struct Fixture {
    std::vector<FixtureProvider> providers;
    std::vector<ServiceInput> services;
};

/// Throws std::invalid_argument if the document or any entry is malformed.
Fixture decode_fixture(std::string_view text);

}  // namespace gmd
