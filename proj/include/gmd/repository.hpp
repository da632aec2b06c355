#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <shared_mutex>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "gmd/model.hpp"

namespace gmd {

class StorageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class AddProviderResult { Ok, DuplicateLoginName, DuplicateProviderName };
enum class UpsertResult { Created, Updated, UnknownProvider };
enum class RemoveResult { Ok, NotFound };

/// Conjunction of optional exact-match constraints; empty matches everything.
struct ServiceFilter {
    std::optional<std::string> by_type;
    std::optional<std::string> by_provider;
    std::optional<std::string> by_host;
    std::optional<std::string> by_name;

    bool matches(const Service& service) const;
};

/// Whole-store value, sorted the same way every list result is.
struct StoreSnapshot {
    std::vector<Provider> providers;  // by provider_name
    std::vector<Service> services;    // by (provider_name, service_name)

    friend bool operator==(const StoreSnapshot&, const StoreSnapshot&) = default;
};

/**
 * Providers and services with the uniqueness and foreign-reference rules
 * enforced. Readers run concurrently; writers are serialized and each
 * mutation is all-or-nothing.
 *
 * The file-backed store rewrites its whole document on every mutation
 * (temp file, fsync, rename). If the write fails the in-memory state is left
 * as it was and StorageError is thrown.
 */
class Repository {
public:
    enum class Backend { InMemory, FileBacked };

    Repository();
    explicit Repository(std::filesystem::path store_file);

    Repository(const Repository&) = delete;
    Repository& operator=(const Repository&) = delete;

    Backend backend() const noexcept { return path_ ? Backend::FileBacked : Backend::InMemory; }

    AddProviderResult add_provider(Provider provider);
    /// Removes the provider and, in the same mutation, all of its services.
    RemoveResult remove_provider(std::string_view provider_name);
    UpsertResult upsert_service(Service service);
    RemoveResult remove_service(std::string_view provider_name, std::string_view service_name);

    std::vector<Service> find_services(const ServiceFilter& filter) const;
    /// Password digests are blanked.
    std::vector<Provider> list_providers() const;

    std::optional<Provider> find_provider_by_login(std::string_view login_name) const;
    std::optional<Provider> find_provider(std::string_view provider_name) const;
    std::optional<Service> find_service(std::string_view provider_name, std::string_view service_name) const;

    StoreSnapshot snapshot() const;

    /// Rewrites the store file from memory. No-op for the in-memory backend.
    void flush();

private:
    struct State {
        std::map<std::string, Provider, std::less<>> by_login;
        std::map<std::string, std::string, std::less<>> login_by_name;
        std::map<std::pair<std::string, std::string>, Service> services;
    };

    template <typename Mutation>
    auto mutate(Mutation&& mutation);

    void persist(const State& state) const;
    static StoreSnapshot to_snapshot(const State& state);
    static State from_snapshot(const StoreSnapshot& snapshot);

    std::optional<std::filesystem::path> path_;
    mutable std::shared_mutex mutex_;
    State state_;
};

}  // namespace gmd
