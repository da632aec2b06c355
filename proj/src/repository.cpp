#include "gmd/repository.hpp"

#include <fcntl.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <fstream>
#include <mutex>
#include <sstream>

#include "gmd/store_json.hpp"

namespace gmd {

bool ServiceFilter::matches(const Service& service) const
{
    return (!by_type || service.service_type == *by_type) && (!by_provider || service.provider_name == *by_provider) &&
           (!by_host || service.host_name == *by_host) && (!by_name || service.service_name == *by_name);
}

namespace {

[[noreturn]] void throw_errno(const std::string& what, const std::filesystem::path& path)
{
    throw StorageError(what + " " + path.string() + ": " + std::strerror(errno));
}

void write_all(int fd, std::string_view data, const std::filesystem::path& path)
{
    while (!data.empty()) {
        const ssize_t n = ::write(fd, data.data(), data.size());
        if (n < 0) {
            if (errno == EINTR) continue;
            throw_errno("write", path);
        }
        data.remove_prefix(static_cast<std::size_t>(n));
    }
}

void atomic_rewrite(const std::filesystem::path& path, std::string_view contents)
{
    auto tmp = path;
    tmp += ".tmp";

    const int fd = ::open(tmp.c_str(), O_WRONLY | O_CREAT | O_TRUNC | O_CLOEXEC, 0600);
    if (fd < 0) throw_errno("open", tmp);
    try {
        write_all(fd, contents, tmp);
        if (::fsync(fd) != 0) throw_errno("fsync", tmp);
    } catch (...) {
        ::close(fd);
        ::unlink(tmp.c_str());
        throw;
    }
    if (::close(fd) != 0) throw_errno("close", tmp);
    if (::rename(tmp.c_str(), path.c_str()) != 0) {
        ::unlink(tmp.c_str());
        throw_errno("rename", path);
    }

    auto dir = path.parent_path();
    if (dir.empty()) dir = ".";
    const int dfd = ::open(dir.c_str(), O_RDONLY | O_DIRECTORY | O_CLOEXEC);
    if (dfd >= 0) {
        ::fsync(dfd);
        ::close(dfd);
    }
}

}  // namespace

Repository::Repository() = default;

Repository::Repository(std::filesystem::path store_file) : path_(std::move(store_file))
{
    std::error_code ec;
    if (!std::filesystem::exists(*path_, ec)) {
        persist(state_);
        return;
    }
    std::ifstream in(*path_, std::ios::binary);
    if (!in) throw StorageError("cannot read store " + path_->string());
    std::ostringstream buf;
    buf << in.rdbuf();
    state_ = from_snapshot(decode_store(buf.str()));
}

template <typename Mutation>
auto Repository::mutate(Mutation&& mutation)
{
    std::unique_lock lock(mutex_);
    if (!path_) return mutation(state_);

    State staged = state_;
    auto result = mutation(staged);
    persist(staged);
    state_ = std::move(staged);
    return result;
}

AddProviderResult Repository::add_provider(Provider provider)
{
    return mutate([&](State& s) {
        if (s.by_login.contains(provider.login_name)) return AddProviderResult::DuplicateLoginName;
        if (s.login_by_name.contains(provider.provider_name)) return AddProviderResult::DuplicateProviderName;
        s.login_by_name.emplace(provider.provider_name, provider.login_name);
        std::string login = provider.login_name;
        s.by_login.emplace(std::move(login), std::move(provider));
        return AddProviderResult::Ok;
    });
}

RemoveResult Repository::remove_provider(std::string_view provider_name)
{
    {
        // Skip the staging copy and file rewrite when there is nothing to do.
        std::shared_lock lock(mutex_);
        if (!state_.login_by_name.contains(provider_name)) return RemoveResult::NotFound;
    }
    return mutate([&](State& s) {
        const auto it = s.login_by_name.find(provider_name);
        if (it == s.login_by_name.end()) return RemoveResult::NotFound;
        s.by_login.erase(it->second);
        std::erase_if(s.services, [&](const auto& kv) { return kv.first.first == provider_name; });
        s.login_by_name.erase(it);
        return RemoveResult::Ok;
    });
}

UpsertResult Repository::upsert_service(Service service)
{
    return mutate([&](State& s) {
        if (!s.login_by_name.contains(service.provider_name)) return UpsertResult::UnknownProvider;
        auto key = std::make_pair(service.provider_name, service.service_name);
        auto [it, inserted] = s.services.insert_or_assign(std::move(key), std::move(service));
        return inserted ? UpsertResult::Created : UpsertResult::Updated;
    });
}

RemoveResult Repository::remove_service(std::string_view provider_name, std::string_view service_name)
{
    const auto key = std::make_pair(std::string(provider_name), std::string(service_name));
    {
        std::shared_lock lock(mutex_);
        if (!state_.services.contains(key)) return RemoveResult::NotFound;
    }
    return mutate([&](State& s) { return s.services.erase(key) ? RemoveResult::Ok : RemoveResult::NotFound; });
}

std::vector<Service> Repository::find_services(const ServiceFilter& filter) const
{
    std::shared_lock lock(mutex_);
    std::vector<Service> out;
    if (filter.by_provider) {
        // Keys sort by provider first, so a provider's services are contiguous.
        auto it = state_.services.lower_bound(std::make_pair(*filter.by_provider, std::string{}));
        for (; it != state_.services.end() && it->first.first == *filter.by_provider; ++it) {
            if (filter.matches(it->second)) out.push_back(it->second);
        }
        return out;
    }
    for (const auto& [key, service] : state_.services) {
        if (filter.matches(service)) out.push_back(service);
    }
    return out;
}

std::vector<Provider> Repository::list_providers() const
{
    std::shared_lock lock(mutex_);
    std::vector<Provider> out;
    out.reserve(state_.login_by_name.size());
    for (const auto& [name, login] : state_.login_by_name) {
        Provider p = state_.by_login.find(login)->second;
        p.password_digest.clear();
        out.push_back(std::move(p));
    }
    return out;
}

std::optional<Provider> Repository::find_provider_by_login(std::string_view login_name) const
{
    std::shared_lock lock(mutex_);
    const auto it = state_.by_login.find(login_name);
    if (it == state_.by_login.end()) return std::nullopt;
    return it->second;
}

std::optional<Provider> Repository::find_provider(std::string_view provider_name) const
{
    std::shared_lock lock(mutex_);
    const auto it = state_.login_by_name.find(provider_name);
    if (it == state_.login_by_name.end()) return std::nullopt;
    return state_.by_login.find(it->second)->second;
}

std::optional<Service> Repository::find_service(std::string_view provider_name, std::string_view service_name) const
{
    std::shared_lock lock(mutex_);
    const auto it = state_.services.find(std::make_pair(std::string(provider_name), std::string(service_name)));
    if (it == state_.services.end()) return std::nullopt;
    return it->second;
}

StoreSnapshot Repository::snapshot() const
{
    std::shared_lock lock(mutex_);
    return to_snapshot(state_);
}

void Repository::flush()
{
    if (!path_) return;
    std::unique_lock lock(mutex_);
    persist(state_);
}

void Repository::persist(const State& state) const
{
    if (path_) atomic_rewrite(*path_, encode_store(to_snapshot(state)));
}

StoreSnapshot Repository::to_snapshot(const State& state)
{
    StoreSnapshot snap;
    snap.providers.reserve(state.login_by_name.size());
    for (const auto& [name, login] : state.login_by_name) {
        snap.providers.push_back(state.by_login.find(login)->second);
    }
    snap.services.reserve(state.services.size());
    for (const auto& [key, service] : state.services) snap.services.push_back(service);
    return snap;
}

Repository::State Repository::from_snapshot(const StoreSnapshot& snapshot)
{
    State s;
    for (const auto& p : snapshot.providers) {
        if (s.by_login.contains(p.login_name) || s.login_by_name.contains(p.provider_name)) {
            throw StorageError("store holds duplicate provider " + p.provider_name);
        }
        s.login_by_name.emplace(p.provider_name, p.login_name);
        s.by_login.emplace(p.login_name, p);
    }
    for (const auto& svc : snapshot.services) {
        if (!s.login_by_name.contains(svc.provider_name)) {
            throw StorageError("store service " + svc.service_name + " references unknown provider " + svc.provider_name);
        }
        if (!s.services.emplace(std::make_pair(svc.provider_name, svc.service_name), svc).second) {
            throw StorageError("store holds duplicate service " + svc.service_name);
        }
    }
    return s;
}

}  // namespace gmd
