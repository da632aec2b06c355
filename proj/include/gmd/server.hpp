#pragma once

#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <thread>

#include "gmd/gqws.hpp"
#include "gmd/portal.hpp"
#include "gmd/repository.hpp"

namespace httplib {
class Server;
}

namespace gmd {

struct ServerConfig {
    /// In-memory store when unset.
    std::optional<std::filesystem::path> store_file;
    portal::PortalConfig portal;
    /// Static web portal assets served under "/" when set.
    std::optional<std::filesystem::path> assets_dir;
};

/**
 * HTTP front end: `POST /gqws`, `GET /healthz` and the `/api/...` management
 * endpoints, all over one repository.
 */
class Server {
public:
    explicit Server(ServerConfig config, SteadyClock clock = {});
    ~Server();

    Server(const Server&) = delete;
    Server& operator=(const Server&) = delete;

    /// Binds and serves on a background thread. Port 0 picks a free port.
    /// Returns the bound port; throws std::runtime_error if binding fails.
    int start(const std::string& host = "127.0.0.1", int port = 0);

    /// Binds and serves on the calling thread until stop() is called.
    void run(const std::string& host, int port);

    /// Stops serving and flushes the store. Safe to call more than once.
    void stop();

    int port() const noexcept { return port_; }

    Repository& repository() noexcept { return *repository_; }
    portal::Portal& portal() noexcept { return portal_; }
    const gqws::QueryProcessor& queries() const noexcept { return queries_; }

private:
    void install_routes();
    int bind(const std::string& host, int port);

    ServerConfig config_;
    std::unique_ptr<Repository> repository_;
    portal::Portal portal_;
    gqws::QueryProcessor queries_;
    std::unique_ptr<httplib::Server> http_;
    std::thread thread_;
    int port_ = 0;
};

}  // namespace gmd
