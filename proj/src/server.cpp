#include "gmd/server.hpp"

#include <httplib.h>

#include "gmd/api_json.hpp"
#include "gmd/store_json.hpp"

namespace gmd {

using nlohmann::json;

namespace {

constexpr const char* kJson = "application/json";

std::unique_ptr<Repository> open_repository(const ServerConfig& config)
{
    if (config.store_file) return std::make_unique<Repository>(*config.store_file);
    return std::make_unique<Repository>();
}

std::string session_token(const httplib::Request& req)
{
    const auto auth = req.get_header_value("Authorization");
    constexpr std::string_view bearer = "Bearer ";
    if (auth.starts_with(bearer)) return trim(std::string_view(auth).substr(bearer.size()));

    const auto cookies = req.get_header_value("Cookie");
    const std::string key = std::string(api::kSessionCookie) + "=";
    std::size_t pos = 0;
    while (pos < cookies.size()) {
        const auto end = std::min(cookies.find(';', pos), cookies.size());
        const std::string part = trim(std::string_view(cookies).substr(pos, end - pos));
        if (part.starts_with(key)) return part.substr(key.size());
        pos = end + 1;
    }
    return {};
}

void reply_json(httplib::Response& res, int status, const json& body)
{
    res.status = status;
    res.set_content(body.dump(), kJson);
}

void reply_error(httplib::Response& res, const portal::PortalError& e)
{
    reply_json(res, api::http_status(e.code()), api::error_body(e));
}

json parse_body(const httplib::Request& req)
{
    json body = json::parse(req.body.empty() ? std::string("{}") : req.body);
    if (!body.is_object()) throw std::invalid_argument("request body must be an object");
    return body;
}

std::string string_member(const json& body, const char* key)
{
    const auto it = body.find(key);
    if (it == body.end() || it->is_null()) return {};
    if (!it->is_string()) throw std::invalid_argument(std::string("'") + key + "' must be a string");
    return it->get<std::string>();
}

// Runs a management handler, translating failures into JSON error bodies.
template <typename Handler>
httplib::Server::Handler guarded(Handler handler)
{
    return [handler](const httplib::Request& req, httplib::Response& res) {
        try {
            handler(req, res);
        } catch (const portal::PortalError& e) {
            reply_error(res, e);
        } catch (const json::exception& e) {
            reply_json(res, 400, {{"error", "BadRequest"}, {"message", e.what()}});
        } catch (const std::invalid_argument& e) {
            reply_json(res, 400, {{"error", "BadRequest"}, {"message", e.what()}});
        } catch (const std::exception& e) {
            reply_json(res, 500, {{"error", "Internal"}, {"message", e.what()}});
        }
    };
}

json services_json(const std::vector<Service>& services)
{
    json out = json::array();
    for (const auto& s : services) out.push_back(to_json(s));
    return out;
}

}  // namespace

Server::Server(ServerConfig config, SteadyClock clock)
    : config_(std::move(config)), repository_(open_repository(config_)),
      portal_(*repository_, config_.portal, std::move(clock)), queries_(*repository_),
      http_(std::make_unique<httplib::Server>())
{
    // httplib's default sets SO_REUSEPORT, which would let a second server
    // share an occupied port. Plain SO_REUSEADDR still allows quick restarts.
    http_->set_socket_options([](socket_t sock) {
        int yes = 1;
        ::setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, &yes, sizeof yes);
    });
    install_routes();
}

Server::~Server()
{
    try {
        stop();
    } catch (const std::exception&) {
        // Every mutation was already persisted when it was made.
    }
}

void Server::install_routes()
{
    auto& http = *http_;

    http.Get("/healthz", [](const httplib::Request&, httplib::Response& res) { res.set_content("ok", "text/plain"); });

    http.Post("/gqws", [this](const httplib::Request& req, httplib::Response& res) {
        auto reply = queries_.handle_query(req.body);
        res.status = reply.http_status;
        res.set_content(std::move(reply.body), "text/xml; charset=utf-8");
    });

    http.Post("/api/providers", guarded([this](const httplib::Request& req, httplib::Response& res) {
        const json body = parse_body(req);
        portal::Registration form{
            string_member(body, "provider_name"), string_member(body, "login_name"), string_member(body, "password"),
            string_member(body, "contact_address"), string_member(body, "extra_info")};
        reply_json(res, 201, to_json(portal_.register_provider(form), false));
    }));

    http.Post("/api/login", guarded([this](const httplib::Request& req, httplib::Response& res) {
        const json body = parse_body(req);
        const auto result = portal_.login(string_member(body, "login_name"), string_member(body, "password"));
        res.set_header("Set-Cookie", std::string(api::kSessionCookie) + "=" + result.token +
                                         "; HttpOnly; SameSite=Strict; Path=/");
        reply_json(res, 200, {{"token", result.token}, {"provider_name", result.provider_name}});
    }));

    http.Post("/api/logout", guarded([this](const httplib::Request& req, httplib::Response& res) {
        portal_.logout(session_token(req));
        res.set_header("Set-Cookie", std::string(api::kSessionCookie) + "=; HttpOnly; SameSite=Strict; Path=/; Max-Age=0");
        reply_json(res, 200, {{"status", "ok"}});
    }));

    http.Get("/api/whoami", guarded([this](const httplib::Request& req, httplib::Response& res) {
        reply_json(res, 200, to_json(portal_.whoami(session_token(req)), false));
    }));

    http.Get("/api/browse", guarded([this](const httplib::Request& req, httplib::Response& res) {
        const bool by_type = req.has_param("type");
        const bool by_provider = req.has_param("provider");
        if (by_type && by_provider) throw std::invalid_argument("browse takes either type or provider, not both");
        auto view = portal::BrowseView::all();
        if (by_type) view = portal::BrowseView::by_type(req.get_param_value("type"));
        if (by_provider) view = portal::BrowseView::by_provider(req.get_param_value("provider"));
        reply_json(res, 200, api::to_json(portal_.browse(view)));
    }));

    http.Get("/api/my/services", guarded([this](const httplib::Request& req, httplib::Response& res) {
        reply_json(res, 200, services_json(portal_.my_services(session_token(req))));
    }));

    http.Post("/api/my/services", guarded([this](const httplib::Request& req, httplib::Response& res) {
        const auto token = session_token(req);
        const auto payload = service_input_from_json(parse_body(req));
        const auto outcome = portal_.manage_service(token, portal::ServiceAction::Add, payload);
        const bool created = outcome == portal::ManageOutcome::Created;
        reply_json(res, created ? 201 : 200, {{"status", created ? "created" : "updated"}});
    }));

    http.Put(R"(/api/my/services/(.+))", guarded([this](const httplib::Request& req, httplib::Response& res) {
        const auto token = session_token(req);
        auto payload = service_input_from_json(parse_body(req));
        payload.service_name = req.matches[1];
        portal_.manage_service(token, portal::ServiceAction::Update, payload);
        reply_json(res, 200, {{"status", "updated"}});
    }));

    http.Delete(R"(/api/my/services/(.+))", guarded([this](const httplib::Request& req, httplib::Response& res) {
        ServiceInput payload;
        payload.service_name = req.matches[1];
        payload.provider_name = req.get_param_value("provider");
        portal_.manage_service(session_token(req), portal::ServiceAction::Remove, payload);
        reply_json(res, 200, {{"status", "removed"}});
    }));

    http.Delete("/api/my/account", guarded([this](const httplib::Request& req, httplib::Response& res) {
        portal_.remove_own_account(session_token(req));
        reply_json(res, 200, {{"status", "removed"}});
    }));

    if (config_.assets_dir) http.set_mount_point("/", config_.assets_dir->string());
}

int Server::bind(const std::string& host, int port)
{
    if (port == 0) {
        port_ = http_->bind_to_any_port(host);
    } else {
        port_ = http_->bind_to_port(host, port) ? port : -1;
    }
    if (port_ < 0) throw std::runtime_error("cannot listen on " + host + ":" + std::to_string(port));
    return port_;
}

int Server::start(const std::string& host, int port)
{
    const int bound = bind(host, port);
    thread_ = std::thread([this] { http_->listen_after_bind(); });
    http_->wait_until_ready();
    return bound;
}

void Server::run(const std::string& host, int port)
{
    bind(host, port);
    http_->listen_after_bind();
}

void Server::stop()
{
    if (http_) http_->stop();
    if (thread_.joinable()) thread_.join();
    repository_->flush();
}

}  // namespace gmd
