// gmd: run the directory server, query it, administer providers and
// services, and pick the cheapest service for a job.
//
// Exit codes: 0 ok, 1 transport or local failure, 2 error reported by the
// server, 3 authentication required or refused.

#include <fcntl.h>
#include <pthread.h>
#include <signal.h>
#include <sys/stat.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "gmd/broker.hpp"
#include "gmd/client.hpp"
#include "gmd/portal_client.hpp"
#include "gmd/server.hpp"
#include "gmd/store_json.hpp"

namespace {

using namespace gmd;

enum Exit { kOk = 0, kLocal = 1, kRemote = 2, kAuth = 3 };

std::string env_or(const char* name, std::string fallback)
{
    const char* value = std::getenv(name);
    return value && *value ? std::string(value) : std::move(fallback);
}

std::string default_session_file()
{
    return env_or("GMD_SESSION_FILE", env_or("HOME", ".") + "/.gmd-session");
}

struct Globals {
    std::string endpoint = env_or("GMD_ENDPOINT", "http://localhost:8100");
    std::string session_file = default_session_file();
};

std::string gqws_url(const std::string& endpoint)
{
    const auto [origin, path] = client::split_url(endpoint);
    return path == "/" ? origin + "/gqws" : endpoint;
}

std::string api_base(const std::string& endpoint)
{
    auto [origin, path] = client::split_url(endpoint);
    if (path.ends_with("/gqws")) path.resize(path.size() - 5);
    return origin + (path == "/" ? "" : path);
}

std::optional<std::string> load_token(const Globals& g)
{
    if (const char* env = std::getenv("GMD_TOKEN"); env && *env) return std::string(env);
    std::ifstream in(g.session_file);
    std::string token;
    if (in && std::getline(in, token) && !token.empty()) return token;
    return std::nullopt;
}

void save_token(const Globals& g, const std::string& token)
{
    const int fd = ::open(g.session_file.c_str(), O_WRONLY | O_CREAT | O_TRUNC | O_CLOEXEC, 0600);
    if (fd < 0) throw std::runtime_error("cannot write session file " + g.session_file);
    ::fchmod(fd, 0600);
    const std::string line = token + "\n";
    const bool ok = ::write(fd, line.data(), line.size()) == static_cast<ssize_t>(line.size());
    ::close(fd);
    if (!ok) throw std::runtime_error("cannot write session file " + g.session_file);
}

void forget_token(const Globals& g)
{
    std::error_code ec;
    std::filesystem::remove(g.session_file, ec);
}

// Maps library failures onto exit codes.
template <typename Body>
int run_guarded(Body body)
{
    try {
        return body();
    } catch (const portal::PortalError& e) {
        const bool auth = e.code() == portal::ErrorCode::Unauthenticated || e.code() == portal::ErrorCode::AuthFailed;
        std::cerr << "error: " << e.what() << '\n';
        for (const auto& f : e.fields()) std::cerr << "  " << to_string(f.rule) << ": " << f.field << '\n';
        return auth ? kAuth : kRemote;
    } catch (const client::GmdError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return e.kind() == client::ErrorKind::Remote ? kRemote : kLocal;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kLocal;
    }
}

void print_table(const std::vector<ServiceRecord>& records)
{
    const bool contact = !records.empty() && records.front().is_contact_only();
    std::vector<std::vector<std::string>> rows;
    if (contact) {
        rows.push_back({"NAME", "ADDRESS"});
        for (const auto& r : records) rows.push_back({r.name, r.address});
    } else {
        rows.push_back({"NAME", "PROVIDER", "HARDWARE", "SOFTWARE", "ADDRESS"});
        for (const auto& r : records) {
            rows.push_back({r.name, r.provider.value_or(""), r.price ? r.price->hardware.to_string() : "",
                            r.price ? r.price->software.to_string() : "", r.address});
        }
    }
    std::vector<std::size_t> width(rows.front().size(), 0);
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) width[i] = std::max(width[i], row[i].size());
    }
    for (const auto& row : rows) {
        std::string line;
        for (std::size_t i = 0; i < row.size(); ++i) {
            line += row[i];
            if (i + 1 < row.size()) line += std::string(width[i] - row[i].size() + 2, ' ');
        }
        std::cout << line << '\n';
    }
}

int cmd_serve(int port, const std::string& host, const std::string& store, int ttl_minutes, const std::string& assets)
{
    sigset_t signals;
    sigemptyset(&signals);
    sigaddset(&signals, SIGINT);
    sigaddset(&signals, SIGTERM);
    pthread_sigmask(SIG_BLOCK, &signals, nullptr);

    ServerConfig config;
    config.store_file = store;
    config.portal.session_ttl = std::chrono::minutes(ttl_minutes);
    if (!assets.empty()) config.assets_dir = assets;

    Server server(std::move(config));
    std::thread watcher([&server, signals] {
        int signal = 0;
        sigwait(&signals, &signal);
        server.stop();
    });
    watcher.detach();

    std::cerr << "gmd: serving on " << host << ':' << port << " (store " << store << ")\n";
    server.run(host, port);
    server.stop();
    std::cerr << "gmd: stopped\n";
    return kOk;
}

int cmd_query(const Globals& g, gqws::QueryKind kind, const std::string& argument, const std::string& format,
              bool soap)
{
    const client::GmdClient gmd(gqws_url(g.endpoint), soap ? client::Transport::Soap : client::Transport::Bare);
    if (format == "xml") {
        const std::string raw = gmd.exchange(gqws::make_query(kind, argument));
        std::cout << raw << '\n';
        const auto response = wire::decode_response(raw);
        if (response.status == wire::Status::Error) {
            std::cerr << "error: " << response.reason << '\n';
            return kRemote;
        }
        return kOk;
    }
    print_table(gmd.invoke(kind, kind == gqws::QueryKind::All ? std::nullopt : std::optional(argument)));
    return kOk;
}

client::PortalClient authed_client(const Globals& g)
{
    const auto token = load_token(g);
    if (!token) throw portal::PortalError(portal::ErrorCode::Unauthenticated, "not logged in");
    client::PortalClient api(api_base(g.endpoint));
    api.set_token(*token);
    return api;
}

ServiceInput service_from_flags(const std::map<std::string, std::string>& f)
{
    ServiceInput s;
    s.service_name = f.at("name");
    s.service_type = f.at("type");
    s.host_name = f.at("host");
    s.application_path = f.at("path");
    s.hardware_price = f.at("hw");
    s.software_price = f.at("sw");
    s.description = f.at("description");
    return s;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Grid market directory: publish, discover and select priced Grid services"};
    app.require_subcommand(1);
    app.fallthrough();
    Globals g;
    app.add_option("--endpoint", g.endpoint, "Server URL (env GMD_ENDPOINT)");
    app.add_option("--session-file", g.session_file, "Where the login token is kept (env GMD_SESSION_FILE)");

    int exit_code = kOk;

    // serve
    auto* serve = app.add_subcommand("serve", "Run the directory server");
    int port = 8100;
    std::string host = "0.0.0.0";
    std::string store = "./gmd-store";
    int ttl = 30;
    std::string assets;
    serve->add_option("--port", port, "Listening port")->check(CLI::Range(1, 65535))->capture_default_str();
    serve->add_option("--host", host, "Listening address")->capture_default_str();
    serve->add_option("--store", store, "Store file")->capture_default_str();
    serve->add_option("--session-ttl", ttl, "Session idle expiry in minutes")->check(CLI::PositiveNumber)->capture_default_str();
    serve->add_option("--assets", assets, "Directory of web portal assets served under /");
    serve->callback([&] {
        exit_code = run_guarded([&] { return cmd_serve(port, host, store, ttl, assets); });
    });

    // query
    auto* query = app.add_subcommand("query", "Query the directory");
    query->require_subcommand(1);
    query->fallthrough();
    std::string format = "table";
    bool soap = false;
    query->add_option("--format", format, "table or xml")->check(CLI::IsMember({"table", "xml"}));
    query->add_flag("--soap", soap, "Wrap messages in a SOAP envelope");
    std::string query_arg;
    const std::pair<const char*, gqws::QueryKind> query_verbs[] = {
        {"type", gqws::QueryKind::ByType},         {"host", gqws::QueryKind::ByHost},
        {"provider", gqws::QueryKind::ByProvider}, {"contact", gqws::QueryKind::ContactByType},
        {"price", gqws::QueryKind::PriceByName},
    };
    auto* query_all = query->add_subcommand("all", "All services");
    query_all->callback([&] {
        exit_code = run_guarded([&] { return cmd_query(g, gqws::QueryKind::All, {}, format, soap); });
    });
    for (const auto& [verb, kind] : query_verbs) {
        auto* sub = query->add_subcommand(verb, gqws::method_name(kind));
        sub->add_option("value", query_arg)->required();
        sub->callback([&, kind = kind] {
            exit_code = run_guarded([&] { return cmd_query(g, kind, query_arg, format, soap); });
        });
    }

    // provider
    auto* provider = app.add_subcommand("provider", "Provider accounts");
    provider->require_subcommand(1);
    portal::Registration form;
    auto* reg = provider->add_subcommand("register", "Register a new provider account");
    reg->add_option("--name", form.provider_name, "Provider (organisation) name")->required();
    reg->add_option("--login", form.login_name, "Login name")->required();
    reg->add_option("--password", form.password, "Password (env GMD_PASSWORD)");
    reg->add_option("--contact", form.contact_address, "Contact address")->required();
    reg->add_option("--extra", form.extra_info, "Additional information");
    reg->callback([&] {
        exit_code = run_guarded([&] {
            if (form.password.empty()) form.password = env_or("GMD_PASSWORD", "");
            const auto p = client::PortalClient(api_base(g.endpoint)).register_provider(form);
            std::cout << "registered " << p.provider_name << " (login " << p.login_name << ")\n";
            return kOk;
        });
    });
    auto* unreg = provider->add_subcommand("remove", "Remove the logged-in provider and all its services");
    unreg->callback([&] {
        exit_code = run_guarded([&] {
            auto api = authed_client(g);
            api.remove_account();
            forget_token(g);
            std::cout << "account removed\n";
            return kOk;
        });
    });

    // login / logout
    std::string login_name;
    std::string password;
    auto* login = app.add_subcommand("login", "Log in and cache the session token");
    login->add_option("--login", login_name, "Login name")->required();
    login->add_option("--password", password, "Password (env GMD_PASSWORD)");
    login->callback([&] {
        exit_code = run_guarded([&] {
            if (password.empty()) password = env_or("GMD_PASSWORD", "");
            client::PortalClient api(api_base(g.endpoint));
            const auto result = api.login(login_name, password);
            save_token(g, result.token);
            std::cout << "logged in as " << result.provider_name << '\n';
            return kOk;
        });
    });
    auto* logout = app.add_subcommand("logout", "End the cached session");
    logout->callback([&] {
        exit_code = run_guarded([&] {
            if (const auto token = load_token(g)) {
                client::PortalClient api(api_base(g.endpoint));
                api.set_token(*token);
                api.logout();
            }
            forget_token(g);
            std::cout << "logged out\n";
            return kOk;
        });
    });

    // service
    auto* service = app.add_subcommand("service", "Manage the logged-in provider's services");
    service->require_subcommand(1);
    std::map<std::string, std::string> fields{{"name", ""}, {"type", ""}, {"host", ""}, {"path", ""},
                                              {"hw", "0"},  {"sw", "0"},   {"description", ""}};
    const auto add_service_flags = [&fields](CLI::App* sub) {
        sub->add_option("--name", fields["name"], "Service name")->required();
        sub->add_option("--type", fields["type"], "Service type, e.g. \"CPU service\"")->required();
        sub->add_option("--host", fields["host"], "Node host name")->required();
        sub->add_option("--path", fields["path"], "Application path on the host");
        sub->add_option("--hw", fields["hw"], "Hardware price per CPU-second")->capture_default_str();
        sub->add_option("--sw", fields["sw"], "Software price per application operation")->capture_default_str();
        sub->add_option("--description", fields["description"], "Free-text description");
    };
    auto* service_add = service->add_subcommand("add", "Publish (or replace) a service");
    add_service_flags(service_add);
    service_add->callback([&] {
        exit_code = run_guarded([&] {
            const auto outcome = authed_client(g).add_service(service_from_flags(fields));
            std::cout << (outcome == portal::ManageOutcome::Created ? "created " : "updated ") << fields["name"] << '\n';
            return kOk;
        });
    });
    auto* service_update = service->add_subcommand("update", "Change an existing service");
    add_service_flags(service_update);
    service_update->callback([&] {
        exit_code = run_guarded([&] {
            authed_client(g).update_service(service_from_flags(fields));
            std::cout << "updated " << fields["name"] << '\n';
            return kOk;
        });
    });
    std::string remove_name;
    auto* service_remove = service->add_subcommand("remove", "Withdraw a service");
    service_remove->add_option("--name", remove_name, "Service name")->required();
    service_remove->callback([&] {
        exit_code = run_guarded([&] {
            authed_client(g).remove_service(remove_name);
            std::cout << "removed " << remove_name << '\n';
            return kOk;
        });
    });

    // select
    auto* select = app.add_subcommand("select", "Pick the cheapest service of a type");
    std::string select_type;
    std::string mode = "cpu";
    std::string max_price;
    select->add_option("type", select_type, "Service type")->required();
    select->add_option("--mode", mode, "cpu (hardware price) or ao (application operation price)")
        ->check(CLI::IsMember({"cpu", "ao"}))
        ->capture_default_str();
    select->add_option("--max-price", max_price, "Per-unit price cap");
    select->callback([&] {
        exit_code = run_guarded([&] {
            std::optional<Decimal> cap;
            if (!max_price.empty()) cap = Decimal::parse(max_price);
            const auto pricing = mode == "ao" ? broker::PricingMode::ApplicationOperation : broker::PricingMode::CpuSecond;
            const client::GmdClient gmd(gqws_url(g.endpoint));
            const auto chosen = broker::select_cheapest(gmd, select_type, pricing, cap);
            if (!chosen) {
                std::cout << "no candidate\n";
                return kOk;
            }
            std::cout << chosen->name << '\t' << chosen->provider.value_or("") << '\t'
                      << broker::price_of(*chosen, pricing).to_string() << '\t' << chosen->address << '\n';
            return kOk;
        });
    });

    // seed
    auto* seed = app.add_subcommand("seed", "Register a fixture's providers and services on a running server");
    std::string fixture_path;
    seed->add_option("--fixture", fixture_path, "Fixture file")->required()->check(CLI::ExistingFile);
    seed->callback([&] {
        exit_code = run_guarded([&] {
            std::ifstream in(fixture_path, std::ios::binary);
            std::ostringstream text;
            text << in.rdbuf();
            const auto fixture = decode_fixture(text.str());
            const auto report = client::seed_fixture(fixture, api_base(g.endpoint));
            std::cout << "providers: " << report.providers_registered << " registered, " << report.providers_existing
                      << " already present; services: " << report.services_created << " created, "
                      << report.services_updated << " updated\n";
            return kOk;
        });
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : kLocal;
    }
    return exit_code;
}
