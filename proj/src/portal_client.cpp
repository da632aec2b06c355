#include "gmd/portal_client.hpp"

#include <httplib.h>

#include <cctype>
#include <set>

#include "gmd/api_json.hpp"

namespace gmd::client {

using nlohmann::json;

PortalClient::PortalClient(std::string base_url, std::chrono::milliseconds timeout) : timeout_(timeout)
{
    std::tie(origin_, prefix_) = split_url(base_url);
    while (!prefix_.empty() && prefix_.back() == '/') prefix_.pop_back();
}

PortalClient::Response PortalClient::send(const std::string& method, const std::string& path, const json* body) const
{
    httplib::Client http(origin_);
    http.set_connection_timeout(timeout_);
    http.set_read_timeout(timeout_);
    http.set_write_timeout(timeout_);

    httplib::Headers headers;
    if (!token_.empty()) headers.emplace("Authorization", "Bearer " + token_);
    const std::string target = prefix_ + path;
    const std::string payload = body ? body->dump() : std::string("{}");

    httplib::Result result{nullptr, httplib::Error::Unknown};
    if (method == "GET") {
        result = http.Get(target, headers);
    } else if (method == "POST") {
        result = http.Post(target, headers, payload, "application/json");
    } else if (method == "PUT") {
        result = http.Put(target, headers, payload, "application/json");
    } else {
        result = http.Delete(target, headers);
    }
    if (!result) {
        const auto error = result.error();
        throw GmdError(error == httplib::Error::ConnectionTimeout ? ErrorKind::Timeout : ErrorKind::Transport,
                       origin_ + target + ": " + httplib::to_string(error));
    }
    json parsed;
    try {
        parsed = result->body.empty() ? json::object() : json::parse(result->body);
    } catch (const json::exception&) {
        throw GmdError(ErrorKind::Protocol, origin_ + target + ": HTTP " + std::to_string(result->status) +
                                                " with a non-JSON body");
    }
    return {result->status, std::move(parsed)};
}

json PortalClient::ok_or_throw(Response response)
{
    if (response.status >= 200 && response.status < 300) return std::move(response.body);
    if (auto error = api::error_from_body(response.body)) throw *error;
    throw GmdError(ErrorKind::Protocol, "HTTP " + std::to_string(response.status) + ": " +
                                            response.body.value("message", std::string("request failed")));
}

namespace {

std::string path_escape(const std::string& segment)
{
    static constexpr char kHex[] = "0123456789ABCDEF";
    std::string out;
    for (unsigned char c : segment) {
        if (std::isalnum(c) || c == '-' || c == '_' || c == '.' || c == '~') {
            out += static_cast<char>(c);
        } else {
            out += '%';
            out += kHex[c >> 4];
            out += kHex[c & 0xF];
        }
    }
    return out;
}

json service_body(const ServiceInput& s)
{
    return {
        {"service_name", s.service_name},
        {"service_type", s.service_type},
        {"provider_name", s.provider_name},
        {"host_name", s.host_name},
        {"application_path", s.application_path},
        {"price", {{"hardware", s.hardware_price}, {"software", s.software_price}}},
        {"description", s.description},
    };
}

Provider provider_from(const json& j)
{
    auto input = provider_input_from_json(j);
    return Provider{input.provider_name, input.login_name, {}, input.contact_address, input.extra_info};
}

}  // namespace

Provider PortalClient::register_provider(const portal::Registration& form) const
{
    const json body = {{"provider_name", form.provider_name},     {"login_name", form.login_name},
                       {"password", form.password},               {"contact_address", form.contact_address},
                       {"extra_info", form.extra_info}};
    return provider_from(ok_or_throw(send("POST", "/api/providers", &body)));
}

portal::LoginResult PortalClient::login(const std::string& login_name, const std::string& password)
{
    const json body = {{"login_name", login_name}, {"password", password}};
    const json reply = ok_or_throw(send("POST", "/api/login", &body));
    portal::LoginResult result{reply.at("token").get<std::string>(), reply.at("provider_name").get<std::string>()};
    token_ = result.token;
    return result;
}

void PortalClient::logout()
{
    ok_or_throw(send("POST", "/api/logout", nullptr));
    token_.clear();
}

Provider PortalClient::whoami() const { return provider_from(ok_or_throw(send("GET", "/api/whoami", nullptr))); }

portal::ManageOutcome PortalClient::add_service(const ServiceInput& service) const
{
    const json body = service_body(service);
    const json reply = ok_or_throw(send("POST", "/api/my/services", &body));
    return reply.value("status", "") == "created" ? portal::ManageOutcome::Created : portal::ManageOutcome::Updated;
}

void PortalClient::update_service(const ServiceInput& service) const
{
    const json body = service_body(service);
    ok_or_throw(send("PUT", "/api/my/services/" + path_escape(service.service_name), &body));
}

void PortalClient::remove_service(const std::string& service_name) const
{
    ok_or_throw(send("DELETE", "/api/my/services/" + path_escape(service_name), nullptr));
}

std::vector<Service> PortalClient::my_services() const
{
    std::vector<Service> out;
    for (const auto& s : ok_or_throw(send("GET", "/api/my/services", nullptr))) {
        out.push_back(validate_service(service_input_from_json(s)));
    }
    return out;
}

void PortalClient::remove_account()
{
    ok_or_throw(send("DELETE", "/api/my/account", nullptr));
    token_.clear();
}

portal::Catalog PortalClient::browse(const portal::BrowseView& view) const
{
    std::string path = "/api/browse";
    if (view.kind == portal::BrowseView::Kind::ByType) path += "?type=" + path_escape(view.value);
    if (view.kind == portal::BrowseView::Kind::ByProvider) path += "?provider=" + path_escape(view.value);
    return api::catalog_from_json(ok_or_throw(send("GET", path, nullptr)));
}

void check_fixture(const Fixture& fixture)
{
    std::set<std::string> providers;
    for (const auto& p : fixture.providers) {
        ProviderInput shape = p.account;
        shape.password_digest = "unused";
        try {
            const auto valid = validate_provider(shape);
            providers.insert(valid.provider_name);
        } catch (const ValidationError& e) {
            throw std::invalid_argument("fixture provider '" + p.account.provider_name + "': " + e.what());
        }
        if (p.password.empty()) {
            throw std::invalid_argument("fixture provider '" + p.account.provider_name + "' has no password");
        }
    }
    for (const auto& s : fixture.services) {
        try {
            validate_service(s);
        } catch (const ValidationError& e) {
            throw std::invalid_argument("fixture service '" + s.service_name + "': " + e.what());
        }
        if (!providers.contains(trim(s.provider_name))) {
            throw std::invalid_argument("fixture service '" + s.service_name + "' names unknown provider '" +
                                        s.provider_name + "'");
        }
    }
}

SeedReport seed_fixture(const Fixture& fixture, const std::string& base_url)
{
    check_fixture(fixture);

    SeedReport report;
    for (const auto& p : fixture.providers) {
        PortalClient api(base_url);
        bool registered = false;
        try {
            api.register_provider({p.account.provider_name, p.account.login_name, p.password,
                                   p.account.contact_address, p.account.extra_info});
            registered = true;
            ++report.providers_registered;
        } catch (const portal::PortalError& e) {
            if (e.code() != portal::ErrorCode::Duplicate) throw;
            ++report.providers_existing;
        }
        api.login(trim(p.account.login_name), p.password);

        const std::string name = trim(p.account.provider_name);
        try {
            for (const auto& s : fixture.services) {
                if (trim(s.provider_name) != name) continue;
                if (api.add_service(s) == portal::ManageOutcome::Created) {
                    ++report.services_created;
                } else {
                    ++report.services_updated;
                }
            }
        } catch (...) {
            if (registered) {
                try {
                    api.remove_account();
                } catch (...) {
                    // Report the original failure.
                }
            }
            throw;
        }
        api.logout();
    }
    return report;
}

}  // namespace gmd::client
