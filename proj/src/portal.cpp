#include "gmd/portal.hpp"

#include <map>
#include <set>

namespace gmd::portal {

const char* to_string(ErrorCode code)
{
    switch (code) {
    case ErrorCode::Duplicate: return "Duplicate";
    case ErrorCode::Invalid: return "Invalid";
    case ErrorCode::AuthFailed: return "AuthFailed";
    case ErrorCode::Unauthenticated: return "Unauthenticated";
    case ErrorCode::Forbidden: return "Forbidden";
    case ErrorCode::NotFound: return "NotFound";
    }
    return "Unknown";
}

std::optional<ErrorCode> error_code_from_string(std::string_view name)
{
    for (auto code : {ErrorCode::Duplicate, ErrorCode::Invalid, ErrorCode::AuthFailed, ErrorCode::Unauthenticated,
                      ErrorCode::Forbidden, ErrorCode::NotFound}) {
        if (name == to_string(code)) return code;
    }
    return std::nullopt;
}

PortalError::PortalError(ErrorCode code, const std::string& message, std::vector<FieldError> fields)
    : std::runtime_error(message), code_(code), fields_(std::move(fields))
{
}

namespace {

Provider redacted(Provider p)
{
    p.password_digest.clear();
    return p;
}

}  // namespace

Portal::Portal(Repository& repository, PortalConfig config, SteadyClock clock)
    : repository_(repository), hasher_(config.hash), sessions_(config.session_ttl, std::move(clock)),
      decoy_digest_(hasher_.digest("decoy password for unknown logins"))
{
}

Provider Portal::register_provider(const Registration& form)
{
    ProviderInput input{form.provider_name, form.login_name, "pending", form.contact_address, form.extra_info};
    std::vector<FieldError> problems;
    try {
        validate_provider(input);
    } catch (const ValidationError& e) {
        problems = e.errors();
    }
    if (form.password.empty()) problems.push_back({FieldRule::EmptyField, "password"});
    if (!problems.empty()) throw PortalError(ErrorCode::Invalid, ValidationError(problems).what(), problems);

    input.password_digest = hasher_.digest(form.password);
    Provider provider = validate_provider(input);

    switch (repository_.add_provider(provider)) {
    case AddProviderResult::Ok: break;
    case AddProviderResult::DuplicateLoginName:
        throw PortalError(ErrorCode::Duplicate, "login name '" + provider.login_name + "' is already registered");
    case AddProviderResult::DuplicateProviderName:
        throw PortalError(ErrorCode::Duplicate, "provider name '" + provider.provider_name + "' is already registered");
    }
    return redacted(std::move(provider));
}

LoginResult Portal::login(std::string_view login_name, std::string_view password)
{
    const auto provider = repository_.find_provider_by_login(trim(login_name));
    // Unknown logins still pay for one verification so timing does not tell them apart.
    bool ok = false;
    if (provider) {
        ok = hasher_.verify(provider->password_digest, password);
    } else {
        hasher_.verify(decoy_digest_, password);
    }
    if (!ok) throw PortalError(ErrorCode::AuthFailed, "login failed");
    return LoginResult{sessions_.create(provider->login_name), provider->provider_name};
}

void Portal::logout(std::string_view token) { sessions_.remove(token); }

Provider Portal::authenticate(std::string_view token)
{
    if (token.empty()) throw PortalError(ErrorCode::Unauthenticated, "not logged in");
    const auto login = sessions_.touch(token);
    if (!login) throw PortalError(ErrorCode::Unauthenticated, "session is invalid or has expired");
    auto provider = repository_.find_provider_by_login(*login);
    if (!provider) {
        sessions_.remove(token);
        throw PortalError(ErrorCode::Unauthenticated, "account no longer exists");
    }
    return *provider;
}

Provider Portal::whoami(std::string_view token) { return redacted(authenticate(token)); }

ManageOutcome Portal::manage_service(std::string_view token, ServiceAction action, ServiceInput payload)
{
    const Provider owner = authenticate(token);

    const std::string claimed = trim(payload.provider_name);
    if (!claimed.empty() && claimed != owner.provider_name) {
        throw PortalError(ErrorCode::Forbidden, "services of '" + claimed + "' belong to another provider");
    }
    payload.provider_name = owner.provider_name;

    if (action == ServiceAction::Remove) {
        const std::string name = trim(payload.service_name);
        if (name.empty()) {
            throw PortalError(ErrorCode::Invalid, "service_name is required", {{FieldRule::EmptyField, "service_name"}});
        }
        if (repository_.remove_service(owner.provider_name, name) == RemoveResult::NotFound) {
            throw PortalError(ErrorCode::NotFound, "no service '" + name + "'");
        }
        return ManageOutcome::Removed;
    }

    Service service;
    try {
        service = validate_service(payload);
    } catch (const ValidationError& e) {
        throw PortalError(ErrorCode::Invalid, e.what(), e.errors());
    }

    if (action == ServiceAction::Update && !repository_.find_service(owner.provider_name, service.service_name)) {
        throw PortalError(ErrorCode::NotFound, "no service '" + service.service_name + "'");
    }
    switch (repository_.upsert_service(std::move(service))) {
    case UpsertResult::Created: return ManageOutcome::Created;
    case UpsertResult::Updated: return ManageOutcome::Updated;
    case UpsertResult::UnknownProvider: break;
    }
    // The account was deleted between authentication and the write.
    sessions_.remove(token);
    throw PortalError(ErrorCode::Unauthenticated, "account no longer exists");
}

std::vector<Service> Portal::my_services(std::string_view token)
{
    const Provider owner = authenticate(token);
    ServiceFilter filter;
    filter.by_provider = owner.provider_name;
    return repository_.find_services(filter);
}

Catalog Portal::browse(const BrowseView& view) const
{
    ServiceFilter filter;
    if (view.kind == BrowseView::Kind::ByType) filter.by_type = view.value;
    if (view.kind == BrowseView::Kind::ByProvider) filter.by_provider = view.value;

    const auto all = repository_.find_services({});
    std::set<std::string> types;
    std::map<std::string, std::vector<Service>> grouped;
    for (const auto& s : all) {
        types.insert(s.service_type);
        if (filter.matches(s)) grouped[s.service_type].push_back(s);
    }

    Catalog catalog;
    catalog.types.assign(types.begin(), types.end());
    for (auto& [type, services] : grouped) catalog.groups.push_back({type, std::move(services)});
    return catalog;
}

void Portal::remove_own_account(std::string_view token)
{
    const Provider owner = authenticate(token);
    repository_.remove_provider(owner.provider_name);
    sessions_.remove_all_for(owner.login_name);
}

}  // namespace gmd::portal
