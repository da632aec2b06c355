#include "gmd/wire.hpp"

#include "xml_tree.hpp"

namespace gmd::wire {

namespace {

constexpr std::string_view kQueryRoot = "query_service";
constexpr std::string_view kResponseRoot = "service-details";

[[noreturn]] void fail(ProtocolErrorCode code, const std::string& detail) { throw ProtocolError(code, detail); }

// Leading whitespace is dropped from `text` (an XML declaration must open
// the document), so element offsets refer to the trimmed view.
xml::Element parse_document(std::string_view& text)
{
    const auto start = text.find_first_not_of(" \t\r\n");
    text.remove_prefix(start == std::string_view::npos ? text.size() : start);
    try {
        return xml::parse(text);
    } catch (const xml::ParseError& e) {
        fail(ProtocolErrorCode::MalformedXml, e.what());
    }
}

const std::string& leaf_text(const xml::Element& e)
{
    if (!e.children.empty()) fail(ProtocolErrorCode::MalformedXml, "<" + e.name + "> must not contain elements");
    return e.text;
}

void require_no_text(const xml::Element& e)
{
    if (e.has_significant_text()) fail(ProtocolErrorCode::MalformedXml, "unexpected text inside <" + e.name + ">");
}

void set_once(std::optional<std::string>& slot, const xml::Element& e, ProtocolErrorCode duplicate_code)
{
    if (slot) fail(duplicate_code, "<" + e.name + "> appears more than once");
    slot = leaf_text(e);
}

Decimal parse_price(const xml::Element& e)
{
    try {
        return Decimal::parse(leaf_text(e));
    } catch (const DecimalError& err) {
        fail(ProtocolErrorCode::BadPrice, "<" + e.name + ">: " + err.what());
    }
}

PriceQuote decode_price(const xml::Element& e)
{
    require_no_text(e);
    std::optional<Decimal> hardware;
    std::optional<Decimal> software;
    for (const auto& child : e.children) {
        std::optional<Decimal>* slot = nullptr;
        if (child.name == "hardware") {
            slot = &hardware;
        } else if (child.name == "software") {
            slot = &software;
        } else {
            fail(ProtocolErrorCode::UnknownElement, "unknown element <" + child.name + "> in <price>");
        }
        if (*slot) fail(ProtocolErrorCode::MalformedXml, "<" + child.name + "> appears more than once in <price>");
        *slot = parse_price(child);
    }
    if (!hardware || !software) fail(ProtocolErrorCode::BadPrice, "<price> needs both <hardware> and <software>");
    return PriceQuote{*hardware, *software};
}

ServiceRecord decode_service(const xml::Element& e)
{
    require_no_text(e);
    std::optional<std::string> name;
    std::optional<std::string> address;
    ServiceRecord record;
    for (const auto& child : e.children) {
        constexpr auto dup = ProtocolErrorCode::MalformedXml;
        if (child.name == "name") {
            set_once(name, child, dup);
        } else if (child.name == "address") {
            set_once(address, child, dup);
        } else if (child.name == "provider") {
            set_once(record.provider, child, dup);
        } else if (child.name == "description") {
            set_once(record.description, child, dup);
        } else if (child.name == "price") {
            if (record.price) fail(dup, "<price> appears more than once");
            record.price = decode_price(child);
        } else {
            fail(ProtocolErrorCode::UnknownElement, "unknown element <" + child.name + "> in <service>");
        }
    }
    if (!name || !address) fail(ProtocolErrorCode::MalformedXml, "<service> needs <name> and <address>");
    record.name = std::move(*name);
    record.address = std::move(*address);
    return record;
}

void append_service(std::string& out, const ServiceRecord& r)
{
    out += "<service>";
    xml::append_leaf(out, "name", r.name);
    if (r.provider) xml::append_leaf(out, "provider", *r.provider);
    if (r.price) {
        out += "<price>";
        xml::append_leaf(out, "hardware", r.price->hardware.to_string());
        xml::append_leaf(out, "software", r.price->software.to_string());
        out += "</price>";
    }
    xml::append_leaf(out, "address", r.address);
    if (r.description) xml::append_leaf(out, "description", *r.description);
    out += "</service>";
}

std::string_view strip_declaration(std::string_view text)
{
    const auto start = text.find_first_not_of(" \t\r\n");
    if (start == std::string_view::npos) return text;
    text.remove_prefix(start);
    if (text.starts_with("<?xml")) {
        const auto close = text.find("?>");
        if (close != std::string_view::npos) text.remove_prefix(close + 2);
    }
    return text;
}

}  // namespace

QueryResponse QueryResponse::ok(std::string type_label, std::vector<ServiceRecord> services)
{
    return QueryResponse{std::move(type_label), Status::Ok, std::move(services), {}};
}

QueryResponse QueryResponse::error(std::string type_label, std::string reason)
{
    return QueryResponse{std::move(type_label), Status::Error, {}, std::move(reason)};
}

const char* to_string(ProtocolErrorCode code)
{
    switch (code) {
    case ProtocolErrorCode::MalformedXml: return "MalformedXml";
    case ProtocolErrorCode::UnknownRoot: return "UnknownRoot";
    case ProtocolErrorCode::UnknownElement: return "UnknownElement";
    case ProtocolErrorCode::DuplicateConstraint: return "DuplicateConstraint";
    case ProtocolErrorCode::MissingStatus: return "MissingStatus";
    case ProtocolErrorCode::BadPrice: return "BadPrice";
    }
    return "Unknown";
}

ProtocolError::ProtocolError(ProtocolErrorCode code, const std::string& detail)
    : std::runtime_error(std::string(to_string(code)) + ": " + detail), code_(code)
{
}

std::string encode_query(const QueryMessage& q)
{
    const bool empty = !q.service_type && !q.provider_name && !q.host_name && !q.service_name && q.detail == Detail::Full;
    if (empty) return "<query_service/>";

    std::string out = "<query_service>";
    if (q.service_type) xml::append_leaf(out, "service_type", *q.service_type);
    if (q.provider_name) xml::append_leaf(out, "provider_name", *q.provider_name);
    if (q.host_name) xml::append_leaf(out, "host_name", *q.host_name);
    if (q.service_name) xml::append_leaf(out, "service_name", *q.service_name);
    if (q.detail == Detail::Contact) xml::append_leaf(out, "detail", "contact");
    out += "</query_service>";
    return out;
}

QueryMessage decode_query(std::string_view text)
{
    const xml::Element root = parse_document(text);
    if (root.name != kQueryRoot) fail(ProtocolErrorCode::UnknownRoot, "expected <query_service>, got <" + root.name + ">");
    require_no_text(root);

    QueryMessage q;
    bool detail_seen = false;
    constexpr auto dup = ProtocolErrorCode::DuplicateConstraint;
    for (const auto& child : root.children) {
        if (child.name == "service_type") {
            set_once(q.service_type, child, dup);
        } else if (child.name == "provider_name") {
            set_once(q.provider_name, child, dup);
        } else if (child.name == "host_name") {
            set_once(q.host_name, child, dup);
        } else if (child.name == "service_name") {
            set_once(q.service_name, child, dup);
        } else if (child.name == "detail") {
            if (detail_seen) fail(dup, "<detail> appears more than once");
            detail_seen = true;
            const auto& value = leaf_text(child);
            if (value == "contact") {
                q.detail = Detail::Contact;
            } else if (value == "full") {
                q.detail = Detail::Full;
            } else {
                fail(ProtocolErrorCode::MalformedXml, "<detail> must be 'full' or 'contact'");
            }
        } else {
            fail(ProtocolErrorCode::UnknownElement, "unknown element <" + child.name + "> in <query_service>");
        }
    }
    return q;
}

std::string encode_response(const QueryResponse& r)
{
    std::string out(kXmlDeclaration);
    out += "<service-details type=\"";
    xml::append_attribute_value(out, r.type_label);
    out += "\" status=\"";
    out += r.status == Status::Ok ? "ok" : "error";
    out += '"';

    if (r.status == Status::Error) {
        out += '>';
        xml::append_leaf(out, "reason", r.reason);
        out += "</service-details>";
        return out;
    }
    if (r.services.empty()) {
        out += "/>";
        return out;
    }
    out += '>';
    for (const auto& s : r.services) append_service(out, s);
    out += "</service-details>";
    return out;
}

QueryResponse decode_response(std::string_view text)
{
    const xml::Element root = parse_document(text);
    if (root.name != kResponseRoot) {
        fail(ProtocolErrorCode::UnknownRoot, "expected <service-details>, got <" + root.name + ">");
    }
    require_no_text(root);

    const std::string* status = root.attribute("status");
    if (status == nullptr) fail(ProtocolErrorCode::MissingStatus, "<service-details> has no status attribute");
    if (*status != "ok" && *status != "error") {
        fail(ProtocolErrorCode::MissingStatus, "status must be 'ok' or 'error', got '" + *status + "'");
    }
    const std::string* type = root.attribute("type");
    if (type == nullptr) fail(ProtocolErrorCode::MalformedXml, "<service-details> has no type attribute");

    if (*status == "error") {
        if (root.children.size() != 1 || root.children.front().name != "reason") {
            fail(ProtocolErrorCode::MalformedXml, "an error response holds exactly one <reason>");
        }
        return QueryResponse::error(*type, leaf_text(root.children.front()));
    }

    std::vector<ServiceRecord> services;
    services.reserve(root.children.size());
    for (const auto& child : root.children) {
        if (child.name != "service") {
            fail(ProtocolErrorCode::UnknownElement, "unknown element <" + child.name + "> in <service-details>");
        }
        services.push_back(decode_service(child));
    }
    return QueryResponse::ok(*type, std::move(services));
}

std::string soap_wrap(std::string_view bare)
{
    std::string out(kXmlDeclaration);
    out += "<soap:Envelope xmlns:soap=\"";
    out += kSoapEnvelopeNs;
    out += "\"><soap:Body>";
    out += strip_declaration(bare);
    out += "</soap:Body></soap:Envelope>";
    return out;
}

std::optional<std::string> soap_unwrap(std::string_view document, bool with_declaration)
{
    const xml::Element root = parse_document(document);
    if (xml::local_name(root.name) != "Envelope") return std::nullopt;

    const xml::Element* body = nullptr;
    for (const auto& child : root.children) {
        if (xml::local_name(child.name) == "Body") body = &child;
    }
    if (body == nullptr) fail(ProtocolErrorCode::MalformedXml, "SOAP Envelope without Body");
    if (body->children.size() != 1) fail(ProtocolErrorCode::MalformedXml, "SOAP Body must hold exactly one element");

    const auto& inner = body->children.front();
    std::string out = with_declaration ? std::string(kXmlDeclaration) : std::string{};
    out += document.substr(inner.begin, inner.end - inner.begin);
    return out;
}

}  // namespace gmd::wire
