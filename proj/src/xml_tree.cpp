#include "xml_tree.hpp"

#include <expat.h>

#include <memory>

namespace gmd::xml {

const std::string* Element::attribute(std::string_view key) const
{
    for (const auto& [k, v] : attributes) {
        if (k == key) return &v;
    }
    return nullptr;
}

bool Element::has_significant_text() const
{
    return text.find_first_not_of(" \t\r\n") != std::string::npos;
}

namespace {

struct Builder {
    XML_Parser parser = nullptr;
    Element root;
    std::vector<Element*> stack;
    bool have_root = false;
    std::string failure;

    static void on_start(void* data, const XML_Char* name, const XML_Char** attrs)
    {
        auto* b = static_cast<Builder*>(data);
        Element e;
        e.name = name;
        for (int i = 0; attrs[i] != nullptr; i += 2) e.attributes.emplace_back(attrs[i], attrs[i + 1]);
        e.begin = static_cast<std::size_t>(XML_GetCurrentByteIndex(b->parser));

        if (b->stack.empty()) {
            b->root = std::move(e);
            b->have_root = true;
            b->stack.push_back(&b->root);
        } else {
            auto& siblings = b->stack.back()->children;
            siblings.push_back(std::move(e));
            b->stack.push_back(&siblings.back());
        }
    }

    static void on_end(void* data, const XML_Char*)
    {
        auto* b = static_cast<Builder*>(data);
        b->stack.back()->end =
            static_cast<std::size_t>(XML_GetCurrentByteIndex(b->parser) + XML_GetCurrentByteCount(b->parser));
        b->stack.pop_back();
    }

    static void on_text(void* data, const XML_Char* s, int len)
    {
        auto* b = static_cast<Builder*>(data);
        if (!b->stack.empty()) b->stack.back()->text.append(s, static_cast<std::size_t>(len));
    }

    static void on_doctype(void* data, const XML_Char*, const XML_Char*, const XML_Char*, int)
    {
        auto* b = static_cast<Builder*>(data);
        b->failure = "DOCTYPE declarations are not accepted";
        XML_StopParser(b->parser, XML_FALSE);
    }
};

}  // namespace

Element parse(std::string_view document)
{
    std::unique_ptr<XML_ParserStruct, decltype(&XML_ParserFree)> parser(XML_ParserCreate("UTF-8"), &XML_ParserFree);
    if (!parser) throw std::bad_alloc();

    Builder builder;
    builder.parser = parser.get();
    // Stack pointers stay valid: a children vector only grows after its last
    // element has been closed and popped.
    XML_SetUserData(parser.get(), &builder);
    XML_SetElementHandler(parser.get(), &Builder::on_start, &Builder::on_end);
    XML_SetCharacterDataHandler(parser.get(), &Builder::on_text);
    XML_SetStartDoctypeDeclHandler(parser.get(), &Builder::on_doctype);

    const auto status = XML_Parse(parser.get(), document.data(), static_cast<int>(document.size()), XML_TRUE);
    if (status != XML_STATUS_OK) {
        if (!builder.failure.empty()) throw ParseError(builder.failure);
        throw ParseError(std::string(XML_ErrorString(XML_GetErrorCode(parser.get()))) + " at line " +
                         std::to_string(XML_GetCurrentLineNumber(parser.get())));
    }
    if (!builder.have_root) throw ParseError("no root element");
    return std::move(builder.root);
}

std::string_view local_name(std::string_view qualified)
{
    const auto colon = qualified.rfind(':');
    return colon == std::string_view::npos ? qualified : qualified.substr(colon + 1);
}

void append_text(std::string& out, std::string_view text)
{
    for (char c : text) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '\r': out += "&#13;"; break;
        default: out += c;
        }
    }
}

void append_attribute_value(std::string& out, std::string_view value)
{
    for (char c : value) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        case '\t': out += "&#9;"; break;
        case '\n': out += "&#10;"; break;
        case '\r': out += "&#13;"; break;
        default: out += c;
        }
    }
}

void append_leaf(std::string& out, std::string_view name, std::string_view text)
{
    out += '<';
    out += name;
    if (text.empty()) {
        out += "/>";
        return;
    }
    out += '>';
    append_text(out, text);
    out += "</";
    out += name;
    out += '>';
}

}  // namespace gmd::xml
