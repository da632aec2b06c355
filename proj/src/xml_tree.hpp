#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

// Minimal element tree over expat, just enough for the wire codec. Not part
// of the public interface.
namespace gmd::xml {

class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Element {
    std::string name;
    std::vector<std::pair<std::string, std::string>> attributes;
    std::vector<Element> children;
    std::string text;  // concatenated character data directly inside this element

    // Byte range of the whole element (start tag through end tag) in the source.
    std::size_t begin = 0;
    std::size_t end = 0;

    const std::string* attribute(std::string_view key) const;
    bool has_significant_text() const;
};

/// Parses a complete document. DOCTYPE declarations are rejected.
Element parse(std::string_view document);

std::string_view local_name(std::string_view qualified);

void append_text(std::string& out, std::string_view text);
void append_attribute_value(std::string& out, std::string_view value);

/// `<name>text</name>`, or `<name/>` when the text is empty.
void append_leaf(std::string& out, std::string_view name, std::string_view text);

}  // namespace gmd::xml
