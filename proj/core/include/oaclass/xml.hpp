#pragma once

#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace oaclass {

// Minimal XML document model, enough for OAI-PMH responses: elements,
// attributes, character data, CDATA, comments, processing instructions and
// the predefined plus numeric character entities. No DTDs, no external
// entities.
struct XmlElement {
    std::string name; // qualified name as written, e.g. "dc:title"
    std::map<std::string, std::string> attributes;
    std::vector<XmlElement> children;
    std::string text; // concatenated character data of this element only

    // Local part of the qualified name ("title" for "dc:title").
    std::string_view local_name() const noexcept;

    // First direct child whose local name matches, or nullptr.
    const XmlElement* child(std::string_view local) const noexcept;

    // All direct children whose local name matches.
    std::vector<const XmlElement*> children_named(std::string_view local) const;

    // Depth-first search for the first descendant with this local name.
    const XmlElement* find(std::string_view local) const noexcept;

    std::string_view attribute(std::string_view name) const noexcept;
};

// Parses a complete document and returns the root element.
// Throws XmlError with a byte offset on malformed input.
XmlElement parse_xml(std::string_view text);

} // namespace oaclass
