#include "oaclass/xml.hpp"

#include <cctype>

#include "oaclass/errors.hpp"

namespace oaclass {

std::string_view XmlElement::local_name() const noexcept {
    const std::string_view qname(name);
    const auto colon = qname.rfind(':');
    return colon == std::string_view::npos ? qname : qname.substr(colon + 1);
}

const XmlElement* XmlElement::child(std::string_view local) const noexcept {
    for (const auto& c : children)
        if (c.local_name() == local)
            return &c;
    return nullptr;
}

std::vector<const XmlElement*> XmlElement::children_named(std::string_view local) const {
    std::vector<const XmlElement*> out;
    for (const auto& c : children)
        if (c.local_name() == local)
            out.push_back(&c);
    return out;
}

const XmlElement* XmlElement::find(std::string_view local) const noexcept {
    if (local_name() == local)
        return this;
    for (const auto& c : children)
        if (const auto* hit = c.find(local))
            return hit;
    return nullptr;
}

std::string_view XmlElement::attribute(std::string_view name) const noexcept {
    const auto it = attributes.find(std::string(name));
    return it == attributes.end() ? std::string_view{} : std::string_view(it->second);
}

namespace {

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    XmlElement parse_document() {
        skip_misc();
        if (eof())
            fail("document has no root element");
        XmlElement root = parse_element();
        skip_misc();
        if (!eof())
            fail("content after the root element");
        return root;
    }

private:
    [[noreturn]] void fail(const std::string& message) const {
        throw XmlError("XML error at offset " + std::to_string(pos_) + ": " + message);
    }

    bool eof() const noexcept { return pos_ >= text_.size(); }
    char peek() const noexcept { return text_[pos_]; }
    bool looking_at(std::string_view s) const noexcept { return text_.substr(pos_).starts_with(s); }

    void skip_whitespace() {
        while (!eof() && std::isspace(static_cast<unsigned char>(peek())))
            ++pos_;
    }

    // Whitespace, comments, PIs and the XML declaration between markup.
    void skip_misc() {
        for (;;) {
            skip_whitespace();
            if (looking_at("<!--")) {
                const auto end = text_.find("-->", pos_ + 4);
                if (end == std::string_view::npos)
                    fail("unterminated comment");
                pos_ = end + 3;
            } else if (looking_at("<?")) {
                const auto end = text_.find("?>", pos_ + 2);
                if (end == std::string_view::npos)
                    fail("unterminated processing instruction");
                pos_ = end + 2;
            } else if (looking_at("<!DOCTYPE")) {
                const auto end = text_.find('>', pos_);
                if (end == std::string_view::npos)
                    fail("unterminated DOCTYPE");
                pos_ = end + 1;
            } else {
                return;
            }
        }
    }

    static bool is_name_char(char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == ':' || c == '_' || c == '-' ||
               c == '.';
    }

    std::string parse_name() {
        const auto start = pos_;
        while (!eof() && is_name_char(peek()))
            ++pos_;
        if (pos_ == start)
            fail("expected a name");
        return std::string(text_.substr(start, pos_ - start));
    }

    void decode_entity(std::string& out) {
        const auto end = text_.find(';', pos_);
        if (end == std::string_view::npos || end - pos_ > 12)
            fail("unterminated entity reference");
        const std::string_view entity = text_.substr(pos_ + 1, end - pos_ - 1);
        if (entity == "lt") {
            out.push_back('<');
        } else if (entity == "gt") {
            out.push_back('>');
        } else if (entity == "amp") {
            out.push_back('&');
        } else if (entity == "quot") {
            out.push_back('"');
        } else if (entity == "apos") {
            out.push_back('\'');
        } else if (entity.starts_with("#")) {
            unsigned long code = 0;
            try {
                code = entity[1] == 'x' || entity[1] == 'X'
                           ? std::stoul(std::string(entity.substr(2)), nullptr, 16)
                           : std::stoul(std::string(entity.substr(1)), nullptr, 10);
            } catch (const std::exception&) {
                fail("bad character reference");
            }
            append_utf8(out, code);
        } else {
            fail("unknown entity '&" + std::string(entity) + ";'");
        }
        pos_ = end + 1;
    }

    static void append_utf8(std::string& out, unsigned long code) {
        if (code < 0x80) {
            out.push_back(static_cast<char>(code));
        } else if (code < 0x800) {
            out.push_back(static_cast<char>(0xC0 | (code >> 6)));
            out.push_back(static_cast<char>(0x80 | (code & 0x3F)));
        } else if (code < 0x10000) {
            out.push_back(static_cast<char>(0xE0 | (code >> 12)));
            out.push_back(static_cast<char>(0x80 | ((code >> 6) & 0x3F)));
            out.push_back(static_cast<char>(0x80 | (code & 0x3F)));
        } else {
            out.push_back(static_cast<char>(0xF0 | (code >> 18)));
            out.push_back(static_cast<char>(0x80 | ((code >> 12) & 0x3F)));
            out.push_back(static_cast<char>(0x80 | ((code >> 6) & 0x3F)));
            out.push_back(static_cast<char>(0x80 | (code & 0x3F)));
        }
    }

    std::string parse_attribute_value() {
        if (eof() || (peek() != '"' && peek() != '\''))
            fail("expected a quoted attribute value");
        const char quote = peek();
        ++pos_;
        std::string value;
        while (!eof() && peek() != quote) {
            if (peek() == '&')
                decode_entity(value);
            else
                value.push_back(text_[pos_++]);
        }
        if (eof())
            fail("unterminated attribute value");
        ++pos_; // closing quote
        return value;
    }

    XmlElement parse_element() {
        if (eof() || peek() != '<')
            fail("expected '<'");
        ++pos_;
        XmlElement element;
        element.name = parse_name();

        for (;;) {
            skip_whitespace();
            if (eof())
                fail("unterminated start tag");
            if (peek() == '>') {
                ++pos_;
                break;
            }
            if (looking_at("/>")) {
                pos_ += 2;
                return element;
            }
            std::string attr_name = parse_name();
            skip_whitespace();
            if (eof() || peek() != '=')
                fail("expected '=' after attribute name");
            ++pos_;
            skip_whitespace();
            element.attributes[attr_name] = parse_attribute_value();
        }

        // Content until the matching end tag.
        for (;;) {
            if (eof())
                fail("missing end tag for <" + element.name + ">");
            if (looking_at("</")) {
                pos_ += 2;
                const std::string closing = parse_name();
                if (closing != element.name)
                    fail("mismatched end tag </" + closing + "> for <" + element.name + ">");
                skip_whitespace();
                if (eof() || peek() != '>')
                    fail("malformed end tag");
                ++pos_;
                return element;
            }
            if (looking_at("<!--")) {
                const auto end = text_.find("-->", pos_ + 4);
                if (end == std::string_view::npos)
                    fail("unterminated comment");
                pos_ = end + 3;
            } else if (looking_at("<![CDATA[")) {
                const auto end = text_.find("]]>", pos_ + 9);
                if (end == std::string_view::npos)
                    fail("unterminated CDATA section");
                element.text.append(text_.substr(pos_ + 9, end - pos_ - 9));
                pos_ = end + 3;
            } else if (looking_at("<?")) {
                const auto end = text_.find("?>", pos_ + 2);
                if (end == std::string_view::npos)
                    fail("unterminated processing instruction");
                pos_ = end + 2;
            } else if (peek() == '<') {
                element.children.push_back(parse_element());
            } else if (peek() == '&') {
                decode_entity(element.text);
            } else {
                element.text.push_back(text_[pos_++]);
            }
        }
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

} // namespace

XmlElement parse_xml(std::string_view text) { return Parser(text).parse_document(); }

} // namespace oaclass
