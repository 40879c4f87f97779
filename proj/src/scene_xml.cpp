// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 emtrace contributors
//
// Reader/writer for the scene XML dialect. The reader is a strict subset
// parser: elements, attributes, comments, an optional XML declaration, and
// the five predefined entities. Anything outside the published schema is
// rejected. Line/column tracking is 1-based.

#include <cmath>
#include <cstdlib>
#include <map>
#include <sstream>
#include <vector>

#include "emtrace/errors.hpp"
#include "emtrace/scene.hpp"
#include "emtrace/strfmt.hpp"

namespace emtrace {

namespace {

struct XmlAttr {
    std::string name;
    std::string value;
    int line{1}, col{1};
};

struct XmlElement {
    std::string name;
    std::vector<XmlAttr> attributes;
    std::vector<XmlElement> children;
    int line{1}, col{1};

    const XmlAttr* find(std::string_view attr) const {
        for (const XmlAttr& a : attributes)
            if (a.name == attr) return &a;
        return nullptr;
    }
};

class XmlReader {
  public:
    explicit XmlReader(std::string_view text) : text_(text) {}

    XmlElement parse_document() {
        skip_prolog();
        XmlElement root = parse_element();
        skip_misc();
        if (pos_ < text_.size()) fail("trailing content after document element");
        return root;
    }

  private:
    std::string_view text_;
    size_t pos_{0};
    int line_{1}, col_{1};

    [[noreturn]] void fail(const std::string& message) const { throw ParseError(message, line_, col_); }

    bool eof() const { return pos_ >= text_.size(); }
    char peek() const { return text_[pos_]; }

    char advance() {
        const char c = text_[pos_++];
        if (c == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        return c;
    }

    void expect(char c) {
        if (eof() || peek() != c) fail(std::string("expected '") + c + "'");
        advance();
    }

    bool try_consume(std::string_view s) {
        if (text_.substr(pos_, s.size()) != s) return false;
        for (size_t i = 0; i < s.size(); ++i) advance();
        return true;
    }

    void skip_ws() {
        while (!eof() && (peek() == ' ' || peek() == '\t' || peek() == '\r' || peek() == '\n')) advance();
    }

    void skip_comment() {
        // positioned just after "<!--"
        while (true) {
            if (eof()) fail("unterminated comment");
            if (try_consume("-->")) return;
            advance();
        }
    }

    void skip_misc() {
        while (true) {
            skip_ws();
            if (try_consume("<!--")) {
                skip_comment();
                continue;
            }
            return;
        }
    }

    void skip_prolog() {
        skip_ws();
        if (try_consume("<?xml")) {
            while (true) {
                if (eof()) fail("unterminated XML declaration");
                if (try_consume("?>")) break;
                advance();
            }
        }
        skip_misc();
    }

    static bool is_name_start(char c) {
        return std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == ':';
    }
    static bool is_name_char(char c) {
        return is_name_start(c) || std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '.';
    }

    std::string parse_name() {
        if (eof() || !is_name_start(peek())) fail("expected a name");
        std::string name;
        while (!eof() && is_name_char(peek())) name += advance();
        return name;
    }

    std::string parse_attr_value() {
        if (eof() || (peek() != '"' && peek() != '\'')) fail("expected a quoted attribute value");
        const char quote = advance();
        std::string value;
        while (true) {
            if (eof()) fail("unterminated attribute value");
            const char c = peek();
            if (c == quote) {
                advance();
                return value;
            }
            if (c == '<') fail("'<' is not allowed inside attribute values");
            if (c == '&') {
                value += parse_entity();
                continue;
            }
            value += advance();
        }
    }

    char parse_entity() {
        expect('&');
        std::string name;
        while (!eof() && peek() != ';') name += advance();
        expect(';');
        if (name == "amp") return '&';
        if (name == "lt") return '<';
        if (name == "gt") return '>';
        if (name == "quot") return '"';
        if (name == "apos") return '\'';
        fail("unknown entity '&" + name + ";'");
    }

    XmlElement parse_element() {
        const int el_line = line_, el_col = col_;
        expect('<');
        XmlElement el;
        el.line = el_line;
        el.col = el_col;
        el.name = parse_name();
        while (true) {
            skip_ws();
            if (eof()) fail("unterminated element '" + el.name + "'");
            if (try_consume("/>")) return el;
            if (peek() == '>') {
                advance();
                parse_content(el);
                return el;
            }
            XmlAttr attr;
            attr.line = line_;
            attr.col = col_;
            attr.name = parse_name();
            skip_ws();
            expect('=');
            skip_ws();
            attr.value = parse_attr_value();
            for (const XmlAttr& existing : el.attributes)
                if (existing.name == attr.name)
                    throw ParseError("duplicate attribute '" + attr.name + "'", attr.line, attr.col);
            el.attributes.push_back(std::move(attr));
        }
    }

    void parse_content(XmlElement& el) {
        while (true) {
            if (eof()) fail("unterminated element '" + el.name + "'");
            const char c = peek();
            if (c == '<') {
                if (try_consume("</")) {
                    const std::string closing = parse_name();
                    if (closing != el.name)
                        fail("mismatched closing tag '" + closing + "' for element '" + el.name + "'");
                    skip_ws();
                    expect('>');
                    return;
                }
                if (try_consume("<!--")) {
                    skip_comment();
                    continue;
                }
                el.children.push_back(parse_element());
                continue;
            }
            if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
                advance();
                continue;
            }
            fail("character data is not allowed inside '" + el.name + "'");
        }
    }
};

double parse_number(const XmlAttr& attr) {
    const char* begin = attr.value.c_str();
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end == begin || end != begin + attr.value.size() || !std::isfinite(v))
        throw ParseError("attribute '" + attr.name + "' is not a finite number: '" + attr.value + "'",
                         attr.line, attr.col);
    return v;
}

const XmlAttr& require_attr(const XmlElement& el, std::string_view name) {
    const XmlAttr* a = el.find(name);
    if (a == nullptr)
        throw ParseError("element <" + el.name + "> is missing attribute '" + std::string(name) + "'",
                         el.line, el.col);
    return *a;
}

void reject_unknown_attrs(const XmlElement& el, std::initializer_list<std::string_view> allowed) {
    for (const XmlAttr& a : el.attributes) {
        bool known = false;
        for (std::string_view ok : allowed)
            if (a.name == ok) known = true;
        if (!known)
            throw SemanticError("element <" + el.name + "> has unknown attribute '" + a.name + "' (line " +
                                std::to_string(a.line) + ")");
    }
}

Vec3 parse_vertex(const XmlAttr& attr) {
    std::istringstream in{attr.value};
    Vec3 v;
    if (!(in >> v.x >> v.y >> v.z))
        throw ParseError("attribute '" + attr.name + "' must hold three decimal numbers", attr.line,
                         attr.col);
    std::string rest;
    if (in >> rest)
        throw ParseError("attribute '" + attr.name + "' holds more than three numbers", attr.line, attr.col);
    if (!std::isfinite(v.x) || !std::isfinite(v.y) || !std::isfinite(v.z))
        throw ParseError("attribute '" + attr.name + "' holds a non-finite coordinate", attr.line, attr.col);
    return v;
}

std::string escape_attr(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

}  // namespace

Scene parse_scene(std::string_view document) {
    XmlReader reader(document);
    const XmlElement root = reader.parse_document();

    if (root.name != "scene")
        throw SemanticError("document element must be <scene>, got <" + root.name + ">");
    reject_unknown_attrs(root, {"frequency_hz"});
    const double frequency = parse_number(require_attr(root, "frequency_hz"));
    if (!(frequency > 0.0)) throw SemanticError("scene frequency_hz must be > 0");

    std::vector<Material> materials;
    std::vector<SceneObject> objects;
    std::map<std::string, int, std::less<>> material_index;

    for (const XmlElement& child : root.children) {
        if (child.name == "material") {
            reject_unknown_attrs(child, {"name", "permittivity", "conductivity", "permeability"});
            if (!child.children.empty())
                throw SemanticError("<material> takes no child elements (line " + std::to_string(child.line) + ")");
            Material m;
            m.name = require_attr(child, "name").value;
            m.relative_permittivity = parse_number(require_attr(child, "permittivity"));
            m.conductivity = parse_number(require_attr(child, "conductivity"));
            m.relative_permeability = parse_number(require_attr(child, "permeability"));
            m.validate();
            if (material_index.count(m.name))
                throw SemanticError("material '" + m.name + "' defined twice");
            material_index[m.name] = static_cast<int>(materials.size());
            materials.push_back(std::move(m));
        } else if (child.name == "object") {
            reject_unknown_attrs(child, {"name", "material"});
            SceneObject obj;
            obj.name = require_attr(child, "name").value;
            const std::string material_name = require_attr(child, "material").value;
            const auto it = material_index.find(material_name);
            if (it == material_index.end())
                throw SemanticError("object '" + obj.name + "' references undefined material '" +
                                    material_name + "'");
            obj.material_index = it->second;
            for (const XmlElement& tri : child.children) {
                if (tri.name != "tri")
                    throw SemanticError("unknown element <" + tri.name + "> inside object '" + obj.name +
                                        "' (line " + std::to_string(tri.line) + ")");
                reject_unknown_attrs(tri, {"v0", "v1", "v2"});
                Triangle t{parse_vertex(require_attr(tri, "v0")), parse_vertex(require_attr(tri, "v1")),
                           parse_vertex(require_attr(tri, "v2"))};
                if (!(t.area() > kMinTriangleArea))
                    throw SemanticError("object '" + obj.name + "' has a degenerate triangle (line " +
                                        std::to_string(tri.line) + ")");
                obj.triangles.push_back(t);
            }
            objects.push_back(std::move(obj));
        } else {
            throw SemanticError("unknown element <" + child.name + "> (line " + std::to_string(child.line) +
                                ")");
        }
    }

    return Scene(std::move(materials), std::move(objects), frequency);
}

std::string serialize_scene(const Scene& scene) {
    std::string out = "<scene frequency_hz=\"" + format_double(scene.frequency_hz()) + "\">\n";
    for (const Material& m : scene.materials()) {
        out += "  <material name=\"" + escape_attr(m.name) + "\" permittivity=\"" +
               format_double(m.relative_permittivity) + "\" conductivity=\"" + format_double(m.conductivity) +
               "\" permeability=\"" + format_double(m.relative_permeability) + "\"/>\n";
    }
    auto vertex = [](const Vec3& v) {
        return format_double(v.x) + " " + format_double(v.y) + " " + format_double(v.z);
    };
    for (const SceneObject& obj : scene.objects()) {
        const Material& m = scene.material_of(obj);
        out += "  <object name=\"" + escape_attr(obj.name) + "\" material=\"" + escape_attr(m.name) + "\">\n";
        for (const Triangle& t : obj.triangles) {
            out += "    <tri v0=\"" + vertex(t.a) + "\" v1=\"" + vertex(t.b) + "\" v2=\"" + vertex(t.c) +
                   "\"/>\n";
        }
        out += "  </object>\n";
    }
    out += "</scene>\n";
    return out;
}

}  // namespace emtrace
