#pragma once

// Minimal XML well-formedness scanner plus helpers for picking structural
// facts out of the SVG output. Covers exactly the subset this project emits:
// declaration, elements with quoted attributes, self-closing tags, character
// data with the five predefined entities.

#include <cctype>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace xmlcheck {

struct Result {
    bool ok;
    std::string error;
};

inline Result well_formed(std::string_view doc) {
    auto fail = [](std::string msg) { return Result{false, std::move(msg)}; };
    std::size_t i = 0;
    const std::size_t n = doc.size();
    std::vector<std::string> stack;
    bool seen_root = false;

    auto name_char = [](char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_' || c == ':' ||
               c == '.';
    };

    while (i < n) {
        const char c = doc[i];
        if (c == '<') {
            if (doc.compare(i, 2, "<?") == 0) {
                const auto end = doc.find("?>", i);
                if (end == std::string_view::npos) return fail("unterminated declaration");
                i = end + 2;
                continue;
            }
            if (doc.compare(i, 4, "<!--") == 0) {
                const auto end = doc.find("-->", i);
                if (end == std::string_view::npos) return fail("unterminated comment");
                i = end + 3;
                continue;
            }
            const bool closing = i + 1 < n && doc[i + 1] == '/';
            i += closing ? 2 : 1;
            std::string name;
            while (i < n && name_char(doc[i])) name += doc[i++];
            if (name.empty()) return fail("missing element name at offset " + std::to_string(i));
            if (closing) {
                while (i < n && std::isspace(static_cast<unsigned char>(doc[i]))) ++i;
                if (i >= n || doc[i] != '>') return fail("malformed closing tag </" + name);
                ++i;
                if (stack.empty() || stack.back() != name)
                    return fail("mismatched closing tag </" + name + ">");
                stack.pop_back();
                continue;
            }
            // attributes
            bool self_closed = false;
            while (true) {
                while (i < n && std::isspace(static_cast<unsigned char>(doc[i]))) ++i;
                if (i >= n) return fail("unterminated tag <" + name);
                if (doc[i] == '>') {
                    ++i;
                    break;
                }
                if (doc[i] == '/') {
                    if (i + 1 >= n || doc[i + 1] != '>') return fail("stray '/' in <" + name);
                    i += 2;
                    self_closed = true;
                    break;
                }
                std::string attr;
                while (i < n && name_char(doc[i])) attr += doc[i++];
                if (attr.empty()) return fail("bad attribute in <" + name);
                if (i >= n || doc[i] != '=') return fail("attribute '" + attr + "' without value");
                ++i;
                if (i >= n || doc[i] != '"') return fail("attribute '" + attr + "' not quoted");
                ++i;
                while (i < n && doc[i] != '"') {
                    if (doc[i] == '<') return fail("raw '<' inside attribute value");
                    ++i;
                }
                if (i >= n) return fail("unterminated attribute value");
                ++i;
            }
            if (stack.empty()) {
                if (seen_root) return fail("content after root element");
                seen_root = true;
                if (self_closed) continue;
            }
            if (!self_closed) stack.push_back(name);
            continue;
        }
        if (c == '&') {
            static constexpr std::string_view entities[] = {"&amp;", "&lt;", "&gt;", "&quot;",
                                                            "&apos;"};
            bool ok = false;
            for (auto e : entities)
                if (doc.compare(i, e.size(), e) == 0) {
                    i += e.size();
                    ok = true;
                    break;
                }
            if (!ok) return fail("bare '&' at offset " + std::to_string(i));
            continue;
        }
        if (c == '>') return fail("stray '>' at offset " + std::to_string(i));
        if (!stack.empty() || std::isspace(static_cast<unsigned char>(c)) || !seen_root) {
            ++i;
            continue;
        }
        return fail("text outside root element");
    }
    if (!stack.empty()) return fail("unclosed element <" + stack.back() + ">");
    if (!seen_root) return fail("no root element");
    return {true, ""};
}

inline std::size_t count_occurrences(std::string_view doc, std::string_view needle) {
    std::size_t count = 0;
    for (auto pos = doc.find(needle); pos != std::string_view::npos;
         pos = doc.find(needle, pos + needle.size()))
        ++count;
    return count;
}

/// Value of `attr` in the `index`-th element whose open tag starts with
/// `<tag ` and contains `must_contain` (if non-empty).
inline std::optional<std::string> nth_attribute(std::string_view doc, std::string_view tag,
                                                std::string_view attr, std::size_t index,
                                                std::string_view must_contain = "") {
    const std::string open = "<" + std::string(tag);
    std::size_t seen = 0;
    for (auto pos = doc.find(open); pos != std::string_view::npos; pos = doc.find(open, pos + 1)) {
        const auto end = doc.find('>', pos);
        if (end == std::string_view::npos) return std::nullopt;
        const std::string_view element = doc.substr(pos, end - pos);
        if (!must_contain.empty() && element.find(must_contain) == std::string_view::npos) continue;
        if (seen++ != index) continue;
        const std::string key = " " + std::string(attr) + "=\"";
        const auto a = element.find(key);
        if (a == std::string_view::npos) return std::nullopt;
        const auto v0 = a + key.size();
        const auto v1 = element.find('"', v0);
        if (v1 == std::string_view::npos) return std::nullopt;
        return std::string(element.substr(v0, v1 - v0));
    }
    return std::nullopt;
}

/// points="x1,y1 x2,y2 ..." -> number of coordinate pairs.
inline std::size_t polyline_point_count(std::string_view points) {
    if (points.empty()) return 0;
    return count_occurrences(points, ",");
}

}  // namespace xmlcheck
