#pragma once

// Curve files:
//
//   # comment
//   label cusp
//   field Q            (or F5, GF(7), GF(2^3))
//   branches 1
//   gen t^2
//   gen t^3
//   semigroup 3,4,5    (unibranch shortcut, instead of gen lines)

#include <cctype>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "curvering.hpp"
#include "errors.hpp"
#include "field.hpp"

namespace curvedual {

struct FieldDescriptor {
    std::uint64_t p = 0; // 0 means Q
    unsigned e = 1;

    bool rational() const { return p == 0; }
    std::string to_string() const
    {
        if (p == 0) return "Q";
        if (e == 1) return "F" + std::to_string(p);
        return "GF(" + std::to_string(p) + "^" + std::to_string(e) + ")";
    }
    bool operator==(const FieldDescriptor&) const = default;

    static std::optional<FieldDescriptor> parse(std::string_view s)
    {
        auto number = [](std::string_view t, std::uint64_t& out) {
            if (t.empty() || t.size() > 9) return false;
            out = 0;
            for (char c : t) {
                if (!std::isdigit(static_cast<unsigned char>(c))) return false;
                out = out * 10 + static_cast<std::uint64_t>(c - '0');
            }
            return true;
        };
        FieldDescriptor d;
        if (s == "Q") return d;
        std::uint64_t p = 0, e = 1;
        if (s.size() > 1 && s[0] == 'F' && number(s.substr(1), p)) {
        } else if (s.size() > 4 && s.substr(0, 3) == "GF(" && s.back() == ')') {
            auto inner = s.substr(3, s.size() - 4);
            auto caret = inner.find('^');
            if (caret == std::string_view::npos) {
                if (!number(inner, p)) return std::nullopt;
            } else if (!number(inner.substr(0, caret), p) || !number(inner.substr(caret + 1), e)) {
                return std::nullopt;
            }
        } else {
            return std::nullopt;
        }
        if (!is_prime(p) || e < 1 || e > 16) return std::nullopt;
        d.p = p;
        d.e = static_cast<unsigned>(e);
        return d;
    }
};

template <Field F>
FieldDescriptor describe_field(const F& k)
{
    FieldDescriptor d;
    auto n = k.name();
    if (auto p = FieldDescriptor::parse(n)) d = *p;
    return d;
}

/// Calls fn(field) with Rationals or the finite field named by d.
template <class Fn>
decltype(auto) with_field(const FieldDescriptor& d, Fn&& fn)
{
    if (d.rational()) return fn(Rationals{});
    return fn(FiniteField(d.p, d.e));
}

struct CurveFile {
    FieldDescriptor field;
    std::size_t branches = 1;
    std::vector<std::string> generators;
    std::optional<std::vector<int>> semigroup;
    std::string label;
    std::vector<int> generator_lines; // source lines, for messages only

    bool operator==(const CurveFile& o) const
    {
        return field == o.field && branches == o.branches && generators == o.generators &&
               semigroup == o.semigroup && label == o.label;
    }
};

namespace detail {

[[noreturn]] inline void parse_fail(int line, std::size_t col, const std::string& what)
{
    fail(ErrorKind::ParseError, "line " + std::to_string(line) + ", column " + std::to_string(col) + ": " + what);
}

inline std::string_view trim(std::string_view s)
{
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

} // namespace detail

inline CurveFile parse_curve_file(std::string_view text)
{
    CurveFile f;
    bool have_field = false, have_branches = false;
    int line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        std::string_view raw = text.substr(start, end - start);
        ++line_no;
        start = end + 1;
        if (auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
        if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);
        std::size_t kpos = 0;
        while (kpos < raw.size() && std::isspace(static_cast<unsigned char>(raw[kpos]))) ++kpos;
        if (kpos == raw.size()) {
            if (end == text.size()) break;
            continue;
        }
        std::size_t kend = kpos;
        while (kend < raw.size() && !std::isspace(static_cast<unsigned char>(raw[kend]))) ++kend;
        std::string key(raw.substr(kpos, kend - kpos));
        std::size_t vpos = kend;
        while (vpos < raw.size() && std::isspace(static_cast<unsigned char>(raw[vpos]))) ++vpos;
        std::string value(detail::trim(raw.substr(kend)));
        const std::size_t vcol = vpos + 1;
        if (key == "field") {
            if (have_field) detail::parse_fail(line_no, kpos + 1, "duplicate 'field'");
            auto d = FieldDescriptor::parse(value);
            if (!d) detail::parse_fail(line_no, vcol, "unknown field '" + value + "'");
            f.field = *d;
            have_field = true;
        } else if (key == "branches") {
            if (have_branches) detail::parse_fail(line_no, kpos + 1, "duplicate 'branches'");
            std::size_t used = 0;
            long r = 0;
            try {
                r = std::stol(value, &used);
            } catch (...) {
                used = 0;
            }
            if (used != value.size() || value.empty() || r < 1 || r > 64)
                detail::parse_fail(line_no, vcol, "bad branch count '" + value + "'");
            f.branches = static_cast<std::size_t>(r);
            have_branches = true;
        } else if (key == "gen") {
            if (value.empty()) detail::parse_fail(line_no, vcol, "empty generator");
            f.generators.push_back(value);
            f.generator_lines.push_back(line_no);
        } else if (key == "semigroup") {
            if (f.semigroup) detail::parse_fail(line_no, kpos + 1, "duplicate 'semigroup'");
            std::vector<int> gens;
            std::string item;
            std::size_t col = vcol;
            for (char& c : value)
                if (c == ',') c = ' ';
            std::istringstream in(value);
            while (in >> item) {
                std::size_t used = 0;
                int a = 0;
                try {
                    a = std::stoi(item, &used);
                } catch (...) {
                    used = 0;
                }
                if (used != item.size()) detail::parse_fail(line_no, col, "bad semigroup generator '" + item + "'");
                gens.push_back(a);
            }
            if (gens.empty()) detail::parse_fail(line_no, col, "empty semigroup");
            f.semigroup = std::move(gens);
        } else if (key == "label") {
            f.label = value;
        } else {
            detail::parse_fail(line_no, kpos + 1, "unknown key '" + key + "'");
        }
        if (end == text.size()) break;
    }
    if (!have_field) detail::parse_fail(line_no, 1, "missing 'field'");
    if (f.semigroup && !f.generators.empty())
        fail(ErrorKind::ParseError, "a file gives either 'semigroup' or 'gen' lines, not both");
    if (!f.semigroup && f.generators.empty()) fail(ErrorKind::ParseError, "no generators");
    if (f.semigroup && have_branches && f.branches != 1)
        fail(ErrorKind::ParseError, "the semigroup shortcut describes a unibranch curve");
    return f;
}

inline std::string print_curve_file(const CurveFile& f)
{
    std::string out;
    if (!f.label.empty()) out += "label " + f.label + "\n";
    out += "field " + f.field.to_string() + "\n";
    out += "branches " + std::to_string(f.branches) + "\n";
    if (f.semigroup) {
        out += "semigroup ";
        for (std::size_t i = 0; i < f.semigroup->size(); ++i) out += (i ? "," : "") + std::to_string((*f.semigroup)[i]);
        out += "\n";
    }
    for (const auto& g : f.generators) out += "gen " + g + "\n";
    return out;
}

template <Field F>
CurveSpec<F> curve_spec(const CurveFile& f, const F& k, int window_bound = 200)
{
    CurveSpec<F> s(k, f.branches);
    s.label = f.label;
    s.window_bound = window_bound;
    s.semigroup = f.semigroup;
    for (std::size_t i = 0; i < f.generators.size(); ++i) {
        try {
            s.generators.push_back(BranchElement<F>::parse(k, f.generators[i], f.branches));
        } catch (const Error& e) {
            int line = i < f.generator_lines.size() ? f.generator_lines[i] : 0;
            fail(e.kind(), "line " + std::to_string(line) + ": " + e.message());
        }
    }
    return s;
}

/// A curve file describing the ring, generators printed in element syntax.
template <Field F>
CurveFile to_curve_file(const CurveRing<F>& ring)
{
    CurveFile f;
    f.field = describe_field(ring.field());
    f.branches = ring.branches();
    f.label = ring.label();
    if (ring.spec().semigroup)
        f.semigroup = ring.spec().semigroup;
    else
        for (const auto& g : ring.spec().generators) f.generators.push_back(g.to_string());
    return f;
}

} // namespace curvedual
