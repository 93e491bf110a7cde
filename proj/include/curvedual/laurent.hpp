#pragma once

// Elements of a finite product of Laurent polynomial rings k[t, 1/t], one
// factor per branch, optionally marked as differentials (a formal "dt").
// All elements have finite support; infinite tails live on modules.

#include <cctype>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "field.hpp"

namespace curvedual {

/// Per-branch valuation; nullopt stands for +infinity (the branch component vanishes).
using Valuation = std::optional<int>;

inline bool valuation_less(const Valuation& a, const Valuation& b)
{
    if (!a) return false;
    if (!b) return true;
    return *a < *b;
}

template <Field F>
class BranchElement {
public:
    using S = Scalar<F>;

    struct Term {
        int exponent;
        S coeff;
    };

    BranchElement(F field, std::size_t branches, bool differential = false)
        : field_(std::move(field)), terms_(branches), differential_(differential)
    {
        if (branches == 0) fail(ErrorKind::InvalidArgument, "an element needs at least one branch");
    }

    static BranchElement monomial(const F& field, std::size_t branches, std::size_t branch, int exponent,
                                  const S& coeff, bool differential = false)
    {
        BranchElement e(field, branches, differential);
        e.check_branch(branch);
        if (!field.is_zero(coeff)) e.terms_[branch].push_back({exponent, coeff});
        return e;
    }

    static BranchElement monomial(const F& field, std::size_t branches, std::size_t branch, int exponent)
    {
        return monomial(field, branches, branch, exponent, field.one());
    }

    /// The same scalar multiple of t^exponent on every branch.
    static BranchElement diagonal(const F& field, std::size_t branches, int exponent, const S& coeff)
    {
        BranchElement e(field, branches);
        if (!field.is_zero(coeff))
            for (auto& b : e.terms_) b.push_back({exponent, coeff});
        return e;
    }

    static BranchElement one(const F& field, std::size_t branches) { return diagonal(field, branches, 0, field.one()); }

    /// Build from arbitrary (possibly unsorted or repeated) terms.
    static BranchElement from_terms(const F& field, std::vector<std::vector<Term>> raw, bool differential = false)
    {
        BranchElement e(field, raw.size(), differential);
        for (std::size_t i = 0; i < raw.size(); ++i) {
            std::map<int, S> acc;
            for (auto& t : raw[i]) {
                auto c = field.normalize(t.coeff);
                auto [it, fresh] = acc.try_emplace(t.exponent, c);
                if (!fresh) it->second = field.add(it->second, c);
            }
            for (auto& [ex, c] : acc)
                if (!field.is_zero(c)) e.terms_[i].push_back({ex, c});
        }
        return e;
    }

    const F& field() const { return field_; }
    std::size_t branches() const { return terms_.size(); }
    bool is_differential() const { return differential_; }
    const std::vector<Term>& terms(std::size_t branch) const
    {
        check_branch(branch);
        return terms_[branch];
    }

    bool is_zero() const
    {
        for (const auto& b : terms_)
            if (!b.empty()) return false;
        return true;
    }
    bool is_zero_on(std::size_t branch) const { return terms(branch).empty(); }
    bool nonzero_on_every_branch() const
    {
        for (const auto& b : terms_)
            if (b.empty()) return false;
        return true;
    }

    Valuation valuation(std::size_t branch) const
    {
        const auto& t = terms(branch);
        if (t.empty()) return std::nullopt;
        return t.front().exponent;
    }

    std::vector<Valuation> valuations() const
    {
        std::vector<Valuation> v;
        for (std::size_t i = 0; i < branches(); ++i) v.push_back(valuation(i));
        return v;
    }

    /// Largest exponent present on the branch (nullopt if the branch is zero).
    std::optional<int> top_exponent(std::size_t branch) const
    {
        const auto& t = terms(branch);
        if (t.empty()) return std::nullopt;
        return t.back().exponent;
    }

    S coefficient(std::size_t branch, int exponent) const
    {
        for (const auto& t : terms(branch))
            if (t.exponent == exponent) return t.coeff;
        return field_.zero();
    }

    /// Coefficient of t^-1 dt on the branch.
    S residue(std::size_t branch) const
    {
        if (branch >= branches()) fail(ErrorKind::BranchOutOfRange, "residue on branch " + std::to_string(branch));
        if (!differential_) fail(ErrorKind::DifferentialDegreeError, "residue of a function (not a differential)");
        return coefficient(branch, -1);
    }

    BranchElement with_differential(bool d) const
    {
        BranchElement e = *this;
        e.differential_ = d;
        return e;
    }

    /// Drop every term with exponent >= bound[i] on branch i.
    BranchElement truncated(const std::vector<int>& bound) const
    {
        BranchElement e(field_, branches(), differential_);
        for (std::size_t i = 0; i < branches(); ++i)
            for (const auto& t : terms_[i])
                if (t.exponent < bound[i]) e.terms_[i].push_back(t);
        return e;
    }

    /// Keep only branch i (other branches are zero).
    BranchElement restricted_to(std::size_t branch) const
    {
        BranchElement e(field_, branches(), differential_);
        e.terms_[branch] = terms(branch);
        return e;
    }

    BranchElement operator+(const BranchElement& o) const { return combine(o, false); }
    BranchElement operator-(const BranchElement& o) const { return combine(o, true); }

    BranchElement operator-() const
    {
        BranchElement e = *this;
        for (auto& b : e.terms_)
            for (auto& t : b) t.coeff = field_.neg(t.coeff);
        return e;
    }

    BranchElement scaled(const S& c) const
    {
        BranchElement e(field_, branches(), differential_);
        if (field_.is_zero(c)) return e;
        for (std::size_t i = 0; i < branches(); ++i)
            for (const auto& t : terms_[i]) e.terms_[i].push_back({t.exponent, field_.mul(c, t.coeff)});
        return e;
    }

    BranchElement operator*(const BranchElement& o) const
    {
        check_compatible(o);
        if (differential_ && o.differential_)
            fail(ErrorKind::DifferentialDegreeError, "product of two differentials");
        BranchElement e(field_, branches(), differential_ || o.differential_);
        for (std::size_t i = 0; i < branches(); ++i) {
            if (terms_[i].empty() || o.terms_[i].empty()) continue;
            std::map<int, S> acc;
            for (const auto& a : terms_[i])
                for (const auto& b : o.terms_[i]) {
                    S p = field_.mul(a.coeff, b.coeff);
                    auto [it, fresh] = acc.try_emplace(a.exponent + b.exponent, p);
                    if (!fresh) it->second = field_.add(it->second, p);
                }
            for (auto& [ex, c] : acc)
                if (!field_.is_zero(c)) e.terms_[i].push_back({ex, c});
        }
        return e;
    }

    /// Multiply by t^shift on every branch.
    BranchElement shifted(const std::vector<int>& shift) const
    {
        BranchElement e = *this;
        for (std::size_t i = 0; i < branches(); ++i)
            for (auto& t : e.terms_[i]) t.exponent += shift[i];
        return e;
    }

    bool operator==(const BranchElement& o) const
    {
        if (branches() != o.branches() || differential_ != o.differential_) return false;
        for (std::size_t i = 0; i < branches(); ++i) {
            if (terms_[i].size() != o.terms_[i].size()) return false;
            for (std::size_t k = 0; k < terms_[i].size(); ++k)
                if (terms_[i][k].exponent != o.terms_[i][k].exponent ||
                    !field_.equal(terms_[i][k].coeff, o.terms_[i][k].coeff))
                    return false;
        }
        return true;
    }

    std::string branch_to_string(std::size_t i) const
    {
        const auto& ts = terms(i);
        if (ts.empty()) return "0";
        std::string out;
        bool first = true;
        for (const auto& t : ts) {
            std::string c = field_.to_string(t.coeff);
            bool negative = !c.empty() && c[0] == '-';
            if (negative) c.erase(0, 1);
            std::string body;
            if (t.exponent == 0) {
                body = c;
            } else {
                if (c != "1") body = c + "*";
                body += "t";
                if (t.exponent != 1) body += "^" + std::to_string(t.exponent);
            }
            if (first)
                out += (negative ? "-" : "") + body;
            else
                out += (negative ? " - " : " + ") + body;
            first = false;
        }
        return out;
    }

    std::string to_string() const
    {
        if (branches() == 1) {
            std::string s = branch_to_string(0);
            if (!differential_) return s;
            if (terms_[0].size() <= 1) return s + " dt";
            return "(" + s + ") dt";
        }
        std::string s = "(";
        for (std::size_t i = 0; i < branches(); ++i) {
            if (i) s += ", ";
            s += branch_to_string(i);
        }
        s += ")";
        if (differential_) s += " dt";
        return s;
    }

    /// Parse the text syntax, e.g. "(t^2 + t^5, 0)", "3/2*t^-1 dt".
    /// When expected_branches is given, a mismatch is a BranchMismatch.
    static BranchElement parse(const F& field, std::string_view text,
                               std::optional<std::size_t> expected_branches = std::nullopt);

private:
    void check_branch(std::size_t b) const
    {
        if (b >= terms_.size())
            fail(ErrorKind::BranchOutOfRange, "branch " + std::to_string(b) + " of " + std::to_string(terms_.size()));
    }

    void check_compatible(const BranchElement& o) const
    {
        if (branches() != o.branches())
            fail(ErrorKind::BranchMismatch,
                 std::to_string(branches()) + " vs " + std::to_string(o.branches()) + " branches");
    }

    BranchElement combine(const BranchElement& o, bool subtract) const
    {
        check_compatible(o);
        if (differential_ != o.differential_)
            fail(ErrorKind::DifferentialDegreeError, "adding a function and a differential");
        BranchElement e(field_, branches(), differential_);
        for (std::size_t i = 0; i < branches(); ++i) {
            const auto& a = terms_[i];
            const auto& b = o.terms_[i];
            std::size_t x = 0, y = 0;
            auto& out = e.terms_[i];
            while (x < a.size() || y < b.size()) {
                if (y == b.size() || (x < a.size() && a[x].exponent < b[y].exponent)) {
                    out.push_back(a[x++]);
                } else if (x == a.size() || b[y].exponent < a[x].exponent) {
                    out.push_back({b[y].exponent, subtract ? field_.neg(b[y].coeff) : b[y].coeff});
                    ++y;
                } else {
                    S c = subtract ? field_.sub(a[x].coeff, b[y].coeff) : field_.add(a[x].coeff, b[y].coeff);
                    if (!field_.is_zero(c)) out.push_back({a[x].exponent, c});
                    ++x;
                    ++y;
                }
            }
        }
        return e;
    }

    F field_;
    std::vector<std::vector<Term>> terms_;
    bool differential_;
};

namespace detail {

class ElementLexer {
public:
    explicit ElementLexer(std::string_view s) : s_(s) {}

    void skip_ws()
    {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool at_end()
    {
        skip_ws();
        return pos_ >= s_.size();
    }
    char peek()
    {
        skip_ws();
        return pos_ < s_.size() ? s_[pos_] : '\0';
    }
    bool accept(char c)
    {
        if (peek() == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    bool accept_word(std::string_view w)
    {
        skip_ws();
        if (s_.substr(pos_, w.size()) == w) {
            pos_ += w.size();
            return true;
        }
        return false;
    }
    void expect(char c)
    {
        if (!accept(c)) error(std::string("expected '") + c + "'");
    }
    std::string_view digits()
    {
        skip_ws();
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        return s_.substr(start, pos_ - start);
    }
    std::string_view bracketed()
    {
        std::size_t start = pos_;
        while (pos_ < s_.size() && s_[pos_] != ']') ++pos_;
        if (pos_ >= s_.size()) error("unterminated '['");
        ++pos_;
        return s_.substr(start, pos_ - start);
    }
    [[noreturn]] void error(const std::string& what) const
    {
        fail(ErrorKind::ParseError, what + " at column " + std::to_string(pos_ + 1) + " in \"" + std::string(s_) + "\"");
    }
    std::size_t pos() const { return pos_; }

private:
    std::string_view s_;
    std::size_t pos_ = 0;
};

template <Field F>
std::vector<typename BranchElement<F>::Term> parse_branch(const F& field, ElementLexer& lex)
{
    using Term = typename BranchElement<F>::Term;
    std::vector<Term> out;
    bool first = true;
    while (true) {
        bool negative = false;
        if (lex.accept('-'))
            negative = true;
        else if (!lex.accept('+') && !first)
            break;
        first = false;

        std::optional<Scalar<F>> coeff;
        char c = lex.peek();
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::string num(lex.digits());
            if (lex.accept('/')) {
                auto den = lex.digits();
                if (den.empty()) lex.error("expected denominator");
                num += "/" + std::string(den);
            }
            coeff = field.parse(num);
            if (!coeff) lex.error("bad coefficient '" + num + "'");
        } else if (c == '[') {
            auto tok = lex.bracketed();
            coeff = field.parse(tok);
            if (!coeff) lex.error("bad coefficient '" + std::string(tok) + "'");
        }
        int exponent = 0;
        bool has_t = false;
        if (coeff) lex.accept('*');
        if (lex.peek() == 't') {
            lex.accept('t');
            has_t = true;
            exponent = 1;
            if (lex.accept('^')) {
                bool neg_exp = lex.accept('-');
                if (!neg_exp) lex.accept('+');
                auto d = lex.digits();
                if (d.empty() || d.size() > 6) lex.error("bad exponent");
                exponent = std::stoi(std::string(d));
                if (neg_exp) exponent = -exponent;
            }
        }
        if (!coeff && !has_t) lex.error("expected a term");
        Scalar<F> value = coeff ? *coeff : field.one();
        if (negative) value = field.neg(value);
        out.push_back({exponent, value});
    }
    return out;
}

} // namespace detail

template <Field F>
BranchElement<F> BranchElement<F>::parse(const F& field, std::string_view text,
                                         std::optional<std::size_t> expected_branches)
{
    detail::ElementLexer lex(text);
    std::vector<std::vector<Term>> raw;
    if (lex.accept('(')) {
        raw.push_back(detail::parse_branch(field, lex));
        while (lex.accept(',')) raw.push_back(detail::parse_branch(field, lex));
        lex.expect(')');
    } else {
        raw.push_back(detail::parse_branch(field, lex));
    }
    bool differential = lex.accept_word("dt");
    if (!lex.at_end()) lex.error("trailing input");
    if (expected_branches && *expected_branches != raw.size())
        fail(ErrorKind::BranchMismatch, "expected " + std::to_string(*expected_branches) + " branches, got " +
                                            std::to_string(raw.size()) + " in \"" + std::string(text) + "\"");
    return from_terms(field, std::move(raw), differential);
}

} // namespace curvedual
