#pragma once

// Fractional ideals of a CurveRing. A module M is stored as
//   M = V + (+)_i t^{d_i} k[[t_i]]
// with V a subspace of the window (+)_i span(t^{p_i}, ..., t^{d_i - 1}) kept in
// reduced echelon form, d_i minimal and p_i the minimal valuation of M on
// branch i. That normal form is unique, so == compares modules.

#include <climits>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "curvering.hpp"
#include "errors.hpp"
#include "field.hpp"
#include "laurent.hpp"
#include "linalg.hpp"
#include "window.hpp"

namespace curvedual {

struct RandomIdealParams {
    int max_shift = 0;      // generator valuations are drawn from [-max_shift, max_shift]
    int extra_generators = 0;
};

template <Field F>
class FracIdeal {
public:
    using Element = BranchElement<F>;
    static constexpr int kNoTail = INT_MAX;

    /// A spanning set modulo a tail: span(elements) + (+)_i t^{hi_i} k[[t_i]].
    /// The caller guarantees the span is an O-module.
    struct Span {
        std::vector<Element> elements;
        std::vector<int> hi;
    };

    static FracIdeal from_span(const CurveRing<F>& ring, const Span& s, bool differential);

    /// The O-module generated by gens.
    static FracIdeal from_generators(const CurveRing<F>& ring, const std::vector<Element>& gens);

    /// (+)_i t^{a_i} k[[t_i]] (times dt when differential).
    static FracIdeal monomial(const CurveRing<F>& ring, const std::vector<int>& a, bool differential = false)
    {
        if (a.size() != ring.branches()) fail(ErrorKind::BranchMismatch, "exponent vector length");
        Span s{{}, a};
        return from_span(ring, s, differential);
    }

    static FracIdeal unit(const CurveRing<F>& ring) { return from_generators(ring, {ring.one()}); }
    static FracIdeal normalization(const CurveRing<F>& ring)
    {
        return monomial(ring, std::vector<int>(ring.branches(), 0));
    }
    static FracIdeal conductor(const CurveRing<F>& ring) { return monomial(ring, ring.conductor_exponents()); }

    const CurveRing<F>& ring() const { return ring_; }
    const F& field() const { return ring_.field(); }
    std::size_t branches() const { return ring_.branches(); }
    bool is_differential() const { return differential_; }
    /// p_i: minimal valuation on each branch.
    const std::vector<int>& pole() const { return window_.lo(); }
    /// d_i: (+) t^{d_i} k[[t_i]] is the largest monomial tail inside M.
    const std::vector<int>& tail() const { return window_.hi(); }
    const detail::Window& window() const { return window_; }
    const Echelon<F>& echelon() const { return echelon_; }
    /// Echelon basis of the finite part, as elements.
    const std::vector<Element>& basis() const { return basis_; }
    std::size_t finite_dim() const { return echelon_.rank(); }

    /// dim_k M / t^D Obar - sum_i D_i, independent of D >= d; differences of
    /// indices are quotient lengths.
    long index() const
    {
        long s = static_cast<long>(finite_dim());
        for (int d : tail()) s -= d;
        return s;
    }

    bool contains(const Element& f) const
    {
        if (f.branches() != branches())
            fail(ErrorKind::BranchMismatch, std::to_string(f.branches()) + " vs " + std::to_string(branches()));
        if (f.is_zero()) return true;
        if (f.is_differential() != differential_) return false;
        auto v = window_.embed(f);
        return v && echelon_.contains(*v);
    }

    bool contains(const FracIdeal& n) const
    {
        check_owner(n);
        if (n.differential_ != differential_) return false;
        for (std::size_t i = 0; i < branches(); ++i)
            if (n.tail()[i] < tail()[i]) return false;
        for (const auto& b : n.basis_)
            if (!contains(b)) return false;
        return true;
    }

    bool operator==(const FracIdeal& o) const
    {
        return ring_ == o.ring_ && differential_ == o.differential_ && window_.lo() == o.window_.lo() &&
               window_.hi() == o.window_.hi() && echelon_ == o.echelon_;
    }

    /// Image of M modulo t^{w.hi} in the window w; requires w.lo <= p.
    std::vector<Vec<F>> span_in(const detail::Window& w) const
    {
        std::vector<Vec<F>> out;
        for (const auto& b : basis_) {
            Vec<F> v = w.embed_or_throw(b.truncated(w.hi()));
            if (!is_zero_vec(field(), v)) out.push_back(std::move(v));
        }
        for (std::size_t i = 0; i < branches(); ++i)
            for (int e = std::max(tail()[i], w.lo(i)); e < w.hi(i); ++e) out.push_back(w.unit(field(), i, e));
        return out;
    }

    /// x*M where x may vanish on some branches (the result is then zero there).
    Span times_span(const Element& x) const
    {
        if (x.branches() != branches()) fail(ErrorKind::BranchMismatch, "multiplier has wrong branch count");
        if (x.is_differential() && differential_) fail(ErrorKind::DifferentialDegreeError, "product of two differentials");
        Span s;
        s.hi.assign(branches(), kNoTail);
        for (std::size_t i = 0; i < branches(); ++i)
            if (auto v = x.valuation(i)) s.hi[i] = tail()[i] + *v;
        for (const auto& b : basis_) {
            Element p = x * b;
            if (!p.is_zero()) s.elements.push_back(std::move(p));
        }
        return s;
    }

    FracIdeal multiply(const Element& x) const
    {
        for (std::size_t i = 0; i < branches(); ++i)
            if (x.is_zero_on(i))
                fail(ErrorKind::ZeroOnBranch, "multiplier " + x.to_string() + " vanishes on branch " + std::to_string(i + 1));
        return from_span(ring_, times_span(x), differential_ || x.is_differential());
    }

    FracIdeal sum(const FracIdeal& n) const
    {
        check_owner(n);
        if (n.differential_ != differential_)
            fail(ErrorKind::DifferentialDegreeError, "sum of a function module and a differential module");
        Span s{basis_, {}};
        s.elements.insert(s.elements.end(), n.basis_.begin(), n.basis_.end());
        for (std::size_t i = 0; i < branches(); ++i) s.hi.push_back(std::min(tail()[i], n.tail()[i]));
        return from_span(ring_, s, differential_);
    }

    FracIdeal intersect(const FracIdeal& n) const;

    /// The same module with the formal dt marker set or cleared.
    FracIdeal with_differential(bool d) const { return FracIdeal(ring_, window_, echelon_, d); }

    /// m*M for the maximal ideal m of O.
    FracIdeal maximal_ideal_times() const
    {
        Span s{{}, std::vector<int>(branches(), kNoTail)};
        for (const auto& g : ring_.generators()) {
            Span t = times_span(g);
            s.elements.insert(s.elements.end(), t.elements.begin(), t.elements.end());
            for (std::size_t i = 0; i < branches(); ++i) s.hi[i] = std::min(s.hi[i], t.hi[i]);
        }
        return from_span(ring_, s, differential_);
    }

    /// Lifts of a k-basis of M/mM.
    std::vector<Element> minimal_generators() const
    {
        FracIdeal mm = maximal_ideal_times();
        detail::Window w(pole(), mm.tail());
        auto sub = mm.span_in(w);
        auto mine = span_in(w);
        std::vector<Element> out;
        for (const auto& v : complement_basis(field(), w.dim(), sub, mine))
            out.push_back(w.element(field(), v, differential_));
        return out;
    }

    std::optional<Element> is_principal() const
    {
        auto g = minimal_generators();
        if (g.size() == 1) return g.front();
        return std::nullopt;
    }

    FracIdeal product(const FracIdeal& n) const
    {
        check_owner(n);
        if (differential_ && n.differential_) fail(ErrorKind::DifferentialDegreeError, "product of two differential modules");
        Span s{{}, std::vector<int>(branches(), kNoTail)};
        for (const auto& g : n.minimal_generators()) {
            Span t = times_span(g);
            s.elements.insert(s.elements.end(), t.elements.begin(), t.elements.end());
            for (std::size_t i = 0; i < branches(); ++i) s.hi[i] = std::min(s.hi[i], t.hi[i]);
        }
        return from_span(ring_, s, differential_ || n.differential_);
    }

    /// (M : N) = {x : x N in M}.
    FracIdeal colon(const FracIdeal& n) const;

    std::string to_string() const
    {
        std::string s = "<";
        auto gens = minimal_generators();
        for (std::size_t k = 0; k < gens.size(); ++k) s += (k ? ", " : "") + gens[k].to_string();
        s += ">";
        return s;
    }

    /// Human summary of the normal form.
    std::string describe() const
    {
        auto vec = [](const std::vector<int>& v) {
            std::string s = "(";
            for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
            return s + ")";
        };
        return "pole " + vec(pole()) + " tail " + vec(tail()) + " finite dim " + std::to_string(finite_dim());
    }

    void check_owner(const FracIdeal& n) const
    {
        if (!(ring_ == n.ring_)) fail(ErrorKind::OwnerMismatch, "modules live over different curve rings");
    }

private:
    FracIdeal(CurveRing<F> ring, detail::Window w, Echelon<F> e, bool differential)
        : ring_(std::move(ring)), window_(std::move(w)), echelon_(std::move(e)), differential_(differential)
    {
        for (const auto& row : echelon_.rows()) basis_.push_back(window_.element(field(), row, differential_));
    }

    CurveRing<F> ring_;
    detail::Window window_;
    Echelon<F> echelon_;
    bool differential_;
    std::vector<Element> basis_;
};

template <Field F>
FracIdeal<F> FracIdeal<F>::from_span(const CurveRing<F>& ring, const Span& s, bool differential)
{
    const F& field = ring.field();
    const std::size_t r = ring.branches();
    if (s.hi.size() != r) fail(ErrorKind::BranchMismatch, "tail vector length");
    for (std::size_t i = 0; i < r; ++i)
        if (s.hi[i] == kNoTail) fail(ErrorKind::ZeroOnBranch, "module vanishes on branch " + std::to_string(i + 1));
    std::vector<int> lo = s.hi;
    for (const auto& e : s.elements) {
        if (e.branches() != r) fail(ErrorKind::BranchMismatch, "element " + e.to_string());
        if (!e.is_zero() && e.is_differential() != differential)
            fail(ErrorKind::DifferentialDegreeError, "mixed functions and differentials in one module");
        for (std::size_t i = 0; i < r; ++i)
            if (auto v = e.valuation(i); v && *v < lo[i]) lo[i] = *v;
    }
    detail::Window w(lo, s.hi);
    Echelon<F> ech(field, w.dim());
    for (const auto& e : s.elements) ech.insert(w.embed_or_throw(e.truncated(s.hi)));

    std::vector<int> d = s.hi;
    for (std::size_t i = 0; i < r; ++i)
        while (d[i] > lo[i] && ech.contains(w.unit(field, i, d[i] - 1))) --d[i];
    std::vector<int> p = d;
    std::vector<Element> rows;
    for (const auto& row : ech.rows()) {
        Element e = w.element(field, row, differential).truncated(d);
        if (e.is_zero()) continue;
        for (std::size_t i = 0; i < r; ++i)
            if (auto v = e.valuation(i); v && *v < p[i]) p[i] = *v;
        rows.push_back(std::move(e));
    }
    detail::Window fin(p, d);
    Echelon<F> out(field, fin.dim());
    for (const auto& e : rows) out.insert(fin.embed_or_throw(e));
    return FracIdeal(ring, std::move(fin), std::move(out), differential);
}

template <Field F>
FracIdeal<F> FracIdeal<F>::from_generators(const CurveRing<F>& ring, const std::vector<Element>& gens)
{
    const std::size_t r = ring.branches();
    if (gens.empty()) fail(ErrorKind::ZeroOnBranch, "no generators");
    bool differential = false;
    bool seen = false;
    for (const auto& g : gens) {
        if (g.branches() != r)
            fail(ErrorKind::BranchMismatch, "generator " + g.to_string() + " has " + std::to_string(g.branches()) +
                                                " branches, ring has " + std::to_string(r));
        if (g.is_zero()) continue;
        if (seen && g.is_differential() != differential)
            fail(ErrorKind::DifferentialDegreeError, "mixed functions and differentials among generators");
        differential = g.is_differential();
        seen = true;
    }
    Span s{{}, std::vector<int>(r, kNoTail)};
    for (const auto& g : gens) {
        if (g.is_zero()) continue;
        for (std::size_t i = 0; i < r; ++i)
            if (auto v = g.valuation(i)) s.hi[i] = std::min(s.hi[i], ring.conductor_exponent(i) + *v);
        s.elements.push_back(g);
        for (const auto& b : ring.window_basis()) {
            Element p = b * g;
            if (!p.is_zero()) s.elements.push_back(std::move(p));
        }
    }
    for (std::size_t i = 0; i < r; ++i)
        if (s.hi[i] == kNoTail)
            fail(ErrorKind::ZeroOnBranch, "every generator vanishes on branch " + std::to_string(i + 1));
    return from_span(ring, s, differential);
}

template <Field F>
FracIdeal<F> FracIdeal<F>::intersect(const FracIdeal& n) const
{
    check_owner(n);
    if (n.differential_ != differential_)
        fail(ErrorKind::DifferentialDegreeError, "intersection of a function module and a differential module");
    const F& k = field();
    const std::size_t r = branches();
    std::vector<int> lo(r), hi(r);
    for (std::size_t i = 0; i < r; ++i) {
        lo[i] = std::min(pole()[i], n.pole()[i]);
        hi[i] = std::max(tail()[i], n.tail()[i]);
    }
    detail::Window w(lo, hi);
    const std::size_t dim = w.dim();
    // Zassenhaus: rows (u, u) for u in U and (v, 0) for v in V; the rows
    // with vanishing left half span U n V in the right half.
    Echelon<F> z(k, 2 * dim);
    for (auto& u : span_in(w)) {
        Vec<F> row = u;
        row.insert(row.end(), u.begin(), u.end());
        z.insert(std::move(row));
    }
    for (auto& v : n.span_in(w)) {
        v.resize(2 * dim, k.zero());
        z.insert(std::move(v));
    }
    Span s{{}, hi};
    for (const auto& row : z.rows()) {
        bool left_zero = true;
        for (std::size_t c = 0; c < dim && left_zero; ++c) left_zero = k.is_zero(row[c]);
        if (!left_zero) continue;
        Vec<F> right(row.begin() + static_cast<std::ptrdiff_t>(dim), row.end());
        s.elements.push_back(w.element(k, right, differential_));
    }
    return from_span(ring_, s, differential_);
}

template <Field F>
FracIdeal<F> FracIdeal<F>::colon(const FracIdeal& n) const
{
    check_owner(n);
    if (n.differential_ && !differential_)
        fail(ErrorKind::DifferentialDegreeError, "dividing a function module by a differential module");
    const bool diff = differential_ && !n.differential_;
    const F& k = field();
    const std::size_t r = branches();
    std::vector<int> lo(r), hi(r);
    for (std::size_t i = 0; i < r; ++i) {
        lo[i] = pole()[i] - n.pole()[i];
        hi[i] = tail()[i] - n.pole()[i];
    }
    detail::Window x(lo, hi);
    auto gens = n.minimal_generators();
    // Column c holds the residuals of t^e_i * g modulo M for every generator g.
    std::vector<Vec<F>> columns;
    columns.reserve(x.dim());
    for (std::size_t c = 0; c < x.dim(); ++c) {
        auto [i, e] = x.at(c);
        Element xe = Element::monomial(k, r, i, e, k.one(), diff);
        Vec<F> col;
        for (const auto& g : gens) {
            Vec<F> v = window_.embed_or_throw((xe * g).truncated(tail()));
            echelon_.reduce(v);
            col.insert(col.end(), v.begin(), v.end());
        }
        columns.push_back(std::move(col));
    }
    std::size_t rows = gens.size() * window_.dim();
    Span s{{}, hi};
    if (x.dim() > 0) {
        auto a = Matrix<F>::from_columns(k, rows, columns);
        for (const auto& v : a.kernel()) s.elements.push_back(x.element(k, v, diff));
    }
    return from_span(ring_, s, diff);
}

template <Field F>
long len_quotient(const FracIdeal<F>& m1, const FracIdeal<F>& m2)
{
    if (!m2.contains(m1)) fail(ErrorKind::NotContained, "first module is not contained in the second");
    return m2.index() - m1.index();
}

/// A finite-length module F/G for fractional ideals G in F.
template <Field F>
struct TorsionQuotient {
    TorsionQuotient(FracIdeal<F> g, FracIdeal<F> f) : sub(std::move(g)), top(std::move(f))
    {
        if (!top.contains(sub)) fail(ErrorKind::NotContained, "torsion quotient needs G inside F");
    }
    long length() const { return top.index() - sub.index(); }

    FracIdeal<F> sub; // G
    FracIdeal<F> top; // F
};

struct HerbrandPair {
    long quotient_length = 0;
    long order_sum = 0;
};

template <Field F>
HerbrandPair herbrand(const FracIdeal<F>& m, const BranchElement<F>& r)
{
    if (!m.ring().contains(r)) fail(ErrorKind::NotMember, r.to_string() + " is not in O");
    if (!r.nonzero_on_every_branch()) fail(ErrorKind::ZeroDivisor, r.to_string() + " vanishes on a branch");
    HerbrandPair h;
    h.quotient_length = len_quotient(m.multiply(r), m);
    for (std::size_t i = 0; i < r.branches(); ++i) h.order_sum += *r.valuation(i);
    return h;
}

namespace detail {

inline int uniform_int(std::mt19937_64& rng, int lo, int hi)
{
    return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

template <Field F>
Scalar<F> nonzero_scalar(const F& field, std::mt19937_64& rng)
{
    for (int k = 0; k < 64; ++k) {
        Scalar<F> c = field.random(rng);
        if (!field.is_zero(c)) return c;
    }
    return field.one();
}

} // namespace detail

/// Reproducible pseudorandom fractional ideal; params (0, 0) yield O.
template <Field F>
FracIdeal<F> random_ideal(const CurveRing<F>& ring, std::uint64_t seed, RandomIdealParams params = {1, 1})
{
    if (params.max_shift <= 0 && params.extra_generators <= 0) return FracIdeal<F>::unit(ring);
    std::mt19937_64 rng(seed);
    const F& k = ring.field();
    const std::size_t r = ring.branches();
    int count = 1 + detail::uniform_int(rng, 0, std::max(0, params.extra_generators));
    std::vector<BranchElement<F>> gens;
    for (int g = 0; g < count; ++g) {
        std::vector<std::vector<typename BranchElement<F>::Term>> raw(r);
        for (std::size_t i = 0; i < r; ++i) {
            if (g > 0 && detail::uniform_int(rng, 0, 2) == 0) continue;
            int v = detail::uniform_int(rng, -params.max_shift, params.max_shift);
            raw[i].push_back({v, detail::nonzero_scalar(k, rng)});
            int extra = detail::uniform_int(rng, 0, 2);
            for (int t = 0; t < extra; ++t)
                raw[i].push_back({v + detail::uniform_int(rng, 1, ring.conductor_exponent(i) + 2), k.random(rng)});
        }
        gens.push_back(BranchElement<F>::from_terms(k, std::move(raw)));
    }
    return FracIdeal<F>::from_generators(ring, gens);
}

} // namespace curvedual
