#pragma once

// Reduced local algebroid curves O inside the normalization
// Obar = k[[t_1]] x ... x k[[t_r]], presented by algebra generators.

#include <algorithm>
#include <memory>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "errors.hpp"
#include "field.hpp"
#include "laurent.hpp"
#include "linalg.hpp"
#include "window.hpp"

namespace curvedual {

template <Field F>
struct CurveSpec {
    explicit CurveSpec(F f, std::size_t r = 1) : field(std::move(f)), branches(r) {}

    F field;
    std::size_t branches;
    std::vector<BranchElement<F>> generators;
    /// Unibranch shortcut: the numerical semigroup generated by these integers.
    std::optional<std::vector<int>> semigroup;
    int window_bound = 200;
    std::string label;
};

struct ConductorData {
    std::vector<int> exponents; // n_i
    int len_D = 0;              // dim O/c
    int len_Dbar = 0;           // sum n_i
    int delta = 0;              // dim Obar/O
};

struct GorensteinCertificate {
    bool gorenstein = false;
    int len_Dbar = 0;
    int twice_len_D = 0;
};

struct SemigroupInvariants {
    int conductor = 0;
    int delta = 0;
    bool symmetric = false;
    std::vector<int> gaps;
};

/// Direct enumeration of a numerical semigroup.
inline SemigroupInvariants semigroup_oracle(const std::vector<int>& gens)
{
    if (gens.empty()) fail(ErrorKind::InvalidArgument, "empty semigroup generator list");
    int g = 0;
    for (int a : gens) {
        if (a <= 0) fail(ErrorKind::InvalidArgument, "semigroup generators must be positive");
        g = std::gcd(g, a);
    }
    if (g != 1) fail(ErrorKind::NotCoprime, "gcd of semigroup generators is " + std::to_string(g));
    const int mult = *std::min_element(gens.begin(), gens.end());
    std::vector<char> in{1};
    int run = 1, n = 0;
    while (run < mult) {
        ++n;
        char member = 0;
        for (int a : gens)
            if (a <= n && in[static_cast<std::size_t>(n - a)]) member = 1;
        in.push_back(member);
        run = member ? run + 1 : 0;
        if (n > 1000000) fail(ErrorKind::TooLarge, "semigroup enumeration did not stabilize");
    }
    SemigroupInvariants out;
    for (int k = 0; k <= n; ++k)
        if (!in[static_cast<std::size_t>(k)]) out.gaps.push_back(k);
    out.delta = static_cast<int>(out.gaps.size());
    out.conductor = out.gaps.empty() ? 0 : out.gaps.back() + 1;
    out.symmetric = out.conductor == 2 * out.delta;
    return out;
}

template <Field F>
class CurveRing {
public:
    using Element = BranchElement<F>;

    /// Closure of the algebra generated by the spec in growing windows
    /// [0, N); the conductor is accepted once a certificate element g in O
    /// with finite valuations w satisfies N - n_i >= w_i on every branch.
    static CurveRing build(const CurveSpec<F>& spec);

    const F& field() const { return d_->field; }
    std::size_t branches() const { return d_->r; }
    const std::vector<Element>& generators() const { return d_->generators; }
    const std::vector<int>& conductor_exponents() const { return d_->n; }
    int conductor_exponent(std::size_t i) const { return d_->n[i]; }
    /// Reduced echelon basis of O/c inside the window [0, n).
    const std::vector<Element>& window_basis() const { return d_->basis; }
    const detail::Window& window() const { return d_->window; }
    const Echelon<F>& window_echelon() const { return d_->echelon; }
    const CurveSpec<F>& spec() const { return d_->spec; }
    const std::string& label() const { return d_->spec.label; }
    /// Largest window used while certifying the conductor.
    int stabilization_window() const { return d_->stable_window; }

    Element one() const { return Element::one(field(), branches()); }
    Element monomial(std::size_t branch, int exponent) const
    {
        return Element::monomial(field(), branches(), branch, exponent);
    }

    ConductorData conductor() const
    {
        ConductorData c;
        c.exponents = d_->n;
        c.len_D = static_cast<int>(d_->basis.size());
        c.len_Dbar = std::accumulate(d_->n.begin(), d_->n.end(), 0);
        c.delta = c.len_Dbar - c.len_D;
        return c;
    }

    GorensteinCertificate is_gorenstein() const
    {
        auto c = conductor();
        return {c.len_Dbar == 2 * c.len_D, c.len_Dbar, 2 * c.len_D};
    }

    bool is_seminormal() const
    {
        return std::all_of(d_->n.begin(), d_->n.end(), [](int n) { return n <= 1; });
    }

    /// The ring generated by O and the ideal of Obar vanishing on the reduced
    /// conductor; with trivial residue field extensions this is
    /// k + t_1 k[[t_1]] x ... x t_r k[[t_r]].
    CurveRing seminormalization() const
    {
        CurveSpec<F> s(field(), branches());
        s.generators = generators();
        for (std::size_t i = 0; i < branches(); ++i)
            if (d_->n[i] >= 1) s.generators.push_back(monomial(i, 1));
        s.window_bound = d_->spec.window_bound;
        s.label = d_->spec.label.empty() ? "" : d_->spec.label + "^sn";
        return build(s);
    }

    bool contains(const Element& f) const
    {
        if (f.branches() != branches())
            fail(ErrorKind::BranchMismatch, std::to_string(f.branches()) + " vs " + std::to_string(branches()));
        if (f.is_differential()) return false;
        auto v = d_->window.embed(f);
        if (!v) return false;
        return d_->echelon.contains(*v);
    }

    /// Same field, branch count, conductor and window basis.
    bool operator==(const CurveRing& o) const
    {
        if (d_ == o.d_) return true;
        return d_->field == o.d_->field && d_->r == o.d_->r && d_->n == o.d_->n && d_->echelon == o.d_->echelon;
    }

private:
    struct Data {
        explicit Data(const CurveSpec<F>& s) : spec(s), field(s.field), window({}, {}), echelon(s.field, 0) {}
        CurveSpec<F> spec;
        F field;
        std::size_t r = 1;
        std::vector<Element> generators;
        std::vector<int> n;
        detail::Window window;
        Echelon<F> echelon;
        std::vector<Element> basis;
        int stable_window = 0;
    };

    explicit CurveRing(std::shared_ptr<const Data> d) : d_(std::move(d)) {}

    std::shared_ptr<const Data> d_;
};

namespace detail {

// An exact element of O that is nonzero on every branch. Sums of powers of
// the generators with pseudorandom coefficients; over tiny fields plain
// linear combinations can cancel on some branch.
template <Field F>
std::optional<BranchElement<F>> branch_free_element(const F& field, std::size_t r,
                                                    const std::vector<BranchElement<F>>& gens)
{
    BranchElement<F> sum(field, r);
    for (const auto& g : gens) sum = sum + g;
    if (sum.nonzero_on_every_branch()) return sum;
    std::mt19937_64 rng(0x5eed);
    std::uniform_int_distribution<int> pow(1, 3);
    for (int attempt = 0; attempt < 256; ++attempt) {
        BranchElement<F> g(field, r);
        for (const auto& x : gens) {
            BranchElement<F> p = x;
            for (int k = pow(rng); k > 1; --k) p = p * x;
            g = g + p.scaled(field.random(rng));
        }
        if (g.nonzero_on_every_branch()) return g;
    }
    return std::nullopt;
}

} // namespace detail

template <Field F>
CurveRing<F> CurveRing<F>::build(const CurveSpec<F>& spec)
{
    const F& field = spec.field;
    std::size_t r = spec.branches;
    std::vector<Element> gens = spec.generators;
    if (spec.semigroup) {
        if (r != 1) fail(ErrorKind::InvalidArgument, "the semigroup shortcut describes a unibranch curve");
        semigroup_oracle(*spec.semigroup); // validates positivity and coprimality
        for (int a : *spec.semigroup) gens.push_back(Element::monomial(field, 1, 0, a));
    }
    if (r == 0) fail(ErrorKind::InvalidArgument, "a curve needs at least one branch");
    for (const auto& g : gens) {
        if (g.branches() != r)
            fail(ErrorKind::BranchMismatch, "generator " + g.to_string() + " has " + std::to_string(g.branches()) +
                                                " branches, expected " + std::to_string(r));
        if (g.is_differential()) fail(ErrorKind::InvalidArgument, "generator " + g.to_string() + " is a differential");
        for (std::size_t i = 0; i < r; ++i) {
            auto v = g.valuation(i);
            if (v && *v < 1)
                fail(ErrorKind::InvalidArgument,
                     "generator " + g.to_string() + " must have positive valuation on every branch");
        }
    }
    for (std::size_t i = 0; i < r; ++i) {
        bool seen = std::any_of(gens.begin(), gens.end(), [&](const Element& g) { return !g.is_zero_on(i); });
        if (!seen)
            fail(ErrorKind::NotFiniteColength, "no generator is nonzero on branch " + std::to_string(i + 1));
    }
    auto certificate = detail::branch_free_element(field, r, gens);
    if (!certificate)
        fail(ErrorKind::NotFiniteColength, "could not find an element of O with finite valuation on every branch");
    std::vector<int> w(r);
    int wmax = 1;
    for (std::size_t i = 0; i < r; ++i) {
        w[i] = *certificate->valuation(i);
        wmax = std::max(wmax, w[i]);
    }

    const int bound = std::max(1, spec.window_bound);
    int N = std::min(bound, std::max(16, 2 * wmax));
    while (true) {
        detail::Window win(std::vector<int>(r, 0), std::vector<int>(r, N));
        std::vector<int> hi(r, N);
        Echelon<F> span(field, win.dim());
        std::vector<Element> queue{Element::one(field, r)};
        span.insert(win.embed_or_throw(queue.front()));
        for (std::size_t q = 0; q < queue.size(); ++q) {
            for (const auto& g : gens) {
                Element prod = (queue[q] * g).truncated(hi);
                if (prod.is_zero()) continue;
                if (span.insert(win.embed_or_throw(prod))) queue.push_back(std::move(prod));
            }
        }
        std::vector<int> n(r, N);
        for (std::size_t i = 0; i < r; ++i)
            while (n[i] > 0 && span.contains(win.unit(field, i, n[i] - 1))) --n[i];
        bool certified = true;
        for (std::size_t i = 0; i < r; ++i)
            if (N - n[i] < w[i]) certified = false;
        if (certified) {
            auto data = std::make_shared<Data>(spec);
            data->r = r;
            data->generators = gens;
            data->n = n;
            data->window = detail::Window(std::vector<int>(r, 0), n);
            data->echelon = Echelon<F>(field, data->window.dim());
            for (const auto& row : span.rows()) {
                Element e = win.element(field, row, false).truncated(n);
                if (!e.is_zero()) data->echelon.insert(data->window.embed_or_throw(e));
            }
            for (const auto& row : data->echelon.rows()) data->basis.push_back(data->window.element(field, row, false));
            data->stable_window = N;
            return CurveRing(std::move(data));
        }
        if (N >= bound)
            fail(ErrorKind::NotFiniteColength,
                 "conductor did not stabilize within exponent bound " + std::to_string(bound) +
                     " (generators may not separate branches or may generate an infinite-colength subring)");
        N = std::min(bound, 2 * N);
    }
}

/// Reinterpret a curve over F_p as a curve over F_{p^e}.
template <Field F>
CurveRing<FiniteField> base_change(const CurveRing<F>& ring, unsigned e)
{
    if constexpr (!is_finite_field_v<F>) {
        fail(ErrorKind::NotPrimeField, "base change needs a prime base field, got " + ring.field().name());
    } else {
        if (!ring.field().is_prime_field())
            fail(ErrorKind::NotPrimeField, "base change needs a prime base field, got " + ring.field().name());
        if (e == 1) return ring;
        FiniteField target(ring.field().p(), e);
        CurveSpec<FiniteField> s(target, ring.branches());
        for (const auto& g : ring.generators()) {
            std::vector<std::vector<BranchElement<FiniteField>::Term>> raw(g.branches());
            for (std::size_t i = 0; i < g.branches(); ++i)
                for (const auto& t : g.terms(i)) raw[i].push_back({t.exponent, t.coeff});
            s.generators.push_back(BranchElement<FiniteField>::from_terms(target, std::move(raw)));
        }
        s.window_bound = ring.spec().window_bound;
        s.label = ring.label();
        return CurveRing<FiniteField>::build(s);
    }
}

template <Field F>
CurveRing<F> semigroup_ring(const F& field, std::vector<int> gens, std::string label = {})
{
    CurveSpec<F> s(field, 1);
    s.semigroup = std::move(gens);
    s.label = std::move(label);
    return CurveRing<F>::build(s);
}

template <Field F>
CurveRing<F> curve_from_text(const F& field, std::size_t branches, const std::vector<std::string>& gens,
                             std::string label = {})
{
    CurveSpec<F> s(field, branches);
    for (const auto& g : gens) s.generators.push_back(BranchElement<F>::parse(field, g, branches));
    s.label = std::move(label);
    return CurveRing<F>::build(s);
}

} // namespace curvedual
