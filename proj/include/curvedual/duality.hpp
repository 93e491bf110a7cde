#pragma once

// The dualizing module omega of a curve ring as the residue kernel
//   omega = { s in (+)_i t^{-n_i} k[[t_i]] dt : sum_i res_i(f s) = 0 for f in O },
// and the duality M -> (omega : M) on fractional ideals.

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "curve_artin.hpp"
#include "curvering.hpp"
#include "fracideal.hpp"

namespace curvedual {

struct CanonicalOptions {
    /// Test hook: drop this residue condition (row index) before solving.
    std::optional<std::size_t> drop_condition;
};

template <Field F>
class CanonicalModule {
public:
    using Element = BranchElement<F>;

    static CanonicalModule build(const CurveRing<F>& ring, CanonicalOptions opt = {})
    {
        const F& k = ring.field();
        const std::size_t r = ring.branches();
        std::vector<int> lo(r), hi(r, 0);
        for (std::size_t i = 0; i < r; ++i) lo[i] = -ring.conductor_exponent(i);
        detail::Window poles(lo, hi);
        const auto& basis = ring.window_basis();
        // res(b * t_i^-e dt) = coefficient of t^{e-1} in b_i
        Matrix<F> res(k, basis.size(), poles.dim());
        for (std::size_t row = 0; row < basis.size(); ++row)
            for (std::size_t c = 0; c < poles.dim(); ++c) {
                auto [i, e] = poles.at(c);
                res(row, c) = basis[row].coefficient(i, -e - 1);
            }
        Matrix<F> used = res;
        if (opt.drop_condition && *opt.drop_condition < basis.size()) {
            Matrix<F> cut(k, basis.size() - 1, poles.dim());
            for (std::size_t row = 0, out = 0; row < basis.size(); ++row) {
                if (row == *opt.drop_condition) continue;
                for (std::size_t c = 0; c < poles.dim(); ++c) cut(out, c) = res(row, c);
                ++out;
            }
            used = cut;
        }
        typename FracIdeal<F>::Span s{{}, hi};
        for (const auto& v : used.kernel()) s.elements.push_back(poles.element(k, v, true));
        auto omega = FracIdeal<F>::from_span(ring, s, true);
        return CanonicalModule(std::move(omega), std::move(res), opt.drop_condition.has_value());
    }

    const FracIdeal<F>& module() const { return omega_; }
    const CurveRing<F>& ring() const { return omega_.ring(); }
    /// Rows: window basis of O/c; columns: t_i^-1, ..., t_i^-{n_i} per branch.
    const Matrix<F>& residue_matrix() const { return residues_; }
    bool mutated() const { return mutated_; }

    /// Hom(M, omega) = (omega : M).
    FracIdeal<F> dual(const FracIdeal<F>& m) const { return omega_.colon(m); }

    /// omega-bar = (+)_i k[[t_i]] dt.
    FracIdeal<F> omega_bar() const
    {
        return FracIdeal<F>::monomial(ring(), std::vector<int>(ring().branches(), 0), true);
    }
    /// omega-bar(Dbar) = (+)_i t^{-n_i} k[[t_i]] dt.
    FracIdeal<F> omega_bar_twisted() const
    {
        std::vector<int> a;
        for (int n : ring().conductor_exponents()) a.push_back(-n);
        return FracIdeal<F>::monomial(ring(), a, true);
    }

private:
    CanonicalModule(FracIdeal<F> omega, Matrix<F> res, bool mutated)
        : omega_(std::move(omega)), residues_(std::move(res)), mutated_(mutated)
    {
    }

    FracIdeal<F> omega_;
    Matrix<F> residues_;
    bool mutated_ = false;
};

template <Field F>
CanonicalModule<F> canonical_module(const CurveRing<F>& ring, CanonicalOptions opt = {})
{
    return CanonicalModule<F>::build(ring, opt);
}

/// Result of the torsion-free S2 hull of a module given by generators with a
/// torsion-free part in the total quotient ring and a torsion part.
template <Field F>
struct HullResult {
    std::optional<FracIdeal<F>> hull; // empty: the hull is the zero module
    bool all_torsion() const { return !hull.has_value(); }
    const FracIdeal<F>& value() const
    {
        if (!hull) fail(ErrorKind::AllTorsion, "every generator is torsion; the hull is zero");
        return *hull;
    }
};

/// A generator of F = I (+) T with I torsion free and T = top/sub a torsion
/// module: the free component and a representative of the torsion component.
template <Field F>
struct MixedGenerator {
    BranchElement<F> free;
    std::optional<BranchElement<F>> torsion;
};

template <Field F>
HullResult<F> tfs2_hull(const CanonicalModule<F>& w, const std::vector<MixedGenerator<F>>& gens,
                        const std::optional<TorsionQuotient<F>>& torsion = std::nullopt)
{
    std::vector<BranchElement<F>> free;
    for (const auto& g : gens) {
        if (g.torsion && torsion && !torsion->top.contains(*g.torsion))
            fail(ErrorKind::NotContained, "torsion component " + g.torsion->to_string() + " is outside the torsion module");
        if (!g.free.is_zero()) free.push_back(g.free);
    }
    if (free.empty()) return {};
    // The image modulo torsion; in dimension one it is already S2.
    auto image = FracIdeal<F>::from_generators(w.ring(), free);
    auto bidual = w.dual(w.dual(image));
    if (!(bidual == image))
        fail(ErrorKind::InvalidArgument, "bidual of a torsion-free module differs from the module");
    return {image};
}

/// p^! G = (G : S) for a ring S between O and its normalization.
template <Field F>
struct Shriek {
    FracIdeal<F> module;
    FracIdeal<F> over;
    /// For S = Obar: a generator of the free rank-one Obar-module.
    std::optional<BranchElement<F>> normalization_generator;
};

template <Field F>
bool is_ring(const FracIdeal<F>& s)
{
    if (s.is_differential()) return false;
    if (!s.contains(s.ring().one())) return false;
    return s.colon(s) == s;
}

template <Field F>
Shriek<F> shriek(const FracIdeal<F>& g, const FracIdeal<F>& s)
{
    if (!is_ring(s)) fail(ErrorKind::NotARing, "the overring is not a ring containing O");
    auto h = g.colon(s);
    if (!h.contains(h.product(s))) fail(ErrorKind::InvalidArgument, "shriek is not an S-module");
    Shriek<F> out{h, s, std::nullopt};
    if (s == FracIdeal<F>::normalization(s.ring())) {
        if (h.finite_dim() != 0) fail(ErrorKind::InvalidArgument, "shriek along the normalization is not free");
        std::vector<std::vector<typename BranchElement<F>::Term>> raw(h.branches());
        for (std::size_t i = 0; i < h.branches(); ++i) raw[i].push_back({h.tail()[i], h.field().one()});
        out.normalization_generator = BranchElement<F>::from_terms(h.field(), std::move(raw), h.is_differential());
    }
    return out;
}

/// tr(s) = s(1): the multiplier s viewed in G.
template <Field F>
BranchElement<F> trace(const Shriek<F>& p, const FracIdeal<F>& g, const BranchElement<F>& s)
{
    if (!p.module.contains(s)) fail(ErrorKind::NotInModule, s.to_string() + " is not in the shriek module");
    if (!g.contains(s)) fail(ErrorKind::NotInModule, s.to_string() + " does not land in G");
    return s;
}

/// socle dimension of Omega/x Omega over O/xO.
template <Field F>
std::size_t socle_dimension(const FracIdeal<F>& omega, const CurveQuotient<F>& q)
{
    auto p = present_quotient(omega, omega.multiply(q.x), q);
    return socle(p.module).size();
}

struct SerreReport {
    int len_Dbar = 0;
    int twice_len_D = 0;
    int delta = 0;
    long len_omega_over_omegabar = 0;
    bool gorenstein = false;
    bool omega_principal = false;
    std::size_t socle_dim_O = 0;     // socle of O/xO
    std::size_t socle_dim_omega = 0; // socle of omega/x omega
    bool consistent = false;
};

template <Field F>
SerreReport serre_report(const CanonicalModule<F>& w)
{
    const auto& ring = w.ring();
    auto c = ring.conductor();
    SerreReport rep;
    rep.len_Dbar = c.len_Dbar;
    rep.twice_len_D = 2 * c.len_D;
    rep.delta = c.delta;
    rep.len_omega_over_omegabar = len_quotient(w.omega_bar(), w.module());
    rep.gorenstein = rep.len_Dbar == rep.twice_len_D;
    rep.omega_principal = w.module().is_principal().has_value();
    auto q = artin_quotient(ring, default_parameter(ring));
    rep.socle_dim_O = socle_dimension(FracIdeal<F>::unit(ring), q);
    rep.socle_dim_omega = socle_dimension(w.module(), q);
    rep.consistent = rep.len_Dbar >= rep.twice_len_D && rep.len_omega_over_omegabar == rep.delta &&
                     rep.gorenstein == rep.omega_principal && rep.gorenstein == (rep.socle_dim_O == 1) &&
                     rep.socle_dim_omega == 1;
    return rep;
}

/// Per branch, the largest pole order occurring in omega.
template <Field F>
std::vector<int> min_pole_profile(const CanonicalModule<F>& w)
{
    std::vector<int> out;
    for (int p : w.module().pole()) out.push_back(-p);
    return out;
}

template <Field F>
bool seminormal_via_omega(const CanonicalModule<F>& w)
{
    for (int p : min_pole_profile(w))
        if (p > 1) return false;
    return true;
}

template <Field F>
struct GeneralSection {
    BranchElement<F> sigma;
    int trials = 0;
    std::string field_name;
};

/// A section of omega with pole order exactly n_i on every branch, verified
/// by c * sigma = omega-bar.
template <Field F>
GeneralSection<F> general_section(const CanonicalModule<F>& w, int max_trials = 64, std::uint64_t seed = 1)
{
    const auto& ring = w.ring();
    const auto& omega = w.module();
    const F& k = ring.field();
    const auto& n = ring.conductor_exponents();
    auto cond = FracIdeal<F>::conductor(ring);
    auto target = w.omega_bar();
    auto good = [&](const BranchElement<F>& s) {
        for (std::size_t i = 0; i < ring.branches(); ++i) {
            auto v = s.valuation(i);
            if (!v || *v != -n[i]) return false;
        }
        return true;
    };
    std::vector<BranchElement<F>> basis = omega.basis();
    if (basis.empty()) {
        std::vector<std::vector<typename BranchElement<F>::Term>> raw(ring.branches());
        for (std::size_t i = 0; i < ring.branches(); ++i) raw[i].push_back({omega.tail()[i], k.one()});
        basis.push_back(BranchElement<F>::from_terms(k, std::move(raw), true));
    }
    std::mt19937_64 rng(seed);
    for (int t = 0; t < max_trials; ++t) {
        BranchElement<F> s(k, ring.branches(), true);
        for (const auto& b : basis) s = s + (t == 0 ? b : b.scaled(k.random(rng)));
        if (!good(s) || !omega.contains(s)) continue;
        if (!(cond.multiply(s) == target))
            fail(ErrorKind::InvalidArgument, "section with full pole order fails c * sigma = omega-bar");
        return {s, t + 1, k.name()};
    }
    fail(ErrorKind::FieldTooSmall, "no general section of omega over " + k.name() + " after " +
                                       std::to_string(max_trials) + " trials; extend the base field");
}

/// general_section, retrying over F_{p^2}, F_{p^3}, ... on FieldTooSmall.
template <Field F>
GeneralSection<FiniteField> general_section_with_base_change(const CurveRing<F>& ring, int max_trials = 64,
                                                             unsigned max_degree = 6)
{
    for (unsigned e = 1; e <= max_degree; ++e) {
        auto ext = base_change(ring, e);
        try {
            return general_section(canonical_module(ext), max_trials);
        } catch (const Error& err) {
            if (err.kind() != ErrorKind::FieldTooSmall || e == max_degree) throw;
        }
    }
    fail(ErrorKind::FieldTooSmall, "no general section up to the maximal extension degree");
}

/// Ext^1(F/G, omega) = dual(G)/dual(F).
template <Field F>
TorsionQuotient<F> ext1_torsion(const CanonicalModule<F>& w, const TorsionQuotient<F>& t)
{
    return TorsionQuotient<F>(w.dual(t.top), w.dual(t.sub));
}

struct ExactSequenceLengths {
    long len_twisted_over_omega = 0; // len(omega-bar(Dbar)/omega)
    long len_D = 0;
    long len_omega_over_omegabar = 0;
    long delta = 0;
    bool holds = false;
};

template <Field F>
ExactSequenceLengths exact_seq_lengths(const CanonicalModule<F>& w)
{
    ExactSequenceLengths e;
    auto c = w.ring().conductor();
    e.len_twisted_over_omega = len_quotient(w.module(), w.omega_bar_twisted());
    e.len_D = c.len_D;
    e.len_omega_over_omegabar = len_quotient(w.omega_bar(), w.module());
    e.delta = c.delta;
    e.holds = e.len_twisted_over_omega == e.len_D && e.len_omega_over_omegabar == e.delta;
    return e;
}

/// (O : Obar) == ((omega : Obar) : omega).
template <Field F>
bool conductor_duality(const CanonicalModule<F>& w)
{
    const auto& ring = w.ring();
    auto o = FracIdeal<F>::unit(ring);
    auto obar = FracIdeal<F>::normalization(ring);
    auto lhs = o.colon(obar);
    auto rhs = w.module().colon(obar).colon(w.module());
    return lhs == rhs && lhs == FracIdeal<F>::conductor(ring);
}

struct DualizingVerdict {
    bool dualizing = false;
    std::size_t socle_dim = 0;        // with the parameter x
    std::size_t socle_dim_second = 0; // with x^2
};

template <Field F>
DualizingVerdict verify_dualizing(const FracIdeal<F>& omega)
{
    const auto& ring = omega.ring();
    auto x = default_parameter(ring);
    DualizingVerdict v;
    v.socle_dim = socle_dimension(omega, artin_quotient(ring, x));
    v.socle_dim_second = socle_dimension(omega, artin_quotient(ring, x * x));
    if ((v.socle_dim == 1) != (v.socle_dim_second == 1))
        fail(ErrorKind::InvalidArgument, "socle criterion depends on the parameter");
    v.dualizing = v.socle_dim == 1;
    return v;
}

/// Omega is dualizing and differs from omega by an invertible twist.
template <Field F>
bool uniqueness_check(const CanonicalModule<F>& w, const FracIdeal<F>& omega)
{
    if (!verify_dualizing(omega).dualizing) fail(ErrorKind::NotDualizing, "module fails the socle criterion");
    auto o = omega.is_differential() ? omega : omega.with_differential(true);
    return w.module().colon(o).is_principal().has_value() && o.colon(w.module()).is_principal().has_value();
}

/// len Ext^1(T, omega) = len(dual(G)/dual(F)) against dim Hom_{O/r}(T, omega/r omega).
template <Field F>
struct ReesComparison {
    long ext_length = 0;
    std::size_t hom_dim = 0;
    bool equal() const { return ext_length == static_cast<long>(hom_dim); }
};

template <Field F>
ReesComparison<F> rees_check(const CanonicalModule<F>& w, const TorsionQuotient<F>& t, const BranchElement<F>& r)
{
    if (!t.sub.contains(t.top.multiply(r))) fail(ErrorKind::NotKilled, r.to_string() + " does not kill T");
    ReesComparison<F> out;
    out.ext_length = ext1_torsion(w, t).length();
    auto q = artin_quotient(w.ring(), r);
    if (t.length() == 0) return out;
    auto tm = present_quotient(t.top, t.sub, q).module;
    auto wm = present_quotient(w.module(), w.module().multiply(r), q).module;
    out.hom_dim = hom_space(tm, wm).size();
    return out;
}

} // namespace curvedual
