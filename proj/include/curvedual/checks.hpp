#pragma once

// The builtin ring family and the property suite run by `curvedual check`.

#include <cstdint>
#include <functional>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "curve_artin.hpp"
#include "curvering.hpp"
#include "duality.hpp"
#include "fracideal.hpp"

namespace curvedual {

/// Minimal generating sets <a,b> and <a,b,c> of numerical semigroups with
/// generators <= max_gen.
inline std::vector<std::vector<int>> semigroup_family(int max_gen = 12)
{
    auto in_span = [](int n, const std::vector<int>& g) {
        std::vector<char> r(static_cast<std::size_t>(n) + 1, 0);
        r[0] = 1;
        for (int i = 1; i <= n; ++i)
            for (int a : g)
                if (i >= a && r[static_cast<std::size_t>(i - a)]) r[static_cast<std::size_t>(i)] = 1;
        return r[static_cast<std::size_t>(n)] != 0;
    };
    std::vector<std::vector<int>> out;
    for (int a = 2; a <= max_gen; ++a)
        for (int b = a + 1; b <= max_gen; ++b)
            if (std::gcd(a, b) == 1) out.push_back({a, b});
    for (int a = 2; a <= max_gen; ++a)
        for (int b = a + 1; b <= max_gen; ++b)
            for (int c = b + 1; c <= max_gen; ++c) {
                if (std::gcd(std::gcd(a, b), c) != 1) continue;
                if (b % a == 0 || in_span(c, {a, b})) continue;
                out.push_back({a, b, c});
            }
    return out;
}

/// Node, cusp, tacnode, three coplanar lines, three axes.
template <Field F>
std::vector<CurveRing<F>> named_curves(const F& k)
{
    std::vector<CurveRing<F>> out;
    out.push_back(curve_from_text(k, 2, {"(t,0)", "(0,t)"}, "node"));
    out.push_back(semigroup_ring(k, {2, 3}, "cusp"));
    out.push_back(curve_from_text(k, 2, {"(t,t)", "(t^2,0)"}, "tacnode"));
    out.push_back(curve_from_text(k, 3, {"(t,0,t)", "(0,t,t)"}, "three coplanar lines"));
    out.push_back(curve_from_text(k, 3, {"(t,0,0)", "(0,t,0)", "(0,0,t)"}, "three axes"));
    return out;
}

template <Field F>
std::vector<CurveRing<F>> builtin_family(const F& k, int max_gen = 12)
{
    std::vector<CurveRing<F>> out;
    for (auto& g : semigroup_family(max_gen)) {
        std::string label = "<";
        for (std::size_t i = 0; i < g.size(); ++i) label += (i ? "," : "") + std::to_string(g[i]);
        out.push_back(semigroup_ring(k, g, label + ">"));
    }
    for (auto& c : named_curves(k)) out.push_back(std::move(c));
    return out;
}

/// A random element of O that is nonzero on every branch and not a unit.
template <Field F>
BranchElement<F> random_parameter(const CurveRing<F>& ring, std::mt19937_64& rng)
{
    const F& k = ring.field();
    const auto& gens = ring.generators();
    for (int attempt = 0; attempt < 32; ++attempt) {
        BranchElement<F> r(k, ring.branches());
        for (const auto& g : gens) {
            if (rng() % 2) r = r + g.scaled(k.from_int(static_cast<long>(rng() % 3) + 1));
            if (rng() % 4 == 0) r = r + g * gens[rng() % gens.size()];
        }
        if (r.nonzero_on_every_branch()) return r;
    }
    return default_parameter(ring);
}

struct CheckFailure {
    std::string property;
    std::string detail;
    std::uint64_t seed = 0; // seed of the failing case; 0 for ring-level properties
    bool ring_level = true;
};

struct CheckSummary {
    std::size_t rings = 0;
    std::size_t cases = 0;
    std::size_t properties = 0;
    std::vector<CheckFailure> failures;
    bool ok() const { return failures.empty(); }
};

namespace detail {

inline void record(CheckSummary& s, bool ok, std::string property, std::string detail, std::uint64_t seed, bool ring)
{
    ++s.properties;
    if (!ok) s.failures.push_back({std::move(property), std::move(detail), seed, ring});
}

} // namespace detail

/// Properties of the ring itself.
template <Field F>
void check_ring(const CanonicalModule<F>& w, CheckSummary& s)
{
    const auto& ring = w.ring();
    auto c = ring.conductor();
    auto rep = serre_report(w);
    detail::record(s, rep.consistent, "serre",
                   "len Dbar " + std::to_string(rep.len_Dbar) + ", 2 len D " + std::to_string(rep.twice_len_D) +
                       ", omega principal " + std::to_string(rep.omega_principal) + ", socle " +
                       std::to_string(rep.socle_dim_O),
                   0, true);
    detail::record(s, conductor_duality(w), "conductor-duality", "(O:Obar) != ((omega:Obar):omega)", 0, true);
    auto prof = min_pole_profile(w);
    detail::record(s, prof == c.exponents, "pole-profile", "pole profile differs from the conductor exponents", 0,
                   true);
    bool sn1 = ring.is_seminormal(), sn2 = seminormal_via_omega(w), sn3 = ring.seminormalization() == ring;
    detail::record(s, sn1 == sn2 && sn2 == sn3, "seminormality",
                   "routes " + std::to_string(sn1) + std::to_string(sn2) + std::to_string(sn3), 0, true);
    auto ex = exact_seq_lengths(w);
    detail::record(s, ex.holds, "exact-sequence", "length sequence does not add up", 0, true);
    detail::record(s, verify_dualizing(w.module()).dualizing, "dualizing", "socle criterion fails", 0, true);
}

/// Seeded random properties: biduality, length duality, Ext^1 length,
/// Herbrand quotient and the Rees comparison.
template <Field F>
void check_case(const CanonicalModule<F>& w, std::uint64_t seed, CheckSummary& s)
{
    const auto& ring = w.ring();
    std::mt19937_64 rng(seed);
    auto m = random_ideal(ring, seed, {2, 2});
    detail::record(s, w.dual(w.dual(m)) == m, "biduality", "dual(dual(M)) != M for M = " + m.to_string(), seed,
                   false);

    auto q1 = m;
    auto q2 = m.sum(random_ideal(ring, seed ^ 0x9e3779b97f4a7c15ULL, {1, 1}));
    long lhs = len_quotient(q1, q2), rhs = len_quotient(w.dual(q2), w.dual(q1));
    detail::record(s, lhs == rhs, "length-duality",
                   "len(Q2/Q1) = " + std::to_string(lhs) + ", len(Q1*/Q2*) = " + std::to_string(rhs), seed, false);
    TorsionQuotient<F> t(q1, q2);
    long e1 = ext1_torsion(w, t).length();
    detail::record(s, e1 == t.length(), "ext1-length",
                   "len Ext^1(T, omega) = " + std::to_string(e1) + ", len T = " + std::to_string(t.length()), seed,
                   false);

    auto r = random_parameter(ring, rng);
    auto h = herbrand(q2, r);
    detail::record(s, h.quotient_length == h.order_sum, "herbrand",
                   "len(F/rF) = " + std::to_string(h.quotient_length) + ", sum ord = " + std::to_string(h.order_sum),
                   seed, false);

    TorsionQuotient<F> tr(q1.sum(q2.multiply(r)), q2);
    auto rc = rees_check(w, tr, r);
    detail::record(s, rc.equal(), "rees",
                   "len Ext^1 = " + std::to_string(rc.ext_length) + ", dim Hom = " + std::to_string(rc.hom_dim), seed,
                   false);
}

} // namespace curvedual
