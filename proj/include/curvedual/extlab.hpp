#pragma once

// The monomial family R = k[t^i : i >= m], x = t^m: the algebra R/x^2R, the
// module omega/x omega on the basis sigma_m, ..., sigma_2, s, extensions of
// it by k and by itself.

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "artin.hpp"
#include "curve_artin.hpp"
#include "curvering.hpp"
#include "duality.hpp"
#include "fracideal.hpp"

namespace curvedual {

class ExtLabInstance {
public:
    using Module = ArtinModule<FiniteField>;

    ExtLabInstance(int m, std::uint64_t p)
        : m_(m), field_(check(m, p)), ring_(build_ring(field_, m)), omega_(canonical_module(ring_)),
          x_(BranchElement<FiniteField>::monomial(field_, 1, 0, m)), quotient_(artin_quotient(ring_, x_ * x_)),
          module_(present_quotient(omega_.module(), omega_.module().multiply(x_), quotient_,
                                   std::optional<std::vector<BranchElement<FiniteField>>>(sigma_basis()))
                      .module),
          module_x2_(present_quotient(omega_.module(), omega_.module().multiply(x_ * x_), quotient_).module)
    {
        residue_ = std::make_unique<Module>(Module::residue_field(quotient_.algebra));
        for (std::size_t i = 0; i < quotient_.dim(); ++i)
            if (quotient_.lifts[i] == x_) x_index_ = i;
    }

    int m() const { return m_; }
    const FiniteField& field() const { return field_; }
    const CurveRing<FiniteField>& ring() const { return ring_; }
    const CanonicalModule<FiniteField>& omega() const { return omega_; }
    const CurveQuotient<FiniteField>& algebra() const { return quotient_; }
    /// omega/x omega over R/x^2R, basis sigma_m, ..., sigma_2, s.
    const Module& module() const { return module_; }
    const Module& module_x2() const { return module_x2_; }
    const Module& residue() const { return *residue_; }
    std::size_t x_index() const { return x_index_; }

    /// omega/x omega from the formula t^i sigma_j = delta_{i, j+m-1} s.
    Module formula_module() const
    {
        const std::size_t d = static_cast<std::size_t>(m_);
        std::vector<Matrix<FiniteField>> rho;
        for (std::size_t b = 0; b < quotient_.dim(); ++b) {
            Matrix<FiniteField> a(field_, d, d);
            const auto& lift = quotient_.lifts[b];
            if (b == 0) {
                a = Matrix<FiniteField>::identity(field_, d);
            } else if (lift.terms(0).size() == 1) {
                int i = lift.terms(0).front().exponent;
                for (int j = 2; j <= m_; ++j)
                    if (i == j + m_ - 1) a(d - 1, static_cast<std::size_t>(m_ - j)) = field_.one();
            } else {
                fail(ErrorKind::InvalidArgument, "algebra basis is not monomial");
            }
            rho.push_back(std::move(a));
        }
        return Module(quotient_.algebra, std::move(rho), true);
    }

    /// Generators of omega: t^-m, ..., t^-2, 1 (times dt).
    std::vector<BranchElement<FiniteField>> standard_omega_generators() const
    {
        std::vector<BranchElement<FiniteField>> g;
        for (int j = m_; j >= 2; --j) g.push_back(BranchElement<FiniteField>::monomial(field_, 1, 0, -j, field_.one(), true));
        g.push_back(BranchElement<FiniteField>::monomial(field_, 1, 0, 0, field_.one(), true));
        return g;
    }

    std::vector<BranchElement<FiniteField>> sigma_basis() const
    {
        std::vector<BranchElement<FiniteField>> b;
        for (int j = m_; j >= 2; --j) b.push_back(BranchElement<FiniteField>::monomial(field_, 1, 0, -j, field_.one(), true));
        b.push_back(BranchElement<FiniteField>::monomial(field_, 1, 0, m_ - 1, field_.one(), true));
        return b;
    }

    Vec<FiniteField> x_coordinates() const
    {
        Vec<FiniteField> a = zero_vec(field_, quotient_.dim());
        a[x_index_] = field_.one();
        return a;
    }

private:
    static FiniteField check(int m, std::uint64_t p)
    {
        if (m < 3) fail(ErrorKind::InvalidArgument, "the example family needs m >= 3, got " + std::to_string(m));
        if (m > 12) fail(ErrorKind::TooLarge, "m = " + std::to_string(m) + " is beyond the feasibility bound 12");
        if (!is_prime(p)) fail(ErrorKind::InvalidArgument, std::to_string(p) + " is not prime");
        return FiniteField(p);
    }

    static CurveRing<FiniteField> build_ring(const FiniteField& k, int m)
    {
        std::vector<int> gens;
        for (int i = m; i < 2 * m; ++i) gens.push_back(i);
        return semigroup_ring(k, gens, "k[t^i : i >= " + std::to_string(m) + "]");
    }

    int m_;
    FiniteField field_;
    CurveRing<FiniteField> ring_;
    CanonicalModule<FiniteField> omega_;
    BranchElement<FiniteField> x_;
    CurveQuotient<FiniteField> quotient_;
    Module module_;
    Module module_x2_;
    std::unique_ptr<Module> residue_;
    std::size_t x_index_ = 0;
};

struct ResidueExtReport {
    std::size_t by_resolution = 0;
    std::size_t by_cocycles = 0;
    std::uint64_t enumerated_classes = 0;
    long formula = 0; // m^2 - m - 1
    bool routes_agree = false;
    bool matches_formula = false;
};

inline ResidueExtReport residue_ext(const ExtLabInstance& lab, bool enumerate = true, std::size_t bound = 12)
{
    ResidueExtReport r;
    r.by_resolution = ext(lab.module(), lab.residue(), 1);
    auto space = extension_space(lab.module(), lab.residue());
    r.by_cocycles = space.ext_dim();
    if (enumerate) r.enumerated_classes = for_each_extension_class(space, lab.field(), [](const auto&) {}, bound);
    r.formula = static_cast<long>(lab.m()) * lab.m() - lab.m() - 1;
    std::uint64_t expected = 1;
    for (std::size_t j = 0; j < r.by_cocycles; ++j) expected *= lab.field().cardinality();
    r.routes_agree = r.by_resolution == r.by_cocycles && (!enumerate || r.enumerated_classes == expected);
    r.matches_formula = static_cast<long>(r.by_resolution) == r.formula;
    return r;
}

struct SelfExtReport {
    std::size_t ext_dim = 0;          // dim Ext^1(omega/x omega, omega/x omega)
    std::uint64_t classes = 0;        // all cocycle classes
    std::uint64_t qualifying = 0;     // classes with M'/xM' = omega/x omega
    std::uint64_t isomorphic = 0;     // of those, middle isomorphic to omega/x^2 omega
    bool holds() const { return qualifying > 0 && qualifying == isomorphic; }
};

/// Every self-extension of omega/x omega whose middle M' has M'/xM' of
/// dimension m is isomorphic to omega/x^2 omega.
inline SelfExtReport verify_self_extensions(const ExtLabInstance& lab, std::size_t bound = 12)
{
    const auto& k = lab.field();
    const auto& m = lab.module();
    auto space = extension_space(m, m);
    SelfExtReport r;
    r.ext_dim = space.ext_dim();
    const auto x = lab.x_coordinates();
    r.classes = for_each_extension_class(
        space, k,
        [&](const Vec<FiniteField>& c) {
            // x acts on the middle by [[0, phi_x], [0, 0]], so M'/xM' has
            // dimension m exactly when phi_x is invertible.
            if (!cocycle_component(space, k, c, x).is_invertible()) return;
            ++r.qualifying;
            if (module_iso(middle_module(m, m, c), lab.module_x2())) ++r.isomorphic;
        },
        bound);
    return r;
}

struct NonQuotientReport {
    std::size_t ext_dim = 0;
    std::uint64_t classes = 0;
    std::uint64_t with_nonzero_x = 0;  // M'/xM' = omega/x omega
    std::uint64_t quotients_of_omega = 0;
    std::optional<ArtinModule<FiniteField>> witness;
};

namespace detail {

// Does some A-map omega/x^2 omega -> E induce a surjection on tops?
inline bool has_surjection(const ArtinModule<FiniteField>& src, const ArtinModule<FiniteField>& e)
{
    const auto& k = e.field();
    auto homs = hom_space(src, e);
    auto rad_e = radical_image(e);
    std::vector<Vec<FiniteField>> units_e, units_s;
    for (std::size_t i = 0; i < e.dim(); ++i) {
        Vec<FiniteField> u = zero_vec(k, e.dim());
        u[i] = k.one();
        units_e.push_back(u);
    }
    for (std::size_t i = 0; i < src.dim(); ++i) {
        Vec<FiniteField> u = zero_vec(k, src.dim());
        u[i] = k.one();
        units_s.push_back(u);
    }
    auto top_e = complement_basis(k, e.dim(), rad_e, units_e);
    auto top_s = complement_basis(k, src.dim(), radical_image(src), units_s);
    if (top_s.size() < top_e.size()) return false;
    QuotientCoordinates<FiniteField> qc(k, e.dim(), rad_e, top_e);
    // induced maps top(src) -> top(E), as matrices
    std::vector<Matrix<FiniteField>> induced;
    Echelon<FiniteField> seen(k, top_e.size() * top_s.size());
    for (const auto& h : homs) {
        Matrix<FiniteField> t(k, top_e.size(), top_s.size());
        for (std::size_t j = 0; j < top_s.size(); ++j) {
            auto c = qc.coordinates(h.apply(top_s[j]));
            for (std::size_t r = 0; r < top_e.size(); ++r) t(r, j) = (*c)[r];
        }
        if (seen.insert(t.data())) induced.push_back(std::move(t));
    }
    auto full_rank = [&](const Matrix<FiniteField>& t) { return t.rank() == top_e.size(); };
    return search_span(k, induced, full_rank, std::uint64_t{1} << 24, 0).has_value();
}

} // namespace detail

/// An extension M' of omega/x omega by k with M'/xM' = omega/x omega that is
/// not a quotient of omega.
inline NonQuotientReport find_non_quotient(const ExtLabInstance& lab, std::size_t bound = 12)
{
    const auto& k = lab.field();
    const auto& m = lab.module();
    auto space = extension_space(m, lab.residue());
    NonQuotientReport r;
    r.ext_dim = space.ext_dim();
    const auto x = lab.x_coordinates();
    r.classes = for_each_extension_class(
        space, k,
        [&](const Vec<FiniteField>& c) {
            if (cocycle_component(space, k, c, x).is_zero()) return;
            ++r.with_nonzero_x;
            auto e = middle_module(m, lab.residue(), c);
            if (detail::has_surjection(lab.module_x2(), e))
                ++r.quotients_of_omega;
            else if (!r.witness)
                r.witness = e;
        },
        bound);
    if (!r.witness) fail(ErrorKind::NoWitness, "every qualifying extension is a quotient of omega");
    return r;
}

} // namespace curvedual
