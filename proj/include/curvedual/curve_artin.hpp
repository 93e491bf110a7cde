#pragma once

// Artinian quotients O/xO of a curve ring and the finite-length modules M/N
// presented over them.

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "artin.hpp"
#include "curvering.hpp"
#include "fracideal.hpp"

namespace curvedual {

template <Field F>
struct CurveQuotient {
    std::shared_ptr<const ArtinAlgebra<F>> algebra;
    BranchElement<F> x;
    FracIdeal<F> ideal;                  // xO
    std::vector<BranchElement<F>> lifts; // lifts of the basis b_0 = 1, b_1, ...

    std::size_t dim() const { return lifts.size(); }
};

/// A = O/xO on a basis adapted to monomials: 1 first, then the echelon basis
/// of O and the conductor monomials, skipping whatever falls into xO.
template <Field F>
CurveQuotient<F> artin_quotient(const CurveRing<F>& ring, const BranchElement<F>& x)
{
    if (!ring.contains(x)) fail(ErrorKind::NotMember, x.to_string() + " is not in O");
    if (!x.nonzero_on_every_branch()) fail(ErrorKind::ZeroDivisor, x.to_string() + " vanishes on a branch");
    for (std::size_t i = 0; i < ring.branches(); ++i)
        if (*x.valuation(i) < 1) fail(ErrorKind::InvalidArgument, x.to_string() + " is a unit; O/xO would be zero");
    const F& k = ring.field();
    auto o = FracIdeal<F>::unit(ring);
    auto xo = o.multiply(x);
    detail::Window w(std::vector<int>(ring.branches(), 0), xo.tail());
    auto sub = xo.span_in(w);
    std::vector<Vec<F>> candidates{w.embed_or_throw(ring.one().truncated(w.hi()))};
    for (auto& v : o.span_in(w)) candidates.push_back(std::move(v));
    auto basis = complement_basis(k, w.dim(), sub, candidates);
    std::vector<BranchElement<F>> lifts;
    std::vector<std::string> names;
    for (const auto& v : basis) {
        lifts.push_back(w.element(k, v, false));
        names.push_back(lifts.back().to_string());
    }
    QuotientCoordinates<F> qc(k, w.dim(), sub, basis);
    auto product = [&](std::size_t i, std::size_t j) {
        Vec<F> v = w.embed_or_throw((lifts[i] * lifts[j]).truncated(w.hi()));
        auto c = qc.coordinates(v);
        if (!c) fail(ErrorKind::InvalidArgument, "product left O/xO; the ring basis is not closed");
        return *c;
    };
    auto alg = std::make_shared<const ArtinAlgebra<F>>(ArtinAlgebra<F>::from_products(k, lifts.size(), product, names));
    return CurveQuotient<F>{alg, x, xo, lifts};
}

template <Field F>
struct PresentedQuotient {
    ArtinModule<F> module;
    std::vector<BranchElement<F>> lifts; // lifts of the module basis
};

/// M/N as a module over O/xO. When lifts are given they must map to a basis
/// of M/N and are used as the module basis.
template <Field F>
PresentedQuotient<F> present_quotient(const FracIdeal<F>& m, const FracIdeal<F>& n, const CurveQuotient<F>& q,
                                      std::optional<std::vector<BranchElement<F>>> given = std::nullopt)
{
    m.check_owner(n);
    if (!m.contains(n)) fail(ErrorKind::NotContained, "submodule is not contained in the module");
    if (!n.contains(m.multiply(q.x))) fail(ErrorKind::NotKilled, "x does not kill the quotient");
    const F& k = m.field();
    detail::Window w(m.pole(), n.tail());
    auto sub = n.span_in(w);
    std::vector<Vec<F>> basis;
    std::vector<BranchElement<F>> lifts;
    if (given) {
        for (const auto& g : *given) {
            if (!m.contains(g)) fail(ErrorKind::NotContained, "lift " + g.to_string() + " is not in the module");
            basis.push_back(w.embed_or_throw(g.truncated(w.hi())));
        }
        lifts = *given;
        if (static_cast<long>(basis.size()) != len_quotient(n, m))
            fail(ErrorKind::InvalidArgument, "given lifts do not match the quotient length");
    } else {
        basis = complement_basis(k, w.dim(), sub, m.span_in(w));
        for (const auto& v : basis) lifts.push_back(w.element(k, v, m.is_differential()));
    }
    QuotientCoordinates<F> qc(k, w.dim(), sub, basis);
    std::vector<Matrix<F>> rho;
    for (std::size_t i = 0; i < q.dim(); ++i) {
        Matrix<F> a(k, basis.size(), basis.size());
        for (std::size_t j = 0; j < lifts.size(); ++j) {
            Vec<F> v = w.embed_or_throw((q.lifts[i] * lifts[j]).truncated(w.hi()));
            auto c = qc.coordinates(v);
            if (!c) fail(ErrorKind::NotContained, "module is not closed under the ring action");
            for (std::size_t r = 0; r < basis.size(); ++r) a(r, j) = (*c)[r];
        }
        rho.push_back(std::move(a));
    }
    return {ArtinModule<F>(q.algebra, std::move(rho), true), std::move(lifts)};
}

/// A parameter x in m with finite valuation on every branch and minimal
/// total order among a few natural candidates.
template <Field F>
BranchElement<F> default_parameter(const CurveRing<F>& ring)
{
    std::vector<BranchElement<F>> cands;
    BranchElement<F> sum(ring.field(), ring.branches());
    for (const auto& g : ring.generators()) {
        if (g.nonzero_on_every_branch()) cands.push_back(g);
        sum = sum + g;
    }
    if (sum.nonzero_on_every_branch()) cands.push_back(sum);
    if (cands.empty())
        if (auto g = detail::branch_free_element(ring.field(), ring.branches(), ring.generators())) cands.push_back(*g);
    if (cands.empty()) fail(ErrorKind::InvalidArgument, "no parameter found");
    auto order = [](const BranchElement<F>& e) {
        int s = 0;
        for (std::size_t i = 0; i < e.branches(); ++i) s += *e.valuation(i);
        return s;
    };
    std::size_t best = 0;
    for (std::size_t j = 1; j < cands.size(); ++j)
        if (order(cands[j]) < order(cands[best])) best = j;
    return cands[best];
}

} // namespace curvedual
