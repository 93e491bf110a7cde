#pragma once

// Finite-dimensional commutative local algebras with residue field k, given
// by left multiplication matrices on a basis b_0 = 1, b_1, ..., b_{n-1}
// whose tail spans the radical, and their finite modules given by action
// matrices.

#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "errors.hpp"
#include "field.hpp"
#include "linalg.hpp"

namespace curvedual {

template <Field F>
class ArtinAlgebra {
public:
    using S = Scalar<F>;

    /// left[i] is the matrix of multiplication by b_i.
    ArtinAlgebra(F field, std::vector<Matrix<F>> left, std::vector<std::string> names = {})
        : field_(std::move(field)), left_(std::move(left)), names_(std::move(names))
    {
        validate();
        compute_generators();
    }

    /// c(i, j) returns the coordinate vector of b_i * b_j.
    template <class Fn>
    static ArtinAlgebra from_products(const F& field, std::size_t n, Fn&& c, std::vector<std::string> names = {})
    {
        std::vector<Matrix<F>> left;
        for (std::size_t i = 0; i < n; ++i) {
            Matrix<F> l(field, n, n);
            for (std::size_t j = 0; j < n; ++j) {
                Vec<F> p = c(i, j);
                for (std::size_t k = 0; k < n; ++k) l(k, j) = p[k];
            }
            left.push_back(std::move(l));
        }
        return ArtinAlgebra(field, std::move(left), std::move(names));
    }

    const F& field() const { return field_; }
    std::size_t dim() const { return left_.size(); }
    const Matrix<F>& left(std::size_t i) const { return left_[i]; }
    /// Coordinates of b_i * b_j.
    Vec<F> product(std::size_t i, std::size_t j) const { return left_[i].column(j); }
    const S& constant(std::size_t i, std::size_t j, std::size_t k) const { return left_[i](k, j); }
    /// Indices of basis elements whose classes form a basis of rad/rad^2.
    const std::vector<std::size_t>& generators() const { return generators_; }
    std::size_t loewy_length() const { return loewy_; }
    std::string basis_name(std::size_t i) const
    {
        return i < names_.size() ? names_[i] : "b" + std::to_string(i);
    }
    const std::vector<std::string>& names() const { return names_; }

    bool operator==(const ArtinAlgebra& o) const { return left_ == o.left_; }

private:
    void validate() const
    {
        const std::size_t n = dim();
        if (n == 0) fail(ErrorKind::InvalidArgument, "an Artin local algebra has dimension at least 1");
        for (const auto& l : left_)
            if (l.rows() != n || l.cols() != n) fail(ErrorKind::InvalidArgument, "structure matrices must be square");
        if (!(left_[0] == Matrix<F>::identity(field_, n)))
            fail(ErrorKind::InvalidArgument, "b_0 must act as the identity");
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                if (!(left_[i].column(j) == left_[j].column(i)))
                    fail(ErrorKind::InvalidArgument, "algebra is not commutative");
                if (i > 0 && j > 0 && !field_.is_zero(left_[i](0, j)))
                    fail(ErrorKind::InvalidArgument, "radical span(b_1..b_{n-1}) is not an ideal");
            }
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                Matrix<F> rhs(field_, n, n);
                for (std::size_t k = 0; k < n; ++k)
                    if (!field_.is_zero(left_[i](k, j))) rhs = rhs + left_[k].scaled(left_[i](k, j));
                if (!(left_[i] * left_[j] == rhs)) fail(ErrorKind::InvalidArgument, "algebra is not associative");
            }
    }

    void compute_generators()
    {
        const std::size_t n = dim();
        std::vector<Vec<F>> rad;
        for (std::size_t i = 1; i < n; ++i) {
            Vec<F> e = zero_vec(field_, n);
            e[i] = field_.one();
            rad.push_back(e);
        }
        std::vector<Vec<F>> power = rad, rad2;
        loewy_ = 1;
        while (!power.empty()) {
            Echelon<F> next(field_, n);
            for (const auto& v : power)
                for (std::size_t i = 1; i < n; ++i) next.insert(left_[i].apply(v));
            if (next.rank() == power.size()) fail(ErrorKind::InvalidArgument, "radical is not nilpotent");
            if (loewy_ == 1) rad2 = next.rows();
            power = next.rows();
            ++loewy_;
        }
        for (const auto& v : complement_basis(field_, n, rad2, rad))
            for (std::size_t i = 1; i < n; ++i)
                if (!field_.is_zero(v[i])) {
                    generators_.push_back(i);
                    break;
                }
    }

    F field_;
    std::vector<Matrix<F>> left_;
    std::vector<std::string> names_;
    std::vector<std::size_t> generators_;
    std::size_t loewy_ = 1;
};

template <Field F>
class ArtinModule {
public:
    using Algebra = ArtinAlgebra<F>;

    ArtinModule(std::shared_ptr<const Algebra> alg, std::vector<Matrix<F>> rho, bool check = true)
        : alg_(std::move(alg)), rho_(std::move(rho))
    {
        if (rho_.size() != alg_->dim()) fail(ErrorKind::InvalidArgument, "one action matrix per algebra basis element");
        dim_ = rho_[0].rows();
        if (check) validate();
    }

    static ArtinModule free(std::shared_ptr<const Algebra> alg)
    {
        std::vector<Matrix<F>> rho;
        for (std::size_t i = 0; i < alg->dim(); ++i) rho.push_back(alg->left(i));
        return ArtinModule(alg, std::move(rho), false);
    }

    static ArtinModule residue_field(std::shared_ptr<const Algebra> alg)
    {
        std::vector<Matrix<F>> rho;
        for (std::size_t i = 0; i < alg->dim(); ++i) rho.emplace_back(alg->field(), 1, 1);
        rho[0](0, 0) = alg->field().one();
        return ArtinModule(alg, std::move(rho), false);
    }

    const Algebra& algebra() const { return *alg_; }
    const std::shared_ptr<const Algebra>& algebra_ptr() const { return alg_; }
    const F& field() const { return alg_->field(); }
    std::size_t dim() const { return dim_; }
    const Matrix<F>& act(std::size_t i) const { return rho_[i]; }
    const std::vector<Matrix<F>>& actions() const { return rho_; }

    /// Action of the algebra element with coordinates a.
    Matrix<F> act(const Vec<F>& a) const
    {
        Matrix<F> m(field(), dim_, dim_);
        for (std::size_t k = 0; k < a.size(); ++k)
            if (!field().is_zero(a[k])) m = m + rho_[k].scaled(a[k]);
        return m;
    }

    bool same_algebra(const ArtinModule& o) const { return alg_ == o.alg_ || *alg_ == *o.alg_; }

    bool operator==(const ArtinModule& o) const { return same_algebra(o) && rho_ == o.rho_; }

private:
    void validate() const
    {
        const auto& A = *alg_;
        const std::size_t n = A.dim();
        for (const auto& r : rho_)
            if (r.rows() != dim_ || r.cols() != dim_) fail(ErrorKind::InvalidArgument, "action matrices must be square");
        if (!(rho_[0] == Matrix<F>::identity(field(), dim_)))
            fail(ErrorKind::InvalidArgument, "the unit must act as the identity");
        for (std::size_t i = 1; i < n; ++i)
            for (std::size_t j = 1; j < n; ++j) {
                if (!(rho_[i] * rho_[j] == act(A.product(i, j))))
                    fail(ErrorKind::InvalidArgument, "action matrices violate the structure constants");
            }
    }

    std::shared_ptr<const Algebra> alg_;
    std::vector<Matrix<F>> rho_;
    std::size_t dim_ = 0;
};

/// Hom_k(M, k) with the transposed action.
template <Field F>
ArtinModule<F> matlis_dual(const ArtinModule<F>& m)
{
    std::vector<Matrix<F>> rho;
    for (const auto& r : m.actions()) rho.push_back(r.transpose());
    return ArtinModule<F>(m.algebra_ptr(), std::move(rho), false);
}

/// Basis of {v : rad * v = 0}.
template <Field F>
std::vector<Vec<F>> socle(const ArtinModule<F>& m)
{
    const std::size_t d = m.dim();
    const auto& gens = m.algebra().generators();
    Matrix<F> stacked(m.field(), gens.size() * d, d);
    for (std::size_t g = 0; g < gens.size(); ++g)
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j) stacked(g * d + i, j) = m.act(gens[g])(i, j);
    if (gens.empty()) {
        std::vector<Vec<F>> all;
        for (std::size_t i = 0; i < d; ++i) {
            Vec<F> e = zero_vec(m.field(), d);
            e[i] = m.field().one();
            all.push_back(e);
        }
        return all;
    }
    return stacked.kernel();
}

/// Basis of rad * M.
template <Field F>
std::vector<Vec<F>> radical_image(const ArtinModule<F>& m)
{
    Echelon<F> e(m.field(), m.dim());
    for (std::size_t g : m.algebra().generators())
        for (std::size_t j = 0; j < m.dim(); ++j) e.insert(m.act(g).column(j));
    return e.rows();
}

template <Field F>
std::size_t top_dim(const ArtinModule<F>& m)
{
    return m.dim() - radical_image(m).size();
}

namespace detail {

// b_l acting on A^b, vectors stored block by block.
template <Field F>
Vec<F> act_free(const ArtinAlgebra<F>& A, std::size_t l, const Vec<F>& v)
{
    const std::size_t n = A.dim();
    Vec<F> out = zero_vec(A.field(), v.size());
    for (std::size_t blk = 0; blk * n < v.size(); ++blk) {
        Vec<F> part(v.begin() + static_cast<std::ptrdiff_t>(blk * n), v.begin() + static_cast<std::ptrdiff_t>((blk + 1) * n));
        Vec<F> img = A.left(l).apply(part);
        std::copy(img.begin(), img.end(), out.begin() + static_cast<std::ptrdiff_t>(blk * n));
    }
    return out;
}

// Lifts of a basis of K / rad K for an A-submodule K of A^b given by a basis.
template <Field F>
std::vector<Vec<F>> free_submodule_generators(const ArtinAlgebra<F>& A, std::size_t ambient,
                                              const std::vector<Vec<F>>& k)
{
    Echelon<F> radk(A.field(), ambient);
    for (std::size_t g : A.generators())
        for (const auto& v : k) radk.insert(act_free(A, g, v));
    return complement_basis(A.field(), ambient, radk.rows(), k);
}

} // namespace detail

/// A minimal free resolution truncated after `length` steps.
template <Field F>
struct FreeResolution {
    std::vector<std::size_t> betti;
    /// maps[0]: images in M of the generators of F_0; maps[j] for j >= 1:
    /// images in F_{j-1} of the generators of F_j.
    std::vector<std::vector<Vec<F>>> maps;
};

template <Field F>
FreeResolution<F> minimal_resolution(const ArtinModule<F>& m, std::size_t i_max = 5)
{
    const auto& A = m.algebra();
    const F& k = m.field();
    const std::size_t n = A.dim();
    FreeResolution<F> res;

    std::vector<Vec<F>> gens;
    {
        std::vector<Vec<F>> units;
        for (std::size_t i = 0; i < m.dim(); ++i) {
            Vec<F> e = zero_vec(k, m.dim());
            e[i] = k.one();
            units.push_back(e);
        }
        gens = complement_basis(k, m.dim(), radical_image(m), units);
    }
    res.betti.push_back(gens.size());
    res.maps.push_back(gens);

    // columns of the map F_0 -> M
    std::vector<Vec<F>> cols;
    for (const auto& g : gens)
        for (std::size_t l = 0; l < n; ++l) cols.push_back(m.act(l).apply(g));
    std::size_t target_dim = m.dim();
    for (std::size_t step = 1; step <= i_max; ++step) {
        const std::size_t ambient = n * res.betti.back();
        std::vector<Vec<F>> kernel;
        if (ambient > 0) kernel = Matrix<F>::from_columns(k, target_dim, cols).kernel();
        auto next = detail::free_submodule_generators(A, ambient, kernel);
        res.betti.push_back(next.size());
        std::vector<Vec<F>> ncols;
        for (const auto& g : next)
            for (std::size_t l = 0; l < n; ++l) ncols.push_back(detail::act_free(A, l, g));
        res.maps.push_back(std::move(next));
        cols = std::move(ncols);
        target_dim = ambient;
    }
    return res;
}

/// dim_k Ext^i_A(M, N) from the Hom complex of a minimal resolution of M.
template <Field F>
std::size_t ext(const ArtinModule<F>& m, const ArtinModule<F>& n, std::size_t i)
{
    if (!m.same_algebra(n)) fail(ErrorKind::InvalidArgument, "modules over different algebras");
    const F& k = m.field();
    const std::size_t dn = n.dim();
    auto res = minimal_resolution(m, i + 1);
    // delta_j : N^{b_{j-1}} -> N^{b_j}
    auto delta_rank = [&](std::size_t j) -> std::size_t {
        if (j == 0) return 0;
        std::size_t bprev = res.betti[j - 1], bj = res.betti[j];
        if (bprev == 0 || bj == 0 || dn == 0) return 0;
        const std::size_t nA = m.algebra().dim();
        Matrix<F> d(k, dn * bj, dn * bprev);
        for (std::size_t e = 0; e < bj; ++e) {
            const Vec<F>& g = res.maps[j][e];
            for (std::size_t c = 0; c < bprev; ++c) {
                Vec<F> a(g.begin() + static_cast<std::ptrdiff_t>(c * nA), g.begin() + static_cast<std::ptrdiff_t>((c + 1) * nA));
                Matrix<F> block = n.act(a);
                for (std::size_t r = 0; r < dn; ++r)
                    for (std::size_t s = 0; s < dn; ++s) d(e * dn + r, c * dn + s) = block(r, s);
            }
        }
        return d.rank();
    };
    std::size_t cochains = dn * res.betti[i];
    return cochains - delta_rank(i + 1) - delta_rank(i);
}

/// Basis of Hom_A(M, N) as d_N x d_M matrices.
template <Field F>
std::vector<Matrix<F>> hom_space(const ArtinModule<F>& m, const ArtinModule<F>& n)
{
    if (!m.same_algebra(n)) fail(ErrorKind::InvalidArgument, "modules over different algebras");
    const F& k = m.field();
    const std::size_t dm = m.dim(), dn = n.dim();
    const auto& gens = m.algebra().generators();
    std::vector<Matrix<F>> out;
    if (dm == 0 || dn == 0) return out;
    Matrix<F> eq(k, std::max<std::size_t>(1, gens.size()) * dn * dm, dn * dm);
    for (std::size_t g = 0; g < gens.size(); ++g) {
        const auto& pm = m.act(gens[g]);
        const auto& pn = n.act(gens[g]);
        for (std::size_t a = 0; a < dn; ++a)
            for (std::size_t b = 0; b < dm; ++b) {
                std::size_t row = g * dn * dm + a * dm + b;
                // (X pm)[a][b] - (pn X)[a][b]
                for (std::size_t c = 0; c < dm; ++c)
                    if (!k.is_zero(pm(c, b))) eq(row, a * dm + c) = k.add(eq(row, a * dm + c), pm(c, b));
                for (std::size_t r = 0; r < dn; ++r)
                    if (!k.is_zero(pn(a, r))) eq(row, r * dm + b) = k.sub(eq(row, r * dm + b), pn(a, r));
            }
    }
    for (auto& v : eq.kernel()) out.push_back(Matrix<F>::from_data(k, dn, dm, std::move(v)));
    return out;
}

namespace detail {

// Searches span(basis) for an element accepted by `good`: exhaustively when
// the span has at most `exhaustive_limit` elements over a finite field,
// otherwise by seeded random combinations.
template <Field F, class Good>
std::optional<Matrix<F>> search_span(const F& k, const std::vector<Matrix<F>>& basis, Good&& good,
                                     std::uint64_t exhaustive_limit = 1u << 14, int random_trials = 256,
                                     std::uint64_t seed = 0xa27e)
{
    if (basis.empty()) return std::nullopt;
    const std::uint64_t q = k.cardinality();
    auto combine = [&](const std::vector<Scalar<F>>& c) {
        Matrix<F> x(k, basis[0].rows(), basis[0].cols());
        for (std::size_t j = 0; j < basis.size(); ++j)
            if (!k.is_zero(c[j])) x = x + basis[j].scaled(c[j]);
        return x;
    };
    for (const auto& b : basis)
        if (good(b)) return b;
    bool exhaustive = false;
    if (q != 0) {
        std::uint64_t total = 1;
        exhaustive = true;
        for (std::size_t j = 0; j < basis.size(); ++j) {
            total *= q;
            if (total > exhaustive_limit) {
                exhaustive = false;
                break;
            }
        }
        if (exhaustive && k.characteristic() == q) {
            std::vector<std::uint64_t> digits(basis.size(), 0);
            std::vector<Scalar<F>> c(basis.size(), k.zero());
            for (std::uint64_t idx = 0; idx < total; ++idx) {
                for (std::size_t j = 0; j < basis.size(); ++j) c[j] = k.from_int(static_cast<long>(digits[j]));
                Matrix<F> x = combine(c);
                if (good(x)) return x;
                for (std::size_t j = 0; j < basis.size(); ++j) {
                    if (++digits[j] < q) break;
                    digits[j] = 0;
                }
            }
            return std::nullopt;
        }
    }
    std::mt19937_64 rng(seed);
    std::vector<Scalar<F>> c(basis.size(), k.zero());
    for (int t = 0; t < random_trials; ++t) {
        for (auto& x : c) x = k.random(rng);
        Matrix<F> x = combine(c);
        if (good(x)) return x;
    }
    return std::nullopt;
}

} // namespace detail

/// An invertible A-linear map M -> N, if one is found.
template <Field F>
std::optional<Matrix<F>> module_iso(const ArtinModule<F>& m, const ArtinModule<F>& n)
{
    if (m.dim() != n.dim() || !m.same_algebra(n)) return std::nullopt;
    if (m.dim() == 0) return Matrix<F>(m.field(), 0, 0);
    if (m.actions() == n.actions()) return Matrix<F>::identity(m.field(), m.dim());
    auto basis = hom_space(m, n);
    return detail::search_span(m.field(), basis, [](const Matrix<F>& x) { return x.is_invertible(); });
}

/// Cocycle description of Ext^1_A(M, N): the middle module of the class of
/// (phi_1, ..., phi_{n-1}) acts on N (+) M by [[rho_N(b_i), phi_i], [0, rho_M(b_i)]].
template <Field F>
struct ExtensionSpace {
    std::size_t dim_n = 0, dim_m = 0;
    std::size_t unknowns = 0;          // (dim A - 1) dim N dim M
    std::vector<Vec<F>> cocycles;      // basis of Z^1
    std::vector<Vec<F>> coboundaries;  // basis of B^1
    std::vector<Vec<F>> classes;       // cocycles whose classes form a basis of Ext^1
    std::size_t ext_dim() const { return classes.size(); }
};

template <Field F>
ExtensionSpace<F> extension_space(const ArtinModule<F>& m, const ArtinModule<F>& n)
{
    if (!m.same_algebra(n)) fail(ErrorKind::InvalidArgument, "modules over different algebras");
    const auto& A = m.algebra();
    const F& k = m.field();
    const std::size_t nA = A.dim(), dn = n.dim(), dm = m.dim();
    const std::size_t block = dn * dm;
    const std::size_t unknowns = (nA - 1) * block;
    ExtensionSpace<F> out;
    out.dim_n = dn;
    out.dim_m = dm;
    out.unknowns = unknowns;
    if (unknowns == 0) return out;
    auto var = [&](std::size_t kk, std::size_t a, std::size_t b) { return (kk - 1) * block + a * dm + b; };

    // rho_N(b_i) phi_j + phi_i rho_M(b_j) - sum_k c^k_ij phi_k = 0, both orders
    std::size_t pairs = (nA - 1) * (nA - 1);
    Matrix<F> eq(k, pairs * block, unknowns);
    std::size_t base = 0;
    for (std::size_t i = 1; i < nA; ++i)
        for (std::size_t j = 1; j < nA; ++j, base += block) {
            const auto& pn = n.act(i);
            const auto& pm = m.act(j);
            for (std::size_t a = 0; a < dn; ++a)
                for (std::size_t b = 0; b < dm; ++b) {
                    std::size_t row = base + a * dm + b;
                    for (std::size_t r = 0; r < dn; ++r)
                        if (!k.is_zero(pn(a, r))) eq(row, var(j, r, b)) = k.add(eq(row, var(j, r, b)), pn(a, r));
                    for (std::size_t c = 0; c < dm; ++c)
                        if (!k.is_zero(pm(c, b))) eq(row, var(i, a, c)) = k.add(eq(row, var(i, a, c)), pm(c, b));
                    for (std::size_t kk = 1; kk < nA; ++kk) {
                        const auto& c = A.constant(i, j, kk);
                        if (!k.is_zero(c)) eq(row, var(kk, a, b)) = k.sub(eq(row, var(kk, a, b)), c);
                    }
                }
        }
    out.cocycles = eq.kernel();

    // phi_i = rho_N(b_i) psi - psi rho_M(b_i)
    Echelon<F> bnd(k, unknowns);
    for (std::size_t r0 = 0; r0 < dn; ++r0)
        for (std::size_t c0 = 0; c0 < dm; ++c0) {
            Vec<F> v = zero_vec(k, unknowns);
            for (std::size_t i = 1; i < nA; ++i) {
                const auto& pn = n.act(i);
                const auto& pm = m.act(i);
                for (std::size_t a = 0; a < dn; ++a) v[var(i, a, c0)] = k.add(v[var(i, a, c0)], pn(a, r0));
                for (std::size_t b = 0; b < dm; ++b) v[var(i, r0, b)] = k.sub(v[var(i, r0, b)], pm(c0, b));
            }
            bnd.insert(std::move(v));
        }
    out.coboundaries = bnd.rows();
    out.classes = complement_basis(k, unknowns, out.coboundaries, out.cocycles);
    return out;
}

template <Field F>
ArtinModule<F> middle_module(const ArtinModule<F>& m, const ArtinModule<F>& n, const Vec<F>& cocycle)
{
    const auto& A = m.algebra();
    const F& k = m.field();
    const std::size_t dn = n.dim(), dm = m.dim(), d = dn + dm;
    std::vector<Matrix<F>> rho;
    for (std::size_t i = 0; i < A.dim(); ++i) {
        Matrix<F> e(k, d, d);
        for (std::size_t a = 0; a < dn; ++a)
            for (std::size_t b = 0; b < dn; ++b) e(a, b) = n.act(i)(a, b);
        for (std::size_t a = 0; a < dm; ++a)
            for (std::size_t b = 0; b < dm; ++b) e(dn + a, dn + b) = m.act(i)(a, b);
        if (i > 0)
            for (std::size_t a = 0; a < dn; ++a)
                for (std::size_t b = 0; b < dm; ++b) e(a, dn + b) = cocycle[(i - 1) * dn * dm + a * dm + b];
        rho.push_back(std::move(e));
    }
    return ArtinModule<F>(m.algebra_ptr(), std::move(rho), true);
}

/// phi_a : M -> N for the algebra element with coordinates a.
template <Field F>
Matrix<F> cocycle_component(const ExtensionSpace<F>& e, const F& k, const Vec<F>& cocycle, const Vec<F>& a)
{
    Matrix<F> out(k, e.dim_n, e.dim_m);
    const std::size_t block = e.dim_n * e.dim_m;
    for (std::size_t i = 1; i < a.size(); ++i) {
        if (k.is_zero(a[i])) continue;
        for (std::size_t r = 0; r < e.dim_n; ++r)
            for (std::size_t c = 0; c < e.dim_m; ++c)
                out(r, c) = k.add(out(r, c), k.mul(a[i], cocycle[(i - 1) * block + r * e.dim_m + c]));
    }
    return out;
}

/// Calls visit(cocycle) once per class of Ext^1_A(M, N), split class first.
/// Needs a prime field and ext dimension at most `bound`.
template <Field F, class Visit>
std::uint64_t for_each_extension_class(const ExtensionSpace<F>& e, const F& k, Visit&& visit, std::size_t bound = 12)
{
    const std::uint64_t q = k.cardinality();
    if (q == 0 || k.characteristic() != q)
        fail(ErrorKind::InvalidArgument, "extension enumeration needs a finite prime field");
    const std::size_t dim = e.ext_dim();
    if (dim > bound)
        fail(ErrorKind::TooLarge, "Ext^1 has dimension " + std::to_string(dim) + " above the enumeration bound " +
                                      std::to_string(bound));
    std::uint64_t total = 1;
    for (std::size_t j = 0; j < dim; ++j) total *= q;
    const std::size_t len = e.unknowns;
    std::vector<std::uint64_t> digits(dim, 0);
    for (std::uint64_t idx = 0; idx < total; ++idx) {
        Vec<F> c = zero_vec(k, len);
        for (std::size_t j = 0; j < dim; ++j)
            if (digits[j]) {
                auto s = k.from_int(static_cast<long>(digits[j]));
                for (std::size_t t = 0; t < len; ++t)
                    if (!k.is_zero(e.classes[j][t])) c[t] = k.add(c[t], k.mul(s, e.classes[j][t]));
            }
        visit(c);
        for (std::size_t j = 0; j < dim; ++j) {
            if (++digits[j] < q) break;
            digits[j] = 0;
        }
    }
    return total;
}

template <Field F>
struct ExtensionEnumeration {
    std::size_t ext_dim = 0;
    std::uint64_t class_count = 0;
    std::vector<ArtinModule<F>> middles;
    /// Number of isomorphism classes of middle modules, when it was computed.
    std::optional<std::size_t> middle_iso_classes;
};

/// One middle module per class of Ext^1_A(M, N).
template <Field F>
ExtensionEnumeration<F> enumerate_extensions(const ArtinModule<F>& m, const ArtinModule<F>& n, std::size_t bound = 12,
                                             std::size_t iso_class_limit = 256)
{
    auto space = extension_space(m, n);
    ExtensionEnumeration<F> out;
    out.ext_dim = space.ext_dim();
    out.class_count = for_each_extension_class(space, m.field(),
                                               [&](const Vec<F>& c) { out.middles.push_back(middle_module(m, n, c)); },
                                               bound);
    if (out.middles.size() <= iso_class_limit) {
        std::vector<std::size_t> reps;
        for (std::size_t i = 0; i < out.middles.size(); ++i) {
            bool fresh = true;
            for (std::size_t r : reps)
                if (module_iso(out.middles[i], out.middles[r])) {
                    fresh = false;
                    break;
                }
            if (fresh) reps.push_back(i);
        }
        out.middle_iso_classes = reps.size();
    }
    return out;
}

} // namespace curvedual
