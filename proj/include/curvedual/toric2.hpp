#pragma once

// Affine semigroups in Z^2 spanning a pointed 2-dimensional cone, monomial
// modules over them, saturation, the S2 hull and the toric canonical module.

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "errors.hpp"

namespace curvedual {

using Point2 = std::array<long, 2>;

inline Point2 operator+(Point2 a, Point2 b) { return {a[0] + b[0], a[1] + b[1]}; }
inline Point2 operator-(Point2 a, Point2 b) { return {a[0] - b[0], a[1] - b[1]}; }
inline Point2 scale(long c, Point2 a) { return {c * a[0], c * a[1]}; }
inline long cross(Point2 a, Point2 b) { return a[0] * b[1] - a[1] * b[0]; }

inline std::string to_string(Point2 p) { return "(" + std::to_string(p[0]) + "," + std::to_string(p[1]) + ")"; }

namespace detail {

inline long floor_div(long a, long b)
{
    long q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

inline long ceil_div(long a, long b) { return -floor_div(-a, b); }

// x, y with a x + b y = gcd(a, b) >= 0
inline long ext_gcd(long a, long b, long& x, long& y)
{
    if (b == 0) {
        x = a >= 0 ? 1 : -1;
        y = 0;
        return a >= 0 ? a : -a;
    }
    long x1, y1;
    long g = ext_gcd(b, a % b, x1, y1);
    x = y1;
    y = x1 - (a / b) * y1;
    return g;
}

inline Point2 primitive(Point2 v)
{
    long g = std::gcd(v[0], v[1]);
    return {v[0] / g, v[1] / g};
}

// Rank-2 sublattice of Z^2 in Hermite form: basis (s, c), (h, 0).
class Lattice2 {
public:
    Lattice2() = default;
    explicit Lattice2(const std::vector<Point2>& gens)
    {
        std::vector<Point2> vs(gens);
        // collect the gcd of the y-components in one vector
        Point2 top{0, 0};
        const std::size_t n0 = vs.size();
        for (std::size_t i = 0; i < n0; ++i) {
            Point2 v = vs[i];
            if (v[1] == 0) continue;
            if (top[1] == 0) {
                top = v;
                continue;
            }
            long x, y;
            long g = ext_gcd(top[1], v[1], x, y);
            Point2 next = scale(x, top) + scale(y, v);
            // the other combination has y = 0 and goes to the bottom row
            Point2 rest = scale(v[1] / g, top) - scale(top[1] / g, v);
            top = next;
            vs.push_back(rest);
        }
        if (top[1] < 0) top = scale(-1, top);
        long h = 0;
        for (auto v : vs) {
            if (v[1] != 0) {
                Point2 r = v - scale(v[1] / top[1], top);
                h = std::gcd(h, r[0]);
            } else {
                h = std::gcd(h, v[0]);
            }
        }
        if (top[1] == 0 || h == 0) fail(ErrorKind::InvalidArgument, "generators do not span a rank-2 lattice");
        c_ = top[1];
        h_ = h;
        s_ = ((top[0] % h) + h) % h;
    }

    bool contains(Point2 u) const
    {
        if (u[1] % c_ != 0) return false;
        long k = u[1] / c_;
        return (u[0] - k * s_) % h_ == 0;
    }

    long index() const { return c_ * h_; }
    bool operator==(const Lattice2& o) const { return c_ == o.c_ && h_ == o.h_ && s_ == o.s_; }

private:
    long c_ = 1, h_ = 1, s_ = 0;
};

} // namespace detail

class AffineSemigroup2 {
public:
    explicit AffineSemigroup2(std::vector<Point2> gens, std::string label = {}) : label_(std::move(label))
    {
        if (gens.empty()) fail(ErrorKind::InvalidArgument, "no generators");
        for (auto g : gens)
            if (g[0] == 0 && g[1] == 0) fail(ErrorKind::InvalidArgument, "generator (0,0)");
        std::sort(gens.begin(), gens.end());
        gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
        gens_ = std::move(gens);
        lattice_ = detail::Lattice2(gens_);
        find_rays();
        for (int j = 0; j < 2; ++j) setup_ray(j);
    }

    const std::vector<Point2>& generators() const { return gens_; }
    const std::string& label() const { return label_; }
    const detail::Lattice2& lattice() const { return lattice_; }
    bool in_group(Point2 u) const { return lattice_.contains(u); }

    /// Primitive direction of ray j, oriented so that lambda_j >= 0 on the cone.
    Point2 ray_direction(int j) const { return dir_[j]; }
    /// The generator on ray j closest to the origin.
    Point2 ray_generator(int j) const { return ray_gen_[j]; }

    /// lambda_0(u) = cross(d_0, u), lambda_1(u) = cross(u, d_1).
    long lambda(int j, Point2 u) const { return j == 0 ? cross(dir_[0], u) : cross(u, dir_[1]); }
    bool in_cone(Point2 u) const { return lambda(0, u) >= 0 && lambda(1, u) >= 0; }

    bool contains(Point2 u) const
    {
        if (u[0] == 0 && u[1] == 0) return true;
        if (!in_cone(u) || !in_group(u)) return false;
        auto it = memo_.find(u);
        if (it != memo_.end()) return it->second;
        bool r = false;
        for (auto g : gens_)
            if (contains(u - g)) {
                r = true;
                break;
            }
        memo_[u] = r;
        return r;
    }

    /// u in S + Z v_j, where v_j is the ray generator.
    bool in_localization(int j, Point2 u) const
    {
        long beta = lambda(j, u);
        if (beta < 0 || !in_group(u)) return false;
        const auto& lev = level(j, beta);
        long a = alpha(j, u);
        return lev[static_cast<std::size_t>(((a % mod_[j]) + mod_[j]) % mod_[j])] != 0;
    }

    /// Smallest kappa with S + Z v_j containing every group point at levels >= kappa.
    long kappa(int j) const
    {
        if (kappa_[j]) return *kappa_[j];
        const long step = lambda(j, step_gen_[j]);
        long run = 0, t = 0;
        for (; t < 100000; ++t) {
            if (level_full(j, t))
                ++run;
            else
                run = 0;
            if (run == step) break;
        }
        if (run != step) fail(ErrorKind::TooLarge, "localization does not stabilise");
        kappa_[j] = t - step + 1;
        return *kappa_[j];
    }

    bool operator==(const AffineSemigroup2& o) const
    {
        for (auto g : gens_)
            if (!o.contains(g)) return false;
        for (auto g : o.gens_)
            if (!contains(g)) return false;
        return true;
    }

private:
    void find_rays()
    {
        std::optional<Point2> r0, r1;
        for (auto a : gens_) {
            bool first = true, last = true;
            for (auto g : gens_) {
                if (cross(a, g) < 0) first = false;
                if (cross(g, a) < 0) last = false;
                // opposite directions rule out a pointed cone
                if (cross(a, g) == 0 && a[0] * g[0] + a[1] * g[1] < 0) first = last = false;
            }
            if (first && (!r0 || a[0] * a[0] + a[1] * a[1] < (*r0)[0] * (*r0)[0] + (*r0)[1] * (*r0)[1])) r0 = a;
            if (last && (!r1 || a[0] * a[0] + a[1] * a[1] < (*r1)[0] * (*r1)[0] + (*r1)[1] * (*r1)[1])) r1 = a;
        }
        if (!r0 || !r1 || cross(*r0, *r1) <= 0)
            fail(ErrorKind::InvalidArgument, "generators do not span a pointed 2-dimensional cone");
        ray_gen_ = {*r0, *r1};
        dir_ = {detail::primitive(*r0), detail::primitive(*r1)};
    }

    long alpha(int j, Point2 u) const
    {
        long beta = lambda(j, u);
        Point2 r = u - scale(beta, e_[j]);
        return dir_[j][0] != 0 ? r[0] / dir_[j][0] : r[1] / dir_[j][1];
    }

    void setup_ray(int j)
    {
        // e_j with lambda_j(e_j) = 1
        long x, y;
        const Point2 d = dir_[j];
        detail::ext_gcd(d[0], d[1], x, y);
        // cross(d, (-y, x)) = d0 x + d1 y = 1
        e_[j] = j == 0 ? Point2{-y, x} : Point2{y, -x};
        long m = 0;
        for (auto g : gens_)
            if (lambda(j, g) == 0)
                m = std::gcd(m, alpha(j, g));
            else
                nonray_[j].push_back(g);
        mod_[j] = m;
        step_gen_[j] = *std::min_element(nonray_[j].begin(), nonray_[j].end(),
                                         [&](Point2 a, Point2 b) { return lambda(j, a) < lambda(j, b); });
        levels_[j].push_back(std::vector<char>(static_cast<std::size_t>(m), 0));
        levels_[j][0][0] = 1;
    }

    const std::vector<char>& level(int j, long beta) const
    {
        auto& lv = levels_[j];
        const long m = mod_[j];
        while (static_cast<long>(lv.size()) <= beta) {
            long t = static_cast<long>(lv.size());
            std::vector<char> cur(static_cast<std::size_t>(m), 0);
            for (auto g : nonray_[j]) {
                long b = lambda(j, g);
                if (b > t) continue;
                long a = ((alpha(j, g) % m) + m) % m;
                const auto& prev = lv[static_cast<std::size_t>(t - b)];
                for (long c = 0; c < m; ++c)
                    if (prev[static_cast<std::size_t>(c)]) cur[static_cast<std::size_t>((c + a) % m)] = 1;
            }
            lv.push_back(std::move(cur));
        }
        return lv[static_cast<std::size_t>(beta)];
    }

    bool level_full(int j, long t) const
    {
        const auto& lev = level(j, t);
        for (long c = 0; c < mod_[j]; ++c) {
            Point2 u = scale(c, dir_[j]) + scale(t, e_[j]);
            if (in_group(u) && !lev[static_cast<std::size_t>(c)]) return false;
        }
        return true;
    }

    std::vector<Point2> gens_;
    std::string label_;
    detail::Lattice2 lattice_;
    std::array<Point2, 2> ray_gen_{}, dir_{}, e_{}, step_gen_{};
    std::array<long, 2> mod_{1, 1};
    std::array<std::vector<Point2>, 2> nonray_;
    mutable std::array<std::vector<std::vector<char>>, 2> levels_;
    mutable std::array<std::optional<long>, 2> kappa_;
    mutable std::map<Point2, bool> memo_;
};

/// Monomial module: union of w + S over the generators w, all in one coset
/// of the group of S.
class MonomialModule2 {
public:
    MonomialModule2(const AffineSemigroup2& s, std::vector<Point2> gens) : s_(s)
    {
        if (gens.empty()) fail(ErrorKind::InvalidArgument, "module needs a generator");
        for (auto g : gens)
            if (!s.in_group(g - gens[0])) fail(ErrorKind::InvalidArgument, "generators in different cosets");
        std::sort(gens.begin(), gens.end());
        gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
        // keep the minimal ones
        for (auto g : gens) {
            bool redundant = false;
            for (auto h : gens)
                if (h != g && s.contains(g - h)) redundant = true;
            if (!redundant) gens_.push_back(g);
        }
    }

    const AffineSemigroup2& semigroup() const { return s_; }
    const std::vector<Point2>& generators() const { return gens_; }

    bool contains(Point2 u) const
    {
        for (auto g : gens_)
            if (s_.contains(u - g)) return true;
        return false;
    }

    bool in_localization(int j, Point2 u) const
    {
        for (auto g : gens_)
            if (s_.in_localization(j, u - g)) return true;
        return false;
    }

    /// Same semigroup (structurally) and same generators.
    bool operator==(const MonomialModule2& o) const { return s_ == o.s_ && gens_ == o.gens_; }

    std::string to_string() const
    {
        std::string out = "<";
        for (std::size_t i = 0; i < gens_.size(); ++i) out += (i ? ", " : "") + curvedual::to_string(gens_[i]);
        return out + ">";
    }

private:
    AffineSemigroup2 s_;
    std::vector<Point2> gens_;
};

namespace detail {

// Integer points u with lo_j <= lambda_j(u) <= hi_j.
inline std::vector<Point2> points_in_box(const AffineSemigroup2& s, std::array<long, 2> lo, std::array<long, 2> hi)
{
    // u = (b0 * d1 + b1 * d0) / cross(d0, d1) with b_j = lambda_j(u)
    const Point2 d0 = s.ray_direction(0), d1 = s.ray_direction(1);
    const long det = cross(d0, d1);
    long xmin = 0, xmax = 0, ymin = 0, ymax = 0;
    bool first = true;
    for (long b0 : {lo[0], hi[0]})
        for (long b1 : {lo[1], hi[1]}) {
            long nx = b0 * d1[0] + b1 * d0[0], ny = b0 * d1[1] + b1 * d0[1];
            long x0 = floor_div(nx, det), x1 = ceil_div(nx, det), y0 = floor_div(ny, det), y1 = ceil_div(ny, det);
            if (first) {
                xmin = x0, xmax = x1, ymin = y0, ymax = y1;
                first = false;
            } else {
                xmin = std::min(xmin, x0), xmax = std::max(xmax, x1);
                ymin = std::min(ymin, y0), ymax = std::max(ymax, y1);
            }
        }
    std::vector<Point2> out;
    for (long x = xmin; x <= xmax; ++x)
        for (long y = ymin; y <= ymax; ++y) {
            Point2 u{x, y};
            bool in = true;
            for (int j = 0; j < 2; ++j) {
                long l = s.lambda(j, u);
                if (l < lo[j] || l > hi[j]) in = false;
            }
            if (in) out.push_back(u);
        }
    return out;
}

} // namespace detail

/// Hilbert basis of cone ∩ group.
inline AffineSemigroup2 saturation(const AffineSemigroup2& s)
{
    std::array<Point2, 2> prim;
    for (int j = 0; j < 2; ++j) {
        Point2 d = s.ray_direction(j);
        long c = 1;
        while (!s.in_group(scale(c, d))) ++c;
        prim[j] = scale(c, d);
    }
    // closed parallelogram spanned by the primitive group vectors on the rays
    std::array<long, 2> hi{s.lambda(0, prim[1]), s.lambda(1, prim[0])};
    std::vector<Point2> cand;
    for (auto u : detail::points_in_box(s, {0, 0}, hi))
        if (s.in_group(u) && !(u[0] == 0 && u[1] == 0)) cand.push_back(u);
    std::set<Point2> cs(cand.begin(), cand.end());
    std::vector<Point2> basis;
    for (auto u : cand) {
        bool reducible = false;
        for (auto w : cand)
            if (w != u && cs.count(u - w)) {
                reducible = true;
                break;
            }
        if (!reducible) basis.push_back(u);
    }
    return AffineSemigroup2(basis, s.label().empty() ? "" : "sat(" + s.label() + ")");
}

inline bool is_saturated(const AffineSemigroup2& s)
{
    const auto sat = saturation(s);
    for (auto g : sat.generators())
        if (!s.contains(g)) return false;
    return true;
}

/// The S2 hull: sections over the punctured spectrum, here the intersection
/// of the localizations at the two rays.
inline MonomialModule2 s2_hull(const MonomialModule2& m)
{
    const auto& s = m.semigroup();
    std::array<long, 2> lo, hi;
    for (int j = 0; j < 2; ++j) {
        long mn = s.lambda(j, m.generators()[0]), mx = mn;
        for (auto g : m.generators()) {
            mn = std::min(mn, s.lambda(j, g));
            mx = std::max(mx, s.lambda(j, g));
        }
        lo[j] = mn;
        // past kappa_j + max lambda_j(w) the localization holds every coset point
        hi[j] = s.kappa(j) + mx + s.lambda(j, s.ray_generator(1 - j));
    }
    auto in_hull = [&](Point2 u) { return m.in_localization(0, u) && m.in_localization(1, u); };
    std::vector<Point2> gens;
    for (auto u : detail::points_in_box(s, lo, hi)) {
        if (!in_hull(u)) continue;
        bool minimal = true;
        for (auto g : s.generators())
            if (in_hull(u - g)) {
                minimal = false;
                break;
            }
        if (minimal) gens.push_back(u);
    }
    return MonomialModule2(s, gens);
}

/// Interior lattice points of the cone; needs a saturated semigroup.
inline MonomialModule2 canonical_module_toric(const AffineSemigroup2& s)
{
    if (!is_saturated(s)) fail(ErrorKind::NotSaturated, "canonical module needs a saturated semigroup");
    std::array<long, 2> hi{s.lambda(0, s.ray_generator(1)), s.lambda(1, s.ray_generator(0))};
    auto interior = [&](Point2 u) { return s.in_group(u) && s.lambda(0, u) > 0 && s.lambda(1, u) > 0; };
    std::vector<Point2> gens;
    for (auto u : detail::points_in_box(s, {1, 1}, hi)) {
        if (!interior(u)) continue;
        bool minimal = true;
        for (auto g : s.generators())
            if (interior(u - g)) minimal = false;
        if (minimal) gens.push_back(u);
    }
    return MonomialModule2(s, gens);
}

/// A translation u with M + u = N over the same semigroup.
inline std::optional<Point2> monomial_iso(const MonomialModule2& m, const MonomialModule2& n)
{
    if (!(m.semigroup() == n.semigroup())) return std::nullopt;
    const auto& a = m.generators();
    const auto& b = n.generators();
    if (a.size() != b.size()) return std::nullopt;
    // both lists are sorted, so a translation maps a[0] to b[0]
    Point2 u = b[0] - a[0];
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] + u != b[i]) return std::nullopt;
    return u;
}

/// The two models: exponents with a + b >= 2, and with 3 | a + b.
inline AffineSemigroup2 model_plus2()
{
    return AffineSemigroup2({{2, 0}, {1, 1}, {0, 2}, {3, 0}, {2, 1}, {1, 2}, {0, 3}}, "a+b>=2");
}

inline AffineSemigroup2 model_div3() { return AffineSemigroup2({{3, 0}, {2, 1}, {1, 2}, {0, 3}}, "3|a+b"); }

} // namespace curvedual
