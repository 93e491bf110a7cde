#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "curvedual/toric2.hpp"

using namespace curvedual;

namespace {

// brute force over a window, for semigroups inside the first quadrant
struct Window {
    static constexpr long N = 64;
    std::vector<char> in;

    explicit Window(const std::vector<Point2>& gens) : in(N * N, 0)
    {
        in[0] = 1;
        for (long a = 0; a < N; ++a)
            for (long b = 0; b < N; ++b) {
                if (a == 0 && b == 0) continue;
                for (auto g : gens)
                    if (a >= g[0] && b >= g[1] && in[(a - g[0]) * N + (b - g[1])]) {
                        in[a * N + b] = 1;
                        break;
                    }
            }
    }
    bool has(Point2 u) const { return u[0] >= 0 && u[1] >= 0 && u[0] < N && u[1] < N && in[u[0] * N + u[1]]; }

    // difference of two window elements
    bool in_group(Point2 u) const
    {
        for (long a = 0; a < N / 2; ++a)
            for (long b = 0; b < N / 2; ++b)
                if (has({a, b}) && has(u + Point2{a, b})) return true;
        return false;
    }
    Point2 axis(int j) const
    {
        for (long c = 1; c < N; ++c) {
            Point2 p = j == 0 ? Point2{c, 0} : Point2{0, c};
            if (has(p)) return p;
        }
        return {0, 0};
    }
};

struct ModuleWindow {
    const Window& s;
    std::vector<Point2> gens;
    bool has(Point2 u) const
    {
        for (auto g : gens)
            if (s.has(u - g)) return true;
        return false;
    }
    // sections off the origin: membership after inverting each axis monomial
    bool in_hull(Point2 u) const
    {
        for (int j = 0; j < 2; ++j) {
            bool hit = false;
            for (long c = 0; c < 20 && !hit; ++c) hit = has(u + scale(c, s.axis(j)));
            if (!hit) return false;
        }
        return true;
    }
};

AffineSemigroup2 random_quadrant_semigroup(std::mt19937_64& rng)
{
    std::vector<Point2> g{{static_cast<long>(1 + rng() % 4), 0}, {0, static_cast<long>(1 + rng() % 4)}};
    int extra = static_cast<int>(rng() % 3);
    for (int i = 0; i < extra; ++i) {
        Point2 p{static_cast<long>(1 + rng() % 4), static_cast<long>(1 + rng() % 4)};
        g.push_back(p);
    }
    return AffineSemigroup2(g);
}

} // namespace

TEST_CASE("the two models", "[toric2]")
{
    auto plus2 = model_plus2();
    auto div3 = model_div3();
    CHECK_FALSE(is_saturated(plus2));
    CHECK(is_saturated(div3));
    const auto sp = saturation(plus2);
    CHECK(sp.generators() == std::vector<Point2>{{0, 1}, {1, 0}});
    const auto sd = saturation(div3);
    CHECK(sd == div3);
    CHECK(plus2.lattice().index() == 1);
    CHECK(div3.lattice().index() == 3);
    CHECK(div3.ray_generator(0) == Point2{3, 0});
    CHECK(div3.ray_generator(1) == Point2{0, 3});
}

TEST_CASE("hull of the pinched plane", "[toric2]")
{
    auto s = model_plus2();
    MonomialModule2 o(s, {{0, 0}});
    auto h = s2_hull(o);
    CHECK(h.to_string() == "<(0,0), (0,1), (1,0)>");
    CHECK_FALSE(h == o);
    CHECK(s2_hull(h) == h);
    Window w(s.generators());
    ModuleWindow mw{w, {{0, 0}}};
    for (long a = -3; a <= 20; ++a)
        for (long b = -3; b <= 20; ++b) {
            Point2 u{a, b};
            INFO(to_string(u));
            CHECK(o.contains(u) == mw.has(u));
            CHECK(h.contains(u) == mw.in_hull(u));
            CHECK(h.contains(u) == (a >= 0 && b >= 0));
        }
}

TEST_CASE("canonical module of the 3 | a+b model", "[toric2]")
{
    auto s = model_div3();
    auto w = canonical_module_toric(s);
    CHECK(w.to_string() == "<(1,2), (2,1)>");
    // monomials with a + b = 1 mod 3, generated by x and y
    MonomialModule2 ref(s, {{1, 0}, {0, 1}});
    auto u = monomial_iso(ref, w);
    REQUIRE(u);
    CHECK(*u == Point2{1, 1});
    CHECK_FALSE(monomial_iso(MonomialModule2(s, {{0, 0}}), w));
    // normal surfaces are S2
    CHECK(s2_hull(w) == w);
    CHECK(s2_hull(MonomialModule2(s, {{0, 0}})) == MonomialModule2(s, {{0, 0}}));
    try {
        canonical_module_toric(model_plus2());
        FAIL("expected NotSaturated");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::NotSaturated);
    }
}

TEST_CASE("smooth quadrant", "[toric2]")
{
    AffineSemigroup2 n2({{1, 0}, {0, 1}});
    auto w = canonical_module_toric(n2);
    CHECK(w.generators() == std::vector<Point2>{{1, 1}});
    CHECK(monomial_iso(MonomialModule2(n2, {{0, 0}}), w));
}

TEST_CASE("hull against the group of the saturation", "[toric2]")
{
    // same group as its saturation, yet already S2
    AffineSemigroup2 s({{2, 0}, {1, 1}, {0, 1}});
    const auto sat = saturation(s);
    CHECK(sat.lattice() == s.lattice());
    MonomialModule2 o(s, {{0, 0}});
    auto h = s2_hull(o);
    CHECK(h == o);
    CHECK_FALSE(h.contains({1, 0}));
    CHECK(sat.contains({1, 0}));
}

TEST_CASE("window oracle on random quadrant semigroups", "[toric2][property]")
{
    std::mt19937_64 rng(2024);
    for (int n = 0; n < 25; ++n) {
        auto s = random_quadrant_semigroup(rng);
        Window w(s.generators());
        const auto sat = saturation(s);
        std::vector<Point2> mg{{0, 0}};
        if (rng() % 2) mg.push_back(s.ray_generator(0) - s.ray_generator(1) + Point2{0, 2 * s.ray_generator(1)[1]});
        MonomialModule2 m(s, mg);
        ModuleWindow mw{w, m.generators()};
        auto h = s2_hull(m);
        CHECK(s2_hull(h) == h);
        CHECK(saturation(sat) == sat);
        for (long a = -2; a <= 20; ++a)
            for (long b = -2; b <= 20; ++b) {
                Point2 u{a, b};
                INFO("gens " << s.generators().size() << " at " << to_string(u));
                CHECK(s.contains(u) == w.has(u));
                CHECK(s.in_group(u) == w.in_group(u));
                CHECK(sat.contains(u) == (a >= 0 && b >= 0 && w.in_group(u)));
                CHECK(m.contains(u) == mw.has(u));
                CHECK(h.contains(u) == mw.in_hull(u));
                // monotone: O inside M inside hull(M) inside hull of the saturation
                if (m.contains(u)) CHECK(h.contains(u));
                if (h.contains(u) && mg.size() == 1) CHECK(sat.contains(u));
            }
        if (is_saturated(s)) {
            auto om = canonical_module_toric(s);
            for (long a = 0; a <= 20; ++a)
                for (long b = 0; b <= 20; ++b)
                    CHECK(om.contains({a, b}) == (a > 0 && b > 0 && w.in_group({a, b})));
        }
    }
}

TEST_CASE("semigroup input checks", "[toric2]")
{
    CHECK_THROWS_AS(AffineSemigroup2({{1, 0}, {-1, 0}, {0, 1}}), Error);
    CHECK_THROWS_AS(AffineSemigroup2({{0, 0}}), Error);
    CHECK_THROWS_AS(MonomialModule2(model_div3(), {{0, 0}, {1, 0}}), Error);
}
