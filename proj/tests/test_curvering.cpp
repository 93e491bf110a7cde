#include <catch2/catch_amalgamated.hpp>

#include <numeric>

#include "curvedual/checks.hpp"
#include "curvedual/curvering.hpp"

using namespace curvedual;

namespace {

// conductor and gap count of a numerical semigroup, by a plain sieve
std::pair<int, int> sieve(const std::vector<int>& g)
{
    const int n = 400;
    std::vector<char> in(n, 0);
    in[0] = 1;
    for (int i = 1; i < n; ++i)
        for (int a : g)
            if (i >= a && in[i - a]) in[i] = 1;
    int last_gap = -1, gaps = 0;
    for (int i = 0; i < n; ++i)
        if (!in[i]) {
            last_gap = i;
            ++gaps;
        }
    return {last_gap + 1, gaps};
}

} // namespace

TEST_CASE("named curves", "[curvering]")
{
    Rationals q;
    auto cusp = semigroup_ring(q, {2, 3});
    CHECK(cusp.conductor_exponents() == std::vector<int>{2});
    CHECK(cusp.conductor().len_D == 1);
    CHECK(cusp.conductor().delta == 1);
    CHECK(cusp.is_gorenstein().gorenstein);
    CHECK_FALSE(cusp.is_seminormal());

    auto node = curve_from_text(q, 2, {"(t,0)", "(0,t)"});
    CHECK(node.conductor_exponents() == std::vector<int>{1, 1});
    CHECK(node.conductor().delta == 1);
    CHECK(node.is_seminormal());
    CHECK(node.is_gorenstein().gorenstein);

    auto tac = curve_from_text(q, 2, {"(t,t)", "(t^2,0)"});
    CHECK(tac.conductor_exponents() == std::vector<int>{2, 2});
    CHECK(tac.conductor().delta == 2);
    CHECK(tac.is_gorenstein().gorenstein);

    auto lines = curve_from_text(q, 3, {"(t,0,t)", "(0,t,t)"});
    CHECK(lines.conductor_exponents() == std::vector<int>{2, 2, 2});
    CHECK(lines.conductor().delta == 3);
    CHECK(lines.is_gorenstein().gorenstein);

    auto axes = curve_from_text(q, 3, {"(t,0,0)", "(0,t,0)", "(0,0,t)"});
    CHECK(axes.conductor_exponents() == std::vector<int>{1, 1, 1});
    CHECK_FALSE(axes.is_gorenstein().gorenstein);

    auto r345 = semigroup_ring(q, {3, 4, 5});
    CHECK(r345.conductor_exponents() == std::vector<int>{3});
    CHECK(r345.conductor().delta == 2);
    CHECK_FALSE(r345.is_gorenstein().gorenstein);

    auto smooth = curve_from_text(q, 1, {"t"});
    CHECK(smooth.conductor_exponents() == std::vector<int>{0});
    CHECK(smooth.conductor().delta == 0);
}

TEST_CASE("semigroup rings against a sieve", "[curvering][property]")
{
    Rationals q;
    FiniteField f5(5);
    for (const auto& g : semigroup_family(12)) {
        auto [c, gaps] = sieve(g);
        auto r = semigroup_ring(q, g);
        INFO("semigroup " << g[0] << "," << g[1]);
        CHECK(r.conductor_exponent(0) == c);
        CHECK(r.conductor().delta == gaps);
        auto inv = semigroup_oracle(g);
        CHECK(inv.conductor == c);
        CHECK(inv.delta == gaps);
        // symmetric iff c = 2 delta
        CHECK(inv.symmetric == (c == 2 * gaps));
        CHECK(r.is_gorenstein().gorenstein == inv.symmetric);
        if (g.back() <= 8) CHECK(semigroup_ring(f5, g).conductor_exponent(0) == c);
    }
}

TEST_CASE("membership", "[curvering]")
{
    Rationals q;
    auto r345 = semigroup_ring(q, {3, 4, 5});
    using E = BranchElement<Rationals>;
    CHECK(r345.contains(E::parse(q, "t^3 + t^4")));
    CHECK(r345.contains(E::parse(q, "1 + t^7")));
    CHECK_FALSE(r345.contains(E::parse(q, "t^2")));
    CHECK_FALSE(r345.contains(E::parse(q, "t")));
    CHECK_FALSE(r345.contains(E::parse(q, "t^-1")));
    CHECK_FALSE(r345.contains(E::parse(q, "t^3 dt")));
    CHECK_THROWS_AS(r345.contains(E::parse(q, "(t, t)")), Error);
    auto node = curve_from_text(q, 2, {"(t,0)", "(0,t)"});
    CHECK(node.contains(E::parse(q, "(1, 1)")));
    CHECK_FALSE(node.contains(E::parse(q, "(1, 0)")));
}

TEST_CASE("build errors", "[curvering]")
{
    Rationals q;
    auto kind = [](auto&& fn) {
        try {
            fn();
        } catch (const Error& e) {
            return e.kind();
        }
        return ErrorKind::ParseError;
    };
    CHECK(kind([&] { curve_from_text(q, 2, {"(t,t)"}); }) == ErrorKind::NotFiniteColength);
    CHECK(kind([&] { curve_from_text(q, 2, {"(t,0)"}); }) == ErrorKind::NotFiniteColength);
    CHECK(kind([&] { curve_from_text(q, 1, {"1 + t"}); }) == ErrorKind::InvalidArgument);
    CHECK(kind([&] { semigroup_ring(q, {4, 6}); }) == ErrorKind::NotCoprime);
    CHECK(kind([&] { semigroup_ring(q, {0, 3}); }) == ErrorKind::InvalidArgument);
}

TEST_CASE("seminormalization", "[curvering]")
{
    Rationals q;
    auto cusp = semigroup_ring(q, {2, 3});
    auto sn = cusp.seminormalization();
    CHECK(sn.is_seminormal());
    CHECK(sn.seminormalization() == sn);
    CHECK_FALSE(cusp.seminormalization() == cusp);
    auto node = curve_from_text(q, 2, {"(t,0)", "(0,t)"});
    CHECK(node.seminormalization() == node);
    for (auto& r : builtin_family(q, 8)) CHECK(r.is_seminormal() == (r.seminormalization() == r));
}

TEST_CASE("base change", "[curvering]")
{
    FiniteField f2(2);
    auto node = curve_from_text(f2, 2, {"(t,0)", "(0,t)"});
    auto up = base_change(node, 2);
    CHECK(up.field().cardinality() == 4);
    CHECK(up.conductor_exponents() == node.conductor_exponents());
    CHECK(base_change(node, 1) == node);
    Rationals q;
    CHECK_THROWS_AS(base_change(semigroup_ring(q, {2, 3}), 2), Error);
}
