#include <catch2/catch_amalgamated.hpp>

#include "curvedual/checks.hpp"
#include "curvedual/fracideal.hpp"

using namespace curvedual;
using QI = FracIdeal<Rationals>;
using QE = BranchElement<Rationals>;

TEST_CASE("canonical form on the cusp", "[fracideal]")
{
    Rationals q;
    auto cusp = semigroup_ring(q, {2, 3});
    auto o = QI::unit(cusp);
    auto ob = QI::normalization(cusp);
    auto c = QI::conductor(cusp);
    CHECK(len_quotient(o, ob) == 1);
    CHECK(len_quotient(c, o) == 1);
    CHECK(o.colon(ob) == c);
    CHECK(o.colon(o) == o);
    CHECK(ob.colon(o) == ob);
    CHECK(o.to_string() == "<1>");
    // the same module from different generators
    auto a = QI::from_generators(cusp, {QE::parse(q, "t^2"), QE::parse(q, "t^3")});
    auto b = QI::from_generators(cusp, {QE::parse(q, "t^2 + t^3"), QE::parse(q, "t^3 - t^4")});
    CHECK(a == b);
    CHECK(a == c);
    CHECK(a.pole() == std::vector<int>{2});
    CHECK(a.tail() == std::vector<int>{2});
}

TEST_CASE("index and lengths", "[fracideal]")
{
    Rationals q;
    auto r = semigroup_ring(q, {3, 4, 5});
    auto o = QI::unit(r);
    auto t = QE::parse(q, "t^3");
    CHECK(len_quotient(o.multiply(t), o) == 3);
    auto h = herbrand(o, t);
    CHECK(h.quotient_length == 3);
    CHECK(h.order_sum == 3);
    CHECK_THROWS_AS(len_quotient(o, o.multiply(t)), Error);
    CHECK_THROWS_AS(herbrand(o, QE::parse(q, "t")), Error);
    auto node = curve_from_text(q, 2, {"(t,0)", "(0,t)"});
    CHECK_THROWS_AS(herbrand(QI::unit(node), QE::parse(q, "(t, 0)")), Error);
}

TEST_CASE("principal and minimal generators", "[fracideal]")
{
    Rationals q;
    auto r = semigroup_ring(q, {3, 4, 5});
    auto m = QI::unit(r).maximal_ideal_times();
    CHECK(m.minimal_generators().size() == 3);
    CHECK_FALSE(m.is_principal());
    CHECK(QI::unit(r).is_principal());
    auto p = QI::from_generators(r, {QE::parse(q, "t^-2 + t")});
    REQUIRE(p.is_principal());
    CHECK(QI::from_generators(r, {*p.is_principal()}) == p);
}

TEST_CASE("mixed flags", "[fracideal]")
{
    Rationals q;
    auto r = semigroup_ring(q, {2, 3});
    CHECK_THROWS_AS(QI::from_generators(r, {QE::parse(q, "t"), QE::parse(q, "t dt")}), Error);
    auto w = QI::from_generators(r, {QE::parse(q, "t^-2 dt")});
    auto o = QI::unit(r);
    try {
        (void)o.colon(w);
        FAIL("expected DifferentialDegreeError");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::DifferentialDegreeError);
    }
    CHECK_FALSE(w.colon(w).is_differential());
    CHECK(w.colon(o).is_differential());
    auto node = curve_from_text(q, 2, {"(t,0)", "(0,t)"});
    CHECK_THROWS_AS(QI::from_generators(node, {QE::parse(q, "(t, 0)")}), Error);
}

TEST_CASE("ideal arithmetic laws", "[fracideal][property]")
{
    Rationals q;
    FiniteField f5(5);
    auto run = [](const auto& ring, std::uint64_t seed) {
        using F = std::decay_t<decltype(ring.field())>;
        using I = FracIdeal<F>;
        auto m = random_ideal(ring, seed, {2, 2});
        auto n = random_ideal(ring, seed + 1000, {2, 1});
        auto s = m.sum(n);
        auto i = m.intersect(n);
        CHECK(s.contains(m));
        CHECK(s.contains(n));
        CHECK(m.contains(i));
        CHECK(n.contains(i));
        // length is additive along M cap N in M in M + N
        CHECK(len_quotient(i, m) + len_quotient(m, s) == len_quotient(i, n) + len_quotient(n, s));
        auto p = m.product(n);
        CHECK(p == n.product(m));
        // (P:N) is the largest module whose product with N lies in P
        auto c = p.colon(n);
        CHECK(c.contains(m));
        CHECK(p.contains(c.product(n)));
        CHECK(m.colon(m).contains(I::unit(ring)));
        CHECK(I::from_generators(ring, m.minimal_generators()) == m);
        for (const auto& b : m.basis()) CHECK(m.contains(b));
    };
    std::uint64_t seed = 1;
    for (auto& r : builtin_family(q, 7)) run(r, seed++);
    for (auto& r : named_curves(f5)) run(r, seed++);
}

TEST_CASE("random ideal parameters", "[fracideal]")
{
    Rationals q;
    auto r = semigroup_ring(q, {3, 5});
    CHECK(random_ideal(r, 9, {0, 0}) == QI::unit(r));
    CHECK(random_ideal(r, 9, {2, 2}) == random_ideal(r, 9, {2, 2}));
    auto node = curve_from_text(q, 2, {"(t,0)", "(0,t)"});
    auto other = curve_from_text(q, 2, {"(t,t)", "(t^2,0)"});
    CHECK_THROWS_AS(QI::unit(node).sum(QI::unit(other)), Error);
}
