#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <random>

#include "curvedual/laurent.hpp"

using namespace curvedual;
using QE = BranchElement<Rationals>;

namespace {

// dense products per branch
std::map<int, mpq_class> dense(const QE& a, std::size_t b)
{
    std::map<int, mpq_class> m;
    for (const auto& t : a.terms(b)) m[t.exponent] += t.coeff;
    return m;
}

QE random_element(const Rationals& q, std::mt19937_64& rng, std::size_t r, bool diff = false)
{
    std::vector<std::vector<QE::Term>> raw(r);
    for (auto& br : raw) {
        int n = static_cast<int>(rng() % 4);
        for (int i = 0; i < n; ++i)
            br.push_back({static_cast<int>(rng() % 11) - 5, mpq_class(static_cast<long>(rng() % 9) - 4,
                                                                      static_cast<unsigned long>(rng() % 3 + 1))});
    }
    return QE::from_terms(q, std::move(raw), diff);
}

} // namespace

TEST_CASE("parse and print", "[laurent]")
{
    Rationals q;
    auto a = QE::parse(q, "(t^2 + t^5, 0)");
    CHECK(a.branches() == 2);
    CHECK(a.to_string() == "(t^2 + t^5, 0)");
    CHECK(*a.valuation(0) == 2);
    CHECK(!a.valuation(1).has_value());
    CHECK(!a.nonzero_on_every_branch());

    auto w = QE::parse(q, "3/2*t^-1 dt");
    CHECK(w.is_differential());
    CHECK(w.residue(0) == mpq_class(3, 2));
    CHECK(w.to_string() == "3/2*t^-1 dt");

    CHECK(QE::parse(q, "t - t").is_zero());
    CHECK(QE::parse(q, "0").is_zero());
}

TEST_CASE("parse errors carry a column", "[laurent]")
{
    Rationals q;
    CHECK_THROWS_AS(QE::parse(q, "t^"), Error);
    CHECK_THROWS_WITH(QE::parse(q, "(t, t"), Catch::Matchers::ContainsSubstring("column"));
    CHECK_THROWS_AS(QE::parse(q, "(t, t)", 3), Error);
    try {
        QE::parse(q, "t + @");
        FAIL("expected a parse error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::ParseError);
    }
}

TEST_CASE("finite field coefficients", "[laurent]")
{
    FiniteField f5(5);
    auto a = BranchElement<FiniteField>::parse(f5, "3*t + 4*t^2");
    auto b = BranchElement<FiniteField>::parse(f5, "2*t");
    CHECK((a + b).to_string() == "4*t^2");
    CHECK(*(a * a).valuation(0) == 2);
    CHECK((a * a).coefficient(0, 2) == f5.from_int(9));
}

TEST_CASE("round trip and ring laws on random elements", "[laurent][property]")
{
    Rationals q;
    std::mt19937_64 rng(17);
    for (int n = 0; n < 300; ++n) {
        std::size_t r = 1 + rng() % 3;
        auto a = random_element(q, rng, r), b = random_element(q, rng, r), c = random_element(q, rng, r);
        CHECK(QE::parse(q, a.to_string(), r) == a);
        CHECK(a + b == b + a);
        CHECK(a * b == b * a);
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK((a - a).is_zero());
        // product against a dense oracle
        auto p = a * b;
        for (std::size_t br = 0; br < r; ++br) {
            std::map<int, mpq_class> want;
            for (auto [e1, c1] : dense(a, br))
                for (auto [e2, c2] : dense(b, br)) want[e1 + e2] += c1 * c2;
            for (auto it = want.begin(); it != want.end();)
                it = it->second == 0 ? want.erase(it) : std::next(it);
            CHECK(dense(p, br) == want);
        }
        if (a.nonzero_on_every_branch() && b.nonzero_on_every_branch())
            for (std::size_t br = 0; br < r; ++br) CHECK(*p.valuation(br) == *a.valuation(br) + *b.valuation(br));
    }
}

TEST_CASE("differential degree", "[laurent]")
{
    Rationals q;
    auto f = QE::parse(q, "t");
    auto w = QE::parse(q, "t^-2 dt");
    CHECK((f * w).is_differential());
    CHECK_THROWS_AS(w * w, Error);
    CHECK_THROWS_AS(f + w, Error);
}

TEST_CASE("branch count mismatch", "[laurent]")
{
    Rationals q;
    auto a = QE::parse(q, "(t, 0)");
    auto b = QE::parse(q, "t");
    try {
        (void)(a + b);
        FAIL("expected a mismatch");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::BranchMismatch);
    }
}
