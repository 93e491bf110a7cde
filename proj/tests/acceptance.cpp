// One PASS/FAIL line per acceptance criterion, with timings against fixed budgets.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "curvedual/checks.hpp"
#include "curvedual/extlab.hpp"
#include "curvedual/toric2.hpp"

using namespace curvedual;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
    bool ok = true;
    std::string detail;
};

int failures = 0;

void run(int id, const char* name, double budget, const std::function<Outcome()>& body)
{
    auto start = Clock::now();
    Outcome o;
    try {
        o = body();
    } catch (const std::exception& e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(Clock::now() - start).count();
    bool in_time = budget <= 0 || secs < budget;
    bool pass = o.ok && in_time;
    if (!pass) ++failures;
    std::string limit = budget > 0 ? " / " + std::to_string(static_cast<int>(budget)) + " s" : "";
    std::printf("%s [%2d] %-28s %7.2f s%s  %s%s\n", pass ? "PASS" : "FAIL", id, name, secs, limit.c_str(),
                o.detail.c_str(), in_time ? "" : " (over budget)");
    std::fflush(stdout);
}

// a failed expectation keeps the first message
struct Tally {
    Outcome out;
    std::size_t count = 0;
    void expect(bool ok, const std::string& what)
    {
        ++count;
        if (!ok && out.ok) out = {false, what};
    }
};

Rationals Q;
FiniteField F5(5);

std::vector<CanonicalModule<Rationals>>& family()
{
    static std::vector<CanonicalModule<Rationals>> w;
    if (w.empty()) {
        for (auto& r : builtin_family(Q, 12)) w.push_back(canonical_module(r));
    }
    return w;
}

std::vector<CurveRing<Rationals>> small_family_q() { return builtin_family(Q, 8); }

} // namespace

int main()
{
    run(1, "Serre n = 2 delta", 10, [] {
        Tally t;
        for (const auto& w : family()) {
            const auto& r = w.ring();
            auto c = r.conductor();
            auto rep = serre_report(w);
            int sum_n = 0;
            for (int n : c.exponents) sum_n += n;
            bool eq = sum_n == 2 * c.len_D;
            t.expect(sum_n >= 2 * c.len_D, r.label() + ": sum n < 2 len D");
            t.expect(eq == rep.omega_principal, r.label() + ": equality vs principal omega");
            t.expect(eq == (rep.socle_dim_O == 1), r.label() + ": equality vs socle of O/xO");
            t.expect(rep.socle_dim_omega == 1, r.label() + ": socle of omega/x omega is not k");
        }
        t.out.detail = std::to_string(family().size()) + " rings" + (t.out.ok ? "" : ": " + t.out.detail);
        return t.out;
    });

    run(2, "example values", 5, [] {
        Tally t;
        auto r345 = semigroup_ring(Q, {3, 4, 5});
        t.expect(!r345.is_gorenstein().gorenstein, "k[t^3,t^4,t^5] reported Gorenstein");
        t.expect(!canonical_module(r345).module().is_principal(), "omega of k[t^3,t^4,t^5] principal");
        for (int m = 3; m <= 6; ++m) {
            std::vector<int> g;
            for (int i = m; i < 2 * m; ++i) g.push_back(i);
            auto w = canonical_module(semigroup_ring(Q, g));
            std::vector<BranchElement<Rationals>> want;
            for (int j = m; j >= 2; --j) want.push_back(BranchElement<Rationals>::monomial(Q, 1, 0, -j, Q.one(), true));
            want.push_back(BranchElement<Rationals>::monomial(Q, 1, 0, 0, Q.one(), true));
            auto ref = FracIdeal<Rationals>::from_generators(w.ring(), want);
            // up to a principal multiplier: both colons are principal and mutually inverse
            auto a = w.module().colon(ref), b = ref.colon(w.module());
            t.expect(a.is_principal() && b.is_principal() && a.product(b) == FracIdeal<Rationals>::unit(w.ring()),
                     "omega differs at m = " + std::to_string(m));
            ExtLabInstance lab(m, 2);
            t.expect(lab.module() == lab.formula_module(), "structure constants differ at m = " + std::to_string(m));
        }
        t.out.detail = std::to_string(t.count) + " values" + (t.out.ok ? "" : ": " + t.out.detail);
        return t.out;
    });

    run(3, "Ext lab", 60, [] {
        Tally t;
        std::string dims;
        for (auto [m, p] : std::vector<std::pair<int, std::uint64_t>>{{3, 2}, {3, 3}, {4, 2}}) {
            ExtLabInstance lab(m, p);
            auto c = residue_ext(lab, true, 12);
            dims += " (" + std::to_string(m) + "," + std::to_string(p) + "):" + std::to_string(c.by_resolution) + "/" +
                    std::to_string(c.by_cocycles) + " vs " + std::to_string(c.formula);
            t.expect(c.routes_agree, "routes disagree at m = " + std::to_string(m));
            t.expect(c.matches_formula, "Ext^1 = " + std::to_string(c.by_resolution) + " but m^2-m-1 = " +
                                            std::to_string(c.formula) + " at m = " + std::to_string(m));
        }
        for (std::uint64_t p : {2u, 3u}) {
            auto r = verify_self_extensions(ExtLabInstance(3, p));
            dims += "; self-ext p=" + std::to_string(p) + " " + std::to_string(r.isomorphic) + "/" +
                    std::to_string(r.qualifying);
            t.expect(r.holds(), "self-extension check fails at p = " + std::to_string(p));
        }
        auto w = find_non_quotient(ExtLabInstance(3, 2));
        t.expect(w.witness.has_value(), "no witness at (3,2)");
        dims += "; witness dim " + std::to_string(w.witness ? w.witness->dim() : 0);
        t.out.detail = dims.substr(1) + (t.out.ok ? "" : ": " + t.out.detail);
        return t.out;
    });

    run(4, "biduality", 30, [] {
        Tally t;
        std::mt19937_64 rng(4);
        std::size_t rings = 0, ideals = 0;
        auto pick = [&](const auto& k) {
            auto all = builtin_family(k, 8);
            std::shuffle(all.begin(), all.end(), rng);
            all.erase(all.begin() + 12, all.end());
            for (const auto& r : all) {
                ++rings;
                auto w = canonical_module(r);
                for (int i = 0; i < 9; ++i) {
                    std::uint64_t seed = rng();
                    auto m = random_ideal(r, seed, {3, 2});
                    ++ideals;
                    t.expect(w.dual(w.dual(m)) == m, r.label() + " seed " + std::to_string(seed));
                }
            }
        };
        pick(Q);
        pick(F5);
        t.expect(rings >= 20 && ideals >= 200, "too few cases");
        t.out.detail = std::to_string(ideals) + " ideals over " + std::to_string(rings) + " rings (Q, F5)" +
                       (t.out.ok ? "" : ": " + t.out.detail);
        return t.out;
    });

    run(5, "length duality, Ext^1 length", 20, [] {
        Tally t;
        std::mt19937_64 rng(5);
        auto rings = small_family_q();
        std::size_t pairs = 0;
        for (int n = 0; n < 120; ++n) {
            const auto& r = rings[rng() % rings.size()];
            auto w = canonical_module(r);
            std::uint64_t seed = rng();
            auto q1 = random_ideal(r, seed, {2, 2});
            auto q2 = q1.sum(random_ideal(r, seed + 1, {2, 1}));
            TorsionQuotient<Rationals> tq(q1, q2);
            ++pairs;
            t.expect(len_quotient(q1, q2) == len_quotient(w.dual(q2), w.dual(q1)), r.label() + " length duality");
            t.expect(ext1_torsion(w, tq).length() == tq.length(), r.label() + " Ext^1 length");
        }
        t.out.detail = std::to_string(pairs) + " nested pairs" + (t.out.ok ? "" : ": " + t.out.detail);
        return t.out;
    });

    run(6, "conductor dualities", 0, [] {
        Tally t;
        for (const auto& w : family()) {
            t.expect(conductor_duality(w), w.ring().label() + ": (O:Obar) differs");
            t.expect(min_pole_profile(w) == w.ring().conductor_exponents(), w.ring().label() + ": pole profile");
        }
        t.out.detail = std::to_string(family().size()) + " rings" + (t.out.ok ? "" : ": " + t.out.detail);
        return t.out;
    });

    run(7, "seminormality", 0, [] {
        Tally t;
        std::size_t yes = 0;
        for (const auto& w : family()) {
            const auto& r = w.ring();
            bool a = true;
            for (int n : r.conductor_exponents()) a = a && n <= 1;
            bool b = seminormal_via_omega(w), c = r.seminormalization() == r;
            t.expect(a == b && b == c, r.label() + ": routes disagree");
            yes += a;
        }
        t.out.detail = std::to_string(family().size()) + " rings, " + std::to_string(yes) + " seminormal" +
                       (t.out.ok ? "" : ": " + t.out.detail);
        return t.out;
    });

    run(8, "general section", 0, [] {
        Tally t;
        for (const auto& w : family()) {
            auto s = general_section(w);
            t.expect(FracIdeal<Rationals>::conductor(w.ring()).multiply(s.sigma) == w.omega_bar(),
                     w.ring().label() + ": O(-D) sigma != omega-bar");
        }
        FiniteField f2(2);
        auto node = curve_from_text(f2, 2, {"(t,0)", "(0,t)"}, "node");
        auto sn = general_section_with_base_change(node);
        t.expect(sn.trials > 0, "node over F2");
        auto axes = curve_from_text(f2, 3, {"(t,0,0)", "(0,t,0)", "(0,0,t)"}, "three axes");
        auto sa = general_section_with_base_change(axes);
        t.expect(sa.field_name != "F2", "three axes over F2 should need an extension");
        t.out.detail = std::to_string(family().size()) + " rings over Q; node over F2 in " + sn.field_name +
                       ", three axes in " + sa.field_name + (t.out.ok ? "" : ": " + t.out.detail);
        return t.out;
    });

    run(9, "Matlis duality, Rees", 0, [] {
        Tally t;
        for (const auto& w : family()) {
            const auto& r = w.ring();
            auto q = artin_quotient(r, default_parameter(r));
            auto a = ArtinModule<Rationals>::free(q.algebra);
            auto e = matlis_dual(a);
            t.expect(e.dim() == a.dim(), r.label() + ": len E(k) != len A");
            t.expect(socle(e).size() == 1, r.label() + ": socle E(k) is not k");
        }
        std::mt19937_64 rng(9);
        auto rings = small_family_q();
        std::size_t cases = 0;
        for (int n = 0; n < 60; ++n) {
            const auto& r = rings[rng() % rings.size()];
            auto w = canonical_module(r);
            std::uint64_t seed = rng();
            auto f = random_ideal(r, seed, {2, 2});
            auto x = random_parameter(r, rng);
            auto g = f.multiply(x).sum(random_ideal(r, seed + 3, {1, 1}).intersect(f));
            TorsionQuotient<Rationals> tq(g, f);
            ++cases;
            auto rc = rees_check(w, tq, x);
            t.expect(rc.equal(), r.label() + ": len Ext^1 " + std::to_string(rc.ext_length) + " vs Hom " +
                                     std::to_string(rc.hom_dim));
        }
        t.out.detail = std::to_string(family().size()) + " quotients, " + std::to_string(cases) + " Rees cases" +
                       (t.out.ok ? "" : ": " + t.out.detail);
        return t.out;
    });

    run(10, "toric examples", 5, [] {
        Tally t;
        auto div3 = model_div3();
        auto w = canonical_module_toric(div3);
        MonomialModule2 ref(div3, {{1, 0}, {0, 1}});
        t.expect(monomial_iso(ref, w).has_value(), "omega is not a translate of <a+b = 1 mod 3>");
        auto plus2 = model_plus2();
        MonomialModule2 o(plus2, {{0, 0}});
        auto h = s2_hull(o);
        t.expect(!(h == o), "hull does not enlarge O");
        // window oracle: hull = first quadrant, O = {a + b >= 2} and the origin
        std::size_t points = 0;
        for (long a = 0; a <= 20; ++a)
            for (long b = 0; b <= 20; ++b) {
                Point2 u{a, b};
                ++points;
                t.expect(h.contains(u), "hull misses " + to_string(u));
                t.expect(o.contains(u) == (a + b >= 2 || a + b == 0), "O wrong at " + to_string(u));
                t.expect(w.contains(u) == (a > 0 && b > 0 && (a + b) % 3 == 0), "omega wrong at " + to_string(u));
                auto v = u - Point2{1, 1};
                t.expect(ref.contains(v) == w.contains(u), "translate differs at " + to_string(u));
            }
        t.expect(!h.contains({-1, 0}) && !h.contains({0, -1}), "hull leaves the quadrant");
        t.out.detail = "omega = " + w.to_string() + ", hull = " + h.to_string() + ", " + std::to_string(points) +
                       " window points" + (t.out.ok ? "" : ": " + t.out.detail);
        return t.out;
    });

    run(11, "Herbrand quotient", 0, [] {
        Tally t;
        std::mt19937_64 rng(11);
        auto rings = small_family_q();
        std::size_t cases = 0;
        for (int n = 0; n < 120; ++n) {
            const auto& r = rings[rng() % rings.size()];
            auto f = random_ideal(r, rng(), {3, 2});
            auto x = random_parameter(r, rng);
            auto h = herbrand(f, x);
            ++cases;
            t.expect(h.quotient_length == h.order_sum, r.label() + ": len(F/rF) = " +
                                                           std::to_string(h.quotient_length) +
                                                           ", sum ord = " + std::to_string(h.order_sum));
        }
        t.out.detail = std::to_string(cases) + " cases" + (t.out.ok ? "" : ": " + t.out.detail);
        return t.out;
    });

    std::printf("%d criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
