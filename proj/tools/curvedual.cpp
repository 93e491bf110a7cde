// curvedual: reports, canonical modules, property checks, the Ext lab and the
// toric examples from the command line.
//
// exit codes: 0 ok, 1 a property failed, 2 bad input or infeasible request

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "curvedual/checks.hpp"
#include "curvedual/extlab.hpp"
#include "curvedual/io.hpp"
#include "curvedual/report.hpp"
#include "curvedual/toric2.hpp"

using namespace curvedual;

namespace {

struct Options {
    std::string format = "text";
    std::uint64_t seed = 1;
    int window_bound = 200;
    bool json() const { return format == "json"; }
};

CurveFile load(const std::string& path)
{
    std::ifstream in(path);
    if (!in) fail(ErrorKind::ParseError, "cannot read '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_curve_file(ss.str());
}

void emit(const Json& j) { std::cout << j.dump(2) << "\n"; }

int cmd_report(const Options& o, const std::string& path)
{
    auto file = load(path);
    return with_field(file.field, [&](const auto& k) {
        auto ring = CurveRing<std::decay_t<decltype(k)>>::build(curve_spec(file, k, o.window_bound));
        auto w = canonical_module(ring);
        if (o.json()) {
            Json j = report_header("report", o.seed);
            j["input"] = input_json(file);
            j.update(ring_report(w, o.seed));
            emit(j);
        } else {
            std::cout << ring_text(w);
        }
        return 0;
    });
}

int cmd_omega(const Options& o, const std::string& path)
{
    auto file = load(path);
    return with_field(file.field, [&](const auto& k) {
        auto ring = CurveRing<std::decay_t<decltype(k)>>::build(curve_spec(file, k, o.window_bound));
        auto w = canonical_module(ring);
        if (o.json()) {
            Json j = report_header("omega", o.seed);
            j["input"] = input_json(file);
            j["omega"] = omega_report(w);
            emit(j);
        } else {
            std::cout << "generators " << w.module().to_string() << (w.module().is_principal() ? " principal" : "")
                      << "\n";
            std::cout << "basis     ";
            for (const auto& b : w.module().basis()) std::cout << " " << b.to_string() << ",";
            std::cout << " then t^" << w.module().tail()[0];
            for (std::size_t i = 1; i < w.module().tail().size(); ++i) std::cout << ", t^" << w.module().tail()[i];
            std::cout << " k[[t]] dt\n";
            const auto& a = w.residue_matrix();
            std::cout << "residues   " << a.rows() << " x " << a.cols() << "\n";
            for (std::size_t r = 0; r < a.rows(); ++r) {
                std::cout << "  ";
                for (std::size_t c = 0; c < a.cols(); ++c) std::cout << " " << a.field().to_string(a(r, c));
                std::cout << "\n";
            }
        }
        return 0;
    });
}

struct CheckArgs {
    std::string file;
    bool family = false;
    int max_gen = 12;
    std::string field = "Q";
    std::size_t cases = 4;
    std::string mutate;
};

template <Field F>
int run_checks(const Options& o, const CheckArgs& a, const std::vector<CurveRing<F>>& rings)
{
    CanonicalOptions copt;
    if (a.mutate == "drop-residue") copt.drop_condition = 0;
    CheckSummary total;
    std::optional<CheckFailure> first;
    std::optional<CurveFile> culprit;
    for (const auto& ring : rings) {
        auto w = canonical_module(ring, copt);
        CheckSummary s;
        check_ring(w, s);
        for (std::size_t i = 0; i < a.cases && s.ok(); ++i) check_case(w, o.seed + i, s);
        ++total.rings;
        total.cases += a.cases;
        total.properties += s.properties;
        if (!s.ok()) {
            total.failures = s.failures;
            first = s.failures.front();
            culprit = to_curve_file(ring);
            break;
        }
    }
    std::string repro;
    if (first) {
        repro = "curvedual check FAILING.curve --seed " + std::to_string(first->ring_level ? o.seed : first->seed) +
                " --cases " + (first->ring_level ? std::string("0") : std::string("1"));
        if (!a.mutate.empty()) repro += " --mutate " + a.mutate;
    }
    if (o.json()) {
        Json j = report_header("check", o.seed);
        j["mutation"] = a.mutate.empty() ? Json(nullptr) : Json(a.mutate);
        j["summary"] = check_json(total);
        if (first) {
            j["counterexample"] = {{"property", first->property},
                                   {"detail", first->detail},
                                   {"curve_file", print_curve_file(*culprit)},
                                   {"rerun", repro}};
        }
        emit(j);
    } else {
        std::cout << "rings " << total.rings << ", properties " << total.properties << ": "
                  << (first ? "FAIL" : "pass") << "\n";
        if (first) {
            std::cout << "property " << first->property << ": " << first->detail << "\n";
            std::cout << "--- FAILING.curve\n" << print_curve_file(*culprit) << "---\n";
            std::cout << "rerun: " << repro << "\n";
        }
    }
    return first ? 1 : 0;
}

int cmd_check(const Options& o, const CheckArgs& a)
{
    if (!a.mutate.empty() && a.mutate != "drop-residue")
        fail(ErrorKind::InvalidArgument, "unknown mutation '" + a.mutate + "'");
    if (!a.file.empty() && a.family) fail(ErrorKind::InvalidArgument, "give a file or --family, not both");
    if (!a.file.empty()) {
        auto file = load(a.file);
        return with_field(file.field, [&](const auto& k) {
            using F = std::decay_t<decltype(k)>;
            std::vector<CurveRing<F>> rings{CurveRing<F>::build(curve_spec(file, k, o.window_bound))};
            return run_checks(o, a, rings);
        });
    }
    auto d = FieldDescriptor::parse(a.field);
    if (!d) fail(ErrorKind::ParseError, "unknown field '" + a.field + "'");
    return with_field(*d, [&](const auto& k) { return run_checks(o, a, builtin_family(k, a.max_gen)); });
}

struct ExtArgs {
    int m = 3;
    std::uint64_t p = 2;
    bool claim2 = false, claim4 = false, cor3 = false;
    std::size_t bound = 12;
};

int cmd_ext_lab(const Options& o, ExtArgs a)
{
    if (!a.claim2 && !a.claim4 && !a.cor3) a.claim2 = a.claim4 = a.cor3 = true;
    ExtLabInstance lab(a.m, a.p);
    Json j = report_header("ext-lab", o.seed);
    j["m"] = a.m;
    j["p"] = a.p;
    bool ok = true;
    std::ostringstream text;
    text << "R = k[t^i : i >= " << a.m << "] over F" << a.p << ", x = t^" << a.m << ", A = R/x^2R of dim "
         << lab.algebra().dim() << "\n";
    if (a.claim2) {
        auto c = residue_ext(lab, true, a.bound);
        j["claim2"] = {{"ext1_by_resolution", c.by_resolution},
                       {"ext1_by_cocycles", c.by_cocycles},
                       {"extension_classes", c.enumerated_classes},
                       {"formula_m2_m_1", c.formula},
                       {"routes_agree", c.routes_agree},
                       {"matches_formula", c.matches_formula}};
        ok = ok && c.routes_agree && c.matches_formula;
        text << "ext       dim Ext^1(omega/x omega, k) = " << c.by_resolution << " (resolution), " << c.by_cocycles
             << " (cocycles, " << c.enumerated_classes << " classes); m^2-m-1 = " << c.formula
             << (c.matches_formula ? "" : "  DISCREPANCY") << "\n";
    }
    if (a.claim4) {
        auto c = verify_self_extensions(lab, a.bound);
        j["claim4"] = {{"ext1_self_dim", c.ext_dim},
                       {"classes", c.classes},
                       {"qualifying", c.qualifying},
                       {"isomorphic_to_omega_mod_x2", c.isomorphic},
                       {"holds", c.holds()}};
        ok = ok && c.holds();
        text << "claim4    " << (c.holds() ? "true" : "false") << ": " << c.isomorphic << " of " << c.qualifying
             << " qualifying self-extensions (of " << c.classes << ") are omega/x^2 omega\n";
    }
    if (a.cor3) {
        try {
            auto c = find_non_quotient(lab, a.bound);
            j["cor3"] = {{"classes", c.classes},
                         {"with_nonzero_x", c.with_nonzero_x},
                         {"quotients_of_omega", c.quotients_of_omega},
                         {"witness", artin_module_json(*c.witness)}};
            text << "cor3      witness found: " << c.with_nonzero_x << " extensions with M/xM = omega/x omega, "
                 << c.quotients_of_omega << " of them quotients of omega\n";
            const auto& wm = *c.witness;
            for (std::size_t i = 1; i < wm.algebra().dim(); ++i) {
                if (wm.act(i).is_zero()) continue;
                text << "  " << wm.algebra().basis_name(i) << ":\n";
                for (std::size_t r = 0; r < wm.dim(); ++r) {
                    text << "   ";
                    for (std::size_t col = 0; col < wm.dim(); ++col) text << " " << wm.field().to_string(wm.act(i)(r, col));
                    text << "\n";
                }
            }
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::NoWitness) throw;
            j["cor3"] = {{"error", e.what()}};
            ok = false;
            text << "cor3      " << e.what() << "\n";
        }
    }
    if (o.json())
        emit(j);
    else
        std::cout << text.str();
    return ok ? 0 : 1;
}

std::vector<Point2> parse_points(const std::string& s)
{
    // "x,y;x,y;..." or "x,y x,y ..."
    std::vector<Point2> out;
    std::string flat = s;
    std::replace(flat.begin(), flat.end(), ';', ' ');
    std::istringstream ss(flat);
    std::string item;
    while (ss >> item) {
        Point2 p{};
        char comma = 0;
        std::istringstream in(item);
        std::string rest;
        if (!(in >> p[0] >> comma >> p[1]) || comma != ',' || (in >> rest))
            fail(ErrorKind::ParseError, "bad lattice point '" + item + "'");
        out.push_back(p);
    }
    if (out.empty()) fail(ErrorKind::ParseError, "no lattice points in '" + s + "'");
    return out;
}

struct ToricArgs {
    std::string action;
    std::string model;
    std::string semigroup;
    std::string module;
    std::string other;
};

int cmd_toric(const Options& o, const ToricArgs& a)
{
    if (a.model.empty() == a.semigroup.empty()) fail(ErrorKind::InvalidArgument, "give exactly one of --model, --semigroup");
    AffineSemigroup2 s = a.model == "plus2"  ? model_plus2()
                         : a.model == "div3" ? model_div3()
                         : a.model.empty()   ? AffineSemigroup2(parse_points(a.semigroup))
                                             : (fail(ErrorKind::InvalidArgument, "unknown model '" + a.model + "'"),
                                                model_div3());
    Json j = report_header("toric", o.seed);
    j["action"] = a.action;
    j["semigroup"] = toric_semigroup_json(s);
    std::ostringstream text;
    auto module_text = [](const MonomialModule2& m) { return m.to_string(); };
    MonomialModule2 m(s, a.module.empty() ? std::vector<Point2>{{0, 0}} : parse_points(a.module));
    if (a.action == "saturate") {
        auto sat = saturation(s);
        j["result"] = toric_semigroup_json(sat);
        text << "saturation";
        for (auto g : sat.generators()) text << " " << to_string(g);
        text << "\n";
    } else if (a.action == "hull") {
        auto h = s2_hull(m);
        j["module"] = toric_module_json(m);
        j["result"] = toric_module_json(h);
        j["enlarged"] = !(h == m);
        text << "hull " << module_text(h) << (h == m ? " (unchanged)" : " (strictly larger)") << "\n";
    } else if (a.action == "omega") {
        auto w = canonical_module_toric(s);
        j["result"] = toric_module_json(w);
        text << "omega " << module_text(w) << "\n";
    } else if (a.action == "iso") {
        if (a.other.empty()) fail(ErrorKind::InvalidArgument, "iso needs --other");
        MonomialModule2 n(s, parse_points(a.other));
        auto u = monomial_iso(m, n);
        j["module"] = toric_module_json(m);
        j["other"] = toric_module_json(n);
        j["translation"] = u ? Json{(*u)[0], (*u)[1]} : Json(nullptr);
        text << (u ? "isomorphic, translation " + to_string(*u) : std::string("not isomorphic")) << "\n";
    } else {
        fail(ErrorKind::InvalidArgument, "unknown toric action '" + a.action + "'");
    }
    if (o.json())
        emit(j);
    else
        std::cout << text.str();
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"curvedual: duality on curve singularities"};
    app.require_subcommand(1);
    Options o;
    auto common = [&](CLI::App* sub) {
        sub->add_option("--format", o.format, "text or json")->check(CLI::IsMember({"text", "json"}));
        sub->add_option("--seed", o.seed, "random seed");
        sub->add_option("--window-bound", o.window_bound, "largest stabilisation window");
    };
    std::string file;
    auto* report = app.add_subcommand("report", "invariants of a curve file");
    report->add_option("file", file)->required();
    common(report);
    auto* omega = app.add_subcommand("omega", "canonical module and residue matrix");
    omega->add_option("file", file)->required();
    common(omega);

    CheckArgs ca;
    auto* check = app.add_subcommand("check", "property suite on a file or the builtin family");
    check->add_option("file", ca.file);
    check->add_flag("--family", ca.family, "use the builtin family (default without a file)");
    check->add_option("--max-gen", ca.max_gen, "largest semigroup generator in the family");
    check->add_option("--field", ca.field, "field for the family: Q, F5, ...");
    check->add_option("--cases", ca.cases, "random cases per ring");
    check->add_option("--mutate", ca.mutate, "inject a fault: drop-residue");
    common(check);

    ExtArgs ea;
    auto* ext = app.add_subcommand("ext-lab", "Ext computations for k[t^i : i >= m]");
    ext->add_option("--m", ea.m)->required();
    ext->add_option("--p", ea.p)->required();
    ext->add_flag("--claim2", ea.claim2, "dim Ext^1(omega/x omega, k)");
    ext->add_flag("--claim4", ea.claim4, "self-extensions of omega/x omega");
    ext->add_flag("--cor3", ea.cor3, "an extension that is not a quotient of omega");
    ext->add_option("--bound", ea.bound, "largest Ext dimension to enumerate");
    common(ext);

    ToricArgs ta;
    auto* toric = app.add_subcommand("toric", "affine semigroups in Z^2");
    toric->add_option("action", ta.action, "saturate, hull, omega or iso")->required();
    toric->add_option("--model", ta.model, "plus2 (a+b>=2) or div3 (3|a+b)");
    toric->add_option("--semigroup", ta.semigroup, "generators as x,y;x,y;...");
    toric->add_option("--module", ta.module, "module generators as x,y;...");
    toric->add_option("--other", ta.other, "second module for iso");
    common(toric);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }
    try {
        if (*report) return cmd_report(o, file);
        if (*omega) return cmd_omega(o, file);
        if (*check) return cmd_check(o, ca);
        if (*ext) return cmd_ext_lab(o, ea);
        if (*toric) return cmd_toric(o, ta);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}

