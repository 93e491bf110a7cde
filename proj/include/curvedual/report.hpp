#pragma once

// Structured reports (JSON, nlohmann::ordered_json) for the command line tool.
// Keys are stable; see docs/report.schema.json.

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "checks.hpp"
#include "curvering.hpp"
#include "duality.hpp"
#include "extlab.hpp"
#include "io.hpp"
#include "toric2.hpp"

namespace curvedual {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

inline Json report_header(const std::string& command, std::uint64_t seed)
{
    Json j;
    j["schema_version"] = kSchemaVersion;
    j["command"] = command;
    j["seed"] = seed;
    return j;
}

template <Field F>
Json strings(const std::vector<BranchElement<F>>& xs)
{
    Json a = Json::array();
    for (const auto& x : xs) a.push_back(x.to_string());
    return a;
}

template <Field F>
Json ideal_json(const FracIdeal<F>& m)
{
    Json j;
    auto g = m.minimal_generators();
    j["generators"] = strings(g);
    j["pole"] = m.pole();
    j["tail"] = m.tail();
    j["finite_basis"] = strings(m.basis());
    j["principal"] = m.is_principal().has_value();
    return j;
}

template <Field F>
Json matrix_json(const Matrix<F>& a)
{
    Json rows = Json::array();
    for (std::size_t r = 0; r < a.rows(); ++r) {
        Json row = Json::array();
        for (std::size_t c = 0; c < a.cols(); ++c) row.push_back(a.field().to_string(a(r, c)));
        rows.push_back(row);
    }
    return rows;
}

inline Json input_json(const CurveFile& f)
{
    Json j;
    j["label"] = f.label;
    j["field"] = f.field.to_string();
    j["branches"] = f.branches;
    if (f.semigroup)
        j["semigroup"] = *f.semigroup;
    else
        j["generators"] = f.generators;
    return j;
}

template <Field F>
Json ring_report(const CanonicalModule<F>& w, std::uint64_t seed)
{
    const auto& ring = w.ring();
    Json j;
    auto c = ring.conductor();
    j["conductor"] = {{"exponents", c.exponents}, {"len_D", c.len_D}, {"len_Dbar", c.len_Dbar}, {"delta", c.delta}};
    auto g = ring.is_gorenstein();
    j["gorenstein"] = {{"verdict", g.gorenstein}, {"len_Dbar", g.len_Dbar}, {"twice_len_D", g.twice_len_D}};
    auto s = serre_report(w);
    j["serre"] = {{"len_Dbar", s.len_Dbar},
                  {"twice_len_D", s.twice_len_D},
                  {"delta", s.delta},
                  {"len_omega_over_omegabar", s.len_omega_over_omegabar},
                  {"gorenstein", s.gorenstein},
                  {"omega_principal", s.omega_principal},
                  {"socle_dim_O_mod_x", s.socle_dim_O},
                  {"socle_dim_omega_mod_x", s.socle_dim_omega},
                  {"consistent", s.consistent}};
    j["seminormal"] = {{"by_conductor", ring.is_seminormal()},
                       {"by_omega", seminormal_via_omega(w)},
                       {"by_seminormalization", ring.seminormalization() == ring}};
    j["omega"] = ideal_json(w.module());
    j["omega"]["pole_profile"] = min_pole_profile(w);
    auto e = exact_seq_lengths(w);
    j["exact_sequence"] = {{"len_twisted_over_omega", e.len_twisted_over_omega},
                           {"len_D", e.len_D},
                           {"len_omega_over_omegabar", e.len_omega_over_omegabar},
                           {"delta", e.delta},
                           {"holds", e.holds}};
    j["conductor_duality"] = conductor_duality(w);
    try {
        auto sec = general_section(w, 64, seed);
        j["general_section"] = {{"sigma", sec.sigma.to_string()}, {"trials", sec.trials}, {"field", sec.field_name}};
    } catch (const Error& err) {
        j["general_section"] = {{"error", err.what()}};
    }
    return j;
}

template <Field F>
std::string ring_text(const CanonicalModule<F>& w)
{
    const auto& ring = w.ring();
    auto c = ring.conductor();
    auto s = serre_report(w);
    auto vec = [](const std::vector<int>& v) {
        std::string out = "(";
        for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + std::to_string(v[i]);
        return out + ")";
    };
    std::string out;
    out += "ring        " + (ring.label().empty() ? std::string("(unnamed)") : ring.label()) + " over " +
           ring.field().name() + ", " + std::to_string(ring.branches()) + " branch(es)\n";
    out += "conductor   n = " + vec(c.exponents) + ", len D = " + std::to_string(c.len_D) +
           ", len Dbar = " + std::to_string(c.len_Dbar) + ", delta = " + std::to_string(c.delta) + "\n";
    out += "gorenstein  " + std::string(s.gorenstein ? "yes" : "no") + " (len Dbar " + std::to_string(s.len_Dbar) +
           " vs 2 len D " + std::to_string(s.twice_len_D) + ")\n";
    out += "seminormal  " + std::string(ring.is_seminormal() ? "yes" : "no") + "\n";
    out += "omega       " + w.module().to_string() + (s.omega_principal ? " principal" : "") + "\n";
    out += "poles       " + vec(min_pole_profile(w)) + "\n";
    out += "socle       O/xO " + std::to_string(s.socle_dim_O) + ", omega/x omega " +
           std::to_string(s.socle_dim_omega) + "\n";
    out += "consistent  " + std::string(s.consistent ? "yes" : "no") + "\n";
    return out;
}

template <Field F>
Json omega_report(const CanonicalModule<F>& w)
{
    Json j = ideal_json(w.module());
    j["residue_matrix"] = matrix_json(w.residue_matrix());
    j["pole_profile"] = min_pole_profile(w);
    return j;
}

inline Json artin_module_json(const ArtinModule<FiniteField>& m)
{
    Json acts = Json::array();
    for (std::size_t i = 0; i < m.algebra().dim(); ++i)
        acts.push_back({{"element", m.algebra().basis_name(i)}, {"matrix", matrix_json(m.act(i))}});
    return {{"dim", m.dim()}, {"actions", acts}};
}

inline Json check_json(const CheckSummary& s)
{
    Json fails = Json::array();
    for (const auto& f : s.failures)
        fails.push_back({{"property", f.property}, {"detail", f.detail}, {"seed", f.seed}, {"ring_level", f.ring_level}});
    return {{"rings", s.rings}, {"cases", s.cases}, {"properties", s.properties}, {"ok", s.ok()}, {"failures", fails}};
}

inline Json toric_module_json(const MonomialModule2& m)
{
    Json gens = Json::array();
    for (auto g : m.generators()) gens.push_back({g[0], g[1]});
    return gens;
}

inline Json toric_semigroup_json(const AffineSemigroup2& s)
{
    Json gens = Json::array();
    for (auto g : s.generators()) gens.push_back({g[0], g[1]});
    return {{"label", s.label()}, {"generators", gens}, {"saturated", is_saturated(s)}};
}

} // namespace curvedual
