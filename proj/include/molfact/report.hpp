#pragma once

// JSON documents (schema 1) and plain-text tables for reports. Key order is
// fixed so identical inputs give byte-identical output.

#include <iomanip>
#include <sstream>
#include <string>

#include <json.hpp>

#include "molfact/experiments.hpp"
#include "molfact/properties.hpp"

namespace molfact {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

inline std::string ring_id(const FiniteRing& r) { return r.label() + "#" + fingerprint_hex(r); }

inline Json to_json(const Ambient& amb, const Ideal& i) {
  Json j;
  j["ring"] = ring_id(*i.ring());
  j["cols"] = i.matrix().cols();
  j["matrix"] = i.matrix().data();
  j["generators"] = amb.describe(i);
  return j;
}

inline Json ideals_json(const Ambient& amb, const std::vector<Ideal>& v) {
  Json arr = Json::array();
  for (const auto& i : v) arr.push_back(to_json(amb, i));
  return arr;
}

inline Json ambient_json(const Ambient& amb) {
  Json j;
  j["label"] = amb.label;
  j["ring"] = ring_id(*amb.ring);
  j["ring_size"] = amb.ring->size();
  j["rank"] = amb.ring->rank();
  j["orders"] = amb.ring->orders();
  j["certified"] = amb.certified;
  j["certificate"] = amb.certificate;
  return j;
}

inline Json report_header(const std::string& command, const Ambient& amb) {
  Json j;
  j["schema"] = kSchemaVersion;
  j["command"] = command;
  j["ambient_label"] = amb.label;
  j["ambient"] = ambient_json(amb);
  j["target"] = to_json(amb, amb.target);
  return j;
}

inline Json census_json(const Ambient& amb, const DivisorCensus& c) {
  Json j = report_header("census", amb);
  j["divisors"] = ideals_json(amb, c.divisors);
  j["molecules"] = ideals_json(amb, c.molecules);
  j["counts"] = {{"divisors", c.divisors.size()}, {"molecules", c.molecules.size()}};
  return j;
}

inline Json absorbing_json(const Ambient& amb, const std::optional<AbsorbingPair>& w) {
  if (!w) return nullptr;
  return Json{{"ideal", to_json(amb, w->ideal)}, {"absorbed", to_json(amb, w->absorbed)}};
}

inline Json molecularization_json(const Ambient& amb, const MolecularizationReport& r) {
  Json j = report_header("molecularize", amb);
  j["divisors"] = ideals_json(amb, r.census.divisors);
  j["molecules"] = ideals_json(amb, r.census.molecules);
  Json fs = Json::array();
  for (const auto& f : r.factorizations) fs.push_back(ideals_json(amb, f));
  j["factorizations"] = fs;
  j["finite"] = r.finite;
  j["unit_cancellative"] = r.unit_cancellative;
  j["length_bound"] = r.length_bound;
  j["absorbing_witness"] = absorbing_json(amb, r.absorbing_witness);
  j["counts"] = {{"divisors", r.census.divisors.size()},
                 {"molecules", r.census.molecules.size()},
                 {"factorizations", r.factorizations.size()}};
  j["scope"] = "verified for the examined ideal";
  return j;
}

inline Json enumerate_json(const Ambient& amb, const std::vector<Ideal>& overs) {
  Json j = report_header("enumerate", amb);
  j["overideals"] = ideals_json(amb, overs);
  j["counts"] = {{"overideals", overs.size()}};
  return j;
}

inline Json info_json(const Ambient& amb) {
  Json j = report_header("info", amb);
  Json names = Json::array();
  for (const auto& n : amb.ring->names()) names.push_back(n);
  j["basis"] = names;
  j["target_index"] = amb.target.index();
  j["target_size"] = amb.target.size();
  return j;
}

inline Json property_json(const PropertyReport& r) {
  Json j;
  j["schema"] = kSchemaVersion;
  j["command"] = "property-suite";
  j["subject"] = r.subject;
  j["seed"] = r.seed;
  j["trials"] = r.trials;
  j["universe"] = r.universe;
  Json checks = Json::array();
  for (const auto& c : r.checks)
    checks.push_back({{"name", c.name},
                      {"cases", c.cases},
                      {"violations", c.violations},
                      {"counterexample", c.counterexample.empty() ? Json(nullptr) : Json(c.counterexample)}});
  j["checks"] = checks;
  Json abs = Json::array();
  for (const auto& a : r.absorbing) abs.push_back({{"ideal", a.ideal.to_string()}, {"absorbed", a.absorbed.to_string()}});
  j["unit_cancellation_failures"] = abs;
  j["violations"] = r.violations();
  j["passed"] = r.passed();
  return j;
}

// ---------------------------------------------------------------------------
// Experiments.

inline Json experiment_header(const std::string& name, Json params) {
  Json j;
  j["schema"] = kSchemaVersion;
  j["command"] = "experiment";
  j["experiment"] = name;
  j["parameters"] = std::move(params);
  return j;
}

inline Json factorizations_text(const Ambient& amb, const MolecularizationReport& r) {
  Json fs = Json::array();
  for (const auto& f : r.factorizations) {
    Json one = Json::array();
    for (const auto& i : f) one.push_back(amb.describe(i));
    fs.push_back(one);
  }
  return fs;
}

inline Json integer_json(const std::vector<IntegerCase>& cases) {
  Json params = cases.size() == 1 ? Json{{"n", cases[0].n}} : Json{{"n", cases.front().n}, {"n_max", cases.back().n}};
  Json j = experiment_header("integers", params);
  Json rows = Json::array();
  bool ok = true;
  for (const auto& c : cases) {
    ok = ok && c.passed();
    rows.push_back({{"n", c.n},
                    {"ambient_label", c.ambient.label},
                    {"target", c.ambient.describe(c.ambient.target)},
                    {"divisors", c.report.census.divisors.size()},
                    {"molecules", c.report.census.molecules.size()},
                    {"molecularizations", c.report.factorizations.size()},
                    {"factorizations", factorizations_text(c.ambient, c.report)},
                    {"molecules_prime", c.molecules_prime},
                    {"passed", c.passed()}});
  }
  j["results"] = rows;
  j["passed"] = ok;
  return j;
}

inline Json cusp_lines_json(const CuspLinesResult& r) {
  Json j = experiment_header("cusp-lines", {{"q", r.q}});
  Json lines = Json::array();
  for (const auto& l : r.lines) lines.push_back(r.ambient.describe(l));
  j["ambient_label"] = r.ambient.label;
  j["model_size"] = r.ambient.ring->size();
  j["certificate"] = r.ambient.certificate;
  j["target"] = r.ambient.describe(r.ambient.target);
  j["overideals"] = r.overideals;
  j["line_ideals"] = lines;
  j["line_count"] = r.lines.size();
  j["all_contain_target"] = r.all_contain_target;
  j["passed"] = r.passed();
  return j;
}

inline Json zx_square_json(const ZxMoleculeResult& r) {
  Json j = experiment_header("zx-square", {{"p", r.p}});
  j["ambient_label"] = r.ambient.label;
  j["model_size"] = r.ambient.ring->size();
  j["certificate"] = r.ambient.certificate;
  j["target"] = r.ambient.describe(r.ambient.target);
  j["molecule"] = r.molecule;
  j["primary"] = r.primary;
  j["prime"] = r.prime;
  j["radical"] = r.ambient.describe(r.radical);
  j["colon_by_radical_is_square"] = r.colon_is_square;
  j["passed"] = r.passed();
  return j;
}

inline Json zx_two_generator_json(const ZxTwoGeneratorResult& r) {
  Json j = experiment_header("zx-two-generator", Json::object());
  auto one = [](const ZxTwoGeneratorCase& c) {
    Json o;
    o["ideal"] = c.name;
    o["ambient_label"] = c.ambient.label;
    o["model_size"] = c.ambient.ring->size();
    o["molecule"] = c.molecule;
    if (!c.witness.empty()) {
      o["witness"] = c.witness_names;
      o["witness_holds"] = c.witness_holds;
    }
    return o;
  };
  j["cases"] = Json::array({one(r.molecule_case), one(r.compound_case)});
  j["passed"] = r.passed();
  return j;
}

inline Json dplusm_json(const DplusMResult& r, Coord p, int kd, int kk, int n) {
  Json j = experiment_header("dplusm", {{"p", p}, {"k_D", kd}, {"k_K", kk}, {"N", n}});
  j["ambient_label"] = r.ambient.label;
  j["model_size"] = r.ambient.ring->size();
  j["certificate"] = r.ambient.certificate;
  j["target"] = r.ambient.describe(r.ambient.target);
  j["nonzero_subspaces"] = r.subspaces;
  Json levels = Json::object();
  for (auto [lvl, cnt] : r.per_level) levels[std::to_string(lvl)] = cnt;
  j["per_level"] = levels;
  Json rows = Json::array();
  for (const auto& e : r.ideals)
    rows.push_back({{"ideal", r.ambient.describe(e.ideal)},
                    {"level", e.level},
                    {"leading_dimension", e.leading.size()},
                    {"matches_form", e.matches},
                    {"molecule", e.molecule}});
  j["ideals"] = rows;
  j["all_match"] = r.all_match;
  j["levels_match"] = r.levels_match;
  j["level_one_molecules"] = r.level_one_molecules;
  j["passed"] = r.passed();
  return j;
}

inline Json quadratic_json(const QuadraticResult& r) {
  Json j = experiment_header("quadratic", {{"d", r.d}, {"n", r.n}});
  j["ambient_label"] = r.ambient.label;
  j["model_size"] = r.ambient.ring->size();
  j["target"] = r.ambient.describe(r.ambient.target);
  j["molecules"] = [&] {
    Json a = Json::array();
    for (const auto& m : r.report.census.molecules) a.push_back(r.ambient.describe(m));
    return a;
  }();
  j["molecularizations"] = r.report.factorizations.size();
  j["factorizations"] = factorizations_text(r.ambient, r.report);
  j["molecules_prime"] = r.molecules_prime;
  j["passed"] = r.passed();
  return j;
}

// ---------------------------------------------------------------------------
// Tables: one "key: value" line per scalar, one indented line per list entry.

inline void table_lines(const Json& j, std::ostringstream& out, const std::string& indent = "") {
  for (auto it = j.begin(); it != j.end(); ++it) {
    const Json& v = it.value();
    if (v.is_object()) {
      if (it.key() == "ring" || (v.contains("matrix") && v.contains("generators"))) {
        out << indent << it.key() << ": " << v.value("generators", v.dump()) << "\n";
        continue;
      }
      out << indent << it.key() << ":\n";
      table_lines(v, out, indent + "  ");
    } else if (v.is_array()) {
      out << indent << it.key() << ": [" << v.size() << "]\n";
      for (const auto& e : v) {
        if (e.is_object() && e.contains("generators")) out << indent << "  - " << e["generators"].get<std::string>() << "\n";
        else if (e.is_object()) {
          out << indent << "  -\n";
          table_lines(e, out, indent + "    ");
        } else if (e.is_array()) {
          std::string s;
          for (const auto& x : e) s += (s.empty() ? "" : " * ") + (x.is_object() && x.contains("generators") ? x["generators"].get<std::string>() : x.is_string() ? x.get<std::string>() : x.dump());
          out << indent << "  - " << s << "\n";
        } else {
          out << indent << "  - " << (e.is_string() ? e.get<std::string>() : e.dump()) << "\n";
        }
      }
    } else {
      out << indent << it.key() << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
    }
  }
}

inline std::string to_table(const Json& j) {
  std::ostringstream out;
  table_lines(j, out);
  return out.str();
}

}  // namespace molfact
