#pragma once

// Run configuration documents (JSON). A document is either an ambient spec
// ({"family": ...}) or a full run config ({"ambient": {...}, "command": ...}).
// See configs/ and the README for the grammar.

#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <string>

#include <json.hpp>

#include "molfact/constructions.hpp"

namespace molfact {

struct RunConfig {
  std::optional<AmbientSpec> ambient;
  std::string command;
  std::uint64_t seed = 0;
  std::uint64_t max_ring_size = std::uint64_t{1} << 24;
  bool json = false;
  std::string report_path;
};

namespace detail {

using JsonIn = nlohmann::json;

inline void check_keys(const JsonIn& j, const std::set<std::string>& allowed, const std::string& where) {
  require(j.is_object(), ErrorKind::config_error, where + " must be an object");
  for (auto it = j.begin(); it != j.end(); ++it)
    require(allowed.count(it.key()) > 0, ErrorKind::config_error, "unknown key '" + it.key() + "' in " + where);
}

template <class T>
T get(const JsonIn& j, const std::string& key, const std::string& where) {
  require(j.contains(key), ErrorKind::config_error, where + " needs '" + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::config_error, where + "." + key + ": " + e.what());
  }
}

template <class T>
T get_or(const JsonIn& j, const std::string& key, T fallback, const std::string& where) {
  return j.contains(key) ? get<T>(j, key, where) : fallback;
}

inline ElementLiteral parse_element(const JsonIn& j, const std::string& where) {
  ElementLiteral e;
  if (j.is_number_integer()) e.integer = j.get<Coord>();
  else if (j.is_array()) {
    try {
      e.coords = j.get<Coords>();
    } catch (const nlohmann::json::exception&) {
      throw Error(ErrorKind::config_error, where + ": coordinates must be integers");
    }
  } else {
    throw Error(ErrorKind::config_error, where + ": element must be an integer or a coordinate list");
  }
  return e;
}

inline std::vector<ElementLiteral> parse_elements(const JsonIn& j, const std::string& where) {
  require(j.is_array(), ErrorKind::config_error, where + " must be a list of elements");
  std::vector<ElementLiteral> out;
  for (const auto& e : j) out.push_back(parse_element(e, where));
  return out;
}

inline std::shared_ptr<const RingExpr> parse_ring(const JsonIn& j, const std::string& where) {
  require(j.is_object() && j.size() == 1, ErrorKind::config_error,
          where + " must be an object with exactly one constructor key");
  const std::string kind = j.begin().key();
  const JsonIn& body = j.begin().value();
  auto e = std::make_shared<RingExpr>();
  const std::string here = where + "." + kind;
  if (kind == "zmod") {
    e->kind = RingExpr::Kind::zmod;
    require(body.is_number_integer(), ErrorKind::config_error, here + " must be an integer");
    e->n = body.get<Coord>();
  } else if (kind == "gf") {
    e->kind = RingExpr::Kind::gf;
    check_keys(body, {"p", "k"}, here);
    e->n = get<Coord>(body, "p", here);
    e->k = get_or<int>(body, "k", 1, here);
  } else if (kind == "poly_quotient") {
    e->kind = RingExpr::Kind::poly_quotient;
    check_keys(body, {"base", "modulus", "var"}, here);
    e->base = parse_ring(get<JsonIn>(body, "base", here), here + ".base");
    e->elements = parse_elements(get<JsonIn>(body, "modulus", here), here + ".modulus");
    e->var = get_or<std::string>(body, "var", "X", here);
  } else if (kind == "subring") {
    e->kind = RingExpr::Kind::subring;
    check_keys(body, {"ambient", "generators"}, here);
    e->base = parse_ring(get<JsonIn>(body, "ambient", here), here + ".ambient");
    e->elements = parse_elements(get_or<JsonIn>(body, "generators", JsonIn::array(), here), here + ".generators");
  } else if (kind == "quotient") {
    e->kind = RingExpr::Kind::quotient;
    check_keys(body, {"base", "generators"}, here);
    e->base = parse_ring(get<JsonIn>(body, "base", here), here + ".base");
    e->elements = parse_elements(get<JsonIn>(body, "generators", here), here + ".generators");
  } else if (kind == "product") {
    e->kind = RingExpr::Kind::product;
    require(body.is_array() && body.size() == 2, ErrorKind::config_error, here + " must list two rings");
    e->base = parse_ring(body[0], here + "[0]");
    e->second = parse_ring(body[1], here + "[1]");
  } else if (kind == "table") {
    e->kind = RingExpr::Kind::table;
    check_keys(body, {"orders", "structure", "one", "names", "label"}, here);
    e->table.orders = get<std::vector<Coord>>(body, "orders", here);
    e->table.structure = get<std::vector<Coords>>(body, "structure", here);
    e->table.one = get<Coords>(body, "one", here);
    e->table.names = get_or<std::vector<std::string>>(body, "names", {}, here);
    e->table.label = get_or<std::string>(body, "label", "table", here);
  } else {
    throw Error(ErrorKind::config_error, "unknown ring constructor '" + kind + "' in " + where);
  }
  return e;
}

inline Family parse_family(const std::string& s) {
  for (Family f : {Family::integers, Family::quadratic, Family::gf_poly, Family::cusp, Family::zx_ideal,
                   Family::dedekind_poly, Family::dplusm, Family::raw})
    if (s == to_string(f)) return f;
  throw Error(ErrorKind::config_error, "unknown ambient family '" + s + "'");
}

}  // namespace detail

inline AmbientSpec parse_ambient_spec(const nlohmann::json& j) {
  using detail::get;
  using detail::get_or;
  const std::string w = "ambient";
  require(j.is_object(), ErrorKind::config_error, "ambient must be an object");
  AmbientSpec s;
  s.family = detail::parse_family(get<std::string>(j, "family", w));
  switch (s.family) {
    case Family::integers:
      detail::check_keys(j, {"family", "n", "depth"}, w);
      s.n = get<Coord>(j, "n", w);
      s.depth = get_or<int>(j, "depth", 2, w);
      break;
    case Family::quadratic:
      detail::check_keys(j, {"family", "d", "target"}, w);
      s.d = get<Coord>(j, "d", w);
      for (const auto& g : get<nlohmann::json>(j, "target", w)) {
        if (g.is_number_integer()) s.quadratic_gens.push_back({g.get<Coord>(), 0});
        else {
          require(g.is_array() && g.size() == 2, ErrorKind::config_error,
                  "quadratic target entries are integers or [a, b] for a + b*sqrt(d)");
          s.quadratic_gens.push_back({g[0].get<Coord>(), g[1].get<Coord>()});
        }
      }
      break;
    case Family::gf_poly:
      detail::check_keys(j, {"family", "q", "f"}, w);
      s.q = get<Coord>(j, "q", w);
      s.poly = get<std::vector<Coord>>(j, "f", w);
      break;
    case Family::cusp:
      detail::check_keys(j, {"family", "q", "target", "target_exponents", "N"}, w);
      s.q = get<Coord>(j, "q", w);
      s.truncation = get_or<int>(j, "N", 0, w);
      if (j.contains("target")) s.poly_gens = get<std::vector<std::vector<Coord>>>(j, "target", w);
      for (int e : get_or<std::vector<int>>(j, "target_exponents", {}, w)) s.poly_gens.push_back(detail::monomial(e));
      require(!s.poly_gens.empty(), ErrorKind::config_error, "cusp ambient needs 'target' or 'target_exponents'");
      break;
    case Family::zx_ideal:
      detail::check_keys(j, {"family", "p", "n", "c", "g"}, w);
      if (j.contains("c")) {
        s.c = get<Coord>(j, "c", w);
        s.poly = get<std::vector<Coord>>(j, "g", w);
      } else {
        s.p = get<Coord>(j, "p", w);
        s.n = get_or<Coord>(j, "n", 2, w);
      }
      break;
    case Family::dedekind_poly:
      detail::check_keys(j, {"family", "p", "f", "n"}, w);
      s.p = get<Coord>(j, "p", w);
      s.poly = get<std::vector<Coord>>(j, "f", w);
      s.exponent = get_or<int>(j, "n", 1, w);
      break;
    case Family::dplusm: {
      detail::check_keys(j, {"family", "p", "k_D", "k_K", "N", "level", "target"}, w);
      s.p = get<Coord>(j, "p", w);
      s.k_d = get_or<int>(j, "k_D", 1, w);
      s.k_k = get_or<int>(j, "k_K", 2, w);
      s.truncation = get_or<int>(j, "N", 6, w);
      s.level = get_or<int>(j, "level", 0, w);
      std::string t = get_or<std::string>(j, "target", "V", w);
      require(t == "V" || t == "R", ErrorKind::config_error, "dplusm target must be \"V\" or \"R\"");
      s.dplusm_kind = t == "V" ? DplusMTarget::power_of_v : DplusMTarget::power_of_r;
      break;
    }
    case Family::raw:
      detail::check_keys(j, {"family", "ring", "target", "label"}, w);
      s.ring = detail::parse_ring(get<nlohmann::json>(j, "ring", w), "ambient.ring");
      s.raw_gens = detail::parse_elements(get<nlohmann::json>(j, "target", w), "ambient.target");
      s.label = get_or<std::string>(j, "label", "", w);
      break;
  }
  return s;
}

inline RunConfig parse_run_config(const nlohmann::json& j) {
  using detail::get_or;
  RunConfig cfg;
  if (j.is_object() && j.contains("family")) {
    cfg.ambient = parse_ambient_spec(j);
    return cfg;
  }
  const std::string w = "config";
  detail::check_keys(j, {"ambient", "command", "seed", "max_ring_size", "output", "report_path"}, w);
  if (j.contains("ambient")) cfg.ambient = parse_ambient_spec(j.at("ambient"));
  cfg.command = get_or<std::string>(j, "command", "", w);
  cfg.seed = get_or<std::uint64_t>(j, "seed", 0, w);
  cfg.max_ring_size = get_or<std::uint64_t>(j, "max_ring_size", cfg.max_ring_size, w);
  require(cfg.max_ring_size > 0, ErrorKind::config_error, "max_ring_size must be positive");
  std::string out = get_or<std::string>(j, "output", "table", w);
  require(out == "table" || out == "json", ErrorKind::config_error, "output must be \"table\" or \"json\"");
  cfg.json = out == "json";
  cfg.report_path = get_or<std::string>(j, "report_path", "", w);
  return cfg;
}

inline RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), ErrorKind::config_error, "cannot open " + path);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in, nullptr, true, true);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::config_error, path + ": " + e.what());
  }
  return parse_run_config(j);
}

}  // namespace molfact
