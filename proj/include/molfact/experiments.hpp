#pragma once

// Named experiments over the shipped ambient families. Each returns plain
// data plus a `passed` verdict for the expectation it checks.

#include <map>
#include <set>
#include <string>
#include <vector>

#include "molfact/constructions.hpp"

namespace molfact {

// ---------------------------------------------------------------------------
// Integers: unique factorization into prime molecules.

struct IntegerCase {
  Coord n = 0;
  Ambient ambient;
  MolecularizationReport report;
  bool molecules_prime = true;
  bool passed() const { return report.finite && report.factorizations.size() == 1 && molecules_prime; }
};

inline IntegerCase integer_case(Coord n) {
  IntegerCase c{n, build_integers(n), {}, true};
  c.report = molecularizations(c.ambient);
  for (const auto& m : c.report.census.molecules) c.molecules_prime = c.molecules_prime && is_prime(m);
  return c;
}

// ---------------------------------------------------------------------------
// Cusp: the ideals (X^2 + bX^3, X^4).

struct CuspLinesResult {
  Coord q = 0;
  Ambient ambient;
  std::size_t overideals = 0;
  std::vector<Ideal> lines;  // distinct, canonical order
  std::size_t line_candidates = 0;
  bool all_contain_target = true;
  bool all_enumerated = true;
  bool passed() const {
    return lines.size() == static_cast<std::size_t>(q) && all_contain_target && all_enumerated;
  }
};

inline CuspLinesResult cusp_lines_experiment(Coord q) {
  auto fam = cusp_lines(q);
  CuspLinesResult r;
  r.q = q;
  r.ambient = fam.ambient;
  r.line_candidates = fam.lines.size();
  auto overs = enumerate_overideals(fam.ambient.target);
  r.overideals = overs.size();
  std::set<Ideal> distinct(fam.lines.begin(), fam.lines.end());
  r.lines.assign(distinct.begin(), distinct.end());
  for (const auto& l : r.lines) {
    r.all_contain_target = r.all_contain_target && l.contains(fam.ambient.target);
    r.all_enumerated = r.all_enumerated && std::binary_search(overs.begin(), overs.end(), l);
  }
  return r;
}

// ---------------------------------------------------------------------------
// (X^2, p^2) in Z[X].

struct ZxMoleculeResult {
  Coord p = 0;
  Ambient ambient;
  bool molecule = false;
  bool primary = false;
  bool prime = false;
  Ideal radical;
  bool colon_is_square = false;  // (P : M) = M^2 with M = (X, p)
  bool passed() const { return molecule && primary && !prime && colon_is_square; }
};

inline ZxMoleculeResult zx_square_molecule(Coord p) {
  ZxMoleculeResult r;
  r.p = p;
  r.ambient = build_zx_ideal(p, 2);
  const Ideal& P = r.ambient.target;
  const Quotient& cover = *r.ambient.cover;
  const FiniteRing& src = *cover.projection.source;
  Coords x = src.zero();
  x[1] = 1;  // X in (Z/p^4)[X]/(X^4)
  Ideal m = ideal_generated(r.ambient.ring, {cover.project(x), r.ambient.ring->from_integer(p)});
  r.molecule = is_molecule(P);
  r.primary = is_primary(P);
  r.prime = is_prime(P);
  r.radical = radical(P);
  r.colon_is_square = colon(P, m) == ideal_product(m, m) && r.radical == m;
  return r;
}

// ---------------------------------------------------------------------------
// Z[X] targets of the form (p, f^n), and the reducible counterexample.

struct ZxTwoGeneratorCase {
  std::string name;
  Ambient ambient;
  bool molecule = false;
  /// For compound targets: the expected pair, its product and properness.
  std::vector<std::string> witness_names;
  std::vector<Ideal> witness;
  bool witness_holds = false;
};

struct ZxTwoGeneratorResult {
  ZxTwoGeneratorCase molecule_case;  // (2, X^2)
  ZxTwoGeneratorCase compound_case;  // (2, X^2 + X) = (2, X)(2, X + 1)
  bool passed() const {
    return molecule_case.molecule && !compound_case.molecule && compound_case.witness_holds;
  }
};

inline ZxTwoGeneratorResult zx_two_generator_experiment() {
  ZxTwoGeneratorResult r;
  r.molecule_case.name = "(2, X^2)";
  r.molecule_case.ambient = build_dedekind_poly(2, {0, 1}, 2);
  r.molecule_case.molecule = is_molecule(r.molecule_case.ambient.target);

  auto& c = r.compound_case;
  c.name = "(2, X^2 + X)";
  c.ambient = build_zx_two_generator(2, {0, 1, 1});
  c.molecule = is_molecule(c.ambient.target);
  const Quotient& cover = *c.ambient.cover;
  const FiniteRing& src = *cover.projection.source;
  auto lin = [&](Coord c0) {
    Coords v = src.zero();
    v[0] = c0;
    v[1] = 1;
    return cover.project(v);
  };
  const RingPtr& a = c.ambient.ring;
  c.witness_names = {"(2, X)", "(2, X + 1)"};
  c.witness = {ideal_generated(a, {a->from_integer(2), lin(0)}), ideal_generated(a, {a->from_integer(2), lin(1)})};
  c.witness_holds = c.witness[0].is_proper() && c.witness[1].is_proper() &&
                    ideal_product(c.witness[0], c.witness[1]) == c.ambient.target;
  return r;
}

// ---------------------------------------------------------------------------
// D + M: every ideal containing t^m V is R or t^n F + t^(n+1) V.

/// Nonzero D-subspaces of K, each as the sorted list of its elements.
inline std::vector<std::vector<Coords>> nonzero_subspaces(const DplusMModel& m) {
  const FiniteRing& k = *m.field;
  std::vector<Coords> scalars;
  m.small->for_each_element([&](const Coords& d) { scalars.push_back(m.embedding.apply(d)); });
  auto close = [&](std::vector<Coords> gens) {
    std::set<Coords> span{k.zero()};
    bool grew = true;
    for (const auto& g : gens)
      for (const auto& s : scalars) span.insert(k.mul(s, g));
    while (grew) {
      grew = false;
      std::vector<Coords> cur(span.begin(), span.end());
      for (const auto& x : cur)
        for (const auto& y : cur)
          if (span.insert(k.add(x, y)).second) grew = true;
    }
    return std::vector<Coords>(span.begin(), span.end());
  };
  std::set<std::vector<Coords>> found;
  std::vector<std::vector<Coords>> frontier;
  k.for_each_element([&](const Coords& x) {
    if (k.is_zero(x)) return;
    auto s = close({x});
    if (found.insert(s).second) frontier.push_back(s);
  });
  std::vector<Coords> elems;
  k.for_each_element([&](const Coords& x) { elems.push_back(x); });
  while (!frontier.empty()) {
    auto s = frontier.back();
    frontier.pop_back();
    for (const auto& x : elems) {
      if (std::binary_search(s.begin(), s.end(), x)) continue;
      auto gens = s;
      gens.push_back(x);
      auto t = close(gens);
      if (found.insert(t).second) frontier.push_back(t);
    }
  }
  return {found.begin(), found.end()};
}

struct DplusMIdeal {
  Ideal ideal;
  int level = 0;                // 0 for R itself
  std::vector<Coords> leading;  // F, as an F_p-basis of t^level blocks
  bool matches = false;         // equals t^level F + t^(level+1) V
  bool molecule = false;
};

struct DplusMResult {
  Ambient ambient;
  int target_level = 0;
  std::size_t subspaces = 0;  // nonzero D-subspaces of K
  std::vector<DplusMIdeal> ideals;
  std::map<int, std::size_t> per_level;
  bool all_match = true;
  bool levels_match = true;
  bool level_one_molecules = true;
  bool passed() const { return all_match && levels_match && level_one_molecules; }
};

inline DplusMResult dplusm_classification(Coord p = 2, int kd = 1, int kk = 2, int truncation = 6) {
  DplusMResult r;
  r.ambient = build_dplusm(p, kd, kk, truncation);
  r.target_level = truncation / 2;
  DplusMModel model = dplusm_model(p, kd, kk, truncation);
  r.subspaces = nonzero_subspaces(model).size();
  const Subring& sub = *r.ambient.subring;
  const FiniteRing& v = *sub.inclusion.target;
  const std::size_t kr = model.field->rank();

  for (const auto& j : enumerate_overideals(r.ambient.target)) {
    DplusMIdeal e;
    e.ideal = j;
    if (j.is_full()) {
      e.matches = true;
      r.ideals.push_back(std::move(e));
      continue;
    }
    std::vector<Coords> vg;
    for (const auto& g : j.generators()) vg.push_back(sub.inclusion.apply(g));
    int n = truncation;
    for (const auto& x : vg) n = std::min(n, model.valuation(x));
    e.level = n;
    ZmodMatrix lead(p, kr);
    for (const auto& x : vg) {
      Coords block(x.begin() + static_cast<std::ptrdiff_t>(n * kr), x.begin() + static_cast<std::ptrdiff_t>((n + 1) * kr));
      lead.append_row(block);
    }
    lead = howell_form(lead);
    std::vector<Coords> cand;
    for (std::size_t i = 0; i < lead.rows(); ++i) {
      Coords x = v.zero();
      for (std::size_t b = 0; b < kr; ++b) x[n * kr + b] = lead.at(i, b);
      cand.push_back(sub.to_subring(x));
      e.leading.emplace_back(lead.row(i).begin(), lead.row(i).end());
    }
    for (int t = n + 1; t < truncation; ++t)
      for (std::size_t b = 0; b < kr; ++b) cand.push_back(sub.to_subring(model.v_element(b, t)));
    e.matches = Ideal::from_additive_span(r.ambient.ring, cand) == j;
    e.molecule = is_molecule(j);
    r.all_match = r.all_match && e.matches;
    ++r.per_level[n];
    if (n == 1) r.level_one_molecules = r.level_one_molecules && e.molecule;
    r.ideals.push_back(std::move(e));
  }
  for (int n = 1; n < r.target_level; ++n)
    r.levels_match = r.levels_match && r.per_level[n] == r.subspaces;
  r.levels_match = r.levels_match && r.per_level[r.target_level] == 1;
  return r;
}

// ---------------------------------------------------------------------------
// Imaginary quadratic orders, target (n).

struct QuadraticResult {
  Coord d = 0;
  Coord n = 0;
  Ambient ambient;
  MolecularizationReport report;
  bool molecules_prime = true;
  bool passed() const { return report.finite && report.factorizations.size() == 1 && molecules_prime; }
};

inline QuadraticResult quadratic_experiment(Coord d, Coord n) {
  QuadraticResult r;
  r.d = d;
  r.n = n;
  r.ambient = build_quadratic(d, {{n, 0}});
  r.report = molecularizations(r.ambient);
  for (const auto& m : r.report.census.molecules) r.molecules_prime = r.molecules_prime && is_prime(m);
  return r;
}

}  // namespace molfact
