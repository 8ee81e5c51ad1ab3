#pragma once

// Runs the factorization engine and the pair-splitting oracle on the same
// target and compares molecule flags and factorization multisets.

#include <string>

#include "molfact/molecularize.hpp"
#include "oracle.hpp"

namespace oracle {

struct Comparison {
  bool agree = true;
  std::string detail;
  std::size_t lattice = 0;
  std::size_t factorizations = 0;
};

inline oracle::ElementSet element_set(ElementRing& er, const molfact::Ideal& i) {
  std::vector<std::size_t> gens;
  for (const auto& g : i.ideal_generators()) gens.push_back(er.index(g));
  return er.generated(gens);
}

inline Comparison compare(const molfact::Ideal& target) {
  Comparison c;
  auto fail = [&](std::string why) {
    if (c.agree) c.detail = std::move(why);
    c.agree = false;
  };
  ElementRing er(*target.ring());
  std::vector<std::size_t> gens;
  for (const auto& g : target.ideal_generators()) gens.push_back(er.index(g));
  PairSplitter ps(er, overideals(er, gens));
  const Lattice& l = ps.lattice();
  c.lattice = l.ideals.size();
  if (count(l.ideals[0]) != target.size()) fail("target size differs");

  molfact::FactorizationEngine engine(target);
  const auto& lat = engine.lattice();
  if (lat.size() != l.ideals.size()) fail("lattice sizes differ");
  std::vector<std::size_t> to_oracle(lat.size());
  for (std::size_t k = 0; k < lat.size(); ++k) {
    auto it = l.index.find(element_set(er, lat[k]));
    if (it == l.index.end()) {
      fail("engine ideal missing from oracle lattice: " + lat[k].to_string());
      return c;
    }
    to_oracle[k] = it->second;
    if (lat[k].is_proper() && engine.is_molecule(k) != ps.is_molecule(it->second))
      fail("molecule flag differs for " + lat[k].to_string());
  }

  const Factorizations& expected = ps.factor(0);
  auto report = engine.molecularizations();
  if (report.finite != expected.finite) fail("finiteness differs");
  std::set<Multiset> got;
  for (const auto& f : report.factorizations) {
    Multiset m;
    for (const auto& j : f) m.push_back(l.index.at(element_set(er, j)));
    std::sort(m.begin(), m.end());
    if (!got.insert(m).second) fail("engine produced a duplicate multiset");
  }
  if (expected.finite && got != expected.all) fail("factorization sets differ");
  if (!expected.finite && !got.empty()) fail("infinite case should report no factorizations");
  c.factorizations = got.size();
  return c;
}

}  // namespace oracle
