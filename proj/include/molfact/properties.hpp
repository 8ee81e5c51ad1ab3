#pragma once

// Quantified laws checked over enumerated or sampled ideals. Failures are
// reported as data: each check records how many cases it examined and the
// first counterexample in canonical order.

#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "molfact/molecularize.hpp"

namespace molfact {

struct PropertyCheck {
  std::string name;
  std::size_t cases = 0;
  std::size_t violations = 0;
  std::string counterexample;

  bool passed() const { return violations == 0; }
};

struct PropertyReport {
  std::string subject;
  std::uint64_t seed = 0;
  std::size_t trials = 0;
  std::size_t universe = 0;
  std::vector<PropertyCheck> checks;
  /// Ideals D with a proper J ⊇ D and D·J = D. These are findings, not violations.
  std::vector<AbsorbingPair> absorbing;

  bool passed() const {
    for (const auto& c : checks)
      if (!c.passed()) return false;
    return true;
  }
  std::size_t violations() const {
    std::size_t v = 0;
    for (const auto& c : checks) v += c.violations;
    return v;
  }
};

/// Ring sizes up to this bound use every ideal of the ring as the comaximal
/// universe; larger rings use the target lattice plus sampled principal ideals.
inline constexpr std::uint64_t kExhaustiveRingSize = 4096;

namespace detail {

class CheckRecorder {
 public:
  explicit CheckRecorder(std::string name) { check_.name = std::move(name); }
  void pass() { ++check_.cases; }
  template <class Describe>
  void record(bool ok, Describe&& describe) {
    ++check_.cases;
    if (ok) return;
    if (check_.violations++ == 0) check_.counterexample = describe();
  }
  PropertyCheck done() { return std::move(check_); }

 private:
  PropertyCheck check_;
};

inline Coords random_element(const FiniteRing& r, std::mt19937_64& rng) {
  Coords x(r.rank());
  for (std::size_t i = 0; i < r.rank(); ++i)
    x[i] = static_cast<Coord>(rng() % static_cast<std::uint64_t>(r.order(i)));
  return x;
}

using Describe = std::function<std::string(const Ideal&)>;

struct SuiteInput {
  RingPtr ring;
  /// Nonzero ideals the laws quantify over (all contain the target, if any).
  std::vector<Ideal> universe;
  /// Ideals used as comaximal factors.
  std::vector<Ideal> factors;
  /// Target with its census-level checks, when the suite runs on an ambient.
  std::optional<Ideal> target;
  bool dedekind = false;
  Describe describe;
};

inline void run_checks(const SuiteInput& in, std::mt19937_64& rng, std::size_t trials, PropertyReport& rep) {
  const auto& U = in.universe;
  const auto& show = in.describe;
  const RingPtr& r = in.ring;

  struct Facts {
    bool molecule = false, uc = true, prime = false, maximal = false, primary = false, idempotent = false;
  };
  std::vector<Facts> facts(U.size());
  for (std::size_t i = 0; i < U.size(); ++i) {
    if (U[i].is_full() || U[i].is_zero()) continue;
    FactorizationEngine e(U[i]);
    auto self = static_cast<std::size_t>(e.lattice().base_index());
    facts[i].molecule = e.is_molecule(self);
    auto uc = e.unit_cancellation(self);
    facts[i].uc = uc.holds;
    if (!uc.holds) rep.absorbing.push_back(*uc.witness);
    facts[i].prime = is_prime(U[i]);
    facts[i].maximal = is_maximal(U[i]);
    facts[i].primary = is_primary(U[i]);
    facts[i].idempotent = is_idempotent(U[i]);
  }
  auto proper = [&](std::size_t i) { return !U[i].is_full() && !U[i].is_zero(); };

  {
    // Molecule iff unit-cancellative and every I = JK has J = I or K = I.
    CheckRecorder c("molecule-characterization");
    for (std::size_t i = 0; i < U.size(); ++i) {
      if (!proper(i)) continue;
      auto overs = enumerate_overideals(U[i]);
      bool trivial_only = true;
      for (std::size_t a = 0; a < overs.size() && trivial_only; ++a)
        for (std::size_t b = a; b < overs.size() && trivial_only; ++b)
          if (ideal_product(overs[a], overs[b]) == U[i] && overs[a] != U[i] && overs[b] != U[i])
            trivial_only = false;
      bool rhs = facts[i].uc && trivial_only;
      c.record(facts[i].molecule == rhs, [&] { return show(U[i]) + ": molecule verdict disagrees"; });
    }
    rep.checks.push_back(c.done());
  }
  {
    CheckRecorder c("prime-unit-cancellative-molecule");
    for (std::size_t i = 0; i < U.size(); ++i) {
      if (!proper(i) || !facts[i].prime || !facts[i].uc) continue;
      c.record(facts[i].molecule, [&] { return show(U[i]) + " is prime and unit-cancellative but compound"; });
    }
    rep.checks.push_back(c.done());
  }
  {
    CheckRecorder c("maximal-molecule-iff-not-idempotent");
    for (std::size_t i = 0; i < U.size(); ++i) {
      if (!proper(i) || !facts[i].maximal) continue;
      c.record(facts[i].molecule == !facts[i].idempotent, [&] { return show(U[i]); });
    }
    rep.checks.push_back(c.done());
  }
  {
    CheckRecorder c("prime-iff-maximal");
    for (std::size_t i = 0; i < U.size(); ++i) {
      if (!proper(i)) continue;
      c.record(facts[i].prime == facts[i].maximal, [&] { return show(U[i]); });
    }
    rep.checks.push_back(c.done());
  }
  {
    CheckRecorder c("molecules-primary");
    for (std::size_t i = 0; i < U.size(); ++i) {
      if (!proper(i) || !facts[i].molecule) continue;
      c.record(facts[i].primary, [&] { return show(U[i]) + " is a molecule but not primary"; });
    }
    rep.checks.push_back(c.done());
  }
  {
    // Pairwise-comaximal J1..Jn with product inside a molecule I: some Ji ⊆ I.
    CheckRecorder pairs("comaximal-pairs"), triples("comaximal-triples");
    const auto& F = in.factors;
    const Ideal one = unit_ideal(r);
    std::vector<std::pair<std::size_t, std::size_t>> comax;
    for (std::size_t a = 0; a < F.size(); ++a)
      for (std::size_t b = a + 1; b < F.size(); ++b)
        if (!F[a].is_full() && !F[b].is_full() && ideal_sum(F[a], F[b]) == one) comax.emplace_back(a, b);
    for (std::size_t i = 0; i < U.size(); ++i) {
      if (!proper(i) || !facts[i].molecule) continue;
      const Ideal& I = U[i];
      for (auto [a, b] : comax) {
        if (!I.contains(ideal_product(F[a], F[b]))) continue;
        pairs.record(I.contains(F[a]) || I.contains(F[b]),
                     [&] { return show(I) + " with " + show(F[a]) + ", " + show(F[b]); });
      }
      for (auto [a, b] : comax)
        for (std::size_t cidx = b + 1; cidx < F.size(); ++cidx) {
          if (F[cidx].is_full() || ideal_sum(F[a], F[cidx]) != one || ideal_sum(F[b], F[cidx]) != one) continue;
          if (!I.contains(ideal_product(ideal_product(F[a], F[b]), F[cidx]))) continue;
          triples.record(I.contains(F[a]) || I.contains(F[b]) || I.contains(F[cidx]),
                         [&] { return show(I) + " with " + show(F[a]) + ", " + show(F[b]) + ", " + show(F[cidx]); });
        }
    }
    rep.checks.push_back(pairs.done());
    rep.checks.push_back(triples.done());
  }
  {
    // I·J ⊆ I ∩ J ⊆ I, J ⊆ I + J and J·(I:J) ⊆ I, on all pairs or a sample.
    CheckRecorder sandwich("lattice-sandwich"), colon_law("colon-product-inside");
    auto test = [&](const Ideal& a, const Ideal& b) {
      Ideal prod = ideal_product(a, b), meet = ideal_intersection(a, b), join = ideal_sum(a, b);
      bool ok = meet.contains(prod) && a.contains(meet) && b.contains(meet) && join.contains(a) && join.contains(b);
      sandwich.record(ok, [&] { return show(a) + ", " + show(b); });
      colon_law.record(a.contains(ideal_product(b, colon(a, b))), [&] { return show(a) + " : " + show(b); });
    };
    const auto& F = in.factors;
    if (F.size() * F.size() <= 4 * trials + 64) {
      for (const auto& a : F)
        for (const auto& b : F) test(a, b);
    } else {
      for (std::size_t t = 0; t < trials; ++t) test(F[rng() % F.size()], F[rng() % F.size()]);
    }
    rep.checks.push_back(sandwich.done());
    rep.checks.push_back(colon_law.done());
  }
  {
    // divides(J, I) agrees with a scan for K ⊇ I with J·K = I.
    CheckRecorder c("colon-divides-oracle");
    for (std::size_t i = 0; i < U.size(); ++i) {
      if (!proper(i)) continue;
      auto overs = enumerate_overideals(U[i]);
      for (const auto& j : overs) {
        bool scan = false;
        for (const auto& k : overs)
          if (ideal_product(j, k) == U[i]) {
            scan = true;
            break;
          }
        c.record(divides(j, U[i]) == scan, [&] { return show(j) + " | " + show(U[i]); });
      }
    }
    rep.checks.push_back(c.done());
  }

  if (!in.target) return;
  const Ideal& target = *in.target;
  auto report = molecularizations(target);
  {
    CheckRecorder c("descent-bound");
    const double bound = std::log2(static_cast<double>(target.index())) + 1e-9;
    for (const auto& f : report.factorizations) {
      Ideal prod = unit_ideal(r);
      bool molecules = true;
      for (const auto& m : f) {
        prod = ideal_product(prod, m);
        molecules = molecules && is_molecule(m);
      }
      c.record(prod == target && molecules && static_cast<double>(f.size()) <= bound,
               [&] { return "factorization of length " + std::to_string(f.size()) + " of " + show(target); });
    }
    rep.checks.push_back(c.done());
  }
  {
    CheckRecorder c("divisors-contain-target");
    for (const auto& d : report.census.divisors) c.record(d.contains(target), [&] { return show(d); });
    rep.checks.push_back(c.done());
  }
  {
    // Divisor and factorization counts multiply across local factors; molecule
    // counts add (an ideal with two proper components is compound).
    CheckRecorder c("local-census-multiplicativity");
    std::size_t divisors = 1, factorizations = 1, molecules = 0;
    for (const auto& lf : local_decomposition(r)) {
      Ideal img = ideal_image(lf.projection, target);
      if (img.is_full()) continue;
      auto sub = molecularizations(img);
      divisors *= sub.census.divisors.size();
      factorizations *= sub.factorizations.size();
      molecules += sub.census.molecules.size();
    }
    c.record(divisors == report.census.divisors.size() && molecules == report.census.molecules.size() &&
                 factorizations == report.factorizations.size(),
             [&] {
               return "local product " + std::to_string(divisors) + "/" + std::to_string(molecules) + "/" +
                      std::to_string(factorizations) + " vs global " +
                      std::to_string(report.census.divisors.size()) + "/" +
                      std::to_string(report.census.molecules.size()) + "/" +
                      std::to_string(report.factorizations.size());
             });
    rep.checks.push_back(c.done());
  }
  if (in.dedekind) {
    CheckRecorder c("dedekind-unique-prime-factorization");
    for (const auto& m : report.census.molecules) c.record(is_prime(m), [&] { return show(m) + " is not prime"; });
    c.record(report.factorizations.size() == 1, [&] {
      return std::to_string(report.factorizations.size()) + " molecularizations of " + show(target);
    });
    rep.checks.push_back(c.done());
  }
}

}  // namespace detail

/// Laws over every ideal of a raw finite ring.
inline PropertyReport property_suite(const RingPtr& ring, std::uint64_t seed = 0, std::size_t trials = 200) {
  PropertyReport rep;
  rep.subject = ring->label();
  rep.seed = seed;
  rep.trials = trials;
  std::mt19937_64 rng(seed);
  detail::SuiteInput in;
  in.ring = ring;
  for (auto& i : all_ideals(ring))
    if (!i.is_zero()) in.universe.push_back(i);
  in.factors = all_ideals(ring);
  in.describe = [](const Ideal& i) { return i.to_string(); };
  rep.universe = in.universe.size();
  detail::run_checks(in, rng, trials, rep);
  return rep;
}

inline bool is_dedekind_label(const std::string& label) {
  return label == "Z" || label.rfind("Z[sqrt(", 0) == 0;
}

/// Laws over the ideals containing the target of an ambient.
inline PropertyReport property_suite(const Ambient& amb, std::uint64_t seed = 0, std::size_t trials = 200) {
  PropertyReport rep;
  rep.subject = amb.label + " " + amb.describe(amb.target);
  rep.seed = seed;
  rep.trials = trials;
  std::mt19937_64 rng(seed);
  detail::SuiteInput in;
  in.ring = amb.ring;
  in.universe = enumerate_overideals(amb.target);
  in.target = amb.target;
  in.dedekind = amb.certified && is_dedekind_label(amb.label);
  in.describe = [&amb](const Ideal& i) { return amb.describe(i); };
  if (amb.ring->size() <= kExhaustiveRingSize) {
    in.factors = all_ideals(amb.ring);
  } else {
    std::set<Ideal> pool(in.universe.begin(), in.universe.end());
    for (std::size_t t = 0; t < trials; ++t)
      pool.insert(ideal_generated(amb.ring, {detail::random_element(*amb.ring, rng)}));
    in.factors.assign(pool.begin(), pool.end());
  }
  rep.universe = in.universe.size();
  detail::run_checks(in, rng, trials, rep);
  return rep;
}

}  // namespace molfact
