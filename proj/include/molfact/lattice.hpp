#pragma once

// The lattice of ideals of a finite ring: over-ideal enumeration, structural
// predicates, radicals and the decomposition into local factors.

#include <algorithm>
#include <deque>
#include <unordered_set>
#include <vector>

#include "molfact/ideal.hpp"

namespace molfact {

/// Quotients up to this size are examined element by element; larger ones go
/// through their maximal ideals.
inline constexpr std::uint64_t kScanThreshold = std::uint64_t{1} << 12;

/// One representative per coset of R/I (zero first).
inline std::vector<Coords> coset_representatives(const Ideal& ideal) {
  check_size_guard(ideal.index(), "quotient " + ideal.ring()->label() + " / " + ideal.to_string());
  if (ideal.is_full()) return {ideal.ring()->zero()};
  Quotient q = quotient_by_ideal(ideal);
  std::vector<Coords> reps;
  q.ring->for_each_element([&](const Coords& y) { reps.push_back(q.lift(y)); });
  return reps;
}

/// All ideals J ⊇ I, sorted canonically. Breadth-first: every over-ideal is a
/// finite sum of I with principal ideals (x), x ranging over R/I.
inline std::vector<Ideal> enumerate_overideals(const Ideal& base) {
  if (base.is_full()) return {base};
  auto reps = coset_representatives(base);

  std::vector<Ideal> principals;
  std::unordered_set<Ideal, IdealHash> seen_principal;
  for (const auto& x : reps) {
    if (base.contains(x)) continue;
    Ideal p = ideal_extend(base, x);
    if (seen_principal.insert(p).second) principals.push_back(std::move(p));
  }
  std::sort(principals.begin(), principals.end());

  std::unordered_set<Ideal, IdealHash> seen{base};
  std::vector<Ideal> out{base};
  std::deque<Ideal> queue{base};
  while (!queue.empty()) {
    Ideal j = std::move(queue.front());
    queue.pop_front();
    for (const auto& p : principals) {
      if (j.contains(p)) continue;
      Ideal k = ideal_sum(j, p);
      if (seen.insert(k).second) {
        out.push_back(k);
        queue.push_back(std::move(k));
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline std::vector<Ideal> all_ideals(const RingPtr& r) { return enumerate_overideals(zero_ideal(r)); }

/// Nilradical. For each prime p dividing the characteristic, B = R/pR is an
/// F_p-algebra on which x -> x^(p^t) is F_p-linear; for p^t >= dim B its
/// kernel is exactly the nilradical of B. The nilradical of R is the
/// intersection of the preimages over all such p.
inline Ideal nilradical(const RingPtr& r) {
  Ideal result = unit_ideal(r);
  for (Coord p : prime_divisors(r->characteristic())) {
    Quotient b = quotient_by_ideal(ideal_generated(r, {r->from_integer(p)}));
    const FiniteRing& ring_b = *b.ring;
    const std::size_t dim = ring_b.rank();
    std::uint64_t e = static_cast<std::uint64_t>(p);
    while (e < dim) e *= static_cast<std::uint64_t>(p);
    ZmodMatrix graph(p, 2 * dim);
    for (std::size_t i = 0; i < dim; ++i) {
      Coords row = ring_b.pow(ring_b.basis(i), e);
      row.resize(2 * dim, 0);
      row[dim + i] = 1;
      graph.append_row(row);
    }
    ZmodMatrix kernel = howell_tail(howell_form(graph), dim);
    std::vector<Coords> gens;
    for (std::size_t i = 0; i < kernel.rows(); ++i) gens.emplace_back(kernel.row(i).begin(), kernel.row(i).end());
    result = ideal_intersection(result, b.preimage(Ideal::from_additive_span(b.ring, gens)));
  }
  return result;
}

/// Maximal ideals, found among the over-ideals of the nilradical (every
/// maximal ideal contains it).
inline std::vector<Ideal> maximal_ideals(const RingPtr& r) {
  auto overs = enumerate_overideals(nilradical(r));
  std::vector<Ideal> out;
  for (const auto& m : overs) {
    if (m.is_full()) continue;
    bool maximal = true;
    for (const auto& k : overs) {
      if (k.is_full() || k == m) continue;
      if (k.contains(m)) {
        maximal = false;
        break;
      }
    }
    if (maximal) out.push_back(m);
  }
  return out;
}

inline bool is_proper(const Ideal& i) { return i.is_proper(); }

inline bool is_idempotent(const Ideal& i) { return ideal_product(i, i) == i; }

inline bool is_maximal(const Ideal& i, std::uint64_t scan_threshold = kScanThreshold) {
  if (i.is_full()) return false;
  Quotient q = quotient_by_ideal(i);
  if (q.ring->size() <= scan_threshold) {
    bool field = true;
    q.ring->for_each_element([&](const Coords& x) {
      if (field && !q.ring->is_zero(x) && !q.ring->is_unit(x)) field = false;
    });
    return field;
  }
  auto maxes = maximal_ideals(q.ring);
  return maxes.size() == 1 && maxes.front().is_zero();
}

/// Prime iff R/I has no zero divisors. Small quotients are checked by an
/// exhaustive pair scan; larger ones by maximality (finite domains are fields).
inline bool is_prime(const Ideal& i, std::uint64_t scan_threshold = kScanThreshold) {
  if (i.is_full()) return false;
  Quotient q = quotient_by_ideal(i);
  const FiniteRing& qr = *q.ring;
  if (qr.size() > scan_threshold) return is_maximal(i, scan_threshold);
  std::vector<Coords> elems;
  qr.for_each_element([&](const Coords& x) {
    if (!qr.is_zero(x)) elems.push_back(x);
  });
  for (std::size_t a = 0; a < elems.size(); ++a)
    for (std::size_t b = a; b < elems.size(); ++b)
      if (qr.is_zero(qr.mul(elems[a], elems[b]))) return false;
  return true;
}

/// Primary iff every zero divisor of R/I is nilpotent (equivalently R/I is local).
inline bool is_primary(const Ideal& i, std::uint64_t scan_threshold = kScanThreshold) {
  if (i.is_full()) return false;
  Quotient q = quotient_by_ideal(i);
  const FiniteRing& qr = *q.ring;
  if (qr.size() > scan_threshold) return maximal_ideals(q.ring).size() == 1;
  bool primary = true;
  qr.for_each_element([&](const Coords& x) {
    if (primary && !qr.is_unit(x) && !qr.is_nilpotent(x)) primary = false;
  });
  return primary;
}

/// Preimage of the nilradical of R/I.
inline Ideal radical(const Ideal& i) {
  if (i.is_full()) return i;
  Quotient q = quotient_by_ideal(i);
  return q.preimage(nilradical(q.ring));
}

struct LocalFactor {
  RingPtr factor;
  RingHom projection;
  /// The maximal ideal of R this factor localizes at.
  Ideal maximal;
  /// Kernel of the projection, the stable power M^∞.
  Ideal kernel;
};

/// R ≅ Π R/M_i^∞ over the maximal ideals M_i.
inline std::vector<LocalFactor> local_decomposition(const RingPtr& r) {
  std::vector<LocalFactor> out;
  std::uint64_t product = 1;
  for (const auto& m : maximal_ideals(r)) {
    Ideal power = m;
    while (true) {
      Ideal next = ideal_product(power, m);
      if (next == power) break;
      power = std::move(next);
    }
    Quotient q = quotient_by_ideal(power);
    product = saturating_mul(product, q.ring->size());
    out.push_back({q.ring, q.projection, m, power});
  }
  require(product == r->size(), ErrorKind::precondition_violation,
          "local factors do not multiply to |R| for " + r->label());
  return out;
}

}  // namespace molfact
