#pragma once

// Ideals of a FiniteRing, stored as the Howell form of their additive group
// inside (Z/m)^n. Two ideals are equal iff their matrices are identical.

#include <compare>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "molfact/ring.hpp"
#include "molfact/zmod_matrix.hpp"

namespace molfact {

class Ideal {
 public:
  Ideal() = default;

  /// The additive span of `generators`, which the caller asserts is already an ideal.
  static Ideal from_additive_span(RingPtr ring, const std::vector<Coords>& generators) {
    ZmodMatrix rows(ring->characteristic(), ring->rank());
    for (const auto& g : generators) rows.append_row(ring->embed(g));
    return Ideal(std::move(ring), howell_form(rows));
  }

  const RingPtr& ring() const { return ring_; }
  const ZmodMatrix& matrix() const { return matrix_; }

  /// Additive generators as ring elements (the canonical rows).
  std::vector<Coords> generators() const {
    std::vector<Coords> out;
    for (std::size_t r = 0; r < matrix_.rows(); ++r) out.push_back(ring_->unembed(matrix_.row(r)));
    return out;
  }

  std::uint64_t size() const { return howell_module_size(matrix_); }
  /// |R / I|.
  std::uint64_t index() const { return ring_->size() / size(); }
  bool is_zero() const { return matrix_.rows() == 0; }
  bool is_full() const { return contains(ring_->one()); }
  bool is_proper() const { return !is_full(); }

  bool contains(const Coords& x) const { return howell_contains(matrix_, ring_->embed(x)); }
  bool contains(const Ideal& other) const {
    check_same(other);
    for (std::size_t r = 0; r < other.matrix_.rows(); ++r)
      if (!howell_contains(matrix_, other.matrix_.row(r))) return false;
    return true;
  }

  void check_same(const Ideal& other) const {
    require(ring_ && other.ring_ && ring_->same_ring(*other.ring_), ErrorKind::ring_mismatch,
            "ideals belong to different rings");
  }

  /// Ideal generators chosen greedily from low to high trailing basis index,
  /// each kept only if the ideal generated by the earlier ones misses it.
  std::vector<Coords> ideal_generators() const {
    const FiniteRing& r = *ring_;
    ZmodMatrix span(r.characteristic(), r.rank());
    std::vector<Coords> kept;
    for (const auto& row : trailing_pivot_rows(matrix_)) {
      if (howell_contains(span, row)) continue;
      Coords g = r.unembed(row);
      for (std::size_t i = 0; i < r.rank(); ++i) span.append_row(r.embed(r.mul(g, r.basis(i))));
      span = howell_form(span);
      kept.push_back(std::move(g));
    }
    return kept;
  }

  /// Human-readable ideal generators, e.g. "(4, X^2)".
  std::string to_string() const {
    if (is_zero()) return "(0)";
    std::string s = "(";
    auto gens = ideal_generators();
    for (std::size_t i = 0; i < gens.size(); ++i) s += (i ? ", " : "") + ring_->format(gens[i]);
    return s + ")";
  }

  friend bool operator==(const Ideal& a, const Ideal& b) {
    return a.ring_->same_ring(*b.ring_) && a.matrix_ == b.matrix_;
  }
  friend std::strong_ordering operator<=>(const Ideal& a, const Ideal& b) {
    return a.matrix_ <=> b.matrix_;
  }

  std::size_t hash() const {
    std::size_t h = ring_->fingerprint();
    for (Coord c : matrix_.data()) h = h * 1000003u ^ static_cast<std::size_t>(c);
    return h ^ (matrix_.rows() << 1);
  }

 private:
  Ideal(RingPtr ring, ZmodMatrix m) : ring_(std::move(ring)), matrix_(std::move(m)) {}

  RingPtr ring_;
  ZmodMatrix matrix_;
};

struct IdealHash {
  std::size_t operator()(const Ideal& i) const { return i.hash(); }
};

/// Smallest ideal containing gens: the additive span of all g*e_i.
inline Ideal ideal_generated(const RingPtr& r, const std::vector<Coords>& gens) {
  std::vector<Coords> rows;
  for (const auto& g : gens) {
    require(g.size() == r->rank(), ErrorKind::ring_mismatch, "generator has wrong length");
    for (std::size_t i = 0; i < r->rank(); ++i) rows.push_back(r->mul(g, r->basis(i)));
  }
  return Ideal::from_additive_span(r, rows);
}

inline Ideal ideal_generated(const std::vector<RingElement>& gens, const RingPtr& r) {
  std::vector<Coords> raw;
  for (const auto& g : gens) {
    require(g.ring->same_ring(*r), ErrorKind::ring_mismatch, "generator from another ring");
    raw.push_back(g.coords);
  }
  return ideal_generated(r, raw);
}

inline Ideal zero_ideal(const RingPtr& r) { return Ideal::from_additive_span(r, {}); }
inline Ideal unit_ideal(const RingPtr& r) { return ideal_generated(r, {r->one()}); }

inline Ideal ideal_sum(const Ideal& a, const Ideal& b) {
  a.check_same(b);
  auto gens = a.generators();
  auto more = b.generators();
  gens.insert(gens.end(), more.begin(), more.end());
  return Ideal::from_additive_span(a.ring(), gens);
}

/// I + (x)
inline Ideal ideal_extend(const Ideal& a, const Coords& x) {
  const auto& r = a.ring();
  auto gens = a.generators();
  for (std::size_t i = 0; i < r->rank(); ++i) gens.push_back(r->mul(x, r->basis(i)));
  return Ideal::from_additive_span(r, gens);
}

inline Ideal ideal_product(const Ideal& a, const Ideal& b) {
  a.check_same(b);
  const auto& r = a.ring();
  auto ga = a.generators(), gb = b.generators();
  std::vector<Coords> rows;
  rows.reserve(ga.size() * gb.size());
  for (const auto& x : ga)
    for (const auto& y : gb) rows.push_back(r->mul(x, y));
  return Ideal::from_additive_span(r, rows);
}

inline Ideal ideal_power(const Ideal& a, unsigned e) {
  Ideal out = unit_ideal(a.ring());
  for (unsigned i = 0; i < e; ++i) out = ideal_product(out, a);
  return out;
}

/// I ∩ J from the vectors (x + y, x), x in I, y in J, whose first block vanishes.
inline Ideal ideal_intersection(const Ideal& a, const Ideal& b) {
  a.check_same(b);
  const auto& r = a.ring();
  const std::size_t n = r->rank();
  ZmodMatrix big(r->characteristic(), 2 * n);
  Coords row(2 * n);
  for (std::size_t i = 0; i < a.matrix().rows(); ++i) {
    auto x = a.matrix().row(i);
    std::copy(x.begin(), x.end(), row.begin());
    std::copy(x.begin(), x.end(), row.begin() + n);
    big.append_row(row);
  }
  std::fill(row.begin(), row.end(), 0);
  for (std::size_t i = 0; i < b.matrix().rows(); ++i) {
    auto y = b.matrix().row(i);
    std::copy(y.begin(), y.end(), row.begin());
    big.append_row(row);
  }
  ZmodMatrix tail = howell_tail(howell_form(big), n);
  std::vector<Coords> gens;
  for (std::size_t i = 0; i < tail.rows(); ++i) gens.push_back(r->unembed(tail.row(i)));
  return Ideal::from_additive_span(r, gens);
}

/// (I : s) = {x : x*s in I}, the preimage of I under multiplication by s.
inline Ideal colon_element(const Ideal& a, const Coords& s) {
  const auto& r = a.ring();
  const std::size_t n = r->rank();
  ZmodMatrix big(r->characteristic(), 2 * n);
  Coords row(2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    Coords img = r->embed(r->mul(r->basis(i), s));
    Coords e = r->embed(r->basis(i));
    std::copy(img.begin(), img.end(), row.begin());
    std::copy(e.begin(), e.end(), row.begin() + n);
    big.append_row(row);
  }
  std::fill(row.begin(), row.end(), 0);
  for (std::size_t i = 0; i < a.matrix().rows(); ++i) {
    auto x = a.matrix().row(i);
    std::copy(x.begin(), x.end(), row.begin());
    big.append_row(row);
  }
  ZmodMatrix tail = howell_tail(howell_form(big), n);
  std::vector<Coords> gens;
  for (std::size_t i = 0; i < tail.rows(); ++i) gens.push_back(r->unembed(tail.row(i)));
  return Ideal::from_additive_span(r, gens);
}

/// (I : J) = {x : xJ ⊆ I}, intersected over the additive generators of J.
inline Ideal colon(const Ideal& a, const Ideal& b) {
  a.check_same(b);
  Ideal out = unit_ideal(a.ring());
  for (const auto& s : b.generators()) {
    if (out == a) break;  // (I : J) always contains I
    out = ideal_intersection(out, colon_element(a, s));
  }
  return out;
}

/// Image of an ideal under a surjective homomorphism.
inline Ideal ideal_image(const RingHom& hom, const Ideal& a) {
  std::vector<Coords> gens;
  for (const auto& g : a.generators()) gens.push_back(hom.apply(g));
  return ideal_generated(hom.target, gens);
}

// ---------------------------------------------------------------------------
// Quotient rings.

/// R/I with the projection and a lift of each quotient basis element.
struct Quotient {
  RingPtr ring;
  RingHom projection;
  /// lifts[k] is an element of R projecting to basis element k of the quotient.
  std::vector<Coords> lifts;
  Ideal kernel;

  Coords project(const Coords& x) const { return projection.apply(x); }
  Coords lift(const Coords& y) const {
    const FiniteRing& src = *projection.source;
    Coords x = src.zero();
    for (std::size_t k = 0; k < y.size(); ++k)
      if (y[k] != 0) x = src.add(x, src.scale(lifts[k], y[k]));
    return x;
  }
  /// Preimage of an ideal of the quotient.
  Ideal preimage(const Ideal& j) const {
    auto gens = kernel.generators();
    for (const auto& g : j.generators()) gens.push_back(lift(g));
    return Ideal::from_additive_span(projection.source, gens);
  }
};

/// Quotient by an ideal. The additive group (⊕ Z/d_i)/I is diagonalized from the
/// relation matrix {d_i e_i} ∪ rows(I); components of order 1 are dropped.
inline Quotient quotient_by_ideal(const Ideal& ideal) {
  const RingPtr& r = ideal.ring();
  const Coord m = r->characteristic();
  const std::size_t n = r->rank();
  require(!ideal.is_full(), ErrorKind::precondition_violation,
          "quotient by the unit ideal is the zero ring");
  ZmodMatrix rel(m, n);
  for (std::size_t i = 0; i < n; ++i) {
    if (r->order(i) == m) continue;
    Coords row(n, 0);
    row[i] = r->order(i);
    rel.append_row(row);
  }
  for (const auto& g : ideal.generators()) rel.append_row(g);
  Diagonalization d = diagonalize(howell_form(rel));

  std::vector<std::size_t> kept;
  Presentation p;
  std::vector<Coords> lifts;
  for (std::size_t k = 0; k < n; ++k) {
    Coord ord = d.diag[k] == 0 ? m : d.diag[k];
    if (ord == 1) continue;
    kept.push_back(k);
    p.orders.push_back(ord);
    Coords l(d.v_inverse.row(k).begin(), d.v_inverse.row(k).end());
    r->reduce(l);
    lifts.push_back(std::move(l));
  }
  const std::vector<Coord> orders = p.orders;
  auto project = [&](const Coords& x) {
    Coords y = row_times(x, d.v);
    Coords out;
    for (std::size_t t = 0; t < kept.size(); ++t) out.push_back(mod(y[kept[t]], orders[t]));
    return out;
  };
  const std::size_t q = kept.size();
  for (std::size_t a = 0; a < q; ++a)
    for (std::size_t b = 0; b < q; ++b) p.structure.push_back(project(r->mul(lifts[a], lifts[b])));
  p.one = project(r->one());
  for (const auto& l : lifts) {
    std::string s = r->format(l);
    p.names.push_back(s.find(' ') != std::string::npos ? "(" + s + ")" : s);
  }
  p.label = r->label() + " / " + ideal.to_string();
  RingPtr qr = FiniteRing::create(std::move(p));
  RingHom proj{r, qr, {}};
  for (std::size_t i = 0; i < n; ++i) proj.images.push_back(project(r->basis(i)));
  return Quotient{qr, std::move(proj), std::move(lifts), ideal};
}

}  // namespace molfact
