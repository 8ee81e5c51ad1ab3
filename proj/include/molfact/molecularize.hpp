#pragma once

// Divisibility, molecule certification, unit-cancellation and the complete
// enumeration of molecularizations of an ideal.
//
// Every search here only multiplies ideals that contain the ideal under study.
// In a certified ambient A = R/I0 with I0 ⊆ I^2 such products are computed
// exactly (JK ⊇ I^2 ⊇ I0), so lattice answers in A are answers about R.

#include <algorithm>
#include <cmath>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "molfact/lattice.hpp"

namespace molfact {

/// A certified finite model of a domain-level factorization problem.
struct Ambient {
  std::string label;
  RingPtr ring;
  Ideal target;
  /// True when the builder verified I0 ⊆ I^2 for the model A = R/I0.
  bool certified = false;
  std::string certificate;
  /// Present when A is realized as a subring of a larger finite ring.
  std::shared_ptr<const Subring> subring;
  /// Present when A is a quotient of a ring with more readable coordinates.
  std::shared_ptr<const Quotient> cover;

  /// Wraps a bare ring and ideal without any domain-level claim.
  static Ambient raw(std::string label, const Ideal& target) {
    return Ambient{std::move(label), target.ring(), target, false, "none (ring-level only)", nullptr, nullptr};
  }

  /// An element of A written in the variables of the domain.
  std::string format(const Coords& x) const {
    if (subring) return subring->inclusion.target->format(subring->inclusion.apply(x));
    if (cover) {
      const FiniteRing& src = *cover->projection.source;
      Coords v = src.embed(cover->lift(x));
      howell_reduce(cover->kernel.matrix(), v);
      return src.format(src.unembed(v));
    }
    return ring->format(x);
  }

  /// Ideal generators written in the variables of the domain. With a cover
  /// the generators are chosen upstairs, modulo the kernel.
  std::string describe(const Ideal& i) const {
    if (i.is_zero()) return "(0)";
    std::vector<std::string> parts;
    if (cover) {
      const FiniteRing& src = *cover->projection.source;
      ZmodMatrix span = cover->kernel.matrix();
      for (const auto& row : trailing_pivot_rows(cover->preimage(i).matrix())) {
        if (howell_contains(span, row)) continue;
        Coords g = src.unembed(row);
        for (std::size_t k = 0; k < src.rank(); ++k) span.append_row(src.embed(src.mul(g, src.basis(k))));
        span = howell_form(span);
        parts.push_back(src.format(g));
      }
    } else {
      for (const auto& g : i.ideal_generators()) parts.push_back(format(g));
    }
    std::string s = "(";
    for (std::size_t k = 0; k < parts.size(); ++k) s += (k ? ", " : "") + parts[k];
    return s + ")";
  }
};

/// Over-ideals of a base ideal with memoized pairwise products.
class OverIdealLattice {
 public:
  static constexpr int kOutside = -1;

  explicit OverIdealLattice(const Ideal& base)
      : base_(base), ideals_(enumerate_overideals(base)) {
    for (std::size_t i = 0; i < ideals_.size(); ++i) {
      if (ideals_[i].is_full()) full_ = static_cast<int>(i);
      if (ideals_[i] == base_) base_index_ = static_cast<int>(i);
    }
    products_.assign(ideals_.size() * ideals_.size(), kUnknown);
    contains_.assign(ideals_.size() * ideals_.size(), kUnknown);
  }

  const Ideal& base() const { return base_; }
  const std::vector<Ideal>& ideals() const { return ideals_; }
  std::size_t size() const { return ideals_.size(); }
  const Ideal& operator[](std::size_t i) const { return ideals_[i]; }
  int full_index() const { return full_; }
  int base_index() const { return base_index_; }

  int index_of(const Ideal& j) const {
    auto it = std::lower_bound(ideals_.begin(), ideals_.end(), j);
    if (it != ideals_.end() && *it == j) return static_cast<int>(it - ideals_.begin());
    return kOutside;
  }

  /// Index of ideals[a]*ideals[b] in the lattice, or kOutside when the product
  /// does not contain the base.
  int product(std::size_t a, std::size_t b) {
    if (a > b) std::swap(a, b);
    int& slot = products_[a * size() + b];
    if (slot == kUnknown) slot = index_of(ideal_product(ideals_[a], ideals_[b]));
    return slot;
  }

  bool contains(std::size_t outer, std::size_t inner) {
    int& slot = contains_[outer * size() + inner];
    if (slot == kUnknown) slot = ideals_[outer].contains(ideals_[inner]) ? 1 : 0;
    return slot == 1;
  }

 private:
  static constexpr int kUnknown = -2;

  Ideal base_;
  std::vector<Ideal> ideals_;
  int full_ = kOutside;
  int base_index_ = kOutside;
  std::vector<int> products_;
  std::vector<int> contains_;
};

namespace detail {
inline void require_nonzero_proper(const Ideal& i, const std::string& op) {
  require(!i.is_zero(), ErrorKind::precondition_violation, op + " is defined only for nonzero ideals");
  require(i.is_proper(), ErrorKind::precondition_violation, op + " is defined only for proper ideals");
}
}  // namespace detail

/// J divides I iff J·(I : J) = I. Divisors contain what they divide, so J ⊉ I
/// answers false.
inline bool divides(const Ideal& j, const Ideal& i) {
  j.check_same(i);
  if (!j.contains(i)) return false;
  return ideal_product(j, colon(i, j)) == i;
}

struct AbsorbingPair {
  Ideal ideal;     // D
  Ideal absorbed;  // proper J ⊇ D with D·J = D
};

struct UnitCancellation {
  bool holds = true;
  std::optional<AbsorbingPair> witness;
};

struct DivisorCensus {
  Ideal target;
  std::vector<Ideal> divisors;
  std::vector<Ideal> molecules;

  std::size_t divisor_count() const { return divisors.size(); }
  std::size_t molecule_count() const { return molecules.size(); }
};

struct MolecularizationReport {
  Ideal target;
  DivisorCensus census;
  /// Multisets of molecules with product equal to the target, each sorted canonically.
  std::vector<std::vector<Ideal>> factorizations;
  bool finite = true;
  bool unit_cancellative = true;
  /// floor(log2 |A / I|): no factorization can be longer.
  unsigned length_bound = 0;
  std::optional<AbsorbingPair> absorbing_witness;
};

/// Molecule, divisor and factorization analysis over the lattice of ideals
/// containing one target ideal.
class FactorizationEngine {
 public:
  explicit FactorizationEngine(const Ideal& target) : lattice_(target) {
    detail::require_nonzero_proper(target, "factorization analysis");
    const std::size_t n = lattice_.size();
    witness_.assign(n, std::nullopt);
    divides_.assign(n, -1);
    // J = A·B with A, B proper forces A, B ⊇ J ⊇ target, so one pass over
    // proper pairs of the lattice classifies every member.
    for (std::size_t a = 0; a < n; ++a) {
      if (static_cast<int>(a) == lattice_.full_index()) continue;
      for (std::size_t b = a; b < n; ++b) {
        if (static_cast<int>(b) == lattice_.full_index()) continue;
        int p = lattice_.product(a, b);
        if (p != OverIdealLattice::kOutside && !witness_[p]) witness_[p] = std::make_pair(a, b);
      }
    }
  }

  OverIdealLattice& lattice() { return lattice_; }
  const Ideal& target() const { return lattice_.base(); }

  bool is_molecule(std::size_t j) const {
    const Ideal& ideal = lattice_[j];
    if (ideal.is_zero() || ideal.is_full()) return false;
    return !witness_[j].has_value();
  }

  /// A pair of proper ideals whose product is lattice member j, if any.
  std::optional<std::pair<Ideal, Ideal>> factor_witness(std::size_t j) const {
    if (!witness_[j]) return std::nullopt;
    return std::make_pair(lattice_[witness_[j]->first], lattice_[witness_[j]->second]);
  }

  bool divides_target(std::size_t j) {
    if (divides_[j] < 0) divides_[j] = divides(lattice_[j], target()) ? 1 : 0;
    return divides_[j] == 1;
  }

  /// No proper J ⊇ D with D·J = D, for lattice member d.
  UnitCancellation unit_cancellation(std::size_t d) {
    for (std::size_t j = 0; j < lattice_.size(); ++j) {
      if (static_cast<int>(j) == lattice_.full_index()) continue;
      if (!lattice_.contains(j, d)) continue;
      if (lattice_.product(d, j) == static_cast<int>(d))
        return {false, AbsorbingPair{lattice_[d], lattice_[j]}};
    }
    return {};
  }

  DivisorCensus census() {
    DivisorCensus c{target(), {}, {}};
    for (std::size_t j = 0; j < lattice_.size(); ++j) {
      if (!divides_target(j)) continue;
      c.divisors.push_back(lattice_[j]);
      if (is_molecule(j)) c.molecules.push_back(lattice_[j]);
    }
    return c;
  }

  unsigned length_bound() const {
    return static_cast<unsigned>(std::floor(std::log2(static_cast<double>(target().index())) + 1e-9));
  }

  MolecularizationReport molecularizations() {
    MolecularizationReport report;
    report.target = target();
    report.census = census();
    report.length_bound = length_bound();
    const auto base = static_cast<std::size_t>(lattice_.base_index());
    auto own = unit_cancellation(base);
    report.unit_cancellative = own.holds;
    for (const auto& d : report.census.divisors) {
      auto uc = unit_cancellation(static_cast<std::size_t>(lattice_.index_of(d)));
      if (!uc.holds) {
        report.finite = false;
        report.absorbing_witness = uc.witness;
        return report;
      }
    }
    std::vector<std::size_t> molecules;
    for (const auto& m : report.census.molecules)
      molecules.push_back(static_cast<std::size_t>(lattice_.index_of(m)));
    std::vector<std::size_t> chosen;
    search(static_cast<std::size_t>(lattice_.full_index()), 0, molecules, chosen, report);
    return report;
  }

 private:
  // Partial products only shrink: P·M = P together with P | I would give
  // I·M = I, which unit-cancellation rules out. Each step at least doubles
  // |A/P|, which bounds the depth by length_bound().
  void search(std::size_t partial, std::size_t start, const std::vector<std::size_t>& molecules,
              std::vector<std::size_t>& chosen, MolecularizationReport& report) {
    const auto base = lattice_.base_index();
    for (std::size_t j = start; j < molecules.size(); ++j) {
      int next = lattice_.product(partial, molecules[j]);
      if (next == OverIdealLattice::kOutside) continue;
      chosen.push_back(molecules[j]);
      if (next == base) {
        std::vector<Ideal> f;
        for (auto c : chosen) f.push_back(lattice_[c]);
        report.factorizations.push_back(std::move(f));
      } else if (chosen.size() < report.length_bound && next != static_cast<int>(partial) &&
                 divides_target(static_cast<std::size_t>(next))) {
        search(static_cast<std::size_t>(next), j, molecules, chosen, report);
      }
      chosen.pop_back();
    }
  }

  OverIdealLattice lattice_;
  std::vector<std::optional<std::pair<std::size_t, std::size_t>>> witness_;
  std::vector<int> divides_;
};

// ---------------------------------------------------------------------------
// Free-function surface.

inline bool is_molecule(const Ideal& i) {
  detail::require_nonzero_proper(i, "is_molecule");
  FactorizationEngine engine(i);
  return engine.is_molecule(static_cast<std::size_t>(engine.lattice().base_index()));
}

inline UnitCancellation unit_cancellation(const Ideal& i) {
  require(!i.is_zero(), ErrorKind::precondition_violation,
          "unit-cancellation is defined only for nonzero ideals");
  if (i.is_full()) return {};
  FactorizationEngine engine(i);
  return engine.unit_cancellation(static_cast<std::size_t>(engine.lattice().base_index()));
}

inline bool is_unit_cancellative(const Ideal& i) { return unit_cancellation(i).holds; }

inline DivisorCensus divisor_census(const Ideal& i) { return FactorizationEngine(i).census(); }

inline MolecularizationReport molecularizations(const Ideal& i) {
  return FactorizationEngine(i).molecularizations();
}

inline bool divides(const Ambient& amb, const Ideal& j, const Ideal& i) {
  j.check_same(amb.target);
  return divides(j, i);
}
inline bool is_molecule(const Ambient& amb, const Ideal& i) {
  i.check_same(amb.target);
  return is_molecule(i);
}
inline bool is_unit_cancellative(const Ambient& amb, const Ideal& i) {
  i.check_same(amb.target);
  return is_unit_cancellative(i);
}
inline DivisorCensus divisor_census(const Ambient& amb, const Ideal& i) {
  i.check_same(amb.target);
  return divisor_census(i);
}
inline MolecularizationReport molecularizations(const Ambient& amb, const Ideal& i) {
  i.check_same(amb.target);
  return molecularizations(i);
}
inline MolecularizationReport molecularizations(const Ambient& amb) {
  return molecularizations(amb, amb.target);
}

}  // namespace molfact
