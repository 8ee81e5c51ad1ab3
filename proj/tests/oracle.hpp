#pragma once

// Brute-force reference implementations used only by tests. Ideals are plain
// element sets of a finite ring; nothing here touches the canonical-form,
// lattice or factorization code under test.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "molfact/ring.hpp"

namespace oracle {

using molfact::Coord;
using molfact::Coords;
using molfact::FiniteRing;

/// Characteristic vector of a subset of the ring, indexed by mixed-radix position.
using ElementSet = std::vector<bool>;

class ElementRing {
 public:
  explicit ElementRing(const FiniteRing& r) : ring_(r) {
    std::size_t n = 1;
    for (std::size_t i = 0; i < r.rank(); ++i) {
      stride_.push_back(n);
      n *= static_cast<std::size_t>(r.order(i));
    }
    size_ = n;
  }

  std::size_t size() const { return size_; }
  const FiniteRing& ring() const { return ring_; }

  std::size_t index(const Coords& x) const {
    std::size_t k = 0;
    for (std::size_t i = 0; i < x.size(); ++i) k += static_cast<std::size_t>(x[i]) * stride_[i];
    return k;
  }
  Coords coords(std::size_t k) const {
    Coords x(stride_.size());
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = static_cast<Coord>((k / stride_[i]) % ring_.order(i));
    return x;
  }
  std::size_t add(std::size_t a, std::size_t b) const {
    std::size_t k = 0;
    for (std::size_t i = 0; i < stride_.size(); ++i) {
      std::size_t o = static_cast<std::size_t>(ring_.order(i));
      k += (((a / stride_[i]) % o + (b / stride_[i]) % o) % o) * stride_[i];
    }
    return k;
  }
  std::size_t mul(std::size_t a, std::size_t b) const { return index(ring_.mul(coords(a), coords(b))); }

  /// The set x*A, walked with an odometer over basis coefficients.
  const ElementSet& principal(std::size_t x) {
    auto it = principal_.find(x);
    if (it != principal_.end()) return it->second;
    std::vector<std::size_t> images;
    Coords cx = coords(x);
    for (std::size_t i = 0; i < stride_.size(); ++i) images.push_back(index(ring_.mul(cx, ring_.basis(i))));
    ElementSet s(size_, false);
    std::vector<Coord> digit(stride_.size(), 0);
    std::size_t cur = 0;
    for (std::size_t step = 0; step < size_; ++step) {
      s[cur] = true;
      for (std::size_t i = 0; i < digit.size(); ++i) {
        cur = add(cur, images[i]);
        if (++digit[i] < ring_.order(i)) break;
        digit[i] = 0;  // order_i * images[i] = 0, so cur is already back in place
      }
    }
    return principal_.emplace(x, std::move(s)).first->second;
  }

  /// I + J for ideals I, J given as sets (I + J is the union of cosets j + I).
  ElementSet sum(const ElementSet& i, const ElementSet& j) const {
    ElementSet out = i;
    std::vector<std::size_t> base;
    for (std::size_t k = 0; k < size_; ++k)
      if (i[k]) base.push_back(k);
    for (std::size_t k = 0; k < size_; ++k)
      if (j[k] && !out[k])
        for (std::size_t b : base) out[add(k, b)] = true;
    return out;
  }

  ElementSet generated(const std::vector<std::size_t>& gens) {
    ElementSet out(size_, false);
    out[0] = true;
    for (std::size_t g : gens) out = sum(out, principal(g));
    return out;
  }

 private:
  const FiniteRing& ring_;
  std::vector<std::size_t> stride_;
  std::size_t size_ = 1;
  std::map<std::size_t, ElementSet> principal_;
};

inline std::size_t count(const ElementSet& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), true)); }

inline bool subset(const ElementSet& a, const ElementSet& b) {
  for (std::size_t k = 0; k < a.size(); ++k)
    if (a[k] && !b[k]) return false;
  return true;
}

/// All ideals containing a base ideal, each with a generating set.
struct Lattice {
  std::vector<ElementSet> ideals;
  std::vector<std::vector<std::size_t>> gens;
  std::map<ElementSet, std::size_t> index;
  std::size_t full = 0;
};

inline Lattice overideals(ElementRing& er, const std::vector<std::size_t>& base_gens) {
  Lattice l;
  std::vector<std::size_t> reps;  // one generator per distinct principal ideal
  std::set<ElementSet> seen_principal;
  for (std::size_t x = 0; x < er.size(); ++x)
    if (seen_principal.insert(er.principal(x)).second) reps.push_back(x);
  auto add = [&](ElementSet s, std::vector<std::size_t> g) {
    if (l.index.count(s)) return false;
    l.index.emplace(s, l.ideals.size());
    l.ideals.push_back(std::move(s));
    l.gens.push_back(std::move(g));
    return true;
  };
  add(er.generated(base_gens), base_gens);
  for (std::size_t q = 0; q < l.ideals.size(); ++q)
    for (std::size_t x : reps) {
      const ElementSet& p = er.principal(x);
      if (subset(p, l.ideals[q])) continue;
      ElementSet s = er.sum(l.ideals[q], p);
      auto g = l.gens[q];
      g.push_back(x);
      add(std::move(s), std::move(g));
    }
  std::size_t one = er.index(er.ring().one());
  for (std::size_t k = 0; k < l.ideals.size(); ++k)
    if (l.ideals[k][one]) l.full = k;
  return l;
}

/// Product of two ideals: generated by the pairwise products of their generators.
inline ElementSet product(ElementRing& er, const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
  std::vector<std::size_t> g;
  for (std::size_t x : a)
    for (std::size_t y : b) g.push_back(er.mul(x, y));
  return er.generated(g);
}

using Multiset = std::vector<std::size_t>;  // sorted lattice indices

struct Factorizations {
  bool finite = true;
  std::set<Multiset> all;
};

/// Recursive pair-splitting: every way of writing the target as J*K with J, K
/// proper, then recursively splitting J and K. A split I = I*K marks the
/// target as not unit-cancellative and the search as infinite.
class PairSplitter {
 public:
  PairSplitter(ElementRing& er, Lattice lattice) : er_(er), l_(std::move(lattice)) {
    const std::size_t n = l_.ideals.size();
    prod_.assign(n, std::vector<std::optional<std::size_t>>(n));
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = a; b < n; ++b) {
        auto it = l_.index.find(product(er_, l_.gens[a], l_.gens[b]));
        if (it != l_.index.end()) prod_[a][b] = prod_[b][a] = it->second;
      }
  }

  const Lattice& lattice() const { return l_; }

  std::vector<std::pair<std::size_t, std::size_t>> splits(std::size_t i) const {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t a = 0; a < l_.ideals.size(); ++a)
      for (std::size_t b = a; b < l_.ideals.size(); ++b)
        if (a != l_.full && b != l_.full && prod_[a][b] == i) out.emplace_back(a, b);
    return out;
  }

  bool is_molecule(std::size_t i) const { return i != l_.full && splits(i).empty(); }

  const Factorizations& factor(std::size_t i) {
    auto it = memo_.find(i);
    if (it != memo_.end()) return it->second;
    Factorizations f;
    if (is_molecule(i)) f.all.insert({i});
    for (auto [a, b] : splits(i)) {
      if (a == i || b == i) {
        f.finite = false;
        continue;
      }
      const Factorizations fa = factor(a);
      const Factorizations& fb = factor(b);
      f.finite = f.finite && fa.finite && fb.finite;
      for (const auto& x : fa.all)
        for (const auto& y : fb.all) {
          Multiset m = x;
          m.insert(m.end(), y.begin(), y.end());
          std::sort(m.begin(), m.end());
          f.all.insert(m);
        }
    }
    return memo_.emplace(i, std::move(f)).first->second;
  }

 private:
  ElementRing& er_;
  Lattice l_;
  std::vector<std::vector<std::optional<std::size_t>>> prod_;
  std::map<std::size_t, Factorizations> memo_;
};

/// Classical factorization of a positive integer by trial division.
inline std::vector<std::pair<Coord, int>> factor_integer(Coord n) {
  std::vector<std::pair<Coord, int>> out;
  for (Coord p = 2; p * p <= n; ++p) {
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    if (e > 0) out.emplace_back(p, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

/// Number of nonzero subspaces of F_q^m (sum of Gaussian binomials).
inline std::uint64_t nonzero_subspace_count(std::uint64_t q, unsigned m) {
  std::uint64_t total = 0;
  for (unsigned k = 1; k <= m; ++k) {
    std::uint64_t num = 1, den = 1;
    for (unsigned i = 0; i < k; ++i) {
      std::uint64_t qm = 1, qk = 1;
      for (unsigned t = 0; t < m - i; ++t) qm *= q;
      for (unsigned t = 0; t < i + 1; ++t) qk *= q;
      num *= qm - 1;
      den *= qk - 1;
    }
    total += num / den;
  }
  return total;
}

/// Prime by definition: proper, and ab in I forces a or b in I.
inline bool is_prime_ideal(ElementRing& er, const ElementSet& i) {
  if (i[er.index(er.ring().one())]) return false;
  for (std::size_t a = 0; a < er.size(); ++a) {
    if (i[a]) continue;
    for (std::size_t b = a; b < er.size(); ++b)
      if (!i[b] && i[er.mul(a, b)]) return false;
  }
  return true;
}

}  // namespace oracle
