#pragma once

// Dense matrices over Z/m: Howell normal form (canonical row module) and a
// diagonalization with tracked column transforms.

#include <algorithm>
#include <cassert>
#include <compare>
#include <cstddef>
#include <span>
#include <vector>

#include "molfact/error.hpp"
#include "molfact/modarith.hpp"

namespace molfact {

class ZmodMatrix {
 public:
  ZmodMatrix() = default;
  ZmodMatrix(Coord modulus, std::size_t cols) : modulus_(modulus), cols_(cols) {
    require(modulus >= 1 && modulus < kMaxModulus, ErrorKind::invalid_presentation,
            "modulus out of range");
  }

  Coord modulus() const { return modulus_; }
  std::size_t cols() const { return cols_; }
  std::size_t rows() const { return cols_ == 0 ? 0 : data_.size() / cols_; }
  bool empty() const { return data_.empty(); }

  std::span<const Coord> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }
  std::span<Coord> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  Coord at(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  Coord& at(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }

  void append_row(std::span<const Coord> r) {
    assert(r.size() == cols_);
    for (Coord c : r) data_.push_back(mod(c, modulus_));
  }
  void append_zero_row() { data_.resize(data_.size() + cols_, 0); }

  const std::vector<Coord>& data() const { return data_; }

  friend bool operator==(const ZmodMatrix&, const ZmodMatrix&) = default;

  /// Canonical total order: row count first, then entries.
  friend std::strong_ordering operator<=>(const ZmodMatrix& a, const ZmodMatrix& b) {
    if (auto c = a.modulus_ <=> b.modulus_; c != 0) return c;
    if (auto c = a.cols_ <=> b.cols_; c != 0) return c;
    if (auto c = a.rows() <=> b.rows(); c != 0) return c;
    return std::lexicographical_compare_three_way(a.data_.begin(), a.data_.end(),
                                                  b.data_.begin(), b.data_.end());
  }

 private:
  Coord modulus_ = 1;
  std::size_t cols_ = 0;
  std::vector<Coord> data_;
};

namespace detail {

inline std::size_t leading_column(std::span<const Coord> v) {
  for (std::size_t k = 0; k < v.size(); ++k)
    if (v[k] != 0) return k;
  return v.size();
}

inline void axpy(Coords& y, Coord a, std::span<const Coord> x, Coord m) {
  if (a == 0) return;
  for (std::size_t i = 0; i < y.size(); ++i) y[i] = mod(y[i] + a * x[i], m);
}

inline void scale(Coords& v, Coord a, Coord m) {
  for (auto& c : v) c = mod(c * a, m);
}

}  // namespace detail

/// Howell normal form of the row module of `a`.
///
/// Rows are inserted into one slot per column (strong echelon form). Whenever
/// a slot's row changes, its annihilator multiple (m/pivot)*row, which has a
/// zero in the pivot column, is queued for insertion further down. That keeps
/// the Howell property: every module element with leading zeros in columns
/// [0, k) lies in the span of the rows with pivot >= k. Pivots are normalized
/// to divisors of m and entries above a pivot are reduced into [0, pivot),
/// which makes the form unique for the module.
inline ZmodMatrix howell_form(const ZmodMatrix& a) {
  const Coord m = a.modulus();
  const std::size_t n = a.cols();
  std::vector<Coords> slot(n);
  std::vector<Coords> work;
  work.reserve(a.rows());
  for (std::size_t i = a.rows(); i-- > 0;) work.emplace_back(a.row(i).begin(), a.row(i).end());

  auto push_annihilator = [&](const Coords& r, std::size_t k) {
    Coord factor = m / r[k];
    if (factor == m) return;
    Coords ann = r;
    detail::scale(ann, factor, m);
    if (detail::leading_column(ann) < n) work.push_back(std::move(ann));
  };

  while (!work.empty()) {
    Coords v = std::move(work.back());
    work.pop_back();
    for (std::size_t k = detail::leading_column(v); k < n; k = detail::leading_column(v)) {
      if (slot[k].empty()) {
        auto [u, g] = unit_normalizer(v[k], m);
        detail::scale(v, u, m);
        v[k] = g;
        slot[k] = std::move(v);
        push_annihilator(slot[k], k);
        break;
      }
      Coords& s = slot[k];
      const Coord p = s[k], b = v[k];
      if (b % p == 0) {
        detail::axpy(v, m - b / p, s, m);
        continue;
      }
      auto [g, cs, ct] = xgcd(p, b);
      Coords fresh(n), rest(n);
      for (std::size_t j = 0; j < n; ++j) {
        fresh[j] = mod(mod(cs, m) * s[j] + mod(ct, m) * v[j], m);
        rest[j] = mod((b / g) * s[j] - (p / g) * v[j], m);
      }
      fresh[k] = g;
      rest[k] = 0;
      s = std::move(fresh);
      push_annihilator(s, k);
      v = std::move(rest);
    }
  }

  for (std::size_t k = 0; k < n; ++k) {
    if (slot[k].empty()) continue;
    const Coord p = slot[k][k];
    for (std::size_t i = 0; i < k; ++i) {
      if (slot[i].empty()) continue;
      Coord q = slot[i][k] / p;
      if (q != 0) detail::axpy(slot[i], m - q, slot[k], m);
    }
  }

  ZmodMatrix out(m, n);
  for (auto& s : slot)
    if (!s.empty()) out.append_row(s);
  return out;
}

/// Reduces v against a Howell form. Returns true iff v lies in the row module.
inline bool howell_reduce(const ZmodMatrix& h, Coords& v) {
  const Coord m = h.modulus();
  std::size_t r = 0;
  for (std::size_t k = detail::leading_column(v); k < v.size(); k = detail::leading_column(v)) {
    while (r < h.rows() && detail::leading_column(h.row(r)) < k) ++r;
    if (r == h.rows() || detail::leading_column(h.row(r)) != k) return false;
    const Coord p = h.at(r, k);
    if (v[k] % p != 0) return false;
    detail::axpy(v, m - v[k] / p, h.row(r), m);
  }
  return true;
}

inline bool howell_contains(const ZmodMatrix& h, std::span<const Coord> v) {
  Coords w(v.begin(), v.end());
  for (auto& c : w) c = mod(c, h.modulus());
  return howell_reduce(h, w);
}

/// Number of elements of the module spanned by a Howell form.
inline std::uint64_t howell_module_size(const ZmodMatrix& h) {
  std::uint64_t size = 1;
  for (std::size_t r = 0; r < h.rows(); ++r) {
    std::size_t k = detail::leading_column(h.row(r));
    size = saturating_mul(size, static_cast<std::uint64_t>(h.modulus() / h.at(r, k)));
  }
  return size;
}

/// Rows of a Howell form whose leading entry sits at column >= first, restricted
/// to the columns [first, cols). They span the submodule of vectors vanishing on
/// the leading block.
inline ZmodMatrix howell_tail(const ZmodMatrix& h, std::size_t first) {
  ZmodMatrix out(h.modulus(), h.cols() - first);
  for (std::size_t r = 0; r < h.rows(); ++r) {
    if (detail::leading_column(h.row(r)) < first) continue;
    out.append_row(h.row(r).subspan(first));
  }
  return out;
}

/// A spanning set of the row module of `a` in which each vector's last nonzero
/// entry is a pivot: the Howell form taken with the column order reversed.
/// Ordered by that last column, lowest first.
inline std::vector<Coords> trailing_pivot_rows(const ZmodMatrix& a) {
  const std::size_t n = a.cols();
  ZmodMatrix flipped(a.modulus(), n);
  for (std::size_t r = 0; r < a.rows(); ++r) {
    Coords row(a.row(r).rbegin(), a.row(r).rend());
    flipped.append_row(row);
  }
  ZmodMatrix h = howell_form(flipped);
  std::vector<Coords> out;
  for (std::size_t r = h.rows(); r-- > 0;) out.emplace_back(h.row(r).rbegin(), h.row(r).rend());
  return out;
}

/// Result of A*V = U^{-1}*D with D diagonal; V and its inverse are tracked.
struct Diagonalization {
  Coord modulus = 1;
  /// diag[k] is a divisor of the modulus, or 0 when column k carries no pivot.
  std::vector<Coord> diag;
  ZmodMatrix v;
  ZmodMatrix v_inverse;
};

/// Diagonalizes `a` by unimodular row operations and tracked column operations.
/// The procedure is deterministic in its input, so a canonical input yields a
/// canonical output.
inline Diagonalization diagonalize(const ZmodMatrix& a) {
  const Coord m = a.modulus();
  const std::size_t nr = a.rows(), nc = a.cols();
  std::vector<Coords> A(nr);
  for (std::size_t i = 0; i < nr; ++i) A[i].assign(a.row(i).begin(), a.row(i).end());
  std::vector<Coords> V(nc, Coords(nc, 0)), W(nc, Coords(nc, 0));  // W = V^{-1}
  for (std::size_t i = 0; i < nc; ++i) V[i][i] = W[i][i] = 1;

  auto swap_cols = [&](std::size_t x, std::size_t y) {
    if (x == y) return;
    for (auto& r : A) std::swap(r[x], r[y]);
    for (auto& r : V) std::swap(r[x], r[y]);
    std::swap(W[x], W[y]);
  };
  // col_j -= q * col_t
  auto sub_col = [&](std::size_t t, std::size_t j, Coord q) {
    for (auto& r : A) r[j] = mod(r[j] - q * r[t], m);
    for (auto& r : V) r[j] = mod(r[j] - q * r[t], m);
    detail::axpy(W[t], q, W[j], m);
  };
  // (col_t, col_j) <- (s col_t + u col_j, (b/g) col_t - (a/g) col_j)
  auto combine_cols = [&](std::size_t t, std::size_t j, Coord s, Coord u, Coord bg, Coord ag) {
    auto apply = [&](Coords& r) {
      Coord x = r[t], y = r[j];
      r[t] = mod(mod(s, m) * x + mod(u, m) * y, m);
      r[j] = mod(bg * x - ag * y, m);
    };
    for (auto& r : A) apply(r);
    for (auto& r : V) apply(r);
    Coords wt = W[t], wj = W[j];
    for (std::size_t c = 0; c < nc; ++c) {
      W[t][c] = mod(ag * wt[c] + bg * wj[c], m);
      W[j][c] = mod(mod(u, m) * wt[c] - mod(s, m) * wj[c], m);
    }
  };
  auto normalize_row = [&](std::size_t t) {
    auto [u, g] = unit_normalizer(A[t][t], m);
    detail::scale(A[t], u, m);
    A[t][t] = g == m ? 0 : g;
  };

  std::size_t t = 0;
  for (; t < std::min(nr, nc); ++t) {
    std::size_t bi = nr, bj = nc;
    Coord best = m;
    for (std::size_t i = t; i < nr; ++i)
      for (std::size_t j = t; j < nc; ++j)
        if (A[i][j] != 0) {
          Coord g = std::gcd(A[i][j], m);
          if (g < best) best = g, bi = i, bj = j;
        }
    if (bi == nr) break;
    std::swap(A[t], A[bi]);
    swap_cols(t, bj);
    bool dirty = true;
    while (dirty) {
      dirty = false;
      normalize_row(t);
      for (std::size_t i = t + 1; i < nr; ++i) {
        Coord p = A[t][t], b = A[i][t];
        if (b == 0) continue;
        if (b % p == 0) {
          detail::axpy(A[i], m - b / p, A[t], m);
          continue;
        }
        auto [g, s, u] = xgcd(p, b);
        Coords rt(nc), ri(nc);
        for (std::size_t c = 0; c < nc; ++c) {
          rt[c] = mod(mod(s, m) * A[t][c] + mod(u, m) * A[i][c], m);
          ri[c] = mod((b / g) * A[t][c] - (p / g) * A[i][c], m);
        }
        A[t] = std::move(rt);
        A[i] = std::move(ri);
        normalize_row(t);
      }
      for (std::size_t j = t + 1; j < nc; ++j) {
        Coord p = A[t][t], b = A[t][j];
        if (b == 0) continue;
        if (b % p == 0) {
          sub_col(t, j, b / p);
          continue;
        }
        auto [g, s, u] = xgcd(p, b);
        combine_cols(t, j, s, u, b / g, p / g);
        dirty = true;
        normalize_row(t);
      }
      for (std::size_t i = t + 1; i < nr && !dirty; ++i) dirty = A[i][t] != 0;
    }
  }

  Diagonalization out{m, std::vector<Coord>(nc, 0), ZmodMatrix(m, nc), ZmodMatrix(m, nc)};
  for (std::size_t k = 0; k < t; ++k) out.diag[k] = A[k][k];
  for (std::size_t i = 0; i < nc; ++i) {
    out.v.append_row(V[i]);
    out.v_inverse.append_row(W[i]);
  }
  return out;
}

/// Row vector times square matrix over Z/m.
inline Coords row_times(std::span<const Coord> x, const ZmodMatrix& mat) {
  const Coord m = mat.modulus();
  Coords y(mat.cols(), 0);
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] == 0) continue;
    for (std::size_t j = 0; j < mat.cols(); ++j) y[j] = mod(y[j] + x[i] * mat.at(i, j), m);
  }
  return y;
}

}  // namespace molfact
