#pragma once

// Finite commutative rings presented by an additive basis with mixed orders
// and multiplication structure constants.

#include <cmath>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "molfact/error.hpp"
#include "molfact/modarith.hpp"
#include "molfact/zmod_matrix.hpp"

namespace molfact {

class FiniteRing;
using RingPtr = std::shared_ptr<const FiniteRing>;

/// Set on rings built by make_gf: F_p[a]/(modulus), basis 1, a, ..., a^(k-1).
struct FieldInfo {
  Coord p = 0;
  int degree = 0;
  Coords modulus;  // c_0 .. c_k, monic
};

struct Presentation {
  std::vector<Coord> orders;
  /// n*n entries; entry i*n+j holds the coordinates of e_i*e_j.
  std::vector<Coords> structure;
  Coords one;
  std::vector<std::string> names;
  std::string label;
  std::optional<FieldInfo> field;
};

class FiniteRing {
 public:
  /// Validates commutativity, identity, associativity and order consistency
  /// on all basis pairs and triples.
  static RingPtr create(Presentation p) {
    auto ring = std::shared_ptr<FiniteRing>(new FiniteRing());
    ring->init(std::move(p));
    return ring;
  }

  std::size_t rank() const { return orders_.size(); }
  const std::vector<Coord>& orders() const { return orders_; }
  Coord order(std::size_t i) const { return orders_[i]; }
  /// lcm of the basis orders.
  Coord characteristic() const { return char_; }
  const Coords& one() const { return one_; }
  Coords zero() const { return Coords(rank(), 0); }
  const std::string& label() const { return label_; }
  const std::vector<std::string>& names() const { return names_; }
  const std::optional<FieldInfo>& field_info() const { return field_; }
  std::uint64_t fingerprint() const { return fingerprint_; }

  /// Number of elements, saturating at UINT64_MAX.
  std::uint64_t size() const {
    std::uint64_t s = 1;
    for (Coord d : orders_) s = saturating_mul(s, static_cast<std::uint64_t>(d));
    return s;
  }
  double log2_size() const {
    double s = 0;
    for (Coord d : orders_) s += std::log2(static_cast<double>(d));
    return s;
  }

  Coords basis(std::size_t i) const {
    Coords e(rank(), 0);
    e[i] = 1;
    return e;
  }
  /// Coordinates of e_i * e_j.
  std::span<const Coord> product_of_basis(std::size_t i, std::size_t j) const {
    return {table_.data() + (i * rank() + j) * rank(), rank()};
  }

  void reduce(Coords& x) const {
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = mod(x[i], orders_[i]);
  }
  Coords add(const Coords& x, const Coords& y) const {
    Coords z(rank());
    for (std::size_t i = 0; i < rank(); ++i) z[i] = mod(x[i] + y[i], orders_[i]);
    return z;
  }
  Coords sub(const Coords& x, const Coords& y) const {
    Coords z(rank());
    for (std::size_t i = 0; i < rank(); ++i) z[i] = mod(x[i] - y[i], orders_[i]);
    return z;
  }
  Coords neg(const Coords& x) const {
    Coords z(rank());
    for (std::size_t i = 0; i < rank(); ++i) z[i] = mod(-x[i], orders_[i]);
    return z;
  }
  Coords scale(const Coords& x, Coord c) const {
    Coords z(rank());
    for (std::size_t i = 0; i < rank(); ++i) z[i] = mul_mod(x[i], c, orders_[i]);
    return z;
  }
  Coords mul(const Coords& x, const Coords& y) const {
    const std::size_t n = rank();
    Coords z(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
      if (x[i] == 0) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (y[j] == 0) continue;
        const Coord c = (x[i] * y[j]) % char_;
        const Coord* t = table_.data() + (i * n + j) * n;
        for (std::size_t k = 0; k < n; ++k)
          if (t[k] != 0) z[k] = (z[k] + c * t[k]) % char_;
      }
    }
    reduce(z);
    return z;
  }
  Coords pow(Coords x, std::uint64_t e) const {
    Coords r = one_;
    while (e > 0) {
      if (e & 1) r = mul(r, x);
      e >>= 1;
      if (e) x = mul(x, x);
    }
    return r;
  }
  Coords from_integer(Coord c) const { return scale(one_, mod(c, char_)); }
  bool is_zero(const Coords& x) const {
    for (Coord c : x)
      if (c != 0) return false;
    return true;
  }

  /// Standard embedding of the mixed-order group into (Z/m)^n, m the characteristic.
  Coords embed(const Coords& x) const {
    Coords e(rank());
    for (std::size_t i = 0; i < rank(); ++i) e[i] = mod(x[i], orders_[i]) * (char_ / orders_[i]);
    return e;
  }
  Coords unembed(std::span<const Coord> e) const {
    Coords x(rank());
    for (std::size_t i = 0; i < rank(); ++i) x[i] = mod(e[i] / (char_ / orders_[i]), orders_[i]);
    return x;
  }

  /// x is a unit iff multiplication by x is surjective.
  bool is_unit(const Coords& x) const {
    ZmodMatrix rows(char_, rank());
    for (std::size_t i = 0; i < rank(); ++i) rows.append_row(embed(mul(x, basis(i))));
    return howell_module_size(howell_form(rows)) == size();
  }

  bool is_nilpotent(const Coords& x) const {
    // Nilpotency index is bounded by the composition length <= log2 |R|.
    auto bound = static_cast<std::uint64_t>(std::ceil(log2_size())) + 1;
    return is_zero(pow(x, bound));
  }

  /// Visits every element in mixed-radix order (coordinate 0 fastest).
  void for_each_element(const std::function<void(const Coords&)>& visit) const {
    check_size_guard(size(), "ring " + label_);
    Coords x(rank(), 0);
    while (true) {
      visit(x);
      std::size_t i = 0;
      for (; i < rank(); ++i) {
        if (++x[i] < orders_[i]) break;
        x[i] = 0;
      }
      if (i == rank()) return;
    }
  }

  std::string format(const Coords& x) const {
    std::string out;
    for (std::size_t i = 0; i < rank(); ++i) {
      Coord c = mod(x[i], orders_[i]);
      if (c == 0) continue;
      if (!out.empty()) out += " + ";
      if (names_[i] == "1") {
        out += std::to_string(c);
      } else {
        if (c != 1) out += std::to_string(c) + "*";
        out += names_[i];
      }
    }
    return out.empty() ? "0" : out;
  }

  bool same_ring(const FiniteRing& other) const { return fingerprint_ == other.fingerprint_; }

 private:
  FiniteRing() = default;

  void init(Presentation p) {
    const std::size_t n = p.orders.size();
    require(n >= 1, ErrorKind::invalid_presentation, "rank must be positive");
    char_ = 1;
    for (Coord d : p.orders) {
      require(d >= 2, ErrorKind::invalid_presentation, "basis orders must be >= 2");
      char_ = std::lcm(char_, d);
      require(char_ < kMaxModulus, ErrorKind::invalid_presentation,
              "characteristic exceeds 2^31");
    }
    orders_ = std::move(p.orders);
    require(p.structure.size() == n * n, ErrorKind::invalid_presentation,
            "structure table must have rank^2 entries");
    require(p.one.size() == n, ErrorKind::invalid_presentation, "identity has wrong length");
    table_.assign(n * n * n, 0);
    for (std::size_t ij = 0; ij < n * n; ++ij) {
      require(p.structure[ij].size() == n, ErrorKind::invalid_presentation,
              "structure entry has wrong length");
      for (std::size_t k = 0; k < n; ++k) table_[ij * n + k] = mod(p.structure[ij][k], orders_[k]);
    }
    one_ = std::move(p.one);
    reduce(one_);
    names_ = std::move(p.names);
    if (names_.size() != n) {
      names_.clear();
      for (std::size_t i = 0; i < n; ++i) names_.push_back("e" + std::to_string(i));
    }
    label_ = std::move(p.label);
    field_ = std::move(p.field);
    validate();
    fingerprint_ = compute_fingerprint();
  }

  void validate() const {
    const std::size_t n = rank();
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        auto eij = product_of_basis(i, j), eji = product_of_basis(j, i);
        require(std::equal(eij.begin(), eij.end(), eji.begin()), ErrorKind::invalid_presentation,
                "structure constants are not commutative at (" + std::to_string(i) + "," +
                    std::to_string(j) + ")");
        for (std::size_t k = 0; k < n; ++k)
          require(mul_mod(eij[k], orders_[i], orders_[k]) == 0, ErrorKind::invalid_presentation,
                  "order of e" + std::to_string(i) + " does not annihilate e" +
                      std::to_string(i) + "*e" + std::to_string(j));
      }
    }
    for (std::size_t i = 0; i < n; ++i)
      require(mul(one_, basis(i)) == basis(i), ErrorKind::invalid_presentation,
              "identity does not fix basis element e" + std::to_string(i));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i; j < n; ++j) {
        Coords eij(product_of_basis(i, j).begin(), product_of_basis(i, j).end());
        for (std::size_t k = 0; k < n; ++k) {
          Coords ejk(product_of_basis(j, k).begin(), product_of_basis(j, k).end());
          require(mul(eij, basis(k)) == mul(basis(i), ejk), ErrorKind::invalid_presentation,
                  "structure constants are not associative");
        }
      }
    }
  }

  std::uint64_t compute_fingerprint() const {
    std::uint64_t h = 1469598103934665603ull;
    auto mix = [&h](Coord v) {
      for (int b = 0; b < 8; ++b) {
        h ^= static_cast<std::uint64_t>(v >> (8 * b)) & 0xffu;
        h *= 1099511628211ull;
      }
    };
    mix(static_cast<Coord>(rank()));
    for (Coord d : orders_) mix(d);
    for (Coord c : table_) mix(c);
    for (Coord c : one_) mix(c);
    return h;
  }

  std::vector<Coord> orders_;
  Coord char_ = 1;
  std::vector<Coord> table_;
  Coords one_;
  std::vector<std::string> names_;
  std::string label_;
  std::optional<FieldInfo> field_;
  std::uint64_t fingerprint_ = 0;
};

inline std::string fingerprint_hex(const FiniteRing& r) {
  std::ostringstream os;
  os << std::hex << r.fingerprint();
  return os.str();
}

// ---------------------------------------------------------------------------
// Element-level API with ring identity checks.

struct RingElement {
  RingPtr ring;
  Coords coords;

  friend bool operator==(const RingElement& a, const RingElement& b) {
    return a.ring->same_ring(*b.ring) && a.coords == b.coords;
  }
};

inline RingElement element(RingPtr r, Coords coords) {
  require(coords.size() == r->rank(), ErrorKind::ring_mismatch, "coordinate vector has wrong length");
  r->reduce(coords);
  return {std::move(r), std::move(coords)};
}

namespace detail {
inline void check_same(const RingElement& x, const RingElement& y) {
  require(x.ring && y.ring && x.ring->same_ring(*y.ring), ErrorKind::ring_mismatch,
          "operands belong to different rings");
}
}  // namespace detail

inline RingElement add(const RingElement& x, const RingElement& y) {
  detail::check_same(x, y);
  return {x.ring, x.ring->add(x.coords, y.coords)};
}
inline RingElement mul(const RingElement& x, const RingElement& y) {
  detail::check_same(x, y);
  return {x.ring, x.ring->mul(x.coords, y.coords)};
}
inline RingElement neg(const RingElement& x) { return {x.ring, x.ring->neg(x.coords)}; }
inline RingElement from_integer(const RingPtr& r, Coord c) { return {r, r->from_integer(c)}; }
inline bool is_unit(const RingElement& x) { return x.ring->is_unit(x.coords); }

// ---------------------------------------------------------------------------
// Homomorphisms.

struct RingHom {
  RingPtr source;
  RingPtr target;
  /// images[i] = target coordinates of the image of source basis element e_i.
  std::vector<Coords> images;

  Coords apply(const Coords& x) const {
    Coords y = target->zero();
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (x[i] == 0) continue;
      y = target->add(y, target->scale(images[i], x[i]));
    }
    return y;
  }

  /// Checks that the map is well defined and preserves 1, + and * on basis pairs.
  bool is_homomorphism() const {
    if (images.size() != source->rank()) return false;
    for (std::size_t i = 0; i < images.size(); ++i)
      if (!target->is_zero(target->scale(images[i], source->order(i)))) return false;
    if (apply(source->one()) != target->one()) return false;
    for (std::size_t i = 0; i < images.size(); ++i)
      for (std::size_t j = i; j < images.size(); ++j) {
        Coords prod(source->product_of_basis(i, j).begin(), source->product_of_basis(i, j).end());
        if (apply(prod) != target->mul(images[i], images[j])) return false;
      }
    return true;
  }
};

// ---------------------------------------------------------------------------
// Constructors.

inline RingPtr make_zmod(Coord n) {
  require(n >= 2, ErrorKind::invalid_presentation, "Z/n needs n >= 2, got " + std::to_string(n));
  Presentation p;
  p.orders = {n};
  p.structure = {Coords{1}};
  p.one = {1};
  p.names = {"1"};
  p.label = "Z/" + std::to_string(n);
  return FiniteRing::create(std::move(p));
}

namespace detail {

/// Dense polynomial helpers over F_p, coefficients low to high.
inline Coords poly_trim(Coords f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
  return f;
}

inline Coords poly_mod(Coords a, const Coords& b, Coord p) {
  a = poly_trim(std::move(a));
  const Coord inv = inverse_mod(b.back(), p);
  while (a.size() >= b.size()) {
    Coord c = mul_mod(a.back(), inv, p);
    std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] = mod(a[shift + i] - c * b[i], p);
    a = poly_trim(std::move(a));
  }
  return a;
}

/// Polynomial of degree k whose coefficients c_0..c_{k-1} are the base-p
/// digits of `code`, made monic.
inline Coords poly_from_code(std::uint64_t code, int k, Coord p) {
  Coords f(k + 1, 0);
  for (int i = 0; i < k; ++i) {
    f[i] = static_cast<Coord>(code % p);
    code /= p;
  }
  f[k] = 1;
  return f;
}

inline bool is_irreducible(const Coords& f, Coord p) {
  const int k = static_cast<int>(f.size()) - 1;
  for (int d = 1; 2 * d <= k; ++d) {
    std::uint64_t count = 1;
    for (int i = 0; i < d; ++i) count *= p;
    for (std::uint64_t code = 0; code < count; ++code)
      if (poly_mod(f, poly_from_code(code, d, p), p).empty()) return false;
  }
  return true;
}

inline std::string power_name(const std::string& var, std::size_t j) {
  if (j == 0) return "1";
  if (j == 1) return var;
  return var + "^" + std::to_string(j);
}

}  // namespace detail

/// Least monic irreducible of degree k over F_p, ordering candidates by the
/// integer whose base-p digits are c_0, c_1, ..., c_{k-1}.
inline Coords least_irreducible(Coord p, int k) {
  std::uint64_t count = 1;
  for (int i = 0; i < k; ++i) count *= p;
  for (std::uint64_t code = 0; code < count; ++code) {
    Coords f = detail::poly_from_code(code, k, p);
    if (detail::is_irreducible(f, p)) return f;
  }
  throw Error(ErrorKind::invalid_presentation, "no irreducible polynomial found");
}

/// R[X]/(f) for f monic over R, given by coefficients f_0..f_m (elements of R).
inline RingPtr poly_quotient(const RingPtr& base, const std::vector<Coords>& f,
                             const std::string& var = "X") {
  require(f.size() >= 2, ErrorKind::invalid_presentation, "modulus must have degree >= 1");
  const std::size_t n = base->rank(), deg = f.size() - 1;
  for (const auto& c : f)
    require(c.size() == n, ErrorKind::invalid_presentation, "coefficient has wrong length");
  {
    Coords lead = f.back();
    base->reduce(lead);
    require(lead == base->one(), ErrorKind::invalid_presentation, "modulus is not monic");
  }
  // powers[k] = X^k reduced mod f, as deg coefficients in R, for k < 2*deg - 1.
  std::vector<std::vector<Coords>> powers;
  std::vector<Coords> cur(deg, base->zero());
  cur[0] = base->one();
  for (std::size_t k = 0; k + 1 < 2 * deg; ++k) {
    powers.push_back(cur);
    std::vector<Coords> next(deg, base->zero());
    for (std::size_t j = 0; j + 1 < deg; ++j) next[j + 1] = cur[j];
    const Coords& top = cur[deg - 1];
    for (std::size_t j = 0; j < deg; ++j) next[j] = base->sub(next[j], base->mul(top, f[j]));
    cur = std::move(next);
  }

  const std::size_t N = n * deg;
  Presentation p;
  for (std::size_t j = 0; j < deg; ++j)
    for (std::size_t i = 0; i < n; ++i) {
      p.orders.push_back(base->order(i));
      const std::string& bn = base->names()[i];
      std::string xn = detail::power_name(var, j);
      if (bn == "1") p.names.push_back(xn);
      else if (xn == "1") p.names.push_back(bn);
      else p.names.push_back(bn + "*" + xn);
    }
  p.structure.assign(N * N, Coords(N, 0));
  for (std::size_t a = 0; a < N; ++a) {
    for (std::size_t b = 0; b < N; ++b) {
      std::size_t ia = a % n, ja = a / n, ib = b % n, jb = b / n;
      Coords coeff(base->product_of_basis(ia, ib).begin(), base->product_of_basis(ia, ib).end());
      Coords& out = p.structure[a * N + b];
      const auto& red = powers[ja + jb];
      for (std::size_t l = 0; l < deg; ++l) {
        Coords term = base->mul(coeff, red[l]);
        for (std::size_t i = 0; i < n; ++i) out[l * n + i] = term[i];
      }
    }
  }
  p.one.assign(N, 0);
  for (std::size_t i = 0; i < n; ++i) p.one[i] = base->one()[i];

  std::string fs;
  for (std::size_t k = deg + 1; k-- > 0;) {
    std::string c = base->format(f[k]);
    if (c == "0") continue;
    if (!fs.empty()) fs += " + ";
    std::string xn = detail::power_name(var, k);
    if (xn == "1") fs += c;
    else if (c == "1") fs += xn;
    else fs += (c.find(' ') != std::string::npos ? "(" + c + ")" : c) + "*" + xn;
  }
  p.label = "(" + base->label() + ")[" + var + "]/(" + fs + ")";
  return FiniteRing::create(std::move(p));
}

/// Convenience overload for integer coefficients c_0..c_m (images of integers in R).
inline RingPtr poly_quotient_int(const RingPtr& base, const std::vector<Coord>& f,
                                 const std::string& var = "X") {
  std::vector<Coords> coeffs;
  for (Coord c : f) coeffs.push_back(base->from_integer(c));
  return poly_quotient(base, coeffs, var);
}

/// The field with p^k elements; modulus is the least monic irreducible.
inline RingPtr make_gf(Coord p, int k) {
  require(is_prime(p), ErrorKind::invalid_presentation, std::to_string(p) + " is not prime");
  require(k >= 1, ErrorKind::invalid_presentation, "field degree must be positive");
  Coords modulus = k == 1 ? Coords{0, 1} : least_irreducible(p, k);
  auto prime = make_zmod(p);
  RingPtr field;
  Presentation pr;
  if (k == 1) {
    pr.orders = {p};
    pr.structure = {Coords{1}};
    pr.one = {1};
    pr.names = {"1"};
  } else {
    auto q = poly_quotient_int(prime, modulus, "a");
    pr.orders = q->orders();
    for (std::size_t i = 0; i < q->rank(); ++i)
      for (std::size_t j = 0; j < q->rank(); ++j)
        pr.structure.emplace_back(q->product_of_basis(i, j).begin(), q->product_of_basis(i, j).end());
    pr.one = q->one();
    pr.names = q->names();
  }
  Coord size = 1;
  for (int i = 0; i < k; ++i) size *= p;
  pr.label = "F_" + std::to_string(size);
  pr.field = FieldInfo{p, k, modulus};
  return FiniteRing::create(std::move(pr));
}

/// A x B with componentwise operations.
inline RingPtr direct_product(const RingPtr& a, const RingPtr& b) {
  const std::size_t na = a->rank(), nb = b->rank(), n = na + nb;
  Presentation p;
  p.orders = a->orders();
  p.orders.insert(p.orders.end(), b->orders().begin(), b->orders().end());
  p.structure.assign(n * n, Coords(n, 0));
  for (std::size_t i = 0; i < na; ++i)
    for (std::size_t j = 0; j < na; ++j) {
      auto e = a->product_of_basis(i, j);
      std::copy(e.begin(), e.end(), p.structure[i * n + j].begin());
    }
  for (std::size_t i = 0; i < nb; ++i)
    for (std::size_t j = 0; j < nb; ++j) {
      auto e = b->product_of_basis(i, j);
      std::copy(e.begin(), e.end(), p.structure[(na + i) * n + na + j].begin() + na);
    }
  p.one = a->one();
  p.one.insert(p.one.end(), b->one().begin(), b->one().end());
  for (const auto& s : a->names()) p.names.push_back("(" + s + ",0)");
  for (const auto& s : b->names()) p.names.push_back("(0," + s + ")");
  p.label = a->label() + " x " + b->label();
  return FiniteRing::create(std::move(p));
}

/// Unital embedding GF(p^a) -> GF(p^b) for a | b, sending the generator of the
/// smaller field to the first root (in element order) of its modulus.
inline RingHom subfield_embedding(const RingPtr& small, const RingPtr& big) {
  require(small->field_info() && big->field_info(), ErrorKind::no_embedding,
          "both rings must be finite fields built by make_gf");
  const auto& fs = *small->field_info();
  const auto& fb = *big->field_info();
  require(fs.p == fb.p, ErrorKind::no_embedding, "characteristics differ");
  require(fb.degree % fs.degree == 0, ErrorKind::no_embedding,
          std::to_string(fs.degree) + " does not divide " + std::to_string(fb.degree));
  RingHom hom{small, big, {}};
  if (fs.degree == 1) {
    hom.images.push_back(big->one());
    return hom;
  }
  std::optional<Coords> root;
  big->for_each_element([&](const Coords& x) {
    if (root) return;
    Coords val = big->zero(), xp = big->one();
    for (Coord c : fs.modulus) {
      val = big->add(val, big->scale(xp, c));
      xp = big->mul(xp, x);
    }
    if (big->is_zero(val)) root = x;
  });
  require(root.has_value(), ErrorKind::no_embedding, "modulus has no root in the larger field");
  Coords pw = big->one();
  for (int i = 0; i < fs.degree; ++i) {
    hom.images.push_back(pw);
    pw = big->mul(pw, *root);
  }
  return hom;
}

// ---------------------------------------------------------------------------
// Subrings.

/// A subring S of an ambient ring with its own presentation. The basis of S
/// comes from diagonalizing the canonical (Howell) form of its additive group.
struct Subring {
  RingPtr ring;
  RingHom inclusion;
  Diagonalization diag;
  std::vector<std::size_t> kept;  // diagonal positions carrying basis elements

  /// Coordinates in S of an ambient element, or nullopt if it is not in S.
  std::optional<Coords> coordinates_of(const Coords& ambient_element) const {
    const FiniteRing& amb = *inclusion.target;
    Coords y = row_times(amb.embed(ambient_element), diag.v);
    const Coord m = diag.modulus;
    std::vector<bool> is_kept(y.size(), false);
    for (auto k : kept) is_kept[k] = true;
    for (std::size_t k = 0; k < y.size(); ++k) {
      if (is_kept[k]) continue;
      if (diag.diag[k] == 0 && y[k] != 0) return std::nullopt;
      if (diag.diag[k] != 0 && y[k] % diag.diag[k] != 0) return std::nullopt;
    }
    Coords c;
    for (auto k : kept) {
      if (y[k] % diag.diag[k] != 0) return std::nullopt;
      c.push_back(mod(y[k] / diag.diag[k], m / diag.diag[k]));
    }
    return c;
  }

  Coords to_subring(const Coords& ambient_element) const {
    auto c = coordinates_of(ambient_element);
    require(c.has_value(), ErrorKind::precondition_violation,
            "element " + inclusion.target->format(ambient_element) + " is not in the subring");
    return *c;
  }
};

namespace detail {

/// Builds the ring structure on an additive subgroup closed under products.
inline Subring subring_from_span(const RingPtr& amb, const ZmodMatrix& span, std::string label) {
  const Coord m = amb->characteristic();
  Diagonalization d = diagonalize(span);
  std::vector<Coords> gens;
  std::vector<std::size_t> kept;
  std::vector<Coord> orders;
  for (std::size_t k = 0; k < d.diag.size(); ++k) {
    if (d.diag[k] == 0) continue;
    Coord ord = m / d.diag[k];
    if (ord == 1) continue;
    Coords g(d.v_inverse.row(k).begin(), d.v_inverse.row(k).end());
    for (auto& c : g) c = mod(c * d.diag[k], m);
    gens.push_back(amb->unembed(g));
    kept.push_back(k);
    orders.push_back(ord);
  }
  Subring sub{nullptr, RingHom{nullptr, amb, gens}, std::move(d), kept};
  Presentation p;
  p.orders = orders;
  const std::size_t n = gens.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) p.structure.push_back(sub.to_subring(amb->mul(gens[i], gens[j])));
  p.one = sub.to_subring(amb->one());
  for (const auto& g : gens) {
    std::string s = amb->format(g);
    p.names.push_back(s.find(' ') != std::string::npos ? "(" + s + ")" : s);
  }
  p.label = std::move(label);
  sub.ring = FiniteRing::create(std::move(p));
  sub.inclusion.source = sub.ring;
  return sub;
}

}  // namespace detail

/// Smallest unital subring containing gens: the additive span of 1 and gens,
/// closed under pairwise products until it stops growing.
inline Subring subring_closure(const RingPtr& amb, const std::vector<Coords>& gens,
                               std::string label = {}) {
  const Coord m = amb->characteristic();
  ZmodMatrix rows(m, amb->rank());
  rows.append_row(amb->embed(amb->one()));
  for (const auto& g : gens) rows.append_row(amb->embed(g));
  ZmodMatrix span = howell_form(rows);
  while (true) {
    ZmodMatrix next = span;
    std::vector<Coords> elems;
    for (std::size_t i = 0; i < span.rows(); ++i) elems.push_back(amb->unembed(span.row(i)));
    for (std::size_t i = 0; i < elems.size(); ++i)
      for (std::size_t j = i; j < elems.size(); ++j) next.append_row(amb->embed(amb->mul(elems[i], elems[j])));
    next = howell_form(next);
    if (next == span) break;
    span = std::move(next);
  }
  if (label.empty()) {
    label = "subring of " + amb->label() + " generated by {";
    for (std::size_t i = 0; i < gens.size(); ++i) label += (i ? ", " : "") + amb->format(gens[i]);
    label += "}";
  }
  return detail::subring_from_span(amb, span, std::move(label));
}

}  // namespace molfact
