#pragma once

// Builders for finite models A = R/I0 of concrete domains R, each certifying
// I0 ⊆ I^2 for the target ideal I before handing out an Ambient.
//
// A certificate is a list of membership checks g ∈ I^2, one per generator g
// of I0, carried out in a strictly deeper model of R in which I^2 is exact.

#include <memory>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "molfact/molecularize.hpp"

namespace molfact {

namespace detail {

/// Integer polynomial product, coefficients low to high.
inline std::vector<Coord> poly_mul(const std::vector<Coord>& a, const std::vector<Coord>& b, Coord m) {
  std::vector<Coord> out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] = mod(out[i + j] + mul_mod(mod(a[i], m), mod(b[j], m), m), m);
  return out;
}

inline std::vector<Coord> poly_pow(const std::vector<Coord>& f, int e, Coord m) {
  std::vector<Coord> out{1};
  for (int i = 0; i < e; ++i) out = poly_mul(out, f, m);
  return out;
}

inline std::vector<Coord> monomial(int e) {
  std::vector<Coord> out(static_cast<std::size_t>(e) + 1, 0);
  out.back() = 1;
  return out;
}

inline std::string int_poly_string(const std::vector<Coord>& f, const std::string& var = "X") {
  std::string s;
  for (std::size_t k = f.size(); k-- > 0;) {
    if (f[k] == 0) continue;
    std::string term = power_name(var, k);
    Coord c = f[k];
    std::string sign = s.empty() ? (c < 0 ? "-" : "") : (c < 0 ? " - " : " + ");
    Coord a = c < 0 ? -c : c;
    if (term == "1") term = std::to_string(a);
    else if (a != 1) term = std::to_string(a) + "*" + term;
    s += sign + term;
  }
  return s.empty() ? "0" : s;
}

/// Element of base[X]/(...) given prime-subring coefficients c_0..c_k, placed
/// at basis index j*rank(base).
inline Coords poly_element(const FiniteRing& ring, std::size_t base_rank, const std::vector<Coord>& c) {
  Coords x = ring.zero();
  for (std::size_t j = 0; j < c.size(); ++j) {
    require(j * base_rank < ring.rank() || c[j] == 0, ErrorKind::precondition_violation,
            "polynomial degree exceeds the truncation");
    if (j * base_rank < ring.rank()) x[j * base_rank] = c[j];
  }
  ring.reduce(x);
  return x;
}

/// Every relation must lie in the square of the deep target.
inline bool certify(const Ideal& deep_target, const std::vector<Coords>& relations) {
  Ideal sq = ideal_product(deep_target, deep_target);
  for (const auto& g : relations)
    if (!sq.contains(g)) return false;
  return true;
}

inline std::string certificate_text(const std::string& i0, const std::string& model, std::size_t checks) {
  return "I0 = " + i0 + " ⊆ I^2: " + std::to_string(checks) + " membership checks in " + model;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Z

/// R = Z, I = (n), A = Z/n^depth (depth >= 2; I0 = (n^depth) ⊆ (n^2) = I^2).
inline Ambient build_integers(Coord n, int depth = 2) {
  require(n >= 2, ErrorKind::invalid_presentation, "integers family needs n >= 2");
  require(depth >= 2, ErrorKind::invalid_presentation, "model depth must be at least 2");
  Coord mod_a = 1;
  for (int i = 0; i < depth; ++i) {
    require(mod_a <= kMaxModulus / n, ErrorKind::size_guard_exceeded, "n^depth exceeds 2^31");
    mod_a *= n;
  }
  // Deeper by one prime factor of n keeps the modulus small.
  const Coord step = prime_divisors(n).front();
  require(mod_a <= kMaxModulus / step, ErrorKind::size_guard_exceeded, "certification model exceeds 2^31");
  const Coord mod_deep = mod_a * step;
  auto deep = make_zmod(mod_deep);
  require(detail::certify(ideal_generated(deep, {deep->from_integer(n)}), {deep->from_integer(mod_a)}),
          ErrorKind::not_certified, "(n^depth) not inside (n)^2");
  auto a = make_zmod(mod_a);
  Ideal target = ideal_generated(a, {a->from_integer(n)});
  return Ambient{"Z", a, target, true,
                 detail::certificate_text("(" + std::to_string(mod_a) + ")", deep->label(), 1), nullptr, nullptr};
}

// ---------------------------------------------------------------------------
// Imaginary quadratic orders Z[sqrt(d)] = Z[X]/(X^2 - d)

/// a + b*sqrt(d)
struct QuadraticElement {
  Coord a = 0;
  Coord b = 0;
};

namespace detail {
inline bool squarefree(Coord n) {
  n = n < 0 ? -n : n;
  for (Coord d = 2; d * d <= n; ++d)
    if (n % (d * d) == 0) return false;
  return true;
}

inline RingPtr quadratic_model(Coord d, Coord modulus) {
  return poly_quotient_int(make_zmod(modulus), {-d, 0, 1}, "sqrt(" + std::to_string(d) + ")");
}

inline Coords quadratic_coords(const FiniteRing& r, QuadraticElement x) {
  Coords c{x.a, x.b};
  r.reduce(c);
  return c;
}
}  // namespace detail

inline std::string quadratic_label(Coord d) { return "Z[sqrt(" + std::to_string(d) + ")]"; }

/// R = Z[sqrt(d)], d < 0 squarefree, I = (gens). With m the least positive
/// integer in I, A = R/(m^2).
inline Ambient build_quadratic(Coord d, const std::vector<QuadraticElement>& gens) {
  require(d < 0 && detail::squarefree(d), ErrorKind::invalid_presentation,
          "quadratic family needs a negative squarefree d");
  require(!gens.empty(), ErrorKind::invalid_presentation, "quadratic target needs generators");
  const QuadraticElement g0 = gens.front();
  const Coord norm = g0.a * g0.a - d * g0.b * g0.b;
  require(norm > 0, ErrorKind::precondition_violation, "first generator must be nonzero");
  require(norm > 1, ErrorKind::precondition_violation, "target is the unit ideal");
  require(norm <= 46340, ErrorKind::size_guard_exceeded, "generator norm too large for the model");

  // g0 * conj(g0) = norm, so (norm) ⊆ I and R/(norm) sees I exactly.
  auto coarse = detail::quadratic_model(d, norm);
  std::vector<Coords> cg;
  for (auto g : gens) cg.push_back(detail::quadratic_coords(*coarse, g));
  Ideal ic = ideal_generated(coarse, cg);
  Coord m = 0;
  for (Coord t = 1; t <= norm && m == 0; ++t)
    if (norm % t == 0 && ic.contains(coarse->from_integer(t))) m = t;
  require(m > 1, ErrorKind::precondition_violation, "target is the unit ideal");

  Coord m2 = m * m;
  Coord deep_mod = m2 <= kMaxModulus / m2 ? m2 * m2 : m2 * m;
  auto deep = detail::quadratic_model(d, deep_mod);
  std::vector<Coords> dg;
  for (auto g : gens) dg.push_back(detail::quadratic_coords(*deep, g));
  require(detail::certify(ideal_generated(deep, dg), {deep->from_integer(m2)}), ErrorKind::not_certified,
          "m^2 not inside I^2");

  auto a = detail::quadratic_model(d, m2);
  std::vector<Coords> ag;
  for (auto g : gens) ag.push_back(detail::quadratic_coords(*a, g));
  Ideal target = ideal_generated(a, ag);
  return Ambient{quadratic_label(d), a, target, true,
                 detail::certificate_text("(" + std::to_string(m2) + ")", deep->label(), 1), nullptr, nullptr};
}

// ---------------------------------------------------------------------------
// Z[X] with two-generator targets (c, g), g monic.

namespace detail {
/// Z[X]/(c^e, c^(e-1) g, ..., g^e) built as ((Z/c^e)[X]/(g^e)) / (mixed terms).
inline Quotient zx_power_model(Coord c, const std::vector<Coord>& g, int e) {
  Coord ce = 1;
  for (int i = 0; i < e; ++i) {
    require(ce <= kMaxModulus / c, ErrorKind::size_guard_exceeded, "coefficient modulus exceeds 2^31");
    ce *= c;
  }
  auto base = make_zmod(ce);
  auto big = poly_quotient_int(base, poly_pow(g, e, ce));
  std::vector<Coords> mixed;
  for (int j = 1; j < e; ++j) {
    Coord cj = 1;
    for (int i = 0; i < e - j; ++i) cj *= c;
    auto gj = poly_pow(g, j, ce);
    for (auto& x : gj) x = mod(x * cj, ce);
    mixed.push_back(poly_element(*big, 1, gj));
  }
  return quotient_by_ideal(ideal_generated(big, mixed));
}

inline Ideal zx_target(const Quotient& q, Coord c, const std::vector<Coord>& g) {
  const FiniteRing& src = *q.projection.source;
  return ideal_generated(q.ring, {q.project(src.from_integer(c)), q.project(poly_element(src, 1, g))});
}
}  // namespace detail

/// R = Z[X], I = (c, g) with c >= 2 and g monic of positive degree; A = R/I^2.
inline Ambient build_zx_two_generator(Coord c, const std::vector<Coord>& g) {
  require(c >= 2, ErrorKind::invalid_presentation, "integer generator must be >= 2");
  require(g.size() >= 2 && g.back() == 1, ErrorKind::invalid_presentation,
          "polynomial generator must be monic of positive degree");
  auto model = detail::zx_power_model(c, g, 2);
  auto deep = detail::zx_power_model(c, g, 3);
  const FiniteRing& ds = *deep.projection.source;
  Coord c3 = c * c * c;
  std::vector<Coords> relations{
      deep.project(ds.from_integer(c * c)),
      deep.project(detail::poly_element(ds, 1, [&] {
        auto cg = g;
        for (auto& x : cg) x = mod(x * c, c3);
        return cg;
      }())),
      deep.project(detail::poly_element(ds, 1, detail::poly_pow(g, 2, c3)))};
  require(detail::certify(detail::zx_target(deep, c, g), relations), ErrorKind::not_certified,
          "I^2 relations not inside I^2 of the cube model");
  Ideal target = detail::zx_target(model, c, g);
  std::string gs = detail::int_poly_string(g);
  return Ambient{"Z[X]", model.ring, target, true,
                 detail::certificate_text("(" + std::to_string(c * c) + ", " + std::to_string(c) + "*(" + gs +
                                              "), (" + gs + ")^2)",
                                          "Z[X]/(c, g)^3", relations.size()),
                 nullptr, std::make_shared<const Quotient>(model)};
}

/// I = (p^2, X^n) in Z[X]; the default n = 2 is the ideal (X^2, p^2).
inline Ambient build_zx_ideal(Coord p, int n = 2) {
  require(is_prime(p), ErrorKind::invalid_presentation, std::to_string(p) + " is not prime");
  require(n >= 1, ErrorKind::invalid_presentation, "exponent must be positive");
  return build_zx_two_generator(p * p, detail::monomial(n));
}

/// I = (p, f^n) in Z[X] with f monic and irreducible mod p.
inline Ambient build_dedekind_poly(Coord p, const std::vector<Coord>& f, int n) {
  require(is_prime(p), ErrorKind::invalid_presentation, std::to_string(p) + " is not prime");
  require(n >= 1, ErrorKind::invalid_presentation, "exponent must be positive");
  require(f.size() >= 2 && f.back() == 1, ErrorKind::invalid_presentation, "f must be monic of positive degree");
  Coords fp;
  for (Coord c : f) fp.push_back(mod(c, p));
  require(detail::is_irreducible(fp, p), ErrorKind::precondition_violation,
          detail::int_poly_string(f) + " is not irreducible mod " + std::to_string(p));
  return build_zx_two_generator(p, detail::poly_pow(f, n, p * p));
}

// ---------------------------------------------------------------------------
// F_q[X]

/// R = F_q[X], I = (f) for f monic over the prime field, A = F_q[X]/(f^2).
inline Ambient build_gf_poly(Coord q, const std::vector<Coord>& f) {
  auto [p, k] = prime_power(q);
  require(p != 0, ErrorKind::invalid_presentation, std::to_string(q) + " is not a prime power");
  require(f.size() >= 2 && mod(f.back(), p) == 1, ErrorKind::invalid_presentation, "f must be monic");
  auto field = make_gf(p, k);
  auto sq = detail::poly_pow(f, 2, p);
  auto deep_poly = detail::poly_pow(f, 3, p);
  auto deep = poly_quotient_int(field, deep_poly);
  Ideal deep_target = ideal_generated(deep, {detail::poly_element(*deep, field->rank(), f)});
  require(detail::certify(deep_target, {detail::poly_element(*deep, field->rank(), sq)}), ErrorKind::not_certified,
          "f^2 not inside (f)^2");
  auto a = poly_quotient_int(field, sq);
  Ideal target = ideal_generated(a, {detail::poly_element(*a, field->rank(), f)});
  return Ambient{"F" + std::to_string(q) + "[X]", a, target, true,
                 detail::certificate_text("((" + detail::int_poly_string(f) + ")^2)", deep->label(), 1), nullptr, nullptr};
}

// ---------------------------------------------------------------------------
// Cusp k[X^2, X^3] inside k[X]/(X^N)

struct CuspModel {
  RingPtr field;
  RingPtr truncated;  // k[X]/(X^N)
  std::shared_ptr<const Subring> ring;
  int truncation = 0;

  /// Element of the subring from prime-field coefficients, or an error if it is not in k[X^2,X^3].
  Coords element(const std::vector<Coord>& c) const {
    return ring->to_subring(detail::poly_element(*truncated, field->rank(), c));
  }
  /// beta * X^j for basis element beta of k.
  Coords scaled_power(std::size_t beta, int j) const {
    Coords x = truncated->zero();
    x[static_cast<std::size_t>(j) * field->rank() + beta] = 1;
    return ring->to_subring(x);
  }
};

inline std::string cusp_label(Coord q) { return "F" + std::to_string(q) + "[X^2,X^3]"; }

inline CuspModel cusp_model(Coord q, int truncation) {
  auto [p, k] = prime_power(q);
  require(p != 0, ErrorKind::invalid_presentation, std::to_string(q) + " is not a prime power");
  require(truncation >= 4, ErrorKind::invalid_presentation, "cusp truncation must be at least 4");
  CuspModel m;
  m.field = make_gf(p, k);
  m.truncation = truncation;
  m.truncated = poly_quotient_int(m.field, detail::monomial(truncation));
  const std::size_t r = m.field->rank();
  std::vector<Coords> gens;
  for (std::size_t i = 0; i < r; ++i) gens.push_back(m.truncated->basis(i));
  gens.push_back(m.truncated->basis(2 * r));
  gens.push_back(m.truncated->basis(3 * r));
  m.ring = std::make_shared<const Subring>(
      subring_closure(m.truncated, gens, cusp_label(q) + " mod X^" + std::to_string(truncation)));
  return m;
}

namespace detail {
inline Ideal cusp_target(const CuspModel& m, const std::vector<std::vector<Coord>>& gens) {
  std::vector<Coords> el;
  for (const auto& g : gens) el.push_back(m.element(g));
  return ideal_generated(m.ring->ring, el);
}

inline bool cusp_certifies(Coord q, const std::vector<std::vector<Coord>>& gens, int truncation) {
  CuspModel deep = cusp_model(q, truncation + 2);
  std::vector<Coords> relations;
  for (std::size_t b = 0; b < deep.field->rank(); ++b)
    for (int j : {truncation, truncation + 1}) relations.push_back(deep.scaled_power(b, j));
  return certify(cusp_target(deep, gens), relations);
}
}  // namespace detail

/// R = F_q[X^2,X^3], I generated by polynomials with prime-field coefficients.
/// truncation = 0 picks the least N >= 2*(top degree) that certifies.
inline Ambient build_cusp(Coord q, const std::vector<std::vector<Coord>>& gens, int truncation = 0) {
  require(!gens.empty(), ErrorKind::invalid_presentation, "cusp target needs generators");
  int top = 0;
  for (const auto& g : gens) top = std::max(top, static_cast<int>(g.size()) - 1);
  require(top >= 2, ErrorKind::precondition_violation, "cusp target must lie in the maximal ideal");
  int n = truncation;
  if (n == 0) {
    for (int cand = std::max(4, 2 * top); cand <= 4 * top + 8 && n == 0; ++cand)
      if (detail::cusp_certifies(q, gens, cand)) n = cand;
    require(n != 0, ErrorKind::not_certified, "no truncation certifies the cusp target");
  } else {
    require(n > top, ErrorKind::invalid_presentation, "truncation must exceed the target degree");
    require(detail::cusp_certifies(q, gens, n), ErrorKind::not_certified,
            "X^N k[X] not inside I^2 at N = " + std::to_string(n));
  }
  CuspModel m = cusp_model(q, n);
  Ideal target = detail::cusp_target(m, gens);
  return Ambient{cusp_label(q), m.ring->ring, target, true,
                 detail::certificate_text("X^" + std::to_string(n) + "*k[X]", "truncation X^" + std::to_string(n + 2),
                                          2 * m.field->rank()),
                 m.ring, nullptr};
}

/// (X^2 + b X^3, X^4) for every b in F_q, in the cusp model for the target (X^4).
struct CuspLineFamily {
  Ambient ambient;
  std::vector<Ideal> lines;  // indexed by b in element order of F_q
};

inline CuspLineFamily cusp_lines(Coord q, int truncation = 0) {
  Ambient amb = build_cusp(q, {detail::monomial(4)}, truncation);
  const Subring& sub = *amb.subring;
  const FiniteRing& v = *sub.inclusion.target;
  auto [p, k] = prime_power(q);
  const std::size_t r = static_cast<std::size_t>(k);
  CuspLineFamily out{amb, {}};
  make_gf(p, k)->for_each_element([&](const Coords& b) {
    Coords x = v.zero();
    x[2 * r] = 1;
    for (std::size_t i = 0; i < r; ++i) x[3 * r + i] = b[i];
    Coords x4 = v.zero();
    x4[4 * r] = 1;
    out.lines.push_back(ideal_generated(amb.ring, {sub.to_subring(x), sub.to_subring(x4)}));
  });
  return out;
}

// ---------------------------------------------------------------------------
// D + M: R = D + tV inside V = K[t]/(t^N)

struct DplusMModel {
  RingPtr small;  // D
  RingPtr field;  // K
  RingHom embedding;
  RingPtr truncated;  // V = K[t]/(t^N)
  std::shared_ptr<const Subring> ring;
  int truncation = 0;

  /// beta * t^j, beta a basis element of K, as an element of V.
  Coords v_element(std::size_t beta, int j) const {
    Coords x = truncated->zero();
    x[static_cast<std::size_t>(j) * field->rank() + beta] = 1;
    return x;
  }
  /// t-adic valuation of an element of V (N for zero).
  int valuation(const Coords& x) const {
    const std::size_t r = field->rank();
    for (std::size_t i = 0; i < x.size(); ++i)
      if (x[i] != 0) return static_cast<int>(i / r);
    return truncation;
  }
};

inline std::string dplusm_label(Coord p, int kd, int kk, int n) {
  return "D+M(" + std::to_string(p) + ";" + std::to_string(kd) + "," + std::to_string(kk) + ";N=" + std::to_string(n) +
         ")";
}

inline DplusMModel dplusm_model(Coord p, int kd, int kk, int truncation) {
  require(is_prime(p), ErrorKind::invalid_presentation, std::to_string(p) + " is not prime");
  require(kd >= 1 && kk % kd == 0 && kd < kk, ErrorKind::invalid_presentation,
          "D+M needs k_D | k_K and k_D < k_K");
  require(truncation >= 2, ErrorKind::invalid_presentation, "D+M truncation must be at least 2");
  DplusMModel m;
  m.small = make_gf(p, kd);
  m.field = make_gf(p, kk);
  m.embedding = subfield_embedding(m.small, m.field);
  m.truncation = truncation;
  m.truncated = poly_quotient_int(m.field, detail::monomial(truncation), "t");
  const std::size_t r = m.field->rank();
  std::vector<Coords> gens;
  for (const auto& img : m.embedding.images) {
    Coords x = m.truncated->zero();
    std::copy(img.begin(), img.end(), x.begin());
    gens.push_back(x);
  }
  for (std::size_t b = 0; b < r; ++b) gens.push_back(m.v_element(b, 1));
  m.ring = std::make_shared<const Subring>(
      subring_closure(m.truncated, gens, dplusm_label(p, kd, kk, truncation)));
  return m;
}

enum class DplusMTarget {
  power_of_v,  // t^m V
  power_of_r,  // t^m R
};

namespace detail {
inline Ideal dplusm_target(const DplusMModel& m, int level, DplusMTarget kind) {
  std::vector<Coords> gens;
  if (kind == DplusMTarget::power_of_r) {
    gens.push_back(m.ring->to_subring(m.v_element(0, level)));
  } else {
    for (std::size_t b = 0; b < m.field->rank(); ++b) gens.push_back(m.ring->to_subring(m.v_element(b, level)));
  }
  return ideal_generated(m.ring->ring, gens);
}
}  // namespace detail

/// Target t^level V (or t^level R); level = 0 means floor(N/2).
inline Ambient build_dplusm(Coord p, int kd, int kk, int truncation = 6, int level = 0,
                            DplusMTarget kind = DplusMTarget::power_of_v) {
  require(truncation >= 4, ErrorKind::invalid_presentation, "D+M truncation must be at least 4");
  if (level == 0) level = truncation / 2;
  require(level >= 1 && level < truncation, ErrorKind::invalid_presentation, "target level out of range");
  DplusMModel deep = dplusm_model(p, kd, kk, truncation + 2);
  std::vector<Coords> relations;
  for (std::size_t b = 0; b < deep.field->rank(); ++b)
    for (int j : {truncation, truncation + 1}) relations.push_back(deep.ring->to_subring(deep.v_element(b, j)));
  require(detail::certify(detail::dplusm_target(deep, level, kind), relations), ErrorKind::not_certified,
          "t^N V not inside I^2 at N = " + std::to_string(truncation));
  DplusMModel m = dplusm_model(p, kd, kk, truncation);
  return Ambient{dplusm_label(p, kd, kk, truncation), m.ring->ring, detail::dplusm_target(m, level, kind), true,
                 detail::certificate_text("t^" + std::to_string(truncation) + "*V",
                                          "truncation t^" + std::to_string(truncation + 2), relations.size()),
                 m.ring, nullptr};
}

// ---------------------------------------------------------------------------
// Raw rings described compositionally.

/// An element literal: either the image of an integer or explicit coordinates.
struct ElementLiteral {
  std::optional<Coord> integer;
  Coords coords;

  Coords resolve(const FiniteRing& r) const {
    if (integer) return r.from_integer(*integer);
    require(coords.size() == r.rank(), ErrorKind::config_error,
            "element has " + std::to_string(coords.size()) + " coordinates, ring has rank " + std::to_string(r.rank()));
    Coords c = coords;
    r.reduce(c);
    return c;
  }
};

struct RingExpr {
  enum class Kind { zmod, gf, poly_quotient, subring, quotient, product, table };
  Kind kind = Kind::zmod;
  Coord n = 0;  // zmod modulus, gf characteristic
  int k = 1;    // gf degree
  std::shared_ptr<const RingExpr> base;
  std::shared_ptr<const RingExpr> second;                 // product
  std::vector<ElementLiteral> elements;                   // modulus coefficients / generators
  std::string var = "X";
  Presentation table;                                     // explicit presentation
};

inline RingPtr build_ring(const RingExpr& e) {
  switch (e.kind) {
    case RingExpr::Kind::zmod:
      return make_zmod(e.n);
    case RingExpr::Kind::gf:
      return make_gf(e.n, e.k);
    case RingExpr::Kind::poly_quotient: {
      require(e.base != nullptr, ErrorKind::config_error, "poly_quotient needs a base ring");
      auto base = build_ring(*e.base);
      std::vector<Coords> f;
      for (const auto& c : e.elements) f.push_back(c.resolve(*base));
      return poly_quotient(base, f, e.var);
    }
    case RingExpr::Kind::subring: {
      require(e.base != nullptr, ErrorKind::config_error, "subring needs an ambient ring");
      auto amb = build_ring(*e.base);
      std::vector<Coords> g;
      for (const auto& c : e.elements) g.push_back(c.resolve(*amb));
      return subring_closure(amb, g).ring;
    }
    case RingExpr::Kind::quotient: {
      require(e.base != nullptr, ErrorKind::config_error, "quotient needs a base ring");
      auto base = build_ring(*e.base);
      std::vector<Coords> g;
      for (const auto& c : e.elements) g.push_back(c.resolve(*base));
      return quotient_by_ideal(ideal_generated(base, g)).ring;
    }
    case RingExpr::Kind::product:
      require(e.base && e.second, ErrorKind::config_error, "product needs two factors");
      return direct_product(build_ring(*e.base), build_ring(*e.second));
    case RingExpr::Kind::table:
      return FiniteRing::create(e.table);
  }
  throw Error(ErrorKind::config_error, "unknown ring constructor");
}

// ---------------------------------------------------------------------------
// Specs and dispatch.

enum class Family { integers, quadratic, gf_poly, cusp, zx_ideal, dedekind_poly, dplusm, raw };

inline const char* to_string(Family f) {
  switch (f) {
    case Family::integers: return "integers";
    case Family::quadratic: return "quadratic";
    case Family::gf_poly: return "gf-poly";
    case Family::cusp: return "cusp";
    case Family::zx_ideal: return "zx-ideal";
    case Family::dedekind_poly: return "dedekind-poly";
    case Family::dplusm: return "dplusm";
    case Family::raw: return "raw";
  }
  return "?";
}

struct AmbientSpec {
  Family family = Family::integers;
  Coord n = 0;  // integers: the generator; zx-ideal: exponent
  Coord d = 0;  // quadratic
  Coord p = 0;  // prime (zx-ideal, dedekind-poly, dplusm)
  Coord q = 0;  // field size (cusp, gf-poly)
  Coord c = 0;  // zx-ideal integer generator, when given explicitly
  int exponent = 1;
  int depth = 2;       // integers model depth
  int truncation = 0;  // cusp / dplusm; 0 = default
  int k_d = 1, k_k = 2;
  int level = 0;
  DplusMTarget dplusm_kind = DplusMTarget::power_of_v;
  std::vector<Coord> poly;                      // f or g, low to high
  std::vector<std::vector<Coord>> poly_gens;    // cusp target generators
  std::vector<QuadraticElement> quadratic_gens;
  std::shared_ptr<const RingExpr> ring;         // raw
  std::vector<ElementLiteral> raw_gens;         // raw
  std::string label;                            // raw
};

namespace detail {
inline Ambient build_ambient_unchecked(const AmbientSpec& s) {
  switch (s.family) {
    case Family::integers:
      return build_integers(s.n, s.depth);
    case Family::quadratic:
      return build_quadratic(s.d, s.quadratic_gens);
    case Family::gf_poly:
      return build_gf_poly(s.q, s.poly);
    case Family::cusp:
      return build_cusp(s.q, s.poly_gens, s.truncation);
    case Family::zx_ideal:
      if (s.c != 0) return build_zx_two_generator(s.c, s.poly);
      return build_zx_ideal(s.p, s.n == 0 ? 2 : static_cast<int>(s.n));
    case Family::dedekind_poly:
      return build_dedekind_poly(s.p, s.poly, s.exponent);
    case Family::dplusm:
      return build_dplusm(s.p, s.k_d, s.k_k, s.truncation == 0 ? 6 : s.truncation, s.level, s.dplusm_kind);
    case Family::raw: {
      require(s.ring != nullptr, ErrorKind::config_error, "raw ambient needs a ring");
      auto r = build_ring(*s.ring);
      std::vector<Coords> g;
      for (const auto& e : s.raw_gens) g.push_back(e.resolve(*r));
      return Ambient::raw(s.label.empty() ? r->label() : s.label, ideal_generated(r, g));
    }
  }
  throw Error(ErrorKind::config_error, "unknown ambient family");
}
}  // namespace detail

/// Builds and certifies the ambient; the model itself must fit the size guard.
inline Ambient build_ambient(const AmbientSpec& s) {
  Ambient amb = detail::build_ambient_unchecked(s);
  check_size_guard(amb.ring->size(), "model of " + amb.label);
  return amb;
}

// ---------------------------------------------------------------------------
// Cross-depth consistency.

struct DepthComparison {
  std::size_t shallow_overideals = 0;
  std::size_t deep_overideals = 0;
  std::size_t mismatches = 0;
  std::string first_mismatch;
  bool consistent() const { return mismatches == 0 && shallow_overideals == deep_overideals; }
};

/// Compares divisor/molecule verdicts and factorization counts of the targets
/// of two models related by a surjection phi: deep -> shallow.
inline DepthComparison compare_depths(const Ambient& shallow, const Ambient& deep, const RingHom& phi) {
  FactorizationEngine es(shallow.target), ed(deep.target);
  DepthComparison out;
  out.shallow_overideals = es.lattice().size();
  out.deep_overideals = ed.lattice().size();
  auto note = [&](const std::string& what) {
    if (out.mismatches++ == 0) out.first_mismatch = what;
  };
  for (std::size_t j = 0; j < ed.lattice().size(); ++j) {
    Ideal img = ideal_image(phi, ed.lattice()[j]);
    int s = es.lattice().index_of(img);
    if (s == OverIdealLattice::kOutside) {
      note("image of " + ed.lattice()[j].to_string() + " is not an over-ideal");
      continue;
    }
    auto si = static_cast<std::size_t>(s);
    if (ed.divides_target(j) != es.divides_target(si)) note("divisibility differs at " + img.to_string());
    if (ed.is_molecule(j) != es.is_molecule(si)) note("molecule verdict differs at " + img.to_string());
  }
  auto rs = es.molecularizations(), rd = ed.molecularizations();
  if (rs.factorizations.size() != rd.factorizations.size()) note("factorization counts differ");
  return out;
}

/// Integers at depth 2 against depth 4.
inline DepthComparison integers_cross_depth(Coord n) {
  Ambient a = build_integers(n, 2), b = build_integers(n, 4);
  RingHom phi{b.ring, a.ring, {a.ring->one()}};
  return compare_depths(a, b, phi);
}

/// Cusp target at truncation N against N + 2.
inline DepthComparison cusp_cross_depth(Coord q, const std::vector<std::vector<Coord>>& gens, int truncation = 0) {
  Ambient a = build_cusp(q, gens, truncation);
  const auto k = static_cast<std::size_t>(prime_power(q).second);
  const int n = static_cast<int>(a.subring->inclusion.target->rank() / k);
  Ambient b = build_cusp(q, gens, n + 2);
  const Subring& ss = *a.subring;
  const Subring& ds = *b.subring;
  const std::size_t keep = ss.inclusion.target->rank();
  RingHom phi{b.ring, a.ring, {}};
  for (const auto& img : ds.inclusion.images) {
    Coords t(img.begin(), img.begin() + static_cast<std::ptrdiff_t>(keep));
    phi.images.push_back(ss.to_subring(t));
  }
  return compare_depths(a, b, phi);
}

}  // namespace molfact

namespace molfact {

/// The ambients exercised by the default property suite and the sample configs.
inline std::vector<std::pair<std::string, AmbientSpec>> shipped_specs() {
  std::vector<std::pair<std::string, AmbientSpec>> out;
  auto add = [&](std::string name, AmbientSpec s) { out.emplace_back(std::move(name), std::move(s)); };
  for (Coord n : {2, 12, 30}) {
    AmbientSpec s;
    s.family = Family::integers;
    s.n = n;
    add("integers-" + std::to_string(n), s);
  }
  {
    AmbientSpec s;
    s.family = Family::quadratic;
    s.d = -5;
    s.quadratic_gens = {{6, 0}};
    add("quadratic-m5-6", s);
    s.quadratic_gens = {{2, 0}, {1, 1}};
    add("quadratic-m5-p2", s);
    s.d = -1;
    s.quadratic_gens = {{5, 0}};
    add("quadratic-m1-5", s);
  }
  for (Coord p : {2, 3}) {
    AmbientSpec s;
    s.family = Family::zx_ideal;
    s.p = p;
    s.n = 2;
    add("zx-ideal-p" + std::to_string(p), s);
  }
  for (int n : {1, 2}) {
    AmbientSpec s;
    s.family = Family::dedekind_poly;
    s.p = 2;
    s.poly = {0, 1};
    s.exponent = n;
    add("dedekind-poly-2-x-" + std::to_string(n), s);
  }
  {
    AmbientSpec s;
    s.family = Family::zx_ideal;
    s.c = 2;
    s.poly = {0, 1, 1};
    add("zx-2-x2-plus-x", s);
  }
  for (Coord q : {2, 3, 4}) {
    AmbientSpec s;
    s.family = Family::cusp;
    s.q = q;
    s.poly_gens = {detail::monomial(4)};
    add("cusp-q" + std::to_string(q) + "-x4", s);
  }
  {
    AmbientSpec s;
    s.family = Family::cusp;
    s.q = 2;
    s.poly_gens = {detail::monomial(2)};
    add("cusp-q2-x2", s);
  }
  {
    AmbientSpec s;
    s.family = Family::dplusm;
    s.p = 2;
    s.k_d = 1;
    s.k_k = 2;
    s.truncation = 6;
    add("dplusm-2-1-2-6", s);
  }
  {
    AmbientSpec s;
    s.family = Family::gf_poly;
    s.q = 4;
    s.poly = {1, 1, 1};
    add("gf-poly-4-x2-x-1", s);
  }
  return out;
}

}  // namespace molfact
