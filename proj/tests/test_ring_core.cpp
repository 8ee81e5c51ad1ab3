#include <algorithm>
#include <random>
#include <set>

#include <gtest/gtest.h>

#include "molfact/ideal.hpp"
#include "molfact/ring.hpp"

using namespace molfact;

namespace {

template <class F>
ErrorKind error_kind(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "expected an Error";
  return ErrorKind::config_error;
}

std::size_t brute_size(const FiniteRing& r) {
  std::size_t n = 0;
  r.for_each_element([&](const Coords&) { ++n; });
  return n;
}

}  // namespace

TEST(ModArith, InverseAndNormalizer) {
  EXPECT_EQ(mul_mod(inverse_mod(7, 144), 7, 144), 1);
  EXPECT_EQ(mod(-5, 12), 7);
  for (Coord a = 1; a < 36; ++a) {
    auto [u, g] = unit_normalizer(a, 36);
    EXPECT_EQ(mul_mod(u, a, 36), g);
    EXPECT_EQ(36 % g, 0);
  }
}

TEST(ModArith, PrimePowers) {
  EXPECT_EQ(prime_power(8), (std::pair<Coord, int>{2, 3}));
  EXPECT_EQ(prime_power(9), (std::pair<Coord, int>{3, 2}));
  EXPECT_EQ(prime_power(12).first, 0);
  EXPECT_EQ(prime_divisors(360), (std::vector<Coord>{2, 3, 5}));
}

TEST(ZmodMatrix, HowellFormIsCanonical) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const Coord m = std::vector<Coord>{12, 16, 36, 144}[trial % 4];
    ZmodMatrix a(m, 3);
    std::vector<Coords> rows;
    for (int i = 0; i < 3; ++i) {
      Coords r(3);
      for (auto& x : r) x = static_cast<Coord>(rng() % m);
      rows.push_back(r);
    }
    for (const auto& r : rows) a.append_row(r);
    ZmodMatrix b(m, 3);
    std::shuffle(rows.begin(), rows.end(), rng);
    for (const auto& r : rows) b.append_row(r);
    b.append_row(rows[0]);
    ZmodMatrix h = howell_form(a);
    EXPECT_EQ(h, howell_form(b));
    EXPECT_EQ(h, howell_form(h));
    for (const auto& r : rows) EXPECT_TRUE(howell_contains(h, r));
  }
}

TEST(ZmodMatrix, ModuleSizeMatchesSpanCount) {
  ZmodMatrix a(12, 2);
  a.append_row(Coords{2, 4});
  a.append_row(Coords{3, 0});
  std::set<Coords> span;
  for (Coord x = 0; x < 12; ++x)
    for (Coord y = 0; y < 12; ++y) span.insert({(2 * x + 3 * y) % 12, (4 * x) % 12});
  EXPECT_EQ(howell_module_size(howell_form(a)), span.size());
}

TEST(ZmodMatrix, DiagonalizationInverts) {
  ZmodMatrix a(36, 3);
  a.append_row(Coords{6, 4, 2});
  a.append_row(Coords{0, 9, 3});
  Diagonalization d = diagonalize(a);
  for (std::size_t i = 0; i < 3; ++i) {
    Coords e(3, 0);
    e[i] = 1;
    EXPECT_EQ(row_times(row_times(e, d.v), d.v_inverse), e);
  }
}

TEST(FiniteRing, ZmodExamples) {
  auto r = make_zmod(6);
  EXPECT_EQ(r->size(), 6u);
  EXPECT_EQ(r->characteristic(), 6);
  EXPECT_EQ(r->add({4}, {5}), Coords{3});
  EXPECT_EQ(r->mul({4}, {5}), Coords{2});
  auto z = make_zmod(144);
  EXPECT_FALSE(z->is_unit({12}));
  EXPECT_TRUE(z->is_unit({7}));
  EXPECT_EQ(error_kind([] { make_zmod(1); }), ErrorKind::invalid_presentation);
}

TEST(FiniteRing, OneIsAlwaysAUnit) {
  for (auto r : {make_zmod(2), make_zmod(144), make_gf(3, 2), poly_quotient_int(make_zmod(4), {0, 0, 1})})
    EXPECT_TRUE(r->is_unit(r->one()));
}

TEST(FiniteRing, GaloisFields) {
  auto f2 = make_gf(2, 1);
  EXPECT_EQ(f2->size(), 2u);
  auto f4 = make_gf(2, 2);
  ASSERT_TRUE(f4->field_info().has_value());
  EXPECT_EQ(f4->field_info()->modulus, (Coords{1, 1, 1}));
  auto f9 = make_gf(3, 2);
  EXPECT_EQ(f9->size(), 9u);
  std::size_t units = 0;
  f9->for_each_element([&](const Coords& x) {
    if (f9->is_zero(x)) return;
    ++units;
    EXPECT_TRUE(f9->is_unit(x));
    bool has_inverse = false;
    f9->for_each_element([&](const Coords& y) { has_inverse = has_inverse || f9->mul(x, y) == f9->one(); });
    EXPECT_TRUE(has_inverse);
  });
  EXPECT_EQ(units, 8u);
  EXPECT_EQ(error_kind([] { make_gf(4, 1); }), ErrorKind::invalid_presentation);
}

TEST(FiniteRing, LeastIrreducibleIsLexicographicallyFirst) {
  EXPECT_EQ(least_irreducible(2, 3), (Coords{1, 1, 0, 1}));
  EXPECT_EQ(least_irreducible(3, 2), (Coords{1, 0, 1}));
}

TEST(FiniteRing, SubfieldEmbeddings) {
  auto f2 = make_gf(2, 1), f4 = make_gf(2, 2), f8 = make_gf(2, 3), f16 = make_gf(2, 4);
  RingHom e = subfield_embedding(f2, f4);
  EXPECT_EQ(e.apply(f2->zero()), f4->zero());
  EXPECT_EQ(e.apply(f2->one()), f4->one());
  RingHom g = subfield_embedding(f4, f16);
  EXPECT_TRUE(g.is_homomorphism());
  std::set<Coords> image;
  f4->for_each_element([&](const Coords& x) { image.insert(g.apply(x)); });
  EXPECT_EQ(image.size(), 4u);
  for (const auto& x : image)
    for (const auto& y : image) {
      EXPECT_TRUE(image.count(f16->mul(x, y)));
      EXPECT_TRUE(image.count(f16->add(x, y)));
    }
  EXPECT_EQ(error_kind([&] { subfield_embedding(f4, f8); }), ErrorKind::no_embedding);
  EXPECT_EQ(error_kind([&] { subfield_embedding(make_gf(3, 1), f4); }), ErrorKind::no_embedding);
}

TEST(FiniteRing, PolynomialQuotients) {
  auto f2 = make_gf(2, 1);
  auto a = poly_quotient_int(f2, {0, 0, 0, 0, 1});
  EXPECT_EQ(a->size(), 16u);
  EXPECT_EQ(a->rank(), 4u);
  auto b = poly_quotient_int(make_zmod(16), {0, 0, 0, 0, 1});
  EXPECT_EQ(b->size(), 65536u);
  EXPECT_EQ(b->characteristic(), 16);
  auto field = poly_quotient_int(f2, {1, 1, 1});
  field->for_each_element([&](const Coords& x) {
    field->for_each_element([&](const Coords& y) {
      if (!field->is_zero(x) && !field->is_zero(y)) {
        EXPECT_FALSE(field->is_zero(field->mul(x, y)));
      }
    });
  });
  EXPECT_EQ(error_kind([&] { poly_quotient_int(make_zmod(4), {1, 0, 2}); }), ErrorKind::invalid_presentation);
}

TEST(FiniteRing, RejectsBadPresentations) {
  Presentation p;
  p.orders = {2, 2};
  p.one = {1, 0};
  // e0*e1 = e1 but e1*e0 = e0.
  p.structure = {{1, 0}, {0, 1}, {1, 0}, {1, 1}};
  EXPECT_EQ(error_kind([&] { FiniteRing::create(p); }), ErrorKind::invalid_presentation);
  Presentation q;
  q.orders = {4, 2};
  q.one = {1, 0};
  q.structure = {{1, 0}, {0, 1}, {0, 1}, {1, 0}};  // e1*e1 = 1 has order 4, not killed by 2
  EXPECT_EQ(error_kind([&] { FiniteRing::create(q); }), ErrorKind::invalid_presentation);
  Presentation r;
  r.orders = {2};
  r.one = {0};
  r.structure = {{1}};
  EXPECT_EQ(error_kind([&] { FiniteRing::create(r); }), ErrorKind::invalid_presentation);
}

TEST(FiniteRing, MixedRingOperandsAreRejected) {
  auto a = make_zmod(6), b = make_zmod(10);
  EXPECT_EQ(error_kind([&] { add(from_integer(a, 1), from_integer(b, 1)); }), ErrorKind::ring_mismatch);
  EXPECT_EQ(error_kind([&] { mul(from_integer(a, 1), from_integer(b, 1)); }), ErrorKind::ring_mismatch);
}

TEST(FiniteRing, DirectProduct) {
  auto f2 = make_gf(2, 1);
  auto p = direct_product(f2, f2);
  EXPECT_EQ(p->size(), 4u);
  EXPECT_EQ(brute_size(*p), 4u);
  EXPECT_FALSE(p->is_unit({1, 0}));
  EXPECT_EQ(p->mul({1, 0}, {1, 0}), (Coords{1, 0}));
}

TEST(Subring, CuspClosureHasEightElements) {
  auto a = poly_quotient_int(make_gf(2, 1), {0, 0, 0, 0, 1});
  Subring s = subring_closure(a, {a->basis(2), a->basis(3)});
  EXPECT_EQ(s.ring->size(), 8u);
  EXPECT_TRUE(s.inclusion.is_homomorphism());
  std::vector<Coords> gens;
  for (std::size_t i = 0; i < s.ring->rank(); ++i) gens.push_back(s.inclusion.apply(s.ring->basis(i)));
  EXPECT_EQ(subring_closure(a, gens).ring->size(), 8u);
  for (const auto& g : {a->one(), a->basis(2), a->basis(3)}) EXPECT_TRUE(s.coordinates_of(g).has_value());
  EXPECT_FALSE(s.coordinates_of(a->basis(1)).has_value());
}

TEST(Subring, EmptyGeneratorsGivePrimeSubring) {
  auto a = poly_quotient_int(make_zmod(6), {0, 0, 1});
  EXPECT_EQ(subring_closure(a, {}).ring->size(), 6u);
}

TEST(Subring, DplusMClosureHas2048Elements) {
  auto f2 = make_gf(2, 1), f4 = make_gf(2, 2);
  auto v = poly_quotient(f4, {f4->zero(), f4->zero(), f4->zero(), f4->zero(), f4->zero(), f4->zero(), f4->one()},
                         "t");
  RingHom e = subfield_embedding(f2, f4);
  std::vector<Coords> gens;
  f2->for_each_element([&](const Coords& x) {
    Coords y = v->zero();
    Coords k = e.apply(x);
    std::copy(k.begin(), k.end(), y.begin());
    gens.push_back(y);
  });
  for (std::size_t b = 0; b < 2; ++b) {
    Coords y = v->zero();
    y[2 + b] = 1;
    gens.push_back(y);
  }
  EXPECT_EQ(subring_closure(v, gens).ring->size(), 2048u);
}

TEST(Quotient, SizesMultiply) {
  auto z = make_zmod(144);
  for (Coord g : {2, 6, 12, 144}) {
    Ideal i = ideal_generated(z, {z->from_integer(g)});
    Quotient q = quotient_by_ideal(i);
    EXPECT_EQ(q.ring->size() * i.size(), z->size());
    EXPECT_TRUE(q.projection.is_homomorphism());
  }
  EXPECT_EQ(quotient_by_ideal(ideal_generated(z, {z->from_integer(12)})).ring->size(), 12u);
  // The zero ring has no presentation with orders >= 2.
  EXPECT_EQ(error_kind([&] { quotient_by_ideal(unit_ideal(z)); }), ErrorKind::precondition_violation);
}

TEST(Quotient, ZeroIdealGivesIsomorphicCopy) {
  auto a = poly_quotient_int(make_zmod(4), {1, 0, 1});
  Quotient q = quotient_by_ideal(zero_ideal(a));
  EXPECT_EQ(q.ring->size(), a->size());
  a->for_each_element([&](const Coords& x) { EXPECT_EQ(q.lift(q.project(x)), x); });
}

TEST(Quotient, ZxAmbientHas4096Elements) {
  auto b = poly_quotient_int(make_zmod(16), {0, 0, 0, 0, 1});
  Coords x2 = b->scale(b->basis(2), 4), x3 = b->scale(b->basis(3), 4);
  Quotient q = quotient_by_ideal(ideal_generated(b, {x2, x3}));
  EXPECT_EQ(q.ring->size(), 4096u);
  EXPECT_EQ(q.ring->size(), 16u * 16u * 4u * 4u);
}

TEST(RingHom, PreservesStructureOnAllBasisPairs) {
  auto f4 = make_gf(2, 2);
  auto a = poly_quotient_int(f4, {0, 0, 1});
  Quotient q = quotient_by_ideal(ideal_generated(a, {a->basis(2)}));
  const RingHom& h = q.projection;
  EXPECT_EQ(h.apply(a->one()), q.ring->one());
  for (std::size_t i = 0; i < a->rank(); ++i)
    for (std::size_t j = 0; j < a->rank(); ++j)
      EXPECT_EQ(h.apply(a->mul(a->basis(i), a->basis(j))),
                q.ring->mul(h.apply(a->basis(i)), h.apply(a->basis(j))));
}

TEST(SizeGuard, RejectsLargeEnumerations) {
  ScopedSizeGuard guard(100);
  auto r = make_zmod(144);
  EXPECT_EQ(error_kind([&] { r->for_each_element([](const Coords&) {}); }), ErrorKind::size_guard_exceeded);
}
