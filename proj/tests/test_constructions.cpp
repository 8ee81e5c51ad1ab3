#include <algorithm>

#include <gtest/gtest.h>

#include "molfact/experiments.hpp"
#include "oracle_compare.hpp"

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

Ideal zi(const RingPtr& z, Coord g) { return ideal_generated(z, {z->from_integer(g)}); }

}  // namespace

TEST(Integers, ModelAndCertificate) {
  Ambient a = build_integers(12);
  EXPECT_EQ(a.label, "Z");
  EXPECT_EQ(a.ring->size(), 144u);
  EXPECT_TRUE(a.certified);
  EXPECT_FALSE(a.certificate.empty());
  EXPECT_EQ(a.target, zi(a.ring, 12));
  EXPECT_TRUE(is_molecule(build_integers(2).target));
  EXPECT_EQ(divisor_census(build_integers(30).target).molecule_count(), 3u);
  EXPECT_EQ(error_kind([] { build_integers(1); }), ErrorKind::invalid_presentation);
}

TEST(Integers, DeeperModelsAgree) {
  for (Coord n : {2, 6, 12, 30, 36, 60}) {
    auto c = integers_cross_depth(n);
    EXPECT_TRUE(c.consistent()) << n << ": " << c.first_mismatch;
    EXPECT_EQ(c.shallow_overideals, c.deep_overideals);
  }
}

TEST(Quadratic, SixInZSqrtMinusFive) {
  Ambient a = build_quadratic(-5, {{6, 0}});
  EXPECT_EQ(a.label, "Z[sqrt(-5)]");
  EXPECT_EQ(a.ring->size(), 36u * 36u);
  EXPECT_TRUE(a.certified);
}

TEST(Quadratic, NormTwoPrime) {
  Ambient a = build_quadratic(-5, {{2, 0}, {1, 1}});
  EXPECT_TRUE(is_molecule(a.target));
  EXPECT_TRUE(is_prime(a.target));
  EXPECT_EQ(a.target.index(), 2u);
  EXPECT_EQ(quotient_by_ideal(a.target).ring->size(), 2u);
}

TEST(Quadratic, FiveSplitsInGaussianIntegers) {
  Ambient a = build_quadratic(-1, {{5, 0}});
  auto r = molecularizations(a);
  ASSERT_EQ(r.factorizations.size(), 1u);
  ASSERT_EQ(r.factorizations[0].size(), 2u);
  EXPECT_NE(r.factorizations[0][0], r.factorizations[0][1]);
  for (const auto& m : r.factorizations[0]) EXPECT_TRUE(is_prime(m));
  auto elem = [&](Coord x, Coord y) {
    Coords c{x, y};
    a.ring->reduce(c);
    return c;
  };
  std::vector<Ideal> expected{ideal_generated(a.ring, {elem(2, 1)}), ideal_generated(a.ring, {elem(2, -1)})};
  std::sort(expected.begin(), expected.end());
  EXPECT_EQ(r.factorizations[0], expected);
}

TEST(Quadratic, RejectsBadDiscriminants) {
  EXPECT_EQ(error_kind([] { build_quadratic(5, {{2, 0}}); }), ErrorKind::invalid_presentation);
  EXPECT_EQ(error_kind([] { build_quadratic(-4, {{2, 0}}); }), ErrorKind::invalid_presentation);
  EXPECT_EQ(error_kind([] { build_quadratic(-5, {{1, 0}}); }), ErrorKind::precondition_violation);
}

TEST(Cusp, DefaultTruncationForXFour) {
  Ambient a = build_cusp(2, {detail::monomial(4)});
  EXPECT_EQ(a.label, "F2[X^2,X^3]");
  ASSERT_TRUE(a.subring);
  EXPECT_EQ(a.subring->inclusion.target->rank(), 10u);
  EXPECT_EQ(a.ring->size(), 512u);
  EXPECT_TRUE(a.certified);
}

TEST(Cusp, RefusesTruncationThatDoesNotCertify) {
  EXPECT_EQ(error_kind([] { build_cusp(2, {detail::monomial(4)}, 6); }), ErrorKind::not_certified);
  EXPECT_EQ(error_kind([] { build_cusp(2, {detail::monomial(1)}); }), ErrorKind::precondition_violation);
}

TEST(Cusp, LineCountEqualsFieldSize) {
  std::size_t previous = 0;
  for (Coord q : {2, 3, 4}) {
    auto r = cusp_lines_experiment(q);
    EXPECT_EQ(r.lines.size(), static_cast<std::size_t>(q));
    EXPECT_TRUE(r.passed());
    EXPECT_GT(r.lines.size(), previous);
    previous = r.lines.size();
  }
}

TEST(Cusp, SquareTargetMatchesOracle) {
  Ambient a = build_cusp(2, {detail::monomial(2)});
  auto c = oracle::compare(a.target);
  EXPECT_TRUE(c.agree) << c.detail;
  oracle::ElementRing er(*a.ring);
  std::vector<std::size_t> gens;
  for (const auto& g : a.target.ideal_generators()) gens.push_back(er.index(g));
  oracle::PairSplitter ps(er, oracle::overideals(er, gens));
  EXPECT_EQ(is_molecule(a.target), ps.is_molecule(0));
}

TEST(Cusp, DeeperModelsAgree) {
  for (Coord q : {2, 3}) {
    auto c = cusp_cross_depth(q, {detail::monomial(4)});
    EXPECT_TRUE(c.consistent()) << q << ": " << c.first_mismatch;
  }
  auto c = cusp_cross_depth(2, {detail::monomial(2)});
  EXPECT_TRUE(c.consistent()) << c.first_mismatch;
}

TEST(ZxIdeal, ModelSizesAndVerdicts) {
  Ambient a = build_zx_ideal(2, 2);
  EXPECT_EQ(a.label, "Z[X]");
  EXPECT_EQ(a.ring->size(), 4096u);
  auto orders = a.ring->orders();
  std::sort(orders.begin(), orders.end());
  EXPECT_EQ(orders, (std::vector<Coord>{4, 4, 16, 16}));
  EXPECT_EQ(a.describe(a.target), "(4, X^2)");
  for (Coord p : {2, 3}) {
    auto r = zx_square_molecule(p);
    EXPECT_TRUE(r.molecule) << p;
    EXPECT_TRUE(r.primary) << p;
    EXPECT_FALSE(r.prime) << p;
    EXPECT_TRUE(r.colon_is_square) << p;
  }
}

TEST(DedekindPoly, Verdicts) {
  Ambient a = build_dedekind_poly(2, {0, 1}, 2);
  EXPECT_EQ(a.describe(a.target), "(2, X^2)");
  EXPECT_TRUE(is_molecule(a.target));
  Ambient b = build_dedekind_poly(2, {0, 1}, 1);
  EXPECT_TRUE(is_maximal(b.target));
  EXPECT_TRUE(is_molecule(b.target));
  EXPECT_EQ(error_kind([] { build_dedekind_poly(2, {0, 1, 1}, 1); }), ErrorKind::precondition_violation);
  auto t = zx_two_generator_experiment();
  EXPECT_TRUE(t.molecule_case.molecule);
  EXPECT_FALSE(t.compound_case.molecule);
  EXPECT_TRUE(t.compound_case.witness_holds);
  EXPECT_TRUE(t.passed());
}

TEST(GfPoly, SquareModel) {
  Ambient a = build_gf_poly(4, {1, 1, 1});
  EXPECT_EQ(a.ring->size(), 256u);
  EXPECT_TRUE(a.certified);
  auto r = molecularizations(a);
  ASSERT_EQ(r.factorizations.size(), 1u);
}

TEST(DplusM, ModelAndRefusal) {
  Ambient a = build_dplusm(2, 1, 2);
  EXPECT_EQ(a.label, "D+M(2;1,2;N=6)");
  EXPECT_EQ(a.ring->size(), 2048u);
  EXPECT_TRUE(a.certified);
  EXPECT_EQ(error_kind([] { build_dplusm(2, 1, 2, 6, 3, DplusMTarget::power_of_r); }), ErrorKind::not_certified);
  EXPECT_EQ(error_kind([] { build_dplusm(2, 2, 3); }), ErrorKind::invalid_presentation);
}

TEST(DplusM, Classification) {
  auto r = dplusm_classification(2, 1, 2, 6);
  EXPECT_EQ(r.subspaces, oracle::nonzero_subspace_count(2, 2));
  EXPECT_EQ(r.subspaces, 4u);
  EXPECT_TRUE(r.all_match);
  EXPECT_TRUE(r.levels_match);
  EXPECT_EQ(r.per_level.at(1), 4u);
  EXPECT_EQ(r.per_level.at(2), 4u);
  EXPECT_EQ(r.per_level.at(3), 1u);
  EXPECT_TRUE(r.level_one_molecules);
}

TEST(DplusM, TimesRIsAMolecule) {
  DplusMModel m = dplusm_model(2, 1, 2, 6);
  Ambient a = build_dplusm(2, 1, 2);
  Ideal tr = ideal_generated(a.ring, {m.ring->to_subring(m.v_element(0, 1))});
  EXPECT_TRUE(tr.contains(a.target));
  EXPECT_TRUE(is_molecule(a, tr));
}

TEST(DplusM, SubspaceCountsMatchGaussianBinomials) {
  EXPECT_EQ(nonzero_subspaces(dplusm_model(2, 1, 3, 4)).size(), oracle::nonzero_subspace_count(2, 3));
  EXPECT_EQ(nonzero_subspaces(dplusm_model(3, 1, 2, 4)).size(), oracle::nonzero_subspace_count(3, 2));
  EXPECT_EQ(nonzero_subspaces(dplusm_model(2, 2, 4, 4)).size(), oracle::nonzero_subspace_count(4, 2));
}

TEST(RawRings, Constructors) {
  auto leaf = [](RingExpr::Kind k, Coord n, int deg = 1) {
    auto e = std::make_shared<RingExpr>();
    e->kind = k;
    e->n = n;
    e->k = deg;
    return e;
  };
  EXPECT_EQ(build_ring(*leaf(RingExpr::Kind::zmod, 12))->size(), 12u);
  EXPECT_EQ(build_ring(*leaf(RingExpr::Kind::gf, 2, 3))->size(), 8u);

  RingExpr pq;
  pq.kind = RingExpr::Kind::poly_quotient;
  pq.base = leaf(RingExpr::Kind::gf, 2);
  pq.elements = {{0, {}}, {0, {}}, {0, {}}, {0, {}}, {1, {}}};
  auto x4 = build_ring(pq);
  EXPECT_EQ(x4->size(), 16u);

  RingExpr sub;
  sub.kind = RingExpr::Kind::subring;
  sub.base = std::make_shared<RingExpr>(pq);
  sub.elements = {{std::nullopt, {0, 0, 1, 0}}, {std::nullopt, {0, 0, 0, 1}}};
  EXPECT_EQ(build_ring(sub)->size(), 8u);

  RingExpr quo;
  quo.kind = RingExpr::Kind::quotient;
  quo.base = leaf(RingExpr::Kind::zmod, 144);
  quo.elements = {{12, {}}};
  EXPECT_EQ(build_ring(quo)->size(), 12u);

  RingExpr prod;
  prod.kind = RingExpr::Kind::product;
  prod.base = leaf(RingExpr::Kind::gf, 2);
  prod.second = leaf(RingExpr::Kind::gf, 2);
  EXPECT_EQ(build_ring(prod)->size(), 4u);

  RingExpr bad;
  bad.kind = RingExpr::Kind::quotient;
  bad.base = leaf(RingExpr::Kind::zmod, 6);
  bad.elements = {{std::nullopt, {1, 2}}};
  EXPECT_EQ(error_kind([&] { build_ring(bad); }), ErrorKind::config_error);
}

TEST(Shipped, EveryAmbientBuildsCertified) {
  auto specs = shipped_specs();
  EXPECT_GE(specs.size(), 15u);
  for (const auto& [name, spec] : specs) {
    Ambient a = build_ambient(spec);
    EXPECT_TRUE(a.certified) << name;
    EXPECT_TRUE(a.target.is_proper() && !a.target.is_zero()) << name;
  }
}

TEST(Shipped, SizeGuardRejectsLargeModels) {
  ScopedSizeGuard guard(1000);
  AmbientSpec s;
  s.family = Family::zx_ideal;
  s.p = 2;
  s.n = 2;
  EXPECT_EQ(error_kind([&] { build_ambient(s); }), ErrorKind::size_guard_exceeded);
}
