#include <gtest/gtest.h>

#include <functional>

#include "pv/construct.hpp"
#include "pv/gauge.hpp"
#include "support.hpp"

using namespace pv;

namespace {

using PM = Matrix<DiffPoly>;
DiffPoly e(int i, int k = 0) { return DiffPoly::var(i, k); }

ChevalleyRep rep_of(RootType t, int r) { return build_rep(build_root_system(t, r)); }

// Recomputes the gauge action from the returned factors.
void expect_consistent(const ChevalleyRep& rep, const PM& A, const GaugeResult& g) {
  PM At = lift<DiffPoly>(g.torus) * A * lift<DiffPoly>(*inverse(g.torus));
  EXPECT_EQ(gauge(g.unipotent, At), g.A_G);
  EXPECT_EQ(g.A_G, assemble_A_G(rep, g.indices, g.f));
  EXPECT_EQ(word_matrix(g.unipotent, rep.dim()), g.u);
  // only the type A basis is ordered so that U^- is lower triangular
  if (rep.rs().type() == RootType::A) {
    EXPECT_TRUE(has_tag(g.u, Tag::UnipotentLower));
  }
}

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorKind::ParseError;
}

}  // namespace

TEST(Gauge, PlaneMembership) {
  auto rep = rep_of(RootType::A, 2);
  PM A = lift<DiffPoly>(rep.A0_plus()) + lift<DiffPoly>(rep.Xneg(3)).scaled(e(1));
  auto pm = is_in_plane(rep, A);
  EXPECT_TRUE(pm.in_plane);
  EXPECT_EQ(pm.s, (std::vector<Rational>{1, 1}));

  auto scaled = is_in_plane(rep, lift<DiffPoly>(rep.A0_plus({2, make_rational(1, 3)})));
  EXPECT_TRUE(scaled.in_plane);
  EXPECT_EQ(scaled.s, (std::vector<Rational>{2, make_rational(1, 3)}));

  // a non-simple positive root vector
  EXPECT_FALSE(is_in_plane(rep, A + lift<DiffPoly>(rep.Xpos(3))).in_plane);
  // a simple positive coefficient that is not constant
  EXPECT_FALSE(is_in_plane(rep, A + lift<DiffPoly>(rep.Xsimple(1)).scaled(e(2))).in_plane);
  // a missing simple positive root vector
  EXPECT_FALSE(is_in_plane(rep, lift<DiffPoly>(rep.Xsimple(1))).in_plane);
}

TEST(Gauge, Sl2Riccati) {
  auto rep = rep_of(RootType::A, 1);
  PM A = lift<DiffPoly>(rep.A0_plus()) + lift<DiffPoly>(rep.H(1)).scaled(e(1));
  auto g = normalize_to_AG(rep, A);
  ASSERT_EQ(g.f.size(), 1u);
  EXPECT_EQ(g.indices, std::vector<int>{1});
  EXPECT_EQ(g.f[0], e(1).pow(2) + e(1, 1));
  expect_consistent(rep, A, g);
}

TEST(Gauge, NormalFormIsFixed) {
  auto rep = rep_of(RootType::A, 3);
  auto comp = rep.rs().comp_roots();
  std::vector<DiffPoly> f{e(1, 2) + e(2), e(3).pow(2), DiffPoly(make_rational(5, 2))};
  PM A = assemble_A_G(rep, comp, f);
  auto g = normalize_to_AG(rep, A);
  EXPECT_EQ(g.f, f);
  EXPECT_EQ(g.u, PM::identity(4));
  EXPECT_EQ(g.A_G, A);
  auto again = normalize_to_AG(rep, g.A_G);
  EXPECT_EQ(again.f, g.f);
}

// Gauging the generic torus-plus-A0 matrix reproduces the constructed invariants.
TEST(Gauge, AgreesWithConstruction) {
  for (auto [t, r] : {std::pair{RootType::A, 2}, {RootType::A, 3}, {RootType::B, 2}, {RootType::G2, 2}}) {
    auto p = run_pipeline(rep_of(t, r));
    PM A = lift<DiffPoly>(p.rep.A0_plus());
    for (int i = 1; i <= r; ++i)
      A = A + lift<DiffPoly>(p.rep.H(i)).scaled(e(i) * Rational(p.rep.calibration().cartan_sign(i)));
    auto g = normalize_to_AG(p.rep, A);
    EXPECT_EQ(g.indices, p.inv.indices);
    EXPECT_EQ(g.f, p.inv.h) << type_label(t) << r;
    expect_consistent(p.rep, A, g);
  }
}

TEST(Gauge, ConstantRescaling) {
  auto rep = rep_of(RootType::A, 1);
  PM A = lift<DiffPoly>(rep.A0_plus({4})) + lift<DiffPoly>(rep.H(1)).scaled(e(1));
  auto g = normalize_to_AG(rep, A);
  EXPECT_NE(g.torus, RatMatrix::identity(2));
  expect_consistent(rep, A, g);
  EXPECT_EQ(g.f[0], e(1).pow(2) + e(1, 1));

  PM bad = lift<DiffPoly>(rep.A0_plus({2}));
  EXPECT_EQ(kind_of([&] { normalize_to_AG(rep, bad); }), ErrorKind::NonUnitScaling);
  std::string why;
  EXPECT_FALSE(rescaling_torus(rep, {2}, &why).has_value());
  EXPECT_FALSE(why.empty());
}

TEST(Gauge, RejectsMatricesOutsideThePlane) {
  auto rep = rep_of(RootType::A, 2);
  PM A = lift<DiffPoly>(rep.A0_plus() + rep.Xpos(3));
  EXPECT_EQ(kind_of([&] { normalize_to_AG(rep, A); }), ErrorKind::NotInLieAlgebra);
}

TEST(GaugeProperties, RandomPlaneMatrices) {
  std::mt19937 gen(21);
  std::vector<ChevalleyRep> reps{rep_of(RootType::A, 1), rep_of(RootType::A, 2), rep_of(RootType::A, 3),
                                 rep_of(RootType::B, 2), rep_of(RootType::G2, 2)};
  for (int k = 0; k < 100; ++k) {
    const auto& rep = reps[k % reps.size()];
    PM A = lift<DiffPoly>(rep.A0_plus());
    for (int i = 1; i <= rep.rank(); ++i)
      A = A + lift<DiffPoly>(rep.H(i)).scaled(pvtest::rand_poly(gen, rep.rank(), 2, 1, 2));
    for (int i = 1; i <= rep.m(); ++i)
      A = A + lift<DiffPoly>(rep.Xneg(i)).scaled(pvtest::rand_poly(gen, rep.rank(), 2, 1, 2));
    SCOPED_TRACE(k);
    GaugeResult g;
    ASSERT_NO_THROW(g = normalize_to_AG(rep, A));
    expect_consistent(rep, A, g);
  }
}
