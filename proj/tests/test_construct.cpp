#include <gtest/gtest.h>

#include <algorithm>

#include "pv/construct.hpp"

using namespace pv;

namespace {

DiffPoly e(int i, int k = 0) { return DiffPoly::var(i, k); }
DiffPoly P(const char* s) { return parse_diffpoly(s); }

const Pipeline& pipeline(RootType t, int r) {
  static std::map<std::pair<RootType, int>, Pipeline> cache;
  auto key = std::make_pair(t, r);
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, run_pipeline(build_rep(build_root_system(t, r)))).first;
  return it->second;
}

// Degrees of the basic invariants of the Weyl group, from the classification.
std::vector<int> weyl_degrees(RootType t, int r) {
  std::vector<int> d;
  switch (t) {
    case RootType::A:
      for (int k = 2; k <= r + 1; ++k) d.push_back(k);
      break;
    case RootType::B:
    case RootType::C:
      for (int k = 1; k <= r; ++k) d.push_back(2 * k);
      break;
    case RootType::D:
      for (int k = 1; k < r; ++k) d.push_back(2 * k);
      d.push_back(r);
      break;
    case RootType::G2: d = {2, 6}; break;
  }
  std::sort(d.begin(), d.end());
  return d;
}

// Weight of a jet monomial when eta_i^(k) has weight k + 1; -1 if the
// polynomial is not weighted homogeneous.
int homogeneous_weight(const DiffPoly& p) {
  int w = -1;
  for (const auto& [m, c] : p.terms()) {
    int t = 0;
    for (const auto& [v, ex] : m.factors()) t += (v.order + 1) * ex;
    if (w >= 0 && t != w) return -1;
    w = t;
  }
  return w;
}

}  // namespace

TEST(Construct, A1Invariant) {
  const auto& p = pipeline(RootType::A, 1);
  ASSERT_EQ(p.inv.h.size(), 1u);
  EXPECT_EQ(p.inv.indices, std::vector<int>{1});
  EXPECT_EQ(p.inv.h[0], e(1, 1) + e(1).pow(2));
  EXPECT_TRUE(p.elim.f.empty());
}

TEST(Construct, A2Invariants) {
  const auto& p = pipeline(RootType::A, 2);
  EXPECT_EQ(p.inv.indices, (std::vector<int>{2, 3}));
  EXPECT_EQ(p.inv.h[0], P("e2^2 - e2*e1 + e1^2 + e2' + e1'"));
  EXPECT_EQ(p.inv.h[1], P("-e2^2*e1 + e2*e1^2 - e2'*e1 + 2*e1'*e1 + e1''"));
}

TEST(Construct, A3StageValues) {
  const auto& p = pipeline(RootType::A, 3);
  EXPECT_EQ(p.stage1.v[3], P("-e2'*e1"));
  EXPECT_EQ(p.stage1.v[4], P("-e3'*e2"));
  EXPECT_EQ(p.stage1.v[5], P("e3*e4' - e5'*e1 + e3'*e2*e1"));
  EXPECT_EQ(p.liouville.c, (std::vector<Rational>{-1, -1, -1}));
  EXPECT_EQ(p.liouville.gbar, (std::vector<DiffPoly>{-e(3), -e(2), -e(1)}));
  EXPECT_EQ(p.inv.indices, (std::vector<int>{3, 5, 6}));
  EXPECT_EQ(p.stage2.p[5].size(), 7u);
  for (int i = 1; i <= 6; ++i) EXPECT_EQ(p.raw.q[i - 1], p.raw.h[i - 1] - e(i, 1) - p.stage2.ell[i - 1]) << i;
  EXPECT_EQ(p.elim.solve_order, (std::vector<int>{4, 5, 6}));
}

TEST(Construct, G2Shape) {
  const auto& p = pipeline(RootType::G2, 2);
  EXPECT_EQ(p.inv.indices, (std::vector<int>{2, 6}));
  EXPECT_EQ(p.inv.h[0], P("e2^2 - 3*e2*e1 + 3*e1^2 + e2' + 3*e1'"));
  EXPECT_EQ(p.inv.h[1].size(), 51u);
  EXPECT_EQ(p.inv.h[1].coefficient(Monomial::of({1, 5})), make_rational(1, 2));
  EXPECT_EQ(p.inv.h[1].coefficient(Monomial::of({1, 0}, 6)), Rational(1));
}

// The unipotent logarithmic derivative for A2, computed from explicit matrices.
TEST(Construct, A2UnipotentLogDerivativeTwoWays) {
  auto rep = build_rep(build_root_system(RootType::A, 2));
  const std::size_t n = 3;
  Matrix<DiffPoly> u = Matrix<DiffPoly>::identity(n);
  for (int i = 1; i <= rep.m(); ++i) {
    Matrix<DiffPoly> f = Matrix<DiffPoly>::identity(n) + lift<DiffPoly>(rep.Xneg(i)).scaled(e(i));
    u = u * f;  // each X is square-zero in the natural representation
  }
  Matrix<DiffPoly> nil = Matrix<DiffPoly>::identity(n) - u, inv = Matrix<DiffPoly>::identity(n), pw = nil;
  for (std::size_t k = 1; k < n; ++k, pw = pw * nil) inv = inv + pw;
  ASSERT_EQ(inv * u, Matrix<DiffPoly>::identity(n));
  Matrix<DiffPoly> du(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) du(r, c) = derive(u(r, c));
  auto coeffs = rep.decompose(du * inv);
  auto s1 = logderiv_unipotent(rep);
  for (int i = 1; i <= rep.m(); ++i) EXPECT_EQ(coeffs.neg[i - 1], e(i, 1) + s1.v[i - 1]) << i;
}

TEST(Construct, AssembleAndSpecialize) {
  const auto& p = pipeline(RootType::A, 1);
  auto A = assemble_A_G(p.rep, p.inv);
  EXPECT_EQ(A, lift<DiffPoly>(p.rep.A0_plus()) + lift<DiffPoly>(p.rep.Xneg(1)).scaled(p.inv.h[0]));
  EXPECT_EQ(A, p.A_G);
  auto s = specialize(p.rep, p.inv, {{1, DiffPoly(2)}});
  EXPECT_EQ(s.h, std::vector<DiffPoly>{DiffPoly(4)});
  EXPECT_EQ(s.A_G, assemble_A_G(p.rep, p.inv.indices, s.h));
  auto t = specialize(p.rep, p.inv, {{1, e(1, 1)}});
  EXPECT_EQ(t.h[0], e(1, 2) + e(1, 1).pow(2));
}

TEST(Construct, EndToEndSmallRanks) {
  for (auto [t, r] : {std::pair{RootType::A, 1}, {RootType::A, 2}, {RootType::B, 2}}) {
    PipelineOptions o;
    o.end_to_end = true;
    Pipeline p;
    ASSERT_NO_THROW(p = run_pipeline(build_rep(build_root_system(t, r)), o)) << type_label(t) << r;
    EXPECT_EQ(p.checks.size(), structural_check_names().size() + 1);
  }
}

TEST(Construct, Determinism) {
  auto rep = build_rep(build_root_system(RootType::A, 3));
  auto a = run_pipeline(rep), b = run_pipeline(rep);
  EXPECT_EQ(a.inv.h, b.inv.h);
  EXPECT_EQ(a.elim.f, b.elim.f);
  EXPECT_EQ(a.liouville.y, b.liouville.y);
}

TEST(Construct, UnknownTypeRejected) {
  EXPECT_THROW(parse_type_label("E8"), Error);
  EXPECT_THROW(build_root_system(RootType::G2, 3), Error);
}

class ConstructStructure : public ::testing::TestWithParam<std::pair<RootType, int>> {};

TEST_P(ConstructStructure, InvariantsHaveExpectedShape) {
  auto [t, r] = GetParam();
  const auto& p = pipeline(t, r);
  const auto& rs = p.rep.rs();
  EXPECT_EQ(p.checks, structural_check_names());
  EXPECT_EQ(p.inv.indices, rs.comp_roots());
  ASSERT_EQ(static_cast<int>(p.inv.h.size()), r);

  std::vector<int> weights;
  for (std::size_t k = 0; k < p.inv.h.size(); ++k) {
    const auto& h = p.inv.h[k];
    for (int v : h.variables()) EXPECT_LE(v, r) << "invariant " << p.inv.indices[k];
    int w = homogeneous_weight(h);
    EXPECT_EQ(w, rs.beta(p.inv.indices[k]).height() * -1 + 1) << "invariant " << p.inv.indices[k];
    weights.push_back(w);
    // linear part is a nonzero multiple of a derivative of one simple variable
    EXPECT_FALSE(h.linear_part().is_zero());
  }
  std::sort(weights.begin(), weights.end());
  EXPECT_EQ(weights, weyl_degrees(t, r));

  std::set<int> solved;
  for (const auto& [k, f] : p.elim.f) {
    EXPECT_GT(k, r);
    for (int v : f.variables()) EXPECT_LE(v, r);
    solved.insert(k);
  }
  for (int i = r + 1; i <= p.rep.m(); ++i) EXPECT_TRUE(solved.count(i)) << i;
  EXPECT_EQ(p.A_G, assemble_A_G(p.rep, p.inv));
}

INSTANTIATE_TEST_SUITE_P(Types, ConstructStructure,
                         ::testing::Values(std::pair{RootType::A, 1}, std::pair{RootType::A, 2},
                                           std::pair{RootType::A, 3}, std::pair{RootType::A, 4},
                                           std::pair{RootType::A, 5}, std::pair{RootType::B, 2},
                                           std::pair{RootType::B, 3}, std::pair{RootType::C, 3},
                                           std::pair{RootType::D, 4}, std::pair{RootType::G2, 2}),
                         [](const auto& info) {
                           return type_label(info.param.first) + std::to_string(info.param.second);
                         });
