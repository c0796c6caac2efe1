#include <gtest/gtest.h>

#include "pv/construct.hpp"
#include "support.hpp"

using namespace pv;

namespace {

DiffPoly e(int i, int k = 0) { return DiffPoly::var(i, k); }
using PM = Matrix<DiffPoly>;
using LM = Matrix<LiouvExpr>;

ChevalleyRep rep_of(RootType t, int r) { return build_rep(build_root_system(t, r)); }

}  // namespace

TEST(SymGroup, LogDerivativeExamples) {
  auto rep = rep_of(RootType::A, 3);
  EXPECT_TRUE(log_derivative(GroupWord<DiffPoly>{}, 4).is_zero());
  EXPECT_TRUE(log_derivative(PM::identity(4), Tag::UnipotentLower).is_zero());
  for (int i = 1; i <= rep.m(); ++i) {
    GroupWord<DiffPoly> w{unipotent_factor(rep, rep.rs().beta(i), e(i))};
    EXPECT_EQ(log_derivative(w, 4), lift<DiffPoly>(rep.Xneg(i)).scaled(e(i, 1)));
    EXPECT_EQ(log_derivative_direct(w, 4), log_derivative(w, 4));
  }
  GroupWord<LiouvExpr> t{torus_factor(rep, 1, -e(3))};
  EXPECT_EQ(log_derivative_direct(t, 4), lift<LiouvExpr>(rep.H(1)).scaled(LiouvExpr(-e(3))));
  EXPECT_EQ(log_derivative(word_matrix(t, 4), Tag::TorusDiagonal), log_derivative(t, 4));
}

TEST(SymGroup, AdjointFormulas) {
  auto rep = rep_of(RootType::A, 3);
  const auto& rs = rep.rs();
  DiffPoly x = e(1);
  for (int a = 1; a <= 3; ++a)
    for (int b = 1; b <= 3; ++b) {
      Root beta = rs.simple(b);
      GroupWord<DiffPoly> u{unipotent_factor(rep, beta, x)};
      PM lhs = adjoint(u, lift<DiffPoly>(rep.H(a)));
      PM rhs = lift<DiffPoly>(rep.H(a)) -
               lift<DiffPoly>(rep.X(beta)).scaled(x * Rational(cartan_integer(rs, beta, rs.simple(a))));
      EXPECT_EQ(lhs, rhs) << a << "," << b;
    }
  for (const auto& beta : rs.roots()) {
    GroupWord<DiffPoly> u{unipotent_factor(rep, beta, x)};
    RatMatrix Hb = bracket(rep.X(beta), rep.X(-beta));
    PM rhs = lift<DiffPoly>(rep.X(-beta)) + lift<DiffPoly>(Hb).scaled(x) - lift<DiffPoly>(rep.X(beta)).scaled(x * x);
    EXPECT_EQ(adjoint(u, lift<DiffPoly>(rep.X(-beta))), rhs) << beta.to_string();
  }
  PM a = lift<DiffPoly>(rep.A0_plus()) + lift<DiffPoly>(rep.H(2)).scaled(e(2));
  EXPECT_EQ(adjoint(GroupWord<DiffPoly>{}, a), a);
}

TEST(SymGroup, GaugeExamples) {
  auto rep = rep_of(RootType::A, 1);
  PM A = lift<DiffPoly>(rep.A0_plus()) + lift<DiffPoly>(rep.H(1)).scaled(e(1));
  EXPECT_EQ(gauge(GroupWord<DiffPoly>{}, A), A);
  GroupWord<DiffPoly> u{unipotent_factor(rep, rep.rs().beta(1), e(1))};
  PM expected(2, 2);
  expected(0, 1) = DiffPoly(1);
  expected(1, 0) = e(1, 1) + e(1).pow(2);
  EXPECT_EQ(gauge(u, A), expected);
  EXPECT_EQ(gauge(u, PM(2, 2)), log_derivative(u, 2));
}

TEST(SymGroup, DecomposeLogDerivativeOfUnipotentWord) {
  auto rep = rep_of(RootType::A, 3);
  auto w = unipotent_word(rep, generic_eta(6));
  auto c = rep.decompose(log_derivative(w, 4));
  EXPECT_EQ(c.neg[5], parse_diffpoly("e6' + e3*e4' - e5'*e1 + e3'*e2*e1"));
  for (const auto& h : c.h) EXPECT_TRUE(h.is_zero());
  for (const auto& p : c.pos) EXPECT_TRUE(p.is_zero());
}

TEST(SymGroup, TagsAndInversion) {
  auto rep = rep_of(RootType::A, 2);
  PM u = unipotent_factor(rep, rep.rs().beta(3), e(1)).matrix();
  EXPECT_TRUE(has_tag(u, Tag::UnipotentLower));
  EXPECT_FALSE(has_tag(u, Tag::UnipotentUpper));
  EXPECT_EQ(u * closed_form_inverse(u, Tag::UnipotentLower), PM::identity(3));
  EXPECT_THROW(closed_form_inverse(u, Tag::General), Error);
  EXPECT_THROW(closed_form_inverse(u, Tag::TorusDiagonal), Error);
  PM d = PM::identity(3);
  d(0, 0) = e(1);
  EXPECT_THROW(closed_form_inverse(d, Tag::TorusDiagonal), Error);
}

TEST(SymGroupProperties, ProductRuleOnRandomProducts) {
  std::mt19937 g(5);
  const auto a2 = rep_of(RootType::A, 2), a3 = rep_of(RootType::A, 3);
  for (int k = 0; k < 200; ++k) {
    const ChevalleyRep& rep = k % 2 ? a3 : a2;
    const std::size_t n = rep.dim();
    auto A = pvtest::rand_group_word(g, rep, 2), B = pvtest::rand_group_word(g, rep, 2);
    GroupWord<LiouvExpr> AB = A;
    AB.insert(AB.end(), B.begin(), B.end());
    LM lhs = log_derivative_direct(AB, n);
    LM rhs = log_derivative_direct(A, n) + adjoint(A, log_derivative_direct(B, n));
    ASSERT_EQ(lhs, rhs) << "case " << k;
    ASSERT_EQ(log_derivative(AB, n), lhs) << "case " << k;
  }
}

TEST(SymGroupProperties, LogDerivativesAreDecomposable) {
  std::mt19937 g(6);
  for (auto [t, r] : {std::pair{RootType::A, 2}, {RootType::A, 3}, {RootType::B, 2}, {RootType::G2, 2}}) {
    auto rep = rep_of(t, r);
    for (int k = 0; k < 25; ++k) {
      auto w = pvtest::rand_group_word(g, rep, 3);
      EXPECT_NO_THROW(rep.decompose(log_derivative_direct(w, rep.dim()))) << type_label(t) << r;
    }
  }
}

TEST(SymGroupProperties, AdjointPreservesBrackets) {
  std::mt19937 g(8);
  auto rep = rep_of(RootType::A, 3);
  for (int k = 0; k < 50; ++k) {
    GroupWord<Rational> w;
    for (int j = 1; j <= 3; ++j) {
      w.push_back(unipotent_factor(rep, rep.rs().roots()[k % 12], pvtest::rand_rational(g)));
      w.push_back(torus_factor(rep, j, pvtest::rand_nonzero(g)));
    }
    RatMatrix A = rep.H(1).scaled(pvtest::rand_rational(g)) + rep.Xneg(4).scaled(pvtest::rand_rational(g)) +
                  rep.Xpos(2).scaled(pvtest::rand_rational(g));
    RatMatrix B = rep.H(3).scaled(pvtest::rand_rational(g)) + rep.Xneg(6).scaled(pvtest::rand_rational(g)) +
                  rep.Xpos(5).scaled(pvtest::rand_rational(g));
    EXPECT_EQ(adjoint(w, bracket(A, B)), bracket(adjoint(w, A), adjoint(w, B)));
  }
}
