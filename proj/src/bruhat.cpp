#include "pv/bruhat.hpp"

#include <map>
#include <mutex>

#include "pv/linalg.hpp"

namespace pv {

namespace {

const ChevalleyRep& sl_rep(std::size_t n) {
  static std::mutex mu;
  static std::map<std::size_t, ChevalleyRep> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it == cache.end())
    it = cache.emplace(n, build_rep(build_root_system(RootType::A, static_cast<int>(n) - 1))).first;
  return it->second;
}

RatMatrix antidiagonal(std::size_t n) {
  RatMatrix j(n, n);
  for (std::size_t i = 0; i < n; ++i) j(i, n - 1 - i) = 1;
  return j;
}

bool is_lower(std::size_t a, std::size_t b, Convention c) { return c == Convention::Negative ? a > b : a < b; }

struct Reduction {
  RatMatrix L1, PD, L2;
};

// M = L1 * PD * L2 with L1, L2 lower unitriangular and PD monomial.
Reduction reduce_lower(const RatMatrix& M) {
  const std::size_t n = M.rows();
  Reduction r{RatMatrix::identity(n), M, RatMatrix::identity(n)};
  RatMatrix& A = r.PD;
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t j = n;
    for (std::size_t k = n; k-- > 0;)
      if (!is_zero(A(i, k))) {
        j = k;
        break;
      }
    if (j == n) throw Error(ErrorKind::NotUnimodular, "singular matrix");
    const Rational piv = A(i, j);
    for (std::size_t rr = i + 1; rr < n; ++rr) {
      if (is_zero(A(rr, j))) continue;
      Rational c = A(rr, j) / piv;
      for (std::size_t k = 0; k < n; ++k) A(rr, k) -= c * A(i, k);
      // L1 <- L1 (I + c E_{rr,i})
      for (std::size_t k = 0; k < n; ++k) r.L1(k, i) += c * r.L1(k, rr);
    }
    for (std::size_t k = 0; k < j; ++k) {
      if (is_zero(A(i, k))) continue;
      Rational c = A(i, k) / piv;
      for (std::size_t rr = 0; rr < n; ++rr) A(rr, k) -= c * A(rr, j);
      // L2 <- (I + c E_{j,k}) L2
      for (std::size_t q = 0; q < n; ++q) r.L2(j, q) += c * r.L2(k, q);
    }
  }
  return r;
}

}  // namespace

std::vector<int> longest_permutation(std::size_t n) {
  std::vector<int> p(n);
  for (std::size_t j = 0; j < n; ++j) p[j] = static_cast<int>(n - j);
  return p;
}

RatMatrix sl_weyl_representative(const std::vector<int>& perm, WeylWord* word_out) {
  const std::size_t n = perm.size();
  // peel descents from the right: perm = perm' ∘ s_j with one fewer inversion
  std::vector<int> p = perm;
  WeylWord rev;
  for (bool again = true; again;) {
    again = false;
    for (std::size_t j = 0; j + 1 < n; ++j)
      if (p[j] > p[j + 1]) {
        std::swap(p[j], p[j + 1]);
        rev.push_back(static_cast<int>(j + 1));
        again = true;
        break;
      }
  }
  WeylWord word(rev.rbegin(), rev.rend());
  if (word_out) *word_out = word;
  if (n == 1) return RatMatrix::identity(1);
  RatMatrix nw = sl_rep(n).weyl_representative(word);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i)
      if (is_zero(nw(i, j)) == (static_cast<int>(i) + 1 == perm[j]))
        throw Error(ErrorKind::UnsupportedRep, "Weyl representative has the wrong pattern");
  return nw;
}

BruhatForm bruhat_decompose(const RatMatrix& M, Convention conv) {
  const std::size_t n = M.rows();
  if (n == 0 || M.cols() != n) throw Error(ErrorKind::NotUnimodular, "matrix is not square");
  if (determinant(M) != 1) throw Error(ErrorKind::NotUnimodular, "determinant is not 1");

  Reduction red;
  if (conv == Convention::Negative) {
    red = reduce_lower(M);
  } else {
    const RatMatrix J = antidiagonal(n);
    Reduction r = reduce_lower(J * M * J);
    red = {J * r.L1 * J, J * r.PD * J, J * r.L2 * J};
  }

  BruhatForm b;
  b.convention = conv;
  b.perm.assign(n, 0);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i)
      if (!is_zero(red.PD(i, j))) b.perm[j] = static_cast<int>(i) + 1;
  b.nw = sl_weyl_representative(b.perm, &b.word);
  b.t = *inverse(b.nw) * red.PD;

  // split L1 = uprime * v; uprime on pairs whose conjugate by n(w) leaves U
  std::vector<int> pinv(n);
  for (std::size_t j = 0; j < n; ++j) pinv[b.perm[j] - 1] = static_cast<int>(j);
  auto in_uprime = [&](std::size_t a, std::size_t c) { return !is_lower(pinv[a], pinv[c], conv); };
  RatMatrix up = RatMatrix::identity(n), v = RatMatrix::identity(n);
  for (std::size_t d = 1; d < n; ++d)
    for (std::size_t s = 0; s + d < n; ++s) {
      std::size_t a = conv == Convention::Negative ? s + d : s;
      std::size_t c = conv == Convention::Negative ? s : s + d;
      Rational acc = red.L1(a, c);
      for (std::size_t k = 0; k < n; ++k)
        if (k != a && k != c) acc -= up(a, k) * v(k, c);
      if (in_uprime(a, c)) up(a, c) = acc;
      else v(a, c) = acc;
    }
  b.uprime = up;
  b.u = *inverse(red.PD) * v * red.PD * red.L2;

  for (std::size_t i = 0; i < n; ++i) {
    b.z.push_back(b.t(i, i));
    for (std::size_t j = 0; j < n; ++j) {
      if (!is_lower(i, j, conv)) continue;
      if (in_uprime(i, j)) b.x.push_back(b.uprime(i, j));
      b.y.push_back(b.u(i, j));
    }
  }
  return b;
}

RatMatrix recompose(const BruhatForm& b) { return b.uprime * b.nw * b.t * b.u; }

BruhatForm act_on_normal_form(const RatMatrix& Y0, const RatMatrix& g, Convention c) {
  BruhatForm b = bruhat_decompose(Y0 * g, c);
  if (b.perm != longest_permutation(Y0.rows()))
    throw Error(ErrorKind::CellDegeneration, "product left the open cell");
  return b;
}

SL2Relation sl2_weyl_relation(const Rational& x) {
  if (is_zero(x)) throw Error(ErrorKind::NotClosedFormInvertible, "x must be nonzero");
  auto mat = [](Rational a, Rational b, Rational c, Rational d) {
    RatMatrix m(2, 2);
    m(0, 0) = a;
    m(0, 1) = b;
    m(1, 0) = c;
    m(1, 1) = d;
    return m;
  };
  RatMatrix nbar = mat(0, 1, -1, 0);
  auto u_neg = [&](const Rational& s) { return mat(1, 0, s, 1); };
  auto u_pos = [&](const Rational& s) { return mat(1, s, 0, 1); };
  RatMatrix t = mat(x, 0, 0, 1 / x);
  return {nbar * u_neg(x), u_neg(-1 / x) * t * u_pos(1 / x)};
}

}  // namespace pv
