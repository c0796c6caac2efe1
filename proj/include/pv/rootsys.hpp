#pragma once

#include <compare>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "pv/error.hpp"

namespace pv {

enum class RootType { A, B, C, D, G2 };

std::string type_label(RootType t);
RootType parse_type_label(const std::string& s);

// A root as integer coefficients over the simple roots.
struct Root {
  std::vector<int> coeffs;

  int height() const;
  bool is_positive() const;
  bool is_negative() const;
  Root operator-() const;
  Root operator+(const Root& o) const;
  Root operator-(const Root& o) const;
  Root scaled(int k) const;
  bool is_zero() const;
  std::string to_string() const;

  auto operator<=>(const Root&) const = default;
};

using WeylWord = std::vector<int>;  // 1-based simple reflection indices

class RootSystem {
 public:
  RootType type() const { return type_; }
  int rank() const { return rank_; }
  int num_positive() const { return static_cast<int>(positive_.size()); }

  const std::vector<Root>& roots() const { return roots_; }
  const std::vector<Root>& positive_roots() const { return positive_; }
  const std::vector<std::vector<int>>& cartan() const { return cartan_; }

  // beta_1..beta_m, stored 0-based.
  const std::vector<Root>& neg_order() const { return neg_order_; }
  const Root& beta(int i) const { return neg_order_.at(i - 1); }
  // 1-based indices into neg_order.
  const std::vector<int>& comp_roots() const { return comp_; }
  bool is_complementary(int i) const;
  int height_of(int i) const { return beta(i).height(); }
  int index_of_negative(const Root& r) const;  // 1-based, throws NotARoot

  Root simple(int i) const;  // 1-based
  bool is_root(const Root& r) const;
  int inner(const Root& a, const Root& b) const;

  // Returns a copy whose negative roots are reordered with the given
  // roots (given as root vectors) marked complementary.
  RootSystem with_complementary(const std::vector<Root>& comp) const;

  friend RootSystem build_root_system(RootType type, int rank);

 private:
  RootType type_ = RootType::A;
  int rank_ = 0;
  std::vector<std::vector<int>> gram_;  // (alpha_i, alpha_j), short roots length 2
  std::vector<std::vector<int>> cartan_;
  std::vector<Root> roots_;
  std::vector<Root> positive_;
  std::vector<Root> neg_order_;
  std::vector<int> comp_;
};

RootSystem build_root_system(RootType type, int rank);

// Order of the negative roots: height descending, complementary roots last
// within each height, otherwise ascending lexicographic on coefficients.
std::vector<Root> order_negative_roots(const RootSystem& rs, const std::vector<Root>& comp);

int cartan_integer(const RootSystem& rs, const Root& beta, const Root& alpha);
std::pair<int, int> root_string(const RootSystem& rs, const Root& alpha, const Root& beta);
Root reflect(const RootSystem& rs, const Root& alpha, const Root& beta);  // w_alpha(beta)
Root apply_word(const RootSystem& rs, const WeylWord& w, const Root& beta);
WeylWord longest_weyl_word(const RootSystem& rs);

}  // namespace pv
