#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace pv {

using Rational = mpq_class;

inline Rational make_rational(long num, long den = 1) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

inline bool is_zero(const Rational& r) { return sgn(r) == 0; }

// Always "p/q", even for integers, so serialized forms are uniform.
inline std::string to_pq(const Rational& r) {
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

Rational parse_rational(const std::string& s);

}  // namespace pv
