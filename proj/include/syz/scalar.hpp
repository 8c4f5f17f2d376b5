#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <utility>

namespace syz {

/// Exact rational scalar. GMP keeps mpq values canonical (reduced, positive
/// denominator) after every arithmetic operation.
using Scalar = mpq_class;

inline Scalar make_fraction(long num, long den) {
  Scalar q(num, den);
  q.canonicalize();
  return q;
}

inline bool is_zero(const Scalar& x) { return sgn(x) == 0; }

inline bool is_integer(const Scalar& x) { return x.get_den() == 1; }

/// Integer power with non-negative exponent.
inline Scalar ipow(const Scalar& base, unsigned exp) {
  Scalar result(1);
  Scalar b = base;
  while (exp != 0) {
    if ((exp & 1U) != 0) result *= b;
    exp >>= 1U;
    if (exp != 0) b *= b;
  }
  return result;
}

inline std::string to_string(const Scalar& x) { return x.get_str(); }

/// A point of P^1 with homogeneous coordinates (s : t), not both zero.
struct ProjPoint {
  Scalar s;
  Scalar t;

  ProjPoint() : s(0), t(1) {}
  ProjPoint(Scalar s_, Scalar t_);

  /// Same point of P^1 (proportional coordinates).
  bool same_point(const ProjPoint& other) const {
    return s * other.t == t * other.s;
  }
};

inline ProjPoint::ProjPoint(Scalar s_, Scalar t_) : s(std::move(s_)), t(std::move(t_)) {
  if (is_zero(s) && is_zero(t)) throw std::invalid_argument("ProjPoint: (0 : 0) is not a point of P^1");
}

}  // namespace syz
