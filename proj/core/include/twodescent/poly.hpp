// Dense univariate polynomials of small degree over Q and Z: evaluation,
// derivatives, resultants/discriminants, and Sturm-sequence real root
// counting.  Degrees stay at most 4 throughout this library, so nothing
// here is tuned for large inputs.

#pragma once

#include <vector>

#include "twodescent/arith.hpp"

namespace twodescent {

// Polynomial over Q, coefficient of x^i at index i.  Trailing zero
// coefficients are trimmed, so degree() is exact; the zero polynomial has
// degree -1.
class QPoly {
 public:
  QPoly() = default;
  explicit QPoly(std::vector<Rat> coeffs);

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const Rat& coeff(int i) const;  // 0 outside the stored range
  const Rat& lc() const;          // leading coefficient; throws on zero poly

  Rat eval(const Rat& x) const;
  QPoly derivative() const;
  QPoly operator*(const Rat& s) const;
  QPoly operator-() const;

  // Remainder of *this divided by g (g nonzero).
  QPoly rem(const QPoly& g) const;

  // Coefficients reversed: x^deg * f(1/x).
  QPoly reversed() const;

  std::vector<Rat> coeffs() const { return c_; }

 private:
  void trim();
  std::vector<Rat> c_;
};

// Res(f, g); zero iff f and g share a root (or one is zero).
Rat resultant(const QPoly& f, const QPoly& g);

// disc(f) = (-1)^(d(d-1)/2) Res(f, f') / lc(f).
Rat discriminant(const QPoly& f);

// Number of distinct real roots of a squarefree f, by Sturm's theorem.
int count_real_roots(const QPoly& f);

// Isolating intervals (lo, hi) with lo < root < hi, one per real root of a
// squarefree f, pairwise disjoint, endpoints rational non-roots.
std::vector<std::pair<Rat, Rat>> isolate_real_roots(const QPoly& f);

// Polynomial over Z in the same layout.
class ZPoly {
 public:
  ZPoly() = default;
  explicit ZPoly(std::vector<Int> coeffs);

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const Int& coeff(int i) const;
  const Int& lc() const;

  Int eval(const Int& x) const;
  ZPoly derivative() const;
  ZPoly reversed() const;

  QPoly to_qpoly() const;
  std::vector<Int> coeffs() const { return c_; }

 private:
  void trim();
  std::vector<Int> c_;
};

}  // namespace twodescent
