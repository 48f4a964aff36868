// Curves y^2 = x(x^2 + a x + b) with exact rational points, the degree-2
// isogeny pair between such a curve and its dual, the connecting maps to
// Q^x/(Q^x)^2, and the specific curves attached to a family pair together
// with their named points.

#pragma once

#include <optional>

#include "twodescent/arith.hpp"
#include "twodescent/family.hpp"

namespace twodescent {

// A rational point: the identity O or an affine pair (x, y).
class Point {
 public:
  static Point identity() { return Point(); }
  Point(Rat x, Rat y) : xy_(std::make_pair(std::move(x), std::move(y))) {
    xy_->first.canonicalize();
    xy_->second.canonicalize();
  }

  bool is_identity() const { return !xy_.has_value(); }
  const Rat& x() const { return require().first; }
  const Rat& y() const { return require().second; }

  friend bool operator==(const Point& a, const Point& b) {
    return a.xy_ == b.xy_;
  }
  friend bool operator!=(const Point& a, const Point& b) { return !(a == b); }

  std::string str() const;

 private:
  Point() = default;
  const std::pair<Rat, Rat>& require() const {
    if (!xy_) throw domain_error("Point: identity has no coordinates");
    return *xy_;
  }
  std::optional<std::pair<Rat, Rat>> xy_;
};

// y^2 = x(x^2 + a x + b) with integer coefficients, b != 0 and
// b' = a^2 - 4b != 0 (nonsingular).  The dual curve has coefficients
// (a', b') = (-2a, a^2 - 4b); the dual of the dual is (4a, 16b), isomorphic
// to the original under (x, y) -> (x/4, y/8).
class DescentCurve {
 public:
  DescentCurve(Int a, Int b);

  const Int& a() const { return a_; }
  const Int& b() const { return b_; }
  Int a_dual() const { return -2 * a_; }
  Int b_dual() const { return a_ * a_ - 4 * b_; }
  DescentCurve dual() const { return DescentCurve(a_dual(), b_dual()); }

  // Discriminant of this model: 16 b^2 (a^2 - 4b).
  Int discriminant() const;

  bool contains(const Point& P) const;
  // Throws domain_error when P is not on the curve.
  void require_point(const Point& P) const;

  friend bool operator==(const DescentCurve& A, const DescentCurve& B) {
    return A.a_ == B.a_ && A.b_ == B.b_;
  }

 private:
  Int a_, b_;
};

// Chord-tangent group law.  Inputs must lie on C.
Point add(const DescentCurve& C, const Point& P, const Point& Q);
Point negate(const DescentCurve& C, const Point& P);
Point mul(const DescentCurve& C, const Int& k, const Point& P);

// The degree-2 isogeny C -> dual(C) with kernel {O, (0,0)}:
//   (x, y) -> (y^2/x^2, y(b - x^2)/x^2).
Point isogeny_phi(const DescentCurve& C, const Point& P);

// The dual isogeny dual(C) -> C:
//   (x, y) -> (y^2/(4x^2), y(b' - x^2)/(8x^2)).
// Q must lie on dual(C); the image lies on C, and the two compositions are
// multiplication by 2 on their respective curves.
Point isogeny_phi_hat(const DescentCurve& C, const Point& Q);

// Connecting homomorphism of the curve C into Q^x/(Q^x)^2:
//   O -> 1, (0,0) -> class of C.b, (x, y) -> class of x.
// Passing the dual curve (and its points) gives the map on the other side
// of the descent.
SquareClass connecting_map(const DescentCurve& C, const Point& P);

// The curve pair attached to a valid family pair:
//   E : a = -5(m+16n^2),  b = 4(m+16n^2)(m+25n^2)
//   E': a' = 10(m+16n^2), b' = 9m(m+16n^2)
// with the named points P0, P1, P2 on E and Q0, Q1 on E'.  Construction
// verifies all points, the discriminant product formula
// 2^8 3^2 m (m+16n^2)^3 (m+25n^2)^2, and minimality of the model of E
// (every prime exponent in the discriminant below 12).
class FamilyCurves {
 public:
  explicit FamilyCurves(const FamilyPair& pair);

  const FamilyPair& pair() const { return pair_; }
  const DescentCurve& E() const { return e_; }
  const DescentCurve& Eprime() const { return eprime_; }

  Point P0() const { return Point(Rat(0), Rat(0)); }
  Point P1() const;
  Point P2() const;
  Point Q0() const { return Point(Rat(0), Rat(0)); }
  Point Q1() const;

  const Int& discriminant() const { return disc_; }
  // (prime, exponent) table of the discriminant: 2^8 3^2 m k^3 q^2.
  std::vector<std::pair<Int, unsigned>> discriminant_factors() const;
  // The bad primes {2, 3, m, m+16n^2, m+25n^2} in increasing order.
  std::vector<Int> bad_primes() const;

 private:
  FamilyPair pair_;
  DescentCurve e_;
  DescentCurve eprime_;
  Int disc_;
};

FamilyCurves curves_from_pair(const FamilyPair& pair);

// j-invariant of E for a valid pair, in lowest terms:
//   16 (13m + 100n^2)^3 / (3^2 m (m+25n^2)^2).
// The fraction is already reduced (the numerator is coprime to the
// denominator for every valid pair); this is verified at computation time.
Rat j_invariant(const FamilyPair& pair);

// Inverse of j_invariant on the family: the two largest primes of the
// denominator are m and m+25n^2, which determine (m, n).
FamilyPair recover_pair(const Rat& j);

}  // namespace twodescent
