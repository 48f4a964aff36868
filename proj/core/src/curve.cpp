#include "twodescent/curve.hpp"

#include <algorithm>

namespace twodescent {

std::string Point::str() const {
  if (is_identity()) return "O";
  return "(" + x().get_str() + ", " + y().get_str() + ")";
}

DescentCurve::DescentCurve(Int a, Int b) : a_(std::move(a)), b_(std::move(b)) {
  if (b_ == 0) throw domain_error("DescentCurve: b = 0 is singular");
  if (a_ * a_ - 4 * b_ == 0)
    throw domain_error("DescentCurve: a^2 - 4b = 0 is singular");
}

Int DescentCurve::discriminant() const {
  return 16 * b_ * b_ * (a_ * a_ - 4 * b_);
}

bool DescentCurve::contains(const Point& P) const {
  if (P.is_identity()) return true;
  const Rat& x = P.x();
  const Rat& y = P.y();
  return y * y == x * (x * x + Rat(a_) * x + Rat(b_));
}

void DescentCurve::require_point(const Point& P) const {
  if (!contains(P))
    throw domain_error("point " + P.str() + " is not on the curve");
}

Point add(const DescentCurve& C, const Point& P, const Point& Q) {
  C.require_point(P);
  C.require_point(Q);
  if (P.is_identity()) return Q;
  if (Q.is_identity()) return P;
  const Rat &x1 = P.x(), &y1 = P.y(), &x2 = Q.x(), &y2 = Q.y();
  Rat lambda;
  if (x1 == x2) {
    if (y1 == -y2) return Point::identity();  // includes the 2-torsion case
    // tangent: lambda = (3x^2 + 2ax + b) / (2y)
    lambda = (3 * x1 * x1 + 2 * Rat(C.a()) * x1 + Rat(C.b())) / (2 * y1);
  } else {
    lambda = (y2 - y1) / (x2 - x1);
  }
  Rat x3 = lambda * lambda - Rat(C.a()) - x1 - x2;
  Rat y3 = lambda * (x1 - x3) - y1;
  return Point(std::move(x3), std::move(y3));
}

Point negate(const DescentCurve& C, const Point& P) {
  C.require_point(P);
  if (P.is_identity()) return P;
  return Point(P.x(), -P.y());
}

Point mul(const DescentCurve& C, const Int& k, const Point& P) {
  C.require_point(P);
  Int e = abs(k);
  Point base = k < 0 ? negate(C, P) : P;
  Point acc = Point::identity();
  // double-and-add, most significant bit first
  for (long i = static_cast<long>(mpz_sizeinbase(e.get_mpz_t(), 2)) - 1;
       i >= 0 && e != 0; --i) {
    acc = add(C, acc, acc);
    if (mpz_tstbit(e.get_mpz_t(), static_cast<mp_bitcnt_t>(i)))
      acc = add(C, acc, base);
  }
  return acc;
}

Point isogeny_phi(const DescentCurve& C, const Point& P) {
  C.require_point(P);
  if (P.is_identity() || P.x() == 0) return Point::identity();
  const Rat &x = P.x(), &y = P.y();
  Rat xx = x * x;
  Point image(y * y / xx, y * (Rat(C.b()) - xx) / xx);
  C.dual().require_point(image);
  return image;
}

Point isogeny_phi_hat(const DescentCurve& C, const Point& Q) {
  C.dual().require_point(Q);
  if (Q.is_identity() || Q.x() == 0) return Point::identity();
  const Rat &x = Q.x(), &y = Q.y();
  Rat xx = x * x;
  Point image(y * y / (4 * xx), y * (Rat(C.b_dual()) - xx) / (8 * xx));
  C.require_point(image);
  return image;
}

SquareClass connecting_map(const DescentCurve& C, const Point& P) {
  C.require_point(P);
  if (P.is_identity()) return SquareClass::from_squarefree(Int(1));
  if (P.x() == 0) return squarefree_part(C.b());
  return squarefree_part(P.x());
}

FamilyCurves::FamilyCurves(const FamilyPair& pair)
    : pair_(pair),
      e_(-5 * pair.p16(), 4 * pair.p16() * pair.p25()),
      eprime_(e_.dual()),
      disc_(e_.discriminant()) {
  // dual coefficients must come out as a' = 10k, b' = 9mk
  const Int k = pair_.p16();
  if (eprime_.a() != 10 * k || eprime_.b() != 9 * pair_.m() * k)
    throw internal_error("FamilyCurves: dual coefficients");
  // discriminant product formula
  const Int q = pair_.p25();
  if (disc_ != Int(256) * 9 * pair_.m() * k * k * k * q * q)
    throw internal_error("FamilyCurves: discriminant formula");
  // named points lie on their curves
  e_.require_point(P1());
  e_.require_point(P2());
  eprime_.require_point(Q1());
  // minimality: every prime exponent in the discriminant is below 12
  for (const auto& [p, exp] : discriminant_factors()) {
    (void)p;
    if (exp >= 12) throw internal_error("FamilyCurves: non-minimal model");
  }
}

Point FamilyCurves::P1() const {
  const Int k = pair_.p16();
  return Point(Rat(k), Rat(6 * pair_.n() * k));
}

Point FamilyCurves::P2() const {
  const Int& n = pair_.n();
  return Point(Rat(36 * n * n), Rat(12 * n * (pair_.m() - 2 * n * n)));
}

Point FamilyCurves::Q1() const {
  const Int k = pair_.p16();
  return Point(Rat(-k), Rat(12 * pair_.n() * k));
}

std::vector<std::pair<Int, unsigned>> FamilyCurves::discriminant_factors()
    const {
  std::vector<std::pair<Int, unsigned>> fs = {{Int(2), 8u},
                                              {Int(3), 2u},
                                              {pair_.m(), 1u},
                                              {pair_.p16(), 3u},
                                              {pair_.p25(), 2u}};
  std::sort(fs.begin(), fs.end());
  return fs;
}

std::vector<Int> FamilyCurves::bad_primes() const {
  std::vector<Int> ps = {2, 3, pair_.m(), pair_.p16(), pair_.p25()};
  std::sort(ps.begin(), ps.end());
  return ps;
}

FamilyCurves curves_from_pair(const FamilyPair& pair) {
  return FamilyCurves(pair);
}

Rat j_invariant(const FamilyPair& pair) {
  const Int& m = pair.m();
  const Int& n = pair.n();
  Int t = 13 * m + 100 * n * n;
  Int num = 16 * t * t * t;
  Int den = 9 * m * pair.p25() * pair.p25();
  Int g;
  mpz_gcd(g.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  if (g != 1) throw internal_error("j_invariant: fraction not reduced");
  Rat j(num, den);
  j.canonicalize();
  return j;
}

FamilyPair recover_pair(const Rat& j) {
  Int den = j.get_den();
  auto fs = factor(den);
  // denominator is 3^2 m q^2; m and q are its two largest primes
  if (fs.size() < 2) throw domain_error("recover_pair: not a family j-invariant");
  const Int q = fs[fs.size() - 1].first;
  const Int m = fs[fs.size() - 2].first;
  Int diff = q - m;  // 25 n^2
  if (diff <= 0 || diff % 25 != 0)
    throw domain_error("recover_pair: not a family j-invariant");
  Int nsq = diff / 25;
  if (!is_square(nsq)) throw domain_error("recover_pair: not a family j-invariant");
  Int n;
  mpz_sqrt(n.get_mpz_t(), nsq.get_mpz_t());
  FamilyPair pair(m, n);  // validates the pair
  if (j_invariant(pair) != j)
    throw domain_error("recover_pair: j-invariant mismatch");
  return pair;
}

}  // namespace twodescent
