// Exact local solvability of y^2 = f(x) for quartic models over R and Q_p.
//
// Over R the decision is Sturm-sequence sign analysis, no floating point.
// Over Q_p the decision is a terminating residue-disc recursion: a disc
// x = c (mod p^k) is accepted as soon as the value at its center is a
// provable p-adic square (or Hensel's criterion produces a nearby root of
// f, giving a y = 0 point), refuted as soon as the value class is constant
// and non-square on the whole disc, and subdivided otherwise.  The x-line
// is covered by two charts: Z_p itself, and u = 1/x on u = 0 (mod p) with
// the reversed polynomial, whose u = 0 point is the point at infinity.
//
// Recursion depth is capped by ord_p(disc f) + 2 ord_p(lc f) + 4; beyond
// that bound every disc decision is forced for a squarefree model, so
// exceeding it is an internal error, never a "don't know" result.

#pragma once

#include <optional>
#include <vector>

#include "twodescent/arith.hpp"
#include "twodescent/curve.hpp"
#include "twodescent/poly.hpp"

namespace twodescent {

// y^2 = c4 x^4 + c3 x^3 + c2 x^2 + c1 x + c0 with rational coefficients.
// The polynomial must have degree 3 or 4 (as a quartic form; c4 = 0 gives
// the cubic convention with a rational point at infinity) and must be
// squarefree.  Degree <= 2 inputs are rejected: their reversal acquires a
// multiple root at u = 0 and the genus-one smooth-model reading breaks.
class QuarticModel {
 public:
  QuarticModel(Rat c4, Rat c3, Rat c2, Rat c1, Rat c0);

  // Coefficient of x^i, 0 <= i <= 4.
  const Rat& coeff(int i) const { return c_[static_cast<std::size_t>(i)]; }
  int degree() const { return degree_; }
  bool is_biquadratic() const { return c_[3] == 0 && c_[1] == 0; }

  // The canonical integral form: multiplying the model by L^2 (L = lcm of
  // coefficient denominators) gives (Ly)^2 = g(x) with g integral.  Local
  // solvability is unchanged.  Witnesses at finite places refer to g.
  const ZPoly& integral_model() const { return g_; }
  // u^4 g(1/u) as a quartic form (coefficients reversed, keeping c4 = 0
  // slots): the chart at infinity.
  const ZPoly& reversed_integral_model() const { return grev_; }

  Rat disc() const { return disc_; }
  // discriminant of the reversed integral model (cached: the depth bound
  // needs it at every finite place)
  Rat disc_reversed() const { return disc_rev_; }

 private:
  std::array<Rat, 5> c_;
  int degree_;
  ZPoly g_, grev_;
  Rat disc_, disc_rev_;
};

// The homogeneous space y^2 = d x^4 + A x^2 + B/d attached to the square
// class d and the curve with coefficients (A, B) = (dc.a(), dc.b()).  For
// the phi-descent of E these are the dual coefficients (pass dual(E)); for
// the dual descent pass E itself.
QuarticModel descent_space(const SquareClass& d, const DescentCurve& dc);

// Evidence for a finite-place "solvable" verdict, stated on the canonical
// integral model g (or its reversal when at_infinity_chart is set).
struct QpWitness {
  enum class Kind {
    UnitSquare,  // y^2 = g(x) to precision val_bound > 2 ord_p(2y)
    PolyRoot,    // ord_p(g(x)) > 2 ord_p(g'(x)): a y = 0 point nearby
  };
  Kind kind = Kind::UnitSquare;
  bool at_infinity_chart = false;
  Int x;               // disc center in Z_p
  Int y;               // approximate square root (UnitSquare only)
  long val_bound = 0;  // achieved ord_p(y^2 - g(x)) resp. ord_p(g(x)); -1: exact
};

struct LocalVerdict {
  Place place = Place::real();
  bool solvable = false;
  std::optional<QpWitness> qp_witness;  // finite place, solvable
  std::optional<Rat> real_sample;       // real place, solvable: f(x) >= 0
  long refutation_depth = 0;            // finite place, refuted: deepest disc level
};

// Decides f(x) >= 0 for some real x (equivalently, a real point on the
// smooth model: odd degree and positive leading coefficients give points
// at infinity).
LocalVerdict has_real_point(const QuarticModel& f);

// Decides existence of a Q_p-point.  Exact; throws internal_error if the
// documented depth bound is ever exceeded (a bug, not a result).
LocalVerdict has_qp_point(const QuarticModel& f, const Int& p);

// Replays a solvable witness against the model; used by the certificate
// verifier.  Returns false when the claimed inequalities do not hold.
bool check_qp_witness(const QuarticModel& f, const Int& p, const QpWitness& w);

struct ElsResult {
  bool els = false;
  // Verdicts in test order (real place first, finite places ascending).
  // On failure the list stops at the first refusing place.
  std::vector<LocalVerdict> verdicts;
  // The finite test set S; solvability outside S is automatic: for a prime
  // p not dividing 2 d B (A^2-4B) the reduced affine curve is smooth with
  // at least p+1-2*sqrt(p) - 4 > 0 points over F_p (p >= 17), and any of
  // them lifts by Hensel.  Primes <= 13 are always tested directly.
  std::vector<Int> test_primes;
};

// Everywhere-local solvability of the homogeneous space of d over the
// curve dc.  d must be squarefree (a SquareClass guarantees this).
ElsResult is_els(const SquareClass& d, const DescentCurve& dc);

// The enforced recursion depth bound for the integral model g at p.
long qp_depth_bound(const ZPoly& g, const Int& p);
long qp_depth_bound_from(const Rat& disc, const Int& lc, const Int& p);

}  // namespace twodescent
