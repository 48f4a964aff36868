// The descent pipeline: Selmer candidate enumeration, Selmer group
// computation with per-element evidence, the weak Mordell-Weil order from
// the four-term exact sequence, the torsion subgroup by two independent
// routes, per-prime reduction data, and the assembled rank certificate.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "twodescent/curve.hpp"
#include "twodescent/localsolve.hpp"
#include "twodescent/tate.hpp"

namespace twodescent {

enum class IsogenyTag { Phi, PhiHat };

inline const char* tag_name(IsogenyTag t) {
  return t == IsogenyTag::Phi ? "phi" : "phi_hat";
}

// Rational-point evidence: a named small combination of the curve's marked
// points whose connecting-map image is the Selmer element.
struct PointEvidence {
  std::string name;  // e.g. "Q0", "Q0+Q1", "P1"
  Point point;
};

struct SelmerElement {
  SquareClass cls = SquareClass::from_squarefree(Int(1));
  std::optional<PointEvidence> point;
  // Solvability verdicts for every place in the test set.
  std::vector<LocalVerdict> local;
};

struct ExcludedCandidate {
  SquareClass cls = SquareClass::from_squarefree(Int(1));
  Place failing_place = Place::real();
  LocalVerdict verdict;  // the refusal at that place
};

struct SelmerGroup {
  IsogenyTag tag = IsogenyTag::Phi;
  std::vector<Int> test_primes;
  std::vector<SelmerElement> elements;      // sorted by class representative
  std::vector<ExcludedCandidate> excluded;  // sorted by class representative

  std::size_t size() const { return elements.size(); }
  bool contains(const SquareClass& c) const;
  // Every element is realized by a rational point.
  bool fully_evidenced() const;
};

// All signed squarefree divisors of dc.b(): the candidate square classes
// for the descent whose homogeneous spaces map to dc.  (Any class outside
// this list fails at one of its stray primes.)
std::vector<SquareClass> selmer_candidates(const DescentCurve& dc);

// The Selmer group of the phi (or dual) descent of the family curves:
// candidates filtered through everywhere-local solvability, with
// rational-point evidence attached where a combination of the marked
// points realizes the element.
SelmerGroup selmer_group(const FamilyCurves& F, IsogenyTag tag);

struct WeakMWResult {
  bool exact = false;
  Int order = 0;         // |E(Q)/2E(Q)| when exact
  Int lower = 0, upper = 0;
  Int kernel_order = 0;  // |E'(Q)[phi_hat] / phi(E(Q)[2])|, always exact
  // Generators of E(Q)/2E(Q) by name, with their points (exact case).
  std::vector<PointEvidence> generators;
};

// Order of E(Q)/2E(Q) via
//   |E/2E| = |Sel_phi| * |Sel_phihat| / |kernel term|
// when both groups are fully evidenced by rational points; otherwise an
// interval [lower, upper] from the evidenced subgroups.
WeakMWResult weak_mw_mod2(const SelmerGroup& sel_phi,
                          const SelmerGroup& sel_phihat,
                          const FamilyCurves& F);

struct TorsionGroup {
  Int order = 1;
  std::string structure;           // "trivial", "Z/2", "Z/2 x Z/2", ...
  std::vector<Point> elements;     // the affine torsion points (O implicit)
  std::vector<Point> generators;
  int two_rank() const;            // dim_2 of the 2-torsion
};

// Generic route: rational 2-torsion from the cubic, the gcd of #E(F_p)
// over the five smallest good primes as an order bound, and integral
// candidate points (y = 0 or y^2 | disc) to realize the group.
TorsionGroup torsion_via_reduction(const DescentCurve& C);

// Both routes on a family curve -- the generic one above and the local
// route (2-adic reduction structure plus the exclusion of order-4 points
// over P0).  Disagreement is an internal error.
TorsionGroup torsion_subgroup(const FamilyCurves& F);

// Reduction data of E at a prime: full Tate's algorithm.  At p = 2 the
// y -> y + x substituted model (a1 = 2) is used; the output is
// model-independent.  Good primes report I0.
LocalData tate_local_data(const FamilyCurves& F, const Int& p);

struct RankBound {
  bool exact = false;
  long value = 0;        // when exact
  long lower = 0, upper = 0;
};

// rank = dim_2 |E/2E| - dim_2 E(Q)[2], intervals clamped at zero.
RankBound rank_from(const WeakMWResult& wmw, int torsion_two_rank);

struct RankCertificate {
  explicit RankCertificate(FamilyPair p) : pair(std::move(p)) {}

  FamilyPair pair;
  Int a, b, a_dual, b_dual;
  Int discriminant;
  // the marked points P0, P1, P2 (on E) and Q0, Q1 (on the dual curve)
  std::vector<PointEvidence> marked_points;
  SelmerGroup sel_phi, sel_phihat;
  WeakMWResult weak_mw;
  TorsionGroup torsion;
  RankBound rank;
  std::vector<PointEvidence> generators_mod_torsion;  // P1, P2
  Rat j;
  bool sha2_witnessed_trivial = false;
  std::vector<LocalData> local_data;  // at the bad primes, ascending
};

// The full pipeline for one pair.  jobs > 1 runs the two Selmer
// computations concurrently.
RankCertificate rank_certificate(const FamilyPair& pair, int jobs = 1);

}  // namespace twodescent
