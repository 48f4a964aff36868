// Tate's algorithm over Q: Kodaira symbol, conductor exponent and Tamagawa
// number of an integral Weierstrass model at a prime, in full generality
// (all of a1..a6 may be nonzero; p = 2 and 3 included).  Non-minimal
// models are rescaled internally and reported via the minimal flag.

#pragma once

#include <string>

#include "twodescent/arith.hpp"

namespace twodescent {

// y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6 with integer coefficients.
struct WeierstrassModel {
  Int a1, a2, a3, a4, a6;

  Int b2() const { return a1 * a1 + 4 * a2; }
  Int b4() const { return 2 * a4 + a1 * a3; }
  Int b6() const { return a3 * a3 + 4 * a6; }
  Int b8() const {
    return a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 -
           a4 * a4;
  }
  Int c4() const { return b2() * b2() - 24 * b4(); }
  Int c6() const {
    return -b2() * b2() * b2() + 36 * b2() * b4() - 216 * b6();
  }
  Int discriminant() const {
    const Int B2 = b2(), B4 = b4(), B6 = b6(), B8 = b8();
    return -B2 * B2 * B8 - 8 * B4 * B4 * B4 - 27 * B6 * B6 + 9 * B2 * B4 * B6;
  }

  // (x, y) -> (x + r, y + s x + t); preserves the curve up to isomorphism.
  WeierstrassModel translated(const Int& r, const Int& s, const Int& t) const;
  // u-scaling by p: a_i -> a_i / p^i (divisions must be exact).
  WeierstrassModel rescaled(const Int& p) const;
};

struct KodairaSymbol {
  enum class Type { I, Istar, II, III, IV, IVstar, IIIstar, IIstar };
  Type type = Type::I;
  long n = 0;  // index for I_n and I_n^*

  std::string str() const;
  static KodairaSymbol parse(const std::string& s);

  friend bool operator==(const KodairaSymbol& a, const KodairaSymbol& b) {
    return a.type == b.type && a.n == b.n;
  }
};

struct LocalData {
  Int p;
  KodairaSymbol kodaira;
  int conductor_exponent = 0;
  Int tamagawa = 1;
  bool minimal = true;  // whether the input model was already minimal at p
};

// Runs the algorithm on M at p.  Good reduction reports I0 / f = 0 / c = 1.
LocalData tate_algorithm(const WeierstrassModel& M, const Int& p);

}  // namespace twodescent
