// Exact integer / rational arithmetic and the elementary number theory the
// descent machinery is built on: p-adic valuations, quadratic residue
// symbols, deterministic primality, factorization, square classes and
// modular square roots.  Everything is exact; there is no floating point
// anywhere in this library.

#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace twodescent {

using Int = mpz_class;
using Rat = mpq_class;

// Thrown when an operation's precondition is violated (composite modulus,
// zero where a nonzero value is required, ...).
class domain_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Thrown when an internal consistency check fails.  Reaching one of these is
// a bug, never a data-dependent outcome.
class internal_error : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// A p-adic valuation: a finite integer or +infinity (the valuation of 0).
class Valuation {
 public:
  static Valuation infinity() { return Valuation(true, 0); }
  static Valuation finite(long v) { return Valuation(false, v); }

  bool is_infinity() const { return infinite_; }
  // The finite value; throws on +infinity.
  long value() const {
    if (infinite_) throw domain_error("Valuation::value() of +infinity");
    return v_;
  }

  friend bool operator==(const Valuation& a, const Valuation& b) {
    return a.infinite_ == b.infinite_ && (a.infinite_ || a.v_ == b.v_);
  }
  friend bool operator<(const Valuation& a, const Valuation& b) {
    if (a.infinite_) return false;
    if (b.infinite_) return true;
    return a.v_ < b.v_;
  }
  friend bool operator<=(const Valuation& a, const Valuation& b) {
    return a == b || a < b;
  }
  friend Valuation operator+(const Valuation& a, const Valuation& b) {
    if (a.infinite_ || b.infinite_) return infinity();
    return finite(a.v_ + b.v_);
  }

  std::string str() const { return infinite_ ? "inf" : std::to_string(v_); }

 private:
  Valuation(bool inf, long v) : infinite_(inf), v_(v) {}
  bool infinite_;
  long v_;
};

// A place of Q: the real place or a finite prime.
class Place {
 public:
  static Place real() { return Place(); }
  static Place finite(Int p);  // requires p prime

  bool is_real() const { return !p_.has_value(); }
  const Int& prime() const {
    if (is_real()) throw domain_error("Place::prime() of the real place");
    return *p_;
  }
  std::string str() const { return is_real() ? "inf" : prime().get_str(); }

  friend bool operator==(const Place& a, const Place& b) {
    return a.p_ == b.p_;
  }

 private:
  Place() = default;
  std::optional<Int> p_;
};

// ord_p, normalized so that ord_p(p) = 1; ord_p(0) = +infinity.
// p must be prime.
Valuation ord_p(const Int& x, const Int& p);
Valuation ord_p(const Rat& x, const Int& p);

// Legendre symbol (a/p) for an odd prime p, values in {-1, 0, 1}.
// Rejects p even or composite.
int legendre(const Int& a, const Int& p);

// Jacobi symbol (a/n) for odd n >= 1.  Agrees with legendre for prime n and
// is multiplicative in both arguments.
int jacobi(const Int& a, const Int& n);

// Word-sized Jacobi kernel used by the hot p-adic sweeps.  n odd >= 1.
int jacobi_u64(std::uint64_t a, std::uint64_t n);

// Deterministic primality test.  Uses the Miller-Rabin bases
// {2,3,5,7,11,13,17,19,23,29,31,37}, which decide primality correctly for
// all n < 3.317e24 -- far beyond any search box this library handles
// (pair searches stay below ~1e15).  n <= 1 returns false.
bool is_prime(const Int& n);

// Prime factorization of |n| as (prime, exponent) pairs sorted by prime.
// Trial division up to a small cutoff, then Brent's rho.  Rejects n = 0.
std::vector<std::pair<Int, unsigned>> factor(const Int& n);

// An element of Q^x / (Q^x)^2, stored as the unique squarefree integer in
// the class (sign significant, never zero).
class SquareClass {
 public:
  // Class of a nonzero rational (or integer).  Rejects 0.
  static SquareClass of(const Rat& x);
  static SquareClass of(const Int& x);
  // Wraps a value that is already a squarefree representative.
  static SquareClass from_squarefree(Int rep);

  const Int& rep() const { return rep_; }
  bool is_one() const { return rep_ == 1; }
  bool is_negative() const { return rep_ < 0; }

  SquareClass operator*(const SquareClass& o) const;

  friend bool operator==(const SquareClass& a, const SquareClass& b) {
    return a.rep_ == b.rep_;
  }
  friend bool operator<(const SquareClass& a, const SquareClass& b) {
    return a.rep_ < b.rep_;
  }
  std::string str() const { return rep_.get_str(); }

 private:
  explicit SquareClass(Int rep) : rep_(std::move(rep)) {}
  Int rep_;
};

// squarefree_part(x): the SquareClass of a nonzero rational.
SquareClass squarefree_part(const Rat& x);
SquareClass squarefree_part(const Int& x);

// Square root of a modulo an odd prime p: r with r^2 = a (mod p),
// 0 <= r < p, or nullopt when a is a non-residue.  Tonelli-Shanks.
std::optional<Int> sqrt_mod(const Int& a, const Int& p);

// true iff n is a perfect square (n >= 0 required for true).
bool is_square(const Int& n);
bool is_square(const Rat& x);

}  // namespace twodescent
