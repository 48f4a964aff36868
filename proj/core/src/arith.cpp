#include "twodescent/arith.hpp"

#include <algorithm>
#include <array>

namespace twodescent {

namespace {

// Small primes for trial division, generated once.
const std::vector<unsigned long>& small_primes() {
  static const std::vector<unsigned long> primes = [] {
    std::vector<unsigned long> ps;
    std::vector<bool> sieve(3000, true);
    for (unsigned long i = 2; i < sieve.size(); ++i) {
      if (!sieve[i]) continue;
      ps.push_back(i);
      for (unsigned long j = i * i; j < sieve.size(); j += i) sieve[j] = false;
    }
    return ps;
  }();
  return primes;
}

bool miller_rabin_witness(const Int& n, unsigned long a, const Int& d,
                          unsigned long s) {
  Int x;
  mpz_powm(x.get_mpz_t(), Int(a).get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
  if (x == 1 || x == n - 1) return false;
  for (unsigned long i = 1; i < s; ++i) {
    x = (x * x) % n;
    if (x == n - 1) return false;
  }
  return true;  // a witnesses compositeness
}

}  // namespace

Place Place::finite(Int p) {
  if (!is_prime(p)) throw domain_error("Place::finite: p must be prime");
  Place pl;
  pl.p_ = std::move(p);
  return pl;
}

Valuation ord_p(const Int& x, const Int& p) {
  if (!is_prime(p)) throw domain_error("ord_p: p must be prime");
  if (x == 0) return Valuation::infinity();
  Int tmp;
  mp_bitcnt_t v = mpz_remove(tmp.get_mpz_t(), x.get_mpz_t(), p.get_mpz_t());
  return Valuation::finite(static_cast<long>(v));
}

Valuation ord_p(const Rat& x, const Int& p) {
  if (!is_prime(p)) throw domain_error("ord_p: p must be prime");
  if (x == 0) return Valuation::infinity();
  Int tmp;
  long vn = static_cast<long>(
      mpz_remove(tmp.get_mpz_t(), x.get_num().get_mpz_t(), p.get_mpz_t()));
  long vd = static_cast<long>(
      mpz_remove(tmp.get_mpz_t(), x.get_den().get_mpz_t(), p.get_mpz_t()));
  return Valuation::finite(vn - vd);
}

int legendre(const Int& a, const Int& p) {
  if (p == 2 || !is_prime(p))
    throw domain_error("legendre: p must be an odd prime");
  return mpz_legendre(a.get_mpz_t(), p.get_mpz_t());
}

int jacobi(const Int& a, const Int& n) {
  if (n < 1 || mpz_even_p(n.get_mpz_t()))
    throw domain_error("jacobi: n must be odd and positive");
  return mpz_jacobi(a.get_mpz_t(), n.get_mpz_t());
}

int jacobi_u64(std::uint64_t a, std::uint64_t n) {
  if (n == 0 || (n & 1) == 0)
    throw domain_error("jacobi_u64: n must be odd and positive");
  a %= n;
  int t = 1;
  while (a != 0) {
    while ((a & 1) == 0) {
      a >>= 1;
      std::uint64_t r = n & 7;
      if (r == 3 || r == 5) t = -t;
    }
    std::swap(a, n);
    if ((a & 3) == 3 && (n & 3) == 3) t = -t;
    a %= n;
  }
  return n == 1 ? t : 0;
}

bool is_prime(const Int& n) {
  if (n <= 1) return false;
  for (unsigned long p : small_primes()) {
    if (n == p) return true;
    if (mpz_divisible_ui_p(n.get_mpz_t(), p)) return false;
    if (Int(p) * p > n) return true;
  }
  // n has no factor below the trial cutoff; run the fixed-base test.
  Int d = n - 1;
  unsigned long s = mpz_scan1(d.get_mpz_t(), 0);
  d >>= s;
  static constexpr std::array<unsigned long, 12> bases = {
      2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  for (unsigned long a : bases) {
    if (miller_rabin_witness(n, a, d, s)) return false;
  }
  return true;
}

namespace {

Int brent_rho(const Int& n) {
  // n odd composite, no small factors; returns a nontrivial factor.
  for (unsigned long c = 1;; ++c) {
    Int x = 2, y = 2, d = 1;
    Int ys, q = 1;
    const unsigned long m = 64;
    unsigned long r = 1;
    auto f = [&](const Int& v) -> Int { return Int((v * v + c) % n); };
    while (d == 1) {
      x = y;
      for (unsigned long i = 0; i < r; ++i) y = f(y);
      unsigned long k = 0;
      while (k < r && d == 1) {
        ys = y;
        for (unsigned long i = 0; i < std::min(m, r - k); ++i) {
          y = f(y);
          q = q * abs(x - y) % n;
        }
        mpz_gcd(d.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
        k += m;
      }
      r *= 2;
    }
    if (d == n) {
      // backtrack one step at a time
      do {
        ys = f(ys);
        Int diff = abs(x - ys);
        mpz_gcd(d.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
      } while (d == 1);
    }
    if (d != n) return d;
    // cycle collapsed; retry with a different increment
  }
}

void factor_into(Int n, std::vector<std::pair<Int, unsigned>>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    out.emplace_back(n, 1);
    return;
  }
  if (mpz_perfect_square_p(n.get_mpz_t())) {
    Int r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    std::vector<std::pair<Int, unsigned>> sub;
    factor_into(r, sub);
    for (auto& [p, e] : sub) out.emplace_back(p, 2 * e);
    return;
  }
  Int d = brent_rho(n);
  factor_into(d, out);
  factor_into(n / d, out);
}

}  // namespace

std::vector<std::pair<Int, unsigned>> factor(const Int& n) {
  if (n == 0) throw domain_error("factor: 0 rejected");
  Int m = abs(n);
  std::vector<std::pair<Int, unsigned>> out;
  for (unsigned long p : small_primes()) {
    if (m == 1) break;
    if (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
      unsigned e = 0;
      while (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
        m /= p;
        ++e;
      }
      out.emplace_back(Int(p), e);
    }
  }
  if (m > 1) factor_into(m, out);
  // merge duplicates from the recursive split and sort by prime
  std::sort(out.begin(), out.end());
  std::vector<std::pair<Int, unsigned>> merged;
  for (auto& [p, e] : out) {
    if (!merged.empty() && merged.back().first == p)
      merged.back().second += e;
    else
      merged.emplace_back(p, e);
  }
  return merged;
}

SquareClass SquareClass::of(const Int& x) {
  if (x == 0) throw domain_error("SquareClass: 0 has no square class");
  Int rep = x < 0 ? Int(-1) : Int(1);
  for (const auto& [p, e] : factor(x)) {
    if (e % 2 == 1) rep *= p;
  }
  return SquareClass(rep);
}

SquareClass SquareClass::of(const Rat& x) {
  if (x == 0) throw domain_error("SquareClass: 0 has no square class");
  // class(p/q) = class(p*q)
  return of(Int(x.get_num() * x.get_den()));
}

SquareClass SquareClass::from_squarefree(Int rep) {
  if (rep == 0) throw domain_error("SquareClass: rep must be nonzero");
  return SquareClass(std::move(rep));
}

SquareClass SquareClass::operator*(const SquareClass& o) const {
  // rep and o.rep are squarefree, so rep*o.rep = g^2 * (rep/g)(o.rep/g)
  // with g = gcd, and the cofactor product is squarefree.
  Int g;
  mpz_gcd(g.get_mpz_t(), rep_.get_mpz_t(), o.rep_.get_mpz_t());
  return SquareClass((rep_ / g) * (o.rep_ / g));
}

SquareClass squarefree_part(const Rat& x) { return SquareClass::of(x); }
SquareClass squarefree_part(const Int& x) { return SquareClass::of(x); }

std::optional<Int> sqrt_mod(const Int& a, const Int& p) {
  if (p == 2 || !is_prime(p))
    throw domain_error("sqrt_mod: p must be an odd prime");
  Int a0 = a % p;
  if (a0 < 0) a0 += p;
  if (a0 == 0) return Int(0);
  if (mpz_legendre(a0.get_mpz_t(), p.get_mpz_t()) == -1) return std::nullopt;

  if (p % 4 == 3) {
    Int r;
    Int e = (p + 1) / 4;
    mpz_powm(r.get_mpz_t(), a0.get_mpz_t(), e.get_mpz_t(), p.get_mpz_t());
    return r;
  }

  // Tonelli-Shanks: write p-1 = q * 2^s with q odd.
  Int q = p - 1;
  unsigned long s = mpz_scan1(q.get_mpz_t(), 0);
  q >>= s;
  // find a quadratic non-residue z
  Int z = 2;
  while (mpz_legendre(z.get_mpz_t(), p.get_mpz_t()) != -1) ++z;
  Int c, t, r;
  mpz_powm(c.get_mpz_t(), z.get_mpz_t(), q.get_mpz_t(), p.get_mpz_t());
  mpz_powm(t.get_mpz_t(), a0.get_mpz_t(), q.get_mpz_t(), p.get_mpz_t());
  Int e = (q + 1) / 2;
  mpz_powm(r.get_mpz_t(), a0.get_mpz_t(), e.get_mpz_t(), p.get_mpz_t());
  unsigned long m = s;
  while (t != 1) {
    unsigned long i = 0;
    Int t2 = t;
    while (t2 != 1) {
      t2 = (t2 * t2) % p;
      ++i;
      if (i == m) throw internal_error("sqrt_mod: Tonelli-Shanks failure");
    }
    Int b = c;
    for (unsigned long j = 0; j + i + 1 < m; ++j) b = (b * b) % p;
    m = i;
    c = (b * b) % p;
    t = (t * c) % p;
    r = (r * b) % p;
  }
  return r;
}

bool is_square(const Int& n) {
  return n >= 0 && mpz_perfect_square_p(n.get_mpz_t());
}

bool is_square(const Rat& x) {
  return is_square(Int(x.get_num())) && is_square(Int(x.get_den()));
}

}  // namespace twodescent
