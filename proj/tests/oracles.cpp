#include "oracles.hpp"

#include <random>

#include "twodescent/poly.hpp"

namespace oracle {

using twodescent::QPoly;
using twodescent::QuarticModel;

bool is_prime_trial(const Int& n) {
  if (n < 2) return false;
  for (Int d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

int legendre_euler(const Int& a, const Int& p) {
  Int e = (p - 1) / 2;
  Int r;
  Int base = a % p;
  if (base < 0) base += p;
  mpz_powm(r.get_mpz_t(), base.get_mpz_t(), e.get_mpz_t(), p.get_mpz_t());
  if (r == p - 1) return -1;
  return static_cast<int>(r.get_si());
}

std::vector<std::pair<long, long>> naive_pair_search(long m_max, long n_max) {
  std::vector<std::pair<long, long>> out;
  for (long n = 1; n <= n_max; ++n) {
    for (long m = 1; m <= m_max; ++m) {
      bool ok = true;
      for (long v : {m, m + 16 * n * n, m + 25 * n * n})
        if (v % 24 != 11 || !is_prime_trial(Int(v))) ok = false;
      if (ok) out.emplace_back(m, n);
    }
  }
  // (n, m) order comes out of the loop nesting already
  return out;
}

namespace {

long vp_long(long x, long p) {
  long v = 0;
  while (x != 0 && x % p == 0) {
    x /= p;
    ++v;
  }
  return v;
}

}  // namespace

Tri qp_solvable_sweep(const std::array<long, 5>& c, std::uint64_t p) {
  if (c[4] == 0) return Tri::Unknown;
  const std::uint64_t p6 = p * p * p * p * p * p;
  const long margin = p == 2 ? 3 : 1;
  const long v4 = vp_long(c[4], static_cast<long>(p));
  const long levels = v4 + margin;  // sweep e = 0 .. levels-1

  // quadratic residue table modulo p (odd p)
  std::vector<char> qr(p, 0);
  for (std::uint64_t y = 0; y < p; ++y) qr[(y * y) % p] = 1;

  bool unknown = false;
  for (long e = 0; e < levels; ++e) {
    // coefficients of F_e(u) = sum c_i u^i p^{(4-i)e} modulo p^6
    std::array<std::uint64_t, 5> ce{};
    for (int i = 0; i <= 4; ++i) {
      Int scaled = Int(c[static_cast<std::size_t>(i)]);
      for (long k = 0; k < (4 - i) * e; ++k) scaled *= static_cast<long>(p);
      Int r = scaled % Int(static_cast<unsigned long>(p6));
      if (r < 0) r += static_cast<unsigned long>(p6);
      ce[static_cast<std::size_t>(i)] = mpz_get_ui(r.get_mpz_t());
    }
    for (std::uint64_t u = 0; u < p6; ++u) {
      if (e > 0 && u % p == 0) continue;  // only units above level 0
      std::uint64_t w = ce[4];
      for (int i = 3; i >= 0; --i)
        w = (w * u + ce[static_cast<std::size_t>(i)]) % p6;
      if (w == 0) {
        unknown = true;  // value known only modulo p^6; cannot settle
        continue;
      }
      long v = 0;
      std::uint64_t unit = w;
      while (unit % p == 0) {
        unit /= p;
        ++v;
      }
      if (p == 2) {
        if (v > 3) {
          unknown = true;
          continue;
        }
        if (v % 2 == 0 && unit % 8 == 1) return Tri::Yes;
      } else {
        if (v % 2 == 0 && qr[unit % p]) return Tri::Yes;
      }
      // settled non-square at this residue
    }
  }

  // tail levels: the leading term dominates, so solvability there reduces
  // to c4 being a p-adic square
  long unit4 = c[4];
  for (long k = 0; k < v4; ++k) unit4 /= static_cast<long>(p);
  bool c4_square;
  if (p == 2) {
    long u8 = ((unit4 % 8) + 8) % 8;
    c4_square = (v4 % 2 == 0) && u8 == 1;
  } else {
    long up = ((unit4 % static_cast<long>(p)) + static_cast<long>(p)) %
              static_cast<long>(p);
    c4_square = (v4 % 2 == 0) && qr[static_cast<std::uint64_t>(up)];
  }
  if (c4_square) return Tri::Yes;
  return unknown ? Tri::Unknown : Tri::No;
}

namespace {

QPoly poly_of(const std::array<long, 5>& c) {
  std::vector<Rat> q;
  for (long x : c) q.emplace_back(x);
  return QPoly(std::move(q));
}

// sign variation count of the coefficient list
int variations(const std::vector<Rat>& v) {
  int var = 0, prev = 0;
  for (const Rat& x : v) {
    int s = sgn(x);
    if (s == 0) continue;
    if (prev != 0 && s != prev) ++var;
    prev = s;
  }
  return var;
}

// coefficients of (1+x)^d f((a + b x)/(1+x)): Descartes test for (a, b)
std::vector<Rat> mobius_coeffs(const QPoly& f, const Rat& a, const Rat& b) {
  int d = f.degree();
  // f(t) = sum c_i t^i; t = (a + b x)/(1+x)
  // (1+x)^d f(t) = sum c_i (a + b x)^i (1+x)^(d-i)
  std::vector<Rat> acc(static_cast<std::size_t>(d) + 1, Rat(0));
  for (int i = 0; i <= d; ++i) {
    if (f.coeff(i) == 0) continue;
    // expand (a + b x)^i * (1 + x)^(d-i)
    std::vector<Rat> term = {Rat(1)};
    for (int k = 0; k < i; ++k) {
      std::vector<Rat> next(term.size() + 1, Rat(0));
      for (std::size_t j = 0; j < term.size(); ++j) {
        next[j] += term[j] * a;
        next[j + 1] += term[j] * b;
      }
      term = std::move(next);
    }
    for (int k = 0; k < d - i; ++k) {
      std::vector<Rat> next(term.size() + 1, Rat(0));
      for (std::size_t j = 0; j < term.size(); ++j) {
        next[j] += term[j];
        next[j + 1] += term[j];
      }
      term = std::move(next);
    }
    for (std::size_t j = 0; j < term.size(); ++j) acc[j] += f.coeff(i) * term[j];
  }
  return acc;
}

// number of real roots in (a, b) is zero?  Descartes bisection; depth-capped.
bool no_roots_in(const QPoly& f, Rat a, Rat b, int depth, bool& unknown) {
  if (depth > 48) {
    unknown = true;
    return false;
  }
  if (f.eval(a) == 0 || f.eval(b) == 0) return false;
  int var = variations(mobius_coeffs(f, a, b));
  if (var == 0) return true;
  if (var == 1) return false;  // exactly one root
  Rat mid = (a + b) / 2;
  return no_roots_in(f, a, mid, depth + 1, unknown) &&
         no_roots_in(f, mid, b, depth + 1, unknown);
}

}  // namespace

Tri real_solvable_sampling(const std::array<long, 5>& c) {
  QPoly f = poly_of(c);
  if (f.degree() % 2 == 1) return Tri::Yes;
  if (sgn(f.lc()) > 0) return Tri::Yes;

  // Cauchy bound
  Rat M = 0;
  for (int i = 0; i < f.degree(); ++i) {
    Rat t = abs(f.coeff(i) / f.lc());
    if (t > M) M = t;
  }
  M += 1;
  // dense-ish rational sampling
  const int kGrid = 64;
  for (int k = -kGrid; k <= kGrid; ++k) {
    Rat x = M * Rat(k, kGrid);
    if (f.eval(x) >= 0) return Tri::Yes;
  }
  bool unknown = false;
  if (no_roots_in(f, -M, M, 0, unknown)) return Tri::No;
  if (unknown) return Tri::Unknown;
  return Tri::Yes;  // a sign change exists, so f reaches 0
}

namespace {

std::array<long, 5> random_model(std::mt19937_64& rng) {
  std::uniform_int_distribution<long> dist(-20, 20);
  for (;;) {
    std::array<long, 5> c;
    for (auto& x : c) x = dist(rng);
    if (c[4] == 0) continue;
    QPoly f = poly_of(c);
    if (twodescent::discriminant(f) == 0) continue;
    return c;
  }
}

QuarticModel model_of(const std::array<long, 5>& c) {
  return QuarticModel(Rat(c[4]), Rat(c[3]), Rat(c[2]), Rat(c[1]), Rat(c[0]));
}

}  // namespace

SuiteStats run_qp_oracle_suite(std::uint64_t p, long instances,
                               std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  SuiteStats stats;
  for (long i = 0; i < instances; ++i) {
    auto c = random_model(rng);
    ++stats.instances;
    Tri expect = qp_solvable_sweep(c, p);
    QuarticModel f = model_of(c);
    twodescent::LocalVerdict got =
        twodescent::has_qp_point(f, Int(static_cast<unsigned long>(p)));
    if (got.solvable && got.qp_witness &&
        !twodescent::check_qp_witness(f, Int(static_cast<unsigned long>(p)),
                                      *got.qp_witness))
      ++stats.witness_failures;
    if (expect == Tri::Unknown) continue;
    ++stats.conclusive;
    if ((expect == Tri::Yes) != got.solvable) ++stats.disagreements;
  }
  return stats;
}

SuiteStats run_real_oracle_suite(long instances, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  SuiteStats stats;
  for (long i = 0; i < instances; ++i) {
    auto c = random_model(rng);
    ++stats.instances;
    Tri expect = real_solvable_sampling(c);
    twodescent::LocalVerdict got =
        twodescent::has_real_point(model_of(c));
    if (expect == Tri::Unknown) continue;
    ++stats.conclusive;
    if ((expect == Tri::Yes) != got.solvable) ++stats.disagreements;
  }
  return stats;
}

}  // namespace oracle
