#include "twodescent/localsolve.hpp"

#include <algorithm>
#include <set>

namespace twodescent {

namespace {

ZPoly reverse_as_quartic(const ZPoly& g) {
  std::vector<Int> rev(5);
  for (int i = 0; i <= 4; ++i) rev[static_cast<std::size_t>(i)] = g.coeff(4 - i);
  return ZPoly(std::move(rev));
}

}  // namespace

QuarticModel::QuarticModel(Rat c4, Rat c3, Rat c2, Rat c1, Rat c0)
    : c_{std::move(c0), std::move(c1), std::move(c2), std::move(c3),
         std::move(c4)} {
  for (auto& c : c_) c.canonicalize();
  if (c_[4] != 0)
    degree_ = 4;
  else if (c_[3] != 0)
    degree_ = 3;
  else
    throw domain_error("QuarticModel: degree must be 3 or 4");

  // canonical integral scaling by L^2
  Int L = 1;
  for (const auto& c : c_) mpz_lcm(L.get_mpz_t(), L.get_mpz_t(), c.get_den().get_mpz_t());
  std::vector<Int> gc;
  gc.reserve(5);
  for (const auto& c : c_) {
    Rat scaled = c * Rat(L) * Rat(L);
    scaled.canonicalize();
    if (scaled.get_den() != 1)
      throw internal_error("QuarticModel: scaling did not clear denominators");
    gc.push_back(Int(scaled.get_num()));
  }
  g_ = ZPoly(std::move(gc));
  grev_ = reverse_as_quartic(g_);

  disc_ = discriminant(g_.to_qpoly());
  if (disc_ == 0)
    throw domain_error("QuarticModel: polynomial must be squarefree");
  disc_rev_ = discriminant(grev_.to_qpoly());
}

QuarticModel descent_space(const SquareClass& d, const DescentCurve& dc) {
  Rat c0 = Rat(dc.b()) / Rat(d.rep());
  c0.canonicalize();
  return QuarticModel(Rat(d.rep()), Rat(0), Rat(dc.a()), Rat(0), c0);
}

// ---- real place -----------------------------------------------------------

LocalVerdict has_real_point(const QuarticModel& f) {
  LocalVerdict v;
  v.place = Place::real();
  const QPoly q = f.integral_model().to_qpoly();
  // Cauchy bound: |roots| < M, so the leading term decides the sign at +-M.
  Rat M = 0;
  for (int i = 0; i < q.degree(); ++i) {
    Rat t = abs(q.coeff(i) / q.lc());
    if (t > M) M = t;
  }
  M += 1;
  if (q.degree() % 2 == 1) {
    v.solvable = true;
    v.real_sample = sgn(q.lc()) > 0 ? M : -M;
  } else if (sgn(q.lc()) > 0) {
    v.solvable = true;
    v.real_sample = M;
  } else if (count_real_roots(q) > 0) {
    v.solvable = true;
    // strictly between the two smallest real roots the value is positive
    auto intervals = isolate_real_roots(q);
    for (const auto& [lo, hi] : intervals) {
      (void)lo;
      if (q.eval(hi) >= 0) {
        v.real_sample = hi;
        break;
      }
    }
    if (!v.real_sample) {
      for (const auto& [lo, hi] : intervals) {
        (void)hi;
        if (q.eval(lo) >= 0) {
          v.real_sample = lo;
          break;
        }
      }
    }
    if (!v.real_sample)
      throw internal_error("has_real_point: no rational sample found");
  } else {
    v.solvable = false;
  }
  if (v.real_sample && q.eval(*v.real_sample) < 0)
    throw internal_error("has_real_point: sample check failed");
  return v;
}

// ---- finite places --------------------------------------------------------

long qp_depth_bound(const ZPoly& g, const Int& p) {
  return qp_depth_bound_from(discriminant(g.to_qpoly()), g.lc(), p);
}

long qp_depth_bound_from(const Rat& disc, const Int& lc, const Int& p) {
  long vd = ord_p(Int(disc.get_num()), p).value();
  long vl = ord_p(lc, p).value();
  return vd + 2 * vl + 4;
}

namespace {

struct DiscSearch {
  const ZPoly& g;
  ZPoly gder;
  const Int& p;
  bool p_is_two;
  bool infinity_chart;
  long depth_bound;
  long max_depth = 0;
  std::optional<QpWitness> witness;
};

// valuation of a nonzero integer at S.p, plus the unit part
long val_and_unit(const DiscSearch& S, const Int& x, Int& unit) {
  return static_cast<long>(
      mpz_remove(unit.get_mpz_t(), x.get_mpz_t(), S.p.get_mpz_t()));
}

bool unit_is_square(const DiscSearch& S, const Int& unit) {
  if (S.p_is_two) {
    Int r = unit % 8;
    if (r < 0) r += 8;
    return r == 1;
  }
  return mpz_legendre(unit.get_mpz_t(), S.p.get_mpz_t()) == 1;
}

// y with y^2 = value to enough p-adic precision for Hensel lifting;
// value = p^v * unit, v even, unit a p-adic square.
Int approximate_sqrt(const DiscSearch& S, long v, const Int& unit) {
  Int s;
  if (S.p_is_two) {
    // brute force modulo 2^6: unit = 1 (mod 8) always has such a root
    Int target = unit % 64;
    if (target < 0) target += 64;
    for (Int c = 1; c < 64; c += 2) {
      if ((c * c) % 64 == target) {
        s = c;
        break;
      }
    }
    if (s == 0) throw internal_error("approximate_sqrt: no root mod 64");
  } else {
    Int u0 = unit % S.p;
    if (u0 < 0) u0 += S.p;
    auto root = sqrt_mod(u0, S.p);
    if (!root) throw internal_error("approximate_sqrt: unit not a residue");
    s = *root;
    // Newton steps double the precision: s^2 = unit (mod p), then p^2, p^4
    Int mod = S.p;
    for (int step = 0; step < 2; ++step) {
      mod = mod * mod;
      Int twos = (2 * s) % mod;
      Int inv2s;
      if (mpz_invert(inv2s.get_mpz_t(), twos.get_mpz_t(), mod.get_mpz_t()) == 0)
        throw internal_error("approximate_sqrt: lift inversion failed");
      s = (s - ((s * s - unit) % mod) * inv2s) % mod;
      if (s < 0) s += mod;
    }
  }
  Int pk;
  mpz_pow_ui(pk.get_mpz_t(), S.p.get_mpz_t(), static_cast<unsigned long>(v / 2));
  return pk * s;
}

bool accept_unit_square(DiscSearch& S, const Int& c, long v, const Int& unit) {
  QpWitness w;
  w.kind = QpWitness::Kind::UnitSquare;
  w.at_infinity_chart = S.infinity_chart;
  w.x = c;
  w.y = approximate_sqrt(S, v, unit);
  Int err = w.y * w.y - S.g.eval(c);
  w.val_bound = err == 0 ? -1
                         : static_cast<long>(mpz_remove(
                               err.get_mpz_t(), err.get_mpz_t(), S.p.get_mpz_t()));
  S.witness = w;
  return true;
}

bool accept_poly_root(DiscSearch& S, const Int& c, long v) {
  QpWitness w;
  w.kind = QpWitness::Kind::PolyRoot;
  w.at_infinity_chart = S.infinity_chart;
  w.x = c;
  w.y = 0;
  w.val_bound = v;
  S.witness = w;
  return true;
}

// Taylor coefficients of g(c + X): b[i] integer, by Ruffini-Horner shift.
std::array<Int, 5> taylor_at(const ZPoly& g, const Int& c) {
  std::array<Int, 5> b{};
  for (int i = 0; i <= 4; ++i) b[static_cast<std::size_t>(i)] = g.coeff(i);
  for (int i = 0; i <= 4; ++i)
    for (int j = 3; j >= i; --j)
      b[static_cast<std::size_t>(j)] += c * b[static_cast<std::size_t>(j + 1)];
  return b;
}

// Is g(x) a p-adic square (zero allowed) for some x = c (mod p^k)?
bool disc_has_point(DiscSearch& S, const Int& c, long k, const Int& pk) {
  S.max_depth = std::max(S.max_depth, k);
  Int value = S.g.eval(c);
  if (value == 0) return accept_poly_root(S, c, -1);

  Int unit;
  long v = val_and_unit(S, value, unit);
  if (v % 2 == 0 && unit_is_square(S, unit)) return accept_unit_square(S, c, v, unit);

  Int dvalue = S.gder.eval(c);
  if (dvalue != 0) {
    Int dunit;
    long w = val_and_unit(S, dvalue, dunit);
    if (v > 2 * w) return accept_poly_root(S, c, v);
  }

  // On the disc, g(c + p^k t) - g(c) = sum_{i>=1} T_i p^{ik} t^i, so once
  // min_i (ik + ord(T_i)) exceeds v by the unit margin (1, or 3 at p = 2)
  // the square class of the value is constant and the center refuted it.
  {
    auto taylor = taylor_at(S.g, c);
    long perturbation = -1;
    for (int i = 1; i <= 4; ++i) {
      const Int& ti = taylor[static_cast<std::size_t>(i)];
      if (ti == 0) continue;
      Int tunit;
      long o = i * k + val_and_unit(S, ti, tunit);
      if (perturbation < 0 || o < perturbation) perturbation = o;
    }
    long margin = S.p_is_two ? 3 : 1;
    if (perturbation < 0 || perturbation >= v + margin) return false;
  }

  if (k + 1 > S.depth_bound)
    throw internal_error("has_qp_point: undecided at depth bound");
  Int child = c;
  for (Int r = 0; r < S.p; ++r, child += pk) {
    if (disc_has_point(S, child, k + 1, pk * S.p)) return true;
  }
  return false;
}

// Reduce g modulo p into 64-bit words; requires p < 2^31.
std::array<std::uint64_t, 5> reduce_mod_u64(const ZPoly& g, const Int& p) {
  std::array<std::uint64_t, 5> c{};
  for (int i = 0; i <= 4; ++i) {
    Int r = g.coeff(i) % p;
    if (r < 0) r += p;
    c[static_cast<std::size_t>(i)] = mpz_get_ui(r.get_mpz_t());
  }
  return c;
}

std::uint64_t eval_mod_u64(const std::array<std::uint64_t, 5>& c,
                           std::uint64_t x, std::uint64_t p) {
  using u128 = unsigned __int128;
  std::uint64_t acc = c[4];
  for (int i = 3; i >= 0; --i)
    acc = static_cast<std::uint64_t>(
        (static_cast<u128>(acc) * x + c[static_cast<std::size_t>(i)]) % p);
  return acc;
}

// The affine chart x in Z_p.  For odd word-sized p the depth-1 residue
// sweep runs in machine words: residues with a nonzero value are settled
// by one Jacobi symbol, and only residues of p-divisible value recurse.
bool affine_chart(DiscSearch& S) {
  if (!S.p_is_two && S.p < (Int(1) << 31)) {
    const std::uint64_t p = mpz_get_ui(S.p.get_mpz_t());
    const auto coeffs = reduce_mod_u64(S.g, S.p);
    const bool symmetric =
        S.g.coeff(3) == 0 && S.g.coeff(1) == 0;  // biquadratic: g(-x) = g(x)
    const std::uint64_t half = symmetric ? p / 2 : p - 1;
    std::vector<std::uint64_t> deep;
    // solvable sweeps exit almost immediately on a residue value; build the
    // quadratic-residue table only once a full refutation scan looks likely
    std::vector<char> qr_table;
    for (std::uint64_t c = 0; c <= half; ++c) {
      std::uint64_t w = eval_mod_u64(coeffs, c, p);
      if (w == 0) {
        deep.push_back(c);
        continue;
      }
      bool is_qr;
      if (!qr_table.empty()) {
        is_qr = qr_table[w] != 0;
      } else {
        is_qr = jacobi_u64(w, p) == 1;
        if (c == 1024 && !is_qr) {
          qr_table.assign(p, 0);
          for (std::uint64_t y = 0; y < p; ++y)
            qr_table[static_cast<std::uint64_t>(
                (static_cast<unsigned __int128>(y) * y) % p)] = 1;
        }
      }
      if (is_qr) {
        // replay at full precision to build the witness
        Int cc(static_cast<unsigned long>(c));
        Int unit;
        long v = val_and_unit(S, S.g.eval(cc), unit);
        return accept_unit_square(S, cc, v, unit);
      }
      // non-residue unit value: settled, no point in this residue class
    }
    S.max_depth = std::max(S.max_depth, 1L);
    for (std::uint64_t c : deep) {
      Int cc(static_cast<unsigned long>(c));
      if (disc_has_point(S, cc, 1, S.p)) return true;
    }
    return false;
  }
  return disc_has_point(S, 0, 0, 1);
}

}  // namespace

LocalVerdict has_qp_point(const QuarticModel& f, const Int& p) {
  if (!is_prime(p)) throw domain_error("has_qp_point: p must be prime");
  LocalVerdict verdict;
  verdict.place = Place::finite(p);

  const bool p2 = (p == 2);

  {
    DiscSearch S{f.integral_model(),
                 f.integral_model().derivative(),
                 p,
                 p2,
                 false,
                 qp_depth_bound_from(f.disc(), f.integral_model().lc(), p),
                 0,
                 std::nullopt};
    if (affine_chart(S)) {
      verdict.solvable = true;
      verdict.qp_witness = S.witness;
      return verdict;
    }
    verdict.refutation_depth = S.max_depth;
  }
  {
    DiscSearch S{f.reversed_integral_model(),
                 f.reversed_integral_model().derivative(),
                 p,
                 p2,
                 true,
                 qp_depth_bound_from(f.disc_reversed(),
                                     f.reversed_integral_model().lc(), p),
                 0,
                 std::nullopt};
    if (disc_has_point(S, 0, 1, p)) {
      verdict.solvable = true;
      verdict.qp_witness = S.witness;
      return verdict;
    }
    verdict.refutation_depth =
        std::max(verdict.refutation_depth, S.max_depth);
  }
  verdict.solvable = false;
  return verdict;
}

bool check_qp_witness(const QuarticModel& f, const Int& p, const QpWitness& w) {
  if (!is_prime(p)) return false;
  const ZPoly& g =
      w.at_infinity_chart ? f.reversed_integral_model() : f.integral_model();
  if (w.at_infinity_chart && w.x % p != 0) return false;  // wrong chart disc
  Int value = g.eval(w.x);
  if (w.kind == QpWitness::Kind::PolyRoot) {
    if (value == 0) return true;
    Int dvalue = g.derivative().eval(w.x);
    if (dvalue == 0) return false;
    Int tmp;
    long v = static_cast<long>(
        mpz_remove(tmp.get_mpz_t(), value.get_mpz_t(), p.get_mpz_t()));
    long dv = static_cast<long>(
        mpz_remove(tmp.get_mpz_t(), dvalue.get_mpz_t(), p.get_mpz_t()));
    return v > 2 * dv;
  }
  // UnitSquare: ord(y^2 - g(x)) > 2 ord(2y)
  Int err = w.y * w.y - value;
  if (err == 0) return true;
  if (w.y == 0) return false;
  Int tmp;
  long ve = static_cast<long>(
      mpz_remove(tmp.get_mpz_t(), err.get_mpz_t(), p.get_mpz_t()));
  Int twoy = 2 * w.y;
  long vy = static_cast<long>(
      mpz_remove(tmp.get_mpz_t(), twoy.get_mpz_t(), p.get_mpz_t()));
  return ve > 2 * vy;
}

ElsResult is_els(const SquareClass& d, const DescentCurve& dc) {
  QuarticModel f = descent_space(d, dc);

  std::set<Int> primes = {2, 3, 5, 7, 11, 13};
  auto absorb = [&primes](const Int& n) {
    for (const auto& [p, e] : factor(n)) {
      (void)e;
      primes.insert(p);
    }
  };
  absorb(d.rep());
  absorb(dc.b());
  absorb(dc.a() * dc.a() - 4 * dc.b());

  ElsResult result;
  result.test_primes.assign(primes.begin(), primes.end());

  LocalVerdict real = has_real_point(f);
  bool ok = real.solvable;
  result.verdicts.push_back(std::move(real));
  if (ok) {
    for (const Int& p : result.test_primes) {
      LocalVerdict v = has_qp_point(f, p);
      bool solvable = v.solvable;
      result.verdicts.push_back(std::move(v));
      if (!solvable) {
        ok = false;
        break;
      }
    }
  }
  result.els = ok;
  return result;
}

}  // namespace twodescent
