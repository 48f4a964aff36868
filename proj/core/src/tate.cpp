#include "twodescent/tate.hpp"

#include <vector>

namespace twodescent {

WeierstrassModel WeierstrassModel::translated(const Int& r, const Int& s,
                                              const Int& t) const {
  WeierstrassModel M;
  M.a1 = a1 + 2 * s;
  M.a2 = a2 - s * a1 + 3 * r - s * s;
  M.a3 = a3 + r * a1 + 2 * t;
  M.a4 = a4 - s * a3 + 2 * r * a2 - (t + r * s) * a1 + 3 * r * r - 2 * s * t;
  M.a6 = a6 + r * a4 + r * r * a2 + r * r * r - t * a3 - t * t - r * t * a1;
  return M;
}

WeierstrassModel WeierstrassModel::rescaled(const Int& p) const {
  auto exact = [](const Int& v, const Int& d) {
    if (v % d != 0) throw internal_error("rescaled: inexact division");
    return Int(v / d);
  };
  const Int p2 = p * p, p3 = p2 * p, p4 = p3 * p, p6 = p4 * p2;
  return WeierstrassModel{exact(a1, p), exact(a2, p2), exact(a3, p3),
                          exact(a4, p4), exact(a6, p6)};
}

std::string KodairaSymbol::str() const {
  switch (type) {
    case Type::I:
      return "I" + std::to_string(n);
    case Type::Istar:
      return "I" + std::to_string(n) + "*";
    case Type::II:
      return "II";
    case Type::III:
      return "III";
    case Type::IV:
      return "IV";
    case Type::IVstar:
      return "IV*";
    case Type::IIIstar:
      return "III*";
    case Type::IIstar:
      return "II*";
  }
  throw internal_error("KodairaSymbol::str");
}

KodairaSymbol KodairaSymbol::parse(const std::string& s) {
  KodairaSymbol k;
  if (s == "II") return {Type::II, 0};
  if (s == "III") return {Type::III, 0};
  if (s == "IV") return {Type::IV, 0};
  if (s == "II*") return {Type::IIstar, 0};
  if (s == "III*") return {Type::IIIstar, 0};
  if (s == "IV*") return {Type::IVstar, 0};
  if (s.size() >= 2 && s[0] == 'I') {
    bool star = s.back() == '*';
    std::string num = s.substr(1, s.size() - 1 - (star ? 1 : 0));
    if (!num.empty()) {
      k.type = star ? Type::Istar : Type::I;
      k.n = std::stol(num);
      return k;
    }
  }
  throw domain_error("KodairaSymbol: cannot parse '" + s + "'");
}

namespace {

long vp(const Int& x, const Int& p) {
  if (x == 0) return -1;  // callers treat negative as +infinity sentinel
  Int tmp;
  return static_cast<long>(
      mpz_remove(tmp.get_mpz_t(), x.get_mpz_t(), p.get_mpz_t()));
}

bool divides_pow(const Int& x, const Int& p, long k) {
  if (x == 0) return true;
  return vp(x, p) >= k;
}

Int mod_lift(const Int& x, const Int& m) {
  Int r = x % m;
  if (r < 0) r += m;
  return r;
}

// number of distinct roots of a nonzero polynomial mod p by direct scan;
// only used on additive fibers where p is small (the multiplicative and
// quadratic tests never call this).
int count_roots_mod_p(const std::vector<Int>& coeffs, const Int& p) {
  if (p > (1 << 20))
    throw internal_error("count_roots_mod_p: prime too large for scan");
  int count = 0;
  for (Int x = 0; x < p; ++x) {
    Int acc = 0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it)
      acc = (acc * x + *it) % p;
    if (acc == 0) ++count;
  }
  return count;
}

// Does z^2 + bz + c have a root mod p?
bool quadratic_has_root(const Int& b, const Int& c, const Int& p) {
  if (p == 2) {
    return c % 2 == 0 || (1 + b + c) % 2 == 0;
  }
  Int disc = b * b - 4 * c;
  Int d = mod_lift(disc, p);
  if (d == 0) return true;
  return mpz_legendre(d.get_mpz_t(), p.get_mpz_t()) == 1;
}

Int inv_mod(const Int& x, const Int& m) {
  Int r;
  if (mpz_invert(r.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t()) == 0)
    throw internal_error("inv_mod: not invertible");
  return r;
}

// gcd of two polynomials over F_p (coefficients ascending), monic result.
std::vector<Int> fp_gcd(std::vector<Int> f, std::vector<Int> g, const Int& p) {
  auto normalize = [&p](std::vector<Int>& h) {
    for (auto& c : h) c = mod_lift(c, p);
    while (!h.empty() && h.back() == 0) h.pop_back();
  };
  normalize(f);
  normalize(g);
  while (!g.empty()) {
    // f mod g
    while (f.size() >= g.size() && !f.empty()) {
      Int q = mod_lift(f.back() * inv_mod(g.back(), p), p);
      std::size_t off = f.size() - g.size();
      for (std::size_t i = 0; i < g.size(); ++i)
        f[off + i] = mod_lift(f[off + i] - q * g[i], p);
      while (!f.empty() && f.back() == 0) f.pop_back();
    }
    std::swap(f, g);
  }
  if (!f.empty() && f.back() != 1) {
    Int inv = inv_mod(f.back(), p);
    for (auto& c : f) c = mod_lift(c * inv, p);
  }
  return f;
}

// Multiplicity of the root a in f modulo p, by repeated synthetic division.
int root_multiplicity(std::vector<Int> f, const Int& a, const Int& p) {
  int mult = 0;
  while (f.size() > 1) {
    std::vector<Int> q(f.size() - 1);
    Int acc = 0;
    for (std::size_t i = f.size(); i-- > 1;) {
      acc = mod_lift(acc * a + f[i], p);
      q[i - 1] = acc;
    }
    Int rem = mod_lift(acc * a + f[0], p);
    if (rem != 0) break;
    ++mult;
    f = std::move(q);
  }
  return mult;
}

// The unique multiple root of a cubic P mod p, given g = gcd(P, P') of
// degree >= 1.  Works in every characteristic (the degree of g does not
// determine the multiplicity when p is 2 or 3).
Int multiple_root_of_cubic(const std::vector<Int>& g, const Int& p) {
  if (g.size() == 2) return mod_lift(-g[0], p);
  if (g.size() == 3) {
    // g = (T - a)^2; at p = 2 the linear term vanishes and a = sqrt(g0) = g0
    if (p == 2) return mod_lift(g[0], 2);
    return mod_lift(-g[1] * inv_mod(Int(2), p), p);
  }
  if (g.size() == 4) {
    // g = P itself (P' vanished mod p): only possible at p = 3, where the
    // triple root satisfies a = a^3 = -g0
    if (p != 3) throw internal_error("multiple_root_of_cubic: bad gcd");
    return mod_lift(-g[0], 3);
  }
  throw internal_error("multiple_root_of_cubic: unexpected gcd degree");
}

// Singular point of the reduced curve mod p, as integer lifts (r, t).
std::pair<Int, Int> singular_point(const WeierstrassModel& M, const Int& p) {
  if (p == 2) {
    for (Int x = 0; x < 2; ++x) {
      for (Int y = 0; y < 2; ++y) {
        Int F = y * y + M.a1 * x * y + M.a3 * y - x * x * x - M.a2 * x * x -
                M.a4 * x - M.a6;
        Int Fx = M.a1 * y - 3 * x * x - 2 * M.a2 * x - M.a4;
        Int Fy = 2 * y + M.a1 * x + M.a3;
        if (F % 2 == 0 && Fx % 2 == 0 && Fy % 2 == 0) return {x, y};
      }
    }
    throw internal_error("singular_point: none found mod 2");
  }
  // odd p: complete the square; x0 is the multiple root of
  // C(x) = 4x^3 + b2 x^2 + 2 b4 x + b6 mod p.
  std::vector<Int> C = {mod_lift(M.b6(), p), mod_lift(2 * M.b4(), p),
                        mod_lift(M.b2(), p), Int(4 % p)};
  std::vector<Int> Cd = {mod_lift(2 * M.b4(), p), mod_lift(2 * M.b2(), p),
                         Int(12 % p)};
  Int x0;
  while (!Cd.empty() && Cd.back() == 0) Cd.pop_back();
  if (Cd.empty()) {
    // only possible at p = 3 with b2 = b4 = 0: C = x^3 + b6, cube root is
    // the Frobenius identity
    if (p != 3) throw internal_error("singular_point: derivative vanished");
    x0 = mod_lift(-M.b6(), 3);
  } else {
    auto g = fp_gcd(C, Cd, p);
    if (g.size() == 2) {  // (x - x0)
      x0 = mod_lift(-g[0], p);
    } else if (g.size() == 3) {  // (x - x0)^2
      x0 = mod_lift(-g[1] * inv_mod(Int(2), p), p);
    } else {
      throw internal_error("singular_point: unexpected gcd degree");
    }
  }
  Int y0 = mod_lift(-(M.a1 * x0 + M.a3) * inv_mod(Int(2), p), p);
  return {x0, y0};
}

void require_div(const WeierstrassModel& M, const Int& p, long v1, long v2,
                 long v3, long v4, long v6, const char* where) {
  if (!divides_pow(M.a1, p, v1) || !divides_pow(M.a2, p, v2) ||
      !divides_pow(M.a3, p, v3) || !divides_pow(M.a4, p, v4) ||
      !divides_pow(M.a6, p, v6))
    throw internal_error(std::string("tate: lost divisibility at ") + where);
}

}  // namespace

LocalData tate_algorithm(const WeierstrassModel& input, const Int& p) {
  if (!is_prime(p)) throw domain_error("tate_algorithm: p must be prime");

  LocalData out;
  out.p = p;
  WeierstrassModel M = input;
  bool minimal = true;

  for (;;) {
    const Int disc = M.discriminant();
    if (disc == 0) throw domain_error("tate_algorithm: singular curve");
    long n = vp(disc, p);

    if (n == 0) {
      out.kodaira = {KodairaSymbol::Type::I, 0};
      out.conductor_exponent = 0;
      out.tamagawa = 1;
      out.minimal = minimal;
      return out;
    }

    // move the singular point of the reduction to the origin
    auto [r0, t0] = singular_point(M, p);
    M = M.translated(r0, 0, t0);
    require_div(M, p, 0, 0, 1, 1, 1, "origin");

    if (vp(M.b2(), p) == 0) {
      // multiplicative: I_n
      out.kodaira = {KodairaSymbol::Type::I, n};
      out.conductor_exponent = 1;
      bool split = quadratic_has_root(M.a1, -M.a2, p);
      out.tamagawa = split ? Int(n) : Int(n % 2 == 0 ? 2 : 1);
      out.minimal = minimal;
      return out;
    }

    if (!divides_pow(M.a6, p, 2)) {
      out.kodaira = {KodairaSymbol::Type::II, 0};
      out.conductor_exponent = static_cast<int>(n);
      out.tamagawa = 1;
      out.minimal = minimal;
      return out;
    }
    if (!divides_pow(M.b8(), p, 3)) {
      out.kodaira = {KodairaSymbol::Type::III, 0};
      out.conductor_exponent = static_cast<int>(n - 1);
      out.tamagawa = 2;
      out.minimal = minimal;
      return out;
    }
    if (!divides_pow(M.b6(), p, 3)) {
      out.kodaira = {KodairaSymbol::Type::IV, 0};
      out.conductor_exponent = static_cast<int>(n - 2);
      out.tamagawa =
          quadratic_has_root(M.a3 / p, -(M.a6 / (p * p)), p) ? 3 : 1;
      out.minimal = minimal;
      return out;
    }

    // normalize: p | a1, a2; p^2 | a3, a4; p^3 | a6
    if (p == 2) {
      Int s = mod_lift(M.a2, 2);
      M = M.translated(0, s, 0);
      Int t = 2 * mod_lift(M.a3 / 2, 2);
      M = M.translated(0, 0, t);
      if (mod_lift(M.a6, 8) == 4) M = M.translated(0, 0, 2);
    } else {
      Int s = mod_lift(-M.a1 * inv_mod(Int(2), p), p);
      M = M.translated(0, s, 0);
      Int t = mod_lift(-M.a3 * inv_mod(Int(2), p * p), p * p);
      M = M.translated(0, 0, t);
    }
    require_div(M, p, 1, 1, 2, 2, 3, "normalized");

    // P(T) = T^3 + (a2/p) T^2 + (a4/p^2) T + (a6/p^3) mod p
    const Int c2 = M.a2 / p, c1 = M.a4 / (p * p), c0 = M.a6 / (p * p * p);
    std::vector<Int> P = {mod_lift(c0, p), mod_lift(c1, p), mod_lift(c2, p),
                          Int(1)};
    // multiplicity structure via gcd(P, P')
    std::vector<Int> Pd = {mod_lift(c1, p), mod_lift(2 * c2, p), Int(3 % p)};
    auto g = fp_gcd(P, Pd, p);
    int multiplicity = 1;
    Int alpha = 0;
    if (g.size() >= 2) {
      alpha = multiple_root_of_cubic(g, p);
      multiplicity = root_multiplicity(P, alpha, p);
      if (multiplicity < 2)
        throw internal_error("tate: gcd root is not a multiple root");
    }

    if (multiplicity == 1) {
      out.kodaira = {KodairaSymbol::Type::Istar, 0};
      out.conductor_exponent = static_cast<int>(n - 4);
      out.tamagawa = 1 + count_roots_mod_p(P, p);
      out.minimal = minimal;
      return out;
    }

    if (multiplicity == 2) {
      // translate the double root of P to 0, then walk the I_nu* chain
      M = M.translated(p * alpha, 0, 0);
      require_div(M, p, 1, 1, 2, 3, 4, "Inu* entry");
      if (vp(M.a2, p) != 1)
        throw internal_error("tate: a2 valuation in I_nu* chain");

      Int mx = p * p, my = p * p;
      long a = 2, b = 2;
      for (;;) {
        // quadratic in Y: Y^2 + (a3/my) Y - a6/(mx my)
        Int qb = M.a3 / my, qc = -(M.a6 / (mx * my));
        if (!divides_pow(qb * qb - 4 * qc, p, 1)) {
          long nu = a + b - 3;
          out.kodaira = {KodairaSymbol::Type::Istar, nu};
          out.conductor_exponent = static_cast<int>(n - 4 - nu);
          out.tamagawa = quadratic_has_root(qb, qc, p) ? 4 : 2;
          out.minimal = minimal;
          return out;
        }
        Int tau = p == 2 ? mod_lift(-qc, 2)
                         : mod_lift(-qb * inv_mod(Int(2), p), p);
        M = M.translated(0, 0, my * tau);
        my *= p;
        ++b;

        // quadratic in X: (a2/p) X^2 + (a4/(p mx)) X + a6/(p mx^2)
        Int ra = M.a2 / p, rb = M.a4 / (p * mx), rc = M.a6 / (p * mx * mx);
        if (!divides_pow(rb * rb - 4 * ra * rc, p, 1)) {
          long nu = a + b - 3;
          out.kodaira = {KodairaSymbol::Type::Istar, nu};
          out.conductor_exponent = static_cast<int>(n - 4 - nu);
          // roots of ra X^2 + rb X + rc: scale to monic
          bool has_root;
          if (p == 2) {
            has_root = rc % 2 == 0 || (ra + rb + rc) % 2 == 0;
          } else {
            Int d = mod_lift(rb * rb - 4 * ra * rc, p);
            has_root = mpz_legendre(d.get_mpz_t(), p.get_mpz_t()) == 1;
          }
          out.tamagawa = has_root ? 4 : 2;
          out.minimal = minimal;
          return out;
        }
        Int rho;
        if (p == 2) {
          rho = mod_lift(rc * ra, 2);  // double root of ra X^2 + rb X + rc
        } else {
          rho = mod_lift(-rb * inv_mod(2 * ra, p), p);
        }
        M = M.translated(mx * rho, 0, 0);
        mx *= p;
        ++a;
      }
    }

    // multiplicity == 3: translate the triple root to 0
    M = M.translated(p * alpha, 0, 0);
    require_div(M, p, 1, 2, 2, 3, 4, "triple root");

    // quadratic Y^2 + (a3/p^2) Y - a6/p^4
    {
      Int qb = M.a3 / (p * p), qc = -(M.a6 / (p * p * p * p));
      if (!divides_pow(qb * qb - 4 * qc, p, 1)) {
        out.kodaira = {KodairaSymbol::Type::IVstar, 0};
        out.conductor_exponent = static_cast<int>(n - 6);
        out.tamagawa = quadratic_has_root(qb, qc, p) ? 3 : 1;
        out.minimal = minimal;
        return out;
      }
      Int tau = p == 2 ? mod_lift(-qc, 2)
                       : mod_lift(-qb * inv_mod(Int(2), p), p);
      M = M.translated(0, 0, p * p * tau);
      require_div(M, p, 1, 2, 3, 3, 5, "IV* shift");
    }

    if (!divides_pow(M.a4, p, 4)) {
      out.kodaira = {KodairaSymbol::Type::IIIstar, 0};
      out.conductor_exponent = static_cast<int>(n - 7);
      out.tamagawa = 2;
      out.minimal = minimal;
      return out;
    }
    if (!divides_pow(M.a6, p, 6)) {
      out.kodaira = {KodairaSymbol::Type::IIstar, 0};
      out.conductor_exponent = static_cast<int>(n - 8);
      out.tamagawa = 1;
      out.minimal = minimal;
      return out;
    }

    // not minimal at p: rescale and start over
    M = M.rescaled(p);
    minimal = false;
  }
}

}  // namespace twodescent
