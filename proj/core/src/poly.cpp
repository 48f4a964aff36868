#include "twodescent/poly.hpp"

#include <algorithm>

namespace twodescent {

namespace {
const Rat kZeroRat = 0;
const Int kZeroInt = 0;

int sign_of(const Rat& x) { return sgn(x); }
}  // namespace

QPoly::QPoly(std::vector<Rat> coeffs) : c_(std::move(coeffs)) {
  for (auto& c : c_) c.canonicalize();
  trim();
}

void QPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

const Rat& QPoly::coeff(int i) const {
  if (i < 0 || i >= static_cast<int>(c_.size())) return kZeroRat;
  return c_[i];
}

const Rat& QPoly::lc() const {
  if (c_.empty()) throw domain_error("QPoly::lc of zero polynomial");
  return c_.back();
}

Rat QPoly::eval(const Rat& x) const {
  Rat acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

QPoly QPoly::derivative() const {
  std::vector<Rat> d;
  for (int i = 1; i <= degree(); ++i) d.push_back(c_[i] * i);
  return QPoly(std::move(d));
}

QPoly QPoly::operator*(const Rat& s) const {
  std::vector<Rat> d = c_;
  for (auto& c : d) c *= s;
  return QPoly(std::move(d));
}

QPoly QPoly::operator-() const { return *this * Rat(-1); }

QPoly QPoly::rem(const QPoly& g) const {
  if (g.is_zero()) throw domain_error("QPoly::rem by zero");
  std::vector<Rat> r = c_;
  int dg = g.degree();
  while (static_cast<int>(r.size()) - 1 >= dg) {
    int dr = static_cast<int>(r.size()) - 1;
    Rat q = r.back() / g.lc();
    for (int i = 0; i <= dg; ++i) r[dr - dg + i] -= q * g.coeff(i);
    // the top coefficient cancels exactly
    r.pop_back();
    while (!r.empty() && r.back() == 0) r.pop_back();
  }
  return QPoly(std::move(r));
}

QPoly QPoly::reversed() const {
  std::vector<Rat> d(c_.rbegin(), c_.rend());
  return QPoly(std::move(d));
}

Rat resultant(const QPoly& f, const QPoly& g) {
  // Sylvester determinant by exact Gaussian elimination; degrees are <= 4
  // so an O(n^3) rational elimination is plenty.
  int m = f.degree(), n = g.degree();
  if (m < 0 || n < 0) return 0;
  if (m == 0) {
    Rat r = 1;
    for (int i = 0; i < n; ++i) r *= f.coeff(0);
    return r;
  }
  if (n == 0) {
    Rat r = 1;
    for (int i = 0; i < m; ++i) r *= g.coeff(0);
    return r;
  }
  int N = m + n;
  std::vector<std::vector<Rat>> A(N, std::vector<Rat>(N, Rat(0)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= m; ++j) A[i][i + j] = f.coeff(m - j);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j <= n; ++j) A[n + i][i + j] = g.coeff(n - j);

  Rat det = 1;
  for (int col = 0; col < N; ++col) {
    int pivot = -1;
    for (int row = col; row < N; ++row)
      if (A[row][col] != 0) {
        pivot = row;
        break;
      }
    if (pivot < 0) return 0;
    if (pivot != col) {
      std::swap(A[pivot], A[col]);
      det = -det;
    }
    det *= A[col][col];
    Rat inv = 1 / A[col][col];
    for (int row = col + 1; row < N; ++row) {
      if (A[row][col] == 0) continue;
      Rat fct = A[row][col] * inv;
      for (int j = col; j < N; ++j) A[row][j] -= fct * A[col][j];
    }
  }
  return det;
}

Rat discriminant(const QPoly& f) {
  int d = f.degree();
  if (d < 1) throw domain_error("discriminant: degree >= 1 required");
  Rat res = resultant(f, f.derivative());
  Rat disc = res / f.lc();
  if ((d * (d - 1) / 2) % 2 == 1) disc = -disc;
  return disc;
}

namespace {

// Sturm chain of f (assumed squarefree).
std::vector<QPoly> sturm_chain(const QPoly& f) {
  std::vector<QPoly> chain;
  chain.push_back(f);
  chain.push_back(f.derivative());
  while (!chain.back().is_zero() && chain.back().degree() > 0) {
    QPoly r = chain[chain.size() - 2].rem(chain.back());
    if (r.is_zero()) break;
    chain.push_back(-r);
  }
  return chain;
}

int sign_variations(const std::vector<QPoly>& chain, const Rat& x) {
  int var = 0, prev = 0;
  for (const auto& g : chain) {
    if (g.is_zero()) continue;
    int s = sign_of(g.eval(x));
    if (s == 0) continue;
    if (prev != 0 && s != prev) ++var;
    prev = s;
  }
  return var;
}

int sign_variations_at_infinity(const std::vector<QPoly>& chain, int dir) {
  // dir = +1 for +inf, -1 for -inf
  int var = 0, prev = 0;
  for (const auto& g : chain) {
    if (g.is_zero()) continue;
    int s = sign_of(g.lc());
    if (dir < 0 && g.degree() % 2 == 1) s = -s;
    if (s == 0) continue;
    if (prev != 0 && s != prev) ++var;
    prev = s;
  }
  return var;
}

// Cauchy bound: all real roots lie in (-M, M).
Rat root_bound(const QPoly& f) {
  Rat M = 0;
  for (int i = 0; i < f.degree(); ++i) {
    Rat t = abs(f.coeff(i) / f.lc());
    if (t > M) M = t;
  }
  return M + 1;
}

}  // namespace

int count_real_roots(const QPoly& f) {
  if (f.degree() < 1) return 0;
  if (discriminant(f) == 0)
    throw domain_error("count_real_roots: polynomial must be squarefree");
  auto chain = sturm_chain(f);
  return sign_variations_at_infinity(chain, -1) -
         sign_variations_at_infinity(chain, +1);
}

std::vector<std::pair<Rat, Rat>> isolate_real_roots(const QPoly& f) {
  std::vector<std::pair<Rat, Rat>> out;
  if (f.degree() < 1) return out;
  auto chain = sturm_chain(f);
  Rat M = root_bound(f);

  // roots_in(lo, hi] by Sturm counts; endpoints are always non-roots here
  // because we bisect at non-root midpoints only.
  auto var_at = [&](const Rat& x) { return sign_variations(chain, x); };

  struct Seg {
    Rat lo, hi;
    int vlo, vhi;
  };
  std::vector<Seg> stack;
  Rat lo = -M, hi = M;
  // nudge endpoints off roots (the Cauchy bound is strict, so +-M are safe)
  stack.push_back({lo, hi, var_at(lo), var_at(hi)});
  while (!stack.empty()) {
    Seg s = stack.back();
    stack.pop_back();
    int nroots = s.vlo - s.vhi;
    if (nroots <= 0) continue;
    if (nroots == 1) {
      out.emplace_back(s.lo, s.hi);
      continue;
    }
    Rat mid = (s.lo + s.hi) / 2;
    while (f.eval(mid) == 0) mid += (s.hi - s.lo) / 64;  // rational roots
    int vm = var_at(mid);
    stack.push_back({s.lo, mid, s.vlo, vm});
    stack.push_back({mid, s.hi, vm, s.vhi});
  }
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  // shrink until pairwise disjoint
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i + 1 < out.size(); ++i) {
      if (out[i].second > out[i + 1].first) {
        // refine both by bisection
        for (auto* seg : {&out[i], &out[i + 1]}) {
          Rat mid = (seg->first + seg->second) / 2;
          while (f.eval(mid) == 0) mid += (seg->second - seg->first) / 64;
          if (var_at(seg->first) - var_at(mid) == 1)
            seg->second = mid;
          else
            seg->first = mid;
        }
        changed = true;
      }
    }
  }
  return out;
}

ZPoly::ZPoly(std::vector<Int> coeffs) : c_(std::move(coeffs)) { trim(); }

void ZPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

const Int& ZPoly::coeff(int i) const {
  if (i < 0 || i >= static_cast<int>(c_.size())) return kZeroInt;
  return c_[i];
}

const Int& ZPoly::lc() const {
  if (c_.empty()) throw domain_error("ZPoly::lc of zero polynomial");
  return c_.back();
}

Int ZPoly::eval(const Int& x) const {
  Int acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

ZPoly ZPoly::derivative() const {
  std::vector<Int> d;
  for (int i = 1; i <= degree(); ++i) d.push_back(c_[i] * i);
  return ZPoly(std::move(d));
}

ZPoly ZPoly::reversed() const {
  std::vector<Int> d(c_.rbegin(), c_.rend());
  return ZPoly(std::move(d));
}

QPoly ZPoly::to_qpoly() const {
  std::vector<Rat> d;
  d.reserve(c_.size());
  for (const auto& c : c_) d.emplace_back(c);
  return QPoly(std::move(d));
}

}  // namespace twodescent
