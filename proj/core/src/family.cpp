#include "twodescent/family.hpp"

#include <algorithm>
#include <mutex>
#include <fstream>
#include <set>
#include <sstream>
#include <thread>

namespace twodescent {

const char* const kPairCacheHeader = "# twodescent-pairs v1";

FamilyPair::FamilyPair(Int m, Int n) : m_(std::move(m)), n_(std::move(n)) {
  PairCheck chk = is_valid_pair(m_, n_);
  if (!chk.ok) throw domain_error("FamilyPair: " + chk.reason);
}

PairCheck is_valid_pair(const Int& m, const Int& n) {
  PairCheck r;
  if (m < 1 || n < 1) {
    r.failure = PairFailure::NotPositive;
    r.reason = "m and n must be natural numbers";
    return r;
  }
  const Int k = m + 16 * n * n;
  const Int q = m + 25 * n * n;
  struct Cond {
    const Int& v;
    const char* name;
    PairFailure not_prime;
    PairFailure bad_residue;
  };
  const Cond conds[3] = {
      {m, "m", PairFailure::MNotPrime, PairFailure::MBadResidue},
      {k, "m+16n^2", PairFailure::P16NotPrime, PairFailure::P16BadResidue},
      {q, "m+25n^2", PairFailure::P25NotPrime, PairFailure::P25BadResidue},
  };
  for (const auto& c : conds) {
    if (!is_prime(c.v)) {
      r.failure = c.not_prime;
      r.reason = std::string(c.name) + " not prime";
      return r;
    }
    Int res = c.v % 24;
    if (res != 11) {
      r.failure = c.bad_residue;
      r.reason = std::string(c.name) + " == " + res.get_str() +
                 " (mod 24), want 11";
      return r;
    }
  }
  r.ok = true;
  return r;
}

bool congruence_prefilter(const Int& m, const Int& n) {
  return m % 24 == 11 && n % 12 == 0 && n > 0;
}

namespace {

std::vector<FamilyPair> search_strip(const Int& n, const Int& m_max) {
  std::vector<FamilyPair> found;
  // m runs over the residue class 11 mod 24 only (24x fewer primality
  // tests than a naive scan).
  for (Int m = 11; m <= m_max; m += 24) {
    if (!is_prime(m)) continue;
    Int k = m + 16 * n * n;
    if (k % 24 != 11 || !is_prime(k)) continue;  // residue re-check is free
    Int q = m + 25 * n * n;
    if (q % 24 != 11 || !is_prime(q)) continue;
    found.emplace_back(m, n);
  }
  return found;
}

}  // namespace

std::vector<FamilyPair> search_pairs(const SearchBox& box, int jobs) {
  std::vector<Int> strips;
  for (Int n = 12; n <= box.n_max; n += 12) strips.push_back(n);

  std::vector<std::vector<FamilyPair>> results(strips.size());
  if (jobs <= 1 || strips.size() <= 1) {
    for (std::size_t i = 0; i < strips.size(); ++i)
      results[i] = search_strip(strips[i], box.m_max);
  } else {
    std::vector<std::thread> workers;
    std::size_t next = 0;
    std::mutex mu;
    auto worker = [&] {
      for (;;) {
        std::size_t i;
        {
          std::lock_guard<std::mutex> lock(mu);
          if (next >= strips.size()) return;
          i = next++;
        }
        results[i] = search_strip(strips[i], box.m_max);
      }
    };
    int nworkers = std::min<int>(jobs, static_cast<int>(strips.size()));
    for (int t = 0; t < nworkers; ++t) workers.emplace_back(worker);
    for (auto& w : workers) w.join();
  }

  std::vector<FamilyPair> out;
  for (auto& strip : results)
    out.insert(out.end(), strip.begin(), strip.end());
  std::sort(out.begin(), out.end());  // deterministic (n, m) order
  return out;
}

std::vector<FamilyPair> read_pair_cache(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw domain_error("pair cache: cannot open " + path.string());
  std::string line;
  if (!std::getline(in, line) || line != kPairCacheHeader)
    throw domain_error("pair cache: missing or unknown header in " +
                       path.string());
  std::vector<FamilyPair> pairs;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::istringstream fields(line);
    std::string ms, ns, ks, qs;
    if (!(fields >> ms >> ns >> ks >> qs))
      throw domain_error("pair cache: bad record at line " +
                         std::to_string(lineno));
    FamilyPair p{Int(ms), Int(ns)};
    if (p.p16() != Int(ks) || p.p25() != Int(qs))
      throw domain_error("pair cache: inconsistent primes at line " +
                         std::to_string(lineno));
    pairs.push_back(std::move(p));
  }
  return pairs;
}

std::size_t append_pair_cache(const std::filesystem::path& path,
                              const std::vector<FamilyPair>& pairs) {
  std::set<std::pair<Int, Int>> seen;
  bool exists = std::filesystem::exists(path);
  if (exists) {
    for (const auto& p : read_pair_cache(path)) seen.insert({p.m(), p.n()});
  }
  std::ofstream out(path, std::ios::app);
  if (!out) throw domain_error("pair cache: cannot write " + path.string());
  if (!exists) out << kPairCacheHeader << '\n';
  std::size_t appended = 0;
  for (const auto& p : pairs) {
    if (!seen.insert({p.m(), p.n()}).second) continue;
    out << p.m() << ' ' << p.n() << ' ' << p.p16() << ' ' << p.p25() << '\n';
    ++appended;
  }
  if (!out) throw domain_error("pair cache: write failed for " + path.string());
  return appended;
}

}  // namespace twodescent
