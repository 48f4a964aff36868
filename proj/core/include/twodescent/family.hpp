// The parameter family: pairs of naturals (m, n) with m, m+16n^2, m+25n^2
// all prime and congruent to 11 mod 24.  Enumeration over finite boxes,
// validation with diagnostics, and a line-oriented pair cache.

#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "twodescent/arith.hpp"

namespace twodescent {

// A validated member of the family.  Construction checks the defining
// conditions; use is_valid_pair for a non-throwing check with diagnostics.
class FamilyPair {
 public:
  FamilyPair(Int m, Int n);  // throws domain_error when invalid

  const Int& m() const { return m_; }
  const Int& n() const { return n_; }
  Int p16() const { return m_ + 16 * n_ * n_; }  // m + 16 n^2
  Int p25() const { return m_ + 25 * n_ * n_; }  // m + 25 n^2

  friend bool operator==(const FamilyPair& a, const FamilyPair& b) {
    return a.m_ == b.m_ && a.n_ == b.n_;
  }
  // (n, m)-lexicographic: the search order
  friend bool operator<(const FamilyPair& a, const FamilyPair& b) {
    return a.n_ != b.n_ ? a.n_ < b.n_ : a.m_ < b.m_;
  }

 private:
  Int m_, n_;
};

enum class PairFailure {
  None,
  MNotPrime,
  MBadResidue,
  P16NotPrime,
  P16BadResidue,
  P25NotPrime,
  P25BadResidue,
  NotPositive,
};

struct PairCheck {
  bool ok = false;
  PairFailure failure = PairFailure::None;
  std::string reason;  // human-readable first failed condition
};

// Checks the defining conditions in the fixed order
//   m prime, m = 11 (24), m+16n^2 prime, m+16n^2 = 11 (24),
//   m+25n^2 prime, m+25n^2 = 11 (24)
// and reports the first failure.
PairCheck is_valid_pair(const Int& m, const Int& n);

// Necessary congruences: m = 11 (mod 24) and n = 0 (mod 12).  Exactly the
// residue pairs for which all three congruence conditions can hold; never
// rejects a valid pair.
bool congruence_prefilter(const Int& m, const Int& n);

struct SearchBox {
  Int m_max;
  Int n_max;
};

// All valid pairs with m <= m_max, n <= n_max, ordered by (n, m).
// jobs > 1 splits the box into n-strips processed concurrently; the result
// is identical for any jobs value.
std::vector<FamilyPair> search_pairs(const SearchBox& box, int jobs = 1);

// ---- pair cache ----------------------------------------------------------
// Line-delimited text file.  First line is the schema header
//   # twodescent-pairs v1
// and every following non-empty line holds "m n m+16n^2 m+25n^2" in decimal.
// The file is append-only: merging new pairs never rewrites existing lines.

extern const char* const kPairCacheHeader;

// Parses a cache file.  Throws domain_error on a bad header or bad record.
std::vector<FamilyPair> read_pair_cache(const std::filesystem::path& path);

// Appends the pairs not already present (by (m, n)); creates the file with
// the header when missing.  Returns the number of newly appended records.
std::size_t append_pair_cache(const std::filesystem::path& path,
                              const std::vector<FamilyPair>& pairs);

}  // namespace twodescent
