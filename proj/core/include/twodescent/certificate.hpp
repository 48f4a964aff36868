// Schema-versioned certificate documents: serialization to a canonical
// JSON form (every number an exact decimal string, byte-stable output),
// parsing, and the replay verifier that re-tests every claim a
// certificate makes.

#pragma once

#include <optional>
#include <string>

#include "twodescent/descent.hpp"

namespace twodescent {

inline constexpr const char* kCertificateSchema = "twodescent-certificate v1";

// Structural problems (bad JSON, missing fields, unparsable numbers);
// the CLI maps these to the malformed-input exit code.
class CertificateParseError : public domain_error {
 public:
  using domain_error::domain_error;
};

struct TimingInfo {
  double total_seconds = 0;
  double selmer_seconds = 0;
};

// Canonical JSON text.  Timing, when given, goes to a segregated optional
// section that verification and byte-equality of the primary content
// ignore.
std::string certificate_to_json(const RankCertificate& cert,
                                const TimingInfo* timing = nullptr);

// Parses canonical JSON.  Throws CertificateParseError on structural
// problems; value-level inconsistencies (an invalid pair, a malformed
// square class) surface as domain_error.
RankCertificate certificate_from_json(const std::string& text);

struct VerifyResult {
  bool ok = false;
  std::string first_failure;  // empty when ok
};

// Replays every claim: pair validity, coefficient arithmetic, points on
// curves, connecting-map images, Selmer partitions with witness replay
// and refutation re-runs, exact-sequence bookkeeping, torsion, rank,
// j-invariant and its inversion, and the local reduction table.
VerifyResult verify_certificate(const RankCertificate& cert);

// Parse + verify.  CertificateParseError propagates (malformed input);
// anything else is reported as a verification failure.
VerifyResult verify_certificate_text(const std::string& text);

}  // namespace twodescent
