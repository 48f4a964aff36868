// Acceptance suite: every exit criterion of the build, one PASS/FAIL line
// each, exact thresholds pinned in code.  Nonzero exit on any failure.

#include <chrono>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

#include <json.hpp>

#include "oracles.hpp"
#include "twodescent/certificate.hpp"

using namespace twodescent;
using json = nlohmann::ordered_json;

namespace {

struct Criterion {
  int id;
  std::string name;
  bool pass = true;
  std::string detail;

  void fail(const std::string& why) {
    if (pass) detail = why;
    pass = false;
  }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

// ---- criterion 1: smallest pair ------------------------------------------

Criterion criterion_smallest_pair() {
  Criterion c{1, "smallest-pair reproduction (m <= 700, n <= 12, < 1 s)"};
  auto t0 = std::chrono::steady_clock::now();
  auto found = search_pairs({Int(700), Int(12)});
  double elapsed = seconds_since(t0);
  if (elapsed >= 1.0) c.fail("search took " + std::to_string(elapsed) + " s");
  if (found.size() != 1 || found[0].m() != 659 || found[0].n() != 12)
    c.fail("box does not contain exactly (659, 12)");
  auto naive = oracle::naive_pair_search(700, 12);
  if (naive.size() != 1 || naive[0] != std::pair<long, long>{659, 12})
    c.fail("independent oracle disagrees");
  return c;
}

// ---- criteria 2/3/6/7/8/9 share the certified pairs ------------------------

struct CertifiedPair {
  FamilyPair pair;
  RankCertificate cert;
  double seconds;
};

std::vector<CertifiedPair> certify_box(Criterion& c2) {
  std::vector<CertifiedPair> out;
  auto pairs = search_pairs({Int(100000), Int(48)});
  if (pairs.size() < 100)
    c2.fail("expected a few hundred pairs in the box, found " +
            std::to_string(pairs.size()));
  for (const auto& p : pairs) {
    auto t0 = std::chrono::steady_clock::now();
    RankCertificate cert = rank_certificate(p);
    double secs = seconds_since(t0);
    if (secs >= 10.0)
      c2.fail("pair (" + p.m().get_str() + ", " + p.n().get_str() +
              ") took " + std::to_string(secs) + " s");
    if (!(cert.torsion.order == 2 && cert.torsion.structure == "Z/2"))
      c2.fail("torsion not Z/2 at (" + p.m().get_str() + ", " +
              p.n().get_str() + ")");
    if (!(cert.weak_mw.exact && cert.weak_mw.order == 8))
      c2.fail("|E/2E| != 8 at (" + p.m().get_str() + ", " + p.n().get_str() +
              ")");
    if (!(cert.rank.exact && cert.rank.value == 2))
      c2.fail("rank != 2 at (" + p.m().get_str() + ", " + p.n().get_str() +
              ")");
    if (!cert.sha2_witnessed_trivial)
      c2.fail("sha2_witnessed_trivial false at (" + p.m().get_str() + ", " +
              p.n().get_str() + ")");
    out.push_back({p, std::move(cert), secs});
  }
  return out;
}

Criterion criterion_selmer_sets(const std::vector<CertifiedPair>& certified) {
  Criterion c{3, "Selmer sets match the closed forms, fully point-evidenced"};
  for (const auto& cp : certified) {
    const Int m = cp.pair.m(), k = cp.pair.p16(), q = cp.pair.p25();
    std::set<Int> phi, hat;
    for (const auto& el : cp.cert.sel_phi.elements) phi.insert(el.cls.rep());
    for (const auto& el : cp.cert.sel_phihat.elements)
      hat.insert(el.cls.rep());
    if (phi != std::set<Int>{Int(1), -m, -k, m * k})
      c.fail("Sel_phi wrong at (" + m.get_str() + ", " +
             cp.pair.n().get_str() + ")");
    if (hat != std::set<Int>{Int(1), k, q, k * q})
      c.fail("Sel_phi_hat wrong at (" + m.get_str() + ", " +
             cp.pair.n().get_str() + ")");
    if (!cp.cert.sel_phi.fully_evidenced() ||
        !cp.cert.sel_phihat.fully_evidenced())
      c.fail("missing rational-point evidence at (" + m.get_str() + ", " +
             cp.pair.n().get_str() + ")");
  }
  return c;
}

Criterion criterion_local_oracle() {
  Criterion c{4, "local solvability vs brute-force oracles (>= 10^4 instances)"};
  long total = 0, conclusive = 0;
  struct Job {
    std::uint64_t p;
    long n;
  };
  for (Job job : {Job{2, 3000}, Job{3, 2500}, Job{5, 1250}, Job{7, 600},
                  Job{11, 120}, Job{13, 60}}) {
    auto stats = oracle::run_qp_oracle_suite(job.p, job.n, 9000 + job.p);
    total += stats.instances;
    conclusive += stats.conclusive;
    if (stats.disagreements != 0)
      c.fail(std::to_string(stats.disagreements) + " disagreements at p = " +
             std::to_string(job.p));
    if (stats.witness_failures != 0)
      c.fail("witness replay failures at p = " + std::to_string(job.p));
  }
  auto real_stats = oracle::run_real_oracle_suite(2500, 424242);
  total += real_stats.instances;
  conclusive += real_stats.conclusive;
  if (real_stats.disagreements != 0) c.fail("real-place disagreements");
  if (total < 10000) c.fail("only " + std::to_string(total) + " instances");
  c.detail = std::to_string(total) + " instances, " +
             std::to_string(conclusive) + " conclusive, 0 disagreements";
  if (!c.pass) c.detail.clear();
  return c;
}

Criterion criterion_algebraic_suites() {
  Criterion c{5, "group law, connecting map, isogeny composition (10^3 each)"};
  FamilyCurves F{FamilyPair(Int(659), Int(12))};
  const DescentCurve& E = F.E();
  const DescentCurve Ep = E.dual();

  // pool of small-height points: i P1 + j P2 (+ P0)
  std::vector<Point> pool;
  for (int i = -2; i <= 2; ++i) {
    for (int j = -2; j <= 2; ++j) {
      Point P = add(E, mul(E, Int(i), F.P1()), mul(E, Int(j), F.P2()));
      pool.push_back(P);
      pool.push_back(add(E, P, F.P0()));
    }
  }
  std::mt19937_64 rng(5150);
  std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);

  // 10^3 associativity triples (commutativity comes along for free)
  for (int i = 0; i < 1000; ++i) {
    const Point &P = pool[pick(rng)], &Q = pool[pick(rng)],
                &R = pool[pick(rng)];
    if (add(E, add(E, P, Q), R) != add(E, P, add(E, Q, R)))
      c.fail("associativity failed");
    if (add(E, P, Q) != add(E, Q, P)) c.fail("commutativity failed");
  }

  // 10^3 connecting-map pairs: values of P, Q, P+Q multiply to a square
  auto connecting_value = [](const DescentCurve& C, const Point& P) -> Rat {
    if (P.is_identity()) return Rat(1);
    if (P.x() == 0) return Rat(C.b());
    return P.x();
  };
  std::vector<Point> qpool;
  for (int i = -2; i <= 2; ++i) {
    Point Q = mul(Ep, Int(i), F.Q1());
    qpool.push_back(Q);
    qpool.push_back(add(Ep, Q, F.Q0()));
  }
  std::uniform_int_distribution<std::size_t> qpick(0, qpool.size() - 1);
  for (int i = 0; i < 1000; ++i) {
    const Point &P = qpool[qpick(rng)], &Q = qpool[qpick(rng)];
    Rat prod = connecting_value(Ep, P) * connecting_value(Ep, Q) *
               connecting_value(Ep, add(Ep, P, Q));
    if (prod < 0 || !is_square(prod))
      c.fail("connecting map not a homomorphism");
  }

  // 10^3 isogeny compositions, both directions
  for (int i = 0; i < 500; ++i) {
    const Point& P = pool[pick(rng)];
    if (isogeny_phi_hat(E, isogeny_phi(E, P)) != mul(E, Int(2), P))
      c.fail("phi_hat . phi != [2] on E");
    const Point& Q = qpool[qpick(rng)];
    if (isogeny_phi(E, isogeny_phi_hat(E, Q)) != mul(Ep, Int(2), Q))
      c.fail("phi . phi_hat != [2] on E'");
  }
  return c;
}

Criterion criterion_congruence_filters(const std::vector<CertifiedPair>& certified) {
  Criterion c{6, "p=2 rejects exactly d=3 (mod 4); p=m+25n^2 exactly non-residues"};
  for (const auto& cp : certified) {
    FamilyCurves F(cp.pair);
    const Int q = cp.pair.p25();
    for (const SquareClass& d : selmer_candidates(F.Eprime())) {
      QuarticModel space = descent_space(d, F.Eprime());
      Int dm4 = d.rep() % 4;
      if (dm4 < 0) dm4 += 4;
      bool pass2 = has_qp_point(space, Int(2)).solvable;
      if (pass2 != (dm4 == 1))
        c.fail("p=2 filter wrong for d=" + d.rep().get_str() + " at (" +
               cp.pair.m().get_str() + ", " + cp.pair.n().get_str() + ")");
      bool passq = has_qp_point(space, q).solvable;
      if (passq != (legendre(d.rep(), q) == 1))
        c.fail("p=q filter wrong for d=" + d.rep().get_str() + " at (" +
               cp.pair.m().get_str() + ", " + cp.pair.n().get_str() + ")");
    }
  }
  return c;
}

Criterion criterion_reduction_data(const std::vector<CertifiedPair>& certified) {
  Criterion c{7, "Kodaira I_r* (r>=1, c in {2,4}) at 2 and I_1 at m"};
  for (const auto& cp : certified) {
    bool seen2 = false, seenm = false;
    for (const auto& ld : cp.cert.local_data) {
      if (ld.p == 2) {
        seen2 = true;
        if (!(ld.kodaira.type == KodairaSymbol::Type::Istar &&
              ld.kodaira.n >= 1 && (ld.tamagawa == 2 || ld.tamagawa == 4)))
          c.fail("p=2 fiber wrong at (" + cp.pair.m().get_str() + ", " +
                 cp.pair.n().get_str() + "): " + ld.kodaira.str());
      }
      if (ld.p == cp.pair.m()) {
        seenm = true;
        if (!(ld.kodaira == KodairaSymbol{KodairaSymbol::Type::I, 1} &&
              ld.conductor_exponent == 1))
          c.fail("p=m fiber wrong at (" + cp.pair.m().get_str() + ", " +
                 cp.pair.n().get_str() + "): " + ld.kodaira.str());
      }
    }
    if (!seen2 || !seenm) c.fail("local data table incomplete");
  }
  return c;
}

Criterion criterion_j_ledger(const std::vector<CertifiedPair>& certified) {
  Criterion c{8, "j-invariants reduced, invertible, pairwise distinct"};
  std::set<Rat> seen;
  for (const auto& cp : certified) {
    const Rat& j = cp.cert.j;
    Int g;
    mpz_gcd(g.get_mpz_t(), j.get_num().get_mpz_t(), j.get_den().get_mpz_t());
    if (g != 1) c.fail("j not in lowest terms");
    Int expected_den = Int(9) * cp.pair.m() * cp.pair.p25() * cp.pair.p25();
    if (j.get_den() != expected_den)
      c.fail("denominator is not 3^2 m (m+25n^2)^2 at (" +
             cp.pair.m().get_str() + ", " + cp.pair.n().get_str() + ")");
    try {
      if (!(recover_pair(j) == cp.pair)) c.fail("recover_pair does not invert");
    } catch (const std::exception& e) {
      c.fail(std::string("recover_pair threw: ") + e.what());
    }
    if (!seen.insert(j).second) c.fail("duplicate j-invariant");
  }
  return c;
}

// ---- criterion 9: certificate integrity -----------------------------------

// behavioral single-field mutations; each must be rejected
std::vector<std::pair<std::string, json>> mutation_corpus(const json& doc) {
  std::vector<std::pair<std::string, json>> out;
  auto push = [&out](const std::string& name, json copy) {
    out.emplace_back(name, std::move(copy));
  };

  {
    json m = doc;
    m["rank"] = 1;
    push("rank lowered", m);
  }
  {
    json m = doc;
    m["weak_mw"]["order"] = "16";
    push("weak MW order inflated", m);
  }
  {
    json m = doc;
    m["weak_mw"]["kernel_order"] = "1";
    push("kernel order tampered", m);
  }
  {
    json m = doc;
    auto& elems = m["selmer_phi"]["elements"];
    elems.erase(elems.begin());
    push("selmer element removed", m);
  }
  {
    json m = doc;
    auto& exc = m["selmer_phi"]["excluded"];
    exc.erase(exc.begin());
    push("excluded candidate removed", m);
  }
  {
    json m = doc;
    m["selmer_phi"]["elements"][0]["class"] = "7";
    push("selmer class replaced", m);
  }
  {
    json m = doc;
    // move a refuted candidate into the group
    json moved = m["selmer_phi"]["excluded"][0];
    json as_elem;
    as_elem["class"] = moved["class"];
    as_elem["local"] = json::array();
    m["selmer_phi"]["excluded"].erase(0);
    m["selmer_phi"]["elements"].push_back(as_elem);
    push("refuted candidate smuggled into the group", m);
  }
  {
    json m = doc;
    json& pt = m["selmer_phi"]["elements"][0]["point"];
    if (pt.contains("y")) pt["y"] = pt["y"].get<std::string>() + "1";
    push("evidence point coordinate tampered", m);
  }
  {
    json m = doc;
    m["points"]["Q1"]["x"] = "-1";
    push("marked point tampered", m);
  }
  {
    json m = doc;
    m["curves"]["E"]["a"] = "-14817";
    push("curve coefficient tampered", m);
  }
  {
    json m = doc;
    m["curves"]["discriminant"] = "12";
    push("discriminant tampered", m);
  }
  {
    json m = doc;
    m["torsion"]["order"] = "4";
    push("torsion order tampered", m);
  }
  {
    json m = doc;
    m["j_invariant"]["num"] = "16";
    push("j numerator tampered", m);
  }
  {
    json m = doc;
    m["sha2_witnessed_trivial"] = false;
    push("sha flag flipped", m);
  }
  {
    json m = doc;
    m["local_data"][0]["tamagawa"] = "3";
    push("Tamagawa number tampered", m);
  }
  {
    json m = doc;
    m["local_data"][1]["kodaira"] = "II";
    push("Kodaira symbol tampered", m);
  }
  {
    json m = doc;
    auto& primes = m["selmer_phi"]["test_primes"];
    primes.erase(primes.begin());  // drop p = 2
    push("test prime dropped", m);
  }
  {
    json m = doc;
    // claim a refutation at a place where the space is solvable
    m["selmer_phi"]["excluded"][0]["failing_place"] = "5";
    m["selmer_phi"]["excluded"][0]["verdict"]["place"] = "5";
    push("refutation place redirected", m);
  }
  {
    json m = doc;
    m["generators_mod_torsion"][0]["x"] = "0";
    m["generators_mod_torsion"][0]["y"] = "0";
    push("free generator replaced by torsion", m);
  }
  return out;
}

Criterion criterion_certificate_integrity(
    const std::vector<CertifiedPair>& certified) {
  Criterion c{9, "verifier accepts all emitted, rejects all mutations"};
  long accepted = 0;
  for (const auto& cp : certified) {
    VerifyResult res = verify_certificate(cp.cert);
    if (!res.ok)
      c.fail("emitted certificate rejected at (" + cp.pair.m().get_str() +
             ", " + cp.pair.n().get_str() + "): " + res.first_failure);
    else
      ++accepted;
  }

  long rejected = 0, corpus = 0;
  std::vector<std::size_t> sample = {0, certified.size() / 2,
                                     certified.size() - 1};
  for (std::size_t idx : sample) {
    const auto& cp = certified[idx];
    json doc = json::parse(certificate_to_json(cp.cert));
    for (auto& [name, mutated] : mutation_corpus(doc)) {
      ++corpus;
      bool ok;
      try {
        ok = verify_certificate_text(mutated.dump(2)).ok;
      } catch (const CertificateParseError&) {
        ok = false;
      }
      if (ok)
        c.fail("mutation not rejected: " + name + " at (" +
               cp.pair.m().get_str() + ", " + cp.pair.n().get_str() + ")");
      else
        ++rejected;
    }
  }
  if (c.pass)
    c.detail = std::to_string(accepted) + " certificates accepted, " +
               std::to_string(rejected) + "/" + std::to_string(corpus) +
               " mutations rejected";
  return c;
}

}  // namespace

int main() {
  std::vector<Criterion> results;

  results.push_back(criterion_smallest_pair());

  Criterion c2{2,
               "every pair in m <= 1e5, n <= 48 certifies to rank 2 (< 10 s "
               "each)"};
  auto certified = certify_box(c2);
  if (c2.pass) c2.detail = std::to_string(certified.size()) + " pairs";
  results.push_back(c2);

  results.push_back(criterion_selmer_sets(certified));
  results.push_back(criterion_local_oracle());
  results.push_back(criterion_algebraic_suites());
  results.push_back(criterion_congruence_filters(certified));
  results.push_back(criterion_reduction_data(certified));
  results.push_back(criterion_j_ledger(certified));
  results.push_back(criterion_certificate_integrity(certified));

  bool all = true;
  for (const auto& c : results) {
    std::cout << (c.pass ? "[PASS]" : "[FAIL]") << " criterion " << c.id
              << ": " << c.name;
    if (!c.detail.empty()) std::cout << "  (" << c.detail << ")";
    std::cout << "\n";
    all = all && c.pass;
  }
  return all ? 0 : 1;
}
