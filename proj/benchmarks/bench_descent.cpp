// Microbenchmarks for the throughput-relevant kernels: the pair sieve, the
// p-adic solvability sweeps (fast accept vs. full refutation), one Selmer
// group, the whole certificate pipeline and its verification.

#include <benchmark/benchmark.h>

#include "twodescent/certificate.hpp"

using namespace twodescent;

namespace {

const FamilyPair& big_pair() {
  static FamilyPair p{Int(98867), Int(48)};
  return p;
}

void BM_search_box(benchmark::State& state) {
  for (auto _ : state) {
    auto pairs = search_pairs({Int(state.range(0)), Int(48)});
    benchmark::DoNotOptimize(pairs);
  }
}

void BM_qp_member_accept(benchmark::State& state) {
  // a locally solvable space at the largest bad prime: the sweep exits on
  // the first quadratic-residue value
  FamilyCurves F(big_pair());
  QuarticModel space =
      descent_space(SquareClass::from_squarefree(-F.pair().m()), F.Eprime());
  const Int q = F.pair().p25();
  for (auto _ : state) {
    auto v = has_qp_point(space, q);
    benchmark::DoNotOptimize(v);
  }
}

void BM_qp_full_refutation(benchmark::State& state) {
  // a non-residue class: the sweep must settle every residue mod q
  FamilyCurves F(big_pair());
  QuarticModel space =
      descent_space(SquareClass::from_squarefree(Int(-1)), F.Eprime());
  const Int q = F.pair().p25();
  for (auto _ : state) {
    auto v = has_qp_point(space, q);
    benchmark::DoNotOptimize(v);
  }
}

void BM_selmer_group(benchmark::State& state) {
  FamilyCurves F(big_pair());
  for (auto _ : state) {
    auto sel = selmer_group(F, IsogenyTag::Phi);
    benchmark::DoNotOptimize(sel);
  }
}

void BM_rank_certificate(benchmark::State& state) {
  for (auto _ : state) {
    auto cert = rank_certificate(big_pair());
    benchmark::DoNotOptimize(cert);
  }
}

void BM_verify_certificate(benchmark::State& state) {
  RankCertificate cert = rank_certificate(big_pair());
  for (auto _ : state) {
    auto res = verify_certificate(cert);
    benchmark::DoNotOptimize(res);
  }
}

void BM_tate_at_two(benchmark::State& state) {
  FamilyCurves F(big_pair());
  for (auto _ : state) {
    auto ld = tate_local_data(F, Int(2));
    benchmark::DoNotOptimize(ld);
  }
}

}  // namespace

BENCHMARK(BM_search_box)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_qp_member_accept);
BENCHMARK(BM_qp_full_refutation)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_selmer_group)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_rank_certificate)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_verify_certificate)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_tate_at_two);

BENCHMARK_MAIN();
