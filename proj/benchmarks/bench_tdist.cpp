#include <benchmark/benchmark.h>

#include <random>
#include <string>
#include <vector>

#include "tdist/fst_format.hpp"
#include "tdist/fvdist.hpp"
#include "tdist/kcheck.hpp"
#include "tdist/loopconj.hpp"
#include "tdist/metrics.hpp"
#include "tdist/nfa.hpp"
#include "tdist/reldist.hpp"

namespace {

using namespace tdist;

std::string random_word(std::mt19937& rng, std::size_t len) {
  std::string w;
  for (std::size_t i = 0; i < len; ++i) w += (rng() & 1) ? 'a' : 'b';
  return w;
}

std::vector<Transducer> load(const std::string& doc) {
  std::vector<Transducer> out;
  for (const MachineDesc& d : parse_fst(doc).machines)
    out.push_back(build_machine(d));
  return out;
}

std::string rep(const std::string& name, const std::string& out) {
  return "fst " + name +
         "\ninputs a b\noutputs a b\nstate q0 initial final \"\"\n"
         "q0 q0 a \"" +
         out + "\"\nq0 q0 b \"" + out + "\"\nend\n";
}

void BM_EditDistance(benchmark::State& state) {
  std::mt19937 rng(1);
  std::string u = random_word(rng, (std::size_t)state.range(0));
  std::string v = random_word(rng, (std::size_t)state.range(0));
  Metric m = static_cast<Metric>(state.range(1));
  for (auto _ : state)
    benchmark::DoNotOptimize(edit_distance(u, v, m));
}
BENCHMARK(BM_EditDistance)
    ->Args({64, 0})
    ->Args({256, 0})
    ->Args({256, 1})
    ->Args({256, 2});

void BM_ConjugacyWitnesses(benchmark::State& state) {
  std::string u, v;
  for (int i = 0; i < 40; ++i) {
    u += "ab";
    v += "ba";
  }
  for (auto _ : state)
    benchmark::DoNotOptimize(conjugacy_witnesses(u, v, 400));
}
BENCHMARK(BM_ConjugacyWitnesses);

void BM_DeterminizeEqual(benchmark::State& state) {
  // two unions with the same domain, built once per iteration batch
  auto left = load(rep("x", "ab") + "\n" + rep("y", "ba"));
  auto right = load(rep("x", "ab"));
  Nfa a = domain_nfa(left[0]);
  Nfa b = domain_nfa(right[0]);
  for (auto _ : state)
    benchmark::DoNotOptimize(language_equal(a, b));
}
BENCHMARK(BM_DeterminizeEqual);

void BM_LoopsConjugate(benchmark::State& state) {
  auto left = load(rep("x", "ab") + "\n" + rep("y", "ba"));
  auto right = load(rep("x", "ab"));
  SyncProduct sp = sync_product(left, right);
  for (auto _ : state)
    benchmark::DoNotOptimize(loops_conjugate(sp.machine, 1));
}
BENCHMARK(BM_LoopsConjugate);

void BM_KBounded(benchmark::State& state) {
  auto left = load(rep("x", "ab") + "\n" + rep("y", "ba"));
  auto right = load(rep("x", "ab"));
  SyncProduct sp = sync_product(left, right);
  ValidTapes vt;
  for (const auto& [q, fin] : sp.machine.finals) {
    std::vector<int> tapes;
    for (int i = 1; i < sp.machine.tape_count; ++i)
      if (sp.component_final[q][i]) tapes.push_back(i);
    vt[q] = tapes;
  }
  long long k = state.range(0);
  for (auto _ : state)
    benchmark::DoNotOptimize(k_bounded(sp.machine, vt, k, Metric::Lev));
}
BENCHMARK(BM_KBounded)->Arg(1)->Arg(2)->Arg(4);

void BM_FiniteValuedDistance(benchmark::State& state) {
  auto left = load(rep("x", "ab") + "\n" + rep("y", "ba"));
  auto right = load(rep("x", "ab"));
  for (auto _ : state)
    benchmark::DoNotOptimize(finite_valued_distance(left, right, Metric::Lev));
}
BENCHMARK(BM_FiniteValuedDistance);

}  // namespace

BENCHMARK_MAIN();
