// Micro benchmarks for the evaluators, the typechecker and the CPS translation.
#include <string_view>

#include <benchmark/benchmark.h>

#include "lambdad/cps.hpp"
#include "lambdad/machine.hpp"
#include "lambdad/oracle.hpp"
#include "lambdad/parser.hpp"
#include "lambdad/testing/acceptance.hpp"
#include "lambdad/typechecker.hpp"

namespace {

using namespace lambdad;

const Term& shift_golden() {
  static const Term t = parse_term(std::string_view(testing::kShiftGolden));
  return t;
}

const Term& atm() {
  static const Term t = parse_term(std::string_view(testing::kAtmProgram));
  return t;
}

const std::vector<testing::CorpusEntry>& corpus() {
  static const auto c = testing::typed_corpus(11, 64, testing::Fragment::All);
  return c;
}

void BM_MachineGolden(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(machine::run(shift_golden(), {}));
}
BENCHMARK(BM_MachineGolden);

void BM_OracleGolden(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(oracle::normalize(shift_golden(), {}));
}
BENCHMARK(BM_OracleGolden);

void BM_ElaborateAtm(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(elaborate(atm()));
}
BENCHMARK(BM_ElaborateAtm);

void BM_MachineCorpus(benchmark::State& st) {
  for (auto _ : st) {
    for (const auto& c : corpus()) benchmark::DoNotOptimize(machine::run(c.term, {}));
  }
  st.SetItemsProcessed(st.iterations() * static_cast<std::int64_t>(corpus().size()));
}
BENCHMARK(BM_MachineCorpus);

void BM_OracleCorpus(benchmark::State& st) {
  for (auto _ : st) {
    for (const auto& c : corpus()) benchmark::DoNotOptimize(oracle::normalize(c.term, {}));
  }
  st.SetItemsProcessed(st.iterations() * static_cast<std::int64_t>(corpus().size()));
}
BENCHMARK(BM_OracleCorpus);

void BM_ElaborateCorpus(benchmark::State& st) {
  for (auto _ : st) {
    for (const auto& c : corpus()) benchmark::DoNotOptimize(elaborate(c.term));
  }
  st.SetItemsProcessed(st.iterations() * static_cast<std::int64_t>(corpus().size()));
}
BENCHMARK(BM_ElaborateCorpus);

void BM_CpsCorpus(benchmark::State& st) {
  for (auto _ : st) {
    for (const auto& c : corpus()) {
      benchmark::DoNotOptimize(ctype_check(cps_term(c.derivation), cps_judgment_type(c.derivation.judgment)));
    }
  }
  st.SetItemsProcessed(st.iterations() * static_cast<std::int64_t>(corpus().size()));
}
BENCHMARK(BM_CpsCorpus);

}  // namespace
BENCHMARK_MAIN();
