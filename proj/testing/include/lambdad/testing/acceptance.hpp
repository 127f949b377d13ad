#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "lambdad/bridges.hpp"
#include "lambdad/typechecker.hpp"
#include "lambdad/testing/generate.hpp"
#include "lambdad/testing/reference.hpp"

namespace lambdad::testing {

inline constexpr const char* kShiftGolden = "reset { (shift k -> k (k 2)) + 3 } + 4";
inline constexpr const char* kControlGolden = "reset { (control k1 -> 2 + k1 1) + (control k2 -> 4 + k2 3) }";
inline constexpr const char* kAtmProgram =
    "reset { (fun x -> is0 (shift k @ { k : (Nat -> Bool) <•,•> Bool <•,•> Bool } -> x + 1)) 1 }";

struct CorpusEntry {
  Term term;
  Derivation derivation;  // goal Program
};

// Distinct closed terms of the fragment that elaborate at τ ⟨•,•⟩ τ ⟨•,•⟩ τ.
// When `all_ops` is set, generation continues until every operator of the
// fragment occurs somewhere in the corpus.
std::vector<CorpusEntry> typed_corpus(std::uint64_t seed, std::size_t n, Fragment f, int max_depth = 6,
                                      bool all_ops = true);

// Distinct closed terms of the fragment, typable or not.
std::vector<Term> raw_corpus(std::uint64_t seed, std::size_t n, Fragment f, int max_depth = 6);

// The four evaluators on one corpus entry. An evaluator that throws reports
// "error: <what>".
struct Differential {
  Observation machine, oracle, closure, cps;
  std::size_t machine_steps = 0;
  bool out_of_fuel = false;
  bool agree() const { return machine == oracle && oracle == closure && closure == cps; }
};

Differential differential(const CorpusEntry& c, std::size_t fuel = 1'000'000);

// One direction of one typability transport.
struct Transport {
  std::string name;
  std::size_t corpus = 0;      // terms offered
  std::size_t checked = 0;     // terms the source system accepted and the translation covered
  std::size_t out_of_image = 0;  // source judgments outside the translation's domain
  std::vector<std::string> counterexamples;
  bool pass() const { return counterexamples.empty() && checked > 0; }
};

struct TransportConfig {
  std::uint64_t seed = 7;
  std::size_t size = 200;  // accepted terms per corpus
};

std::vector<Transport> run_transports(const TransportConfig& cfg);

// Source options and shared fragment used when transporting from `from` to `to`.
struct TransportSetup {
  Fragment fragment;
  bridge::CheckOptions source_opts, target_opts;
};
TransportSetup transport_setup(bridge::System from, bridge::System to);

// Per-term verdicts: "typable", "untypable", "outside image" or "error: ...".
struct TransportRow {
  std::string term, source, target;
};
std::vector<TransportRow> transport_table(bridge::System from, bridge::System to,
                                          const std::optional<bridge::BType>& gamma, std::size_t n,
                                          std::uint64_t seed);

struct CriterionResult {
  int id;
  std::string name;
  bool pass;
  std::string detail;
  double seconds;
};

struct AcceptanceConfig {
  std::uint64_t seed = 20241019;
  std::size_t corpus_size = 500;
  std::size_t fragment_size = 200;
  std::size_t lemma_types = 10000;
  std::size_t fuel = 1'000'000;
  std::string archive_dir;  // counterexamples are written here when non-empty
  std::function<void(const std::string&)> log;
};

std::vector<CriterionResult> run_acceptance(const AcceptanceConfig& cfg);

// "PASS  3  name  detail" lines.
std::string format(const CriterionResult& r);

}  // namespace lambdad::testing
