#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sparsepbn/bounds.hpp"
#include "sparsepbn/core.hpp"

namespace sparsepbn {

// Published decomposition lengths for one benchmark matrix. The two
// matching-pursuit variants from the literature differ on several rows, so
// their lengths are kept as a [lo, hi] range; 0 marks "did not run" (the
// atom count exceeded the feasibility guard).
struct ExpectedLengths {
    int ger = 0;
    int ser1 = 0;
    int ser2 = 0;
    int momp_lo = 0;
    int momp_hi = 0;
};

struct CorpusEntry {
    std::string name;          // e.g. "P2", "PB4:0.03"
    std::optional<Rat> d;      // perturbation parameter where applicable
    Tpm tpm;                   // normalized to scale 1
    ExpectedLengths expected;
    std::optional<long> certified_bound;
    std::string certified_citation;
    long ger_z = 10;           // score base used in the published runs
    double momp_tolerance = 1e-7;
};

// Benchmark names in table order: P1..P5, PA1..PA3, PB1, PB3,
// PB4:{0.01..0.04}, PB6:{0.01..0.04}.
const std::vector<std::string>& corpus_names();

// Lookup by name; parametric families accept "NAME:d" or the d argument.
// Throws ContractError for unknown names or untested d values.
CorpusEntry corpus(const std::string& name,
                   std::optional<Rat> d = std::nullopt);

std::vector<CorpusEntry> full_corpus();

struct RunResult {
    std::string entry;
    std::string algo;
    long z = 0;
    double tolerance = 0.0;
    long length = 0;
    bool verified = false;
    long lower = 0;
    std::string note;  // "ITR" on guard rejection, error text on failure
    double seconds = 0.0;
};

// Run the selected algorithms ("ger", "ser1", "ser2", "momp") on the given
// entries. GER uses each entry's published z; matching pursuit uses each
// entry's published tolerance unless tolerance_override >= 0.
std::vector<RunResult> run_bench(const std::vector<CorpusEntry>& entries,
                                 const std::vector<std::string>& algos,
                                 double tolerance_override = -1.0);

std::string bench_table(const std::vector<RunResult>& results);

}  // namespace sparsepbn
