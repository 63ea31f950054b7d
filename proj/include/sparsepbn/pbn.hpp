#pragma once

#include <string>
#include <utility>
#include <vector>

#include "sparsepbn/core.hpp"

namespace sparsepbn {

// One bit per global state for each node. Global state j (1-based)
// corresponds to the bit string of j-1 with node 1 the most significant bit.
struct TruthTable {
    int n = 0;
    std::vector<std::vector<int>> outputs;  // n rows of 2^n bits
};

// A Boolean function of one node, as its truth column (2^n bits).
using TruthColumn = std::vector<int>;

struct Pbn {
    int n = 0;
    // functions[i] = the distinct truth columns of node i+1, in first
    // appearance order.
    std::vector<std::vector<TruthColumn>> functions;
    // pmf over function-index tuples (1-based indices into functions[i]).
    std::vector<std::pair<std::vector<int>, Rat>> pmf;
};

// Side must be a power of two (ContractError otherwise).
TruthTable bn_to_truth_table(const BnMatrix& A);
BnMatrix truth_table_to_bn(const TruthTable& T);

// Build the PBN realizing D: per node, deduplicate truth columns across the
// decomposition's matrices (first-appearance order); each term maps to a
// function-index tuple and pmf(tuple) sums the normalized weights. D must
// verify against P (ContractError otherwise).
Pbn assemble_pbn(const Decomposition& D, const Tpm& P);

// Independent selection: pmf is the product distribution of the per-node
// probabilities c[i] (each summing to 1).
Pbn independent_pbn(const std::vector<std::vector<TruthColumn>>& functions,
                    const std::vector<std::vector<Rat>>& c);

// Exact transition matrix of the PBN (scale 1).
Tpm pbn_to_tpm(const Pbn& B);

// Plain-text truth table (one row per global state) plus the pmf.
std::string pbn_to_text(const Pbn& B);

// JSON with states ascending, bits 0/1, pmf masses as fraction strings.
std::string pbn_to_json(const Pbn& B);

}  // namespace sparsepbn
