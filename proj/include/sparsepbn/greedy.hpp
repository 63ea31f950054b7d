#pragma once

#include <set>
#include <utility>
#include <vector>

#include "sparsepbn/core.hpp"

namespace sparsepbn {

// Score base for the greedy entry-removal objective. Restricted to integers
// >= 2 so scores stay exact big integers.
struct ScoreParams {
    long z = 10;
};

struct TraceIteration {
    Int weight;           // integer weight (multiple of r0/p)
    BnMatrix matrix;
    long npos_before = 0;
    long npos_after = 0;
    std::vector<std::pair<Int, Int>> candidates;  // (value v, score of (v, GERESA(R,v)))
};

struct GreedyTrace {
    std::vector<TraceIteration> iterations;
};

// Columns of C containing the value b (1-based indices).
std::set<int> col_indices(const Int& b, const IntMatrix& C);

// Rows i with v[i] == b / v[i] > b. v is 1-based conceptually: returned
// indices are 1-based positions into the vector.
std::set<int> occurrences(const Int& b, const std::vector<Int>& v);
std::set<int> larger(const Int& b, const std::vector<Int>& v);

// Number of columns of C containing b.
int column_frequency(const Int& b, const IntMatrix& C);

// Sum over distinct positive entry values c of z^(column frequency of c).
Int f_score(const IntMatrix& R, const ScoreParams& params);

// One step of each simple entry-removal rule. R must be nonzero with all
// columns sharing the same positive sum; throws ContractError otherwise.
//
// ser1: weight = globally smallest positive entry (ties: smallest column,
//       then smallest row); that entry's row is taken for its column and
//       every other column takes its largest positive entry (ties: smallest
//       row).
// ser2: every column takes its largest positive entry (ties: smallest row);
//       weight = minimum of the chosen entries.
std::pair<Int, BnMatrix> ser1_step(const IntMatrix& R);
std::pair<Int, BnMatrix> ser2_step(const IntMatrix& R);

Decomposition ser1_decompose(const Tpm& P);
Decomposition ser2_decompose(const Tpm& P);

// Entry-selection subroutine of the greedy entry-removal algorithm. v must
// be a positive entry of R with v <= min over columns of the column max.
// Returns <p_1..p_m> with R(p_j,j) >= v everywhere and equality somewhere.
BnMatrix geresa(const IntMatrix& R, const Int& v);

// Candidate weights for one greedy iteration: with B = min over columns of
// the column max, the distinct positive values <= B attaining the maximum
// column frequency among positive values <= B; ascending.
std::vector<Int> ger_candidates(const IntMatrix& R);

// Greedy entry removal: per iteration scores every candidate/GERESA pair by
// f_score(R - v*A, z) and keeps the best, ties broken by larger v.
std::pair<Decomposition, GreedyTrace> ger_decompose(const Tpm& P,
                                                    const ScoreParams& params = {});

}  // namespace sparsepbn
