#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <vector>

#include "sparsepbn/core.hpp"

namespace sparsepbn {

enum class BoundKind {
    None,
    MaxColumn,         // max over columns of the positive-entry count
    NotPartitionable,  // no partition of column i's entries with cell sums = column j
    NotPermutation,    // equal-count special case of the above
    DisjointSupport,   // equal-count columns with disjoint positive value sets
    BlockDoubling,     // bound transferred from the half-size diagonal block
    Certified,         // shipped case-analysis bound with citation
};

std::string bound_kind_name(BoundKind k);

struct BoundWitness {
    BoundKind kind = BoundKind::None;
    std::vector<int> columns;  // involved column indices (1-based)
    long value = 1;
    std::string citation;      // for Certified / BlockDoubling entries
};

struct BoundReport {
    long value = 1;
    BoundWitness witness;
};

struct UpperBounds {
    Int entry_removal;  // N+(P) - 2^n + 1
    // For the next two, q is the least common denominator of P/r0, a* the
    // smallest positive entry of P/r0 and a^ the min over columns of the
    // column max; the bound is (1 - a) q + 1.
    Int ser1_ger;
    Int ser2;
};

// Partition of the decomposition indices [K] induced by one column: cell l
// collects the terms whose matrix targets the l-th positive row of that
// column. Cell weight sums equal the column's entries.
struct ColumnPartition {
    int column = 0;
    std::vector<int> rows;                // positive rows of the column, ascending
    std::vector<std::vector<int>> cells;  // 1-based term indices per row
};

struct CertifiedEntry {
    std::string name;
    Tpm tpm;  // matched against inputs by normalized equality
    long bound;
    std::string citation;
};
using Registry = std::vector<CertifiedEntry>;

// The shipped case-analysis bounds (matched by normalized matrix equality).
const Registry& certified_registry();

BoundWitness max_column_bound(const Tpm& P);

// Partition the indices of multiset a into |b| cells whose sums are the
// entries of b, or report that none exists. Both multisets must share the
// same total and |a| >= |b| (ContractError otherwise). Exhaustive
// backtracking, largest elements placed first.
std::optional<std::vector<std::vector<int>>> partitionable(
    const std::vector<Rat>& a, const std::vector<Rat>& b);

BoundWitness not_partitionable_bound(const Tpm& P);
BoundWitness disjoint_support_bound(const Tpm& P);

// If Q = diag(P,P) exactly, return P (bounds transfer both ways).
std::optional<Tpm> block_doubling_reduce(const Tpm& Q);

// True iff the l-th positive entry (1-based, rows ascending) of column i
// strictly exceeds every entry of column j; such a cell can never be a
// singleton in any decomposition.
bool forced_nonsingleton(const Tpm& P, int i, int l, int j);

// Maximum of all applicable lower-bound rules, recursing through block
// doubling and consulting the registry.
BoundReport lower_bound(const Tpm& P, const Registry& registry = {});

UpperBounds upper_bounds(const Tpm& P);

enum class OracleStatus { Found, NotFound, Timeout };

struct OracleResult {
    OracleStatus status = OracleStatus::NotFound;
    long k = 0;  // minimum length when status == Found
};

// Brute-force minimum length: smallest k <= k_max such that some k-subset of
// B_n(P) admits an exact non-negative solution to sum(x_i A_i) = P. Subsets
// are enumerated in lexicographic order of target tuples; feasibility is
// decided by an exact phase-one simplex with Bland's rule. Throws
// InfeasibleSizeError when |B_n(P)| exceeds cap.
OracleResult exact_min_length(const Tpm& P, long k_max,
                              std::chrono::milliseconds budget,
                              long cap = 64);

// Requires verify_decomposition(D, P).pass (ContractError otherwise).
ColumnPartition extract_column_partition(const Decomposition& D, const Tpm& P,
                                         int j);

}  // namespace sparsepbn
