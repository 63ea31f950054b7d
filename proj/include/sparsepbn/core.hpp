#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "sparsepbn/rational.hpp"

namespace sparsepbn {

// Input fails TPM validation (negative entry, unequal column sums, ...).
struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A precondition of an operation was violated by the caller.
struct ContractError : std::logic_error {
    using std::logic_error::logic_error;
};

// Instance too large for the requested operation; carries the offending size.
struct InfeasibleSizeError : std::runtime_error {
    Int size;
    InfeasibleSizeError(const std::string& what, Int n)
        : std::runtime_error(what), size(std::move(n)) {}
};

// A BN matrix <k_1,...,k_m>: column j has its single 1 at row targets[j-1].
// Targets are 1-based to match the usual angle-bracket notation.
struct BnMatrix {
    std::vector<int> targets;

    int side() const { return static_cast<int>(targets.size()); }
    bool operator==(const BnMatrix& o) const = default;
    auto operator<=>(const BnMatrix& o) const = default;
    std::string to_string() const;  // "<k1,k2,...>"
};

// Dense square matrix of non-negative big integers with 1-based accessors.
// Used for the scaled TPM and for the residue matrices of the greedy
// algorithms.
struct IntMatrix {
    int side = 0;
    std::vector<Int> e;  // row-major, side*side

    IntMatrix() = default;
    explicit IntMatrix(int s) : side(s), e(static_cast<size_t>(s) * s) {}

    Int& at(int i, int j) { return e[static_cast<size_t>(i - 1) * side + (j - 1)]; }
    const Int& at(int i, int j) const {
        return e[static_cast<size_t>(i - 1) * side + (j - 1)];
    }
    bool is_zero() const;
    bool operator==(const IntMatrix& o) const = default;
};

// Number of strictly positive entries (N+ in the usual notation).
long positive_count(const IntMatrix& M);

// An exact-rational 2^n x 2^n matrix whose columns all sum to the scale r0.
// Stored as the integer matrix p*P together with p, the least common
// denominator of the entries; all algorithms run on the integer form, and
// the rational entry (i,j) is entries.at(i,j) / p.
class Tpm {
  public:
    // rows[i][j] = P(i+1, j+1). Throws ValidationError unless the matrix is
    // square with side a power of two, entries non-negative and every column
    // summing to the same positive value (which becomes r0).
    static Tpm from_rationals(const std::vector<std::vector<Rat>>& rows);

    int side() const { return entries_.side; }
    int nodes() const { return n_; }
    const Rat& scale() const { return r0_; }   // r0
    const Int& denom() const { return p_; }    // p
    const IntMatrix& entries() const { return entries_; }
    const Int& entry(int i, int j) const { return entries_.at(i, j); }
    Rat value(int i, int j) const;  // exact rational P(i,j)

    // Same matrix reported at a different scale (entries multiplied by
    // new_r0/r0). Lengths and all algorithm choices are scale-invariant.
    Tpm rescaled(const Rat& new_r0) const;

    std::vector<std::vector<Rat>> rationals() const;

    // Equality of the normalized matrices P/r0 (scale ignored).
    bool same_normalized(const Tpm& o) const;

  private:
    int n_ = 0;
    Rat r0_;
    Int p_;
    IntMatrix entries_;
};

// Positive weights and pairwise-distinct BN matrices with sum(w_i A_i) = P
// and sum(w_i) = scale.
struct Decomposition {
    std::vector<Rat> weights;
    std::vector<BnMatrix> matrices;
    Rat scale;

    size_t length() const { return matrices.size(); }
};

struct VerificationReport {
    bool weights_positive = false;
    bool weights_sum_to_scale = false;
    bool matrices_distinct = false;
    bool matrices_in_support = false;
    bool reconstructs = false;
    bool pass = false;
};

// True iff every column's target row is a positive entry of P (A lies in
// B_n(P)). Throws ContractError on side mismatch.
bool in_support(const BnMatrix& A, const Tpm& P);

VerificationReport verify_decomposition(const Decomposition& D, const Tpm& P);

// diag(P, P), same scale.
Tpm block_double(const Tpm& P);

// Lift a decomposition of P to one of diag(P,P) with the same length and
// weights: each matrix <k_1..k_m> becomes <k_1..k_m, m+k_1..m+k_m>.
// Throws ContractError unless D verifies against P.
Decomposition lift_block_double(const Decomposition& D, const Tpm& P);

}  // namespace sparsepbn
