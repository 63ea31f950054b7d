#pragma once

#include <cstdint>
#include <vector>

#include "sparsepbn/core.hpp"

namespace sparsepbn {

// The implicit dictionary B_n(P): per-column positive-row lists and a
// mixed-radix codec between atom indices in [0, N) and target tuples. The
// last column is the least-significant digit. Atoms are never materialized.
struct AtomSpace {
    int side = 0;
    std::vector<std::vector<int>> rows;  // D_j(P) per column, ascending, 1-based
    Int N;                               // product of |D_j(P)|

    static AtomSpace build(const Tpm& P);

    std::vector<int> decode(std::uint64_t index) const;       // -> targets
    std::uint64_t encode(const std::vector<int>& targets) const;
};

// Matching-pursuit results are floating point and intentionally kept apart
// from the exact Decomposition type.
struct MompResult {
    std::vector<BnMatrix> matrices;
    std::vector<double> coefficients;
    double error = 0.0;
    int iterations = 0;
    const bool approximate = true;
};

// Index of an atom maximizing vec(A_j) . vec(r), computed per column (ties:
// smallest row). r is row-major side*side.
std::uint64_t streaming_argmax(const AtomSpace& space,
                               const std::vector<double>& residual);

// Minimize 0.5*||b - A_S y||^2 over the probability simplex supported on S
// (KKT tolerance 1e-9). S holds distinct atom indices; returns one
// coefficient per element of S.
std::vector<double> restricted_simplex_ls(const AtomSpace& space,
                                          const std::vector<double>& b,
                                          const std::vector<std::uint64_t>& S);

// Streaming two-term error: sqrt(sum over support of (v.r - lambda)^2) +
// sqrt(sum over non-support of max(w.r - lambda, 0)^2), lambda = sum over the
// support of x_l*(v_l.r); one pass over all N atom indices, one atom at a
// time. S must be sorted ascending and aligned with x.
double momp_error(const AtomSpace& space, const std::vector<std::uint64_t>& S,
                  const std::vector<double>& x,
                  const std::vector<double>& residual);

// Modified orthogonal matching pursuit over the normalized matrix P/r0.
// Throws InfeasibleSizeError when N exceeds guard. Coefficients below 1e-12
// are dropped from the result.
MompResult momp_decompose(const Tpm& P, double tolerance = 1e-7,
                          double guard = 1e9);

}  // namespace sparsepbn
