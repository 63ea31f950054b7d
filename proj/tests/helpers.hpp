#pragma once

// Shared fixtures: the small worked-example matrices used across the tests.

#include <string>
#include <vector>

#include "sparsepbn/core.hpp"
#include "sparsepbn/io.hpp"

namespace fixtures {

using sparsepbn::Int;
using sparsepbn::IntMatrix;
using sparsepbn::Rat;
using sparsepbn::Tpm;

// 4x4, column sum 10, already integral (p = 1).
inline Tpm small4() {
    return sparsepbn::parse_tpm(
        "1 5 6 0\n"
        "4 0 2 0\n"
        "5 2 0 10\n"
        "0 3 2 0\n");
}

// 8x8, column sum 61.
inline Tpm wide8() {
    return sparsepbn::parse_tpm(
        "32  0  2  0  0  4  0  0\n"
        " 0  0  0 36  4 13  0  0\n"
        " 0  0  9  0  0  0 61  0\n"
        " 0 15  0  0  0  0  0  0\n"
        " 0 15 30  0  0 13  0  0\n"
        "29 31 20  0 25 29  0  6\n"
        " 0  0  0  0 32  0  0  0\n"
        " 0  0  0 25  0  2  0 55\n");
}

inline IntMatrix int_matrix(const std::vector<std::vector<int>>& rows) {
    IntMatrix M(static_cast<int>(rows.size()));
    for (size_t i = 0; i < rows.size(); ++i)
        for (size_t j = 0; j < rows.size(); ++j)
            M.at(static_cast<int>(i) + 1, static_cast<int>(j) + 1) =
                rows[i][j];
    return M;
}

// The residue-style matrix used for the selection-helper examples.
inline IntMatrix helper_matrix() {
    return int_matrix({{1, 0, 0, 3}, {2, 5, 3, 0}, {3, 0, 3, 0}, {0, 1, 0, 3}});
}

// The pair of near-identical score examples (they differ in column 3 only).
inline IntMatrix score_a() {
    return int_matrix(
        {{45, 9, 85, 1}, {81, 52, 16, 36}, {0, 65, 26, 94}, {5, 5, 4, 0}});
}

inline IntMatrix score_b() {
    return int_matrix(
        {{45, 9, 84, 1}, {81, 52, 6, 36}, {0, 65, 36, 94}, {5, 5, 5, 0}});
}

inline sparsepbn::BnMatrix bn(std::vector<int> targets) {
    sparsepbn::BnMatrix A;
    A.targets = std::move(targets);
    return A;
}

}  // namespace fixtures
