#include "sparsepbn/greedy.hpp"

#include <algorithm>
#include <map>

namespace sparsepbn {

namespace {

// Residue matrices must stay non-negative with equal column sums; the
// algorithms assume this invariant rather than re-checking it every step.
void require_nonzero(const IntMatrix& R) {
    if (R.side == 0 || R.is_zero()) throw ContractError("zero residue");
}

// Row of the largest positive entry of column j (smallest row on ties).
int argmax_row(const IntMatrix& R, int j) {
    int best_row = 0;
    const Int* best = nullptr;
    for (int i = 1; i <= R.side; ++i) {
        const Int& x = R.at(i, j);
        if (x > 0 && (!best || x > *best)) {
            best = &x;
            best_row = i;
        }
    }
    if (best_row == 0) throw ContractError("column without positive entries");
    return best_row;
}

// min over columns of the column max.
Int column_min_max(const IntMatrix& R) {
    Int B;
    for (int j = 1; j <= R.side; ++j) {
        const Int& m = R.at(argmax_row(R, j), j);
        if (j == 1 || m < B) B = m;
    }
    return B;
}

// Map distinct positive value -> number of columns containing it.
std::map<Int, int> column_frequencies(const IntMatrix& R) {
    std::map<Int, int> freq;
    for (int j = 1; j <= R.side; ++j) {
        std::set<Int> seen;
        for (int i = 1; i <= R.side; ++i) {
            const Int& x = R.at(i, j);
            if (x > 0) seen.insert(x);
        }
        for (const Int& x : seen) ++freq[x];
    }
    return freq;
}

IntMatrix subtract(const IntMatrix& R, const Int& w, const BnMatrix& A) {
    IntMatrix out = R;
    for (int j = 1; j <= R.side; ++j) {
        Int& cell = out.at(A.targets[j - 1], j);
        if (cell < w) throw ContractError("subtraction would go negative");
        cell -= w;
    }
    return out;
}

using StepFn = std::pair<Int, BnMatrix> (*)(const IntMatrix&);

Decomposition run_entry_removal(const Tpm& P, StepFn step) {
    Decomposition D;
    D.scale = P.scale();
    IntMatrix R = P.entries();
    // Weights are found at the integer scale p and reported as w/p.
    const Rat unit = Rat(1) / Rat(P.denom());
    while (!R.is_zero()) {
        auto [w, A] = step(R);
        R = subtract(R, w, A);
        Rat weight = Rat(w) * unit;
        weight.canonicalize();
        D.weights.push_back(weight);
        D.matrices.push_back(std::move(A));
    }
    return D;
}

}  // namespace

std::set<int> col_indices(const Int& b, const IntMatrix& C) {
    std::set<int> out;
    for (int j = 1; j <= C.side; ++j)
        for (int i = 1; i <= C.side; ++i)
            if (C.at(i, j) == b) {
                out.insert(j);
                break;
            }
    return out;
}

std::set<int> occurrences(const Int& b, const std::vector<Int>& v) {
    std::set<int> out;
    for (size_t i = 0; i < v.size(); ++i)
        if (v[i] == b) out.insert(static_cast<int>(i + 1));
    return out;
}

std::set<int> larger(const Int& b, const std::vector<Int>& v) {
    std::set<int> out;
    for (size_t i = 0; i < v.size(); ++i)
        if (v[i] > b) out.insert(static_cast<int>(i + 1));
    return out;
}

int column_frequency(const Int& b, const IntMatrix& C) {
    return static_cast<int>(col_indices(b, C).size());
}

Int f_score(const IntMatrix& R, const ScoreParams& params) {
    if (params.z < 2) throw ContractError("score base must be >= 2");
    Int score = 0;
    Int zpow;
    for (const auto& [value, freq] : column_frequencies(R)) {
        mpz_ui_pow_ui(zpow.get_mpz_t(), static_cast<unsigned long>(params.z),
                      static_cast<unsigned long>(freq));
        score += zpow;
    }
    return score;
}

std::pair<Int, BnMatrix> ser1_step(const IntMatrix& R) {
    require_nonzero(R);
    // Globally smallest positive entry; scanning columns then rows keeps the
    // first hit, i.e. smallest column then smallest row on ties.
    int min_row = 0, min_col = 0;
    const Int* min_val = nullptr;
    for (int j = 1; j <= R.side; ++j)
        for (int i = 1; i <= R.side; ++i) {
            const Int& x = R.at(i, j);
            if (x > 0 && (!min_val || x < *min_val)) {
                min_val = &x;
                min_row = i;
                min_col = j;
            }
        }
    BnMatrix A;
    A.targets.resize(R.side);
    for (int j = 1; j <= R.side; ++j)
        A.targets[j - 1] = (j == min_col) ? min_row : argmax_row(R, j);
    return {*min_val, std::move(A)};
}

std::pair<Int, BnMatrix> ser2_step(const IntMatrix& R) {
    require_nonzero(R);
    BnMatrix A;
    A.targets.resize(R.side);
    Int w;
    for (int j = 1; j <= R.side; ++j) {
        int i = argmax_row(R, j);
        A.targets[j - 1] = i;
        if (j == 1 || R.at(i, j) < w) w = R.at(i, j);
    }
    return {w, std::move(A)};
}

Decomposition ser1_decompose(const Tpm& P) {
    return run_entry_removal(P, &ser1_step);
}

Decomposition ser2_decompose(const Tpm& P) {
    return run_entry_removal(P, &ser2_step);
}

BnMatrix geresa(const IntMatrix& R, const Int& v) {
    require_nonzero(R);
    if (v <= 0) throw ContractError("v must be positive");
    if (v > column_min_max(R))
        throw ContractError("v exceeds the minimum column maximum");

    const std::set<int> with_v = col_indices(v, R);
    if (with_v.empty()) throw ContractError("v is not an entry of R");

    IntMatrix copy = R;
    std::vector<int> selected;  // columns already assigned
    std::vector<int> p(R.side + 1, 0);

    // Columns containing v take it directly (smallest such row).
    for (int j : with_v) {
        for (int i = 1; i <= R.side; ++i)
            if (R.at(i, j) == v) {
                p[j] = i;
                break;
            }
        copy.at(p[j], j) = 0;
        selected.push_back(j);
    }

    // Remaining columns: among rows with R(i,j) > v, prefer the row whose
    // leftover R(i,j)-v appears in the most already-assigned columns of the
    // working copy; smallest row on ties.
    auto leftover_frequency = [&](const Int& value) {
        int freq = 0;
        for (int jj : selected) {
            for (int i = 1; i <= R.side; ++i)
                if (copy.at(i, jj) == value) {
                    ++freq;
                    break;
                }
        }
        return freq;
    };
    for (int j = 1; j <= R.side; ++j) {
        if (with_v.count(j)) continue;
        int best_row = 0, best_freq = -1;
        for (int i = 1; i <= R.side; ++i) {
            if (R.at(i, j) <= v) continue;
            int freq = leftover_frequency(R.at(i, j) - v);
            if (freq > best_freq) {
                best_freq = freq;
                best_row = i;
            }
        }
        if (best_row == 0) throw ContractError("no row above v in some column");
        p[j] = best_row;
        copy.at(best_row, j) = R.at(best_row, j) - v;
        selected.push_back(j);
    }

    BnMatrix A;
    A.targets.assign(p.begin() + 1, p.end());
    return A;
}

std::vector<Int> ger_candidates(const IntMatrix& R) {
    require_nonzero(R);
    const Int B = column_min_max(R);
    int max_freq = 0;
    auto freq = column_frequencies(R);
    for (const auto& [value, f] : freq)
        if (value <= B) max_freq = std::max(max_freq, f);
    std::vector<Int> out;
    for (const auto& [value, f] : freq)
        if (value <= B && f == max_freq) out.push_back(value);
    return out;  // map iteration is already ascending
}

std::pair<Decomposition, GreedyTrace> ger_decompose(const Tpm& P,
                                                    const ScoreParams& params) {
    if (params.z < 2) throw ContractError("score base must be >= 2");
    Decomposition D;
    GreedyTrace trace;
    D.scale = P.scale();
    IntMatrix R = P.entries();
    const Rat unit = Rat(1) / Rat(P.denom());
    while (!R.is_zero()) {
        TraceIteration it;
        it.npos_before = positive_count(R);

        Int best_v;
        Int best_score = -1;
        BnMatrix best_A;
        IntMatrix best_residue;
        // Ascending candidates + ">=" implements the larger-v tie rule.
        for (const Int& v : ger_candidates(R)) {
            BnMatrix A = geresa(R, v);
            IntMatrix residue = subtract(R, v, A);
            Int score = f_score(residue, params);
            it.candidates.emplace_back(v, score);
            if (score >= best_score) {
                best_score = score;
                best_v = v;
                best_A = std::move(A);
                best_residue = std::move(residue);
            }
        }

        R = std::move(best_residue);
        it.npos_after = positive_count(R);
        it.weight = best_v;
        it.matrix = best_A;
        trace.iterations.push_back(std::move(it));

        Rat weight = Rat(best_v) * unit;
        weight.canonicalize();
        D.weights.push_back(weight);
        D.matrices.push_back(std::move(best_A));
    }
    return {std::move(D), std::move(trace)};
}

}  // namespace sparsepbn
