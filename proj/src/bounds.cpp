#include "sparsepbn/bounds.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>

namespace sparsepbn {

namespace {

// Positive entries of column j, rows ascending.
std::vector<std::pair<int, Rat>> positive_column(const Tpm& P, int j) {
    std::vector<std::pair<int, Rat>> out;
    for (int i = 1; i <= P.side(); ++i)
        if (P.entry(i, j) > 0) out.emplace_back(i, P.value(i, j));
    return out;
}

}  // namespace

std::string bound_kind_name(BoundKind k) {
    switch (k) {
        case BoundKind::MaxColumn: return "max-column";
        case BoundKind::NotPartitionable: return "not-partitionable";
        case BoundKind::NotPermutation: return "not-permutation";
        case BoundKind::DisjointSupport: return "disjoint-support";
        case BoundKind::BlockDoubling: return "block-doubling";
        case BoundKind::Certified: return "certified";
        default: return "none";
    }
}

BoundWitness max_column_bound(const Tpm& P) {
    BoundWitness w;
    w.kind = BoundKind::MaxColumn;
    w.value = 0;
    for (int j = 1; j <= P.side(); ++j) {
        long count = static_cast<long>(positive_column(P, j).size());
        if (count > w.value) {
            w.value = count;
            w.columns = {j};
        }
    }
    return w;
}

namespace {

bool partition_search(const std::vector<std::pair<Rat, int>>& items, size_t next,
                      std::vector<Rat>& remaining,
                      std::vector<std::vector<int>>& cells) {
    if (next == items.size())
        return std::all_of(remaining.begin(), remaining.end(),
                           [](const Rat& r) { return r == 0; });
    const Rat& value = items[next].first;
    std::set<Rat> tried;  // identical remaining capacities are interchangeable
    for (size_t c = 0; c < remaining.size(); ++c) {
        if (remaining[c] < value || tried.count(remaining[c])) continue;
        tried.insert(remaining[c]);
        remaining[c] -= value;
        cells[c].push_back(items[next].second);
        if (partition_search(items, next + 1, remaining, cells)) return true;
        cells[c].pop_back();
        remaining[c] += value;
    }
    return false;
}

}  // namespace

std::optional<std::vector<std::vector<int>>> partitionable(
    const std::vector<Rat>& a, const std::vector<Rat>& b) {
    if (a.size() < b.size())
        throw ContractError("partitionable: |a| must be >= |b|");
    Rat sa = 0, sb = 0;
    for (const Rat& x : a) sa += x;
    for (const Rat& x : b) sb += x;
    if (sa != sb) throw ContractError("partitionable: totals differ");

    std::vector<std::pair<Rat, int>> items;
    for (size_t i = 0; i < a.size(); ++i)
        items.emplace_back(a[i], static_cast<int>(i + 1));
    std::sort(items.begin(), items.end(),
              [](const auto& x, const auto& y) { return x.first > y.first; });

    std::vector<Rat> remaining = b;
    std::vector<std::vector<int>> cells(b.size());
    if (partition_search(items, 0, remaining, cells)) {
        for (auto& cell : cells) std::sort(cell.begin(), cell.end());
        return cells;
    }
    return std::nullopt;
}

BoundWitness not_partitionable_bound(const Tpm& P) {
    BoundWitness best;
    for (int i = 1; i <= P.side(); ++i) {
        auto ci = positive_column(P, i);
        for (int j = 1; j <= P.side(); ++j) {
            if (i == j) continue;
            auto cj = positive_column(P, j);
            if (ci.size() < cj.size()) continue;
            long candidate = static_cast<long>(ci.size()) + 1;
            if (candidate <= best.value && best.kind != BoundKind::None)
                continue;
            std::vector<Rat> a, b;
            for (auto& [r, v] : ci) a.push_back(v);
            for (auto& [r, v] : cj) b.push_back(v);
            if (!partitionable(a, b)) {
                best.kind = (ci.size() == cj.size()) ? BoundKind::NotPermutation
                                                     : BoundKind::NotPartitionable;
                best.value = candidate;
                best.columns = {i, j};
            }
        }
    }
    return best;
}

BoundWitness disjoint_support_bound(const Tpm& P) {
    BoundWitness best;
    for (int i = 1; i <= P.side(); ++i) {
        auto ci = positive_column(P, i);
        std::set<Rat> vi;
        for (auto& [r, v] : ci) vi.insert(v);
        for (int j = i + 1; j <= P.side(); ++j) {
            auto cj = positive_column(P, j);
            if (ci.size() != cj.size()) continue;
            bool disjoint = true;
            for (auto& [r, v] : cj)
                if (vi.count(v)) {
                    disjoint = false;
                    break;
                }
            if (!disjoint) continue;
            long d = static_cast<long>(ci.size());
            long candidate = (4 * d + 2) / 3;  // ceil(4d/3)
            if (best.kind == BoundKind::None || candidate > best.value) {
                best.kind = BoundKind::DisjointSupport;
                best.value = candidate;
                best.columns = {i, j};
            }
        }
    }
    return best;
}

std::optional<Tpm> block_doubling_reduce(const Tpm& Q) {
    const int s = Q.side();
    if (s < 2) return std::nullopt;
    const int h = s / 2;
    for (int i = 1; i <= h; ++i)
        for (int j = 1; j <= h; ++j) {
            if (Q.entry(i, h + j) != 0 || Q.entry(h + i, j) != 0)
                return std::nullopt;
            if (Q.entry(i, j) != Q.entry(h + i, h + j)) return std::nullopt;
        }
    std::vector<std::vector<Rat>> rows(h, std::vector<Rat>(h));
    for (int i = 1; i <= h; ++i)
        for (int j = 1; j <= h; ++j) rows[i - 1][j - 1] = Q.value(i, j);
    return Tpm::from_rationals(rows).rescaled(Q.scale());
}

bool forced_nonsingleton(const Tpm& P, int i, int l, int j) {
    if (i < 1 || i > P.side() || j < 1 || j > P.side() || i == j)
        throw ContractError("invalid column pair");
    auto ci = positive_column(P, i);
    if (l < 1 || static_cast<size_t>(l) > ci.size())
        throw ContractError("positive-row ordinal out of range");
    Rat max_j = 0;
    for (auto& [r, v] : positive_column(P, j)) max_j = std::max(max_j, v);
    return ci[static_cast<size_t>(l - 1)].second > max_j;
}

BoundReport lower_bound(const Tpm& P, const Registry& registry) {
    std::vector<BoundWitness> found;
    found.push_back(max_column_bound(P));
    if (auto w = not_partitionable_bound(P); w.kind != BoundKind::None)
        found.push_back(w);
    if (auto w = disjoint_support_bound(P); w.kind != BoundKind::None)
        found.push_back(w);
    for (const CertifiedEntry& entry : registry)
        if (entry.tpm.side() == P.side() && entry.tpm.same_normalized(P)) {
            BoundWitness w;
            w.kind = BoundKind::Certified;
            w.value = entry.bound;
            w.citation = entry.citation;
            found.push_back(w);
        }
    if (auto half = block_doubling_reduce(P)) {
        BoundReport inner = lower_bound(*half, registry);
        BoundWitness w;
        w.kind = BoundKind::BlockDoubling;
        w.value = inner.value;
        w.citation = "transferred from the diagonal block (" +
                     bound_kind_name(inner.witness.kind) + ")";
        found.push_back(w);
    }

    BoundReport report;
    for (const BoundWitness& w : found) {
        bool better = w.value > report.value ||
                      (w.value == report.value &&
                       w.kind == BoundKind::Certified &&
                       report.witness.kind != BoundKind::Certified);
        if (report.witness.kind == BoundKind::None || better) {
            report.value = w.value;
            report.witness = w;
        }
    }
    return report;
}

UpperBounds upper_bounds(const Tpm& P) {
    UpperBounds ub;
    ub.entry_removal = positive_count(P.entries()) - P.side() + 1;
    // The (1 - a)q + 1 bounds are taken on the normalized matrix P/r0 with
    // q its least common denominator, a* its smallest positive entry and
    // a^ the smallest of its column maxima, giving q - aq + 1 as an integer.
    Int q = 1;
    std::vector<std::vector<Rat>> norm(P.side(), std::vector<Rat>(P.side()));
    for (int i = 1; i <= P.side(); ++i)
        for (int j = 1; j <= P.side(); ++j) {
            Rat v = P.value(i, j) / P.scale();
            v.canonicalize();
            norm[i - 1][j - 1] = v;
            mpz_lcm(q.get_mpz_t(), q.get_mpz_t(), v.get_den().get_mpz_t());
        }
    Rat min_positive, min_colmax;
    bool first = true;
    for (int j = 0; j < P.side(); ++j) {
        Rat colmax = 0;
        for (int i = 0; i < P.side(); ++i) {
            const Rat& x = norm[i][j];
            if (x > 0) {
                if (first || x < min_positive) min_positive = x;
                first = false;
                colmax = std::max(colmax, x);
            }
        }
        if (j == 0 || colmax < min_colmax) min_colmax = colmax;
    }
    ub.ser1_ger = Rat(Rat(q) - min_positive * Rat(q) + 1).get_num();
    ub.ser2 = Rat(Rat(q) - min_colmax * Rat(q) + 1).get_num();
    return ub;
}

namespace {

// Exact phase-one simplex with Bland's rule: is {x >= 0 : Mx = rhs} (rhs >= 0)
// non-empty?
bool feasible(const std::vector<std::vector<Rat>>& M,
              const std::vector<Rat>& rhs) {
    const size_t m = M.size();
    const size_t k = m ? M[0].size() : 0;
    const size_t cols = k + m;
    std::vector<std::vector<Rat>> T(m, std::vector<Rat>(cols + 1, Rat(0)));
    std::vector<size_t> basis(m);
    for (size_t i = 0; i < m; ++i) {
        for (size_t j = 0; j < k; ++j) T[i][j] = M[i][j];
        T[i][k + i] = 1;
        T[i][cols] = rhs[i];
        basis[i] = k + i;
    }
    // Reduced costs for min(sum of artificials), artificials basic.
    std::vector<Rat> cost(cols + 1, Rat(0));
    for (size_t i = 0; i < m; ++i)
        for (size_t j = 0; j <= cols; ++j) cost[j] -= T[i][j];
    for (size_t i = 0; i < m; ++i) cost[k + i] = 0;

    while (true) {
        size_t pivot_col = cols;
        for (size_t j = 0; j < cols; ++j)
            if (cost[j] < 0) {
                pivot_col = j;
                break;  // Bland: smallest index
            }
        if (pivot_col == cols) break;
        size_t pivot_row = m;
        Rat best_ratio;
        for (size_t i = 0; i < m; ++i) {
            if (T[i][pivot_col] <= 0) continue;
            Rat ratio = T[i][cols] / T[i][pivot_col];
            if (pivot_row == m || ratio < best_ratio ||
                (ratio == best_ratio && basis[i] < basis[pivot_row])) {
                best_ratio = ratio;
                pivot_row = i;
            }
        }
        if (pivot_row == m) break;  // unbounded; cannot happen in phase one
        Rat pv = T[pivot_row][pivot_col];
        for (size_t j = 0; j <= cols; ++j) T[pivot_row][j] /= pv;
        for (size_t i = 0; i < m; ++i) {
            if (i == pivot_row || T[i][pivot_col] == 0) continue;
            Rat factor = T[i][pivot_col];
            for (size_t j = 0; j <= cols; ++j)
                T[i][j] -= factor * T[pivot_row][j];
        }
        Rat cfactor = cost[pivot_col];
        if (cfactor != 0)
            for (size_t j = 0; j <= cols; ++j)
                cost[j] -= cfactor * T[pivot_row][j];
        basis[pivot_row] = pivot_col;
    }
    return -cost[cols] == 0;  // objective value is -cost[cols]
}

}  // namespace

OracleResult exact_min_length(const Tpm& P, long k_max,
                              std::chrono::milliseconds budget, long cap) {
    const int s = P.side();
    std::vector<std::vector<int>> supports(s);
    Int N = 1;
    for (int j = 1; j <= s; ++j) {
        for (int i = 1; i <= s; ++i)
            if (P.entry(i, j) > 0) supports[j - 1].push_back(i);
        N *= static_cast<long>(supports[j - 1].size());
    }
    if (N > cap)
        throw InfeasibleSizeError("atom count exceeds the oracle cap", N);
    const long num_atoms = static_cast<long>(N.get_si());

    // All atoms in lexicographic order of their target tuples.
    std::vector<std::vector<int>> atoms;
    std::vector<int> digits(s, 0);
    while (true) {
        std::vector<int> t(s);
        for (int j = 0; j < s; ++j) t[j] = supports[j][digits[j]];
        atoms.push_back(std::move(t));
        int j = s - 1;
        while (j >= 0 && digits[j] + 1 == static_cast<int>(supports[j].size()))
            digits[j--] = 0;
        if (j < 0) break;
        ++digits[j];
    }

    // Per-atom coverage mask over matrix positions, and the target mask of
    // the positive entries; subsets that do not cover every positive entry
    // are infeasible without solving anything.
    const int words = (s * s + 63) / 64;
    auto mask_of = [&](const std::vector<int>& t) {
        std::vector<std::uint64_t> m(words, 0);
        for (int j = 0; j < s; ++j) {
            int pos = (t[j] - 1) * s + j;
            m[pos / 64] |= std::uint64_t{1} << (pos % 64);
        }
        return m;
    };
    std::vector<std::vector<std::uint64_t>> masks;
    for (const auto& t : atoms) masks.push_back(mask_of(t));
    std::vector<std::uint64_t> target(words, 0);
    std::vector<std::pair<int, int>> positives;  // (row, col) 1-based
    for (int i = 1; i <= s; ++i)
        for (int j = 1; j <= s; ++j)
            if (P.entry(i, j) > 0) {
                int pos = (i - 1) * s + (j - 1);
                target[pos / 64] |= std::uint64_t{1} << (pos % 64);
                positives.emplace_back(i, j);
            }

    auto deadline = std::chrono::steady_clock::now() + budget;

    // The linear system for a subset: one equation per positive entry.
    auto subset_feasible = [&](const std::vector<long>& subset) {
        std::vector<std::vector<Rat>> M(positives.size(),
                                        std::vector<Rat>(subset.size(), Rat(0)));
        std::vector<Rat> rhs(positives.size());
        for (size_t e = 0; e < positives.size(); ++e) {
            auto [r, c] = positives[e];
            rhs[e] = Rat(P.entry(r, c));
            for (size_t a = 0; a < subset.size(); ++a)
                if (atoms[subset[a]][c - 1] == r) M[e][a] = 1;
        }
        return feasible(M, rhs);
    };

    for (long k = 1; k <= std::min(k_max, num_atoms); ++k) {
        std::vector<long> subset(k);
        for (long i = 0; i < k; ++i) subset[i] = i;
        while (true) {
            if (std::chrono::steady_clock::now() > deadline)
                return {OracleStatus::Timeout, 0};
            std::vector<std::uint64_t> cover(words, 0);
            for (long a : subset)
                for (int w = 0; w < words; ++w) cover[w] |= masks[a][w];
            bool covers = true;
            for (int w = 0; w < words; ++w)
                if ((cover[w] & target[w]) != target[w]) {
                    covers = false;
                    break;
                }
            if (covers && subset_feasible(subset))
                return {OracleStatus::Found, k};
            // next k-combination
            long i = k - 1;
            while (i >= 0 && subset[i] == num_atoms - k + i) --i;
            if (i < 0) break;
            ++subset[i];
            for (long j = i + 1; j < k; ++j) subset[j] = subset[j - 1] + 1;
        }
    }
    return {OracleStatus::NotFound, 0};
}

ColumnPartition extract_column_partition(const Decomposition& D, const Tpm& P,
                                         int j) {
    if (j < 1 || j > P.side()) throw ContractError("column out of range");
    if (!verify_decomposition(D, P).pass)
        throw ContractError("decomposition does not verify");
    ColumnPartition part;
    part.column = j;
    for (auto& [row, value] : positive_column(P, j)) part.rows.push_back(row);
    part.cells.resize(part.rows.size());
    std::map<int, size_t> row_index;
    for (size_t l = 0; l < part.rows.size(); ++l) row_index[part.rows[l]] = l;
    for (size_t r = 0; r < D.matrices.size(); ++r) {
        int row = D.matrices[r].targets[j - 1];
        part.cells[row_index.at(row)].push_back(static_cast<int>(r + 1));
    }
    return part;
}

}  // namespace sparsepbn
