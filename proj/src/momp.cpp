#include "sparsepbn/momp.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sparsepbn {

AtomSpace AtomSpace::build(const Tpm& P) {
    AtomSpace space;
    space.side = P.side();
    space.rows.resize(P.side());
    space.N = 1;
    for (int j = 1; j <= P.side(); ++j) {
        for (int i = 1; i <= P.side(); ++i)
            if (P.entry(i, j) > 0) space.rows[j - 1].push_back(i);
        space.N *= static_cast<long>(space.rows[j - 1].size());
    }
    return space;
}

std::vector<int> AtomSpace::decode(std::uint64_t index) const {
    std::vector<int> targets(side);
    for (int j = side - 1; j >= 0; --j) {
        std::uint64_t radix = rows[j].size();
        targets[j] = rows[j][index % radix];
        index /= radix;
    }
    return targets;
}

std::uint64_t AtomSpace::encode(const std::vector<int>& targets) const {
    std::uint64_t index = 0;
    for (int j = 0; j < side; ++j) {
        auto it = std::lower_bound(rows[j].begin(), rows[j].end(), targets[j]);
        if (it == rows[j].end() || *it != targets[j])
            throw ContractError("target outside the column support");
        index = index * rows[j].size() +
                static_cast<std::uint64_t>(it - rows[j].begin());
    }
    return index;
}

namespace {

inline double cell(const std::vector<double>& m, int side, int i, int j) {
    return m[static_cast<size_t>(i - 1) * side + (j - 1)];
}

// vec(A_t) . vec(r) for an atom given by its target tuple.
double atom_dot(const AtomSpace& space, const std::vector<int>& targets,
                const std::vector<double>& r) {
    double dot = 0.0;
    for (int j = 1; j <= space.side; ++j)
        dot += cell(r, space.side, targets[j - 1], j);
    return dot;
}

}  // namespace

std::uint64_t streaming_argmax(const AtomSpace& space,
                               const std::vector<double>& residual) {
    // The dot product is separable across columns, so the maximizer picks
    // each column's best supported row independently; taking the smallest
    // row on ties yields the lexicographically smallest (= lowest-index)
    // maximizing atom.
    std::vector<int> targets(space.side);
    for (int j = 1; j <= space.side; ++j) {
        int best_row = space.rows[j - 1].front();
        double best = cell(residual, space.side, best_row, j);
        for (int i : space.rows[j - 1]) {
            double v = cell(residual, space.side, i, j);
            if (v > best) {
                best = v;
                best_row = i;
            }
        }
        targets[j - 1] = best_row;
    }
    return space.encode(targets);
}

namespace {

// Gaussian elimination with partial pivoting; returns false when singular.
bool solve_dense(std::vector<std::vector<double>> A, std::vector<double> b,
                 std::vector<double>& out) {
    const size_t n = A.size();
    for (size_t c = 0; c < n; ++c) {
        size_t piv = c;
        for (size_t r = c + 1; r < n; ++r)
            if (std::fabs(A[r][c]) > std::fabs(A[piv][c])) piv = r;
        if (std::fabs(A[piv][c]) < 1e-13) return false;
        std::swap(A[piv], A[c]);
        std::swap(b[piv], b[c]);
        for (size_t r = 0; r < n; ++r) {
            if (r == c) continue;
            double f = A[r][c] / A[c][c];
            if (f == 0.0) continue;
            for (size_t k = c; k < n; ++k) A[r][k] -= f * A[c][k];
            b[r] -= f * b[c];
        }
    }
    out.resize(n);
    for (size_t i = 0; i < n; ++i) out[i] = b[i] / A[i][i];
    return true;
}

// Euclidean projection onto the probability simplex.
void project_simplex(std::vector<double>& y) {
    std::vector<double> u = y;
    std::sort(u.begin(), u.end(), std::greater<>());
    double css = 0.0, theta = 0.0;
    int rho = 0;
    for (size_t i = 0; i < u.size(); ++i) {
        css += u[i];
        double t = (css - 1.0) / static_cast<double>(i + 1);
        if (u[i] - t > 0) {
            rho = static_cast<int>(i + 1);
            theta = t;
        }
    }
    if (rho == 0) theta = (css - 1.0) / static_cast<double>(u.size());
    for (double& v : y) v = std::max(v - theta, 0.0);
}

}  // namespace

std::vector<double> restricted_simplex_ls(const AtomSpace& space,
                                          const std::vector<double>& b,
                                          const std::vector<std::uint64_t>& S) {
    if (S.empty()) throw ContractError("empty support");
    const size_t k = S.size();
    std::vector<std::vector<int>> tuples;
    for (std::uint64_t idx : S) tuples.push_back(space.decode(idx));

    // Gram matrix G(s,t) = number of columns where the atoms agree; linear
    // term c_s = vec(A_s).b. The QP  min 0.5 y'Gy - c'y  on the simplex is
    // solved exactly by checking the KKT system of every active set (the
    // supports here stay small), with projected gradient as a fallback.
    std::vector<std::vector<double>> G(k, std::vector<double>(k));
    std::vector<double> c(k);
    for (size_t s = 0; s < k; ++s) {
        c[s] = atom_dot(space, tuples[s], b);
        for (size_t t = 0; t < k; ++t) {
            int agree = 0;
            for (int j = 0; j < space.side; ++j)
                if (tuples[s][j] == tuples[t][j]) ++agree;
            G[s][t] = agree;
        }
    }

    const double tol = 1e-9;
    auto kkt_ok = [&](const std::vector<double>& y) {
        double nu = 0.0;
        bool have_nu = false;
        std::vector<double> grad(k);
        for (size_t s = 0; s < k; ++s) {
            grad[s] = -c[s];
            for (size_t t = 0; t < k; ++t) grad[s] += G[s][t] * y[t];
        }
        for (size_t s = 0; s < k; ++s)
            if (y[s] > tol) {
                if (!have_nu) {
                    nu = grad[s];
                    have_nu = true;
                } else if (std::fabs(grad[s] - nu) > 1e-7) {
                    return false;
                }
            }
        for (size_t s = 0; s < k; ++s)
            if (y[s] <= tol && grad[s] < nu - 1e-7) return false;
        return true;
    };

    if (k <= 20) {
        for (std::uint64_t active = 1; active < (std::uint64_t{1} << k);
             ++active) {
            size_t m = static_cast<size_t>(__builtin_popcountll(active));
            std::vector<size_t> idx;
            for (size_t s = 0; s < k; ++s)
                if (active & (std::uint64_t{1} << s)) idx.push_back(s);
            // KKT system: [G_T 1; 1' 0] [y; nu] = [c_T; 1]
            std::vector<std::vector<double>> A(m + 1,
                                               std::vector<double>(m + 1, 1.0));
            std::vector<double> rhs(m + 1, 1.0);
            A[m][m] = 0.0;
            for (size_t r = 0; r < m; ++r) {
                rhs[r] = c[idx[r]];
                A[r][m] = 1.0;
                for (size_t cc = 0; cc < m; ++cc) A[r][cc] = G[idx[r]][idx[cc]];
            }
            std::vector<double> sol;
            if (!solve_dense(A, rhs, sol)) continue;
            bool nonneg = true;
            for (size_t r = 0; r < m; ++r)
                if (sol[r] < -1e-12) {
                    nonneg = false;
                    break;
                }
            if (!nonneg) continue;
            std::vector<double> y(k, 0.0);
            for (size_t r = 0; r < m; ++r) y[idx[r]] = std::max(sol[r], 0.0);
            if (kkt_ok(y)) return y;
        }
    }

    // Fallback: projected gradient with a conservative fixed step.
    double L = 0.0;
    for (size_t s = 0; s < k; ++s) L += G[s][s];
    std::vector<double> y(k, 1.0 / static_cast<double>(k));
    for (int iter = 0; iter < 200000; ++iter) {
        std::vector<double> grad(k);
        for (size_t s = 0; s < k; ++s) {
            grad[s] = -c[s];
            for (size_t t = 0; t < k; ++t) grad[s] += G[s][t] * y[t];
        }
        for (size_t s = 0; s < k; ++s) y[s] -= grad[s] / L;
        project_simplex(y);
        if (iter % 64 == 0 && kkt_ok(y)) return y;
    }
    if (kkt_ok(y)) return y;
    throw std::runtime_error("simplex least squares did not converge");
}

double momp_error(const AtomSpace& space, const std::vector<std::uint64_t>& S,
                  const std::vector<double>& x,
                  const std::vector<double>& residual) {
    double lambda = 0.0;
    for (size_t s = 0; s < S.size(); ++s)
        lambda += x[s] * atom_dot(space, space.decode(S[s]), residual);

    // One streaming pass over all atom indices. The mixed-radix odometer
    // updates the dot product incrementally as digits change.
    const std::uint64_t n = space.N.get_ui();
    std::vector<int> digits(space.side, 0);
    double dot = 0.0;
    for (int j = 1; j <= space.side; ++j)
        dot += cell(residual, space.side, space.rows[j - 1][0], j);

    double sum_support = 0.0, sum_rest = 0.0;
    size_t next_support = 0;  // S sorted ascending
    for (std::uint64_t index = 0;; ++index) {
        bool in_support =
            next_support < S.size() && S[next_support] == index;
        double deviation = dot - lambda;
        if (in_support) {
            sum_support += deviation * deviation;
            ++next_support;
        } else if (deviation > 0.0) {
            sum_rest += deviation * deviation;
        }
        if (index + 1 == n) break;
        // advance the odometer (last column is least significant)
        int j = space.side - 1;
        while (true) {
            const auto& rows = space.rows[j];
            int d = digits[j];
            dot -= cell(residual, space.side, rows[d], j + 1);
            if (d + 1 < static_cast<int>(rows.size())) {
                digits[j] = d + 1;
                dot += cell(residual, space.side, rows[d + 1], j + 1);
                break;
            }
            digits[j] = 0;
            dot += cell(residual, space.side, rows[0], j + 1);
            --j;
        }
    }
    return std::sqrt(sum_support) + std::sqrt(sum_rest);
}

MompResult momp_decompose(const Tpm& P, double tolerance, double guard) {
    AtomSpace space = AtomSpace::build(P);
    if (Rat(space.N) > Rat(guard))
        throw InfeasibleSizeError("atom count exceeds the feasibility guard",
                                  space.N);

    const int s = P.side();
    std::vector<double> b(static_cast<size_t>(s) * s);
    for (int i = 1; i <= s; ++i)
        for (int j = 1; j <= s; ++j)
            b[static_cast<size_t>(i - 1) * s + (j - 1)] =
                Rat(P.value(i, j) / P.scale()).get_d();

    auto apply_residual = [&](const std::vector<std::uint64_t>& S,
                              const std::vector<double>& x) {
        std::vector<double> r = b;
        for (size_t l = 0; l < S.size(); ++l) {
            auto t = space.decode(S[l]);
            for (int j = 1; j <= s; ++j)
                r[static_cast<size_t>(t[j - 1] - 1) * s + (j - 1)] -= x[l];
        }
        return r;
    };

    // Start from the single best atom against b itself.
    std::vector<std::uint64_t> S{streaming_argmax(space, b)};
    std::vector<double> x{1.0};
    std::vector<double> r = apply_residual(S, x);
    double e = momp_error(space, S, x, r);

    int iterations = 0;
    const int cap = 500;
    while (e > tolerance) {
        if (++iterations > cap)
            throw std::runtime_error("matching pursuit did not converge");
        std::uint64_t j = streaming_argmax(space, r);
        auto pos = std::lower_bound(S.begin(), S.end(), j);
        if (pos == S.end() || *pos != j) S.insert(pos, j);
        x = restricted_simplex_ls(space, b, S);
        r = apply_residual(S, x);
        e = momp_error(space, S, x, r);
    }

    MompResult result;
    result.error = e;
    result.iterations = iterations;
    for (size_t l = 0; l < S.size(); ++l) {
        if (x[l] < 1e-12) continue;
        BnMatrix A;
        A.targets = space.decode(S[l]);
        result.matrices.push_back(std::move(A));
        result.coefficients.push_back(x[l]);
    }
    return result;
}

}  // namespace sparsepbn
