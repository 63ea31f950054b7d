#include "sparsepbn/core.hpp"

#include <algorithm>
#include <set>

namespace sparsepbn {

std::string BnMatrix::to_string() const {
    std::string s = "<";
    for (size_t i = 0; i < targets.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(targets[i]);
    }
    return s + ">";
}

bool IntMatrix::is_zero() const {
    return std::all_of(e.begin(), e.end(), [](const Int& x) { return x == 0; });
}

long positive_count(const IntMatrix& M) {
    long count = 0;
    for (const Int& x : M.e)
        if (x > 0) ++count;
    return count;
}

Tpm Tpm::from_rationals(const std::vector<std::vector<Rat>>& rows) {
    const size_t side = rows.size();
    if (side == 0) throw ValidationError("empty matrix");
    if ((side & (side - 1)) != 0)
        throw ValidationError("matrix side must be a power of two");
    int n = 0;
    while ((size_t{1} << n) < side) ++n;

    for (const auto& row : rows)
        if (row.size() != side) throw ValidationError("matrix must be square");
    for (const auto& row : rows)
        for (const Rat& x : row)
            if (x < 0) throw ValidationError("negative entry");

    Rat r0 = 0;
    for (size_t j = 0; j < side; ++j) {
        Rat sum = 0;
        for (size_t i = 0; i < side; ++i) sum += rows[i][j];
        if (j == 0)
            r0 = sum;
        else if (sum != r0)
            throw ValidationError("columns must share a common sum");
    }
    if (r0 <= 0) throw ValidationError("column sum must be positive");

    // p is the least common denominator of the entries at their own scale;
    // the stored integer matrix is p*P, so its columns sum to p*r0.
    Int p = 1;
    for (const auto& row : rows)
        for (const Rat& x : row)
            mpz_lcm(p.get_mpz_t(), p.get_mpz_t(), x.get_den().get_mpz_t());

    Tpm t;
    t.n_ = n;
    t.r0_ = r0;
    t.p_ = p;
    t.entries_ = IntMatrix(static_cast<int>(side));
    for (size_t i = 0; i < side; ++i)
        for (size_t j = 0; j < side; ++j) {
            Rat scaled = rows[i][j] * Rat(p);
            t.entries_.e[i * side + j] = scaled.get_num();  // den is 1 by lcm
        }
    return t;
}

Rat Tpm::value(int i, int j) const {
    Rat v = Rat(entries_.at(i, j)) / Rat(p_);
    v.canonicalize();
    return v;
}

Tpm Tpm::rescaled(const Rat& new_r0) const {
    if (new_r0 <= 0) throw ValidationError("scale must be positive");
    // Multiply the whole matrix by new_r0/r0, i.e. report it at a new scale.
    Rat factor = new_r0 / r0_;
    auto rows = rationals();
    for (auto& row : rows)
        for (Rat& x : row) {
            x *= factor;
            x.canonicalize();
        }
    return from_rationals(rows);
}

std::vector<std::vector<Rat>> Tpm::rationals() const {
    const int s = side();
    std::vector<std::vector<Rat>> rows(s, std::vector<Rat>(s));
    for (int i = 1; i <= s; ++i)
        for (int j = 1; j <= s; ++j) rows[i - 1][j - 1] = value(i, j);
    return rows;
}

bool Tpm::same_normalized(const Tpm& o) const {
    if (side() != o.side()) return false;
    // entry/(p*r0) == o.entry/(o.p*o.r0), cross-multiplied
    Rat lhs_scale = Rat(p_) * r0_, rhs_scale = Rat(o.p_) * o.r0_;
    for (int i = 1; i <= side(); ++i)
        for (int j = 1; j <= side(); ++j)
            if (Rat(entries_.at(i, j)) * rhs_scale !=
                Rat(o.entries_.at(i, j)) * lhs_scale)
                return false;
    return true;
}

bool in_support(const BnMatrix& A, const Tpm& P) {
    if (A.side() != P.side()) throw ContractError("side mismatch");
    for (int j = 1; j <= P.side(); ++j) {
        int k = A.targets[j - 1];
        if (k < 1 || k > P.side() || P.entry(k, j) == 0) return false;
    }
    return true;
}

VerificationReport verify_decomposition(const Decomposition& D, const Tpm& P) {
    VerificationReport rep;
    rep.weights_positive =
        D.weights.size() == D.matrices.size() &&
        std::all_of(D.weights.begin(), D.weights.end(),
                    [](const Rat& w) { return w > 0; });

    Rat sum = 0;
    for (const Rat& w : D.weights) sum += w;
    rep.weights_sum_to_scale = (sum == P.scale());

    std::set<BnMatrix> distinct(D.matrices.begin(), D.matrices.end());
    rep.matrices_distinct = distinct.size() == D.matrices.size();

    rep.matrices_in_support = true;
    for (const BnMatrix& A : D.matrices) {
        if (A.side() != P.side() || !in_support(A, P)) {
            rep.matrices_in_support = false;
            break;
        }
    }

    rep.reconstructs = true;
    const int s = P.side();
    std::vector<Rat> recon(static_cast<size_t>(s) * s, Rat(0));
    for (size_t k = 0; k < D.matrices.size() && rep.reconstructs; ++k) {
        const BnMatrix& A = D.matrices[k];
        if (A.side() != s) {
            rep.reconstructs = false;
            break;
        }
        for (int j = 1; j <= s; ++j)
            recon[static_cast<size_t>(A.targets[j - 1] - 1) * s + (j - 1)] +=
                D.weights[k];
    }
    if (rep.reconstructs)
        for (int i = 1; i <= s && rep.reconstructs; ++i)
            for (int j = 1; j <= s; ++j)
                if (recon[static_cast<size_t>(i - 1) * s + (j - 1)] !=
                    P.value(i, j)) {
                    rep.reconstructs = false;
                    break;
                }

    rep.pass = rep.weights_positive && rep.weights_sum_to_scale &&
               rep.matrices_distinct && rep.matrices_in_support &&
               rep.reconstructs;
    return rep;
}

Tpm block_double(const Tpm& P) {
    const int s = P.side();
    auto rows = P.rationals();
    std::vector<std::vector<Rat>> doubled(2 * s, std::vector<Rat>(2 * s, Rat(0)));
    for (int i = 0; i < s; ++i)
        for (int j = 0; j < s; ++j) {
            doubled[i][j] = rows[i][j];
            doubled[s + i][s + j] = rows[i][j];
        }
    return Tpm::from_rationals(doubled);
}

Decomposition lift_block_double(const Decomposition& D, const Tpm& P) {
    if (!verify_decomposition(D, P).pass)
        throw ContractError("decomposition does not verify against its matrix");
    const int s = P.side();
    Decomposition lifted;
    lifted.weights = D.weights;
    lifted.scale = D.scale;
    for (const BnMatrix& A : D.matrices) {
        BnMatrix L;
        L.targets = A.targets;
        for (int k : A.targets) L.targets.push_back(s + k);
        lifted.matrices.push_back(std::move(L));
    }
    return lifted;
}

}  // namespace sparsepbn
