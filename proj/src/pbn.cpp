#include "sparsepbn/pbn.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include <json.hpp>

namespace sparsepbn {

namespace {

int log2_side(int side) {
    if (side < 2 || (side & (side - 1)) != 0)
        throw ContractError("side must be a power of two");
    int n = 0;
    while ((1 << n) < side) ++n;
    return n;
}

}  // namespace

TruthTable bn_to_truth_table(const BnMatrix& A) {
    const int side = A.side();
    const int n = log2_side(side);
    TruthTable T;
    T.n = n;
    T.outputs.assign(n, std::vector<int>(side, 0));
    for (int j = 0; j < side; ++j) {
        int next = A.targets[j] - 1;  // bit string of the successor state
        for (int i = 0; i < n; ++i)
            T.outputs[i][j] = (next >> (n - 1 - i)) & 1;  // node 1 = MSB
    }
    return T;
}

BnMatrix truth_table_to_bn(const TruthTable& T) {
    const int side = 1 << T.n;
    BnMatrix A;
    A.targets.resize(side);
    for (int j = 0; j < side; ++j) {
        int next = 0;
        for (int i = 0; i < T.n; ++i) next = (next << 1) | T.outputs[i][j];
        A.targets[j] = next + 1;
    }
    return A;
}

Pbn assemble_pbn(const Decomposition& D, const Tpm& P) {
    if (!verify_decomposition(D, P).pass)
        throw ContractError("decomposition does not verify");
    const int n = log2_side(P.side());
    Pbn B;
    B.n = n;
    B.functions.resize(n);

    std::map<std::vector<int>, Rat> masses;
    std::vector<std::vector<int>> tuple_order;
    for (size_t k = 0; k < D.matrices.size(); ++k) {
        TruthTable T = bn_to_truth_table(D.matrices[k]);
        std::vector<int> tuple(n);
        for (int i = 0; i < n; ++i) {
            auto& list = B.functions[i];
            auto it = std::find(list.begin(), list.end(), T.outputs[i]);
            if (it == list.end()) {
                list.push_back(T.outputs[i]);
                it = std::prev(list.end());
            }
            tuple[i] = static_cast<int>(it - list.begin()) + 1;
        }
        Rat mass = D.weights[k] / D.scale;
        mass.canonicalize();
        auto [entry, inserted] = masses.emplace(tuple, mass);
        if (!inserted)
            entry->second += mass;
        else
            tuple_order.push_back(tuple);
    }
    for (const auto& tuple : tuple_order)
        B.pmf.emplace_back(tuple, masses.at(tuple));
    return B;
}

Pbn independent_pbn(const std::vector<std::vector<TruthColumn>>& functions,
                    const std::vector<std::vector<Rat>>& c) {
    if (functions.size() != c.size())
        throw ContractError("per-node probabilities must match function lists");
    Pbn B;
    B.n = static_cast<int>(functions.size());
    B.functions = functions;
    for (size_t i = 0; i < c.size(); ++i) {
        if (c[i].size() != functions[i].size())
            throw ContractError("probability list length mismatch");
        Rat sum = 0;
        for (const Rat& p : c[i]) {
            if (p < 0) throw ContractError("negative selection probability");
            sum += p;
        }
        if (sum != 1) throw ContractError("selection probabilities must sum to 1");
    }
    // Cartesian product, last node fastest.
    std::vector<int> tuple(B.n, 1);
    while (true) {
        Rat mass = 1;
        for (int i = 0; i < B.n; ++i) mass *= c[i][tuple[i] - 1];
        if (mass > 0) B.pmf.emplace_back(tuple, mass);
        int i = B.n - 1;
        while (i >= 0 && tuple[i] == static_cast<int>(functions[i].size()))
            tuple[i--] = 1;
        if (i < 0) break;
        ++tuple[i];
    }
    return B;
}

Tpm pbn_to_tpm(const Pbn& B) {
    const int side = 1 << B.n;
    Rat total = 0;
    for (auto& [tuple, mass] : B.pmf) {
        if (mass <= 0) throw ContractError("pmf masses must be positive");
        total += mass;
    }
    if (total != 1) throw ContractError("pmf must sum to 1");

    std::vector<std::vector<Rat>> rows(side, std::vector<Rat>(side, Rat(0)));
    for (auto& [tuple, mass] : B.pmf) {
        if (static_cast<int>(tuple.size()) != B.n)
            throw ContractError("tuple arity mismatch");
        TruthTable T;
        T.n = B.n;
        for (int i = 0; i < B.n; ++i) {
            int idx = tuple[i];
            if (idx < 1 || idx > static_cast<int>(B.functions[i].size()))
                throw ContractError("function index out of range");
            T.outputs.push_back(B.functions[i][idx - 1]);
        }
        BnMatrix A = truth_table_to_bn(T);
        for (int j = 0; j < side; ++j) rows[A.targets[j] - 1][j] += mass;
    }
    return Tpm::from_rationals(rows);
}

std::string pbn_to_text(const Pbn& B) {
    const int side = 1 << B.n;
    std::ostringstream out;
    out << "state";
    for (int i = 1; i <= B.n; ++i) out << "  v" << i;
    for (int i = 0; i < B.n; ++i)
        for (size_t f = 0; f < B.functions[i].size(); ++f)
            out << "  f" << (i + 1) << "." << (f + 1);
    out << "\n";
    for (int j = 0; j < side; ++j) {
        out << (j + 1) << "    ";
        for (int i = 0; i < B.n; ++i)
            out << "  " << ((j >> (B.n - 1 - i)) & 1) << " ";
        for (int i = 0; i < B.n; ++i)
            for (const auto& f : B.functions[i]) out << "  " << f[j] << "   ";
        out << "\n";
    }
    out << "pmf:\n";
    for (auto& [tuple, mass] : B.pmf) {
        out << "  (";
        for (size_t i = 0; i < tuple.size(); ++i)
            out << (i ? "," : "") << tuple[i];
        out << ") -> " << to_fraction_string(mass) << "\n";
    }
    return out.str();
}

std::string pbn_to_json(const Pbn& B) {
    nlohmann::json j;
    j["nodes"] = B.n;
    j["functions"] = nlohmann::json::array();
    for (const auto& list : B.functions) {
        nlohmann::json node = nlohmann::json::array();
        for (const auto& f : list) node.push_back(f);
        j["functions"].push_back(node);
    }
    j["pmf"] = nlohmann::json::array();
    for (auto& [tuple, mass] : B.pmf)
        j["pmf"].push_back(
            {{"tuple", tuple}, {"mass", to_fraction_string(mass)}});
    return j.dump(2);
}

}  // namespace sparsepbn
