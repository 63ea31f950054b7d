#include "sparsepbn/io.hpp"

#include <sstream>

#include <json.hpp>

namespace sparsepbn {

Tpm parse_tpm(const std::string& text, std::optional<Rat> r0_override) {
    std::vector<std::vector<Rat>> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        std::istringstream fields(line);
        std::vector<Rat> row;
        std::string token;
        while (fields >> token) row.push_back(parse_rational(token));
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw ParseError("no matrix rows found");
    for (const auto& row : rows)
        if (row.size() != rows[0].size())
            throw ParseError("ragged rows: expected " +
                             std::to_string(rows[0].size()) + " entries, got " +
                             std::to_string(row.size()));
    if (rows.size() != rows[0].size())
        throw ValidationError("matrix must be square");
    Tpm t = Tpm::from_rationals(rows);
    if (r0_override) t = t.rescaled(*r0_override);
    return t;
}

std::string serialize_tpm(const Tpm& P) {
    std::ostringstream out;
    for (int i = 1; i <= P.side(); ++i) {
        for (int j = 1; j <= P.side(); ++j) {
            if (j > 1) out << ' ';
            out << to_fraction_string(P.value(i, j));
        }
        out << '\n';
    }
    return out.str();
}

std::string decomposition_to_json(const Decomposition& D) {
    nlohmann::json j;
    j["side"] = D.matrices.empty() ? 0 : D.matrices[0].side();
    j["r0"] = to_fraction_string(D.scale);
    j["terms"] = nlohmann::json::array();
    for (size_t k = 0; k < D.matrices.size(); ++k)
        j["terms"].push_back({{"weight", to_fraction_string(D.weights[k])},
                              {"targets", D.matrices[k].targets}});
    return j.dump(2);
}

Decomposition decomposition_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("bad decomposition JSON: ") + e.what());
    }
    Decomposition D;
    try {
        D.scale = parse_rational(j.at("r0").get<std::string>());
        const int side = j.at("side").get<int>();
        for (const auto& term : j.at("terms")) {
            D.weights.push_back(
                parse_rational(term.at("weight").get<std::string>()));
            BnMatrix A;
            A.targets = term.at("targets").get<std::vector<int>>();
            if (A.side() != side)
                throw ParseError("term target list does not match side");
            D.matrices.push_back(std::move(A));
        }
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("bad decomposition JSON: ") + e.what());
    }
    return D;
}

std::string decomposition_to_text(const Decomposition& D) {
    std::ostringstream out;
    for (size_t k = 0; k < D.matrices.size(); ++k) {
        if (k) out << " + ";
        out << to_fraction_string(D.weights[k]) << D.matrices[k].to_string();
    }
    return out.str();
}

}  // namespace sparsepbn
