#include "sparsepbn/corpus.hpp"

#include <chrono>
#include <sstream>

#include "sparsepbn/greedy.hpp"
#include "sparsepbn/io.hpp"
#include "sparsepbn/momp.hpp"

namespace sparsepbn {

namespace {

const char* kP1 = R"(
0.1 0.5 0.6 0
0.4 0   0.2 0
0.5 0.2 0   1
0   0.3 0.2 0
)";

// Integer renderings of the /110, /265 and /10 matrices; the parser derives
// the scale from the column sums and the corpus normalizes back to 1.
const char* kP2 = R"(
12 30 22 10 10 15 54 34
10 24 19 54 30  0  0  0
54 15  0 12 12  0  0 30
 0  0 24 15 24 19 10  0
 0  0  0  0 34 10 12  0
19  0 15  0  0 12  0 22
15 19  0 19  0 54  0 24
 0 22 30  0  0  0 34  0
)";

const char* kP3 = R"(
 0  0  0 49  0 43  0 49
 0 30 12  0 30  0 25  0
25  0  0 15  0 22 12 15
 0  0 10 24 19  0 30  0
30 43 15  0 24 15  0  0
43  0 49  0  0  0 19 24
 0 22  0 22 12 30  0 12
12 15 24  0 25  0 24 10
)";

const char* kP4 = R"(
26   0   0   0  59   0  49   0 29   0   0   0   0   9   0  46
 0   0  39  17   0   0   0  49 49   0   0   0   0  98  54  17
 0   0  26  49   0   0   0   9  0   0   0  59   9   0   0   0
 0   0   0   0   0   9  54   0  0   0   0   0  39   0  49  26
49   0   9   0   0  29   0   0  0   0 108  63   0  17  59   0
 0   0   0  26   0   0   0  17 39  29   0   0   0   0   0  88
17  63  88   0   0   0   0  98  0   9  37   0  88   0   0  49
 0   0   0   0  49   0   0   0 17  37   9  29  63  49  39   0
98   0   0   0  46 108  26   0  0   0   0   9   0  63   9   0
 0  29   0   0  17   0  29   0 46   0  26   0   0   0  26   0
29 108   0  88   0  39   0   0  0   0  39   0   0  29   0   0
 0  39   0  39   0   0   0   0 26  26  29  39   0   0   0   0
 0   0   0   0  29   0  98  29  0  39   0   0   0   0   0   0
46   0  49  37  39  26   9   0  0 108  17   0  49   0  29   0
 0   9  54   9   0  54   0  37  0  17   0  49  17   0   0  39
 0  17   0   0  26   0   0  26 59   0   0  17   0   0   0   0
)";

const char* kP5 = R"(
0 6 8 1 7 5 8 5 6 5 3 4 10 2 2 0
8 1 1 0 0 0 0 0 1 0 0 0  0 0 0 3
2 1 0 0 0 0 0 0 1 0 0 0  0 0 0 0
0 1 0 0 0 0 0 0 0 0 0 0  0 0 0 0
0 1 1 8 2 4 2 5 0 3 2 3  0 3 4 1
0 0 0 1 0 1 0 0 0 0 0 0  0 0 0 0
0 0 0 0 0 0 0 0 0 0 0 0  0 0 0 0
0 0 0 0 0 0 0 0 0 0 0 0  0 0 0 0
0 0 0 0 1 0 0 0 1 0 0 3  0 0 2 1
0 0 0 0 0 0 0 0 1 2 2 0  0 0 0 0
0 0 0 0 0 0 0 0 0 0 0 0  0 0 0 0
0 0 0 0 0 0 0 0 0 0 0 0  0 0 0 0
0 0 0 0 0 0 0 0 0 0 3 0  0 4 2 5
0 0 0 0 0 0 0 0 0 0 0 0  0 1 0 0
0 0 0 0 0 0 0 0 0 0 0 0  0 0 0 0
0 0 0 0 0 0 0 0 0 0 0 0  0 0 0 0
)";

const char* kPA1 = R"(
0.1 0.3 0.2 0.1
0.2 0.3 0.2 0
0   0   0.6 0.4
0.7 0.4 0   0.5
)";

const char* kPA3 = R"(
0.57 0    0.1 0    0    0.04 0    0
0.14 0.31 0   0.5  0.12 0.13 0.33 0.06
0    0.08 0.4 0.25 0.25 0    0.67 0
0    0.15 0   0    0    0.08 0    0
0    0.15 0.3 0    0    0.13 0    0
0.29 0.31 0.2 0    0.25 0.29 0    0.39
0    0    0   0    0.38 0    0    0
0    0    0   0.25 0    0.33 0    0.55
)";

const char* kPB1 = R"(
0.1 0.3 0.5 0.6
0   0.7 0   0
0   0   0.5 0
0.9 0   0   0.4
)";

const char* kPB3 = R"(
1 0 0 0.2 0 0   0   0
0 0 0 0.2 0 0   0   0
0 0 0 0   1 0   0   0
0 0 0 0   0 0   0   0
0 0 0 0.3 0 0   0.5 0
0 0 0 0.3 0 0   0.5 0
0 1 1 0   0 0.5 0   0
0 0 0 0   0 0.5 0   1
)";

Tpm normalized(const char* text) {
    return parse_tpm(text).rescaled(Rat(1));
}

Tpm pb4(const Rat& d) {
    Rat one_minus = Rat(1) - d;
    std::vector<std::vector<Rat>> rows(8, std::vector<Rat>(8, Rat(0)));
    rows[0][0] = one_minus;
    rows[0][3] = parse_rational("0.2");
    rows[1][3] = parse_rational("0.2");
    rows[2][4] = one_minus;
    for (int j : {0, 1, 2, 4, 7}) rows[3][j] = d;
    rows[4][3] = parse_rational("0.3");
    rows[4][6] = parse_rational("0.5");
    rows[5][3] = parse_rational("0.3");
    rows[5][6] = parse_rational("0.5");
    rows[6][1] = one_minus;
    rows[6][2] = one_minus;
    rows[6][5] = parse_rational("0.5");
    rows[7][5] = parse_rational("0.5");
    rows[7][7] = one_minus;
    return Tpm::from_rationals(rows);
}

bool valid_d(const Rat& d) {
    for (int k = 1; k <= 4; ++k) {
        Rat tested(k, 100);
        tested.canonicalize();
        if (d == tested) return true;
    }
    return false;
}

// tested values are k/100 for k in 1..4, printed as 0.0k
long d_index(const Rat& d) {
    Rat hundred = d * 100;
    hundred.canonicalize();
    return hundred.get_num().get_si();
}

std::string d_suffix(const Rat& d) {
    return ":0.0" + std::to_string(d_index(d));
}

CorpusEntry make(const std::string& name, Tpm tpm, ExpectedLengths expected,
                 std::optional<long> bound = std::nullopt,
                 std::string citation = {}) {
    CorpusEntry e;
    e.name = name;
    e.tpm = std::move(tpm);
    e.expected = expected;
    e.certified_bound = bound;
    e.certified_citation = std::move(citation);
    return e;
}

}  // namespace

const std::vector<std::string>& corpus_names() {
    static const std::vector<std::string> names = {
        "P1",        "P2",        "P3",        "P4",       "P5",
        "PA1",       "PA2",       "PA3",       "PB1",      "PB3",
        "PB4:0.01",  "PB4:0.02",  "PB4:0.03",  "PB4:0.04",
        "PB6:0.01",  "PB6:0.02",  "PB6:0.03",  "PB6:0.04"};
    return names;
}

CorpusEntry corpus(const std::string& raw_name, std::optional<Rat> d) {
    std::string name = raw_name;
    if (auto colon = raw_name.find(':'); colon != std::string::npos) {
        if (d) throw ContractError("parameter given twice");
        name = raw_name.substr(0, colon);
        d = parse_rational(raw_name.substr(colon + 1));
    }

    if (name == "P1")
        return make("P1", normalized(kP1), {4, 7, 4, 5, 5});
    if (name == "P2")
        return make("P2", normalized(kP2), {6, 24, 10, 17, 28});
    if (name == "P3")
        return make("P3", normalized(kP3), {6, 22, 9, 16, 24});
    if (name == "P4")
        return make("P4", normalized(kP4), {8, 46, 13, 0, 0});
    if (name == "P5") {
        auto e = make("P5", normalized(kP5), {7, 10, 7, 29, 31}, 7,
                      "shipped case-analysis certificate for P5");
        e.momp_tolerance = 1e-4;  // published runs relaxed the tolerance here
        return e;
    }
    if (name == "PA1")
        return make("PA1", normalized(kPA1), {5, 7, 5, 5, 5}, 5,
                    "shipped case-analysis certificate for PA1");
    if (name == "PA2")
        return make("PA2", block_double(normalized(kPA1)), {5, 9, 5, 5, 5});
    if (name == "PA3") {
        auto e = make("PA3", normalized(kPA3), {11, 20, 11, 22, 26});
        e.ger_z = 2;  // the published runs use score base 2 for this matrix
        return e;
    }
    if (name == "PB1")
        return make("PB1", normalized(kPB1), {4, 5, 4, 5, 6}, 4,
                    "shipped case-analysis certificate for PB1");
    if (name == "PB3")
        return make("PB3", normalized(kPB3), {4, 4, 4, 4, 4});

    if (name == "PB4" || name == "PB6") {
        if (!d) throw ContractError(name + " requires a perturbation d");
        if (!valid_d(*d))
            throw ContractError("d outside the tested set {0.01..0.04}");
        std::string full = name + d_suffix(*d);
        long k = d_index(*d);
        if (name == "PB4") {
            static const int ser1[] = {11, 11, 11, 11};
            static const int momp_hi[] = {6, 5, 7, 6};
            auto e = make(full, pb4(*d),
                          {5, ser1[k - 1], 5,
                           std::min(5, momp_hi[k - 1]), momp_hi[k - 1]});
            e.d = *d;
            return e;
        }
        static const int ser1[] = {16, 14, 16, 16};
        static const int momp_lo[] = {6, 5, 5, 5};
        static const int momp_hi[] = {7, 6, 6, 6};
        auto e = make(full, block_double(pb4(*d)),
                      {5, ser1[k - 1], 5, momp_lo[k - 1], momp_hi[k - 1]});
        e.d = *d;
        return e;
    }
    throw ContractError("unknown corpus entry: " + raw_name);
}

std::vector<CorpusEntry> full_corpus() {
    std::vector<CorpusEntry> entries;
    for (const std::string& name : corpus_names())
        entries.push_back(corpus(name));
    return entries;
}

const Registry& certified_registry() {
    static const Registry registry = [] {
        Registry r;
        for (const char* name : {"P5", "PA1", "PB1"}) {
            CorpusEntry e = corpus(name);
            r.push_back({e.name, e.tpm, *e.certified_bound,
                         e.certified_citation});
        }
        return r;
    }();
    return registry;
}

std::vector<RunResult> run_bench(const std::vector<CorpusEntry>& entries,
                                 const std::vector<std::string>& algos,
                                 double tolerance_override) {
    std::vector<RunResult> results;
    for (const CorpusEntry& entry : entries) {
        BoundReport lower = lower_bound(entry.tpm, certified_registry());
        for (const std::string& algo : algos) {
            RunResult r;
            r.entry = entry.name;
            r.algo = algo;
            r.lower = lower.value;
            auto start = std::chrono::steady_clock::now();
            try {
                if (algo == "ger") {
                    r.z = entry.ger_z;
                    auto [D, trace] = ger_decompose(entry.tpm, {entry.ger_z});
                    r.length = static_cast<long>(D.length());
                    r.verified = verify_decomposition(D, entry.tpm).pass;
                } else if (algo == "ser1" || algo == "ser2") {
                    Decomposition D = algo == "ser1"
                                          ? ser1_decompose(entry.tpm)
                                          : ser2_decompose(entry.tpm);
                    r.length = static_cast<long>(D.length());
                    r.verified = verify_decomposition(D, entry.tpm).pass;
                } else if (algo == "momp") {
                    r.tolerance = tolerance_override >= 0
                                      ? tolerance_override
                                      : entry.momp_tolerance;
                    MompResult m = momp_decompose(entry.tpm, r.tolerance);
                    r.length = static_cast<long>(m.matrices.size());
                    r.verified = false;  // approximate by construction
                    r.note = "approx";
                } else {
                    throw ContractError("unknown algorithm: " + algo);
                }
            } catch (const InfeasibleSizeError&) {
                r.note = "ITR";
            } catch (const std::exception& e) {
                r.note = e.what();
            }
            r.seconds = std::chrono::duration<double>(
                            std::chrono::steady_clock::now() - start)
                            .count();
            results.push_back(std::move(r));
        }
    }
    return results;
}

std::string bench_table(const std::vector<RunResult>& results) {
    std::ostringstream out;
    out << "entry      algo   K      lower  verified  seconds\n";
    for (const RunResult& r : results) {
        std::string k = r.note == "ITR" ? "ITR"
                        : r.note.empty() || r.note == "approx"
                            ? std::to_string(r.length)
                            : "ERR";
        out << r.entry << std::string(11 - std::min<size_t>(10, r.entry.size()), ' ')
            << r.algo << std::string(7 - std::min<size_t>(6, r.algo.size()), ' ')
            << k << std::string(7 - std::min<size_t>(6, k.size()), ' ')
            << r.lower << "      " << (r.verified ? "yes" : "no ") << "       "
            << r.seconds;
        if (!r.note.empty() && r.note != "ITR") out << "  [" << r.note << "]";
        out << "\n";
    }
    return out.str();
}

}  // namespace sparsepbn
