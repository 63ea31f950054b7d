// Acceptance gate: one pass/fail line per shipped guarantee, nonzero exit if
// any fails. Everything checked here is also covered in finer grain by the
// unit and property tests.
#include <chrono>
#include <cmath>
#include <cstdint>
#include <iostream>
#include <random>
#include <vector>

#include "sparsepbn/bounds.hpp"
#include "sparsepbn/corpus.hpp"
#include "sparsepbn/greedy.hpp"
#include "sparsepbn/io.hpp"
#include "sparsepbn/momp.hpp"
#include "sparsepbn/pbn.hpp"

using namespace sparsepbn;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

void report(const std::string& name, bool ok) {
    std::cout << (ok ? "pass" : "FAIL") << "  " << name << "\n";
    if (!ok) ++failures;
}

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

BnMatrix bn(std::vector<int> targets) {
    BnMatrix A;
    A.targets = std::move(targets);
    return A;
}

Tpm small4() {
    return parse_tpm("1 5 6 0\n4 0 2 0\n5 2 0 10\n0 3 2 0\n");
}

Tpm wide8() {
    return parse_tpm(
        "32 0 2 0 0 4 0 0\n0 0 0 36 4 13 0 0\n0 0 9 0 0 0 61 0\n"
        "0 15 0 0 0 0 0 0\n0 15 30 0 0 13 0 0\n29 31 20 0 25 29 0 6\n"
        "0 0 0 0 32 0 0 0\n0 0 0 25 0 2 0 55\n");
}

// 1. Greedy entry removal reproduces every published corpus length, each run
//    verifying exactly in under a second.
bool greedy_corpus_lengths() {
    for (const CorpusEntry& entry : full_corpus()) {
        auto t0 = Clock::now();
        auto [D, trace] = ger_decompose(entry.tpm, {entry.ger_z});
        double dt = seconds_since(t0);
        if (dt >= 1.0) return false;
        if (static_cast<int>(D.length()) != entry.expected.ger) return false;
        if (!verify_decomposition(D, entry.tpm).pass) return false;
    }
    return true;
}

// 2. The worked 8x8 greedy run: weights, matrices and the two entry
//    selections.
bool greedy_worked_example() {
    Tpm Q = wide8();
    auto [D, trace] = ger_decompose(Q);
    std::vector<Rat> weights = {Rat(2),  Rat(4), Rat(25), Rat(5), Rat(10),
                                Rat(5),  Rat(3), Rat(4),  Rat(3)};
    std::vector<BnMatrix> matrices = {
        bn({1, 6, 1, 2, 7, 8, 3, 6}), bn({6, 6, 3, 2, 2, 1, 3, 6}),
        bn({6, 6, 5, 8, 6, 6, 3, 8}), bn({1, 4, 3, 2, 7, 2, 3, 8}),
        bn({1, 4, 6, 2, 7, 5, 3, 8}), bn({1, 5, 5, 2, 7, 2, 3, 8}),
        bn({1, 5, 6, 2, 7, 2, 3, 8}), bn({1, 5, 6, 2, 7, 6, 3, 8}),
        bn({1, 5, 6, 2, 7, 5, 3, 8})};
    if (D.weights != weights || D.matrices != matrices) return false;
    return geresa(Q.entries(), Int(2)) == bn({1, 6, 1, 2, 7, 8, 3, 6}) &&
           geresa(Q.entries(), Int(4)) == bn({6, 4, 3, 2, 2, 1, 3, 6});
}

// 3. The selection score on the reference matrices and the first two
//    iterations of the 8x8 run.
bool score_regression() {
    IntMatrix A(4), B(4);
    int a[4][4] = {{45, 9, 85, 1}, {81, 52, 16, 36}, {0, 65, 26, 94},
                   {5, 5, 4, 0}};
    int b[4][4] = {{45, 9, 84, 1}, {81, 52, 6, 36}, {0, 65, 36, 94},
                   {5, 5, 5, 0}};
    for (int i = 1; i <= 4; ++i)
        for (int j = 1; j <= 4; ++j) {
            A.at(i, j) = a[i - 1][j - 1];
            B.at(i, j) = b[i - 1][j - 1];
        }
    if (f_score(A, {10}) != 220 || f_score(B, {10}) != 1190) return false;

    auto [D, trace] = ger_decompose(wide8());
    if (trace.iterations.size() < 2) return false;
    const auto& c1 = trace.iterations[0].candidates;
    std::vector<std::pair<Int, Int>> want1 = {
        {2, 3170}, {4, 3100}, {25, 1460}, {29, 1390}};
    if (c1 != want1) return false;
    for (const auto& [v, score] : trace.iterations[1].candidates)
        if (v != 4 && v != 29) return false;
    return true;
}

// 4. The simple entry-removal rules: worked example, corpus agreement on at
//    least 15 of 18 rows, and their a-priori length bounds.
bool ser_regressions() {
    Tpm P = small4();
    Decomposition s1 = ser1_decompose(P);
    Decomposition s2 = ser2_decompose(P);
    if (s1.length() != 7 ||
        s1.weights != std::vector<Rat>{Rat(1), Rat(2), Rat(2), Rat(2), Rat(1),
                                       Rat(1), Rat(1)})
        return false;
    if (s2.length() != 4 ||
        s2.weights != std::vector<Rat>{Rat(5), Rat(2), Rat(2), Rat(1)})
        return false;

    int m1 = 0, m2 = 0;
    for (const CorpusEntry& entry : full_corpus()) {
        Decomposition d1 = ser1_decompose(entry.tpm);
        Decomposition d2 = ser2_decompose(entry.tpm);
        if (!verify_decomposition(d1, entry.tpm).pass ||
            !verify_decomposition(d2, entry.tpm).pass)
            return false;
        UpperBounds ub = upper_bounds(entry.tpm);
        if (Int(static_cast<long>(d1.length())) > ub.entry_removal ||
            Int(static_cast<long>(d1.length())) > ub.ser1_ger ||
            Int(static_cast<long>(d2.length())) > ub.ser2)
            return false;
        if (static_cast<int>(d1.length()) == entry.expected.ser1) ++m1;
        if (static_cast<int>(d2.length()) == entry.expected.ser2) ++m2;
    }
    return m1 >= 15 && m2 >= 15;
}

// 5. Lower bounds: the generic rules alone, then with the shipped certified
//    registry; on all certified rows the bound meets the greedy length.
bool bound_values() {
    auto generic = [](const std::string& name) {
        return lower_bound(corpus(name).tpm).value;
    };
    if (generic("P1") != 4 || generic("P2") != 6 || generic("P3") != 6 ||
        generic("P4") != 8 || generic("P5") != 6 || generic("PA1") != 4 ||
        generic("PB1") != 3 || generic("PB3") != 4)
        return false;
    for (const std::string& d : {"0.01", "0.02", "0.03", "0.04"}) {
        if (lower_bound(corpus("PB4:" + d).tpm).value != 5) return false;
        if (lower_bound(corpus("PB6:" + d).tpm).value != 5) return false;
    }
    const Registry& reg = certified_registry();
    if (lower_bound(corpus("P5").tpm, reg).value != 7) return false;
    if (lower_bound(corpus("PA1").tpm, reg).value != 5) return false;
    if (lower_bound(corpus("PA2").tpm, reg).value != 5) return false;
    if (lower_bound(corpus("PB1").tpm, reg).value != 4) return false;
    for (const CorpusEntry& entry : full_corpus()) {
        if (entry.name == "PA3") continue;  // the one row without a certificate
        auto [D, trace] = ger_decompose(entry.tpm, {entry.ger_z});
        if (lower_bound(entry.tpm, reg).value !=
            static_cast<long>(D.length()))
            return false;
    }
    return true;
}

// 6. The brute-force oracle certifies the two smallest corpus rows.
bool oracle_agreement() {
    using namespace std::chrono_literals;
    for (const std::string& name : {"P1", "PB1"}) {
        Tpm P = corpus(name).tpm;
        auto t0 = Clock::now();
        OracleResult r = exact_min_length(P, 8, 60s);
        if (seconds_since(t0) >= 60.0) return false;
        if (r.status != OracleStatus::Found || r.k != 4) return false;
        if (lower_bound(P, certified_registry()).value != r.k) return false;
        auto [D, trace] = ger_decompose(P);
        if (static_cast<long>(D.length()) != r.k) return false;
    }
    return true;
}

// 7. Randomized structural invariants (a condensed rerun of the property
//    suite).
bool property_suite() {
    std::mt19937 rng(424242);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = std::uniform_int_distribution<int>(2, 3)(rng);
        const int side = 1 << n;
        const long scale = std::uniform_int_distribution<long>(side, 40)(rng);
        std::vector<std::vector<Rat>> rows(side,
                                           std::vector<Rat>(side, Rat(0)));
        for (int j = 0; j < side; ++j) {
            int support = std::uniform_int_distribution<int>(
                1, static_cast<int>(std::min<long>(side, scale)))(rng);
            std::vector<int> perm(side);
            for (int i = 0; i < side; ++i) perm[i] = i;
            std::shuffle(perm.begin(), perm.end(), rng);
            std::vector<long> cuts = {0, scale};
            std::uniform_int_distribution<long> cut(1, scale - 1);
            while (static_cast<int>(cuts.size()) < support + 1) {
                long c = cut(rng);
                if (std::find(cuts.begin(), cuts.end(), c) == cuts.end())
                    cuts.push_back(c);
            }
            std::sort(cuts.begin(), cuts.end());
            for (int k = 0; k < support; ++k)
                rows[perm[k]][j] = Rat(cuts[k + 1] - cuts[k]);
        }
        Tpm P = Tpm::from_rationals(rows);

        auto [ger, trace] = ger_decompose(P);
        Decomposition s1 = ser1_decompose(P);
        Decomposition s2 = ser2_decompose(P);
        for (const Decomposition* D : {&ger, &s1, &s2}) {
            if (!verify_decomposition(*D, P).pass) return false;
            Rat sum = 0;
            for (const Rat& w : D->weights) sum += w;
            if (sum != P.scale()) return false;
        }
        for (const TraceIteration& it : trace.iterations)
            if (it.npos_after >= it.npos_before) return false;
        for (int j = 1; j <= P.side(); ++j) {
            ColumnPartition part = extract_column_partition(ger, P, j);
            for (size_t l = 0; l < part.rows.size(); ++l) {
                Rat sum = 0;
                for (int term : part.cells[l]) sum += ger.weights[term - 1];
                if (sum != P.value(part.rows[l], j)) return false;
                for (int other = 1; other <= P.side(); ++other)
                    if (other != j &&
                        forced_nonsingleton(P, j, static_cast<int>(l + 1),
                                            other) &&
                        part.cells[l].size() < 2)
                        return false;
            }
        }
        Decomposition L = lift_block_double(ger, P);
        if (L.length() != ger.length() ||
            !verify_decomposition(L, block_double(P)).pass)
            return false;
    }
    return true;
}

// 8. Matching pursuit: the two easy rows converge inside the published
//    range, the 16x16 dense row is rejected by the guard, and the streaming
//    kernels agree with dense brute force on every small dictionary.
bool matching_pursuit() {
    MompResult a = momp_decompose(corpus("PA1").tpm, 1e-7);
    if (a.matrices.size() != 5 || a.error > 1e-6) return false;
    MompResult b = momp_decompose(corpus("PB3").tpm, 1e-7);
    if (b.matrices.size() != 4 || b.error > 1e-6) return false;

    bool guarded = false;
    try {
        momp_decompose(corpus("P4").tpm, 1e-7);
    } catch (const InfeasibleSizeError& e) {
        guarded = (e.size == Int("9682651996416"));
    }
    if (!guarded) return false;

    std::mt19937 rng(5150);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    for (const CorpusEntry& entry : full_corpus()) {
        AtomSpace space = AtomSpace::build(entry.tpm);
        if (space.N > 10000) continue;
        const int s = space.side;
        const std::uint64_t N = space.N.get_ui();
        auto dot = [&](std::uint64_t idx, const std::vector<double>& r) {
            auto t = space.decode(idx);
            double d = 0.0;
            for (int j = 0; j < s; ++j)
                d += r[static_cast<size_t>(t[j] - 1) * s + j];
            return d;
        };
        std::vector<double> r(static_cast<size_t>(s) * s);
        for (double& v : r) v = dist(rng);

        std::uint64_t got = streaming_argmax(space, r);
        double best = dot(got, r);
        for (std::uint64_t idx = 0; idx < N; ++idx)
            if (dot(idx, r) > best + 1e-10) return false;

        std::vector<std::uint64_t> S = {0, N / 2};
        std::vector<double> x = {0.6, 0.4};
        double lambda = 0.6 * dot(S[0], r) + 0.4 * dot(S[1], r);
        double sup = 0.0, rest = 0.0;
        for (std::uint64_t idx = 0; idx < N; ++idx) {
            double dev = dot(idx, r) - lambda;
            if (idx == S[0] || idx == S[1])
                sup += dev * dev;
            else if (dev > 0)
                rest += dev * dev;
        }
        double dense = std::sqrt(sup) + std::sqrt(rest);
        if (std::fabs(momp_error(space, S, x, r) - dense) > 1e-10)
            return false;
    }
    return true;
}

// 9. Realizing networks: the textbook independent-selection example, the
//    worked 4x4 pmf and exact round trips for every corpus decomposition.
bool pbn_round_trips() {
    std::vector<std::vector<TruthColumn>> functions = {
        {{0, 1, 0, 1}, {0, 0, 1, 1}}, {{1, 0, 0, 0}, {1, 1, 1, 0}}};
    std::vector<std::vector<Rat>> c = {{Rat(1, 10), Rat(9, 10)},
                                       {Rat(3, 10), Rat(7, 10)}};
    Tpm expected = Tpm::from_rationals({
        {Rat(0), Rat(27, 100), Rat(3, 100), Rat(0)},
        {Rat(1), Rat(63, 100), Rat(7, 100), Rat(0)},
        {Rat(0), Rat(3, 100), Rat(27, 100), Rat(1)},
        {Rat(0), Rat(7, 100), Rat(63, 100), Rat(0)},
    });
    if (!pbn_to_tpm(independent_pbn(functions, c)).same_normalized(expected))
        return false;

    Tpm P = small4();
    Pbn B = assemble_pbn(ser2_decompose(P), P);
    std::vector<std::pair<std::vector<int>, Rat>> pmf = {
        {{1, 1}, Rat(1, 2)},
        {{2, 2}, Rat(1, 5)},
        {{3, 3}, Rat(1, 5)},
        {{2, 4}, Rat(1, 10)}};
    if (B.pmf != pmf) return false;

    for (const CorpusEntry& entry : full_corpus())
        for (Decomposition D :
             {ger_decompose(entry.tpm, {entry.ger_z}).first,
              ser1_decompose(entry.tpm), ser2_decompose(entry.tpm)})
            if (!pbn_to_tpm(assemble_pbn(D, entry.tpm))
                     .same_normalized(entry.tpm))
                return false;
    return true;
}

// 10. Hardware-neutral speed ceiling: each exact run under a second, the
//     whole exact bench under thirty.
bool speed_ceiling() {
    auto t0 = Clock::now();
    auto results = run_bench(full_corpus(), {"ger", "ser1", "ser2"});
    double total = seconds_since(t0);
    if (total >= 30.0) return false;
    for (const RunResult& r : results)
        if (r.seconds >= 1.0 || !r.verified) return false;
    return true;
}

}  // namespace

int main() {
    report("greedy corpus lengths", greedy_corpus_lengths());
    report("greedy worked example", greedy_worked_example());
    report("score regression", score_regression());
    report("simple entry-removal regressions", ser_regressions());
    report("lower bounds", bound_values());
    report("exact-length oracle", oracle_agreement());
    report("randomized property suite", property_suite());
    report("matching pursuit", matching_pursuit());
    report("network round trips", pbn_round_trips());
    report("speed ceiling", speed_ceiling());
    return failures == 0 ? 0 : 1;
}
