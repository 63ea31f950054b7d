// Command-line front end: decompose TPMs, check bounds, verify decomposition
// files, run the benchmark suite and export PBNs.
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "sparsepbn/bounds.hpp"
#include "sparsepbn/corpus.hpp"
#include "sparsepbn/greedy.hpp"
#include "sparsepbn/io.hpp"
#include "sparsepbn/momp.hpp"
#include "sparsepbn/pbn.hpp"

namespace {

constexpr int kExitParse = 2;
constexpr int kExitInvalid = 3;
constexpr int kExitInfeasible = 4;
constexpr int kExitVerification = 5;

using namespace sparsepbn;

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open file: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_output(const std::string& out_path, const std::string& text) {
    if (out_path.empty()) {
        std::cout << text;
        if (!text.empty() && text.back() != '\n') std::cout << '\n';
        return;
    }
    std::ofstream out(out_path);
    out << text;
}

struct InputOpts {
    std::string input_file;
    std::string corpus_name;
    std::string r0;
};

void add_input_options(CLI::App* cmd, InputOpts& opts) {
    auto* file = cmd->add_option("--input", opts.input_file,
                                 "TPM file (rows of numbers, '#' comments)");
    auto* name = cmd->add_option("--corpus", opts.corpus_name,
                                 "benchmark matrix name, e.g. P2 or PB4:0.03");
    cmd->add_option("--r0", opts.r0, "rescale the matrix to this column sum");
    file->excludes(name);
    name->excludes(file);
}

Tpm load_tpm(const InputOpts& opts) {
    std::optional<Rat> r0;
    if (!opts.r0.empty()) r0 = parse_rational(opts.r0);
    if (!opts.corpus_name.empty()) {
        Tpm t = corpus(opts.corpus_name).tpm;
        return r0 ? t.rescaled(*r0) : t;
    }
    if (opts.input_file.empty())
        throw ParseError("one of --input or --corpus is required");
    return parse_tpm(read_file(opts.input_file), r0);
}

Decomposition run_exact(const std::string& algo, const Tpm& P, long z,
                        GreedyTrace* trace_out) {
    if (algo == "ser1") return ser1_decompose(P);
    if (algo == "ser2") return ser2_decompose(P);
    if (algo == "ger") {
        auto [D, trace] = ger_decompose(P, {z});
        if (trace_out) *trace_out = std::move(trace);
        return D;
    }
    throw ParseError("unknown algorithm: " + algo);
}

std::string trace_text(const GreedyTrace& trace) {
    std::ostringstream out;
    for (size_t k = 0; k < trace.iterations.size(); ++k) {
        const TraceIteration& it = trace.iterations[k];
        out << "iteration " << (k + 1) << ": weight " << it.weight
            << ", matrix " << it.matrix.to_string() << ", positives "
            << it.npos_before << " -> " << it.npos_after << "\n  candidates:";
        for (auto& [v, score] : it.candidates)
            out << " (v=" << v << ", score=" << score << ")";
        out << "\n";
    }
    return out.str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Sparse decomposition of transition probability matrices "
                 "into Boolean-network matrices"};
    app.require_subcommand(1);

    // decompose ------------------------------------------------------------
    auto* decompose = app.add_subcommand("decompose", "run one algorithm");
    InputOpts dec_in;
    add_input_options(decompose, dec_in);
    std::string algo = "ger", format = "json", out_path;
    long z = 10;
    double tolerance = 1e-7;
    double guard = 1e9;
    bool trace = false;
    decompose->add_option("--algo", algo, "ser1|ser2|ger|momp")
        ->check(CLI::IsMember({"ser1", "ser2", "ger", "momp"}));
    decompose->add_option("--z", z, "score base for ger (integer >= 2)");
    decompose->add_option("--tolerance", tolerance, "momp stopping tolerance");
    decompose->add_option("--guard", guard, "momp atom-count guard");
    decompose->add_option("--format", format, "json|text")
        ->check(CLI::IsMember({"json", "text"}));
    decompose->add_flag("--trace", trace, "print per-iteration details (ger)");
    decompose->add_option("--out", out_path, "write result to a file");

    // bounds ----------------------------------------------------------------
    auto* bounds_cmd = app.add_subcommand("bounds", "lower/upper bounds");
    InputOpts bounds_in;
    add_input_options(bounds_cmd, bounds_in);
    bool no_registry = false;
    bounds_cmd->add_flag("--no-registry", no_registry,
                         "skip the shipped certified bounds");

    // verify ----------------------------------------------------------------
    auto* verify = app.add_subcommand("verify", "check a decomposition file");
    InputOpts verify_in;
    add_input_options(verify, verify_in);
    std::string decomposition_path;
    verify->add_option("--decomposition", decomposition_path, "JSON file")
        ->required();

    // bench -----------------------------------------------------------------
    auto* bench = app.add_subcommand("bench", "run the benchmark corpus");
    bool bench_all = false;
    std::vector<std::string> bench_names;
    std::vector<std::string> bench_algos = {"ger", "ser1", "ser2"};
    std::string bench_out;
    double bench_tolerance = -1.0;
    bench->add_flag("--all", bench_all, "run every corpus entry");
    bench->add_option("names", bench_names, "corpus entries to run");
    bench->add_option("--algos", bench_algos,
                      "subset of {ger,ser1,ser2,momp}");
    bench->add_option("--tolerance", bench_tolerance,
                      "override the momp tolerance");
    bench->add_option("--out", bench_out, "write the table to a file");

    // export-pbn ------------------------------------------------------------
    auto* export_pbn = app.add_subcommand(
        "export-pbn", "decompose and emit the realizing network");
    InputOpts pbn_in;
    add_input_options(export_pbn, pbn_in);
    std::string pbn_algo = "ger", pbn_format = "json", pbn_out;
    long pbn_z = 10;
    export_pbn->add_option("--algo", pbn_algo, "ser1|ser2|ger")
        ->check(CLI::IsMember({"ser1", "ser2", "ger"}));
    export_pbn->add_option("--z", pbn_z, "score base for ger");
    export_pbn->add_option("--format", pbn_format, "json|text")
        ->check(CLI::IsMember({"json", "text"}));
    export_pbn->add_option("--out", pbn_out, "write result to a file");

    CLI11_PARSE(app, argc, argv);

    try {
        if (decompose->parsed()) {
            Tpm P = load_tpm(dec_in);
            std::string text;
            if (algo == "momp") {
                MompResult m = momp_decompose(P, tolerance, guard);
                std::ostringstream out;
                out << "# approximate (floating point), error " << m.error
                    << "\n";
                for (size_t k = 0; k < m.matrices.size(); ++k)
                    out << m.coefficients[k] << " "
                        << m.matrices[k].to_string() << "\n";
                text = out.str();
            } else {
                GreedyTrace tr;
                Decomposition D = run_exact(algo, P, z, &tr);
                if (!verify_decomposition(D, P).pass) {
                    std::cerr << "internal error: output failed verification\n";
                    return kExitVerification;
                }
                text = format == "json" ? decomposition_to_json(D)
                                        : decomposition_to_text(D);
                if (trace && algo == "ger") text += "\n" + trace_text(tr);
            }
            write_output(out_path, text);
        } else if (bounds_cmd->parsed()) {
            Tpm P = load_tpm(bounds_in);
            Registry registry =
                no_registry ? Registry{} : certified_registry();
            BoundReport lower = lower_bound(P, registry);
            UpperBounds upper = upper_bounds(P);
            std::cout << "lower bound: " << lower.value << " ("
                      << bound_kind_name(lower.witness.kind);
            if (!lower.witness.columns.empty()) {
                std::cout << ", columns";
                for (int c : lower.witness.columns) std::cout << " " << c;
            }
            if (!lower.witness.citation.empty())
                std::cout << ", " << lower.witness.citation;
            std::cout << ")\n";
            std::cout << "upper bound (entry removal): "
                      << upper.entry_removal.get_str() << "\n";
            std::cout << "upper bound (ser1/ger): " << upper.ser1_ger.get_str()
                      << "\n";
            std::cout << "upper bound (ser2): " << upper.ser2.get_str() << "\n";
        } else if (verify->parsed()) {
            Tpm P = load_tpm(verify_in);
            Decomposition D =
                decomposition_from_json(read_file(decomposition_path));
            VerificationReport rep = verify_decomposition(D, P);
            auto flag = [](bool ok) { return ok ? "pass" : "FAIL"; };
            std::cout << "weights positive:     " << flag(rep.weights_positive)
                      << "\n"
                      << "weights sum to scale: "
                      << flag(rep.weights_sum_to_scale) << "\n"
                      << "matrices distinct:    " << flag(rep.matrices_distinct)
                      << "\n"
                      << "matrices in support:  "
                      << flag(rep.matrices_in_support) << "\n"
                      << "reconstructs exactly: " << flag(rep.reconstructs)
                      << "\n"
                      << "overall:              " << flag(rep.pass) << "\n";
            if (!rep.pass) return kExitVerification;
        } else if (bench->parsed()) {
            std::vector<CorpusEntry> entries;
            if (bench_all)
                entries = full_corpus();
            else
                for (const std::string& name : bench_names)
                    entries.push_back(corpus(name));
            auto results = run_bench(entries, bench_algos, bench_tolerance);
            write_output(bench_out, bench_table(results));
        } else if (export_pbn->parsed()) {
            Tpm P = load_tpm(pbn_in);
            Decomposition D = run_exact(pbn_algo, P, pbn_z, nullptr);
            Pbn B = assemble_pbn(D, P);
            write_output(pbn_out,
                         pbn_format == "json" ? pbn_to_json(B) : pbn_to_text(B));
        }
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitParse;
    } catch (const ValidationError& e) {
        std::cerr << "invalid matrix: " << e.what() << "\n";
        return kExitInvalid;
    } catch (const InfeasibleSizeError& e) {
        std::cerr << "infeasible size: " << e.what() << " (N = "
                  << e.size.get_str() << ")\n";
        return kExitInfeasible;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
