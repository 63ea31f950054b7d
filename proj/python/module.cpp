// Python bindings. Exact rationals cross the boundary as fractions.Fraction;
// target tuples as plain lists of 1-based ints.
#include <pybind11/chrono.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "sparsepbn/bounds.hpp"
#include "sparsepbn/corpus.hpp"
#include "sparsepbn/greedy.hpp"
#include "sparsepbn/io.hpp"
#include "sparsepbn/momp.hpp"
#include "sparsepbn/pbn.hpp"

namespace py = pybind11;
using namespace sparsepbn;

namespace {

py::object fraction(const Rat& q) {
    static py::object Fraction =
        py::module_::import("fractions").attr("Fraction");
    return Fraction(py::str(to_fraction_string(q)));
}

Rat to_rat(py::handle h) {
    return parse_rational(py::str(h).cast<std::string>());
}

std::optional<Rat> to_opt_rat(py::object h) {
    if (h.is_none()) return std::nullopt;
    return to_rat(h);
}

py::list fractions(const std::vector<Rat>& v) {
    py::list out;
    for (const Rat& q : v) out.append(fraction(q));
    return out;
}

py::list targets_list(const std::vector<BnMatrix>& ms) {
    py::list out;
    for (const BnMatrix& A : ms) out.append(A.targets);
    return out;
}

Decomposition to_decomposition(py::handle weights, py::handle matrices,
                               py::handle scale) {
    Decomposition D;
    for (py::handle w : weights) D.weights.push_back(to_rat(w));
    for (py::handle m : matrices) {
        BnMatrix A;
        A.targets = m.cast<std::vector<int>>();
        D.matrices.push_back(std::move(A));
    }
    D.scale = to_rat(scale);
    return D;
}

py::dict decomposition_dict(const Decomposition& D) {
    py::dict out;
    out["weights"] = fractions(D.weights);
    out["matrices"] = targets_list(D.matrices);
    out["scale"] = fraction(D.scale);
    out["length"] = D.length();
    out["json"] = decomposition_to_json(D);
    out["text"] = decomposition_to_text(D);
    return out;
}

}  // namespace

PYBIND11_MODULE(_sparsepbn, m) {
    m.doc() = "Sparse decomposition of transition probability matrices into "
              "Boolean-network matrices";

    py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
    py::register_exception<ValidationError>(m, "ValidationError",
                                            PyExc_ValueError);
    py::register_exception<ContractError>(m, "ContractError",
                                          PyExc_RuntimeError);
    static py::exception<InfeasibleSizeError> infeasible(
        m, "InfeasibleSizeError", PyExc_RuntimeError);
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const InfeasibleSizeError& e) {
            py::object exc = infeasible.attr("__call__")(
                py::str(std::string(e.what()) + " (N = " + e.size.get_str() +
                        ")"));
            PyErr_SetObject(infeasible.ptr(), exc.ptr());
        }
    });

    py::class_<Tpm>(m, "Tpm")
        .def_static(
            "parse",
            [](const std::string& text, py::object r0) {
                return parse_tpm(text, to_opt_rat(r0));
            },
            py::arg("text"), py::arg("r0") = py::none())
        .def_static(
            "from_rows",
            [](py::iterable rows) {
                std::vector<std::vector<Rat>> out;
                for (py::handle row : rows) {
                    std::vector<Rat> r;
                    for (py::handle x : row) r.push_back(to_rat(x));
                    out.push_back(std::move(r));
                }
                return Tpm::from_rationals(out);
            },
            py::arg("rows"))
        .def_property_readonly("side", &Tpm::side)
        .def_property_readonly("nodes", &Tpm::nodes)
        .def_property_readonly("scale",
                               [](const Tpm& P) { return fraction(P.scale()); })
        .def_property_readonly(
            "denom", [](const Tpm& P) { return py::int_(py::str(P.denom().get_str())); })
        .def("value",
             [](const Tpm& P, int i, int j) { return fraction(P.value(i, j)); },
             py::arg("i"), py::arg("j"))
        .def("rows",
             [](const Tpm& P) {
                 py::list out;
                 for (const auto& row : P.rationals()) out.append(fractions(row));
                 return out;
             })
        .def("rescaled",
             [](const Tpm& P, py::handle r0) { return P.rescaled(to_rat(r0)); },
             py::arg("r0"))
        .def("same_normalized", &Tpm::same_normalized)
        .def("block_double", [](const Tpm& P) { return block_double(P); })
        .def("__str__", [](const Tpm& P) { return serialize_tpm(P); });

    m.def(
        "decompose",
        [](const Tpm& P, const std::string& algo, long z) {
            Decomposition D;
            if (algo == "ser1")
                D = ser1_decompose(P);
            else if (algo == "ser2")
                D = ser2_decompose(P);
            else if (algo == "ger")
                D = ger_decompose(P, {z}).first;
            else
                throw ParseError("unknown algorithm: " + algo);
            return decomposition_dict(D);
        },
        py::arg("tpm"), py::arg("algo") = "ger", py::arg("z") = 10);

    m.def(
        "momp",
        [](const Tpm& P, double tolerance, double guard) {
            MompResult r = momp_decompose(P, tolerance, guard);
            py::dict out;
            out["matrices"] = targets_list(r.matrices);
            out["coefficients"] = r.coefficients;
            out["error"] = r.error;
            out["iterations"] = r.iterations;
            out["approximate"] = true;
            return out;
        },
        py::arg("tpm"), py::arg("tolerance") = 1e-7, py::arg("guard") = 1e9);

    m.def(
        "verify",
        [](const Tpm& P, py::handle weights, py::handle matrices,
           py::handle scale) {
            VerificationReport rep =
                verify_decomposition(to_decomposition(weights, matrices, scale),
                                     P);
            py::dict out;
            out["weights_positive"] = rep.weights_positive;
            out["weights_sum_to_scale"] = rep.weights_sum_to_scale;
            out["matrices_distinct"] = rep.matrices_distinct;
            out["matrices_in_support"] = rep.matrices_in_support;
            out["reconstructs"] = rep.reconstructs;
            out["pass"] = rep.pass;
            return out;
        },
        py::arg("tpm"), py::arg("weights"), py::arg("matrices"),
        py::arg("scale"));

    m.def("verify_json", [](const Tpm& P, const std::string& text) {
        return verify_decomposition(decomposition_from_json(text), P).pass;
    });

    m.def(
        "lower_bound",
        [](const Tpm& P, bool use_registry) {
            BoundReport r =
                lower_bound(P, use_registry ? certified_registry() : Registry{});
            py::dict out;
            out["value"] = r.value;
            out["kind"] = bound_kind_name(r.witness.kind);
            out["columns"] = r.witness.columns;
            out["citation"] = r.witness.citation;
            return out;
        },
        py::arg("tpm"), py::arg("use_registry") = true);

    m.def("upper_bounds", [](const Tpm& P) {
        UpperBounds ub = upper_bounds(P);
        py::dict out;
        out["entry_removal"] = py::int_(py::str(ub.entry_removal.get_str()));
        out["ser1_ger"] = py::int_(py::str(ub.ser1_ger.get_str()));
        out["ser2"] = py::int_(py::str(ub.ser2.get_str()));
        return out;
    });

    m.def(
        "exact_min_length",
        [](const Tpm& P, long k_max, long budget_ms, long cap) {
            OracleResult r = exact_min_length(
                P, k_max, std::chrono::milliseconds(budget_ms), cap);
            py::dict out;
            out["status"] = r.status == OracleStatus::Found     ? "found"
                            : r.status == OracleStatus::Timeout ? "timeout"
                                                                : "not-found";
            out["k"] = r.k;
            return out;
        },
        py::arg("tpm"), py::arg("k_max"), py::arg("budget_ms") = 60000,
        py::arg("cap") = 64);

    m.def(
        "export_pbn",
        [](const Tpm& P, const std::string& algo, long z, bool as_json) {
            Decomposition D;
            if (algo == "ser1")
                D = ser1_decompose(P);
            else if (algo == "ser2")
                D = ser2_decompose(P);
            else if (algo == "ger")
                D = ger_decompose(P, {z}).first;
            else
                throw ParseError("unknown algorithm: " + algo);
            Pbn B = assemble_pbn(D, P);
            return as_json ? pbn_to_json(B) : pbn_to_text(B);
        },
        py::arg("tpm"), py::arg("algo") = "ger", py::arg("z") = 10,
        py::arg("as_json") = true);

    m.def("corpus_names", [] { return corpus_names(); });
    m.def(
        "corpus",
        [](const std::string& name) {
            CorpusEntry e = corpus(name);
            py::dict out;
            out["name"] = e.name;
            out["tpm"] = e.tpm;
            py::dict exp;
            exp["ger"] = e.expected.ger;
            exp["ser1"] = e.expected.ser1;
            exp["ser2"] = e.expected.ser2;
            exp["momp_lo"] = e.expected.momp_lo;
            exp["momp_hi"] = e.expected.momp_hi;
            out["expected"] = exp;
            out["ger_z"] = e.ger_z;
            return out;
        },
        py::arg("name"));
}
