#pragma once

#include <optional>
#include <string>

#include "sparsepbn/core.hpp"

namespace sparsepbn {

// Whitespace-separated rows, one matrix row per line; '#' starts a comment
// line. Entries are integers, exact decimals or "a/b" fractions. Throws
// ParseError for malformed text (ragged rows, bad tokens) and
// ValidationError for structurally bad matrices (negative entries, unequal
// column sums, side not a power of two). When r0_override is given the
// matrix is rescaled to that scale after validation.
Tpm parse_tpm(const std::string& text,
              std::optional<Rat> r0_override = std::nullopt);

// One row per line, entries as fraction strings; parse_tpm round-trips it.
std::string serialize_tpm(const Tpm& P);

// Bit-exact JSON: {"side": int, "r0": "a/b",
//                  "terms": [{"weight": "a/b", "targets": [ints]}]}.
std::string decomposition_to_json(const Decomposition& D);
Decomposition decomposition_from_json(const std::string& text);

// The classic sum rendering: "w1<k1,...> + w2<...> + ...".
std::string decomposition_to_text(const Decomposition& D);

}  // namespace sparsepbn
