#pragma once

#include <gmpxx.h>
#include <stdexcept>
#include <string>

namespace sparsepbn {

// Arbitrary-precision integer / rational scalars. GMP keeps rationals
// canonical (lowest terms, positive denominator), which the whole library
// relies on for exact value equality.
using Int = mpz_class;
using Rat = mpq_class;

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Accepts integers ("3"), fractions ("7/10") and exact decimals ("0.27",
// ".5", "-1.25"). Scientific notation is rejected: its precision is
// ambiguous and this library is exact-only.
Rat parse_rational(const std::string& token);

// "a/b", or just "a" when the denominator is 1.
std::string to_fraction_string(const Rat& q);

}  // namespace sparsepbn
