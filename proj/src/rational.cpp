#include "sparsepbn/rational.hpp"

#include <cctype>

namespace sparsepbn {

namespace {

bool all_digits(const std::string& s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

}  // namespace

Rat parse_rational(const std::string& token) {
    if (token.empty()) throw ParseError("empty numeric token");
    if (token.find_first_of("eE") != std::string::npos)
        throw ParseError("scientific notation rejected: '" + token + "'");

    std::string s = token;
    bool negative = false;
    if (s[0] == '+' || s[0] == '-') {
        negative = (s[0] == '-');
        s = s.substr(1);
    }
    if (s.empty()) throw ParseError("bad numeric token: '" + token + "'");

    Rat result;
    auto slash = s.find('/');
    auto dot = s.find('.');
    if (slash != std::string::npos) {
        std::string num = s.substr(0, slash), den = s.substr(slash + 1);
        if (!all_digits(num) || !all_digits(den))
            throw ParseError("bad fraction: '" + token + "'");
        Int d(den, 10);
        if (d == 0) throw ParseError("zero denominator: '" + token + "'");
        result = Rat(Int(num, 10), d);
    } else if (dot != std::string::npos) {
        std::string whole = s.substr(0, dot), frac = s.substr(dot + 1);
        if (whole.empty()) whole = "0";
        if (frac.empty()) frac = "0";
        if (!all_digits(whole) || !all_digits(frac))
            throw ParseError("bad decimal: '" + token + "'");
        Int scale;
        mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
        result = Rat(Int(whole, 10) * scale + Int(frac, 10), scale);
    } else {
        if (!all_digits(s)) throw ParseError("bad integer: '" + token + "'");
        result = Rat(Int(s, 10));
    }
    result.canonicalize();
    if (negative) result = -result;
    return result;
}

std::string to_fraction_string(const Rat& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

}  // namespace sparsepbn
