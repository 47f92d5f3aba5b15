#include "hnstrat/exact.hpp"

namespace hnstrat {

std::string rat_to_string(const Rat& r) {
    if (r.get_den() == 1) return r.get_num().get_str();
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

Rat parse_rat(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("empty rational literal");
    for (char c : s) {
        if (!(c == '-' || c == '/' || (c >= '0' && c <= '9')))
            throw std::invalid_argument("bad rational literal: " + s);
    }
    Rat r;
    if (r.set_str(s, 10) != 0) throw std::invalid_argument("bad rational literal: " + s);
    if (r.get_den() == 0) throw std::invalid_argument("zero denominator: " + s);
    r.canonicalize();
    return r;
}

std::string int_to_string(const Int& z) { return z.get_str(); }

Int parse_int(const std::string& s) {
    Rat r = parse_rat(s);
    if (!is_integer(r)) throw std::invalid_argument("not an integer: " + s);
    return r.get_num();
}

int compare_norm_values(const NormValue& a, const NormValue& b) {
    if (sign(a.norm_sq) <= 0 || sign(b.norm_sq) <= 0)
        throw std::domain_error("norm value comparison needs positive norm_sq");
    const int sa = sign(a.pairing);
    const int sb = sign(b.pairing);
    if (sa != sb) return sa < sb ? -1 : 1;
    if (sa == 0) return 0;
    // Same sign: compare squares cross-multiplied, orientation flips for
    // negative pairings.
    const Rat lhs = a.pairing * a.pairing * b.norm_sq;
    const Rat rhs = b.pairing * b.pairing * a.norm_sq;
    const int c = cmp(lhs, rhs);
    if (c == 0) return 0;
    return (sa > 0) == (c > 0) ? 1 : -1;
}

}  // namespace hnstrat
