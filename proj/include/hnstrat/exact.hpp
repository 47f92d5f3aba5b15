#pragma once

#include <gmpxx.h>

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace hnstrat {

// All arithmetic in this library is exact. Rationals are kept in reduced
// form with positive denominator (mpq_class canonicalises on construction
// and after every operation we route through helpers below).
using Rat = mpq_class;
using Int = mpz_class;

using RatVec = std::vector<Rat>;
using IntVec = std::vector<Int>;

inline Rat make_rat(long num, long den = 1) {
    Rat r(num, den);
    r.canonicalize();
    return r;
}

inline int sign(const Rat& r) { return sgn(r); }
inline int sign(const Int& z) { return sgn(z); }

inline bool is_integer(const Rat& r) { return r.get_den() == 1; }

// Serialises as "p/q", or just "p" when q = 1. This is the only rational
// format accepted in JSON interchange; no decimals.
std::string rat_to_string(const Rat& r);

// Parses "p", "p/q" or "-p/q". Throws std::invalid_argument on anything else.
Rat parse_rat(const std::string& s);

std::string int_to_string(const Int& z);
Int parse_int(const std::string& s);

// The exact value pairing/sqrt(norm_sq), kept square-root free. norm_sq = 0
// is only legal for the zero 1-PS whose value is undefined; comparing such a
// value is an error.
struct NormValue {
    Rat pairing;
    Rat norm_sq;
};

// Exact three-way comparison of a.pairing/sqrt(a.norm_sq) against
// b.pairing/sqrt(b.norm_sq) by sign analysis and squared cross-products.
// Returns -1, 0, +1. Throws std::domain_error if either norm_sq <= 0.
int compare_norm_values(const NormValue& a, const NormValue& b);

}  // namespace hnstrat
