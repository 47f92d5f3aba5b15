#pragma once

#include "hnstrat/hilbert.hpp"
#include "hnstrat/quiver.hpp"

#include <optional>
#include <string>
#include <vector>

namespace hnstrat {

struct TorsionBlock {
    bool at_infinity = false;
    Rat point;  // ignored when at_infinity
    long length = 1;

    bool operator==(const TorsionBlock& o) const = default;
};

// A coherent sheaf on the projective line in Birkhoff-Grothendieck form:
// a multiset of line-bundle degrees plus torsion blocks at rational points.
struct SheafP1 {
    std::vector<long> line_degrees;       // kept sorted descending
    std::vector<TorsionBlock> torsion;    // canonical order

    static SheafP1 make(std::vector<long> degrees, std::vector<TorsionBlock> torsion);

    bool is_zero() const { return line_degrees.empty() && torsion.empty(); }
    long torsion_length() const;

    bool operator==(const SheafP1& o) const = default;
};

// P(t) = sum_a (t + a + 1) + total torsion length.
HilbertPoly hilbert_poly_p1(const SheafP1& e);

// (h0, h1) of E(n) by summing the standard line-bundle formulas.
std::pair<long, long> cohomology_dims(const SheafP1& e, long n);

// Least n with h1(E(n-1)) = 0; the sheaf is m-regular for every m >= n.
long regularity_bound(const SheafP1& e);

// Torsion first, then one entry per distinct line degree, strictly
// decreasing in the Rudakov order.
SheafHNType sheaf_hn_type(const SheafP1& e);

// The two-vertex functor: dims (P(n), P(m)), one arrow per monomial section
// of O(m - n), with exact multiplication matrices.
RepQ phi_nm(const SheafP1& e, long n, long m);

// Chain-quiver generalisation over strictly increasing twists.
RepQ phi_multi(const SheafP1& e, const std::vector<long>& ns);

struct AckReport {
    SheafHNType tau;
    KroneckerHNType expected;
    KroneckerHNType computed;
    bool match = false;
    std::vector<std::uint32_t> primes_used;  // empty for the coordinate oracle
    long n = 0, m = 0;
};

// Computes the quiver-side HN type of Phi_{n,m}(E) under
// (theta_{n,m}(P), alpha_{n,m}(P)) and compares with gamma_{n,m}(tau(E)).
// Monomial representations (torsion only at 0/infinity) use the coordinate
// oracle; others reduce at >= 3 rank-preserving primes with cross-prime
// agreement required.
AckReport verify_ack_hn(const SheafP1& e, long n, long m, const std::vector<std::uint32_t>& primes,
                        unsigned long budget = 1000000);

struct GridCell {
    long n = 0, m = 0;
    int status = 0;  // 1 match, 0 mismatch, -1 error
    std::string note;
};

struct GridReport {
    std::vector<GridCell> cells;
    std::optional<std::pair<long, long>> minimal_match;
    std::vector<std::pair<long, long>> nonmonotone;  // mismatches above a match
};

GridReport threshold_grid(const SheafP1& e, long n_max, long m_max,
                          const std::vector<std::uint32_t>& primes,
                          unsigned long budget = 1000000);

}  // namespace hnstrat
