#pragma once

#include "hnstrat/exact.hpp"

#include <array>
#include <optional>
#include <utility>
#include <vector>

namespace hnstrat {

// Integer-valued polynomial with positive leading coefficient (a positive
// constant when the degree is zero); ascending coefficients, no trailing
// zeros. These are the numerical invariants everything in this module
// manipulates; realisability on a particular scheme is never checked.
struct HilbertPoly {
    RatVec coeffs;

    static HilbertPoly from_coeffs(RatVec coeffs);
    static HilbertPoly constant(const Int& c);
    static HilbertPoly linear(const Int& a, const Int& b);  // a t + b

    int degree() const { return static_cast<int>(coeffs.size()) - 1; }
    Rat eval(const Rat& t) const;
    Rat eval(long t) const;
    const Rat& leading() const { return coeffs.back(); }

    bool operator==(const HilbertPoly& o) const = default;
    bool operator<(const HilbertPoly& o) const;  // lexicographic, for containers
};

RatVec poly_add(const RatVec& a, const RatVec& b);
std::string poly_to_string(const HilbertPoly& p);

enum class RudakovOrder { precedes, equivalent, succeeds };

// Exact comparison in the Rudakov preorder via the cross-product array
// Lambda(P,Q): "succeeds" means P is larger (lower degree wins).
RudakovOrder rudakov_cmp(const HilbertPoly& p, const HilbertPoly& q);

// Test-side oracle: evaluates P(n)/P(m) against Q(n)/Q(m) at n = s, m = s^2
// for increasing s until the comparison is stable across three consecutive
// scales where all four values are positive.
RudakovOrder rudakov_asymptotic_oracle(const HilbertPoly& p, const HilbertPoly& q, long scale);

struct SheafHNType {
    std::vector<HilbertPoly> entries;
    HilbertPoly total;

    // Validates the strict Rudakov chain and computes the total.
    static SheafHNType make(std::vector<HilbertPoly> entries);

    bool operator==(const SheafHNType& o) const = default;
};

bool is_hn_type(const std::vector<HilbertPoly>& entries, const HilbertPoly& total);

// Shatz order at fixed (n, m): tau <= tau' iff the polygonal path of tau'
// through the partial-sum points lies weakly above the path of tau at every
// breakpoint abscissa of either path.
bool shatz_leq(const SheafHNType& tau, const SheafHNType& tau_prime, long n, long m);

// Hesselink index data of a 1-PS on the Quot scheme: strictly decreasing
// rational weights with multiplicities, in the context of (P, n).
struct QuotIndex {
    RatVec r;
    std::vector<Int> l;
    HilbertPoly P;
    long n = 0;
    bool merged = false;  // blocks were reordered or merged at this (n, m)
};

QuotIndex beta_nm(const SheafHNType& tau, long n, long m);

bool beta_equal(const SheafHNType& tau, const SheafHNType& tau_prime, long n, long m);

// Exhaustive search for distinct HN types with a common total that share the
// same beta index: enumerates integer-valued polynomials with binomial-basis
// coefficients bounded by coeff_bound and degree <= deg_bound, forms all
// strictly decreasing tuples with <= parts_bound parts, and groups by
// (values at n, values at m, total).
std::vector<std::pair<SheafHNType, SheafHNType>> collision_search(long n, long m, int deg_bound,
                                                                  long coeff_bound,
                                                                  int parts_bound,
                                                                  unsigned long budget = 10000000);

using KroneckerHNType = std::vector<std::array<Int, 2>>;

// gamma(beta): d_i = (l_i, l_i P(m)/P(n) - l_i r_i); every second component
// must be a positive integer, otherwise the index is not realizable.
KroneckerHNType gamma_of_beta(const QuotIndex& beta, long m);

// gamma_{n,m}(tau) = ((P_i(n), P_i(m)))_i.
KroneckerHNType gamma_nm(const SheafHNType& tau, long n, long m);

struct AckParams {
    std::array<Int, 2> d;
    std::array<Int, 2> theta;
    std::array<Int, 2> alpha;
};

// d = (P(n), P(m)), theta = (-P(m), P(n)), alpha = (P(m), P(n)).
AckParams ack_parameters(const HilbertPoly& P, long n, long m);

struct MultiParams {
    IntVec d;
    IntVec theta;
    IntVec alpha;
};

// d_i = P(n_i); theta_i = sum_{j<i} P(n_j) - sum_{j>i} P(n_j);
// alpha_i = sum_{j<i} P(n_j) + sum_{j>i} P(n_j).
MultiParams multi_parameters(const std::vector<long>& ns, const HilbertPoly& P);

struct GammaMulti {
    std::vector<IntVec> entries;
    bool subregular = false;  // some evaluation was <= 0
};

GammaMulti gamma_multi(const std::vector<long>& ns, const SheafHNType& tau);

// All distinct pool index pairs (i < j) with equal multi-vertex images.
std::vector<std::pair<std::size_t, std::size_t>> injectivity_report(
    const std::vector<SheafHNType>& pool, const std::vector<long>& ns);

// sum_i r_i P_i(m) + r_i^2 l_i; zero iff the component lies in the weight-d
// fixed locus.
Rat fixed_locus_weight_check(const RatVec& r, const std::vector<HilbertPoly>& polys,
                             const std::vector<Int>& l, long m);

// All tuples of integer-valued degree <= 1 polynomials that realise the
// index: sum P_i = P and P_i(m) = l_i (P(m)/P(n) - r_i), filtered by
// plausibility (valid polynomial, P_i(n) >= 0) and the strict ratio chain.
std::vector<std::vector<HilbertPoly>> enumerate_refined_indices(const QuotIndex& beta, long m,
                                                                int degree_cap = 1);

}  // namespace hnstrat
