#pragma once

#include "hnstrat/exact.hpp"
#include "hnstrat/fp.hpp"
#include "hnstrat/linalg.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace hnstrat {

using DimVector = std::vector<long>;

struct Quiver {
    std::vector<std::string> vertices;
    std::vector<std::pair<std::size_t, std::size_t>> arrows;  // (tail, head)

    // A relation is an integer combination of paths with a common start and
    // a common end vertex; paths are arrow index sequences applied left to
    // right.
    struct Relation {
        std::vector<Int> coeffs;
        std::vector<std::vector<std::size_t>> paths;
    };
    std::vector<Relation> relations;

    void validate() const;
};

struct StabilityPair {
    IntVec theta;
    IntVec alpha;
    DimVector ambient;

    void validate() const;  // theta . ambient = 0, alpha_v >= 1
};

Rat theta_of(const DimVector& d, const IntVec& theta);
Rat alpha_of(const DimVector& d, const IntVec& alpha);

// theta(d)/alpha(d); throws std::domain_error on d = 0.
Rat slope(const DimVector& d, const StabilityPair& sp);

struct RepQ {
    Quiver quiver;
    DimVector dims;
    std::vector<Mat> maps;  // maps[a] is dims[head] x dims[tail]

    void validate() const;
    bool monomial() const;  // every column of every map has <= 1 nonzero entry
    long total_dim() const;
};

struct RepF {
    Quiver quiver;
    std::uint32_t p = 2;
    DimVector dims;
    std::vector<FpMat> maps;

    void validate() const;
    long total_dim() const;
};

RepF reduce_rep_mod_p(const RepQ& rep, std::uint32_t p);

bool check_relations(const RepQ& rep);
bool check_relations(const RepF& rep);

// U[v] holds a basis of the candidate subspace at vertex v as rows in
// ambient coordinates.
bool is_subrepresentation(const RepQ& rep, const std::vector<Mat>& U);
bool is_subrepresentation(const RepF& rep, const std::vector<FpMat>& U);

// Restriction of the representation to an arrow-closed tuple of subspaces,
// written in the basis given by the rows of U.
RepQ restrict_rep(const RepQ& rep, const std::vector<Mat>& U);
RepF restrict_rep(const RepF& rep, const std::vector<FpMat>& U);

// Quotient by an arrow-closed tuple of subspaces, in the canonical
// complement coordinates (non-pivot columns of the rref bases).
RepQ quotient_rep(const RepQ& rep, const std::vector<Mat>& U);
RepF quotient_rep(const RepF& rep, const std::vector<FpMat>& U);

// upper/lower are nested arrow-closed tuples in ambient coordinates; returns
// upper restricted and then quotiented by lower.
RepQ subquotient_rep(const RepQ& rep, const std::vector<Mat>& lower, const std::vector<Mat>& upper);
RepF subquotient_rep(const RepF& rep, const std::vector<FpMat>& lower,
                     const std::vector<FpMat>& upper);

// Brute-force oracle: every arrow-closed tuple of subspaces, complete and
// duplicate-free, in a fixed lexicographic order. The budget bounds the
// number of tuples inspected (product of per-vertex subspace counts).
std::vector<std::pair<DimVector, std::vector<FpMat>>> enumerate_subreps_ff(
    const RepF& rep, unsigned long budget = 1000000);

// King semistability: theta(W') >= 0 for all subrepresentations. Finite
// fields use exhaustive oracles; rational input requires monomial maps
// (coordinate-subspace oracle), anything else throws
// std::domain_error("undecidable under configured oracle").
bool is_theta_semistable(const RepF& rep, const StabilityPair& sp, unsigned long budget = 1000000);
bool is_theta_semistable(const RepQ& rep, const StabilityPair& sp, unsigned long budget = 1000000);

// (theta,alpha)-semistability for representations of arbitrary dimension
// (slope of every nonzero subrepresentation at least the total slope); only
// theta and alpha of the pair are consulted.
bool is_slope_semistable(const RepF& rep, const StabilityPair& sp, unsigned long budget = 1000000);
bool is_slope_semistable(const RepQ& rep, const StabilityPair& sp, unsigned long budget = 1000000);

template <class MatT>
struct HNResultT {
    std::vector<DimVector> gamma;
    // filtration[i][v]: basis rows of W^(i+1) at vertex v in ambient
    // coordinates; the last step is the full space.
    std::vector<std::vector<MatT>> filtration;
};
using HNResultQ = HNResultT<Mat>;
using HNResultF = HNResultT<FpMat>;

// The (theta,alpha) Harder-Narasimhan filtration, computed by repeatedly
// extracting the minimal-slope subrepresentation of maximal alpha-dimension
// (uniqueness is asserted; a tie is an internal error).
HNResultF hn_filtration_quiver(const RepF& rep, const StabilityPair& sp,
                               unsigned long budget = 1000000);
HNResultQ hn_filtration_quiver(const RepQ& rep, const StabilityPair& sp,
                               unsigned long budget = 1000000);

struct LambdaGamma {
    std::vector<RatVec> weights;     // rational weights per vertex, block order
    std::vector<IntVec> primitive;   // primitive integral rescaling (zero 1-PS kept as zeros)
    bool is_zero = false;
};

// Weights r_i = -theta(d_i)/alpha(d_i) repeated (d_i)_v times per vertex.
LambdaGamma lambda_gamma(const std::vector<DimVector>& gamma, const StabilityPair& sp);

// Pairing of rho_theta with a torus 1-PS: sum_v theta_v * (sum of weights at v).
Rat pairing_rho_theta(const std::vector<RatVec>& weights, const IntVec& theta);
Rat pairing_rho_theta(const std::vector<IntVec>& weights, const IntVec& theta);

// True iff every arrow matrix is non-negatively graded for the given
// per-vertex weights: nonzero entries only where target weight >= source
// weight.
bool limit_exists(const RepQ& rep, const std::vector<RatVec>& weights);
bool limit_exists(const RepF& rep, const std::vector<RatVec>& weights);

struct HesselinkReport {
    bool semistable = false;
    std::vector<DimVector> gamma;
    std::vector<IntVec> lambda;                  // primitive lambda_gamma per vertex
    std::optional<NormValue> lambda_value;       // unstable case only
    std::optional<NormValue> best_competitor;    // extremal value among competitors with limit
    unsigned long competitors = 0;
    unsigned long with_limit = 0;
    unsigned long violations = 0;
    bool ok = false;
};

// Empirical check that lambda_gamma is the adapted 1-PS: enumerates all
// integral 1-PS with entries in [-B, B] in the HN-adapted basis and in
// `conjugates` random basis changes, and asserts that no competitor with an
// existing limit has a strictly smaller normalised value (semistable case:
// no competitor with limit has negative pairing).
HesselinkReport verify_hn_equals_hesselink(const RepF& rep, const StabilityPair& sp, long bound,
                                           long conjugates, std::uint64_t seed,
                                           unsigned long budget = 1000000);
HesselinkReport verify_hn_equals_hesselink(const RepQ& rep, const StabilityPair& sp, long bound,
                                           long conjugates, std::uint64_t seed,
                                           unsigned long budget = 1000000);

// HN type certified through reductions at >= `want` primes that preserve all
// arrow ranks; throws on cross-prime disagreement or too few usable primes.
struct MultiPrimeHN {
    std::vector<DimVector> gamma;
    std::vector<std::uint32_t> primes;
};
MultiPrimeHN hn_via_primes(const RepQ& rep, const StabilityPair& sp,
                           const std::vector<std::uint32_t>& candidates, std::size_t want,
                           unsigned long budget = 1000000);

}  // namespace hnstrat
