#pragma once

#include "hnstrat/exact.hpp"
#include "hnstrat/linalg.hpp"

#include <optional>
#include <vector>

namespace hnstrat {

// Torus data: dimension, diagonal metric m_j > 0 defining
// ||lambda||^2 = sum m_j lambda_j^2, and the character rho.
struct WeightContext {
    std::size_t dim = 0;
    IntVec metric;
    IntVec rho;

    void validate() const;
    Rat norm_sq(const RatVec& lambda) const;
    Rat norm_sq(const IntVec& lambda) const;
};

// Finite set of torus weights, deduplicated and sorted for determinism.
struct WeightSet {
    std::vector<IntVec> weights;

    static WeightSet make(std::vector<IntVec> ws);
};

// Cone { lambda : <chi, lambda> >= 0 for all normals chi }.
struct HalfspaceCone {
    std::size_t dim = 0;
    std::vector<IntVec> normals;

    bool contains(const RatVec& lambda) const;
    bool contains(const IntVec& lambda) const;
};

HalfspaceCone cone_from_weight_set(const WeightSet& w, std::size_t dim);

// True iff the cone C_W lies inside the half-space <rho, -> >= 0, decided by
// exact feasibility of { lambda in C_W, <rho,lambda> <= -1 }.
bool is_weight_set_semistable(const WeightSet& w, const WeightContext& ctx);

struct AdaptedOnePS {
    IntVec lambda;  // primitive
    NormValue value;
};

// The unique primitive 1-PS in C_W minimising <rho,lambda>/||lambda||.
// Solved as the exact QP min lambda^T M lambda on { <rho,lambda> = -1 } cap
// C_W by active-set enumeration; the KKT certificate is checked before
// returning. Throws std::domain_error("no adapted 1-PS") on semistable input.
AdaptedOnePS adapted_one_ps(const WeightSet& w, const WeightContext& ctx);

struct StratumLabel {
    bool semistable = false;
    IntVec lambda;
    NormValue value;
};

std::vector<StratumLabel> stratify_weight_sets(const std::vector<WeightSet>& points,
                                               const WeightContext& ctx);

// Weyl representative for a product of general linear groups: sort
// non-increasing within each block.
IntVec dominant_representative(IntVec lambda, const std::vector<std::size_t>& block_sizes);

// rho_lambda = ||lambda||^2 rho - (rho,lambda) lambda*, lambda* the metric
// dual (m_j lambda_j).
IntVec twist_character(const WeightContext& ctx, const IntVec& lambda);

struct GrassmannStratum {
    std::size_t k = 0;
    bool semistable = false;
    IntVec lambda;
};

// Rank stratification of r x n matrices under left GL_r, cross-checked
// against the torus computation in a row-echelon-adapted basis.
GrassmannStratum grassmann_stratum(const Mat& m);

// Exposed for tests: the raw QP result before scaling to a primitive 1-PS.
struct QPMinimum {
    RatVec x;     // minimiser on the slice <rho,x> = -1
    Rat objective;
};
std::optional<QPMinimum> qp_min_norm_on_slice(const WeightSet& w, const WeightContext& ctx);

}  // namespace hnstrat
