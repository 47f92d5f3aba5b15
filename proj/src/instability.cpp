#include "hnstrat/instability.hpp"

#include <algorithm>
#include <map>

namespace hnstrat {

void WeightContext::validate() const {
    if (metric.size() != dim || rho.size() != dim)
        throw std::invalid_argument("weight context size mismatch");
    for (const Int& m : metric)
        if (sign(m) <= 0) throw std::invalid_argument("metric entries must be positive");
}

Rat WeightContext::norm_sq(const RatVec& lambda) const {
    Rat s = 0;
    for (std::size_t j = 0; j < dim; ++j) s += Rat(metric[j]) * lambda[j] * lambda[j];
    return s;
}

Rat WeightContext::norm_sq(const IntVec& lambda) const {
    Int s = 0;
    for (std::size_t j = 0; j < dim; ++j) s += metric[j] * lambda[j] * lambda[j];
    return Rat(s);
}

WeightSet WeightSet::make(std::vector<IntVec> ws) {
    std::sort(ws.begin(), ws.end());
    ws.erase(std::unique(ws.begin(), ws.end()), ws.end());
    return WeightSet{std::move(ws)};
}

bool HalfspaceCone::contains(const RatVec& lambda) const {
    for (const IntVec& chi : normals)
        if (sign(dot(chi, lambda)) < 0) return false;
    return true;
}

bool HalfspaceCone::contains(const IntVec& lambda) const {
    for (const IntVec& chi : normals)
        if (sign(dot(chi, lambda)) < 0) return false;
    return true;
}

HalfspaceCone cone_from_weight_set(const WeightSet& w, std::size_t dim) {
    for (const IntVec& chi : w.weights)
        if (chi.size() != dim) throw std::invalid_argument("weight dimension mismatch");
    return HalfspaceCone{dim, w.weights};
}

namespace {

// One KKT candidate from an active subset: the solution of
//   2 M x = mu rho + sum nu_i chi_i,  <rho,x> = -1,  <chi_i,x> = 0 (i in S).
struct KKTCandidate {
    RatVec x;
    Rat objective;
    RatVec nu;
    bool dual_feasible;
};

std::optional<KKTCandidate> solve_kkt_subset(const WeightContext& ctx,
                                             const std::vector<IntVec>& normals,
                                             const std::vector<std::size_t>& subset) {
    const std::size_t d = ctx.dim;
    const std::size_t s = subset.size();
    const std::size_t nvar = d + 1 + s;
    Mat sys(nvar, nvar);
    RatVec rhs(nvar, Rat(0));
    for (std::size_t i = 0; i < d; ++i) {
        sys.at(i, i) = Rat(2 * ctx.metric[i]);
        sys.at(i, d) = -Rat(ctx.rho[i]);
        for (std::size_t j = 0; j < s; ++j) sys.at(i, d + 1 + j) = -Rat(normals[subset[j]][i]);
    }
    for (std::size_t i = 0; i < d; ++i) sys.at(d, i) = Rat(ctx.rho[i]);
    rhs[d] = -1;
    for (std::size_t j = 0; j < s; ++j)
        for (std::size_t i = 0; i < d; ++i) sys.at(d + 1 + j, i) = Rat(normals[subset[j]][i]);

    // Reject singular/inconsistent systems: the minimiser is always recovered
    // from an independent active subset, so skipping these loses nothing.
    Mat probe = sys;
    if (rref(probe).size() != nvar) return std::nullopt;
    auto sol = solve_linear(std::move(sys), rhs);
    if (!sol) return std::nullopt;
    KKTCandidate cand;
    cand.x.assign(sol->begin(), sol->begin() + static_cast<long>(d));
    cand.nu.assign(sol->begin() + static_cast<long>(d + 1), sol->end());
    cand.objective = 0;
    for (std::size_t i = 0; i < d; ++i) cand.objective += Rat(ctx.metric[i]) * cand.x[i] * cand.x[i];
    cand.dual_feasible = std::all_of(cand.nu.begin(), cand.nu.end(),
                                     [](const Rat& v) { return sign(v) >= 0; });
    return cand;
}

void subsets_up_to(std::size_t n, std::size_t kmax,
                   const std::function<void(const std::vector<std::size_t>&)>& fn) {
    std::vector<std::size_t> cur;
    std::function<void(std::size_t)> rec = [&](std::size_t start) {
        fn(cur);
        if (cur.size() == kmax) return;
        for (std::size_t i = start; i < n; ++i) {
            cur.push_back(i);
            rec(i + 1);
            cur.pop_back();
        }
    };
    rec(0);
}

}  // namespace

std::optional<QPMinimum> qp_min_norm_on_slice(const WeightSet& w, const WeightContext& ctx) {
    ctx.validate();
    const auto cone = cone_from_weight_set(w, ctx.dim);
    const auto& normals = cone.normals;

    std::optional<RatVec> best_x;
    Rat best_obj;
    std::vector<std::pair<RatVec, bool>> best_certs;  // (x, dual feasible) at optimum

    subsets_up_to(normals.size(), ctx.dim, [&](const std::vector<std::size_t>& subset) {
        auto cand = solve_kkt_subset(ctx, normals, subset);
        if (!cand) return;
        if (!cone.contains(cand->x)) return;
        if (!best_x || cand->objective < best_obj) {
            best_x = cand->x;
            best_obj = cand->objective;
            best_certs.clear();
        }
        if (cand->objective == best_obj) best_certs.emplace_back(cand->x, cand->dual_feasible);
    });

    if (!best_x) return std::nullopt;
    // Strict convexity of the objective forces a unique minimiser; equal
    // objectives from different subsets must agree as vectors.
    bool dual_ok = false;
    for (const auto& [x, feas] : best_certs) {
        if (x != *best_x) throw std::runtime_error("internal error: QP minimiser not unique");
        dual_ok = dual_ok || feas;
    }
    if (!dual_ok) throw std::runtime_error("internal error: no dual-feasible certificate at optimum");
    return QPMinimum{*best_x, best_obj};
}

bool is_weight_set_semistable(const WeightSet& w, const WeightContext& ctx) {
    return !qp_min_norm_on_slice(w, ctx).has_value();
}

AdaptedOnePS adapted_one_ps(const WeightSet& w, const WeightContext& ctx) {
    auto qp = qp_min_norm_on_slice(w, ctx);
    if (!qp) throw std::domain_error("no adapted 1-PS");

    // Certificate: primal feasibility of the returned point.
    const auto cone = cone_from_weight_set(w, ctx.dim);
    if (!cone.contains(qp->x) || dot(ctx.rho, qp->x) != Rat(-1))
        throw std::runtime_error("internal error: certificate failure (primal)");

    IntVec lambda = primitive_integral(qp->x);
    if (!cone.contains(lambda))
        throw std::runtime_error("internal error: certificate failure (primitive)");
    NormValue v{dot(ctx.rho, lambda), ctx.norm_sq(lambda)};
    return AdaptedOnePS{std::move(lambda), std::move(v)};
}

std::vector<StratumLabel> stratify_weight_sets(const std::vector<WeightSet>& points,
                                               const WeightContext& ctx) {
    std::vector<StratumLabel> out;
    out.reserve(points.size());
    std::map<std::vector<IntVec>, StratumLabel> cache;
    for (const auto& w : points) {
        auto it = cache.find(w.weights);
        if (it == cache.end()) {
            StratumLabel lab;
            auto qp = qp_min_norm_on_slice(w, ctx);
            if (!qp) {
                lab.semistable = true;
            } else {
                auto one_ps = adapted_one_ps(w, ctx);
                lab.lambda = one_ps.lambda;
                lab.value = one_ps.value;
            }
            it = cache.emplace(w.weights, std::move(lab)).first;
        }
        out.push_back(it->second);
    }
    return out;
}

IntVec dominant_representative(IntVec lambda, const std::vector<std::size_t>& block_sizes) {
    std::size_t total = 0;
    for (std::size_t b : block_sizes) total += b;
    if (total != lambda.size()) throw std::invalid_argument("block sizes do not sum to length");
    std::size_t off = 0;
    for (std::size_t b : block_sizes) {
        std::sort(lambda.begin() + static_cast<long>(off), lambda.begin() + static_cast<long>(off + b),
                  [](const Int& x, const Int& y) { return x > y; });
        off += b;
    }
    return lambda;
}

IntVec twist_character(const WeightContext& ctx, const IntVec& lambda) {
    ctx.validate();
    if (lambda.size() != ctx.dim) throw std::invalid_argument("lambda dimension mismatch");
    bool zero = true;
    for (const Int& x : lambda)
        if (sign(x) != 0) zero = false;
    if (zero) throw std::domain_error("twist_character of zero 1-PS");
    Int nsq = 0, pair = 0;
    for (std::size_t j = 0; j < ctx.dim; ++j) {
        nsq += ctx.metric[j] * lambda[j] * lambda[j];
        pair += ctx.rho[j] * lambda[j];
    }
    IntVec out(ctx.dim);
    for (std::size_t j = 0; j < ctx.dim; ++j) out[j] = nsq * ctx.rho[j] - pair * ctx.metric[j] * lambda[j];
    return out;
}

GrassmannStratum grassmann_stratum(const Mat& m) {
    if (m.rows > m.cols) throw std::invalid_argument("grassmann_stratum needs r <= n");
    const std::size_t r = m.rows;
    Mat red = m;
    const std::size_t k = rref(red).size();

    // Torus cross-check in the echelon-adapted basis: the weight set is
    // { e_i : row i of the echelon form nonzero } = { e_1, ..., e_k }.
    std::vector<IntVec> ws;
    for (std::size_t i = 0; i < k; ++i) {
        IntVec e(r, 0);
        e[i] = 1;
        ws.push_back(std::move(e));
    }
    WeightContext ctx{r, IntVec(r, 1), IntVec(r, 1)};
    const WeightSet w = WeightSet::make(ws);

    GrassmannStratum out;
    out.k = k;
    if (k == r) {
        out.semistable = true;
        if (!is_weight_set_semistable(w, ctx))
            throw std::runtime_error("internal error: echelon cross-check disagrees (semistable)");
        return out;
    }
    IntVec expected(r, 0);
    for (std::size_t i = k; i < r; ++i) expected[i] = -1;
    auto adapted = adapted_one_ps(w, ctx);
    if (adapted.lambda != expected)
        throw std::runtime_error("internal error: echelon cross-check disagrees (adapted 1-PS)");
    out.lambda = std::move(expected);
    return out;
}

}  // namespace hnstrat
