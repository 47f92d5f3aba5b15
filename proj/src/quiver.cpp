#include "hnstrat/quiver.hpp"
#include "hnstrat/rng.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>

namespace hnstrat {

void Quiver::validate() const {
    for (const auto& [t, h] : arrows)
        if (t >= vertices.size() || h >= vertices.size())
            throw std::invalid_argument("arrow endpoint out of range");
    for (const auto& rel : relations) {
        if (rel.coeffs.size() != rel.paths.size())
            throw std::invalid_argument("relation coeff/path mismatch");
        if (rel.paths.empty()) throw std::invalid_argument("empty relation");
        std::optional<std::size_t> start, end;
        for (const auto& path : rel.paths) {
            if (path.empty()) throw std::invalid_argument("empty path in relation");
            for (std::size_t i = 0; i < path.size(); ++i) {
                if (path[i] >= arrows.size()) throw std::invalid_argument("path arrow out of range");
                if (i + 1 < path.size() && arrows[path[i]].second != arrows[path[i + 1]].first)
                    throw std::invalid_argument("path not composable");
            }
            const std::size_t s = arrows[path.front()].first;
            const std::size_t e = arrows[path.back()].second;
            if (start && (*start != s || *end != e))
                throw std::invalid_argument("relation paths must share endpoints");
            start = s;
            end = e;
        }
    }
}

void StabilityPair::validate() const {
    if (theta.size() != ambient.size() || alpha.size() != ambient.size())
        throw std::invalid_argument("stability pair size mismatch");
    Int pairing = 0;
    for (std::size_t v = 0; v < ambient.size(); ++v) {
        if (sign(alpha[v]) <= 0) throw std::invalid_argument("alpha entries must be >= 1");
        if (ambient[v] < 0) throw std::invalid_argument("negative dimension");
        pairing += theta[v] * ambient[v];
    }
    if (sign(pairing) != 0) throw std::invalid_argument("theta . d must vanish");
}

Rat theta_of(const DimVector& d, const IntVec& theta) {
    Int s = 0;
    for (std::size_t v = 0; v < d.size(); ++v) s += theta[v] * d[v];
    return Rat(s);
}

Rat alpha_of(const DimVector& d, const IntVec& alpha) {
    Int s = 0;
    for (std::size_t v = 0; v < d.size(); ++v) s += alpha[v] * d[v];
    return Rat(s);
}

Rat slope(const DimVector& d, const StabilityPair& sp) {
    const Rat a = alpha_of(d, sp.alpha);
    if (sign(a) <= 0) throw std::domain_error("slope of zero dimension vector");
    return theta_of(d, sp.theta) / a;
}

void RepQ::validate() const {
    quiver.validate();
    if (dims.size() != quiver.vertices.size()) throw std::invalid_argument("dims size mismatch");
    if (maps.size() != quiver.arrows.size()) throw std::invalid_argument("maps size mismatch");
    for (std::size_t a = 0; a < maps.size(); ++a) {
        const auto [t, h] = quiver.arrows[a];
        if (maps[a].rows != static_cast<std::size_t>(dims[h]) ||
            maps[a].cols != static_cast<std::size_t>(dims[t]))
            throw std::invalid_argument("map shape mismatch");
    }
    if (!quiver.relations.empty() && !check_relations(*this))
        throw std::invalid_argument("representation violates relations");
}

bool RepQ::monomial() const {
    for (const Mat& m : maps)
        for (std::size_t c = 0; c < m.cols; ++c) {
            int nz = 0;
            for (std::size_t r = 0; r < m.rows; ++r)
                if (sign(m.at(r, c)) != 0) ++nz;
            if (nz > 1) return false;
        }
    return true;
}

long RepQ::total_dim() const { return std::accumulate(dims.begin(), dims.end(), 0L); }

void RepF::validate() const {
    quiver.validate();
    if (dims.size() != quiver.vertices.size()) throw std::invalid_argument("dims size mismatch");
    if (maps.size() != quiver.arrows.size()) throw std::invalid_argument("maps size mismatch");
    for (std::size_t a = 0; a < maps.size(); ++a) {
        const auto [t, h] = quiver.arrows[a];
        if (maps[a].p != p || maps[a].rows != static_cast<std::size_t>(dims[h]) ||
            maps[a].cols != static_cast<std::size_t>(dims[t]))
            throw std::invalid_argument("map shape mismatch");
    }
    if (!quiver.relations.empty() && !check_relations(*this))
        throw std::invalid_argument("representation violates relations");
}

long RepF::total_dim() const { return std::accumulate(dims.begin(), dims.end(), 0L); }

RepF reduce_rep_mod_p(const RepQ& rep, std::uint32_t p) {
    RepF out;
    out.quiver = rep.quiver;
    out.p = p;
    out.dims = rep.dims;
    out.maps.reserve(rep.maps.size());
    for (const Mat& m : rep.maps) out.maps.push_back(reduce_mod_p(m, p));
    return out;
}

// ---------------------------------------------------------------------------
// Small field-dispatch helpers shared by the generic algorithms below.

namespace {

struct QOps {
    using M = Mat;
    static M mul(const M& a, const M& b) { return mat_mul(a, b); }
    static M transpose(const M& m) { return m.transpose(); }
    static std::size_t mrank(M m) { return rank(std::move(m)); }
    static bool entry_nonzero(const M& m, std::size_t r, std::size_t c) {
        return sign(m.at(r, c)) != 0;
    }
};

struct FOps {
    using M = FpMat;
    static M mul(const M& a, const M& b) { return fp_mul(a, b); }
    static M transpose(const M& m) {
        M t(m.p, m.cols, m.rows);
        for (std::size_t r = 0; r < m.rows; ++r)
            for (std::size_t c = 0; c < m.cols; ++c) t.at(c, r) = m.at(r, c);
        return t;
    }
    static std::size_t mrank(M m) { return fp_rank(std::move(m)); }
    static bool entry_nonzero(const M& m, std::size_t r, std::size_t c) { return m.at(r, c) != 0; }
};

Mat vstack_rows(const Mat& a, const Mat& b) {
    Mat z(a.rows + b.rows, a.cols);
    std::copy(a.a.begin(), a.a.end(), z.a.begin());
    std::copy(b.a.begin(), b.a.end(), z.a.begin() + static_cast<long>(a.a.size()));
    return z;
}
FpMat vstack_rows(const FpMat& a, const FpMat& b) { return fp_vstack(a, b); }

Mat row_space_of(Mat m) {
    const auto piv = rref(m);
    Mat z(piv.size(), m.cols);
    for (std::size_t r = 0; r < piv.size(); ++r)
        for (std::size_t c = 0; c < m.cols; ++c) z.at(r, c) = m.at(r, c);
    return z;
}
FpMat row_space_of(FpMat m) { return fp_row_space(std::move(m)); }

std::vector<std::size_t> rref_of(Mat& m) { return rref(m); }
std::vector<std::size_t> rref_of(FpMat& m) { return fp_rref(m); }

bool rows_in_span_of(const Mat& space, const Mat& x) {
    if (x.rows == 0) return true;
    Mat s = vstack_rows(space, x);
    return rref(s).size() == space.rows;
}
bool rows_in_span_of(const FpMat& space, const FpMat& x) { return fp_rows_in_span(space, x); }

Mat rows_like(const Mat& like, std::size_t rows) { return Mat(rows, like.cols); }
FpMat rows_like(const FpMat& like, std::size_t rows) { return FpMat(like.p, rows, like.cols); }

Mat mul_rows(const Mat& a, const Mat& b) { return mat_mul(a, b); }
FpMat mul_rows(const FpMat& a, const FpMat& b) { return fp_mul(a, b); }

Mat shaped_like(const Mat&, std::size_t r, std::size_t c) { return Mat(r, c); }
FpMat shaped_like(const FpMat& like, std::size_t r, std::size_t c) { return FpMat(like.p, r, c); }

Rat get_entry(const Mat& m, std::size_t r, std::size_t c) { return m.at(r, c); }
std::uint32_t get_entry(const FpMat& m, std::size_t r, std::size_t c) { return m.at(r, c); }

void set_entry(Mat& m, std::size_t r, std::size_t c, const Rat& v) { m.at(r, c) = v; }
void set_entry(FpMat& m, std::size_t r, std::size_t c, std::uint32_t v) { m.at(r, c) = v; }

// work.row(r) -= f * basis.row(k)
void row_axpy_neg(Mat& work, std::size_t r, const Mat& basis, std::size_t k, const Rat& f) {
    if (sign(f) == 0) return;
    for (std::size_t c = 0; c < work.cols; ++c) work.at(r, c) -= f * basis.at(k, c);
}
void row_axpy_neg(FpMat& work, std::size_t r, const FpMat& basis, std::size_t k, std::uint32_t f) {
    if (!f) return;
    const std::uint64_t p = work.p;
    for (std::size_t c = 0; c < work.cols; ++c)
        work.at(r, c) = static_cast<std::uint32_t>((work.at(r, c) + (p - basis.at(k, c)) * f) % p);
}

Mat scale_int(const Mat& m, const Int& c) { return mat_scale(Rat(c), m); }
FpMat scale_int(const FpMat& m, const Int& c) {
    return fp_scale(static_cast<std::uint32_t>(mpz_fdiv_ui(c.get_mpz_t(), m.p)), m);
}

Mat add_mats(const Mat& a, const Mat& b) { return mat_add(a, b); }
FpMat add_mats(const FpMat& a, const FpMat& b) { return fp_add(a, b); }
bool mat_is_zero(const Mat& m) { return is_zero(m); }
bool mat_is_zero(const FpMat& m) { return fp_is_zero(m); }

Mat identity_for(const RepQ&, std::size_t n) { return Mat::identity(n); }
FpMat identity_for(const RepF& r, std::size_t n) { return FpMat::identity(r.p, n); }
Mat empty_rows_for(const RepQ&, std::size_t cols) { return Mat(0, cols); }
FpMat empty_rows_for(const RepF& r, std::size_t cols) { return FpMat(r.p, 0, cols); }

Mat invert(const Mat& m) {
    Mat aug(m.rows, 2 * m.cols);
    for (std::size_t r = 0; r < m.rows; ++r) {
        for (std::size_t c = 0; c < m.cols; ++c) aug.at(r, c) = m.at(r, c);
        aug.at(r, m.cols + r) = 1;
    }
    if (rref(aug).size() != m.rows) throw std::domain_error("singular matrix");
    Mat inv(m.rows, m.cols);
    for (std::size_t r = 0; r < m.rows; ++r)
        for (std::size_t c = 0; c < m.cols; ++c) inv.at(r, c) = aug.at(r, m.cols + c);
    return inv;
}
FpMat invert(const FpMat& m) {
    FpMat aug(m.p, m.rows, 2 * m.cols);
    for (std::size_t r = 0; r < m.rows; ++r) {
        for (std::size_t c = 0; c < m.cols; ++c) aug.at(r, c) = m.at(r, c);
        aug.at(r, m.cols + r) = 1;
    }
    if (fp_rref(aug).size() != m.rows) throw std::domain_error("singular matrix");
    FpMat inv(m.p, m.rows, m.cols);
    for (std::size_t r = 0; r < m.rows; ++r)
        for (std::size_t c = 0; c < m.cols; ++c) inv.at(r, c) = aug.at(r, m.cols + c);
    return inv;
}

template <class Ops, class RepT>
bool check_relations_generic(const RepT& rep) {
    using M = typename Ops::M;
    for (const auto& rel : rep.quiver.relations) {
        std::optional<M> acc;
        for (std::size_t k = 0; k < rel.paths.size(); ++k) {
            const auto& path = rel.paths[k];
            M prod = rep.maps[path[0]];
            for (std::size_t i = 1; i < path.size(); ++i) prod = Ops::mul(rep.maps[path[i]], prod);
            M term = scale_int(prod, rel.coeffs[k]);
            acc = acc ? add_mats(*acc, term) : term;
        }
        if (acc && !mat_is_zero(*acc)) return false;
    }
    return true;
}

template <class Ops, class RepT, class MatT>
bool is_subrep_impl(const RepT& rep, const std::vector<MatT>& U) {
    if (U.size() != rep.dims.size()) throw std::invalid_argument("subspace tuple size mismatch");
    for (std::size_t v = 0; v < U.size(); ++v)
        if (U[v].cols != static_cast<std::size_t>(rep.dims[v]))
            throw std::invalid_argument("subspace ambient mismatch");
    for (std::size_t a = 0; a < rep.maps.size(); ++a) {
        const auto [t, h] = rep.quiver.arrows[a];
        MatT img = Ops::mul(U[t], Ops::transpose(rep.maps[a]));
        MatT head = row_space_of(U[h]);
        if (!rows_in_span_of(head, img)) return false;
    }
    return true;
}

// Coordinates of ambient row vectors with respect to a rref basis; throws
// when a vector falls outside the span.
template <class MatT>
MatT coords_in_basis(const MatT& basis, const MatT& vecs) {
    MatT b = basis;
    const auto piv = rref_of(b);
    MatT out = shaped_like(basis, vecs.rows, piv.size());
    MatT work = vecs;
    for (std::size_t r = 0; r < vecs.rows; ++r) {
        for (std::size_t k = 0; k < piv.size(); ++k) {
            const auto f = get_entry(work, r, piv[k]);
            set_entry(out, r, k, f);
            row_axpy_neg(work, r, b, k, f);
        }
        for (std::size_t c = 0; c < work.cols; ++c)
            if (get_entry(work, r, c) != decltype(get_entry(work, r, c)){})
                throw std::domain_error("vector not in span");
    }
    return out;
}

template <class Ops, class RepT, class MatT>
RepT restrict_impl(const RepT& rep, const std::vector<MatT>& U) {
    if (!is_subrep_impl<Ops>(rep, U)) throw std::domain_error("not a subrepresentation");
    RepT out = rep;
    std::vector<MatT> bases;
    bases.reserve(U.size());
    for (std::size_t v = 0; v < U.size(); ++v) {
        bases.push_back(row_space_of(U[v]));
        out.dims[v] = static_cast<long>(bases[v].rows);
    }
    for (std::size_t a = 0; a < rep.maps.size(); ++a) {
        const auto [t, h] = rep.quiver.arrows[a];
        MatT img = Ops::mul(bases[t], Ops::transpose(rep.maps[a]));
        out.maps[a] = Ops::transpose(coords_in_basis(bases[h], img));
    }
    return out;
}

template <class Ops, class RepT, class MatT>
RepT quotient_impl(const RepT& rep, const std::vector<MatT>& U) {
    if (!is_subrep_impl<Ops>(rep, U)) throw std::domain_error("not a subrepresentation");
    RepT out = rep;
    std::vector<MatT> bases;
    std::vector<std::vector<std::size_t>> free_cols(U.size());
    for (std::size_t v = 0; v < U.size(); ++v) {
        MatT b = row_space_of(U[v]);
        MatT probe = b;
        const auto piv = rref_of(probe);
        std::vector<bool> is_piv(static_cast<std::size_t>(rep.dims[v]), false);
        for (std::size_t pcol : piv) is_piv[pcol] = true;
        for (std::size_t c = 0; c < static_cast<std::size_t>(rep.dims[v]); ++c)
            if (!is_piv[c]) free_cols[v].push_back(c);
        bases.push_back(std::move(b));
        out.dims[v] = static_cast<long>(free_cols[v].size());
    }
    for (std::size_t a = 0; a < rep.maps.size(); ++a) {
        const auto [t, h] = rep.quiver.arrows[a];
        // images of the complement unit vectors, as rows, reduced mod U_head
        MatT img = shaped_like(bases[h], free_cols[t].size(), static_cast<std::size_t>(rep.dims[h]));
        for (std::size_t j = 0; j < free_cols[t].size(); ++j)
            for (std::size_t r = 0; r < rep.maps[a].rows; ++r)
                set_entry(img, j, r, get_entry(rep.maps[a], r, free_cols[t][j]));
        MatT bh = bases[h];
        MatT probe = bh;
        const auto piv = rref_of(probe);
        for (std::size_t j = 0; j < img.rows; ++j)
            for (std::size_t k = 0; k < piv.size(); ++k)
                row_axpy_neg(img, j, bh, k, get_entry(img, j, piv[k]));
        MatT q = shaped_like(img, free_cols[h].size(), free_cols[t].size());
        for (std::size_t j = 0; j < free_cols[t].size(); ++j)
            for (std::size_t r = 0; r < free_cols[h].size(); ++r)
                set_entry(q, r, j, get_entry(img, j, free_cols[h][r]));
        out.maps[a] = std::move(q);
    }
    return out;
}

}  // namespace

bool check_relations(const RepQ& rep) { return check_relations_generic<QOps>(rep); }
bool check_relations(const RepF& rep) { return check_relations_generic<FOps>(rep); }

bool is_subrepresentation(const RepQ& rep, const std::vector<Mat>& U) {
    return is_subrep_impl<QOps>(rep, U);
}
bool is_subrepresentation(const RepF& rep, const std::vector<FpMat>& U) {
    return is_subrep_impl<FOps>(rep, U);
}

RepQ restrict_rep(const RepQ& rep, const std::vector<Mat>& U) { return restrict_impl<QOps>(rep, U); }
RepF restrict_rep(const RepF& rep, const std::vector<FpMat>& U) { return restrict_impl<FOps>(rep, U); }
RepQ quotient_rep(const RepQ& rep, const std::vector<Mat>& U) { return quotient_impl<QOps>(rep, U); }
RepF quotient_rep(const RepF& rep, const std::vector<FpMat>& U) { return quotient_impl<FOps>(rep, U); }

namespace {

template <class Ops, class RepT, class MatT>
RepT subquotient_impl(const RepT& rep, const std::vector<MatT>& lower,
                      const std::vector<MatT>& upper) {
    RepT sub = restrict_impl<Ops>(rep, upper);
    std::vector<MatT> lower_in_sub;
    lower_in_sub.reserve(upper.size());
    for (std::size_t v = 0; v < upper.size(); ++v)
        lower_in_sub.push_back(coords_in_basis(row_space_of(upper[v]), row_space_of(lower[v])));
    return quotient_impl<Ops>(sub, lower_in_sub);
}

}  // namespace

RepQ subquotient_rep(const RepQ& rep, const std::vector<Mat>& lower, const std::vector<Mat>& upper) {
    return subquotient_impl<QOps>(rep, lower, upper);
}
RepF subquotient_rep(const RepF& rep, const std::vector<FpMat>& lower,
                     const std::vector<FpMat>& upper) {
    return subquotient_impl<FOps>(rep, lower, upper);
}

// ---------------------------------------------------------------------------
// Exhaustive finite-field oracle.

std::vector<std::pair<DimVector, std::vector<FpMat>>> enumerate_subreps_ff(const RepF& rep,
                                                                           unsigned long budget) {
    rep.validate();
    const std::size_t nv = rep.dims.size();
    Int total = 1;
    for (std::size_t v = 0; v < nv; ++v)
        total *= count_subspaces(rep.p, static_cast<std::size_t>(rep.dims[v]));
    if (total > Int(budget))
        throw std::domain_error("subspace enumeration budget exceeded: " + total.get_str() +
                                " tuples");

    std::vector<std::vector<FpMat>> per_vertex(nv);
    for (std::size_t v = 0; v < nv; ++v)
        per_vertex[v] = enumerate_subspaces(rep.p, static_cast<std::size_t>(rep.dims[v]));

    std::vector<std::vector<FpMat>> images(rep.maps.size());
    for (std::size_t a = 0; a < rep.maps.size(); ++a) {
        const auto t = rep.quiver.arrows[a].first;
        const FpMat at = FOps::transpose(rep.maps[a]);
        images[a].reserve(per_vertex[t].size());
        for (const FpMat& u : per_vertex[t]) images[a].push_back(fp_mul(u, at));
    }

    std::vector<std::pair<DimVector, std::vector<FpMat>>> out;
    std::vector<std::size_t> idx(nv, 0);
    while (true) {
        bool closed = true;
        for (std::size_t a = 0; a < rep.maps.size() && closed; ++a) {
            const auto [t, h] = rep.quiver.arrows[a];
            closed = fp_rows_in_span(per_vertex[h][idx[h]], images[a][idx[t]]);
        }
        if (closed) {
            DimVector d(nv);
            std::vector<FpMat> tuple(nv);
            for (std::size_t v = 0; v < nv; ++v) {
                tuple[v] = per_vertex[v][idx[v]];
                d[v] = static_cast<long>(tuple[v].rows);
            }
            out.emplace_back(std::move(d), std::move(tuple));
        }
        std::size_t v = 0;
        while (v < nv && ++idx[v] == per_vertex[v].size()) idx[v++] = 0;
        if (v == nv) break;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Minimal-slope extraction. Each engine returns the unique subrepresentation
// of minimal slope and maximal alpha-dimension; a tie is an internal error.

namespace {

struct ScssF {
    std::vector<FpMat> bases;
    DimVector dims;
};
struct ScssQ {
    std::vector<Mat> bases;
    DimVector dims;
};

int slope_cmp(const DimVector& d1, const DimVector& d2, const StabilityPair& sp) {
    const Rat lhs = theta_of(d1, sp.theta) * alpha_of(d2, sp.alpha);
    const Rat rhs = theta_of(d2, sp.theta) * alpha_of(d1, sp.alpha);
    return cmp(lhs, rhs);
}

bool kronecker_shape(const Quiver& q, std::size_t& tail, std::size_t& head) {
    if (q.vertices.size() != 2 || q.arrows.empty()) return false;
    tail = q.arrows[0].first;
    head = q.arrows[0].second;
    if (tail == head) return false;
    for (const auto& [t, h] : q.arrows)
        if (t != tail || h != head) return false;
    return true;
}

bool kronecker_slope_monotone(const StabilityPair& sp, std::size_t tail, std::size_t head) {
    return sign(Int(sp.theta[head] * sp.alpha[tail] - sp.alpha[head] * sp.theta[tail])) > 0;
}

template <class Scss>
void consider_candidate(std::optional<Scss>& best, bool& tie, const Scss& cand,
                        const StabilityPair& sp) {
    long total = 0;
    for (long d : cand.dims) total += d;
    if (total == 0) return;
    if (!best) {
        best = cand;
        tie = false;
        return;
    }
    const int sc = slope_cmp(cand.dims, best->dims, sp);
    if (sc < 0) {
        best = cand;
        tie = false;
    } else if (sc == 0) {
        const int ac = cmp(alpha_of(cand.dims, sp.alpha), alpha_of(best->dims, sp.alpha));
        if (ac > 0) {
            best = cand;
            tie = false;
        } else if (ac == 0 && !(cand.bases == best->bases)) {
            tie = true;
        }
    }
}

ScssF scss_tuple_fp(const RepF& rep, const StabilityPair& sp, unsigned long budget) {
    auto subreps = enumerate_subreps_ff(rep, budget);
    std::optional<ScssF> best;
    bool tie = false;
    for (auto& [d, tuple] : subreps) consider_candidate(best, tie, ScssF{tuple, d}, sp);
    if (!best) throw std::domain_error("no nonzero subrepresentation");
    if (tie) throw std::runtime_error("internal error: maximal destabiliser not unique");
    return *best;
}

ScssF scss_kronecker_fp(const RepF& rep, const StabilityPair& sp, std::size_t tail,
                        std::size_t head, unsigned long budget) {
    const Int nsub = count_subspaces(rep.p, static_cast<std::size_t>(rep.dims[tail]));
    if (nsub > Int(budget))
        throw std::domain_error("subspace enumeration budget exceeded: " + nsub.get_str() +
                                " subspaces");
    std::vector<FpMat> transposed;
    for (const FpMat& m : rep.maps) transposed.push_back(FOps::transpose(m));

    std::optional<ScssF> best;
    bool tie = false;
    for (const FpMat& u : enumerate_subspaces(rep.p, static_cast<std::size_t>(rep.dims[tail]))) {
        FpMat closure(rep.p, 0, static_cast<std::size_t>(rep.dims[head]));
        for (const FpMat& at : transposed) closure = fp_vstack(closure, fp_mul(u, at));
        closure = fp_row_space(std::move(closure));
        ScssF cand;
        cand.bases.resize(2);
        cand.bases[tail] = u;
        cand.bases[head] = std::move(closure);
        cand.dims.assign(2, 0);
        cand.dims[tail] = static_cast<long>(u.rows);
        cand.dims[head] = static_cast<long>(cand.bases[head].rows);
        consider_candidate(best, tie, cand, sp);
    }
    {
        ScssF cand;  // (0, V_head)
        cand.bases.resize(2);
        cand.bases[tail] = FpMat(rep.p, 0, static_cast<std::size_t>(rep.dims[tail]));
        cand.bases[head] = FpMat::identity(rep.p, static_cast<std::size_t>(rep.dims[head]));
        cand.dims.assign(2, 0);
        cand.dims[head] = rep.dims[head];
        consider_candidate(best, tie, cand, sp);
    }
    if (!best) throw std::domain_error("no nonzero subrepresentation");
    if (tie) throw std::runtime_error("internal error: maximal destabiliser not unique");
    return *best;
}

Mat coord_basis(const std::vector<std::size_t>& idxs, std::size_t dim) {
    Mat m(idxs.size(), dim);
    for (std::size_t r = 0; r < idxs.size(); ++r) m.at(r, idxs[r]) = 1;
    return m;
}

// Bitmask engine for monomial two-vertex representations over Q: coordinate
// subspaces suffice for torus-fixed inputs, and closures are bit unions.
ScssQ scss_kronecker_coord(const RepQ& rep, const StabilityPair& sp, std::size_t tail,
                           std::size_t head, unsigned long budget) {
    const std::size_t dt = static_cast<std::size_t>(rep.dims[tail]);
    const std::size_t dh = static_cast<std::size_t>(rep.dims[head]);
    if (dh > 63 || dt > 62) throw std::domain_error("dimension exceeds bitmask engine range");
    if ((1ull << dt) > budget) throw std::domain_error("coordinate enumeration budget exceeded");

    std::vector<std::uint64_t> tmask(dt, 0);
    for (const Mat& m : rep.maps)
        for (std::size_t c = 0; c < dt; ++c)
            for (std::size_t r = 0; r < dh; ++r)
                if (sign(m.at(r, c)) != 0) tmask[c] |= 1ull << r;

    long th_t, th_h, al_t, al_h;
    if (!sp.theta[tail].fits_slong_p() || !sp.theta[head].fits_slong_p() ||
        !sp.alpha[tail].fits_slong_p() || !sp.alpha[head].fits_slong_p())
        throw std::domain_error("stability parameters too large for bitmask engine");
    th_t = sp.theta[tail].get_si();
    th_h = sp.theta[head].get_si();
    al_t = sp.alpha[tail].get_si();
    al_h = sp.alpha[head].get_si();

    struct Cand {
        bool head_full;
        std::uint64_t mask;
        long u, v;
    };
    std::optional<Cand> best;
    bool tie = false;
    auto offer = [&](const Cand& c) {
        if (c.u == 0 && c.v == 0) return;
        if (!best) {
            best = c;
            tie = false;
            return;
        }
        const __int128 lhs =
            static_cast<__int128>(th_t * c.u + th_h * c.v) * (al_t * best->u + al_h * best->v);
        const __int128 rhs =
            static_cast<__int128>(th_t * best->u + th_h * best->v) * (al_t * c.u + al_h * c.v);
        if (lhs < rhs) {
            best = c;
            tie = false;
        } else if (lhs == rhs) {
            const long ad = (al_t * c.u + al_h * c.v) - (al_t * best->u + al_h * best->v);
            if (ad > 0) {
                best = c;
                tie = false;
            } else if (ad == 0 && (c.head_full != best->head_full || c.mask != best->mask)) {
                tie = true;
            }
        }
    };

    const std::uint64_t nsub = 1ull << dt;
    std::vector<std::uint64_t> closure(nsub, 0);
    for (std::uint64_t s = 1; s < nsub; ++s) {
        const std::uint64_t low = s & (~s + 1);
        closure[s] = closure[s ^ low] | tmask[static_cast<std::size_t>(__builtin_ctzll(low))];
        offer(Cand{false, s, __builtin_popcountll(s), __builtin_popcountll(closure[s])});
    }
    offer(Cand{true, 0, 0, static_cast<long>(dh)});
    if (!best) throw std::domain_error("no nonzero subrepresentation");
    if (tie) throw std::runtime_error("internal error: maximal destabiliser not unique");

    std::vector<std::size_t> ti, hi;
    if (best->head_full) {
        for (std::size_t r = 0; r < dh; ++r) hi.push_back(r);
    } else {
        for (std::size_t c = 0; c < dt; ++c)
            if (best->mask >> c & 1) ti.push_back(c);
        for (std::size_t r = 0; r < dh; ++r)
            if (closure[best->mask] >> r & 1) hi.push_back(r);
    }
    ScssQ out;
    out.bases.resize(2);
    out.dims.assign(2, 0);
    out.bases[tail] = coord_basis(ti, dt);
    out.bases[head] = coord_basis(hi, dh);
    out.dims[tail] = static_cast<long>(ti.size());
    out.dims[head] = static_cast<long>(hi.size());
    return out;
}

// Coordinate-subspace tuples for monomial representations on an arbitrary
// quiver, at small dimensions.
ScssQ scss_coord_tuples(const RepQ& rep, const StabilityPair& sp, unsigned long budget) {
    const std::size_t nv = rep.dims.size();
    Int total = 1;
    for (long d : rep.dims) {
        if (d > 62) throw std::domain_error("dimension exceeds bitmask range");
        total *= Int(1) << static_cast<unsigned>(d);
    }
    if (total > Int(budget)) throw std::domain_error("coordinate enumeration budget exceeded");

    std::vector<std::vector<std::uint64_t>> supp(rep.maps.size());
    for (std::size_t a = 0; a < rep.maps.size(); ++a) {
        const Mat& m = rep.maps[a];
        supp[a].assign(m.cols, 0);
        for (std::size_t c = 0; c < m.cols; ++c)
            for (std::size_t r = 0; r < m.rows; ++r)
                if (sign(m.at(r, c)) != 0) supp[a][c] |= 1ull << r;
    }

    std::vector<std::uint64_t> masks(nv, 0);
    std::optional<ScssQ> best;
    bool tie = false;
    std::function<void(std::size_t)> rec = [&](std::size_t v) {
        if (v == nv) {
            for (std::size_t a = 0; a < rep.maps.size(); ++a) {
                const auto [t, h] = rep.quiver.arrows[a];
                std::uint64_t need = 0;
                for (std::size_t c = 0; c < supp[a].size(); ++c)
                    if (masks[t] >> c & 1) need |= supp[a][c];
                if ((need & ~masks[h]) != 0) return;
            }
            ScssQ cand;
            cand.bases.resize(nv);
            cand.dims.assign(nv, 0);
            for (std::size_t w = 0; w < nv; ++w) {
                std::vector<std::size_t> idxs;
                for (std::size_t c = 0; c < static_cast<std::size_t>(rep.dims[w]); ++c)
                    if (masks[w] >> c & 1) idxs.push_back(c);
                cand.dims[w] = static_cast<long>(idxs.size());
                cand.bases[w] = coord_basis(idxs, static_cast<std::size_t>(rep.dims[w]));
            }
            consider_candidate(best, tie, cand, sp);
            return;
        }
        for (std::uint64_t s = 0; s < (1ull << rep.dims[v]); ++s) {
            masks[v] = s;
            rec(v + 1);
        }
        masks[v] = 0;
    };
    rec(0);
    if (!best) throw std::domain_error("no nonzero subrepresentation");
    if (tie) throw std::runtime_error("internal error: maximal destabiliser not unique");
    return *best;
}

ScssF find_scss(const RepF& rep, const StabilityPair& sp, unsigned long budget) {
    std::size_t t, h;
    if (kronecker_shape(rep.quiver, t, h) && kronecker_slope_monotone(sp, t, h) &&
        count_subspaces(rep.p, static_cast<std::size_t>(rep.dims[t])) <= Int(budget))
        return scss_kronecker_fp(rep, sp, t, h, budget);
    return scss_tuple_fp(rep, sp, budget);
}

ScssQ find_scss(const RepQ& rep, const StabilityPair& sp, unsigned long budget) {
    if (!rep.monomial()) throw std::domain_error("undecidable under configured oracle");
    std::size_t t, h;
    if (kronecker_shape(rep.quiver, t, h) && kronecker_slope_monotone(sp, t, h))
        return scss_kronecker_coord(rep, sp, t, h, budget);
    return scss_coord_tuples(rep, sp, budget);
}

template <class RepT, class MatT, class Scss>
HNResultT<MatT> hn_impl(const RepT& rep, const StabilityPair& sp, unsigned long budget) {
    rep.validate();
    sp.validate();
    if (rep.dims != sp.ambient) throw std::invalid_argument("stability ambient mismatch");
    const std::size_t nv = rep.dims.size();

    HNResultT<MatT> out;
    if (rep.total_dim() == 0) return out;

    RepT cur = rep;
    // lift[v] rows express current quotient coordinates in ambient ones
    std::vector<MatT> lift(nv), accumulated(nv);
    for (std::size_t v = 0; v < nv; ++v) {
        lift[v] = identity_for(rep, static_cast<std::size_t>(rep.dims[v]));
        accumulated[v] = empty_rows_for(rep, static_cast<std::size_t>(rep.dims[v]));
    }

    std::optional<Rat> last_slope;
    while (cur.total_dim() > 0) {
        Scss step = find_scss(cur, sp, budget);
        const Rat s = slope(step.dims, sp);
        if (last_slope && !(s > *last_slope))
            throw std::runtime_error("internal error: HN slopes not increasing");
        last_slope = s;
        out.gamma.push_back(step.dims);

        std::vector<MatT> ambient_step(nv);
        for (std::size_t v = 0; v < nv; ++v) {
            MatT rows = mul_rows(step.bases[v], lift[v]);
            ambient_step[v] = row_space_of(vstack_rows(accumulated[v], rows));
        }
        out.filtration.push_back(ambient_step);
        accumulated = ambient_step;

        bool full = true;
        for (std::size_t v = 0; v < nv; ++v)
            if (step.dims[v] != cur.dims[v]) full = false;
        if (full) break;

        std::vector<std::vector<std::size_t>> free_cols(nv);
        for (std::size_t v = 0; v < nv; ++v) {
            MatT probe = step.bases[v];
            auto piv = rref_of(probe);
            std::vector<bool> is_piv(static_cast<std::size_t>(cur.dims[v]), false);
            for (std::size_t pc : piv) is_piv[pc] = true;
            for (std::size_t c = 0; c < static_cast<std::size_t>(cur.dims[v]); ++c)
                if (!is_piv[c]) free_cols[v].push_back(c);
        }
        RepT q = quotient_rep(cur, step.bases);
        std::vector<MatT> new_lift(nv);
        for (std::size_t v = 0; v < nv; ++v) {
            new_lift[v] = rows_like(lift[v], free_cols[v].size());
            for (std::size_t j = 0; j < free_cols[v].size(); ++j)
                for (std::size_t c = 0; c < lift[v].cols; ++c)
                    set_entry(new_lift[v], j, c, get_entry(lift[v], free_cols[v][j], c));
        }
        lift = std::move(new_lift);
        cur = std::move(q);
    }

    DimVector sum(nv, 0);
    for (const auto& g : out.gamma)
        for (std::size_t v = 0; v < nv; ++v) sum[v] += g[v];
    if (sum != rep.dims) throw std::runtime_error("internal error: HN type does not sum to d");
    return out;
}

}  // namespace

HNResultF hn_filtration_quiver(const RepF& rep, const StabilityPair& sp, unsigned long budget) {
    return hn_impl<RepF, FpMat, ScssF>(rep, sp, budget);
}
HNResultQ hn_filtration_quiver(const RepQ& rep, const StabilityPair& sp, unsigned long budget) {
    return hn_impl<RepQ, Mat, ScssQ>(rep, sp, budget);
}

bool is_slope_semistable(const RepF& rep, const StabilityPair& sp, unsigned long budget) {
    rep.validate();
    if (rep.total_dim() == 0) return true;
    return find_scss(rep, sp, budget).dims == rep.dims;
}
bool is_slope_semistable(const RepQ& rep, const StabilityPair& sp, unsigned long budget) {
    rep.validate();
    if (rep.total_dim() == 0) return true;
    return find_scss(rep, sp, budget).dims == rep.dims;
}

// ---------------------------------------------------------------------------
// King semistability via exact theta minimisation over all subrepresentations.

namespace {

Rat theta_min_fp(const RepF& rep, const StabilityPair& sp, unsigned long budget) {
    std::size_t t, h;
    if (kronecker_shape(rep.quiver, t, h) &&
        count_subspaces(rep.p, static_cast<std::size_t>(rep.dims[t])) <= Int(budget)) {
        Rat best = 0;
        if (sign(sp.theta[h]) >= 0) {
            std::vector<FpMat> transposed;
            for (const FpMat& m : rep.maps) transposed.push_back(FOps::transpose(m));
            for (const FpMat& u :
                 enumerate_subspaces(rep.p, static_cast<std::size_t>(rep.dims[t]))) {
                FpMat closure(rep.p, 0, static_cast<std::size_t>(rep.dims[h]));
                for (const FpMat& at : transposed) closure = fp_vstack(closure, fp_mul(u, at));
                const long v = static_cast<long>(fp_rank(std::move(closure)));
                const Rat val =
                    Rat(sp.theta[t]) * static_cast<long>(u.rows) + Rat(sp.theta[h]) * v;
                if (val < best) best = val;
            }
        } else {
            // theta_head < 0: the minimum pads the head to the full space.
            for (long u : {0L, rep.dims[t]}) {
                const Rat val = Rat(sp.theta[t]) * u + Rat(sp.theta[h]) * rep.dims[h];
                if (val < best) best = val;
            }
        }
        return best;
    }
    Rat best = 0;
    for (const auto& [d, tuple] : enumerate_subreps_ff(rep, budget)) {
        const Rat val = theta_of(d, sp.theta);
        if (val < best) best = val;
    }
    return best;
}

Rat theta_min_q(const RepQ& rep, const StabilityPair& sp, unsigned long budget) {
    if (!rep.monomial()) throw std::domain_error("undecidable under configured oracle");
    std::size_t t, h;
    if (kronecker_shape(rep.quiver, t, h)) {
        const std::size_t dt = static_cast<std::size_t>(rep.dims[t]);
        const std::size_t dh = static_cast<std::size_t>(rep.dims[h]);
        if (dh > 63 || dt > 62 || (1ull << dt) > budget)
            throw std::domain_error("coordinate enumeration budget exceeded");
        Rat best = 0;
        if (sign(sp.theta[h]) >= 0) {
            std::vector<std::uint64_t> tmask(dt, 0);
            for (const Mat& m : rep.maps)
                for (std::size_t c = 0; c < dt; ++c)
                    for (std::size_t r = 0; r < dh; ++r)
                        if (sign(m.at(r, c)) != 0) tmask[c] |= 1ull << r;
            std::vector<std::uint64_t> closure(1ull << dt, 0);
            for (std::uint64_t s = 1; s < (1ull << dt); ++s) {
                const std::uint64_t low = s & (~s + 1);
                closure[s] =
                    closure[s ^ low] | tmask[static_cast<std::size_t>(__builtin_ctzll(low))];
                const Rat val = Rat(sp.theta[t]) * __builtin_popcountll(s) +
                                Rat(sp.theta[h]) * __builtin_popcountll(closure[s]);
                if (val < best) best = val;
            }
        } else {
            for (long u : {0L, rep.dims[t]}) {
                const Rat val = Rat(sp.theta[t]) * u + Rat(sp.theta[h]) * rep.dims[h];
                if (val < best) best = val;
            }
        }
        return best;
    }
    const std::size_t nv = rep.dims.size();
    Int total = 1;
    for (long d : rep.dims) {
        if (d > 62) throw std::domain_error("dimension exceeds bitmask range");
        total *= Int(1) << static_cast<unsigned>(d);
    }
    if (total > Int(budget)) throw std::domain_error("coordinate enumeration budget exceeded");
    std::vector<std::vector<std::uint64_t>> supp(rep.maps.size());
    for (std::size_t a = 0; a < rep.maps.size(); ++a) {
        const Mat& m = rep.maps[a];
        supp[a].assign(m.cols, 0);
        for (std::size_t c = 0; c < m.cols; ++c)
            for (std::size_t r = 0; r < m.rows; ++r)
                if (sign(m.at(r, c)) != 0) supp[a][c] |= 1ull << r;
    }
    Rat best = 0;
    std::vector<std::uint64_t> masks(nv, 0);
    std::function<void(std::size_t)> rec = [&](std::size_t v) {
        if (v == nv) {
            for (std::size_t a = 0; a < rep.maps.size(); ++a) {
                const auto [t2, h2] = rep.quiver.arrows[a];
                std::uint64_t need = 0;
                for (std::size_t c = 0; c < supp[a].size(); ++c)
                    if (masks[t2] >> c & 1) need |= supp[a][c];
                if ((need & ~masks[h2]) != 0) return;
            }
            Rat val = 0;
            for (std::size_t w = 0; w < nv; ++w)
                val += Rat(sp.theta[w]) * __builtin_popcountll(masks[w]);
            if (val < best) best = val;
            return;
        }
        for (std::uint64_t s = 0; s < (1ull << rep.dims[v]); ++s) {
            masks[v] = s;
            rec(v + 1);
        }
        masks[v] = 0;
    };
    rec(0);
    return best;
}

}  // namespace

bool is_theta_semistable(const RepF& rep, const StabilityPair& sp, unsigned long budget) {
    rep.validate();
    sp.validate();
    if (rep.dims != sp.ambient) throw std::invalid_argument("stability ambient mismatch");
    return sign(theta_min_fp(rep, sp, budget)) >= 0;
}

bool is_theta_semistable(const RepQ& rep, const StabilityPair& sp, unsigned long budget) {
    rep.validate();
    sp.validate();
    if (rep.dims != sp.ambient) throw std::invalid_argument("stability ambient mismatch");
    return sign(theta_min_q(rep, sp, budget)) >= 0;
}

// ---------------------------------------------------------------------------
// lambda_gamma and the empirical Hesselink comparison.

LambdaGamma lambda_gamma(const std::vector<DimVector>& gamma, const StabilityPair& sp) {
    // theta . ambient = 0 is deliberately not required here: the weight
    // formula is well-defined for any pair, and twisted parameters use it so.
    if (sp.theta.size() != sp.ambient.size() || sp.alpha.size() != sp.ambient.size())
        throw std::invalid_argument("stability pair size mismatch");
    for (const Int& a : sp.alpha)
        if (sign(a) <= 0) throw std::invalid_argument("alpha entries must be >= 1");
    const std::size_t nv = sp.ambient.size();
    DimVector sum(nv, 0);
    std::optional<Rat> last;
    std::vector<Rat> r;
    for (const DimVector& d : gamma) {
        if (d.size() != nv) throw std::domain_error("invalid HN type");
        long total = 0;
        for (std::size_t v = 0; v < nv; ++v) {
            if (d[v] < 0) throw std::domain_error("invalid HN type");
            sum[v] += d[v];
            total += d[v];
        }
        if (total == 0) throw std::domain_error("invalid HN type");
        const Rat s = slope(d, sp);
        if (last && !(s > *last)) throw std::domain_error("invalid HN type");
        last = s;
        r.push_back(-theta_of(d, sp.theta) / alpha_of(d, sp.alpha));
    }
    if (sum != sp.ambient) throw std::domain_error("invalid HN type");

    LambdaGamma out;
    out.weights.resize(nv);
    RatVec concat;
    for (std::size_t v = 0; v < nv; ++v) {
        for (std::size_t i = 0; i < gamma.size(); ++i)
            for (long k = 0; k < gamma[i][v]; ++k) out.weights[v].push_back(r[i]);
        concat.insert(concat.end(), out.weights[v].begin(), out.weights[v].end());
    }
    out.is_zero =
        std::all_of(concat.begin(), concat.end(), [](const Rat& x) { return sign(x) == 0; });
    out.primitive.resize(nv);
    if (out.is_zero) {
        for (std::size_t v = 0; v < nv; ++v) out.primitive[v].assign(out.weights[v].size(), Int(0));
    } else {
        IntVec prim = primitive_integral(concat);
        std::size_t off = 0;
        for (std::size_t v = 0; v < nv; ++v) {
            out.primitive[v].assign(prim.begin() + static_cast<long>(off),
                                    prim.begin() + static_cast<long>(off + out.weights[v].size()));
            off += out.weights[v].size();
        }
    }
    return out;
}

Rat pairing_rho_theta(const std::vector<RatVec>& weights, const IntVec& theta) {
    Rat s = 0;
    for (std::size_t v = 0; v < weights.size(); ++v) {
        Rat t = 0;
        for (const Rat& w : weights[v]) t += w;
        s += Rat(theta[v]) * t;
    }
    return s;
}

Rat pairing_rho_theta(const std::vector<IntVec>& weights, const IntVec& theta) {
    Int s = 0;
    for (std::size_t v = 0; v < weights.size(); ++v) {
        Int t = 0;
        for (const Int& w : weights[v]) t += w;
        s += theta[v] * t;
    }
    return Rat(s);
}

namespace {

template <class RepT, class Ops>
bool limit_exists_impl(const RepT& rep, const std::vector<RatVec>& weights) {
    if (weights.size() != rep.dims.size()) throw std::invalid_argument("weight tuple size mismatch");
    for (std::size_t v = 0; v < weights.size(); ++v)
        if (weights[v].size() != static_cast<std::size_t>(rep.dims[v]))
            throw std::invalid_argument("weight list length mismatch");
    for (std::size_t a = 0; a < rep.maps.size(); ++a) {
        const auto [t, h] = rep.quiver.arrows[a];
        const auto& m = rep.maps[a];
        for (std::size_t r = 0; r < m.rows; ++r)
            for (std::size_t c = 0; c < m.cols; ++c)
                if (Ops::entry_nonzero(m, r, c) && weights[h][r] < weights[t][c]) return false;
    }
    return true;
}

}  // namespace

bool limit_exists(const RepQ& rep, const std::vector<RatVec>& weights) {
    return limit_exists_impl<RepQ, QOps>(rep, weights);
}
bool limit_exists(const RepF& rep, const std::vector<RatVec>& weights) {
    return limit_exists_impl<RepF, FOps>(rep, weights);
}

namespace {

// Change to the basis whose vectors are the rows of basis_rows[v]:
// A' = B_h^{-1} A B_t with B_v = transpose(basis_rows[v]).
template <class RepT, class MatT, class Ops>
RepT to_new_basis(const RepT& rep, const std::vector<MatT>& basis_rows) {
    RepT out = rep;
    std::vector<MatT> b, binv;
    for (const MatT& g : basis_rows) {
        b.push_back(Ops::transpose(g));
        binv.push_back(invert(b.back()));
    }
    for (std::size_t a = 0; a < rep.maps.size(); ++a) {
        const auto [t, h] = rep.quiver.arrows[a];
        out.maps[a] = Ops::mul(Ops::mul(binv[h], rep.maps[a]), b[t]);
    }
    return out;
}

template <class RepT, class MatT, class Ops>
RepT conjugate_rep(const RepT& rep, const std::vector<MatT>& g) {
    RepT out = rep;
    std::vector<MatT> ginv;
    ginv.reserve(g.size());
    for (const MatT& gv : g) ginv.push_back(invert(gv));
    for (std::size_t a = 0; a < rep.maps.size(); ++a) {
        const auto [t, h] = rep.quiver.arrows[a];
        out.maps[a] = Ops::mul(Ops::mul(g[h], rep.maps[a]), ginv[t]);
    }
    return out;
}

Mat random_invertible(Rng& rng, std::size_t n, const RepQ&) {
    while (true) {
        Mat g(n, n);
        for (auto& x : g.a) x = make_rat(rng.range(-2, 2));
        if (n == 0 || rank(g) == n) return g;
    }
}

FpMat random_invertible(Rng& rng, std::size_t n, const RepF& rep) {
    while (true) {
        FpMat g(rep.p, n, n);
        for (auto& x : g.a) x = static_cast<std::uint32_t>(rng.below(rep.p));
        if (n == 0 || fp_rank(g) == n) return g;
    }
}

std::size_t rref_count(Mat m) { return rref(m).size(); }
std::size_t rref_count(FpMat m) { return fp_rref(m).size(); }

// Rows spanning the filtration steps in order, completing each step.
template <class RepT, class MatT>
std::vector<MatT> adapted_basis(const RepT& rep, const HNResultT<MatT>& hn) {
    const std::size_t nv = rep.dims.size();
    std::vector<MatT> g(nv);
    for (std::size_t v = 0; v < nv; ++v) {
        MatT rows = empty_rows_for(rep, static_cast<std::size_t>(rep.dims[v]));
        for (const auto& step : hn.filtration) {
            const MatT& cand = step[v];
            for (std::size_t r = 0; r < cand.rows; ++r) {
                MatT one = rows_like(rows, 1);
                for (std::size_t c = 0; c < one.cols; ++c) set_entry(one, 0, c, get_entry(cand, r, c));
                if (rref_count(vstack_rows(rows, one)) == rows.rows + 1)
                    rows = vstack_rows(rows, one);
            }
        }
        if (rows.rows != static_cast<std::size_t>(rep.dims[v]))
            throw std::runtime_error("internal error: adapted basis incomplete");
        g[v] = std::move(rows);
    }
    return g;
}

template <class RepT, class MatT, class Ops>
HesselinkReport verify_impl(const RepT& rep, const StabilityPair& sp, long bound, long conjugates,
                            std::uint64_t seed, unsigned long budget) {
    rep.validate();
    sp.validate();
    HesselinkReport report;
    const std::size_t nv = rep.dims.size();
    const long total = rep.total_dim();
    if (total == 0) {
        report.semistable = true;
        report.ok = true;
        return report;
    }
    double combos = 1;
    for (long i = 0; i < total; ++i) combos *= static_cast<double>(2 * bound + 1);
    if (combos > static_cast<double>(budget) * 64.0)
        throw std::domain_error("competitor enumeration budget exceeded");

    HNResultT<MatT> hn = hn_filtration_quiver(rep, sp, budget);
    report.gamma = hn.gamma;
    LambdaGamma lg = lambda_gamma(hn.gamma, sp);
    report.lambda = lg.primitive;
    report.semistable = lg.is_zero;

    auto g = adapted_basis(rep, hn);
    RepT rep_ad = to_new_basis<RepT, MatT, Ops>(rep, g);
    if (!limit_exists(rep_ad, lg.weights))
        throw std::runtime_error("internal error: HN filtration not graded along lambda_gamma");

    long tgt_pair = 0, tgt_nsq = 0;
    if (!lg.is_zero) {
        NormValue target{pairing_rho_theta(lg.primitive, sp.theta), Rat(0)};
        Rat nsq = 0;
        for (std::size_t v = 0; v < nv; ++v)
            for (const Int& w : lg.primitive[v]) nsq += Rat(sp.alpha[v]) * Rat(w) * Rat(w);
        target.norm_sq = nsq;
        report.lambda_value = target;
        if (!target.pairing.get_num().fits_slong_p() || !target.norm_sq.get_num().fits_slong_p())
            throw std::domain_error("lambda value too large for competitor search");
        tgt_pair = target.pairing.get_num().get_si();
        tgt_nsq = target.norm_sq.get_num().get_si();
    }

    std::vector<long> theta_l(nv), alpha_l(nv);
    for (std::size_t v = 0; v < nv; ++v) {
        if (!sp.theta[v].fits_slong_p() || !sp.alpha[v].fits_slong_p())
            throw std::domain_error("stability parameters too large for competitor search");
        theta_l[v] = sp.theta[v].get_si();
        alpha_l[v] = sp.alpha[v].get_si();
    }

    std::vector<long> vtx_of(static_cast<std::size_t>(total));
    {
        std::size_t k = 0;
        for (std::size_t v = 0; v < nv; ++v)
            for (long i = 0; i < rep.dims[v]; ++i) vtx_of[k++] = static_cast<long>(v);
    }

    Rng rng(seed);
    report.ok = true;
    for (long b = 0; b <= conjugates; ++b) {
        RepT basis_rep = rep_ad;
        if (b > 0) {
            std::vector<MatT> h(nv);
            for (std::size_t v = 0; v < nv; ++v)
                h[v] = random_invertible(rng, static_cast<std::size_t>(rep.dims[v]), rep);
            basis_rep = conjugate_rep<RepT, MatT, Ops>(rep_ad, h);
        }
        std::vector<std::pair<int, int>> need;  // w[first] >= w[second]
        {
            std::vector<long> offset(nv, 0);
            long off = 0;
            for (std::size_t v = 0; v < nv; ++v) {
                offset[v] = off;
                off += rep.dims[v];
            }
            for (std::size_t a = 0; a < basis_rep.maps.size(); ++a) {
                const auto [t, h2] = rep.quiver.arrows[a];
                const auto& m = basis_rep.maps[a];
                for (std::size_t r = 0; r < m.rows; ++r)
                    for (std::size_t c = 0; c < m.cols; ++c)
                        if (Ops::entry_nonzero(m, r, c))
                            need.emplace_back(static_cast<int>(offset[h2] + r),
                                              static_cast<int>(offset[t] + c));
            }
            std::sort(need.begin(), need.end());
            need.erase(std::unique(need.begin(), need.end()), need.end());
        }

        std::vector<long> w(static_cast<std::size_t>(total), -bound);
        bool done = false;
        while (!done) {
            long pair = 0, nsq = 0;
            bool nonzero = false;
            for (long i = 0; i < total; ++i) {
                const long wi = w[static_cast<std::size_t>(i)];
                if (wi) nonzero = true;
                pair += theta_l[static_cast<std::size_t>(vtx_of[static_cast<std::size_t>(i)])] * wi;
                nsq += alpha_l[static_cast<std::size_t>(vtx_of[static_cast<std::size_t>(i)])] * wi * wi;
            }
            if (nonzero) {
                ++report.competitors;
                bool beats = false;
                bool want_limit = (b == 0);
                if (report.semistable) {
                    beats = pair < 0;
                    want_limit = want_limit || beats;
                } else if (pair < 0) {
                    const __int128 lhs = static_cast<__int128>(pair) * pair * tgt_nsq;
                    const __int128 rhs = static_cast<__int128>(tgt_pair) * tgt_pair * nsq;
                    beats = lhs > rhs;
                    want_limit = want_limit || beats;
                }
                if (want_limit) {
                    bool lim = true;
                    for (const auto& [hi, ti] : need)
                        if (w[static_cast<std::size_t>(hi)] < w[static_cast<std::size_t>(ti)]) {
                            lim = false;
                            break;
                        }
                    if (lim) {
                        ++report.with_limit;
                        if (b == 0) {
                            NormValue v{Rat(pair), Rat(nsq)};
                            if (!report.best_competitor ||
                                compare_norm_values(v, *report.best_competitor) < 0)
                                report.best_competitor = v;
                        }
                        if (beats) {
                            ++report.violations;
                            report.ok = false;
                        }
                    }
                }
            }
            std::size_t i = 0;
            while (i < static_cast<std::size_t>(total) && ++w[i] > bound) w[i++] = -bound;
            done = (i == static_cast<std::size_t>(total));
        }
    }
    return report;
}

}  // namespace

HesselinkReport verify_hn_equals_hesselink(const RepF& rep, const StabilityPair& sp, long bound,
                                           long conjugates, std::uint64_t seed,
                                           unsigned long budget) {
    return verify_impl<RepF, FpMat, FOps>(rep, sp, bound, conjugates, seed, budget);
}
HesselinkReport verify_hn_equals_hesselink(const RepQ& rep, const StabilityPair& sp, long bound,
                                           long conjugates, std::uint64_t seed,
                                           unsigned long budget) {
    return verify_impl<RepQ, Mat, QOps>(rep, sp, bound, conjugates, seed, budget);
}

MultiPrimeHN hn_via_primes(const RepQ& rep, const StabilityPair& sp,
                           const std::vector<std::uint32_t>& candidates, std::size_t want,
                           unsigned long budget) {
    rep.validate();
    std::vector<std::size_t> ranks;
    for (const Mat& m : rep.maps) ranks.push_back(rank(m));
    bool have_stack = false;
    std::size_t stack_rank = 0;
    {
        std::size_t t0, h0;
        if (!rep.maps.empty() && kronecker_shape(rep.quiver, t0, h0)) {
            Mat s(0, rep.maps[0].cols);
            for (const Mat& m : rep.maps) s = vstack_rows(s, m);
            stack_rank = rank(std::move(s));
            have_stack = true;
        }
    }

    MultiPrimeHN out;
    std::optional<std::vector<DimVector>> gamma;
    for (std::uint32_t p : candidates) {
        if (out.primes.size() == want) break;
        RepF rp;
        try {
            rp = reduce_rep_mod_p(rep, p);
        } catch (const std::domain_error&) {
            continue;
        }
        bool ok = true;
        for (std::size_t a = 0; a < rp.maps.size(); ++a)
            if (fp_rank(rp.maps[a]) != ranks[a]) ok = false;
        if (ok && have_stack) {
            FpMat s(p, 0, rp.maps[0].cols);
            for (const FpMat& m : rp.maps) s = fp_vstack(s, m);
            if (fp_rank(std::move(s)) != stack_rank) ok = false;
        }
        if (!ok) continue;
        HNResultF hn = hn_filtration_quiver(rp, sp, budget);
        if (!gamma) {
            gamma = hn.gamma;
        } else if (*gamma != hn.gamma) {
            throw std::domain_error("oracle disagreement across primes");
        }
        out.primes.push_back(p);
    }
    if (out.primes.size() < want)
        throw std::domain_error("not enough rank-preserving primes available");
    out.gamma = *gamma;
    return out;
}

}  // namespace hnstrat
