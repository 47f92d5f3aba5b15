#include "hnstrat/hilbert.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>

namespace hnstrat {

HilbertPoly HilbertPoly::from_coeffs(RatVec coeffs) {
    while (!coeffs.empty() && sign(coeffs.back()) == 0) coeffs.pop_back();
    if (coeffs.empty()) throw std::domain_error("zero polynomial");
    if (sign(coeffs.back()) <= 0) throw std::domain_error("leading coefficient must be positive");
    HilbertPoly p{std::move(coeffs)};
    for (long j = 0; j <= p.degree(); ++j)
        if (!is_integer(p.eval(j))) throw std::domain_error("polynomial is not integer-valued");
    return p;
}

HilbertPoly HilbertPoly::constant(const Int& c) { return from_coeffs({Rat(c)}); }

HilbertPoly HilbertPoly::linear(const Int& a, const Int& b) { return from_coeffs({Rat(b), Rat(a)}); }

Rat HilbertPoly::eval(const Rat& t) const {
    Rat v = 0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) v = v * t + *it;
    return v;
}

Rat HilbertPoly::eval(long t) const { return eval(Rat(t)); }

bool HilbertPoly::operator<(const HilbertPoly& o) const {
    if (coeffs.size() != o.coeffs.size()) return coeffs.size() < o.coeffs.size();
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        const int c = cmp(coeffs[i], o.coeffs[i]);
        if (c != 0) return c < 0;
    }
    return false;
}

RatVec poly_add(const RatVec& a, const RatVec& b) {
    RatVec out(std::max(a.size(), b.size()), Rat(0));
    for (std::size_t i = 0; i < a.size(); ++i) out[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) out[i] += b[i];
    return out;
}

std::string poly_to_string(const HilbertPoly& p) {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < p.coeffs.size(); ++i)
        os << (i ? "," : "") << rat_to_string(p.coeffs[i]);
    os << "]";
    return os.str();
}

RudakovOrder rudakov_cmp(const HilbertPoly& p, const HilbertPoly& q) {
    const int f = std::max(p.degree(), q.degree());
    auto coeff = [](const HilbertPoly& x, int i) {
        return i <= x.degree() ? x.coeffs[static_cast<std::size_t>(i)] : Rat(0);
    };
    // Lambda(P,Q) = (lambda_{f,f-1}, ..., lambda_{f,0}, lambda_{f-1,f-2}, ...,
    // lambda_{1,0}); the first nonzero entry decides.
    for (int i = f; i >= 1; --i)
        for (int j = i - 1; j >= 0; --j) {
            const Rat lam = coeff(p, i) * coeff(q, j) - coeff(q, i) * coeff(p, j);
            const int s = sign(lam);
            if (s > 0) return RudakovOrder::precedes;
            if (s < 0) return RudakovOrder::succeeds;
        }
    return RudakovOrder::equivalent;
}

RudakovOrder rudakov_asymptotic_oracle(const HilbertPoly& p, const HilbertPoly& q, long scale) {
    int streak = 0;
    int last = 2;
    for (long s = std::max(scale, 2L); s < std::max(scale, 2L) + 1000; ++s) {
        const Rat pn = p.eval(s), pm = p.eval(s * s);
        const Rat qn = q.eval(s), qm = q.eval(s * s);
        if (sign(pn) <= 0 || sign(pm) <= 0 || sign(qn) <= 0 || sign(qm) <= 0) {
            streak = 0;
            continue;
        }
        const int c = cmp(pn * qm, qn * pm);
        if (c == last)
            ++streak;
        else
            streak = 1;
        last = c;
        if (streak == 3) {
            if (c < 0) return RudakovOrder::precedes;
            if (c > 0) return RudakovOrder::succeeds;
            return RudakovOrder::equivalent;
        }
    }
    throw std::runtime_error("asymptotic oracle did not stabilise");
}

SheafHNType SheafHNType::make(std::vector<HilbertPoly> entries) {
    if (entries.empty()) throw std::domain_error("empty HN type");
    RatVec total = entries[0].coeffs;
    for (std::size_t i = 1; i < entries.size(); ++i) {
        if (rudakov_cmp(entries[i - 1], entries[i]) != RudakovOrder::succeeds)
            throw std::domain_error("entries not strictly decreasing in the Rudakov order");
        total = poly_add(total, entries[i].coeffs);
    }
    SheafHNType t;
    t.entries = std::move(entries);
    t.total = HilbertPoly::from_coeffs(std::move(total));
    return t;
}

bool is_hn_type(const std::vector<HilbertPoly>& entries, const HilbertPoly& total) {
    if (entries.empty()) return false;
    RatVec sum;
    for (std::size_t i = 0; i < entries.size(); ++i) {
        if (i > 0 && rudakov_cmp(entries[i - 1], entries[i]) != RudakovOrder::succeeds) return false;
        sum = poly_add(sum, entries[i].coeffs);
    }
    while (!sum.empty() && sign(sum.back()) == 0) sum.pop_back();
    return sum == total.coeffs;
}

namespace {

// Polygonal path through the partial-sum points x_k = (sum P_j(m), sum P_j(n)).
std::vector<std::pair<Rat, Rat>> shatz_path(const SheafHNType& tau, long n, long m) {
    std::vector<std::pair<Rat, Rat>> pts{{Rat(0), Rat(0)}};
    Rat x = 0, y = 0;
    for (const auto& p : tau.entries) {
        x += p.eval(m);
        y += p.eval(n);
        if (x <= pts.back().first) throw std::domain_error("path abscissa not increasing");
        pts.emplace_back(x, y);
    }
    return pts;
}

Rat path_value(const std::vector<std::pair<Rat, Rat>>& pts, const Rat& x) {
    for (std::size_t i = 1; i < pts.size(); ++i) {
        if (x <= pts[i].first) {
            const Rat t = (x - pts[i - 1].first) / (pts[i].first - pts[i - 1].first);
            return pts[i - 1].second + t * (pts[i].second - pts[i - 1].second);
        }
    }
    throw std::domain_error("abscissa outside path");
}

}  // namespace

bool shatz_leq(const SheafHNType& tau, const SheafHNType& tau_prime, long n, long m) {
    if (tau.total != tau_prime.total) throw std::domain_error("HN types have different totals");
    if (m <= n) throw std::domain_error("need m > n");
    const auto a = shatz_path(tau, n, m);
    const auto b = shatz_path(tau_prime, n, m);
    // tau <= tau' iff the path of tau' lies weakly above the path of tau.
    for (const auto& pt : a)
        if (path_value(b, pt.first) < pt.second) return false;
    for (const auto& pt : b)
        if (pt.second < path_value(a, pt.first)) return false;
    return true;
}

QuotIndex beta_nm(const SheafHNType& tau, long n, long m) {
    if (m <= n) throw std::domain_error("need m > n");
    const Rat Pn = tau.total.eval(n), Pm = tau.total.eval(m);
    if (sign(Pn) <= 0) throw std::domain_error("nonpositive P(n)");
    std::vector<std::pair<Rat, Int>> blocks;
    for (const auto& p : tau.entries) {
        const Rat pin = p.eval(n);
        if (sign(pin) <= 0) throw std::domain_error("nonpositive P_i(n)");
        const Rat r = Pm / Pn - p.eval(m) / pin;
        blocks.emplace_back(r, pin.get_num());
    }
    // Weyl representative: weights sorted strictly decreasing, equal weights
    // merged. Small (n, m) may need both; the flag records it.
    bool merged = false;
    for (std::size_t i = 0; i + 1 < blocks.size(); ++i)
        if (!(blocks[i].first > blocks[i + 1].first)) merged = true;
    std::stable_sort(blocks.begin(), blocks.end(),
                     [](const auto& x, const auto& y) { return x.first > y.first; });
    QuotIndex out;
    out.P = tau.total;
    out.n = n;
    out.merged = merged;
    for (const auto& [r, l] : blocks) {
        if (!out.r.empty() && out.r.back() == r)
            out.l.back() += l;
        else {
            out.r.push_back(r);
            out.l.push_back(l);
        }
    }
    Rat check = 0;
    for (std::size_t i = 0; i < out.r.size(); ++i) check += out.r[i] * Rat(out.l[i]);
    if (sign(check) != 0) throw std::runtime_error("internal error: sum r_i l_i != 0");
    return out;
}

bool beta_equal(const SheafHNType& tau, const SheafHNType& tau_prime, long n, long m) {
    if (tau.total != tau_prime.total) throw std::domain_error("HN types have different totals");
    if (tau.entries.size() != tau_prime.entries.size()) return false;
    for (std::size_t i = 0; i < tau.entries.size(); ++i) {
        if (tau.entries[i].eval(n) != tau_prime.entries[i].eval(n)) return false;
        if (tau.entries[i].eval(m) != tau_prime.entries[i].eval(m)) return false;
    }
    return true;
}

namespace {

// Integer-valued polynomials of degree <= deg with binomial-basis
// coefficients in [-bound, bound]: sum c_k binom(t, k).
std::vector<HilbertPoly> enumerate_integer_valued(int deg, long bound) {
    // binom(t, k) as ascending rational coefficient vectors
    std::vector<RatVec> binom(static_cast<std::size_t>(deg) + 1);
    binom[0] = {Rat(1)};
    for (int k = 1; k <= deg; ++k) {
        // binom(t,k) = binom(t,k-1) * (t - k + 1) / k
        const RatVec& prev = binom[static_cast<std::size_t>(k - 1)];
        RatVec next(prev.size() + 1, Rat(0));
        for (std::size_t i = 0; i < prev.size(); ++i) {
            next[i + 1] += prev[i] / k;
            next[i] += prev[i] * Rat(1 - k) / k;
        }
        binom[static_cast<std::size_t>(k)] = std::move(next);
    }
    std::vector<HilbertPoly> out;
    std::vector<long> c(static_cast<std::size_t>(deg) + 1, -bound);
    while (true) {
        RatVec coeffs;
        for (int k = 0; k <= deg; ++k)
            if (c[static_cast<std::size_t>(k)] != 0) {
                RatVec term = binom[static_cast<std::size_t>(k)];
                for (Rat& x : term) x *= c[static_cast<std::size_t>(k)];
                coeffs = poly_add(coeffs, term);
            }
        while (!coeffs.empty() && sign(coeffs.back()) == 0) coeffs.pop_back();
        if (!coeffs.empty() && sign(coeffs.back()) > 0)
            out.push_back(HilbertPoly::from_coeffs(std::move(coeffs)));
        std::size_t i = 0;
        while (i < c.size() && ++c[i] > bound) c[i++] = -bound;
        if (i == c.size()) break;
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::string type_key(const SheafHNType& t, long n, long m) {
    std::ostringstream os;
    os << t.entries.size();
    for (const auto& p : t.entries)
        os << "|" << rat_to_string(p.eval(n)) << "," << rat_to_string(p.eval(m));
    os << "#" << poly_to_string(t.total);
    return os.str();
}

}  // namespace

std::vector<std::pair<SheafHNType, SheafHNType>> collision_search(long n, long m, int deg_bound,
                                                                  long coeff_bound,
                                                                  int parts_bound,
                                                                  unsigned long budget) {
    if (m <= n) throw std::domain_error("need m > n");
    const auto polys = enumerate_integer_valued(deg_bound, coeff_bound);
    std::map<std::string, std::vector<SheafHNType>> groups;
    unsigned long visited = 0;

    std::vector<HilbertPoly> cur;
    std::function<void(std::size_t)> rec = [&](std::size_t) {
        if (!cur.empty()) {
            if (++visited > budget) throw std::domain_error("enumeration budget exceeded");
            SheafHNType t;
            t.entries = cur;
            RatVec total;
            for (const auto& p : cur) total = poly_add(total, p.coeffs);
            t.total = HilbertPoly::from_coeffs(std::move(total));
            auto& g = groups[type_key(t, n, m)];
            if (std::find(g.begin(), g.end(), t) == g.end()) g.push_back(std::move(t));
        }
        if (cur.size() == static_cast<std::size_t>(parts_bound)) return;
        for (const auto& p : polys) {
            if (!cur.empty() && rudakov_cmp(cur.back(), p) != RudakovOrder::succeeds) continue;
            cur.push_back(p);
            rec(0);
            cur.pop_back();
        }
    };
    rec(0);

    std::vector<std::pair<SheafHNType, SheafHNType>> out;
    for (auto& [key, g] : groups)
        for (std::size_t i = 0; i < g.size(); ++i)
            for (std::size_t j = i + 1; j < g.size(); ++j) out.emplace_back(g[i], g[j]);
    return out;
}

KroneckerHNType gamma_of_beta(const QuotIndex& beta, long m) {
    const Rat Pn = beta.P.eval(beta.n), Pm = beta.P.eval(m);
    KroneckerHNType out;
    for (std::size_t i = 0; i < beta.r.size(); ++i) {
        const Rat second = Rat(beta.l[i]) * Pm / Pn - Rat(beta.l[i]) * beta.r[i];
        if (!is_integer(second) || sign(second) <= 0)
            throw std::domain_error("index not realizable");
        out.push_back({beta.l[i], second.get_num()});
    }
    return out;
}

KroneckerHNType gamma_nm(const SheafHNType& tau, long n, long m) {
    KroneckerHNType out;
    for (const auto& p : tau.entries) {
        const Rat a = p.eval(n), b = p.eval(m);
        out.push_back({a.get_num(), b.get_num()});
    }
    return out;
}

AckParams ack_parameters(const HilbertPoly& P, long n, long m) {
    if (m <= n) throw std::domain_error("need m > n");
    const Rat Pn = P.eval(n), Pm = P.eval(m);
    if (sign(Pn) <= 0 || sign(Pm) <= 0) throw std::domain_error("nonpositive evaluation");
    AckParams out;
    out.d = {Pn.get_num(), Pm.get_num()};
    out.theta = {-Pm.get_num(), Pn.get_num()};
    out.alpha = {Pm.get_num(), Pn.get_num()};
    if (sign(Int(out.theta[0] * out.d[0] + out.theta[1] * out.d[1])) != 0)
        throw std::runtime_error("internal error: theta . d != 0");
    return out;
}

MultiParams multi_parameters(const std::vector<long>& ns, const HilbertPoly& P) {
    for (std::size_t i = 1; i < ns.size(); ++i)
        if (ns[i] <= ns[i - 1]) throw std::domain_error("ns must be strictly increasing");
    const std::size_t k = ns.size();
    IntVec vals(k);
    for (std::size_t i = 0; i < k; ++i) {
        const Rat v = P.eval(ns[i]);
        if (sign(v) <= 0) throw std::domain_error("nonpositive evaluation");
        vals[i] = v.get_num();
    }
    MultiParams out;
    out.d = vals;
    out.theta.assign(k, Int(0));
    out.alpha.assign(k, Int(0));
    Int check = 0;
    for (std::size_t i = 0; i < k; ++i) {
        Int lo = 0, hi = 0;
        for (std::size_t j = 0; j < i; ++j) lo += vals[j];
        for (std::size_t j = i + 1; j < k; ++j) hi += vals[j];
        out.theta[i] = lo - hi;
        out.alpha[i] = lo + hi;
        check += out.theta[i] * vals[i];
    }
    if (sign(check) != 0) throw std::runtime_error("internal error: theta . d != 0");
    return out;
}

GammaMulti gamma_multi(const std::vector<long>& ns, const SheafHNType& tau) {
    GammaMulti out;
    for (const auto& p : tau.entries) {
        IntVec row;
        for (long nv : ns) {
            const Rat v = p.eval(nv);
            if (sign(v) <= 0) out.subregular = true;
            row.push_back(v.get_num());
        }
        out.entries.push_back(std::move(row));
    }
    return out;
}

std::vector<std::pair<std::size_t, std::size_t>> injectivity_report(
    const std::vector<SheafHNType>& pool, const std::vector<long>& ns) {
    std::map<std::string, std::vector<std::size_t>> groups;
    for (std::size_t i = 0; i < pool.size(); ++i) {
        std::ostringstream os;
        for (const auto& p : pool[i].entries) {
            os << "|";
            for (long nv : ns) os << rat_to_string(p.eval(nv)) << ",";
        }
        groups[os.str()].push_back(i);
    }
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (const auto& [key, idxs] : groups)
        for (std::size_t i = 0; i < idxs.size(); ++i)
            for (std::size_t j = i + 1; j < idxs.size(); ++j)
                if (!(pool[idxs[i]] == pool[idxs[j]])) out.emplace_back(idxs[i], idxs[j]);
    return out;
}

Rat fixed_locus_weight_check(const RatVec& r, const std::vector<HilbertPoly>& polys,
                             const std::vector<Int>& l, long m) {
    if (r.size() != polys.size() || r.size() != l.size())
        throw std::invalid_argument("length mismatch");
    Rat s = 0;
    for (std::size_t i = 0; i < r.size(); ++i)
        s += r[i] * polys[i].eval(m) + r[i] * r[i] * Rat(l[i]);
    return s;
}

std::vector<std::vector<HilbertPoly>> enumerate_refined_indices(const QuotIndex& beta, long m,
                                                                int degree_cap) {
    if (degree_cap != 1) throw std::domain_error("enumeration unbounded");
    const std::size_t s = beta.r.size();
    const Rat Pn = beta.P.eval(beta.n), Pm = beta.P.eval(m);
    std::vector<std::vector<HilbertPoly>> out;
    if (beta.P.degree() > 1) return out;

    // targets P_i(m) are forced by the index
    std::vector<Int> target(s);
    for (std::size_t i = 0; i < s; ++i) {
        const Rat t = Rat(beta.l[i]) * (Pm / Pn - beta.r[i]);
        if (!is_integer(t) || sign(t) <= 0) return out;
        target[i] = t.get_num();
    }

    // split the leading coefficient of P into nonnegative integer parts
    const Int lead = beta.P.degree() == 1 ? beta.P.coeffs[1].get_num() : Int(0);
    std::vector<Int> a(s, 0);
    std::function<void(std::size_t, Int)> rec = [&](std::size_t i, Int rem) {
        if (i == s) {
            if (sign(rem) != 0) return;
            std::vector<HilbertPoly> tuple;
            for (std::size_t k = 0; k < s; ++k) {
                const Int b = target[k] - a[k] * m;
                if (sign(a[k]) == 0 && sign(b) <= 0) return;
                tuple.push_back(sign(a[k]) == 0 ? HilbertPoly::constant(b)
                                                : HilbertPoly::linear(a[k], b));
            }
            for (std::size_t k = 0; k < s; ++k) {
                if (sign(tuple[k].eval(beta.n)) < 0) return;
                if (k + 1 < s) {
                    // strict ratio chain P_k(n)/P_k(m) > P_{k+1}(n)/P_{k+1}(m)
                    if (!(tuple[k].eval(beta.n) * Rat(target[k + 1]) >
                          tuple[k + 1].eval(beta.n) * Rat(target[k])))
                        return;
                }
            }
            out.push_back(std::move(tuple));
            return;
        }
        for (Int v = 0; v <= rem; ++v) {
            a[i] = v;
            rec(i + 1, rem - v);
        }
        a[i] = 0;
    };
    rec(0, lead);
    return out;
}

}  // namespace hnstrat
