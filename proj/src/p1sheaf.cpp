#include "hnstrat/p1sheaf.hpp"

#include <algorithm>
#include <map>

namespace hnstrat {

SheafP1 SheafP1::make(std::vector<long> degrees, std::vector<TorsionBlock> torsion) {
    std::sort(degrees.begin(), degrees.end(), std::greater<long>());
    for (const auto& t : torsion)
        if (t.length < 1) throw std::invalid_argument("torsion length must be >= 1");
    // canonical order: finite points ascending, then infinity; longer first
    std::stable_sort(torsion.begin(), torsion.end(), [](const TorsionBlock& a, const TorsionBlock& b) {
        if (a.at_infinity != b.at_infinity) return !a.at_infinity;
        if (!a.at_infinity && a.point != b.point) return a.point < b.point;
        return a.length > b.length;
    });
    return SheafP1{std::move(degrees), std::move(torsion)};
}

long SheafP1::torsion_length() const {
    long s = 0;
    for (const auto& t : torsion) s += t.length;
    return s;
}

HilbertPoly hilbert_poly_p1(const SheafP1& e) {
    if (e.is_zero()) throw std::domain_error("zero sheaf");
    Rat c0 = Rat(e.torsion_length());
    for (long a : e.line_degrees) c0 += Rat(a + 1);
    RatVec coeffs{c0, Rat(static_cast<long>(e.line_degrees.size()))};
    while (!coeffs.empty() && sign(coeffs.back()) == 0) coeffs.pop_back();
    return HilbertPoly::from_coeffs(std::move(coeffs));
}

std::pair<long, long> cohomology_dims(const SheafP1& e, long n) {
    long h0 = e.torsion_length(), h1 = 0;
    for (long a : e.line_degrees) {
        h0 += std::max(0L, a + n + 1);
        h1 += std::max(0L, -(a + n) - 1);
    }
    return {h0, h1};
}

long regularity_bound(const SheafP1& e) {
    long n = 0;
    for (long a : e.line_degrees) n = std::max(n, -a);
    return n;
}

SheafHNType sheaf_hn_type(const SheafP1& e) {
    if (e.is_zero()) throw std::domain_error("zero sheaf");
    std::vector<HilbertPoly> entries;
    if (e.torsion_length() > 0) entries.push_back(HilbertPoly::constant(e.torsion_length()));
    // one entry r_a (t + a + 1) per distinct degree a, descending
    std::map<long, long, std::greater<long>> mult;
    for (long a : e.line_degrees) ++mult[a];
    for (const auto& [a, r] : mult) entries.push_back(HilbertPoly::linear(r, r * (a + 1)));
    return SheafHNType::make(std::move(entries));
}

namespace {

struct BasisBlock {
    bool is_line = false;
    long degree = 0;  // line summand degree
    const TorsionBlock* torsion = nullptr;
    long dim = 0;
};

std::vector<BasisBlock> basis_blocks(const SheafP1& e, long n) {
    std::vector<BasisBlock> blocks;
    for (long a : e.line_degrees) {
        BasisBlock b;
        b.is_line = true;
        b.degree = a;
        b.dim = a + n + 1;
        if (b.dim < 0) throw std::domain_error("E not n-regular");
        blocks.push_back(b);
    }
    for (const auto& t : e.torsion) {
        BasisBlock b;
        b.torsion = &t;
        b.dim = t.length;
        blocks.push_back(b);
    }
    return blocks;
}

// Multiplication by the monomial section x0^(k-j) x1^j of O(k) on one
// summand, between the fixed bases of H0(E(n)) and H0(E(n+k)).
void fill_block(Mat& m, std::size_t row_off, std::size_t col_off, const BasisBlock& src, long n,
                long k, long j) {
    if (src.is_line) {
        const long dn = src.degree + n + 1;
        for (long i = 0; i < dn; ++i) m.at(row_off + static_cast<std::size_t>(i + j),
                                           col_off + static_cast<std::size_t>(i)) = 1;
        return;
    }
    const TorsionBlock& t = *src.torsion;
    if (t.at_infinity) {
        // local parameter y = x0/x1; the section acts as y^(k-j)
        const long shift = k - j;
        for (long c = 0; c + shift < t.length && c < t.length; ++c)
            m.at(row_off + static_cast<std::size_t>(c + shift), col_off + static_cast<std::size_t>(c)) = 1;
        return;
    }
    // finite point p: x^j (x-p)^c = sum_w binom(j,w) p^(j-w) (x-p)^(c+w) in
    // k[x]/((x-p)^length)
    std::vector<Int> binom(static_cast<std::size_t>(j) + 1);
    binom[0] = 1;
    for (long w = 1; w <= j; ++w)
        binom[static_cast<std::size_t>(w)] =
            binom[static_cast<std::size_t>(w - 1)] * (j - w + 1) / w;
    std::vector<Rat> ppow(static_cast<std::size_t>(j) + 1);
    ppow[0] = 1;
    for (long q = 1; q <= j; ++q) ppow[static_cast<std::size_t>(q)] = ppow[static_cast<std::size_t>(q - 1)] * t.point;
    for (long c = 0; c < t.length; ++c)
        for (long w = 0; w <= j && c + w < t.length; ++w) {
            const Rat coeff = Rat(binom[static_cast<std::size_t>(w)]) * ppow[static_cast<std::size_t>(j - w)];
            if (sign(coeff) != 0)
                m.at(row_off + static_cast<std::size_t>(c + w),
                     col_off + static_cast<std::size_t>(c)) += coeff;
        }
}

Mat multiplication_matrix(const SheafP1& e, long n, long k, long j) {
    const auto src = basis_blocks(e, n);
    const auto dst = basis_blocks(e, n + k);
    std::size_t rows = 0, cols = 0;
    for (const auto& b : dst) rows += static_cast<std::size_t>(b.dim);
    for (const auto& b : src) cols += static_cast<std::size_t>(b.dim);
    Mat m(rows, cols);
    std::size_t row_off = 0, col_off = 0;
    for (std::size_t b = 0; b < src.size(); ++b) {
        fill_block(m, row_off, col_off, src[b], n, k, j);
        row_off += static_cast<std::size_t>(dst[b].dim);
        col_off += static_cast<std::size_t>(src[b].dim);
    }
    return m;
}

}  // namespace

RepQ phi_nm(const SheafP1& e, long n, long m) {
    if (e.is_zero()) throw std::domain_error("zero sheaf");
    if (m <= n) throw std::domain_error("need m > n");
    if (n < regularity_bound(e)) throw std::domain_error("E not n-regular");
    const long k = m - n;
    RepQ rep;
    rep.quiver.vertices = {std::to_string(n), std::to_string(m)};
    const auto [h0n, h1n] = cohomology_dims(e, n);
    const auto [h0m, h1m] = cohomology_dims(e, m);
    rep.dims = {h0n, h0m};
    for (long j = 0; j <= k; ++j) {
        rep.quiver.arrows.emplace_back(0, 1);
        rep.maps.push_back(multiplication_matrix(e, n, k, j));
    }
    rep.validate();
    return rep;
}

RepQ phi_multi(const SheafP1& e, const std::vector<long>& ns) {
    if (e.is_zero()) throw std::domain_error("zero sheaf");
    if (ns.size() < 2) throw std::domain_error("need at least two twists");
    for (std::size_t i = 1; i < ns.size(); ++i)
        if (ns[i] <= ns[i - 1]) throw std::domain_error("ns must be strictly increasing");
    if (ns[0] < regularity_bound(e)) throw std::domain_error("E not n-regular");
    RepQ rep;
    for (long nv : ns) {
        rep.quiver.vertices.push_back(std::to_string(nv));
        rep.dims.push_back(cohomology_dims(e, nv).first);
    }
    for (std::size_t i = 0; i + 1 < ns.size(); ++i) {
        const long k = ns[i + 1] - ns[i];
        for (long j = 0; j <= k; ++j) {
            rep.quiver.arrows.emplace_back(i, i + 1);
            rep.maps.push_back(multiplication_matrix(e, ns[i], k, j));
        }
    }
    rep.validate();
    return rep;
}

AckReport verify_ack_hn(const SheafP1& e, long n, long m, const std::vector<std::uint32_t>& primes,
                        unsigned long budget) {
    AckReport report;
    report.n = n;
    report.m = m;
    report.tau = sheaf_hn_type(e);
    report.expected = gamma_nm(report.tau, n, m);

    const HilbertPoly P = hilbert_poly_p1(e);
    const AckParams params = ack_parameters(P, n, m);
    RepQ rep = phi_nm(e, n, m);
    StabilityPair sp;
    sp.theta = {params.theta[0], params.theta[1]};
    sp.alpha = {params.alpha[0], params.alpha[1]};
    sp.ambient = rep.dims;

    std::vector<DimVector> gamma;
    if (rep.monomial()) {
        gamma = hn_filtration_quiver(rep, sp, budget).gamma;
    } else {
        MultiPrimeHN mp = hn_via_primes(rep, sp, primes, 3, budget);
        gamma = mp.gamma;
        report.primes_used = mp.primes;
    }
    for (const auto& g : gamma) report.computed.push_back({Int(g[0]), Int(g[1])});
    report.match = (report.computed == report.expected);
    return report;
}

GridReport threshold_grid(const SheafP1& e, long n_max, long m_max,
                          const std::vector<std::uint32_t>& primes, unsigned long budget) {
    GridReport out;
    const long n0 = regularity_bound(e);
    for (long n = n0; n <= n_max; ++n) {
        for (long m = n + 1; m <= m_max; ++m) {
            GridCell cell;
            cell.n = n;
            cell.m = m;
            try {
                AckReport r = verify_ack_hn(e, n, m, primes, budget);
                cell.status = r.match ? 1 : 0;
            } catch (const std::exception& ex) {
                cell.status = -1;
                cell.note = ex.what();
            }
            if (cell.status == 1 && !out.minimal_match) out.minimal_match = {n, m};
            out.cells.push_back(std::move(cell));
        }
    }
    for (const auto& cell : out.cells) {
        if (cell.status != 0) continue;
        for (const auto& prev : out.cells)
            if (prev.status == 1 && prev.n <= cell.n && prev.m <= cell.m) {
                out.nonmonotone.emplace_back(cell.n, cell.m);
                break;
            }
    }
    return out;
}

}  // namespace hnstrat
