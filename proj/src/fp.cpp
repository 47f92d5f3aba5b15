#include "hnstrat/fp.hpp"
#include "hnstrat/linalg.hpp"

#include <algorithm>

namespace hnstrat {

FpMat FpMat::identity(std::uint32_t p, std::size_t n) {
    FpMat m(p, n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

std::uint32_t fp_inv(std::uint32_t a, std::uint32_t p) {
    // extended euclid
    long long t = 0, nt = 1, r = p, nr = a % p;
    while (nr != 0) {
        long long q = r / nr;
        std::swap(t -= q * nt, nt);
        std::swap(r -= q * nr, nr);
    }
    if (r != 1) throw std::domain_error("fp_inv of non-unit");
    return static_cast<std::uint32_t>(t < 0 ? t + p : t);
}

FpMat fp_mul(const FpMat& x, const FpMat& y) {
    if (x.p != y.p || x.cols != y.rows) throw std::invalid_argument("fp_mul mismatch");
    FpMat z(x.p, x.rows, y.cols);
    for (std::size_t i = 0; i < x.rows; ++i)
        for (std::size_t k = 0; k < x.cols; ++k) {
            const std::uint64_t xik = x.at(i, k);
            if (!xik) continue;
            for (std::size_t j = 0; j < y.cols; ++j)
                z.at(i, j) = static_cast<std::uint32_t>((z.at(i, j) + xik * y.at(k, j)) % x.p);
        }
    return z;
}

FpMat fp_add(const FpMat& x, const FpMat& y) {
    if (x.p != y.p || x.rows != y.rows || x.cols != y.cols)
        throw std::invalid_argument("fp_add mismatch");
    FpMat z(x.p, x.rows, x.cols);
    for (std::size_t i = 0; i < x.a.size(); ++i) z.a[i] = (x.a[i] + y.a[i]) % x.p;
    return z;
}

FpMat fp_scale(std::uint32_t c, const FpMat& x) {
    FpMat z(x.p, x.rows, x.cols);
    for (std::size_t i = 0; i < x.a.size(); ++i)
        z.a[i] = static_cast<std::uint32_t>((static_cast<std::uint64_t>(c) * x.a[i]) % x.p);
    return z;
}

bool fp_is_zero(const FpMat& x) {
    return std::all_of(x.a.begin(), x.a.end(), [](std::uint32_t v) { return v == 0; });
}

FpMat reduce_mod_p(const Mat& m, std::uint32_t p) {
    FpMat z(p, m.rows, m.cols);
    for (std::size_t i = 0; i < m.a.size(); ++i) {
        const Rat& q = m.a[i];
        Int den = q.get_den();
        if (mpz_fdiv_ui(den.get_mpz_t(), p) == 0)
            throw std::domain_error("denominator not invertible mod p");
        const std::uint32_t num = static_cast<std::uint32_t>(mpz_fdiv_ui(q.get_num().get_mpz_t(), p));
        const std::uint32_t dn = static_cast<std::uint32_t>(mpz_fdiv_ui(den.get_mpz_t(), p));
        z.a[i] = static_cast<std::uint32_t>((static_cast<std::uint64_t>(num) * fp_inv(dn, p)) % p);
    }
    return z;
}

std::vector<std::size_t> fp_rref(FpMat& m) {
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    const std::uint64_t p = m.p;
    for (std::size_t col = 0; col < m.cols && row < m.rows; ++col) {
        std::size_t piv = row;
        while (piv < m.rows && m.at(piv, col) == 0) ++piv;
        if (piv == m.rows) continue;
        if (piv != row)
            for (std::size_t c = 0; c < m.cols; ++c) std::swap(m.at(row, c), m.at(piv, c));
        const std::uint64_t inv = fp_inv(m.at(row, col), m.p);
        for (std::size_t c = col; c < m.cols; ++c)
            m.at(row, c) = static_cast<std::uint32_t>((m.at(row, c) * inv) % p);
        for (std::size_t r = 0; r < m.rows; ++r) {
            if (r == row) continue;
            const std::uint64_t f = m.at(r, col);
            if (!f) continue;
            for (std::size_t c = col; c < m.cols; ++c)
                m.at(r, c) = static_cast<std::uint32_t>((m.at(r, c) + (p - m.at(row, c)) * f) % p);
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

std::size_t fp_rank(FpMat m) { return fp_rref(m).size(); }

FpMat fp_row_space(FpMat m) {
    const auto pivots = fp_rref(m);
    FpMat z(m.p, pivots.size(), m.cols);
    for (std::size_t r = 0; r < pivots.size(); ++r)
        for (std::size_t c = 0; c < m.cols; ++c) z.at(r, c) = m.at(r, c);
    return z;
}

FpMat fp_vstack(const FpMat& x, const FpMat& y) {
    if (x.p != y.p || x.cols != y.cols) throw std::invalid_argument("fp_vstack mismatch");
    FpMat z(x.p, x.rows + y.rows, x.cols);
    std::copy(x.a.begin(), x.a.end(), z.a.begin());
    std::copy(y.a.begin(), y.a.end(), z.a.begin() + static_cast<long>(x.a.size()));
    return z;
}

bool fp_rows_in_span(const FpMat& space, const FpMat& x) {
    if (x.rows == 0) return true;
    FpMat stacked = fp_vstack(space, x);
    return fp_rank(std::move(stacked)) == space.rows;
}

Int count_subspaces(std::uint32_t p, std::size_t d) {
    // Gaussian binomial recurrence over exact integers.
    std::vector<std::vector<Int>> g(d + 1, std::vector<Int>(d + 1, 0));
    for (std::size_t n = 0; n <= d; ++n) {
        g[n][0] = 1;
        for (std::size_t k = 1; k <= n; ++k) {
            Int pk;
            mpz_ui_pow_ui(pk.get_mpz_t(), p, k);
            g[n][k] = (k == n) ? Int(1) : g[n - 1][k] * pk + g[n - 1][k - 1];
        }
    }
    Int total = 0;
    for (std::size_t k = 0; k <= d; ++k) total += g[d][k];
    return total;
}

namespace {

void fill_free_entries(FpMat& base, const std::vector<std::pair<std::size_t, std::size_t>>& free_pos,
                       std::size_t idx, std::vector<FpMat>& out) {
    if (idx == free_pos.size()) {
        out.push_back(base);
        return;
    }
    for (std::uint32_t v = 0; v < base.p; ++v) {
        base.at(free_pos[idx].first, free_pos[idx].second) = v;
        fill_free_entries(base, free_pos, idx + 1, out);
    }
    base.at(free_pos[idx].first, free_pos[idx].second) = 0;
}

void pivot_combinations(std::size_t d, std::size_t k, std::size_t start, std::vector<std::size_t>& cur,
                        std::uint32_t p, std::vector<FpMat>& out) {
    if (cur.size() == k) {
        FpMat base(p, k, d);
        std::vector<bool> is_piv(d, false);
        for (std::size_t r = 0; r < k; ++r) {
            base.at(r, cur[r]) = 1;
            is_piv[cur[r]] = true;
        }
        std::vector<std::pair<std::size_t, std::size_t>> free_pos;
        for (std::size_t r = 0; r < k; ++r)
            for (std::size_t c = cur[r] + 1; c < d; ++c)
                if (!is_piv[c]) free_pos.emplace_back(r, c);
        fill_free_entries(base, free_pos, 0, out);
        return;
    }
    for (std::size_t c = start; c + (k - cur.size()) <= d; ++c) {
        cur.push_back(c);
        pivot_combinations(d, k, c + 1, cur, p, out);
        cur.pop_back();
    }
}

}  // namespace

std::vector<FpMat> enumerate_subspaces(std::uint32_t p, std::size_t d) {
    std::vector<FpMat> out;
    out.emplace_back(p, 0, d);
    for (std::size_t k = 1; k <= d; ++k) {
        std::vector<std::size_t> cur;
        pivot_combinations(d, k, 0, cur, p, out);
    }
    return out;
}

}  // namespace hnstrat
