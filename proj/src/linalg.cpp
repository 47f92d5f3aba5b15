#include "hnstrat/linalg.hpp"

namespace hnstrat {

Mat Mat::identity(std::size_t n) {
    Mat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

Mat Mat::transpose() const {
    Mat t(cols, rows);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c) t.at(c, r) = at(r, c);
    return t;
}

Mat mat_mul(const Mat& x, const Mat& y) {
    if (x.cols != y.rows) throw std::invalid_argument("mat_mul shape mismatch");
    Mat z(x.rows, y.cols);
    for (std::size_t i = 0; i < x.rows; ++i)
        for (std::size_t k = 0; k < x.cols; ++k) {
            const Rat& xik = x.at(i, k);
            if (sign(xik) == 0) continue;
            for (std::size_t j = 0; j < y.cols; ++j) z.at(i, j) += xik * y.at(k, j);
        }
    return z;
}

Mat mat_add(const Mat& x, const Mat& y) {
    if (x.rows != y.rows || x.cols != y.cols) throw std::invalid_argument("mat_add shape mismatch");
    Mat z(x.rows, x.cols);
    for (std::size_t i = 0; i < x.a.size(); ++i) z.a[i] = x.a[i] + y.a[i];
    return z;
}

Mat mat_scale(const Rat& c, const Mat& x) {
    Mat z(x.rows, x.cols);
    for (std::size_t i = 0; i < x.a.size(); ++i) z.a[i] = c * x.a[i];
    return z;
}

bool is_zero(const Mat& x) {
    for (const Rat& v : x.a)
        if (sign(v) != 0) return false;
    return true;
}

std::vector<std::size_t> rref(Mat& m) {
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < m.cols && row < m.rows; ++col) {
        std::size_t piv = row;
        while (piv < m.rows && sign(m.at(piv, col)) == 0) ++piv;
        if (piv == m.rows) continue;
        for (std::size_t c = 0; c < m.cols; ++c) std::swap(m.at(row, c), m.at(piv, c));
        const Rat inv = 1 / m.at(row, col);
        for (std::size_t c = col; c < m.cols; ++c) m.at(row, c) *= inv;
        for (std::size_t r = 0; r < m.rows; ++r) {
            if (r == row || sign(m.at(r, col)) == 0) continue;
            const Rat f = m.at(r, col);
            for (std::size_t c = col; c < m.cols; ++c) m.at(r, c) -= f * m.at(row, c);
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

std::size_t rank(Mat m) { return rref(m).size(); }

std::pair<std::size_t, std::vector<RatVec>> rank_and_basis(const Mat& m) {
    Mat t = m.transpose();
    const std::size_t rk = rref(t).size();
    std::vector<RatVec> basis;
    basis.reserve(rk);
    for (std::size_t r = 0; r < rk; ++r) {
        RatVec v(t.cols);
        for (std::size_t c = 0; c < t.cols; ++c) v[c] = t.at(r, c);
        basis.push_back(std::move(v));
    }
    return {rk, basis};
}

std::optional<RatVec> solve_linear(Mat m, RatVec b) {
    if (b.size() != m.rows) throw std::invalid_argument("solve_linear shape mismatch");
    Mat aug(m.rows, m.cols + 1);
    for (std::size_t r = 0; r < m.rows; ++r) {
        for (std::size_t c = 0; c < m.cols; ++c) aug.at(r, c) = m.at(r, c);
        aug.at(r, m.cols) = b[r];
    }
    const auto pivots = rref(aug);
    for (std::size_t p : pivots)
        if (p == m.cols) return std::nullopt;  // row (0 ... 0 | 1)
    RatVec x(m.cols, Rat(0));
    for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug.at(r, m.cols);
    return x;
}

std::vector<RatVec> nullspace(Mat m) {
    const std::size_t n = m.cols;
    const auto pivots = rref(m);
    std::vector<bool> is_pivot(n, false);
    for (std::size_t p : pivots) is_pivot[p] = true;
    std::vector<RatVec> basis;
    for (std::size_t free = 0; free < n; ++free) {
        if (is_pivot[free]) continue;
        RatVec v(n, Rat(0));
        v[free] = 1;
        for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m.at(r, free);
        basis.push_back(std::move(v));
    }
    return basis;
}

IntVec primitive_integral(const RatVec& v) {
    Int den = 1;
    bool nonzero = false;
    for (const Rat& x : v) {
        if (sign(x) != 0) nonzero = true;
        Int d;
        mpz_lcm(d.get_mpz_t(), den.get_mpz_t(), x.get_den().get_mpz_t());
        den = d;
    }
    if (!nonzero) throw std::domain_error("no primitive representative");
    IntVec w(v.size());
    Int g = 0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        Rat s = v[i] * Rat(den);
        w[i] = s.get_num();
        Int t;
        mpz_gcd(t.get_mpz_t(), g.get_mpz_t(), w[i].get_mpz_t());
        g = t;
    }
    for (Int& x : w) x /= g;
    return w;
}

Rat dot(const RatVec& x, const RatVec& y) {
    if (x.size() != y.size()) throw std::invalid_argument("dot length mismatch");
    Rat s = 0;
    for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
    return s;
}

Rat dot(const IntVec& x, const IntVec& y) {
    if (x.size() != y.size()) throw std::invalid_argument("dot length mismatch");
    Int s = 0;
    for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
    return Rat(s);
}

Rat dot(const IntVec& x, const RatVec& y) {
    if (x.size() != y.size()) throw std::invalid_argument("dot length mismatch");
    Rat s = 0;
    for (std::size_t i = 0; i < x.size(); ++i) s += Rat(x[i]) * y[i];
    return s;
}

}  // namespace hnstrat
