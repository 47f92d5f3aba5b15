#pragma once

#include "hnstrat/exact.hpp"

#include <cstddef>
#include <utility>
#include <vector>

namespace hnstrat {

// Dense rational matrix, row major. Dimension metadata is authoritative;
// the entry vector always has rows*cols elements.
struct Mat {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<Rat> a;

    Mat() = default;
    Mat(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c, Rat(0)) {}

    Rat& at(std::size_t r, std::size_t c) { return a[r * cols + c]; }
    const Rat& at(std::size_t r, std::size_t c) const { return a[r * cols + c]; }

    static Mat identity(std::size_t n);
    Mat transpose() const;

    bool operator==(const Mat& o) const = default;
};

Mat mat_mul(const Mat& x, const Mat& y);
Mat mat_add(const Mat& x, const Mat& y);
Mat mat_scale(const Rat& c, const Mat& x);
bool is_zero(const Mat& x);

// In-place reduced row echelon form; returns the pivot columns in order.
std::vector<std::size_t> rref(Mat& m);

std::size_t rank(Mat m);

// Rank plus a canonical basis of the column space: the nonzero rows of the
// reduced echelon form of the transpose, so the output is deterministic and
// stable under row operations on the input.
std::pair<std::size_t, std::vector<RatVec>> rank_and_basis(const Mat& m);

// Solves m x = b exactly. Returns nullopt when inconsistent; when the system
// is underdetermined, free variables are set to zero (deterministic).
std::optional<RatVec> solve_linear(Mat m, RatVec b);

// Canonical basis of the null space {x : m x = 0} (one vector per free
// column of the rref, in column order).
std::vector<RatVec> nullspace(Mat m);

// The unique positive multiple of v with coprime integer entries.
// Throws std::domain_error("no primitive representative") on v = 0.
IntVec primitive_integral(const RatVec& v);

Rat dot(const RatVec& x, const RatVec& y);
Rat dot(const IntVec& x, const IntVec& y);
Rat dot(const IntVec& x, const RatVec& y);

}  // namespace hnstrat
