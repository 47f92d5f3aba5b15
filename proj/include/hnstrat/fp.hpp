#pragma once

#include "hnstrat/exact.hpp"

#include <cstdint>
#include <vector>

namespace hnstrat {

// Dense matrix over the prime field F_p. Entries are always reduced mod p.
struct FpMat {
    std::uint32_t p = 2;
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<std::uint32_t> a;

    FpMat() = default;
    FpMat(std::uint32_t p_, std::size_t r, std::size_t c) : p(p_), rows(r), cols(c), a(r * c, 0) {}

    std::uint32_t& at(std::size_t r, std::size_t c) { return a[r * cols + c]; }
    std::uint32_t at(std::size_t r, std::size_t c) const { return a[r * cols + c]; }

    static FpMat identity(std::uint32_t p, std::size_t n);
    bool operator==(const FpMat& o) const = default;
};

std::uint32_t fp_inv(std::uint32_t a, std::uint32_t p);

FpMat fp_mul(const FpMat& x, const FpMat& y);
FpMat fp_add(const FpMat& x, const FpMat& y);
FpMat fp_scale(std::uint32_t c, const FpMat& x);
bool fp_is_zero(const FpMat& x);

// Reduce a rational matrix mod p. Throws std::domain_error when p divides a
// denominator.
FpMat reduce_mod_p(const struct Mat& m, std::uint32_t p);

std::vector<std::size_t> fp_rref(FpMat& m);
std::size_t fp_rank(FpMat m);

// Canonical form of the row span: rref with zero rows dropped.
FpMat fp_row_space(FpMat m);

// Stacks two row sets (same p, same cols).
FpMat fp_vstack(const FpMat& x, const FpMat& y);

// True if every row of x lies in the row span of the rref matrix `space`.
bool fp_rows_in_span(const FpMat& space, const FpMat& x);

// Number of subspaces of F_p^d (sum of Gaussian binomials), as a bignum so
// budget checks never overflow.
Int count_subspaces(std::uint32_t p, std::size_t d);

// All subspaces of F_p^d as canonical rref bases (rank 0 included as a 0xd
// matrix), in a fixed deterministic order: by dimension, then pivot columns
// lexicographically, then free entries lexicographically.
std::vector<FpMat> enumerate_subspaces(std::uint32_t p, std::size_t d);

}  // namespace hnstrat
