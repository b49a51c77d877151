#pragma once

#include <cstdint>
#include <vector>

#include "sharp/rational.hpp"

namespace sharp {

struct RationalMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<Rational> a;

    RationalMatrix() = default;
    RationalMatrix(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c) {}
    Rational& at(int r, int c) { return a[static_cast<size_t>(r) * cols + c]; }
    const Rational& at(int r, int c) const { return a[static_cast<size_t>(r) * cols + c]; }
};

// Exact kernel basis via fraction-free (Bareiss) elimination with
// rational back-substitution. Basis vectors are integer-valued, in lowest
// terms (content 1), with their last nonzero coordinate positive.
// A matrix with zero rows has the full space as kernel.
std::vector<std::vector<Rational>> nullspace(const RationalMatrix& m);

int rank(const RationalMatrix& m);

enum class PrefilterResult { DefinitelyTrivialKernel, Unknown };

// Rank of m reduced mod p. If the mod-p rank equals the column count the
// rational kernel is trivial; anything else is inconclusive. Never
// rejects a matrix that has a rational kernel.
PrefilterResult modular_prefilter(const RationalMatrix& m, std::uint64_t p);

// Same elimination machinery on a small integer matrix; used by the
// search hot path.
int rank_mod_p(const std::vector<std::int64_t>& a, int rows, int cols, std::uint64_t p);

std::vector<std::vector<Rational>> nullspace_int(const std::vector<std::int64_t>& a, int rows,
                                                 int cols);

}  // namespace sharp
