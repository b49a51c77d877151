#pragma once

#include <string>
#include <vector>

#include "sharp/poly.hpp"

namespace sharp {

enum class Sign : char { Z = 0, P = 1, N = 2 };

// Sign pattern of the quotient q with p - 1 = (x+y-1) q, on a
// (d+1) x (d+1) grid indexed by (x-exponent, y-exponent). q has degree
// at most d-1, so every entry with j+k >= d is zero; out-of-grid
// neighbors read as zero as well.
struct SignDiagram {
    int d = 0;
    std::vector<Sign> grid;  // row-major, grid[j*(d+1)+k]

    Sign at(int j, int k) const {
        if (j < 0 || k < 0 || j > d || k > d) return Sign::Z;
        return grid[static_cast<size_t>(j) * (d + 1) + k];
    }
};

SignDiagram sign_diagram(const BivariatePoly& q, int d);

// A sink is a grid position whose {self, left, below} signs force the
// coefficient of x^j y^k in (x+y-1)q to be positive, i.e. a necessarily
// positive term of p. A source is the sign-dual and forces a negative
// term; members of H(2,d) have exactly one source, at the origin,
// matching the -1 of p-1.
struct DiagramAnalysis {
    std::vector<Monomial> sinks;    // sorted canonically
    std::vector<Monomial> sources;  // sorted canonically
    int sink_count = 0;
};

DiagramAnalysis analyze(const SignDiagram& diag);

struct CheckReport {
    bool member_ok = false;
    bool sinks_subset_ok = false;      // sinks(q) contained in support(p)
    bool single_source_ok = false;     // exactly one source, at the origin
    bool sink_bound_ok = false;        // sink count >= ceil((d+3)/2)
    bool sinks_equal_support = false;  // checked when sharp is claimed
    std::vector<Monomial> sink_violations;
    DiagramAnalysis analysis;

    bool ok(bool claimed_sharp) const {
        return member_ok && sinks_subset_ok && single_source_ok && sink_bound_ok &&
               (!claimed_sharp || sinks_equal_support);
    }
};

CheckReport structural_check(const BivariatePoly& p, int d);

// Grid rendering with x-powers as rows (top row x^d) and y-powers as
// columns; sinks are bracketed.
std::string render(const SignDiagram& diag);

}  // namespace sharp
