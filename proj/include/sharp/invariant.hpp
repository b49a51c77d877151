#pragma once

#include "sharp/poly.hpp"

namespace sharp {

// The group-invariant family f_d. For odd d these are the known minimal
// members of H(2,d): f_d = x^d + y^d + sum over s >= 1 of
// (d/s)*C(d-1-s, s-1) x^(d-2s) y^s, with N(f_d) = (d+3)/2.
BivariatePoly invariant_sharp(int d);

// Even-degree variant: equals 1 on x+y=1 but carries one negative term
// (-y^m), so it is not in H(2,m). Used by the substitution constructor.
BivariatePoly invariant_even(int m);

// ((x + s)/2)^d + ((x - s)/2)^d with s^2 = x^2 + 4y, expanded via the
// conjugate-pair trick (only even powers of s survive). Serves as an
// independent second route to the invariant family:
//   odd d:  invariant_sharp(d) == conjugate_line_sum(d) + y^d
//   even m: invariant_even(m)  == conjugate_line_sum(m) - y^m
BivariatePoly conjugate_line_sum(int d);

}  // namespace sharp
