#pragma once

#include <optional>
#include <vector>

#include "sharp/poly.hpp"

namespace sharp {

// f = x^d1 + y^d1 * q + p0 where p = x^d1 + y^d1 + p0; glues two odd-degree
// minimal members into an even-degree one with N(f) = N(p) + N(q) - 1.
BivariatePoly compose_even(const BivariatePoly& p, const BivariatePoly& q);

struct SubstitutionParams {
    int m = 0;  // even, m < d
    int j = 0;
    int k = 0;
    Rational c;  // > 0
};

struct Candidate {
    SubstitutionParams params;
    BivariatePoly poly;
    bool accepted = false;
};

// g = f - c x^j y^k (f_m - 1). The right-hand side keeps g equal to 1 on
// x+y=1; g is accepted when it stays nonnegative with the same degree and
// term count as f.
Candidate substitute(const BivariatePoly& f, int d, const SubstitutionParams& params);

// All candidate parameter choices whose substitution can cancel at least
// one term of f exactly; every accepted substitution arises this way.
std::vector<Candidate> substitution_candidates(const BivariatePoly& f, int d);

struct ScanRecord {
    int degree = 0;
    bool found_noninvariant = false;
    std::optional<SubstitutionParams> witness_params;
    std::optional<BivariatePoly> witness;
};

// Runs the substitution procedure from the invariant polynomial of each
// odd degree in d_set; depth > 1 re-applies it to everything found.
std::vector<ScanRecord> scan_uniqueness(const std::vector<int>& d_set, int depth = 1);

// 7, 97, 1351, 18817, 262087, ...: ((7+4*sqrt(3))^k + (7-4*sqrt(3))^k)/2,
// evaluated exactly in integer pairs a+b*sqrt(3) and cross-checked against
// the recurrence x_{k+1} = 14 x_k - x_{k-1}.
std::vector<Integer> pell_degrees(int count);

enum class UniquenessClause { EvenDegree, ThreeMod4, PellForm, OneMod6 };

struct DegreeClassification {
    int degree = 0;
    std::vector<UniquenessClause> failure_clauses;  // empty: no clause applies
};

std::vector<DegreeClassification> theorem_degrees(int d_max);

}  // namespace sharp
