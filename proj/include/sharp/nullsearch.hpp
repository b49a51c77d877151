#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sharp/linalg.hpp"
#include "sharp/poly.hpp"

namespace sharp {

// Minimal term count attainable in H(2,d): (d+3)/2 for odd d (attained by
// the invariant family), (d+4)/2 for even d.
int sharp_term_target(int d);

// b_{j,k} = x^j y^k - x^j y^k (x+y)^(d-j-k); vanishes on x+y=1.
BivariatePoly basis_poly(int j, int k, int d);

// Columns: b_{j,k} for 1 <= j+k <= d-1 in canonical order, then (x+y)^d.
// Rows: the d+1 monomials of degree d, x^d first. Entry = the degree-d
// coefficient of the column's polynomial at the row's monomial, so
// A * (c..., 1)^t is the vector of degree-d coefficients.
RationalMatrix build_matrix(int d);

struct Support {
    std::vector<Monomial> monomials;  // sorted canonically, no duplicates

    explicit Support(std::vector<Monomial> ms = {});
    std::vector<Monomial> top_part(int d) const;
    std::vector<Monomial> lower_part(int d) const;
    bool operator==(const Support&) const = default;
};

// Columns of A for the support's lower-degree monomials plus the final
// column; rows for the degree-d monomials absent from the support.
RationalMatrix support_submatrix(const RationalMatrix& A, const Support& support, int d);

enum class SupportStatus {
    RejectedPrefilter,
    RejectedNullspaceDim0,
    RejectedNullspaceDimHigh,
    RejectedNegativity,
    RejectedDegreeDrop,
    RejectedSupportShrink,  // realized polynomial misses a support monomial
    Accepted,
};

struct SupportResult {
    SupportStatus status = SupportStatus::RejectedPrefilter;
    int nullspace_dim = -1;  // -1 when rejected before the exact stage
    std::optional<BivariatePoly> poly;
};

// Which structural reductions the enumeration applies while generating
// candidate supports. Defaults depend on parity and search mode.
struct ConstraintSet {
    bool top_degree_pure = false;  // odd sharp: degree-d part is exactly {x^d, y^d}
    bool pure_pair = false;        // exactly one pure term in each variable
    bool dminus1_presence = false; // some degree d-1 monomial appears
    bool dminus1_parity = false;   // no x^j y^(d-1-j) with even j
    bool no_adjacent = false;      // never both x^k y^(m+1) and x^(k+1) y^m
    bool lower_nonempty = false;   // some monomial of degree < d appears

    static ConstraintSet sharp_odd();
    static ConstraintSet sharp_even();
    static ConstraintSet with_terms();
    static ConstraintSet none();
    std::string describe() const;
};

struct SearchConfig {
    std::uint64_t shard_index = 0;
    std::uint64_t shard_count = 1;
    int jobs = 1;
    std::vector<std::uint64_t> prefilter_primes = {19, 10007};
    // Fraction of prefilter rejections re-checked with the exact kernel.
    double audit_fraction = 0.01;
    std::optional<ConstraintSet> constraints;  // defaulted per mode if unset
    bool detect_families = true;               // fixed-term-count search only
};

struct SearchStats {
    std::uint64_t candidates_seen = 0;     // generated supports before filters
    std::uint64_t supports_tested = 0;     // reached check_support
    std::uint64_t rejected_shortcut = 0;   // zero row with positive tail
    std::uint64_t rejected_prefilter = 0;  // modular rank was full
    std::uint64_t rejected_dim0 = 0;
    std::uint64_t rejected_dim_high = 0;
    std::uint64_t rejected_negativity = 0;
    std::uint64_t rejected_degree = 0;
    std::uint64_t rejected_shrink = 0;
    std::uint64_t accepted = 0;
    std::uint64_t audited = 0;
    std::uint64_t audit_failures = 0;
    void merge(const SearchStats& o);
};

struct FamilyWitness {
    Support support;
    int nullspace_dim = 0;
    BivariatePoly member_a;
    BivariatePoly member_b;
};

struct SearchOutcome {
    int degree = 0;
    int n_terms = 0;
    std::vector<BivariatePoly> raw;        // accepted polynomials, swap-inclusive
    std::vector<BivariatePoly> canonical;  // deduplicated canonical forms
    std::vector<FamilyWitness> families;
    SearchStats stats;
    std::uint64_t candidate_space = 0;  // size of the sharded index space
    ConstraintSet constraints;
};

SupportResult check_support(int d, const Support& support, const SearchConfig& cfg = {});

// All sharp candidates for degree d: term count (d+3)/2 for odd d with the
// odd-degree reductions, (d+4)/2 for even d with the pure-pair reduction.
SearchOutcome enumerate_sharp(int d, const SearchConfig& cfg = {});

// Members of H(2,d) with exactly n_terms monomials. Supports with a
// nullspace of dimension >= 2 are tested for a strictly positive point
// and reported as families instead of being counted.
SearchOutcome enumerate_with_terms(int d, int n_terms, const SearchConfig& cfg = {});

}  // namespace sharp
