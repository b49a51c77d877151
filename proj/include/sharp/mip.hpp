#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "sharp/nullsearch.hpp"
#include "sharp/simplex.hpp"

namespace sharp {

// Upper bound on the coefficient of x^j y^k in any member of H(2,d):
// multiplying every term by the right power of (x+y) reproduces (x+y)^d
// with nonnegative contributions, so for 0 <= m <= d-j-k,
//   c_{j,k} * C(d-j-k, m) <= C(d, j+m)   (and symmetrically C(d, k+m)).
// The minimum over all such quotients is exact on the known classification
// and never below any of its coefficients.
Rational coeff_upper_bound(int d, int j, int k);

struct MipCandidate {
    Monomial mono;
    Rational bound;  // linking constant m_{j,k}
};

// 0-1 feasibility model: binary b per candidate monomial, continuous
// coefficient c in [0, m*b], equality rows from p(x,1-x) - 1 == 0 per
// x-power, cardinality sum(b) = n_binary_target, left-heavier symmetry
// row, and (odd d) adjacency exclusions. For odd d the candidate set is
// pre-pruned to mixed monomials of degree <= d-1 with the even-x-exponent
// degree-(d-1) monomials removed, and x^d, y^d are fixed with coefficient 1.
struct MipModel {
    int d = 0;
    int n_terms = 0;         // target N
    int n_binary_target = 0; // cardinality over the candidate binaries
    bool odd_constraints = false;
    std::vector<MipCandidate> candidates;
    std::vector<Monomial> prefixed;  // monomials fixed in the support
    // equality row r (r = 0..d): sum_i eq[r][i] * c_i = eq_rhs[r]
    std::vector<std::vector<Rational>> eq;
    std::vector<Rational> eq_rhs;
    std::vector<int> sym_sign;             // +1 left (j>k), -1 right, 0 neither
    std::vector<std::pair<int, int>> adjacency;  // candidate index pairs
    std::vector<int> dminus1_ids;          // odd: at least one must be chosen
    std::vector<int> degree_d_ids;         // even: at least one must be chosen
    // Degree-d monomials split by the sign (-1)^(d-j) they carry in the
    // x^d row of p(x,1-x); both classes must be populated or every top
    // coefficient is forced to zero.
    std::vector<int> degree_d_pos_ids, degree_d_neg_ids;
    std::vector<int> pure_x_ids, pure_y_ids;  // even: exactly one of each
};

MipModel build_model(int d, bool odd_constraints);

enum class Fix : char { Free = 0, Zero = 1, One = 2 };

struct BranchNode {
    std::vector<Fix> fix;  // one entry per candidate
    int depth = 0;
};

struct LpFeasibility {
    bool feasible = false;
    std::vector<Rational> coeffs;  // per candidate; zero where fixed out
    std::uint64_t pivots = 0;
};

// Exact phase-I simplex on the node's LP relaxation. Binaries are
// eliminated by exact projection: with b_i in [c_i/m_i, 1] free and the
// cardinality row sum(b) = target, feasibility of the binary block is
// equivalent to sum over free i of c_i/m_i <= target - #fixed-ones
// together with the count interval check; adjacency is enforced
// combinatorially during the search.
LpFeasibility lp_feasible(const MipModel& model, const BranchNode& node,
                          std::uint64_t pivot_budget = 1000000);

struct MipStats {
    std::uint64_t nodes = 0;
    std::uint64_t lp_calls = 0;
    std::uint64_t lp_infeasible = 0;
    std::uint64_t leaves = 0;
    std::uint64_t pivots = 0;
    std::uint64_t max_pivots_single_lp = 0;
    void merge(const MipStats& o);
};

struct MipConfig {
    std::uint64_t pivot_budget = 1000000;
    int subtree_depth = 10;  // frontier depth distributed to workers
    int jobs = 1;
    bool use_lp_pruning = true;  // disabled only by the pruning-soundness test
};

struct MipOutcome {
    std::vector<Support> supports;         // accepted, post-verified
    std::vector<BivariatePoly> polys;      // matching supports
    MipStats stats;
};

// Complete DFS over binary assignments; prunes only on LP infeasibility or
// violated cardinality/structure counts; every leaf support is
// post-verified through check_support.
MipOutcome enumerate_feasible(const MipModel& model, const MipConfig& cfg = {});

// Strict-positivity test used for family detection: is there a point with
// every support coefficient > 0, the rest of the degree-d rows zero, and
// the (x+y)^d coordinate equal to 1? Returns two distinct members when
// feasible.
struct FamilyProbe {
    bool family = false;
    BivariatePoly member_a, member_b;
};
FamilyProbe probe_family(int d, const Support& support,
                         std::uint64_t pivot_budget = 1000000);

}  // namespace sharp
