#pragma once

#include <map>
#include <string>
#include <vector>

#include "sharp/poly.hpp"
#include "sharp/rational.hpp"

namespace sharp {

// Frozen expected results for the classification searches. Everything here
// is stored as text-grammar strings and parsed on demand; tests re-verify
// membership of each entry rather than trusting the strings.
namespace corpus {

// Complete minimal-member classification for odd degrees up to 17,
// canonical forms, invariant polynomial first.
const std::map<int, std::vector<std::string>>& sharp_odd_classes();

// Raw (swap-inclusive) counts of minimal members: degree d = 2N-3 for
// N = 2..10.
const std::vector<std::pair<int, int>>& raw_counts_odd();

// Even-degree minimal members: d = 2N-4 for N = 3..8.
const std::vector<std::pair<int, int>>& raw_counts_even();

// Members with one extra term: d = 2N-5 for N = 4..7, isolated solutions.
const std::vector<std::pair<int, int>>& isolated_counts();

// Odd degrees <= 149 where the substitution procedure finds nothing
// beyond the invariant polynomial (OEIS A143105).
const std::vector<int>& substitution_failure_degrees();

// Degrees where the classification shows the invariant polynomial is the
// only minimal member (OEIS A143106 prefix).
const std::vector<int>& uniqueness_holds_degrees();

const std::vector<Integer>& pell_prefix();

std::vector<BivariatePoly> parsed_classes(int d);

}  // namespace corpus
}  // namespace sharp
