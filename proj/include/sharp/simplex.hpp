#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "sharp/rational.hpp"

namespace sharp {

struct PivotBudgetExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class Rel { Le, Ge, Eq };

struct LpRow {
    std::vector<std::pair<int, Rational>> terms;  // (variable, coefficient)
    Rel rel = Rel::Eq;
    Rational rhs;
};

struct LpProblem {
    int nvars = 0;
    std::vector<Rational> lower;          // finite lower bounds
    std::vector<Rational> upper;          // used when upper_finite
    std::vector<char> upper_finite;
    std::vector<LpRow> rows;

    int add_var(const Rational& lo, const std::optional<Rational>& hi);
};

struct LpResult {
    bool feasible = false;
    std::vector<Rational> point;  // structural variables only
    std::uint64_t pivots = 0;
};

struct LpOptResult {
    bool feasible = false;
    Rational value;
    std::vector<Rational> point;
    std::uint64_t pivots = 0;
};

// Exact rational simplex over bounded variables, Bland's rule throughout
// (entering: smallest eligible index; leaving: smallest basic index among
// ties), so every solve terminates. Phase I minimizes artificial
// variables; phase II maximizes a linear objective and can stop early
// once the objective exceeds a target.
class LpTableau {
  public:
    explicit LpTableau(const LpProblem& p);

    LpResult solve_feasible(std::uint64_t pivot_budget = 1000000);
    LpOptResult maximize(const std::vector<Rational>& objective,
                         std::uint64_t pivot_budget = 1000000,
                         const std::optional<Rational>& early_stop_above = std::nullopt);

  private:
    enum class State : char { Basic, AtLower, AtUpper };

    int nstruct_ = 0;
    int ncols_ = 0;
    int nrows_ = 0;
    std::vector<Rational> t_;  // nrows x ncols tableau
    std::vector<Rational> lo_, hi_;
    std::vector<char> hi_inf_;
    std::vector<int> basis_;
    std::vector<State> state_;
    std::vector<Rational> bval_;  // current values of basic variables
    std::vector<int> artificials_;
    std::uint64_t pivots_ = 0;

    Rational& at(int r, int c) { return t_[static_cast<size_t>(r) * ncols_ + c]; }
    const Rational& at(int r, int c) const { return t_[static_cast<size_t>(r) * ncols_ + c]; }
    Rational var_value(int j) const;
    std::vector<Rational> extract_point() const;
    void pivot(int row, int col);
    // Runs Bland iterations for minimize cost·x; returns final cost value.
    Rational run(const std::vector<Rational>& cost, std::uint64_t budget,
                 const std::optional<Rational>& stop_below);
};

}  // namespace sharp
