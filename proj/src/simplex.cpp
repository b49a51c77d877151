#include "sharp/simplex.hpp"

#include <algorithm>

namespace sharp {

int LpProblem::add_var(const Rational& lo, const std::optional<Rational>& hi) {
    lower.push_back(lo);
    upper.push_back(hi.value_or(Rational(0)));
    upper_finite.push_back(hi.has_value() ? 1 : 0);
    return nvars++;
}

LpTableau::LpTableau(const LpProblem& p) {
    nstruct_ = p.nvars;
    nrows_ = static_cast<int>(p.rows.size());

    // One slack or artificial per row after normalization, plus an
    // artificial for rows whose slack start would be infeasible.
    struct NormRow {
        std::vector<Rational> dense;
        Rational rhs;
        bool needs_artificial;
        int slack_sign;  // 0 none, +1, -1
    };
    std::vector<NormRow> rows;
    rows.reserve(p.rows.size());
    for (const auto& row : p.rows) {
        NormRow nr;
        nr.dense.assign(nstruct_, Rational(0));
        for (const auto& [v, c] : row.terms) nr.dense[v] += c;
        nr.rhs = row.rhs;
        Rel rel = row.rel;
        if (rel == Rel::Ge) {  // negate to Le
            for (auto& c : nr.dense) c = -c;
            nr.rhs = -nr.rhs;
            rel = Rel::Le;
        }
        // Starting point: structurals at lower bound.
        Rational start(0);
        for (int j = 0; j < nstruct_; ++j)
            if (nr.dense[j] != 0) start += nr.dense[j] * p.lower[j];
        if (rel == Rel::Eq) {
            if (nr.rhs < start) {  // keep artificial value nonnegative
                for (auto& c : nr.dense) c = -c;
                nr.rhs = -nr.rhs;
            }
            nr.slack_sign = 0;
            nr.needs_artificial = true;
        } else {
            nr.slack_sign = 1;
            nr.needs_artificial = nr.rhs < start;  // slack would start negative
        }
        rows.push_back(std::move(nr));
    }

    int nslack = 0, nart = 0;
    for (const auto& r : rows) {
        if (r.slack_sign != 0) ++nslack;
        if (r.needs_artificial) ++nart;
    }
    ncols_ = nstruct_ + nslack + nart;
    t_.assign(static_cast<size_t>(nrows_) * ncols_, Rational(0));
    lo_.assign(ncols_, Rational(0));
    hi_.assign(ncols_, Rational(0));
    hi_inf_.assign(ncols_, 1);
    for (int j = 0; j < nstruct_; ++j) {
        lo_[j] = p.lower[j];
        hi_inf_[j] = p.upper_finite[j] ? 0 : 1;
        if (!hi_inf_[j]) hi_[j] = p.upper[j];
    }

    basis_.assign(nrows_, -1);
    state_.assign(ncols_, State::AtLower);
    bval_.assign(nrows_, Rational(0));

    int next_slack = nstruct_, next_art = nstruct_ + nslack;
    for (int r = 0; r < nrows_; ++r) {
        auto& nr = rows[r];
        for (int j = 0; j < nstruct_; ++j) at(r, j) = nr.dense[j];
        Rational start(0);
        for (int j = 0; j < nstruct_; ++j)
            if (at(r, j) != 0) start += at(r, j) * lo_[j];
        int slack = -1;
        if (nr.slack_sign != 0) {
            slack = next_slack++;
            at(r, slack) = Rational(nr.slack_sign);
        }
        if (nr.needs_artificial) {
            int art = next_art++;
            artificials_.push_back(art);
            // Sign the artificial so it starts at a nonnegative value with
            // the slack (if any) parked at zero.
            Rational resid = nr.rhs - start;
            at(r, art) = resid >= 0 ? Rational(1) : Rational(-1);
            basis_[r] = art;
            bval_[r] = abs(resid);
            state_[art] = State::Basic;
        } else {
            basis_[r] = slack;
            bval_[r] = nr.rhs - start;
            state_[slack] = State::Basic;
        }
    }
}

Rational LpTableau::var_value(int j) const {
    switch (state_[j]) {
        case State::AtLower:
            return lo_[j];
        case State::AtUpper:
            return hi_[j];
        default:
            for (int r = 0; r < nrows_; ++r)
                if (basis_[r] == j) return bval_[r];
            return Rational(0);
    }
}

std::vector<Rational> LpTableau::extract_point() const {
    std::vector<Rational> x(nstruct_);
    for (int j = 0; j < nstruct_; ++j) x[j] = lo_[j];
    for (int j = 0; j < nstruct_; ++j) {
        if (state_[j] == State::AtUpper) x[j] = hi_[j];
    }
    for (int r = 0; r < nrows_; ++r)
        if (basis_[r] < nstruct_) x[basis_[r]] = bval_[r];
    return x;
}

// Row operations only; basic-variable values are maintained separately by
// the caller (they change with the movement step, not with the basis
// representation).
void LpTableau::pivot(int row, int col) {
    const Rational piv = at(row, col);
    for (int j = 0; j < ncols_; ++j) at(row, j) /= piv;
    for (int r = 0; r < nrows_; ++r) {
        if (r == row) continue;
        const Rational f = at(r, col);
        if (f == 0) continue;
        for (int j = 0; j < ncols_; ++j)
            if (at(row, j) != 0) at(r, j) -= f * at(row, j);
    }
}

Rational LpTableau::run(const std::vector<Rational>& cost, std::uint64_t budget,
                        const std::optional<Rational>& stop_below) {
    auto objective = [&]() {
        Rational v(0);
        for (int j = 0; j < ncols_; ++j)
            if (cost[j] != 0) v += cost[j] * var_value(j);
        return v;
    };

    for (;;) {
        if (stop_below && objective() < *stop_below) return objective();

        // Reduced costs d_j = cost_j - cost_B * T_j; for minimization a
        // nonbasic variable improves if d_j < 0 at lower or d_j > 0 at upper.
        int enter = -1;
        int dir = 0;
        for (int j = 0; j < ncols_; ++j) {
            if (state_[j] == State::Basic) continue;
            if (!hi_inf_[j] && lo_[j] == hi_[j]) continue;  // fixed
            Rational d = cost[j];
            for (int r = 0; r < nrows_; ++r) {
                if (cost[basis_[r]] != 0 && at(r, j) != 0) d -= cost[basis_[r]] * at(r, j);
            }
            if (state_[j] == State::AtLower && d < 0) {
                enter = j;
                dir = 1;
                break;
            }
            if (state_[j] == State::AtUpper && d > 0) {
                enter = j;
                dir = -1;
                break;
            }
        }
        if (enter < 0) return objective();

        if (++pivots_ > budget) throw PivotBudgetExceeded("simplex pivot budget exceeded");

        // Ratio test: basic variables move by -dir * t * T[r][enter]. The
        // entering variable's own span also blocks. Ties break on the
        // smallest blocking variable index (Bland).
        bool limited = false;
        Rational best_t(0);
        int leave_row = -1;  // -1 means the entering variable's bound governs
        int leave_var = -1;
        if (!hi_inf_[enter]) {
            best_t = hi_[enter] - lo_[enter];
            leave_var = enter;
            limited = true;
        }
        for (int r = 0; r < nrows_; ++r) {
            const Rational& a = at(r, enter);
            if (a == 0) continue;
            Rational rate = -a * dir;
            Rational room;
            if (rate > 0) {
                if (hi_inf_[basis_[r]]) continue;
                room = (hi_[basis_[r]] - bval_[r]) / rate;
            } else {
                room = (bval_[r] - lo_[basis_[r]]) / (-rate);
            }
            bool better = !limited || room < best_t ||
                          (room == best_t && basis_[r] < leave_var);
            if (better) {
                best_t = room;
                leave_row = r;
                leave_var = basis_[r];
                limited = true;
            }
        }
        if (!limited) throw std::runtime_error("unbounded simplex direction");
        if (leave_var == enter) leave_row = -1;

        // Apply movement of the entering variable.
        for (int r = 0; r < nrows_; ++r) {
            const Rational& a = at(r, enter);
            if (a != 0) bval_[r] -= a * dir * best_t;
        }
        if (leave_row < 0) {
            // Bound flip: entering variable crosses to its other bound.
            state_[enter] = dir > 0 ? State::AtUpper : State::AtLower;
            continue;
        }
        int leave = basis_[leave_row];
        Rational leave_val = bval_[leave_row];
        state_[leave] =
            (!hi_inf_[leave] && leave_val == hi_[leave]) ? State::AtUpper : State::AtLower;
        basis_[leave_row] = enter;
        state_[enter] = State::Basic;
        bval_[leave_row] = (dir > 0 ? lo_[enter] : hi_[enter]) + dir * best_t;
        pivot(leave_row, enter);
    }
}

LpResult LpTableau::solve_feasible(std::uint64_t budget) {
    std::vector<Rational> cost(ncols_, Rational(0));
    for (int a : artificials_) cost[a] = 1;
    Rational v = run(cost, budget, Rational(0));
    LpResult res;
    res.pivots = pivots_;
    res.feasible = v == 0;
    if (res.feasible) res.point = extract_point();
    return res;
}

LpOptResult LpTableau::maximize(const std::vector<Rational>& objective, std::uint64_t budget,
                                const std::optional<Rational>& early_stop_above) {
    LpOptResult res;
    LpResult f = solve_feasible(budget);
    if (!f.feasible) {
        res.pivots = pivots_;
        return res;
    }
    // Freeze artificials at zero, then maximize by minimizing -objective.
    for (int a : artificials_) {
        hi_inf_[a] = 0;
        hi_[a] = 0;
    }
    std::vector<Rational> cost(ncols_, Rational(0));
    for (int j = 0; j < nstruct_ && j < static_cast<int>(objective.size()); ++j)
        cost[j] = -objective[j];
    std::optional<Rational> stop;
    if (early_stop_above) stop = -*early_stop_above;
    Rational v = run(cost, budget, stop);
    res.feasible = true;
    res.value = -v;
    res.point = extract_point();
    res.pivots = pivots_;
    return res;
}

}  // namespace sharp
