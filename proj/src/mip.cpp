#include "sharp/mip.hpp"

#include <algorithm>
#include <future>
#include <thread>

namespace sharp {

Rational coeff_upper_bound(int d, int j, int k) {
    int rem = d - j - k;
    if (rem < 0) throw std::invalid_argument("monomial degree exceeds d");
    Rational best(0);
    bool have = false;
    for (int m = 0; m <= rem; ++m) {
        Integer denom = binomial(rem, m);
        Integer numer = std::min(binomial(d, j + m), binomial(d, k + m));
        Rational q = make_rational(numer, denom);
        if (!have || q < best) {
            best = q;
            have = true;
        }
    }
    return best;
}

namespace {

// [x^r] of x^j (1-x)^k
Rational line_weight(const Monomial& m, int r) {
    if (r < m.j || r > m.j + m.k) return Rational(0);
    Rational w(binomial(m.k, r - m.j));
    return (r - m.j) % 2 ? -w : w;
}

}  // namespace

MipModel build_model(int d, bool odd_constraints) {
    if (d < 1) throw std::invalid_argument("degree must be positive");
    if (odd_constraints && d % 2 == 0)
        throw std::invalid_argument("odd constraint set requires odd degree");
    MipModel model;
    model.d = d;
    model.odd_constraints = odd_constraints;
    model.n_terms = sharp_term_target(d);

    if (odd_constraints) {
        model.prefixed = {Monomial{d, 0}, Monomial{0, d}};
        for (int deg = 2; deg <= d - 1; ++deg) {
            for (int j = deg - 1; j >= 1; --j) {
                int k = deg - j;
                if (deg == d - 1 && j % 2 == 0) continue;
                model.candidates.push_back({Monomial{j, k}, coeff_upper_bound(d, j, k)});
            }
        }
        model.n_binary_target = model.n_terms - 2;
    } else {
        for (int deg = 1; deg <= d; ++deg) {
            for (int j = deg; j >= 0; --j) {
                int k = deg - j;
                if (j > 0 && k > 0) continue;  // pures first, mixed below
                model.candidates.push_back({Monomial{j, k}, coeff_upper_bound(d, j, k)});
            }
        }
        for (int deg = 2; deg <= d; ++deg) {
            for (int j = deg - 1; j >= 1; --j) {
                int k = deg - j;
                model.candidates.push_back({Monomial{j, k}, coeff_upper_bound(d, j, k)});
            }
        }
        model.n_binary_target = model.n_terms;
    }

    int n = static_cast<int>(model.candidates.size());
    model.eq.assign(d + 1, std::vector<Rational>(n, Rational(0)));
    model.eq_rhs.assign(d + 1, Rational(0));
    for (int r = 0; r <= d; ++r) {
        for (int i = 0; i < n; ++i) model.eq[r][i] = line_weight(model.candidates[i].mono, r);
        Rational rhs = r == 0 ? Rational(1) : Rational(0);
        for (const auto& m : model.prefixed) rhs -= line_weight(m, r);
        model.eq_rhs[r] = rhs;
    }

    model.sym_sign.assign(n, 0);
    for (int i = 0; i < n; ++i) {
        const auto& m = model.candidates[i].mono;
        model.sym_sign[i] = m.j > m.k ? 1 : (m.j < m.k ? -1 : 0);
    }

    for (int i = 0; i < n; ++i) {
        const auto& mi = model.candidates[i].mono;
        if (odd_constraints && mi.degree() == d - 1) model.dminus1_ids.push_back(i);
        if (!odd_constraints && mi.degree() == d) {
            model.degree_d_ids.push_back(i);
            if ((d - mi.j) % 2 == 0)
                model.degree_d_pos_ids.push_back(i);
            else
                model.degree_d_neg_ids.push_back(i);
        }
        if (!odd_constraints && mi.k == 0) model.pure_x_ids.push_back(i);
        if (!odd_constraints && mi.j == 0) model.pure_y_ids.push_back(i);
        if (odd_constraints) {
            for (int j2 = i + 1; j2 < n; ++j2) {
                const auto& mj = model.candidates[j2].mono;
                if (mi.degree() == mj.degree() && std::abs(mi.j - mj.j) == 1)
                    model.adjacency.emplace_back(i, j2);
            }
        }
    }
    return model;
}

LpFeasibility lp_feasible(const MipModel& model, const BranchNode& node,
                          std::uint64_t pivot_budget) {
    LpFeasibility out;
    int n = static_cast<int>(model.candidates.size());
    int ones = 0, frees = 0;
    for (int i = 0; i < n; ++i) {
        if (node.fix[i] == Fix::One) ++ones;
        if (node.fix[i] == Fix::Free) ++frees;
    }
    if (ones > model.n_binary_target || ones + frees < model.n_binary_target) return out;

    LpProblem lp;
    std::vector<int> var_of(n, -1);
    for (int i = 0; i < n; ++i) {
        if (node.fix[i] == Fix::Zero) continue;
        var_of[i] = lp.add_var(Rational(0), model.candidates[i].bound);
    }
    for (int r = 0; r <= model.d; ++r) {
        LpRow row;
        row.rel = Rel::Eq;
        row.rhs = model.eq_rhs[r];
        for (int i = 0; i < n; ++i)
            if (var_of[i] >= 0 && model.eq[r][i] != 0) row.terms.emplace_back(var_of[i], model.eq[r][i]);
        lp.rows.push_back(std::move(row));
    }
    {
        LpRow sym;
        sym.rel = Rel::Ge;
        sym.rhs = Rational(0);
        for (int i = 0; i < n; ++i)
            if (var_of[i] >= 0 && model.sym_sign[i] != 0)
                sym.terms.emplace_back(var_of[i], Rational(model.sym_sign[i]));
        if (!sym.terms.empty()) lp.rows.push_back(std::move(sym));
    }
    {
        // Projection of the binary block: free b_i sit in [c_i/m_i, 1].
        LpRow agg;
        agg.rel = Rel::Le;
        agg.rhs = Rational(model.n_binary_target - ones);
        for (int i = 0; i < n; ++i)
            if (node.fix[i] == Fix::Free)
                agg.terms.emplace_back(var_of[i], Rational(1) / model.candidates[i].bound);
        lp.rows.push_back(std::move(agg));
    }

    LpTableau tab(lp);
    LpResult res = tab.solve_feasible(pivot_budget);
    out.pivots = res.pivots;
    out.feasible = res.feasible;
    if (res.feasible) {
        out.coeffs.assign(n, Rational(0));
        for (int i = 0; i < n; ++i)
            if (var_of[i] >= 0) out.coeffs[i] = res.point[var_of[i]];
    }
    return out;
}

void MipStats::merge(const MipStats& o) {
    nodes += o.nodes;
    lp_calls += o.lp_calls;
    lp_infeasible += o.lp_infeasible;
    leaves += o.leaves;
    pivots += o.pivots;
    max_pivots_single_lp = std::max(max_pivots_single_lp, o.max_pivots_single_lp);
}

namespace {

struct Searcher {
    const MipModel& model;
    const MipConfig& cfg;
    MipStats stats;
    std::vector<std::pair<Support, BivariatePoly>> found;

    // A point proven feasible at the parent stays feasible for a child
    // whenever every newly zeroed variable was already at zero and the
    // tightened cardinality projection still holds; re-checking that is
    // far cheaper than a fresh phase-I solve.
    bool point_still_valid(const std::vector<Fix>& fix, const std::vector<Rational>& pt) const {
        int ones = 0;
        Rational agg(0);
        for (size_t i = 0; i < fix.size(); ++i) {
            if (fix[i] == Fix::Zero) {
                if (pt[i] != 0) return false;
            } else if (fix[i] == Fix::One) {
                ++ones;
            } else {
                if (pt[i] != 0) agg += pt[i] / model.candidates[i].bound;
            }
        }
        return agg <= Rational(model.n_binary_target - ones);
    }

    bool propagate(std::vector<Fix>& fix) const {
        int n = static_cast<int>(fix.size());
        bool changed = true;
        while (changed) {
            changed = false;
            int ones = 0, frees = 0;
            for (int i = 0; i < n; ++i) {
                if (fix[i] == Fix::One) ++ones;
                if (fix[i] == Fix::Free) ++frees;
            }
            if (ones > model.n_binary_target || ones + frees < model.n_binary_target) return false;
            if (ones == model.n_binary_target && frees > 0) {
                for (auto& f : fix)
                    if (f == Fix::Free) f = Fix::Zero;
                changed = true;
                continue;
            }
            if (ones + frees == model.n_binary_target && frees > 0) {
                for (auto& f : fix)
                    if (f == Fix::Free) f = Fix::One;
                changed = true;
                continue;
            }
            for (auto [a, b] : model.adjacency) {
                if (fix[a] == Fix::One && fix[b] == Fix::One) return false;
                if (fix[a] == Fix::One && fix[b] == Fix::Free) {
                    fix[b] = Fix::Zero;
                    changed = true;
                }
                if (fix[b] == Fix::One && fix[a] == Fix::Free) {
                    fix[a] = Fix::Zero;
                    changed = true;
                }
            }
            auto at_least_one = [&](const std::vector<int>& ids) {
                int o = 0, f = 0, last_free = -1;
                for (int i : ids) {
                    if (fix[i] == Fix::One) ++o;
                    if (fix[i] == Fix::Free) {
                        ++f;
                        last_free = i;
                    }
                }
                if (o > 0) return true;
                if (f == 0) return false;
                if (f == 1) {
                    fix[last_free] = Fix::One;
                    changed = true;
                }
                return true;
            };
            auto exactly_one = [&](const std::vector<int>& ids) {
                int o = 0;
                for (int i : ids)
                    if (fix[i] == Fix::One) ++o;
                if (o > 1) return false;
                if (o == 1) {
                    for (int i : ids)
                        if (fix[i] == Fix::Free) {
                            fix[i] = Fix::Zero;
                            changed = true;
                        }
                    return true;
                }
                return at_least_one(ids);
            };
            if (model.odd_constraints && model.d > 1 && !model.dminus1_ids.empty()) {
                if (!at_least_one(model.dminus1_ids)) return false;
            }
            if (!model.odd_constraints) {
                if (!at_least_one(model.degree_d_pos_ids)) return false;
                if (!at_least_one(model.degree_d_neg_ids)) return false;
                if (!exactly_one(model.pure_x_ids)) return false;
                if (!exactly_one(model.pure_y_ids)) return false;
            }
        }
        return true;
    }

    void emit_leaf(const std::vector<Fix>& fix) {
        ++stats.leaves;
        std::vector<Monomial> ms = model.prefixed;
        for (size_t i = 0; i < fix.size(); ++i)
            if (fix[i] == Fix::One) ms.push_back(model.candidates[i].mono);
        Support s(std::move(ms));
        SupportResult r = check_support(model.d, s);
        if (r.status == SupportStatus::Accepted) found.emplace_back(s, *r.poly);
    }

    // depth_limit >= 0: stop recursion there and queue the node instead.
    void dfs(std::vector<Fix> fix, int depth, int depth_limit,
             std::vector<std::vector<Fix>>* frontier,
             const std::vector<Rational>* parent_point = nullptr) {
        ++stats.nodes;
        if (!propagate(fix)) return;
        int frees = 0;
        for (auto f : fix)
            if (f == Fix::Free) ++frees;
        if (frees == 0) {
            int ones = 0;
            for (auto f : fix)
                if (f == Fix::One) ++ones;
            if (ones == model.n_binary_target) emit_leaf(fix);
            return;
        }

        int branch = -1;
        std::vector<Rational> point;
        if (cfg.use_lp_pruning) {
            if (parent_point && point_still_valid(fix, *parent_point)) {
                point = *parent_point;
            } else {
                BranchNode node{fix, depth};
                ++stats.lp_calls;
                LpFeasibility lf = lp_feasible(model, node, cfg.pivot_budget);
                stats.pivots += lf.pivots;
                stats.max_pivots_single_lp = std::max(stats.max_pivots_single_lp, lf.pivots);
                if (!lf.feasible) {
                    ++stats.lp_infeasible;
                    return;
                }
                point = std::move(lf.coeffs);
            }
            // Pure-term binaries branch first (the exactly-one rows then
            // collapse whole subtrees); otherwise take the free binary with
            // the largest relaxation value c_i / m_i, ties to the smallest
            // candidate index.
            Rational best(-1);
            bool best_pure = false;
            for (size_t i = 0; i < fix.size(); ++i) {
                if (fix[i] != Fix::Free) continue;
                bool pure = !model.odd_constraints && model.candidates[i].mono.is_pure();
                Rational score = point[i] / model.candidates[i].bound;
                if (branch < 0 || (pure && !best_pure) ||
                    (pure == best_pure && score > best)) {
                    branch = static_cast<int>(i);
                    best = score;
                    best_pure = pure;
                }
            }
        } else {
            for (size_t i = 0; i < fix.size(); ++i)
                if (fix[i] == Fix::Free) {
                    branch = static_cast<int>(i);
                    break;
                }
        }
        if (branch < 0) return;

        if (frontier && depth >= depth_limit) {
            frontier->push_back(fix);
            return;
        }
        auto one = fix;
        one[branch] = Fix::One;
        dfs(std::move(one), depth + 1, depth_limit, frontier, point.empty() ? nullptr : &point);
        fix[branch] = Fix::Zero;
        dfs(std::move(fix), depth + 1, depth_limit, frontier, point.empty() ? nullptr : &point);
    }
};

}  // namespace

MipOutcome enumerate_feasible(const MipModel& model, const MipConfig& cfg) {
    MipOutcome out;
    std::vector<Fix> root(model.candidates.size(), Fix::Free);

    std::vector<std::pair<Support, BivariatePoly>> found;
    if (cfg.jobs <= 1) {
        Searcher s{model, cfg, {}, {}};
        s.dfs(std::move(root), 0, -1, nullptr);
        out.stats = s.stats;
        found = std::move(s.found);
    } else {
        Searcher scout{model, cfg, {}, {}};
        std::vector<std::vector<Fix>> frontier;
        scout.dfs(std::move(root), 0, cfg.subtree_depth, &frontier);
        out.stats = scout.stats;
        found = std::move(scout.found);

        std::vector<std::future<Searcher>> futs;
        std::atomic<size_t> next{0};
        unsigned workers = std::min<size_t>(cfg.jobs, std::max<size_t>(frontier.size(), 1));
        std::vector<std::vector<std::pair<Support, BivariatePoly>>> results(frontier.size());
        std::vector<MipStats> stats(frontier.size());
        std::vector<std::thread> threads;
        for (unsigned w = 0; w < workers; ++w) {
            threads.emplace_back([&]() {
                for (;;) {
                    size_t i = next.fetch_add(1);
                    if (i >= frontier.size()) return;
                    Searcher s{model, cfg, {}, {}};
                    s.dfs(frontier[i], 0, -1, nullptr);
                    results[i] = std::move(s.found);
                    stats[i] = s.stats;
                }
            });
        }
        for (auto& t : threads) t.join();
        for (size_t i = 0; i < frontier.size(); ++i) {
            out.stats.merge(stats[i]);
            for (auto& f : results[i]) found.push_back(std::move(f));
        }
    }

    std::sort(found.begin(), found.end(),
              [](const auto& a, const auto& b) { return poly_less(a.second, b.second); });
    for (auto& [s, p] : found) {
        out.supports.push_back(std::move(s));
        out.polys.push_back(std::move(p));
    }
    return out;
}

FamilyProbe probe_family(int d, const Support& support, std::uint64_t pivot_budget) {
    FamilyProbe out;
    RationalMatrix A = build_matrix(d);

    std::vector<Monomial> cols;
    for (int deg = 1; deg <= d - 1; ++deg)
        for (int j = deg; j >= 0; --j) cols.push_back({j, deg - j});
    auto col_index = [&](const Monomial& m) {
        for (size_t i = 0; i < cols.size(); ++i)
            if (cols[i] == m) return static_cast<int>(i);
        throw std::logic_error("monomial not a matrix column");
    };

    std::vector<Monomial> lower = support.lower_part(d);
    std::vector<Monomial> top = support.top_part(d);
    std::vector<char> in_top(d + 1, 0);
    for (const auto& m : top) in_top[m.j] = 1;

    LpProblem lp;
    std::vector<int> cvar(lower.size());
    for (size_t i = 0; i < lower.size(); ++i)
        cvar[i] = lp.add_var(Rational(0), coeff_upper_bound(d, lower[i].j, lower[i].k));
    int tvar = lp.add_var(Rational(0), Rational(1));

    for (int rx = d; rx >= 0; --rx) {
        int row = d - rx;
        LpRow r;
        r.rhs = -Rational(binomial(d, rx));
        r.rel = in_top[rx] ? Rel::Ge : Rel::Eq;
        for (size_t i = 0; i < lower.size(); ++i) {
            const Rational& a = A.at(row, col_index(lower[i]));
            if (a != 0) r.terms.emplace_back(cvar[i], a);
        }
        if (in_top[rx]) r.terms.emplace_back(tvar, Rational(-1));
        lp.rows.push_back(std::move(r));
    }
    for (size_t i = 0; i < lower.size(); ++i) {
        LpRow r;
        r.rel = Rel::Ge;
        r.rhs = Rational(0);
        r.terms.emplace_back(cvar[i], Rational(1));
        r.terms.emplace_back(tvar, Rational(-1));
        lp.rows.push_back(std::move(r));
    }

    std::vector<Rational> obj(lp.nvars, Rational(0));
    obj[tvar] = 1;
    LpTableau tab(lp);
    LpOptResult opt = tab.maximize(obj, pivot_budget, Rational(0));
    if (!opt.feasible || !(opt.value > 0)) return out;

    auto reconstruct = [&](const std::vector<Rational>& point) {
        BivariatePoly p;
        for (size_t i = 0; i < lower.size(); ++i) p.add_term(lower[i], point[cvar[i]]);
        for (int rx = d; rx >= 0; --rx) {
            int row = d - rx;
            Rational v(binomial(d, rx));
            for (size_t i = 0; i < lower.size(); ++i)
                v += point[cvar[i]] * A.at(row, col_index(lower[i]));
            p.add_term({rx, d - rx}, v);
        }
        return p;
    };

    out.family = true;
    out.member_a = reconstruct(opt.point);
    Rational floor = opt.value / 2;

    // A second, distinct member along the positive-dimensional solution
    // set: optimize coordinates until the point moves.
    for (size_t i = 0; i < lower.size() && out.member_b.is_zero(); ++i) {
        for (int sgn : {+1, -1}) {
            LpProblem lp2 = lp;
            lp2.lower[tvar] = floor;
            std::vector<Rational> obj2(lp2.nvars, Rational(0));
            obj2[cvar[i]] = sgn;
            LpTableau tab2(lp2);
            LpOptResult o2 = tab2.maximize(obj2, pivot_budget);
            if (!o2.feasible) continue;
            BivariatePoly cand = reconstruct(o2.point);
            if (!(cand == out.member_a)) {
                out.member_b = cand;
                break;
            }
        }
    }
    return out;
}

}  // namespace sharp
