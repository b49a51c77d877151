#include "sharp/nullsearch.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cassert>
#include <set>
#include <sstream>
#include <thread>

#include "sharp/mip.hpp"

namespace sharp {

int sharp_term_target(int d) {
    if (d < 1) throw std::invalid_argument("degree must be positive");
    return d % 2 ? (d + 3) / 2 : (d + 4) / 2;
}

BivariatePoly basis_poly(int j, int k, int d) {
    if (j < 0 || k < 0 || j + k > d - 1)
        throw std::invalid_argument("basis polynomial requires j+k <= d-1");
    BivariatePoly m = BivariatePoly::monomial(j, k);
    return m - m * binomial_power(d - j - k);
}

Support::Support(std::vector<Monomial> ms) : monomials(std::move(ms)) {
    std::sort(monomials.begin(), monomials.end(), MonoLess{});
    monomials.erase(std::unique(monomials.begin(), monomials.end()), monomials.end());
}

std::vector<Monomial> Support::top_part(int d) const {
    std::vector<Monomial> out;
    for (const auto& m : monomials)
        if (m.degree() == d) out.push_back(m);
    return out;
}

std::vector<Monomial> Support::lower_part(int d) const {
    std::vector<Monomial> out;
    for (const auto& m : monomials)
        if (m.degree() < d) out.push_back(m);
    return out;
}

namespace {

std::vector<Monomial> matrix_columns(int d) {
    std::vector<Monomial> cols;
    for (int deg = 1; deg <= d - 1; ++deg)
        for (int j = deg; j >= 0; --j) cols.push_back({j, deg - j});
    return cols;
}

}  // namespace

RationalMatrix build_matrix(int d) {
    if (d < 1) throw std::invalid_argument("degree must be positive");
    std::vector<Monomial> cols = matrix_columns(d);
    RationalMatrix A(d + 1, static_cast<int>(cols.size()) + 1);
    for (int row = 0; row <= d; ++row) {
        int rx = d - row;  // row 0 is x^d
        for (size_t c = 0; c < cols.size(); ++c) {
            const auto& m = cols[c];
            int a = rx - m.j;
            int rem = d - m.degree();
            if (a >= 0 && a <= rem) A.at(row, static_cast<int>(c)) = -Rational(binomial(rem, a));
        }
        A.at(row, A.cols - 1) = Rational(binomial(d, rx));
    }
    return A;
}

RationalMatrix support_submatrix(const RationalMatrix& A, const Support& support, int d) {
    std::vector<Monomial> cols = matrix_columns(d);
    std::vector<int> keep_cols;
    for (const auto& m : support.lower_part(d)) {
        auto it = std::find(cols.begin(), cols.end(), m);
        if (it == cols.end()) throw std::invalid_argument("support monomial outside column domain");
        keep_cols.push_back(static_cast<int>(it - cols.begin()));
    }
    std::vector<char> top_present(d + 1, 0);
    for (const auto& m : support.top_part(d)) top_present[m.j] = 1;

    std::vector<int> keep_rows;
    for (int row = 0; row <= d; ++row)
        if (!top_present[d - row]) keep_rows.push_back(row);

    RationalMatrix S(static_cast<int>(keep_rows.size()), static_cast<int>(keep_cols.size()) + 1);
    for (size_t r = 0; r < keep_rows.size(); ++r) {
        for (size_t c = 0; c < keep_cols.size(); ++c)
            S.at(static_cast<int>(r), static_cast<int>(c)) = A.at(keep_rows[r], keep_cols[c]);
        S.at(static_cast<int>(r), S.cols - 1) = A.at(keep_rows[r], A.cols - 1);
    }
    return S;
}

ConstraintSet ConstraintSet::sharp_odd() {
    ConstraintSet c;
    c.top_degree_pure = true;
    c.pure_pair = true;
    c.dminus1_presence = true;
    c.dminus1_parity = true;
    c.no_adjacent = true;
    return c;
}

ConstraintSet ConstraintSet::sharp_even() {
    ConstraintSet c;
    c.pure_pair = true;
    return c;
}

ConstraintSet ConstraintSet::with_terms() {
    ConstraintSet c;
    c.pure_pair = true;
    c.lower_nonempty = true;
    return c;
}

ConstraintSet ConstraintSet::none() { return {}; }

std::string ConstraintSet::describe() const {
    std::ostringstream os;
    os << "topdeg=" << top_degree_pure << ";purepair=" << pure_pair
       << ";dm1=" << dminus1_presence << ";dm1par=" << dminus1_parity
       << ";noadj=" << no_adjacent << ";lower=" << lower_nonempty;
    return os.str();
}

void SearchStats::merge(const SearchStats& o) {
    candidates_seen += o.candidates_seen;
    supports_tested += o.supports_tested;
    rejected_shortcut += o.rejected_shortcut;
    rejected_prefilter += o.rejected_prefilter;
    rejected_dim0 += o.rejected_dim0;
    rejected_dim_high += o.rejected_dim_high;
    rejected_negativity += o.rejected_negativity;
    rejected_degree += o.rejected_degree;
    rejected_shrink += o.rejected_shrink;
    accepted += o.accepted;
    audited += o.audited;
    audit_failures += o.audit_failures;
}

namespace {

struct Mask128 {
    std::uint64_t w0 = 0, w1 = 0;
    void set(int i) { (i < 64 ? w0 : w1) |= 1ull << (i & 63); }
    bool test(int i) const { return ((i < 64 ? w0 : w1) >> (i & 63)) & 1; }
    bool intersects(const Mask128& o) const { return (w0 & o.w0) || (w1 & o.w1); }
    void merge(const Mask128& o) {
        w0 |= o.w0;
        w1 |= o.w1;
    }
    bool any() const { return w0 || w1; }
};

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

std::uint64_t fnv1a64(const std::string& s) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

// Exact search context for one degree: the degree-d coefficient matrix in
// machine integers plus mod-p copies for the prefilter.
struct DegreeContext {
    int d = 0;
    std::vector<Monomial> columns;
    std::vector<int> col_of;  // (j*(d+1)+k) -> column or -1
    int ncols = 0;            // columns + final
    std::vector<std::int64_t> A;  // (d+1) x ncols

    explicit DegreeContext(int d_) : d(d_) {
        columns = matrix_columns(d);
        ncols = static_cast<int>(columns.size()) + 1;
        col_of.assign(static_cast<size_t>(d + 1) * (d + 1), -1);
        for (size_t c = 0; c < columns.size(); ++c)
            col_of[static_cast<size_t>(columns[c].j) * (d + 1) + columns[c].k] =
                static_cast<int>(c);
        A.assign(static_cast<size_t>(d + 1) * ncols, 0);
        for (int row = 0; row <= d; ++row) {
            int rx = d - row;
            for (size_t c = 0; c < columns.size(); ++c) {
                const auto& m = columns[c];
                int a = rx - m.j;
                int rem = d - m.degree();
                if (a >= 0 && a <= rem)
                    A[static_cast<size_t>(row) * ncols + c] = -binomial(rem, a).get_si();
            }
            A[static_cast<size_t>(row) * ncols + (ncols - 1)] = binomial(d, rx).get_si();
        }
    }

    std::int64_t at(int row, int col) const { return A[static_cast<size_t>(row) * ncols + col]; }
    int col(const Monomial& m) const {
        return col_of[static_cast<size_t>(m.j) * (d + 1) + m.k];
    }
};

struct CheckScratch {
    std::vector<std::int64_t> sub;
    std::vector<Rational> coeffs;
};

// The full acceptance pipeline for one support, in the order: zero-row
// shortcut, modular prefilter, exact kernel, reconstruction and sign
// checks.
SupportResult check_support_ctx(const DegreeContext& ctx, const std::vector<int>& lower_cols,
                                const std::vector<char>& top_present, const SearchConfig& cfg,
                                SearchStats* stats, bool audit_this, bool want_dim_only_high) {
    SupportResult res;
    int d = ctx.d;
    std::vector<int> rows;
    rows.reserve(d + 1);
    for (int row = 0; row <= d; ++row)
        if (!top_present[d - row]) rows.push_back(row);
    int nr = static_cast<int>(rows.size());
    int nc = static_cast<int>(lower_cols.size()) + 1;

    // A row whose support columns are all zero still has a positive final
    // entry, forcing the (x+y)^d coordinate of any kernel vector to zero;
    // no nonnegative member can come out of that.
    for (int r : rows) {
        bool all_zero = true;
        for (int c : lower_cols) {
            if (ctx.at(r, c) != 0) {
                all_zero = false;
                break;
            }
        }
        if (all_zero) {
            if (stats) ++stats->rejected_shortcut;
            res.status = SupportStatus::RejectedPrefilter;
            return res;
        }
    }

    std::vector<std::int64_t> sub(static_cast<size_t>(nr) * nc);
    for (int r = 0; r < nr; ++r) {
        for (int c = 0; c < nc - 1; ++c) sub[static_cast<size_t>(r) * nc + c] = ctx.at(rows[r], lower_cols[c]);
        sub[static_cast<size_t>(r) * nc + (nc - 1)] = ctx.at(rows[r], ctx.ncols - 1);
    }

    bool prefilter_rejected = false;
    for (std::uint64_t p : cfg.prefilter_primes) {
        if (rank_mod_p(sub, nr, nc, p) == nc) {
            prefilter_rejected = true;
            break;
        }
    }
    if (prefilter_rejected) {
        if (stats) ++stats->rejected_prefilter;
        res.status = SupportStatus::RejectedPrefilter;
        if (audit_this) {
            if (stats) ++stats->audited;
            if (!nullspace_int(sub, nr, nc).empty()) {
                if (stats) ++stats->audit_failures;
                throw std::logic_error("modular prefilter rejected a support with a kernel");
            }
        }
        return res;
    }

    auto kernel = nullspace_int(sub, nr, nc);
    res.nullspace_dim = static_cast<int>(kernel.size());
    if (kernel.empty()) {
        if (stats) ++stats->rejected_dim0;
        res.status = SupportStatus::RejectedNullspaceDim0;
        return res;
    }
    if (kernel.size() >= 2) {
        if (stats) ++stats->rejected_dim_high;
        res.status = SupportStatus::RejectedNullspaceDimHigh;
        (void)want_dim_only_high;
        return res;
    }

    const auto& v = kernel[0];
    const Rational& last = v[nc - 1];
    if (last == 0) {
        if (stats) ++stats->rejected_negativity;
        res.status = SupportStatus::RejectedNegativity;
        return res;
    }
    std::vector<Rational> coeffs(lower_cols.size());
    bool shrink = false;
    for (size_t i = 0; i < lower_cols.size(); ++i) {
        coeffs[i] = v[i] / last;
        if (coeffs[i] < 0) {
            if (stats) ++stats->rejected_negativity;
            res.status = SupportStatus::RejectedNegativity;
            return res;
        }
        if (coeffs[i] == 0) shrink = true;
    }

    std::vector<Rational> top_vals(d + 1);
    bool any_top_positive = false, top_zero = false;
    for (int row = 0; row <= d; ++row) {
        int rx = d - row;
        if (!top_present[rx]) continue;
        Rational val(ctx.at(row, ctx.ncols - 1));
        for (size_t i = 0; i < lower_cols.size(); ++i) {
            std::int64_t a = ctx.at(row, lower_cols[i]);
            if (a != 0) val += coeffs[i] * Rational(a);
        }
        if (val < 0) {
            if (stats) ++stats->rejected_negativity;
            res.status = SupportStatus::RejectedNegativity;
            return res;
        }
        if (val == 0)
            top_zero = true;
        else
            any_top_positive = true;
        top_vals[rx] = val;
    }
    if (!any_top_positive) {
        if (stats) ++stats->rejected_degree;
        res.status = SupportStatus::RejectedDegreeDrop;
        return res;
    }
    if (shrink || top_zero) {
        if (stats) ++stats->rejected_shrink;
        res.status = SupportStatus::RejectedSupportShrink;
        return res;
    }

    BivariatePoly p;
    for (size_t i = 0; i < lower_cols.size(); ++i) p.add_term(ctx.columns[lower_cols[i]], coeffs[i]);
    for (int rx = 0; rx <= d; ++rx)
        if (top_present[rx]) p.add_term({rx, d - rx}, top_vals[rx]);

    if (!is_member(p, d).ok())
        throw std::logic_error("accepted support failed membership re-verification");
    res.status = SupportStatus::Accepted;
    res.poly = std::move(p);
    if (stats) ++stats->accepted;
    return res;
}

// ---------------------------------------------------------------------
// Candidate generation

struct Outer {
    std::vector<Monomial> fixed;
    bool fixed_has_top = false;
    bool fixed_has_lower = false;
    bool fixed_has_top_pos = false;
    bool fixed_has_top_neg = false;
};

struct GenPlan {
    int d = 0;
    int n_terms = 0;
    ConstraintSet cs;
    bool family_mode = false;
    std::vector<Outer> outers;
    std::vector<Monomial> pool;
    int pick = 0;

    std::vector<Mask128> adjacency;
    Mask128 dminus1;
    Mask128 topdeg;
    Mask128 lowdeg;
    Mask128 top_pos;  // degree-d monomials with (d-j) even
    Mask128 top_neg;  // degree-d monomials with (d-j) odd
    bool need_dminus1 = false;
    bool need_topdeg = false;
    bool need_lower = false;
};

std::vector<Monomial> mixed_monomials(int d, int max_degree, bool drop_even_dminus1) {
    std::vector<Monomial> out;
    for (int deg = 2; deg <= max_degree; ++deg) {
        for (int j = deg - 1; j >= 1; --j) {
            int k = deg - j;
            if (drop_even_dminus1 && deg == d - 1 && j % 2 == 0) continue;
            out.push_back({j, k});
        }
    }
    return out;
}

void finish_plan(GenPlan& plan) {
    int n = static_cast<int>(plan.pool.size());
    if (n > 128) throw std::invalid_argument("candidate pool too large for this search");
    plan.adjacency.assign(n, {});
    if (plan.cs.no_adjacent) {
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                if (i == j) continue;
                const auto& a = plan.pool[i];
                const auto& b = plan.pool[j];
                if (a.degree() == b.degree() && std::abs(a.j - b.j) == 1)
                    plan.adjacency[i].set(j);
            }
    }
    for (int i = 0; i < n; ++i) {
        if (plan.pool[i].degree() == plan.d - 1) plan.dminus1.set(i);
        if (plan.pool[i].degree() == plan.d) {
            plan.topdeg.set(i);
            // The x^d coefficient of p(x,1-x) is the alternating sum of the
            // degree-d coefficients, so a member needs top monomials of
            // both parities of d-j; single-parity tops are forced to zero.
            if ((plan.d - plan.pool[i].j) % 2 == 0)
                plan.top_pos.set(i);
            else
                plan.top_neg.set(i);
        }
        if (plan.pool[i].degree() < plan.d) plan.lowdeg.set(i);
    }
    plan.need_dminus1 = plan.cs.dminus1_presence && plan.d > 1;
    plan.need_lower = plan.cs.lower_nonempty;
}

GenPlan make_plan_sharp(int d, const ConstraintSet& cs) {
    GenPlan plan;
    plan.d = d;
    plan.n_terms = sharp_term_target(d);
    plan.cs = cs;
    if (cs.top_degree_pure) {
        Outer o;
        o.fixed = {Monomial{d, 0}, Monomial{0, d}};
        o.fixed_has_top = true;
        o.fixed_has_top_pos = true;
        o.fixed_has_top_neg = d % 2 == 1;
        plan.outers.push_back(std::move(o));
        plan.pool = mixed_monomials(d, d - 1, cs.dminus1_parity);
        plan.pick = plan.n_terms - 2;
    } else if (cs.pure_pair) {
        for (int a = 1; a <= d; ++a)
            for (int b = 1; b <= d; ++b) {
                Outer o;
                o.fixed = {Monomial{a, 0}, Monomial{0, b}};
                o.fixed_has_top = (a == d || b == d);
                o.fixed_has_lower = (a < d || b < d);
                if (a == d) o.fixed_has_top_pos = true;
                if (b == d) ((d % 2 == 0) ? o.fixed_has_top_pos : o.fixed_has_top_neg) = true;
                plan.outers.push_back(std::move(o));
            }
        plan.pool = mixed_monomials(d, d, false);
        plan.pick = plan.n_terms - 2;
        plan.need_topdeg = true;
    } else {
        // Unpruned oracle: every support of the target size.
        plan.outers.push_back({});
        for (int deg = 1; deg <= d; ++deg)
            for (int j = deg; j >= 0; --j) plan.pool.push_back({j, deg - j});
        plan.pick = plan.n_terms;
    }
    finish_plan(plan);
    return plan;
}

GenPlan make_plan_terms(int d, int n_terms, const ConstraintSet& cs) {
    GenPlan plan;
    plan.d = d;
    plan.n_terms = n_terms;
    plan.cs = cs;
    plan.family_mode = true;
    if (cs.pure_pair) {
        for (int a = 1; a <= d; ++a)
            for (int b = 1; b <= d; ++b) {
                Outer o;
                o.fixed = {Monomial{a, 0}, Monomial{0, b}};
                o.fixed_has_top = (a == d || b == d);
                o.fixed_has_lower = (a < d || b < d);
                if (a == d) o.fixed_has_top_pos = true;
                if (b == d) ((d % 2 == 0) ? o.fixed_has_top_pos : o.fixed_has_top_neg) = true;
                plan.outers.push_back(std::move(o));
            }
        plan.pool = mixed_monomials(d, d, false);
        plan.pick = n_terms - 2;
        plan.need_topdeg = true;
    } else {
        plan.outers.push_back({});
        for (int deg = 1; deg <= d; ++deg)
            for (int j = deg; j >= 0; --j) plan.pool.push_back({j, deg - j});
        plan.pick = n_terms;
        plan.need_topdeg = true;
    }
    finish_plan(plan);
    return plan;
}

std::uint64_t comb_count(int n, int k) {
    if (k < 0 || k > n) return 0;
    // Safe for the pool sizes this search allows.
    unsigned __int128 r = 1;
    for (int i = 1; i <= k; ++i) {
        r = r * static_cast<unsigned>(n - k + i) / static_cast<unsigned>(i);
    }
    if (r > static_cast<unsigned __int128>(UINT64_MAX))
        throw std::overflow_error("combination space exceeds 64 bits");
    return static_cast<std::uint64_t>(r);
}

// Combinations of {0..n-1} of size k in colexicographic order.
struct CombIter {
    int n = 0, k = 0;
    std::vector<int> idx;
    bool done = false;

    void unrank(std::uint64_t r) {
        idx.assign(k, 0);
        for (int s = k; s >= 1; --s) {
            int v = s - 1;
            std::uint64_t c = 0;
            // largest v with C(v, s) <= r
            for (int t = s; t <= n; ++t) {
                std::uint64_t cc = comb_count(t, s);
                if (cc <= r) {
                    v = t;
                    c = cc;
                } else {
                    break;
                }
            }
            idx[s - 1] = v;
            r -= c;
        }
        done = false;
    }

    void next() {
        for (int s = 0; s < k; ++s) {
            if (s == k - 1 || idx[s] + 1 < idx[s + 1]) {
                if (idx[s] + 1 >= n) {
                    done = true;
                    return;
                }
                ++idx[s];
                for (int t = 0; t < s; ++t) idx[t] = t;
                return;
            }
        }
        done = true;  // k == 0
    }
};

struct ChunkResult {
    std::vector<std::pair<Support, BivariatePoly>> accepted;
    std::vector<FamilyWitness> families;
    SearchStats stats;
};

ChunkResult run_chunk(const GenPlan& plan, const DegreeContext& ctx, const SearchConfig& cfg,
                      std::uint64_t lo, std::uint64_t hi, std::uint64_t audit_seed,
                      std::uint64_t audit_threshold) {
    ChunkResult out;
    std::uint64_t per_outer = comb_count(static_cast<int>(plan.pool.size()), plan.pick);
    if (per_outer == 0) return out;

    // Pool-index classification reused across supports.
    int d = plan.d;
    std::vector<int> pool_col(plan.pool.size(), -1);
    std::vector<int> pool_rx(plan.pool.size(), -1);
    for (size_t i = 0; i < plan.pool.size(); ++i) {
        if (plan.pool[i].degree() == d)
            pool_rx[i] = plan.pool[i].j;
        else
            pool_col[i] = ctx.col(plan.pool[i]);
    }

    std::vector<int> lower_cols;
    std::vector<char> top_present(d + 1, 0);

    CombIter it;
    it.n = static_cast<int>(plan.pool.size());
    it.k = plan.pick;

    std::uint64_t g = lo;
    size_t outer_idx = static_cast<size_t>(g / per_outer);
    it.unrank(g % per_outer);

    while (g < hi) {
        const Outer& outer = plan.outers[outer_idx];
        ++out.stats.candidates_seen;

        bool ok = true;
        Mask128 adj_acc;
        bool has_dm1 = false, has_top = outer.fixed_has_top, has_low = outer.fixed_has_lower;
        bool has_pos = outer.fixed_has_top_pos, has_neg = outer.fixed_has_top_neg;
        for (int s = 0; s < plan.pick && ok; ++s) {
            int i = it.idx[s];
            if (plan.cs.no_adjacent) {
                if (adj_acc.test(i)) {
                    ok = false;
                    break;
                }
                adj_acc.merge(plan.adjacency[i]);
            }
            if (plan.dminus1.test(i)) has_dm1 = true;
            if (plan.topdeg.test(i)) {
                has_top = true;
                if (plan.top_pos.test(i)) has_pos = true;
                if (plan.top_neg.test(i)) has_neg = true;
            }
            if (plan.lowdeg.test(i)) has_low = true;
        }
        if (ok && plan.need_dminus1 && !has_dm1) ok = false;
        if (ok && plan.need_topdeg && (!has_top || !has_pos || !has_neg)) ok = false;
        if (ok && plan.need_lower && !has_low) ok = false;

        if (ok) {
            lower_cols.clear();
            std::fill(top_present.begin(), top_present.end(), 0);
            for (const auto& m : outer.fixed) {
                if (m.degree() == d)
                    top_present[m.j] = 1;
                else
                    lower_cols.push_back(ctx.col(m));
            }
            for (int s = 0; s < plan.pick; ++s) {
                int i = it.idx[s];
                if (pool_rx[i] >= 0)
                    top_present[pool_rx[i]] = 1;
                else
                    lower_cols.push_back(pool_col[i]);
            }
            std::sort(lower_cols.begin(), lower_cols.end());

            ++out.stats.supports_tested;
            bool audit = splitmix64(audit_seed ^ g) < audit_threshold;
            SupportResult r =
                check_support_ctx(ctx, lower_cols, top_present, cfg, &out.stats, audit,
                                  plan.family_mode);
            std::vector<Monomial> ms;
            if (r.status == SupportStatus::Accepted ||
                (plan.family_mode && cfg.detect_families &&
                 r.status == SupportStatus::RejectedNullspaceDimHigh)) {
                ms = outer.fixed;
                for (int s = 0; s < plan.pick; ++s) ms.push_back(plan.pool[it.idx[s]]);
            }
            if (r.status == SupportStatus::Accepted) {
                out.accepted.emplace_back(Support(ms), std::move(*r.poly));
            } else if (plan.family_mode && cfg.detect_families &&
                       r.status == SupportStatus::RejectedNullspaceDimHigh) {
                Support sup(ms);
                FamilyProbe probe = probe_family(d, sup);
                if (probe.family) {
                    FamilyWitness w;
                    w.support = sup;
                    w.nullspace_dim = r.nullspace_dim;
                    w.member_a = probe.member_a;
                    w.member_b = probe.member_b;
                    out.families.push_back(std::move(w));
                }
            }
        }

        ++g;
        if (g >= hi) break;
        it.next();
        if (it.done) {
            ++outer_idx;
            it.unrank(0);
        }
    }
    return out;
}

SearchOutcome run_enumeration(const GenPlan& plan, const SearchConfig& cfg) {
    SearchOutcome out;
    out.degree = plan.d;
    out.n_terms = plan.n_terms;
    out.constraints = plan.cs;

    DegreeContext ctx(plan.d);
    std::uint64_t per_outer = comb_count(static_cast<int>(plan.pool.size()), plan.pick);
    std::uint64_t total = per_outer * plan.outers.size();
    out.candidate_space = total;
    if (total == 0) return out;

    if (cfg.shard_index >= cfg.shard_count) throw std::invalid_argument("shard index out of range");
    std::uint64_t lo = total * cfg.shard_index / cfg.shard_count;
    std::uint64_t hi = total * (cfg.shard_index + 1) / cfg.shard_count;

    std::ostringstream seed_src;
    seed_src << "sharppoly;d=" << plan.d << ";N=" << plan.n_terms << ";" << plan.cs.describe();
    std::uint64_t audit_seed = fnv1a64(seed_src.str());
    double frac = std::min(std::max(cfg.audit_fraction, 0.0), 1.0);
    std::uint64_t audit_threshold =
        frac >= 1.0 ? UINT64_MAX : static_cast<std::uint64_t>(frac * 18446744073709551615.0);

    int jobs = std::max(1, cfg.jobs);
    std::vector<ChunkResult> chunks;
    if (jobs == 1 || hi - lo < 1024) {
        chunks.push_back(run_chunk(plan, ctx, cfg, lo, hi, audit_seed, audit_threshold));
    } else {
        std::uint64_t nchunk = std::min<std::uint64_t>(static_cast<std::uint64_t>(jobs) * 8, hi - lo);
        chunks.resize(nchunk);
        std::atomic<std::uint64_t> next{0};
        std::vector<std::thread> threads;
        for (int w = 0; w < jobs; ++w) {
            threads.emplace_back([&]() {
                for (;;) {
                    std::uint64_t i = next.fetch_add(1);
                    if (i >= nchunk) return;
                    std::uint64_t a = lo + (hi - lo) * i / nchunk;
                    std::uint64_t b = lo + (hi - lo) * (i + 1) / nchunk;
                    chunks[i] = run_chunk(plan, ctx, cfg, a, b, audit_seed, audit_threshold);
                }
            });
        }
        for (auto& t : threads) t.join();
    }

    std::vector<std::pair<Support, BivariatePoly>> accepted;
    for (auto& c : chunks) {
        out.stats.merge(c.stats);
        for (auto& a : c.accepted) accepted.push_back(std::move(a));
        for (auto& f : c.families) out.families.push_back(std::move(f));
    }

    // No support is generated twice, so identical polynomials cannot occur;
    // sorting makes the output independent of shard/job slicing.
    std::sort(accepted.begin(), accepted.end(),
              [](const auto& a, const auto& b) { return poly_less(a.second, b.second); });
    std::sort(out.families.begin(), out.families.end(), [](const auto& a, const auto& b) {
        return std::lexicographical_compare(a.support.monomials.begin(), a.support.monomials.end(),
                                            b.support.monomials.begin(), b.support.monomials.end(),
                                            MonoLess{});
    });
    for (auto& [s, p] : accepted) out.raw.push_back(std::move(p));

    for (const auto& p : out.raw) out.canonical.push_back(canonical_form(p));
    std::sort(out.canonical.begin(), out.canonical.end(), poly_less);
    out.canonical.erase(std::unique(out.canonical.begin(), out.canonical.end()),
                        out.canonical.end());
    return out;
}

}  // namespace

SupportResult check_support(int d, const Support& support, const SearchConfig& cfg) {
    DegreeContext ctx(d);
    std::vector<int> lower_cols;
    std::vector<char> top_present(d + 1, 0);
    for (const auto& m : support.monomials) {
        if (m.degree() > d) throw std::invalid_argument("support monomial exceeds degree");
        if (m.degree() == d) {
            top_present[m.j] = 1;
        } else {
            int c = ctx.col(m);
            if (c < 0) throw std::invalid_argument("constant term is not an admissible monomial");
            lower_cols.push_back(c);
        }
    }
    std::sort(lower_cols.begin(), lower_cols.end());
    return check_support_ctx(ctx, lower_cols, top_present, cfg, nullptr, false, false);
}

SearchOutcome enumerate_sharp(int d, const SearchConfig& cfg) {
    ConstraintSet cs = cfg.constraints.value_or(d % 2 ? ConstraintSet::sharp_odd()
                                                      : ConstraintSet::sharp_even());
    GenPlan plan = make_plan_sharp(d, cs);
    return run_enumeration(plan, cfg);
}

SearchOutcome enumerate_with_terms(int d, int n_terms, const SearchConfig& cfg) {
    if (d > 2 * n_terms - 3) throw std::invalid_argument("no member can have that few terms");
    if (n_terms == sharp_term_target(d)) return enumerate_sharp(d, cfg);
    ConstraintSet cs = cfg.constraints.value_or(ConstraintSet::with_terms());
    GenPlan plan = make_plan_terms(d, n_terms, cs);
    return run_enumeration(plan, cfg);
}

}  // namespace sharp
