#include "sharp/constructor.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "sharp/invariant.hpp"
#include "sharp/nullsearch.hpp"

namespace sharp {

BivariatePoly compose_even(const BivariatePoly& p, const BivariatePoly& q) {
    auto dp = p.degree(), dq = q.degree();
    if (!dp || !dq || *dp % 2 == 0 || *dq % 2 == 0)
        throw std::invalid_argument("compose_even needs odd-degree inputs");
    int d1 = *dp, d2 = *dq;
    if (!is_member(p, d1).ok() || p.term_count() != sharp_term_target(d1) ||
        !is_member(q, d2).ok() || q.term_count() != sharp_term_target(d2))
        throw std::invalid_argument("compose_even needs minimal members");
    if (p.coeff(d1, 0) != 1 || p.coeff(0, d1) != 1)
        throw std::invalid_argument("first input is not of the form x^d + y^d + mixed");

    BivariatePoly p0 = p - BivariatePoly::monomial(d1, 0) - BivariatePoly::monomial(0, d1);
    BivariatePoly yq = BivariatePoly::monomial(0, d1) * q;
    BivariatePoly xd = BivariatePoly::monomial(d1, 0);

    // The construction presumes the three pieces touch disjoint monomials.
    std::set<Monomial, MonoLess> seen;
    for (const auto& part : {xd, yq, p0})
        for (const auto& m : part.support())
            if (!seen.insert(m).second)
                throw std::invalid_argument("term collision in even composition");

    BivariatePoly f = xd + yq + p0;
    int d = d1 + d2;
    if (!is_member(f, d).ok() || f.term_count() != p.term_count() + q.term_count() - 1)
        throw std::logic_error("even composition produced an invalid member");
    return f;
}

Candidate substitute(const BivariatePoly& f, int d, const SubstitutionParams& params) {
    if (params.m <= 0 || params.m % 2 != 0 || params.m >= d)
        throw std::invalid_argument("substitution needs even m < d");
    if (params.j < 0 || params.k < 0 || params.j + params.k + params.m > d)
        throw std::invalid_argument("substitution monomial exceeds degree");
    if (!(params.c > 0)) throw std::invalid_argument("substitution needs c > 0");

    BivariatePoly fm = invariant_even(params.m);
    BivariatePoly shift = BivariatePoly::monomial(params.j, params.k, params.c);
    Candidate cand;
    cand.params = params;
    cand.poly = f - shift * (fm - BivariatePoly(Rational(1)));
    MembershipReport rep = is_member(cand.poly, d);
    cand.accepted = rep.ok() && cand.poly.term_count() == f.term_count();
    return cand;
}

std::vector<Candidate> substitution_candidates(const BivariatePoly& f, int d) {
    std::vector<Candidate> out;
    std::map<Monomial, Rational, MonoLess> fs(f.terms().begin(), f.terms().end());

    for (int m = 2; m < d; m += 2) {
        BivariatePoly fm = invariant_even(m);
        std::vector<std::pair<Monomial, Rational>> plus;  // positive part of f_m
        for (const auto& [mono, c] : fm.terms())
            if (c > 0) plus.emplace_back(mono, c);

        for (int j = 0; j + m <= d; ++j) {
            for (int k = 0; j + k + m <= d; ++k) {
                // Every position hit by the positive part of x^j y^k f_m
                // must carry a term of f, otherwise some coefficient of the
                // result would go negative.
                bool inside = true;
                for (const auto& [mono, c] : plus) {
                    if (!fs.count({j + mono.j, k + mono.k})) {
                        inside = false;
                        break;
                    }
                }
                if (!inside) continue;
                // Ratios that cancel at least one term exactly; an accepted
                // substitution must cancel something, so this set is complete.
                std::set<Rational> ratios;
                for (const auto& [mono, c] : plus)
                    ratios.insert(fs.at({j + mono.j, k + mono.k}) / c);
                for (const Rational& c : ratios) {
                    Candidate cand = substitute(f, d, {m, j, k, c});
                    if (cand.accepted) out.push_back(std::move(cand));
                }
            }
        }
    }
    return out;
}

std::vector<ScanRecord> scan_uniqueness(const std::vector<int>& d_set, int depth) {
    std::vector<ScanRecord> records;
    for (int d : d_set) {
        if (d <= 0 || d % 2 == 0) throw std::invalid_argument("scan degrees must be odd");
        ScanRecord rec;
        rec.degree = d;
        BivariatePoly fd = invariant_sharp(d);
        BivariatePoly fd_canon = canonical_form(fd);

        std::vector<BivariatePoly> level{fd};
        std::vector<BivariatePoly> seen{fd_canon};
        auto known = [&](const BivariatePoly& c) {
            return std::find(seen.begin(), seen.end(), c) != seen.end();
        };

        for (int step = 0; step < depth && !level.empty(); ++step) {
            std::vector<BivariatePoly> next;
            for (const auto& f : level) {
                for (auto& cand : substitution_candidates(f, d)) {
                    BivariatePoly c = canonical_form(cand.poly);
                    if (known(c)) continue;
                    seen.push_back(c);
                    next.push_back(cand.poly);
                    if (!rec.found_noninvariant) {
                        rec.found_noninvariant = true;
                        rec.witness_params = cand.params;
                        rec.witness = cand.poly;
                    }
                }
            }
            level = std::move(next);
        }
        records.push_back(std::move(rec));
    }
    return records;
}

std::vector<Integer> pell_degrees(int count) {
    if (count < 1) throw std::invalid_argument("count must be positive");
    std::vector<Integer> out;
    Integer a(7), b(4);  // (7 + 4 sqrt 3)^k = a_k + b_k sqrt 3
    for (int k = 1; k <= count; ++k) {
        out.push_back(a);
        Integer na = 7 * a + 12 * b;
        Integer nb = 4 * a + 7 * b;
        a = na;
        b = nb;
    }
    for (size_t i = 2; i < out.size(); ++i) {
        if (out[i] != 14 * out[i - 1] - out[i - 2])
            throw std::logic_error("pell sequence failed the recurrence cross-check");
    }
    return out;
}

std::vector<DegreeClassification> theorem_degrees(int d_max) {
    std::set<Integer> pell;
    if (d_max >= 7)
        for (const auto& v : pell_degrees(12))
            if (v <= d_max) pell.insert(v);

    std::vector<DegreeClassification> out;
    for (int d = 1; d <= d_max; ++d) {
        DegreeClassification c;
        c.degree = d;
        if (d % 2 == 0) c.failure_clauses.push_back(UniquenessClause::EvenDegree);
        if (d % 4 == 3 && d >= 7) c.failure_clauses.push_back(UniquenessClause::ThreeMod4);
        if (pell.count(Integer(d))) c.failure_clauses.push_back(UniquenessClause::PellForm);
        if (d > 1 && d % 6 == 1) c.failure_clauses.push_back(UniquenessClause::OneMod6);
        out.push_back(std::move(c));
    }
    return out;
}

}  // namespace sharp
