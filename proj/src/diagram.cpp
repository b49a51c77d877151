#include "sharp/diagram.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace sharp {

SignDiagram sign_diagram(const BivariatePoly& q, int d) {
    if (d < 0) throw std::invalid_argument("negative degree");
    auto qd = q.degree();
    if (qd.has_value() && *qd > d - 1)
        throw std::invalid_argument("quotient degree exceeds d-1");
    SignDiagram diag;
    diag.d = d;
    diag.grid.assign(static_cast<size_t>(d + 1) * (d + 1), Sign::Z);
    for (const auto& [m, c] : q.terms())
        diag.grid[static_cast<size_t>(m.j) * (d + 1) + m.k] = c > 0 ? Sign::P : Sign::N;
    return diag;
}

namespace {

// The coefficient of x^j y^k in (x+y-1)q is q(j-1,k) + q(j,k-1) - q(j,k):
// below + left - self. A sink pattern is one where those three signs force
// the value positive; a source pattern forces it negative.
bool is_sink(Sign self, Sign left, Sign below) {
    if (left == Sign::N || below == Sign::N || self == Sign::P) return false;
    if (self == Sign::N) return true;
    return left == Sign::P || below == Sign::P;
}

bool is_source(Sign self, Sign left, Sign below) {
    if (left == Sign::P || below == Sign::P || self == Sign::N) return false;
    if (self == Sign::P) return true;
    return left == Sign::N || below == Sign::N;
}

}  // namespace

DiagramAnalysis analyze(const SignDiagram& diag) {
    DiagramAnalysis res;
    for (int deg = 0; deg <= diag.d; ++deg) {
        for (int j = deg; j >= 0; --j) {
            int k = deg - j;
            Sign self = diag.at(j, k), left = diag.at(j, k - 1), below = diag.at(j - 1, k);
            if (is_sink(self, left, below)) res.sinks.push_back({j, k});
            if (is_source(self, left, below)) res.sources.push_back({j, k});
        }
    }
    res.sink_count = static_cast<int>(res.sinks.size());
    return res;
}

CheckReport structural_check(const BivariatePoly& p, int d) {
    CheckReport rep;
    rep.member_ok = is_member(p, d).ok();
    if (!rep.member_ok) return rep;

    SignDiagram diag = sign_diagram(quotient_q(p), d);
    rep.analysis = analyze(diag);

    std::set<Monomial, MonoLess> supp;
    for (const auto& m : p.support()) supp.insert(m);
    rep.sinks_subset_ok = true;
    for (const auto& s : rep.analysis.sinks) {
        if (!supp.count(s)) {
            rep.sinks_subset_ok = false;
            rep.sink_violations.push_back(s);
        }
    }
    rep.single_source_ok =
        rep.analysis.sources.size() == 1 && rep.analysis.sources[0] == Monomial{0, 0};
    rep.sink_bound_ok = rep.analysis.sink_count >= (d + 3 + 1) / 2;  // ceil((d+3)/2)
    rep.sinks_equal_support =
        rep.sinks_subset_ok && rep.analysis.sinks.size() == supp.size();
    return rep;
}

std::string render(const SignDiagram& diag) {
    DiagramAnalysis an = analyze(diag);
    std::set<std::pair<int, int>> sinks;
    for (const auto& m : an.sinks) sinks.insert({m.j, m.k});
    std::ostringstream os;
    for (int j = diag.d; j >= 0; --j) {
        os << (j == 0 ? "1   " : "x^" + std::to_string(j))
           << std::string(j == 0 ? 0 : std::max(0, 4 - 2 - (int)std::to_string(j).size()), ' ')
           << " |";
        for (int k = 0; k <= diag.d; ++k) {
            char c = diag.at(j, k) == Sign::P ? 'P' : diag.at(j, k) == Sign::N ? 'N' : '0';
            if (sinks.count({j, k}))
                os << '[' << c << ']';
            else
                os << ' ' << c << ' ';
        }
        os << '\n';
    }
    os << "      ";
    for (int k = 0; k <= diag.d; ++k) {
        std::string lab = k == 0 ? "1" : (k == 1 ? "y" : "y^" + std::to_string(k));
        os << lab << std::string(lab.size() < 3 ? 3 - lab.size() : 1, ' ');
    }
    os << '\n';
    return os.str();
}

}  // namespace sharp
