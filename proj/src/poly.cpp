#include "sharp/poly.hpp"

#include <algorithm>

namespace sharp {

void UnivariatePoly::trim() {
    while (!coeffs.empty() && coeffs.back() == 0) coeffs.pop_back();
}

std::optional<int> UnivariatePoly::degree() const {
    if (coeffs.empty()) return std::nullopt;
    return static_cast<int>(coeffs.size()) - 1;
}

bool UnivariatePoly::is_constant_one() const {
    return coeffs.size() == 1 && coeffs[0] == 1;
}

BivariatePoly::BivariatePoly(const Rational& constant) {
    if (constant != 0) terms_[Monomial{0, 0}] = constant;
}

BivariatePoly BivariatePoly::monomial(int j, int k, const Rational& c) {
    if (j < 0 || k < 0) throw std::invalid_argument("negative exponent");
    BivariatePoly p;
    if (c != 0) p.terms_[Monomial{j, k}] = c;
    return p;
}

std::optional<int> BivariatePoly::degree() const {
    if (terms_.empty()) return std::nullopt;
    // Graded order: the last term has maximal total degree.
    return terms_.rbegin()->first.degree();
}

Rational BivariatePoly::coeff(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Rational(0) : it->second;
}

std::vector<Monomial> BivariatePoly::support() const {
    std::vector<Monomial> s;
    s.reserve(terms_.size());
    for (const auto& [m, c] : terms_) s.push_back(m);
    return s;
}

void BivariatePoly::add_term(const Monomial& m, const Rational& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

BivariatePoly BivariatePoly::operator-() const {
    BivariatePoly r;
    for (const auto& [m, c] : terms_) r.terms_[m] = -c;
    return r;
}

BivariatePoly BivariatePoly::operator+(const BivariatePoly& o) const {
    BivariatePoly r = *this;
    for (const auto& [m, c] : o.terms_) r.add_term(m, c);
    return r;
}

BivariatePoly BivariatePoly::operator-(const BivariatePoly& o) const {
    BivariatePoly r = *this;
    for (const auto& [m, c] : o.terms_) r.add_term(m, -c);
    return r;
}

BivariatePoly BivariatePoly::operator*(const BivariatePoly& o) const {
    BivariatePoly r;
    for (const auto& [ma, ca] : terms_)
        for (const auto& [mb, cb] : o.terms_)
            r.add_term(Monomial{ma.j + mb.j, ma.k + mb.k}, ca * cb);
    return r;
}

BivariatePoly BivariatePoly::scaled(const Rational& c) const {
    BivariatePoly r;
    if (c == 0) return r;
    for (const auto& [m, v] : terms_) r.terms_[m] = v * c;
    return r;
}

BivariatePoly swap_vars(const BivariatePoly& p) {
    BivariatePoly r;
    for (const auto& [m, c] : p.terms()) r.add_term(m.swapped(), c);
    return r;
}

bool poly_less(const BivariatePoly& a, const BivariatePoly& b) {
    auto ia = a.terms().begin(), ea = a.terms().end();
    auto ib = b.terms().begin(), eb = b.terms().end();
    for (; ia != ea && ib != eb; ++ia, ++ib) {
        if (mono_less(ia->first, ib->first)) return true;
        if (mono_less(ib->first, ia->first)) return false;
        int c = cmp(ia->second, ib->second);
        if (c != 0) return c < 0;
    }
    return ia == ea && ib != eb;
}

BivariatePoly canonical_form(const BivariatePoly& p) {
    BivariatePoly s = swap_vars(p);
    return poly_less(s, p) ? s : p;
}

bool is_swap_symmetric(const BivariatePoly& p) { return swap_vars(p) == p; }

UnivariatePoly restrict_to_line(const BivariatePoly& p) {
    UnivariatePoly h;
    int d = p.degree().value_or(0);
    h.coeffs.assign(static_cast<size_t>(d) + 1, Rational(0));
    for (const auto& [m, c] : p.terms()) {
        // x^j (1-x)^k contributes (-1)^i C(k,i) to x^(j+i).
        for (int i = 0; i <= m.k; ++i) {
            Rational t = c * binomial(m.k, i);
            if (i % 2) t = -t;
            h.coeffs[m.j + i] += t;
        }
    }
    h.trim();
    return h;
}

MembershipReport is_member(const BivariatePoly& p, int d) {
    MembershipReport rep;
    rep.line_ok = restrict_to_line(p).is_constant_one();
    rep.nonneg_ok = true;
    for (const auto& [m, c] : p.terms()) {
        if (c < 0) {
            rep.nonneg_ok = false;
            rep.negative_witness = m;
            rep.negative_coeff = c;
            break;
        }
    }
    rep.actual_degree = p.degree();
    rep.degree_ok = rep.actual_degree.has_value() && *rep.actual_degree == d;
    return rep;
}

BivariatePoly quotient_q(const BivariatePoly& p) {
    BivariatePoly f = p - BivariatePoly(Rational(1));
    if (f.is_zero()) return BivariatePoly{};
    int dx = 0;
    for (const auto& [m, c] : f.terms()) dx = std::max(dx, m.j);
    int dy = 0;
    for (const auto& [m, c] : f.terms()) dy = std::max(dy, m.k);

    // View f as a polynomial in x with coefficients in Q[y] and divide
    // synthetically by x - (1-y); the divisor is exactly x + y - 1.
    // Each carry multiplies by (1-y), so y-degrees can reach dx+dy.
    size_t w = static_cast<size_t>(dx) + static_cast<size_t>(dy) + 2;
    std::vector<std::vector<Rational>> a(static_cast<size_t>(dx) + 1,
                                         std::vector<Rational>(w, Rational(0)));
    for (const auto& [m, c] : f.terms()) a[m.j][m.k] = c;

    auto mul_one_minus_y = [&](const std::vector<Rational>& v) {
        std::vector<Rational> r(w, Rational(0));
        for (size_t i = 0; i < w; ++i) {
            r[i] += v[i];
            if (i + 1 < w) r[i + 1] -= v[i];
        }
        return r;
    };

    std::vector<std::vector<Rational>> q(static_cast<size_t>(dx) + 1,
                                         std::vector<Rational>(w, Rational(0)));
    std::vector<Rational> carry(w, Rational(0));  // (1-y) * q_{j+1}
    for (int j = dx - 1; j >= 0; --j) {
        for (size_t i = 0; i < w; ++i) q[j][i] = a[j + 1][i] + carry[i];
        carry = mul_one_minus_y(q[j]);
    }
    // Remainder a_0 + (1-y) q_0 is (p-1)(1-y, y); it vanishes iff p == 1
    // on the line.
    for (size_t i = 0; i < w; ++i) {
        if (a[0][i] + carry[i] != 0)
            throw ExactDivisionError("polynomial is not constant 1 on x+y=1");
    }

    BivariatePoly result;
    for (int j = 0; j <= dx; ++j)
        for (size_t i = 0; i < w; ++i)
            if (q[j][i] != 0) result.add_term(Monomial{j, static_cast<int>(i)}, q[j][i]);
    return result;
}

BivariatePoly line_poly() {
    BivariatePoly p;
    p.add_term({1, 0}, Rational(1));
    p.add_term({0, 1}, Rational(1));
    p.add_term({0, 0}, Rational(-1));
    return p;
}

BivariatePoly binomial_power(int n) {
    BivariatePoly p;
    for (int r = 0; r <= n; ++r) p.add_term({r, n - r}, Rational(binomial(n, r)));
    return p;
}

}  // namespace sharp
