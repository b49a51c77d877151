#include "sharp/invariant.hpp"

namespace sharp {

BivariatePoly invariant_sharp(int d) {
    if (d <= 0 || d % 2 == 0)
        throw std::invalid_argument("invariant_sharp requires odd positive degree");
    BivariatePoly f;
    f.add_term({d, 0}, Rational(1));
    f.add_term({0, d}, Rational(1));
    for (int s = 1; 2 * s <= d - 1; ++s) {
        Rational c = make_rational(Integer(d) * binomial(d - 1 - s, s - 1), Integer(s));
        f.add_term({d - 2 * s, s}, c);
    }
    return f;
}

BivariatePoly conjugate_line_sum(int d) {
    if (d <= 0) throw std::invalid_argument("degree must be positive");
    // (x^2 + 4y)^t, built incrementally.
    BivariatePoly base;
    base.add_term({2, 0}, Rational(1));
    base.add_term({0, 1}, Rational(4));
    BivariatePoly pw(Rational(1));
    BivariatePoly acc;
    for (int t = 0; 2 * t <= d; ++t) {
        acc = acc + pw.scaled(Rational(binomial(d, 2 * t))) * BivariatePoly::monomial(d - 2 * t, 0);
        pw = pw * base;
    }
    return acc.scaled(make_rational(Integer(2), pow2(d)));
}

BivariatePoly invariant_even(int m) {
    if (m <= 0 || m % 2 != 0)
        throw std::invalid_argument("invariant_even requires even positive degree");
    return conjugate_line_sum(m) - BivariatePoly::monomial(0, m);
}

}  // namespace sharp
