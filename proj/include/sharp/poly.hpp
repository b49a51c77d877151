#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "sharp/monomial.hpp"
#include "sharp/rational.hpp"

namespace sharp {

struct ExactDivisionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Univariate polynomial in x, dense coefficients, trailing zeros trimmed.
// Used for restrictions p(x, 1-x) to the line x+y=1.
struct UnivariatePoly {
    std::vector<Rational> coeffs;  // coeffs[i] multiplies x^i

    void trim();
    std::optional<int> degree() const;  // nullopt for the zero polynomial
    bool is_zero() const { return coeffs.empty(); }
    bool is_constant_one() const;
    friend bool operator==(const UnivariatePoly&, const UnivariatePoly&) = default;
};

// Sparse bivariate polynomial with exact rational coefficients.
// Invariant: the term map never stores a zero coefficient, so term_count()
// is the number of distinct monomials N(p).
class BivariatePoly {
  public:
    using TermMap = std::map<Monomial, Rational, MonoLess>;

    BivariatePoly() = default;
    explicit BivariatePoly(const Rational& constant);

    static BivariatePoly monomial(int j, int k, const Rational& coeff = Rational(1));

    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    int term_count() const { return static_cast<int>(terms_.size()); }
    // nullopt is the degree of the zero polynomial ("minus infinity").
    std::optional<int> degree() const;
    Rational coeff(const Monomial& m) const;
    Rational coeff(int j, int k) const { return coeff(Monomial{j, k}); }
    std::vector<Monomial> support() const;

    void add_term(const Monomial& m, const Rational& c);

    BivariatePoly operator-() const;
    BivariatePoly operator+(const BivariatePoly& o) const;
    BivariatePoly operator-(const BivariatePoly& o) const;
    BivariatePoly operator*(const BivariatePoly& o) const;
    BivariatePoly scaled(const Rational& c) const;

    friend bool operator==(const BivariatePoly&, const BivariatePoly&) = default;

  private:
    TermMap terms_;
};

BivariatePoly swap_vars(const BivariatePoly& p);
// Whichever of {p, swap(p)} has the lexicographically smaller sorted term
// list (canonical monomial order, then coefficient value).
BivariatePoly canonical_form(const BivariatePoly& p);
bool poly_less(const BivariatePoly& a, const BivariatePoly& b);
bool is_swap_symmetric(const BivariatePoly& p);

// p(x, 1-x), expanded exactly.
UnivariatePoly restrict_to_line(const BivariatePoly& p);

struct MembershipReport {
    bool line_ok = false;    // p(x,1-x) is the constant 1
    bool nonneg_ok = false;  // no stored coefficient is negative
    bool degree_ok = false;  // degree(p) == d
    std::optional<Monomial> negative_witness;
    std::optional<Rational> negative_coeff;
    std::optional<int> actual_degree;

    bool ok() const { return line_ok && nonneg_ok && degree_ok; }
};

// Checks membership of p in H(2,d): p == 1 whenever x+y == 1, all
// coefficients nonnegative, and degree exactly d. Failures are reported,
// not thrown.
MembershipReport is_member(const BivariatePoly& p, int d);

// Exact division: returns q with (x+y-1) * q == p - 1. Throws
// ExactDivisionError when p is not identically 1 on the line x+y=1.
BivariatePoly quotient_q(const BivariatePoly& p);

// x + y - 1, the divisor underlying quotient_q.
BivariatePoly line_poly();

// (x+y)^n expanded.
BivariatePoly binomial_power(int n);

}  // namespace sharp
