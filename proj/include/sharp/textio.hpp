#pragma once

#include <stdexcept>
#include <string>

#include "sharp/poly.hpp"

namespace sharp {

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Text grammar shared by the CLI and JSON reports:
//   term  = [coef] ["x"["^"int]] ["y"["^"int]]
//   coef  = int | int"/"int
// terms joined by " + " or " - "; an omitted coefficient means 1.
// Printing lists terms by x-exponent descending, then y-exponent ascending,
// e.g. "x^7 + 7/2x^5y + 7/2xy + 7/2xy^5 + y^7".
std::string to_text(const BivariatePoly& p);
BivariatePoly parse_poly(const std::string& text);

}  // namespace sharp
