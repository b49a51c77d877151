#pragma once

#include <compare>
#include <cstdint>
#include <string>

namespace sharp {

// A monomial x^j y^k. The canonical order everywhere in this project
// (matrix rows/columns, serialization, dedup) is graded lexicographic
// with x major: sort by total degree, then by j descending, so that
// within one degree x^d comes first and y^d last.
struct Monomial {
    int j = 0;
    int k = 0;

    int degree() const { return j + k; }
    Monomial swapped() const { return {k, j}; }
    bool is_mixed() const { return j > 0 && k > 0; }
    bool is_pure() const { return !is_mixed(); }

    friend bool operator==(const Monomial&, const Monomial&) = default;
};

inline bool mono_less(const Monomial& a, const Monomial& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    return a.j > b.j;
}

struct MonoLess {
    bool operator()(const Monomial& a, const Monomial& b) const { return mono_less(a, b); }
};

inline std::string to_string(const Monomial& m) {
    std::string s;
    if (m.j > 0) {
        s += "x";
        if (m.j > 1) s += "^" + std::to_string(m.j);
    }
    if (m.k > 0) {
        s += "y";
        if (m.k > 1) s += "^" + std::to_string(m.k);
    }
    if (s.empty()) s = "1";
    return s;
}

}  // namespace sharp
