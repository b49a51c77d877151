#include "sharp/textio.hpp"

#include <algorithm>
#include <cctype>
#include <vector>

namespace sharp {

std::string to_text(const BivariatePoly& p) {
    if (p.is_zero()) return "0";
    std::vector<std::pair<Monomial, Rational>> ts(p.terms().begin(), p.terms().end());
    std::sort(ts.begin(), ts.end(), [](const auto& a, const auto& b) {
        if (a.first.j != b.first.j) return a.first.j > b.first.j;
        return a.first.k < b.first.k;
    });
    std::string out;
    bool first = true;
    for (const auto& [m, c] : ts) {
        Rational a = abs(c);
        if (first) {
            if (c < 0) out += "-";
            first = false;
        } else {
            out += c < 0 ? " - " : " + ";
        }
        bool unit = (a == 1);
        if (!unit || m.degree() == 0) out += to_string(a);
        if (m.degree() > 0) out += to_string(m);
    }
    return out;
}

namespace {

struct Cursor {
    const std::string& s;
    size_t i = 0;

    void skip_ws() {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    }
    bool done() {
        skip_ws();
        return i >= s.size();
    }
    char peek() {
        skip_ws();
        return i < s.size() ? s[i] : '\0';
    }
};

std::string read_digits(Cursor& c) {
    c.skip_ws();
    std::string d;
    while (c.i < c.s.size() && std::isdigit(static_cast<unsigned char>(c.s[c.i])))
        d += c.s[c.i++];
    if (d.empty()) throw ParseError("expected digits at position " + std::to_string(c.i));
    return d;
}

int read_exponent(Cursor& c) {
    if (c.peek() == '^') {
        ++c.i;
        return std::stoi(read_digits(c));
    }
    return 1;
}

}  // namespace

BivariatePoly parse_poly(const std::string& text) {
    BivariatePoly p;
    Cursor c{text};
    if (c.done()) throw ParseError("empty polynomial");
    bool any = false;
    while (!c.done()) {
        int sign = 1;
        char ch = c.peek();
        if (ch == '+' || ch == '-') {
            sign = ch == '-' ? -1 : 1;
            ++c.i;
        } else if (any) {
            throw ParseError("expected '+' or '-' between terms");
        }
        c.skip_ws();
        Rational coef(1);
        bool saw_anything = false;
        if (std::isdigit(static_cast<unsigned char>(c.peek()))) {
            Integer num(read_digits(c));
            Integer den(1);
            if (c.peek() == '/') {
                ++c.i;
                den = Integer(read_digits(c));
            }
            coef = make_rational(num, den);
            saw_anything = true;
        }
        int j = 0, k = 0;
        if (c.peek() == 'x') {
            ++c.i;
            j = read_exponent(c);
            saw_anything = true;
        }
        if (c.peek() == 'y') {
            ++c.i;
            k = read_exponent(c);
            saw_anything = true;
        }
        if (!saw_anything) throw ParseError("malformed term in: " + text);
        if (sign < 0) coef = -coef;
        p.add_term(Monomial{j, k}, coef);
        any = true;
    }
    return p;
}

}  // namespace sharp
