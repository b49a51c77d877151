#include "sharp/linalg.hpp"

#include <algorithm>
#include <numeric>

namespace sharp {

namespace {

// Row-echelon reduction of an integer matrix by Bareiss' fraction-free
// rule; divisions are exact. Returns the pivot (row, col) list. Pivoting
// is deterministic: leftmost column, first usable row.
std::vector<std::pair<int, int>> bareiss(std::vector<Integer>& m, int rows, int cols) {
    auto at = [&](int r, int c) -> Integer& { return m[static_cast<size_t>(r) * cols + c]; };
    std::vector<std::pair<int, int>> pivots;
    Integer prev(1);
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int pr = -1;
        for (int i = r; i < rows; ++i) {
            if (at(i, c) != 0) {
                pr = i;
                break;
            }
        }
        if (pr < 0) continue;
        if (pr != r)
            for (int j = 0; j < cols; ++j) std::swap(at(pr, j), at(r, j));
        const Integer piv = at(r, c);
        for (int i = r + 1; i < rows; ++i) {
            const Integer f = at(i, c);
            for (int j = c; j < cols; ++j) {
                Integer t = at(i, j) * piv - at(r, j) * f;
                mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
                at(i, j) = t;
            }
        }
        prev = piv;
        pivots.emplace_back(r, c);
        ++r;
    }
    return pivots;
}

std::vector<std::vector<Rational>> kernel_from_echelon(const std::vector<Integer>& m, int cols,
                                                       const std::vector<std::pair<int, int>>& pivots) {
    auto at = [&](int r, int c) -> const Integer& {
        return m[static_cast<size_t>(r) * cols + c];
    };
    std::vector<bool> is_pivot(cols, false);
    for (auto [r, c] : pivots) is_pivot[c] = true;

    std::vector<std::vector<Rational>> basis;
    for (int f = 0; f < cols; ++f) {
        if (is_pivot[f]) continue;
        std::vector<Rational> v(cols, Rational(0));
        v[f] = 1;
        for (auto it = pivots.rbegin(); it != pivots.rend(); ++it) {
            auto [r, c] = *it;
            Rational s(0);
            for (int j = c + 1; j < cols; ++j)
                if (v[j] != 0) s += Rational(at(r, j)) * v[j];
            v[c] = -s / Rational(at(r, c));
        }
        // Integerize: clear denominators, divide out content, make the
        // last nonzero coordinate positive.
        Integer lcm(1);
        for (const auto& x : v)
            if (x != 0) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), x.get_den().get_mpz_t());
        Integer g(0);
        std::vector<Integer> w(cols);
        for (int j = 0; j < cols; ++j) {
            Rational t = v[j] * Rational(lcm);
            w[j] = t.get_num();
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), w[j].get_mpz_t());
        }
        if (g == 0) g = 1;
        int last = -1;
        for (int j = cols - 1; j >= 0; --j)
            if (w[j] != 0) {
                last = j;
                break;
            }
        if (last >= 0 && w[last] < 0) g = -g;
        for (int j = 0; j < cols; ++j) v[j] = Rational(w[j] / g);
        basis.push_back(std::move(v));
    }
    return basis;
}

// Clears denominators row by row; row scaling leaves the kernel intact.
std::vector<Integer> integerize(const RationalMatrix& m) {
    std::vector<Integer> out(static_cast<size_t>(m.rows) * m.cols);
    for (int r = 0; r < m.rows; ++r) {
        Integer lcm(1);
        for (int c = 0; c < m.cols; ++c)
            mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), m.at(r, c).get_den().get_mpz_t());
        for (int c = 0; c < m.cols; ++c) {
            Rational t = m.at(r, c) * Rational(lcm);
            out[static_cast<size_t>(r) * m.cols + c] = t.get_num();
        }
    }
    return out;
}

}  // namespace

std::vector<std::vector<Rational>> nullspace(const RationalMatrix& m) {
    if (m.cols == 0) return {};
    std::vector<Integer> w = integerize(m);
    auto pivots = bareiss(w, m.rows, m.cols);
    return kernel_from_echelon(w, m.cols, pivots);
}

int rank(const RationalMatrix& m) {
    if (m.cols == 0 || m.rows == 0) return 0;
    std::vector<Integer> w = integerize(m);
    return static_cast<int>(bareiss(w, m.rows, m.cols).size());
}

int rank_mod_p(const std::vector<std::int64_t>& a, int rows, int cols, std::uint64_t p) {
    std::vector<std::uint64_t> m(static_cast<size_t>(rows) * cols);
    for (size_t i = 0; i < m.size(); ++i) {
        std::int64_t v = a[i] % static_cast<std::int64_t>(p);
        if (v < 0) v += static_cast<std::int64_t>(p);
        m[i] = static_cast<std::uint64_t>(v);
    }
    auto at = [&](int r, int c) -> std::uint64_t& { return m[static_cast<size_t>(r) * cols + c]; };
    int rank = 0;
    for (int c = 0; c < cols && rank < rows; ++c) {
        int pr = -1;
        for (int i = rank; i < rows; ++i)
            if (at(i, c) != 0) {
                pr = i;
                break;
            }
        if (pr < 0) continue;
        if (pr != rank)
            for (int j = c; j < cols; ++j) std::swap(at(pr, j), at(rank, j));
        // Modular inverse via Fermat; p is prime.
        std::uint64_t inv = 1, base = at(rank, c) % p, e = p - 2;
        while (e) {
            if (e & 1) inv = inv * base % p;
            base = base * base % p;
            e >>= 1;
        }
        for (int i = rank + 1; i < rows; ++i) {
            if (at(i, c) == 0) continue;
            std::uint64_t f = at(i, c) * inv % p;
            for (int j = c; j < cols; ++j) at(i, j) = (at(i, j) + p * p - f * at(rank, j) % p) % p;
        }
        ++rank;
    }
    return rank;
}

PrefilterResult modular_prefilter(const RationalMatrix& m, std::uint64_t p) {
    if (m.cols == 0) return PrefilterResult::DefinitelyTrivialKernel;
    std::vector<std::int64_t> w(static_cast<size_t>(m.rows) * m.cols, 0);
    int usable_rows = 0;
    for (int r = 0; r < m.rows; ++r) {
        Integer lcm(1);
        for (int c = 0; c < m.cols; ++c)
            mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), m.at(r, c).get_den().get_mpz_t());
        if (mod_u64(lcm, p) == 0) continue;  // scaling by a multiple of p would be unsound; drop row
        for (int c = 0; c < m.cols; ++c) {
            Rational t = m.at(r, c) * Rational(lcm);
            w[static_cast<size_t>(usable_rows) * m.cols + c] =
                static_cast<std::int64_t>(mod_u64(t.get_num(), p));
        }
        ++usable_rows;
    }
    int rk = rank_mod_p(w, usable_rows, m.cols, p);
    return rk == m.cols ? PrefilterResult::DefinitelyTrivialKernel : PrefilterResult::Unknown;
}

std::vector<std::vector<Rational>> nullspace_int(const std::vector<std::int64_t>& a, int rows,
                                                 int cols) {
    if (cols == 0) return {};
    std::vector<Integer> w(a.begin(), a.end());
    auto pivots = bareiss(w, rows, cols);
    return kernel_from_echelon(w, cols, pivots);
}

}  // namespace sharp
