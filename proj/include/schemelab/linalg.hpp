#pragma once

/*
 * Exact linear algebra over the rationals: fraction-free rank, inverse,
 * characteristic polynomial, rational root extraction, nullspaces, and the
 * rational eigensolver the scheme machinery is built on.
 *
 * Everything is exact; there is no floating point in this header.
 */

#include <algorithm>
#include <cstddef>
#include <vector>

#include "errors.hpp"
#include "matrix.hpp"
#include "rational.hpp"

namespace schemelab {

/* Polynomial with coeff[i] = coefficient of x^i. */
using Poly = std::vector<Rational>;

inline Rational poly_eval(const Poly& p, const Rational& x) {
    Rational v = 0;
    for (std::size_t i = p.size(); i-- > 0;) v = v * x + p[i];
    return v;
}

inline std::size_t poly_degree(const Poly& p) {
    std::size_t d = p.size();
    while (d > 0 && p[d - 1] == 0) --d;
    return d == 0 ? 0 : d - 1;
}

/* Divides p by (x - r); p must vanish at r. */
inline Poly poly_deflate(const Poly& p, const Rational& r) {
    std::size_t n = poly_degree(p);
    Poly q(n);
    Rational carry = p[n];
    for (std::size_t i = n; i-- > 0;) {
        q[i] = carry;
        carry = p[i] + carry * r;
    }
    if (carry != 0) throw SchemeLabError("poly_deflate: not a root");
    return q;
}

namespace detail {

inline std::vector<Integer> all_divisors(Integer n) {
    if (n < 0) n = -n;
    std::vector<Integer> small, large;
    for (Integer i = 1; i * i <= n; ++i) {
        if (n % i == 0) {
            small.push_back(i);
            if (i * i != n) large.push_back(n / i);
        }
    }
    small.insert(small.end(), large.rbegin(), large.rend());
    return small;
}

/* Clears denominators and content, giving a primitive integer polynomial. */
inline std::vector<Integer> to_primitive(const Poly& p) {
    std::size_t n = poly_degree(p);
    Integer lcm = 1;
    for (std::size_t i = 0; i <= n; ++i) {
        Integer d = rat_den(p[i]);
        lcm = lcm / gcd_int(lcm, d) * d;
    }
    std::vector<Integer> c(n + 1);
    Integer content = 0;
    for (std::size_t i = 0; i <= n; ++i) {
        c[i] = to_integer(p[i] * lcm);
        content = gcd_int(content, c[i]);
    }
    if (content > 1)
        for (auto& x : c) x /= content;
    return c;
}

}  // namespace detail

/*
 * All rational roots of p with multiplicity, plus the unfactored residual
 * (residual degree 0 means the polynomial split completely).
 */
inline std::vector<std::pair<Rational, std::size_t>> rational_roots(Poly p, Poly* residual_out = nullptr) {
    std::vector<std::pair<Rational, std::size_t>> roots;
    auto add_root = [&](const Rational& r) {
        for (auto& [v, m] : roots)
            if (v == r) { ++m; return; }
        roots.emplace_back(r, 1);
    };
    while (poly_degree(p) >= 1) {
        if (p[0] == 0) {
            add_root(Rational(0));
            p = poly_deflate(p, Rational(0));
            continue;
        }
        auto c = detail::to_primitive(p);
        auto nums = detail::all_divisors(c.front());
        auto dens = detail::all_divisors(c.back());
        bool found = false;
        for (const auto& nu : nums) {
            for (const auto& de : dens) {
                if (gcd_int(nu, de) != 1) continue;
                for (int sign : {1, -1}) {
                    Rational cand(sign * nu, de);
                    if (poly_eval(p, cand) == 0) {
                        add_root(cand);
                        p = poly_deflate(p, cand);
                        found = true;
                        break;
                    }
                }
                if (found) break;
            }
            if (found) break;
        }
        if (!found) break;
    }
    if (residual_out) *residual_out = p;
    return roots;
}

/* Rank via fraction-free (Bareiss) elimination on an integer-scaled copy. */
inline std::size_t rank(const RMatrix& m) {
    std::size_t r = m.rows(), c = m.cols();
    std::vector<std::vector<Integer>> a(r, std::vector<Integer>(c));
    for (std::size_t i = 0; i < r; ++i) {
        Integer lcm = 1;
        for (std::size_t j = 0; j < c; ++j) {
            Integer d = rat_den(m(i, j));
            lcm = lcm / gcd_int(lcm, d) * d;
        }
        for (std::size_t j = 0; j < c; ++j) a[i][j] = to_integer(m(i, j) * lcm);
    }
    std::size_t rk = 0;
    Integer prev = 1;
    for (std::size_t col = 0; col < c && rk < r; ++col) {
        std::size_t piv = rk;
        while (piv < r && a[piv][col] == 0) ++piv;
        if (piv == r) continue;
        std::swap(a[piv], a[rk]);
        for (std::size_t i = rk + 1; i < r; ++i) {
            for (std::size_t j = col + 1; j < c; ++j)
                a[i][j] = (a[i][j] * a[rk][col] - a[i][col] * a[rk][j]) / prev;
            a[i][col] = 0;
        }
        prev = a[rk][col];
        ++rk;
    }
    return rk;
}

inline RMatrix inverse(const RMatrix& m) {
    if (!m.square()) throw DimensionMismatch("inverse: not square");
    std::size_t n = m.rows();
    RMatrix a = m, inv = RMatrix::identity(n);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && a(piv, col) == 0) ++piv;
        if (piv == n) throw SingularMatrix("inverse: singular matrix");
        if (piv != col)
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(a(piv, j), a(col, j));
                std::swap(inv(piv, j), inv(col, j));
            }
        Rational d = a(col, col);
        for (std::size_t j = 0; j < n; ++j) { a(col, j) /= d; inv(col, j) /= d; }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == col || a(i, col) == 0) continue;
            Rational f = a(i, col);
            for (std::size_t j = 0; j < n; ++j) {
                a(i, j) -= f * a(col, j);
                inv(i, j) -= f * inv(col, j);
            }
        }
    }
    return inv;
}

/* Monic characteristic polynomial via Faddeev-LeVerrier. */
inline Poly char_poly(const RMatrix& m) {
    if (!m.square()) throw DimensionMismatch("char_poly: not square");
    std::size_t n = m.rows();
    Poly p(n + 1);
    p[n] = 1;
    if (n == 0) return p;
    RMatrix N = m;
    p[n - 1] = -trace(N);
    for (std::size_t k = 2; k <= n; ++k) {
        RMatrix shifted = N;
        for (std::size_t i = 0; i < n; ++i) shifted(i, i) += p[n - k + 1];
        N = mat_mul(m, shifted);
        p[n - k] = -trace(N) / Rational(k);
    }
    return p;
}

/* Basis of the right nullspace (each column of the result is a basis vector). */
inline std::vector<RMatrix> nullspace(const RMatrix& m) {
    std::size_t r = m.rows(), c = m.cols();
    RMatrix a = m;
    std::vector<std::size_t> pivot_col;
    std::size_t row = 0;
    for (std::size_t col = 0; col < c && row < r; ++col) {
        std::size_t piv = row;
        while (piv < r && a(piv, col) == 0) ++piv;
        if (piv == r) continue;
        if (piv != row)
            for (std::size_t j = 0; j < c; ++j) std::swap(a(piv, j), a(row, j));
        Rational d = a(row, col);
        for (std::size_t j = 0; j < c; ++j) a(row, j) /= d;
        for (std::size_t i = 0; i < r; ++i) {
            if (i == row || a(i, col) == 0) continue;
            Rational f = a(i, col);
            for (std::size_t j = 0; j < c; ++j) a(i, j) -= f * a(row, j);
        }
        pivot_col.push_back(col);
        ++row;
    }
    std::vector<bool> is_pivot(c, false);
    for (auto pc : pivot_col) is_pivot[pc] = true;
    std::vector<RMatrix> basis;
    for (std::size_t free = 0; free < c; ++free) {
        if (is_pivot[free]) continue;
        RMatrix v(c, 1);
        v(free, 0) = 1;
        for (std::size_t i = 0; i < pivot_col.size(); ++i)
            v(pivot_col[i], 0) = -a(i, free);
        basis.push_back(std::move(v));
    }
    return basis;
}

struct EigenPair {
    Rational value;
    std::size_t multiplicity = 0;
    RMatrix vector;  // n x 1, entry 0 scaled to 1 when nonzero
};

/*
 * All eigenvalues (verified rational) with one eigenvector each, sorted by
 * descending eigenvalue. Eigenvectors are normalized so entry 0 equals 1
 * whenever the eigenspace allows it; otherwise the first nonzero entry is 1.
 */
inline std::vector<EigenPair> rational_eigen(const RMatrix& m) {
    if (!m.square()) throw DimensionMismatch("rational_eigen: not square");
    std::size_t n = m.rows();
    Poly residual;
    auto roots = rational_roots(char_poly(m), &residual);
    if (poly_degree(residual) >= 1) {
        std::string s = "irrational spectrum; residual degree " + std::to_string(poly_degree(residual));
        throw IrrationalSpectrum(s, residual);
    }
    std::sort(roots.begin(), roots.end(),
              [](const auto& a, const auto& b) { return a.first > b.first; });
    std::vector<EigenPair> out;
    for (const auto& [value, mult] : roots) {
        RMatrix shifted = m;
        for (std::size_t i = 0; i < n; ++i) shifted(i, i) -= value;
        auto basis = nullspace(shifted);
        if (basis.empty()) throw SchemeLabError("rational_eigen: internal: empty eigenspace");
        RMatrix v = basis.front();
        for (const auto& b : basis)
            if (b(0, 0) != 0) { v = b; break; }
        Rational lead = 0;
        for (std::size_t i = 0; i < n; ++i)
            if (v(i, 0) != 0) { lead = v(i, 0); break; }
        for (std::size_t i = 0; i < n; ++i) v(i, 0) /= lead;
        out.push_back({value, mult, std::move(v)});
    }
    return out;
}

}  // namespace schemelab
