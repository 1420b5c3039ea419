#pragma once

/*
 * Builders for concrete schemes and their combinatorial ingredients:
 * binary hypercube schemes, degenerate linked-design schemes, the
 * Cameron-Seidel quadratic-form schemes, the Wocjan-Beth orthogonal
 * array + Hadamard construction of linked symmetric designs, orthogonal
 * arrays from complete MOLS sets over small fields, Kronecker products
 * of Hadamard matrices, and the Menon parameter families.
 *
 * Sign matrices (+1/-1, with 0 allowed for the sparse column systems)
 * are plain int grids; a small text format with '+' and '-' tokens is
 * accepted so printed matrices can be shipped as data files.
 */

#include <array>
#include <cstdint>
#include <istream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "rational.hpp"
#include "scheme.hpp"

namespace schemelab {

using SignMatrix = std::vector<std::vector<int>>;

/*
 * Grid parser: one row per line, entries separated by whitespace.
 * '+' and '-' are accepted as +1/-1; otherwise entries are integers.
 * Blank lines are skipped. Throws ParseError with 1-based coordinates.
 */
inline SignMatrix parse_sign_grid(std::istream& in) {
    SignMatrix out;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream row(line);
        std::vector<int> r;
        std::string tok;
        while (row >> tok) {
            if (tok == "+")
                r.push_back(1);
            else if (tok == "-")
                r.push_back(-1);
            else {
                try {
                    r.push_back(std::stoi(tok));
                } catch (const std::exception&) {
                    throw ParseError("bad grid entry '" + tok + "'", lineno, r.size() + 1);
                }
            }
        }
        if (r.empty()) continue;
        if (!out.empty() && r.size() != out.front().size())
            throw ParseError("ragged grid row", lineno, r.size());
        out.push_back(std::move(r));
    }
    if (out.empty()) throw ParseError("empty grid", lineno, 0);
    return out;
}

/* ------------------------------------------------------------------ */
/* Hadamard matrices                                                   */
/* ------------------------------------------------------------------ */

struct HadamardMatrix {
    SignMatrix e;

    std::size_t order() const { return e.size(); }

    /*
     * Validates H H^T = nI with all entries +-1. Throws NotRegular only
     * from require_regular; shape/orthogonality problems are
     * PreconditionFailed since they mean the input is not Hadamard at all.
     */
    void validate() const {
        std::size_t n = order();
        if (n == 0) throw PreconditionFailed("Hadamard matrix: empty");
        for (const auto& row : e) {
            if (row.size() != n) throw PreconditionFailed("Hadamard matrix: not square");
            for (int x : row)
                if (x != 1 && x != -1) throw PreconditionFailed("Hadamard matrix: entry not +-1");
        }
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) {
                long dot = 0;
                for (std::size_t t = 0; t < n; ++t) dot += e[i][t] * e[j][t];
                if (dot != 0) throw PreconditionFailed("Hadamard matrix: rows not orthogonal");
            }
    }

    /* Common row/column sum if regular, otherwise nullopt. */
    std::optional<long> regular_row_sum() const {
        std::size_t n = order();
        long s0 = 0;
        for (int x : e[0]) s0 += x;
        for (std::size_t i = 0; i < n; ++i) {
            long rs = 0, cs = 0;
            for (std::size_t t = 0; t < n; ++t) {
                rs += e[i][t];
                cs += e[t][i];
            }
            if (rs != s0 || cs != s0) return std::nullopt;
        }
        if (s0 * s0 != static_cast<long>(n)) return std::nullopt;
        return s0;
    }

    long require_regular() const {
        auto s = regular_row_sum();
        if (!s) throw NotRegular("Hadamard matrix is not regular");
        return *s;
    }
};

inline HadamardMatrix hadamard_from_grid(std::istream& in) {
    HadamardMatrix h{parse_sign_grid(in)};
    h.validate();
    return h;
}

/* Kronecker product; row sums multiply, so regularity is preserved. */
inline HadamardMatrix hadamard_tensor(const HadamardMatrix& a, const HadamardMatrix& b) {
    a.validate();
    b.validate();
    std::size_t na = a.order(), nb = b.order(), n = na * nb;
    SignMatrix out(n, std::vector<int>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            out[i][j] = a.e[i / nb][j / nb] * b.e[i % nb][j % nb];
    return HadamardMatrix{std::move(out)};
}

/* ------------------------------------------------------------------ */
/* Orthogonal arrays                                                   */
/* ------------------------------------------------------------------ */

struct OrthogonalArray {
    std::size_t symbols = 0;  // n; rows = n^2, entries 1..n
    SignMatrix entries;       // n^2 x N

    std::size_t cols() const { return entries.empty() ? 0 : entries.front().size(); }

    /* Every ordered symbol pair occurs exactly once in every column pair. */
    void validate() const {
        std::size_t n = symbols, rows = entries.size(), c = cols();
        if (n < 2 || rows != n * n || c < 2)
            throw PreconditionFailed("orthogonal array: bad shape");
        for (const auto& row : entries) {
            if (row.size() != c) throw PreconditionFailed("orthogonal array: ragged");
            for (int x : row)
                if (x < 1 || static_cast<std::size_t>(x) > n)
                    throw SymbolMismatch("orthogonal array: symbol out of range");
        }
        for (std::size_t a = 0; a < c; ++a)
            for (std::size_t b = a + 1; b < c; ++b) {
                std::vector<int> seen(n * n, 0);
                for (const auto& row : entries)
                    ++seen[static_cast<std::size_t>(row[a] - 1) * n + (row[b] - 1)];
                for (int s : seen)
                    if (s != 1) throw PreconditionFailed("orthogonal array: pair coverage fails");
            }
    }
};

inline OrthogonalArray oa_from_grid(std::istream& in, std::size_t symbols) {
    OrthogonalArray oa{symbols, parse_sign_grid(in)};
    oa.validate();
    return oa;
}

/*
 * MacNeish product: columnwise pairing of two arrays gives an OA over
 * symbols x symbols' with min(cols, cols') columns. Symbol (a, b) is
 * encoded as (a-1) * symbols' + b.
 */
inline OrthogonalArray oa_product(const OrthogonalArray& x, const OrthogonalArray& y) {
    x.validate();
    y.validate();
    std::size_t c = std::min(x.cols(), y.cols());
    OrthogonalArray out;
    out.symbols = x.symbols * y.symbols;
    out.entries.reserve(x.entries.size() * y.entries.size());
    for (const auto& xr : x.entries)
        for (const auto& yr : y.entries) {
            std::vector<int> row(c);
            for (std::size_t i = 0; i < c; ++i)
                row[i] = (xr[i] - 1) * static_cast<int>(y.symbols) + yr[i];
            out.entries.push_back(std::move(row));
        }
    out.validate();
    return out;
}

/* ------------------------------------------------------------------ */
/* Small finite fields                                                 */
/* ------------------------------------------------------------------ */

namespace detail {

/*
 * GF(p^e) for desk-scale orders. Elements are 0..q-1 encoding base-p
 * coefficient vectors of polynomials modulo a monic irreducible found
 * by trial division.
 */
class SmallField {
public:
    explicit SmallField(long q) : q_(q) {
        long p = smallest_prime_factor(q);
        long m = q, e = 0;
        while (m % p == 0) {
            m /= p;
            ++e;
        }
        if (m != 1 || q < 2) throw NotPrimePower("order is not a prime power");
        p_ = p;
        e_ = e;
        irr_ = find_irreducible();
        build_tables();
    }

    long order() const { return q_; }
    long add(long a, long b) const { return add_[a * q_ + b]; }
    long mul(long a, long b) const { return mul_[a * q_ + b]; }

private:
    long q_, p_ = 0, e_ = 0;
    std::vector<long> irr_;  // monic irreducible, coeffs of degree 0..e (irr_[e] == 1)
    std::vector<long> add_, mul_;

    static long smallest_prime_factor(long q) {
        for (long d = 2; d * d <= q; ++d)
            if (q % d == 0) return d;
        return q;
    }

    std::vector<long> digits(long a, long len) const {
        std::vector<long> d(len, 0);
        for (long i = 0; i < len; ++i) {
            d[i] = a % p_;
            a /= p_;
        }
        return d;
    }

    long pack(const std::vector<long>& d) const {
        long a = 0;
        for (std::size_t i = d.size(); i-- > 0;) a = a * p_ + d[i];
        return a;
    }

    /* Remainder of poly a (any degree) modulo poly b of degree db. */
    static std::vector<long> poly_mod(std::vector<long> a, const std::vector<long>& b, long db,
                                      long p) {
        for (std::size_t i = a.size(); i-- > static_cast<std::size_t>(db);) {
            long c = a[i] % p;
            if (c == 0) continue;
            for (long j = 0; j <= db; ++j)
                a[i - db + j] = ((a[i - db + j] - c * b[j]) % p + p * p) % p;
        }
        a.resize(db);
        return a;
    }

    static std::vector<long> poly_mul(const std::vector<long>& a, const std::vector<long>& b,
                                      long p) {
        std::vector<long> c(a.size() + b.size() - 1, 0);
        for (std::size_t i = 0; i < a.size(); ++i)
            for (std::size_t j = 0; j < b.size(); ++j) c[i + j] = (c[i + j] + a[i] * b[j]) % p;
        return c;
    }

    std::vector<long> find_irreducible() const {
        if (e_ == 1) return {0, 1};  // just x; unused since reduction is mod p
        long count = 1;
        for (long i = 0; i < e_; ++i) count *= p_;
        for (long lo = 0; lo < count; ++lo) {
            std::vector<long> cand = digits(lo, e_);
            cand.push_back(1);  // monic of degree e
            if (is_irreducible(cand)) return cand;
        }
        throw SchemeLabError("no irreducible polynomial found");
    }

    bool is_irreducible(const std::vector<long>& f) const {
        long deg = e_;
        for (long dd = 1; dd <= deg / 2; ++dd) {
            long count = 1;
            for (long i = 0; i < dd; ++i) count *= p_;
            for (long lo = 0; lo < count; ++lo) {
                std::vector<long> g = digits(lo, dd);
                g.push_back(1);  // monic divisor candidate of degree dd
                std::vector<long> r = poly_mod(f, g, dd, p_);
                bool zero = true;
                for (long c : r)
                    if (c % p_ != 0) zero = false;
                if (zero) return false;
            }
        }
        return true;
    }

    void build_tables() {
        add_.assign(q_ * q_, 0);
        mul_.assign(q_ * q_, 0);
        for (long a = 0; a < q_; ++a)
            for (long b = 0; b < q_; ++b) {
                std::vector<long> da = digits(a, e_), db = digits(b, e_);
                std::vector<long> s(e_);
                for (long i = 0; i < e_; ++i) s[i] = (da[i] + db[i]) % p_;
                add_[a * q_ + b] = pack(s);
                std::vector<long> m = poly_mul(da, db, p_);
                if (e_ > 1) m = poly_mod(m, irr_, e_, p_);
                m.resize(e_);
                mul_[a * q_ + b] = pack(m);
            }
    }
};

}  // namespace detail

/*
 * Orthogonal array of size q^2 x (q+1) from the complete set of q-1
 * MOLS L_t(r,c) = r + t*c over GF(q), plus the row and column
 * coordinate columns.
 */
inline OrthogonalArray oa_from_mols(long q) {
    if (q < 2 || q > 16) throw NotPrimePower("oa_from_mols: order out of supported range");
    detail::SmallField F(q);
    OrthogonalArray oa;
    oa.symbols = static_cast<std::size_t>(q);
    for (long r = 0; r < q; ++r)
        for (long c = 0; c < q; ++c) {
            std::vector<int> row;
            row.push_back(static_cast<int>(r + 1));
            row.push_back(static_cast<int>(c + 1));
            for (long t = 1; t < q; ++t)
                row.push_back(static_cast<int>(F.add(r, F.mul(t, c)) + 1));
            oa.entries.push_back(std::move(row));
        }
    oa.validate();
    return oa;
}

/* ------------------------------------------------------------------ */
/* Elementary scheme builders                                          */
/* ------------------------------------------------------------------ */

/* Binary Hamming scheme on 2^n vertices, relations by Hamming distance. */
inline ConcreteScheme hypercube_scheme(std::size_t n) {
    if (n < 1 || n > 16) throw PreconditionFailed("hypercube_scheme: n out of range");
    std::size_t v = std::size_t(1) << n;
    ConcreteScheme s(v, n);
    for (std::size_t x = 0; x < v; ++x)
        for (std::size_t y = x + 1; y < v; ++y) {
            std::size_t diff = x ^ y, dist = 0;
            while (diff) {
                dist += diff & 1;
                diff >>= 1;
            }
            s.set_rel(x, y, static_cast<std::uint8_t>(dist));
        }
    return s;
}

/*
 * Degenerate linked system with design parameters (v,1,0): w fibers of
 * v vertices arranged in v parallel w-cliques, one vertex per fiber per
 * clique. R1 = same clique, R2 = same fiber, R3 = the rest. Not
 * Q-polynomial for any v,w.
 */
inline ConcreteScheme degenerate_lssd(std::size_t v, std::size_t w) {
    if (v < 2 || w < 2) throw PreconditionFailed("degenerate_lssd: need v,w >= 2");
    std::size_t n = v * w;  // vertex (f,c) at index f*v + c
    ConcreteScheme s(n, 3);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a + 1; b < n; ++b) {
            std::size_t fa = a / v, ca = a % v, fb = b / v, cb = b % v;
            std::uint8_t r;
            if (fa != fb && ca == cb)
                r = 1;
            else if (fa == fb)
                r = 2;
            else
                r = 3;
            s.set_rel(a, b, r);
        }
    return s;
}

/* ------------------------------------------------------------------ */
/* Cameron-Seidel schemes from quadratic forms                         */
/* ------------------------------------------------------------------ */

/*
 * Alternating bilinear forms over GF(2), one n x n symmetric zero-
 * diagonal matrix per form, rows stored as bitmasks. Pairwise sums
 * must have full GF(2) rank.
 */
struct QuadraticFormSet {
    std::size_t dimension = 0;               // n, even
    std::vector<std::vector<std::uint32_t>> forms;

    void validate() const {
        std::size_t n = dimension;
        if (n == 0 || n % 2 != 0) throw PreconditionFailed("form set: dimension must be even");
        std::uint32_t mask = (n == 32) ? ~0u : ((1u << n) - 1);
        for (const auto& f : forms) {
            if (f.size() != n) throw PreconditionFailed("form set: bad matrix size");
            for (std::size_t i = 0; i < n; ++i) {
                if (f[i] & ~mask) throw PreconditionFailed("form set: stray bits");
                if ((f[i] >> i) & 1) throw PreconditionFailed("form set: nonzero diagonal");
                for (std::size_t j = 0; j < n; ++j)
                    if (((f[i] >> j) & 1) != ((f[j] >> i) & 1))
                        throw PreconditionFailed("form set: not symmetric");
            }
        }
        for (std::size_t a = 0; a < forms.size(); ++a)
            for (std::size_t b = a + 1; b < forms.size(); ++b) {
                std::vector<std::uint32_t> sum(n);
                for (std::size_t i = 0; i < n; ++i) sum[i] = forms[a][i] ^ forms[b][i];
                if (gf2_rank(sum) != n)
                    throw PreconditionFailed("form set: pair sum not full rank");
            }
    }

    static std::size_t gf2_rank(std::vector<std::uint32_t> rows) {
        std::size_t rank = 0;
        for (std::size_t c = 0; c < 32 && rank < rows.size(); ++c) {
            std::size_t piv = rank;
            while (piv < rows.size() && !((rows[piv] >> c) & 1)) ++piv;
            if (piv == rows.size()) continue;
            std::swap(rows[rank], rows[piv]);
            for (std::size_t i = 0; i < rows.size(); ++i)
                if (i != rank && ((rows[i] >> c) & 1)) rows[i] ^= rows[rank];
            ++rank;
        }
        return rank;
    }
};

namespace detail {

/* GF(2^m) with fixed irreducible polynomials, m up to 8. */
struct Gf2m {
    std::size_t m;
    std::uint32_t irr;

    explicit Gf2m(std::size_t mm) : m(mm) {
        static constexpr std::uint32_t polys[9] = {0,     0b11,      0b111,      0b1011,
                                                   0b10011, 0b100101, 0b1000011, 0b10000011,
                                                   0b100011011};
        if (m < 1 || m > 8) throw PreconditionFailed("Gf2m: degree out of range");
        irr = polys[m];
    }

    std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
        std::uint32_t r = 0;
        while (b) {
            if (b & 1) r ^= a;
            a <<= 1;
            if (a >> m) a ^= irr;
            b >>= 1;
        }
        return r;
    }

    std::uint32_t frob(std::uint32_t a, std::size_t times) const {
        for (std::size_t i = 0; i < times; ++i) a = mul(a, a);
        return a;
    }

    int trace(std::uint32_t a) const {
        std::uint32_t t = 0, x = a;
        for (std::size_t i = 0; i < m; ++i) {
            t ^= x;
            x = mul(x, x);
        }
        return static_cast<int>(t & 1);
    }
};

/* The eight printed forms for n = 4, rows as bitmasks (bit j = column j). */
inline std::vector<std::vector<std::uint32_t>> printed_forms_n4() {
    return {
        {0b0000, 0b0000, 0b0000, 0b0000}, {0b0010, 0b0001, 0b1000, 0b0100},
        {0b0100, 0b1000, 0b1001, 0b0110}, {0b0110, 0b1101, 0b0011, 0b0010},
        {0b1000, 0b1100, 0b1010, 0b0111}, {0b1010, 0b0101, 0b0010, 0b0001},
        {0b1100, 0b0100, 0b1011, 0b0101}, {0b1110, 0b1001, 0b0001, 0b0011},
    };
}

}  // namespace detail

/*
 * Form set for dimension n = 2r. r = 2 embeds the eight printed forms
 * (the full 2^{n-1} = 8). Other r use the symplectic recipe
 * B_a(x,y) = tr(y x^{2^r} (a + a^{2^r})) over GF(2^{2r}) with a running
 * over a transversal of GF(2^r), which yields up to 2^r forms.
 */
inline QuadraticFormSet cameron_seidel_forms(std::size_t r, std::size_t w) {
    if (r < 1 || r > 4 || w < 2) throw FormSetUnavailable("cameron_seidel_forms: bad r or w");
    std::size_t n = 2 * r;
    QuadraticFormSet fs;
    fs.dimension = n;
    if (r == 2) {
        auto all = detail::printed_forms_n4();
        if (w > all.size()) throw FormSetUnavailable("cameron_seidel_forms: w too large for r=2");
        fs.forms.assign(all.begin(), all.begin() + static_cast<long>(w));
    } else {
        if (w > (std::size_t(1) << r))
            throw FormSetUnavailable("cameron_seidel_forms: recipe yields at most 2^r forms");
        detail::Gf2m F(n);
        std::uint32_t size = 1u << n;
        std::vector<bool> subfield(size, false);
        for (std::uint32_t a = 0; a < size; ++a)
            if (F.frob(a, r) == a) subfield[a] = true;
        std::vector<std::uint32_t> reps;
        for (std::uint32_t a = 0; a < size && reps.size() < w; ++a) {
            bool fresh = true;
            for (std::uint32_t b : reps)
                if (subfield[a ^ b]) fresh = false;
            if (fresh) reps.push_back(a);
        }
        if (reps.size() < w) throw FormSetUnavailable("cameron_seidel_forms: transversal too small");
        for (std::uint32_t a : reps) {
            std::uint32_t c = a ^ F.frob(a, r);
            std::vector<std::uint32_t> B(n, 0);
            for (std::size_t s = 0; s < n; ++s) {
                std::uint32_t esr = F.frob(1u << s, r);
                for (std::size_t t = 0; t < n; ++t) {
                    if (t == s) continue;
                    if (F.trace(F.mul(F.mul(1u << t, esr), c))) B[s] |= 1u << t;
                }
            }
            fs.forms.push_back(std::move(B));
        }
    }
    fs.validate();
    return fs;
}

struct CameronSeidelScheme {
    ConcreteScheme scheme;
    QuadraticFormSet forms;
    /*
     * fibers[i] is the regular simplex for form i: 2^n sign vectors of
     * length 2^n - 1, each entry +-1; the true vectors carry a factor
     * 1/sqrt(2^n - 1).
     */
    std::vector<SignMatrix> fibers;
};

namespace detail {

/*
 * Evaluation vector of a quadratic form with the given bilinear matrix
 * over Z_2^n, points enumerated with variable 0 as the least
 * significant bit; the upper-triangle representative is used (the
 * first-order Reed-Muller coset is independent of this choice).
 */
inline std::vector<std::uint8_t> form_evaluation(const std::vector<std::uint32_t>& B,
                                                 std::size_t n) {
    std::size_t points = std::size_t(1) << n;
    std::vector<std::uint8_t> out(points, 0);
    for (std::size_t v = 0; v < points; ++v) {
        unsigned s = 0;
        for (std::size_t a = 0; a < n; ++a) {
            if (!((v >> a) & 1)) continue;
            for (std::size_t b = a + 1; b < n; ++b)
                if (((v >> b) & 1) && ((B[a] >> b) & 1)) s ^= 1;
        }
        out[v] = static_cast<std::uint8_t>(s);
    }
    return out;
}

/*
 * Shortened Reed-Muller coset as sign vectors: all 2^{n+1} affine
 * translates of the evaluation vector, keeping those vanishing at the
 * all-ones point and dropping that coordinate.
 */
inline SignMatrix coset_simplex(const std::vector<std::uint8_t>& eval, std::size_t n) {
    std::size_t points = std::size_t(1) << n;
    SignMatrix out;
    for (std::size_t eps = 0; eps < 2; ++eps)
        for (std::size_t lin = 0; lin < points; ++lin) {
            std::vector<int> word(points);
            for (std::size_t v = 0; v < points; ++v) {
                unsigned bit = eval[v] ^ static_cast<unsigned>(eps);
                std::size_t x = v & lin;
                while (x) {
                    bit ^= x & 1;
                    x >>= 1;
                }
                word[v] = bit ? 1 : -1;
            }
            if (word[points - 1] == -1) {
                word.pop_back();
                out.push_back(std::move(word));
            }
        }
    return out;
}

}  // namespace detail

/*
 * Linked system of symmetric designs on w * 2^{2r} vertices with design
 * parameters (2^{2r}, 2^{r-1}(2^r+1), 2^{r-1}(2^{r-1}+1)). R1 is the
 * heavy relation (cross-fiber inner product (2^r-1)/(2^{2r}-1)), R2 is
 * same-fiber, R3 the remaining cross-fiber relation with inner product
 * -(2^r+1)/(2^{2r}-1).
 */
inline CameronSeidelScheme cameron_seidel(std::size_t r, std::size_t w) {
    QuadraticFormSet fs = cameron_seidel_forms(r, w);
    std::size_t n = 2 * r, points = std::size_t(1) << n;
    std::vector<SignMatrix> fibers;
    for (const auto& B : fs.forms)
        fibers.push_back(detail::coset_simplex(detail::form_evaluation(B, n), n));

    long len = static_cast<long>(points) - 1;
    long heavy = (1L << r) - 1, light = -((1L << r) + 1);
    std::size_t total = w * points;
    ConcreteScheme s(total, 3);
    auto vec = [&](std::size_t idx) -> const std::vector<int>& {
        return fibers[idx / points][idx % points];
    };
    for (std::size_t a = 0; a < total; ++a)
        for (std::size_t b = a + 1; b < total; ++b) {
            const auto& xa = vec(a);
            const auto& xb = vec(b);
            long ip = 0;
            for (long t = 0; t < len; ++t) ip += xa[t] * xb[t];
            std::uint8_t rel;
            if (a / points == b / points) {
                if (ip != -1) throw GuardViolated("cameron_seidel: fiber is not a simplex");
                rel = 2;
            } else if (ip == heavy) {
                rel = 1;
            } else if (ip == light) {
                rel = 3;
            } else {
                throw GuardViolated("cameron_seidel: unexpected cross-fiber inner product");
            }
            s.set_rel(a, b, rel);
        }
    return CameronSeidelScheme{std::move(s), std::move(fs), std::move(fibers)};
}

/* ------------------------------------------------------------------ */
/* Wocjan-Beth: linked designs from an OA and a regular Hadamard       */
/* ------------------------------------------------------------------ */

struct LinkedDesignSystem {
    ConcreteScheme scheme{1, 0};      // w*n^2 vertices, 3 classes
    std::vector<SignMatrix> bases;    // one n^2 x n^2 column system per OA column
    std::vector<std::vector<SignMatrix>> mixed_grams;  // [i][j], i<j, order n^2
    long gram_row_sum = 0;            // p^2 where p is the Hadamard row sum
};

/*
 * For OA column i and symbol j, the n rows carrying that symbol are
 * replaced (top to bottom) by the rows of a regular Hadamard matrix of
 * order n, giving n columns M^{i,j,l} per symbol and an orthogonal
 * basis of n^2 sparse columns per OA column. Mixed Grams between bases
 * are regular Hadamard matrices of order n^2 with row sum p^2; their
 * positive entries define the heavy relation R1 of a linked system of
 * symmetric designs. R2 is same-fiber.
 *
 * block_h, when given, substitutes an independent regular Hadamard
 * matrix per (column, symbol) pair; block_h[i][j-1] replaces h for
 * symbol j in column i. All substitutes must share h's row sum.
 */
inline LinkedDesignSystem lssd_from_oa_hadamard(
    const OrthogonalArray& oa, const HadamardMatrix& h,
    const std::vector<std::vector<HadamardMatrix>>* block_h = nullptr) {
    oa.validate();
    h.validate();
    std::size_t n = oa.symbols, rows = n * n, N = oa.cols();
    if (h.order() != n) throw SymbolMismatch("Hadamard order does not match OA symbol count");
    long p = h.require_regular();
    if (block_h) {
        if (block_h->size() != N) throw PreconditionFailed("block_h: need one row per OA column");
        for (const auto& row : *block_h) {
            if (row.size() != n) throw PreconditionFailed("block_h: need one matrix per symbol");
            for (const auto& hb : row) {
                hb.validate();
                if (hb.order() != n) throw SymbolMismatch("block_h: order mismatch");
                if (hb.require_regular() != p)
                    throw NotRegular("block_h: row sum differs from the base matrix");
            }
        }
    }

    LinkedDesignSystem out;
    out.gram_row_sum = p * p;
    for (std::size_t i = 0; i < N; ++i) {
        SignMatrix M(rows, std::vector<int>(rows, 0));
        std::vector<std::size_t> seen(n + 1, 0);
        for (std::size_t row = 0; row < rows; ++row) {
            std::size_t j = static_cast<std::size_t>(oa.entries[row][i]);
            const SignMatrix& he = block_h ? (*block_h)[i][j - 1].e : h.e;
            std::size_t occurrence = seen[j]++;
            for (std::size_t l = 0; l < n; ++l)
                M[row][(j - 1) * n + l] = he[occurrence][l];
        }
        out.bases.push_back(std::move(M));
    }

    out.mixed_grams.assign(N, std::vector<SignMatrix>(N));
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = i + 1; j < N; ++j) {
            SignMatrix G(rows, std::vector<int>(rows));
            for (std::size_t a = 0; a < rows; ++a)
                for (std::size_t b = 0; b < rows; ++b) {
                    long dot = 0;
                    for (std::size_t t = 0; t < rows; ++t)
                        dot += out.bases[i][t][a] * out.bases[j][t][b];
                    if (dot != 1 && dot != -1)
                        throw GuardViolated("mixed Gram entry is not +-1");
                    G[a][b] = static_cast<int>(dot);
                }
            HadamardMatrix check{G};
            check.validate();
            if (check.require_regular() != p * p)
                throw NotRegular("mixed Gram row sum is not p^2");
            out.mixed_grams[i][j] = std::move(G);
        }

    std::size_t total = N * rows;  // vertex (fiber i, basis column c) at i*rows + c
    ConcreteScheme s(total, 3);
    for (std::size_t a = 0; a < total; ++a)
        for (std::size_t b = a + 1; b < total; ++b) {
            std::size_t ia = a / rows, ca = a % rows, ib = b / rows, cb = b % rows;
            std::uint8_t rel;
            if (ia == ib)
                rel = 2;
            else
                rel = out.mixed_grams[ia][ib][ca][cb] > 0 ? 1 : 3;
            s.set_rel(a, b, rel);
        }
    out.scheme = std::move(s);
    return out;
}

/* ------------------------------------------------------------------ */
/* Menon parameter families                                            */
/* ------------------------------------------------------------------ */

struct MenonFamily {
    Integer v, k, lambda;                    // (4u^2, 2u^2+u, u^2+u)
    Integer k_complement, lambda_complement; // (2u^2-u, u^2-u)
    Integer w_max;                           // 2u^2, except w = 2 forced when u is odd
};

inline MenonFamily menon_params(const Integer& u) {
    if (u < 1) throw PreconditionFailed("menon_params: u >= 1 required");
    MenonFamily f;
    f.v = 4 * u * u;
    f.k = 2 * u * u + u;
    f.lambda = u * u + u;
    f.k_complement = 2 * u * u - u;
    f.lambda_complement = u * u - u;
    f.w_max = (u % 2 == 1) ? Integer(2) : 2 * u * u;
    return f;
}

}  // namespace schemelab
