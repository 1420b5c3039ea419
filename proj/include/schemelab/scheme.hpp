#pragma once

/*
 * Parameter-level and concrete-level symmetric association schemes.
 *
 * A ParameterSet carries the eigenmatrices P and Q together with the
 * intersection tensor p^k_ij and Krein tensor q^k_ij. Completion paths build
 * a full ParameterSet from any one of: P, Q, the array L1 (when it has
 * distinct eigenvalues), a Krein array, or a full intersection tensor.
 * ConcreteScheme stores an explicit vertex-pair relation partition and
 * verify_scheme_axioms recovers its ParameterSet by triple counting.
 */

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "errors.hpp"
#include "linalg.hpp"
#include "matrix.hpp"
#include "rational.hpp"
#include "verdict.hpp"

namespace schemelab {

/* Structure-constant tensor, indexed [i][j][k] (so t[i][j][k] is p^k_ij). */
using Tensor = std::vector<std::vector<std::vector<Rational>>>;

inline Tensor make_tensor(std::size_t classes) {
    return Tensor(classes, std::vector<std::vector<Rational>>(
                               classes, std::vector<Rational>(classes, Rational(0))));
}

/*
 * Krein array {b*_0, ..., b*_{d-1}; c*_1, ..., c*_d} of a cometric ordering.
 * a*_i = m - b*_i - c*_i with m = b*_0, taking b*_d = c*_0 = 0.
 */
struct KreinArray {
    std::size_t d = 0;
    std::vector<Rational> b_star;  // indices 0..d-1
    std::vector<Rational> c_star;  // indices 1..d (entry 0 unused, kept 0)

    Rational m() const { return b_star.at(0); }
    Rational b(std::size_t i) const { return i < d ? b_star[i] : Rational(0); }
    Rational c(std::size_t i) const { return (i >= 1 && i <= d) ? c_star[i] : Rational(0); }
    Rational a(std::size_t i) const { return i <= d ? m() - b(i) - c(i) : Rational(0); }
};

inline KreinArray make_krein_array(std::vector<Rational> b, std::vector<Rational> c_from_1) {
    KreinArray ka;
    ka.d = b.size();
    if (c_from_1.size() != ka.d) throw DimensionMismatch("krein array: need d b's and d c's");
    ka.b_star = std::move(b);
    ka.c_star.assign(ka.d + 1, Rational(0));
    for (std::size_t i = 1; i <= ka.d; ++i) ka.c_star[i] = c_from_1[i - 1];
    for (std::size_t i = 0; i < ka.d; ++i)
        if (ka.b_star[i] <= 0) throw SchemeLabError("krein array: b*_i must be positive for i < d");
    for (std::size_t i = 1; i <= ka.d; ++i)
        if (ka.c_star[i] <= 0) throw SchemeLabError("krein array: c*_i must be positive for i >= 1");
    return ka;
}

struct ParameterSet {
    std::size_t d = 0;
    Rational n;
    RMatrix P, Q;      // (d+1) x (d+1)
    Tensor p_tensor;   // p^k_ij at p_tensor[i][j][k]
    Tensor q_tensor;   // q^k_ij at q_tensor[i][j][k]
    std::string completion_path;

    Rational valency(std::size_t i) const { return P(0, i); }
    Rational multiplicity(std::size_t j) const { return Q(0, j); }

    /* Intersection array L_i with [L_i]_{kj} = p^k_ij. */
    RMatrix L(std::size_t i) const {
        RMatrix m(d + 1, d + 1);
        for (std::size_t k = 0; k <= d; ++k)
            for (std::size_t j = 0; j <= d; ++j) m(k, j) = p_tensor[i][j][k];
        return m;
    }
    /* Krein array L_i* with [L_i*]_{kj} = q^k_ij. */
    RMatrix Lstar(std::size_t i) const {
        RMatrix m(d + 1, d + 1);
        for (std::size_t k = 0; k <= d; ++k)
            for (std::size_t j = 0; j <= d; ++j) m(k, j) = q_tensor[i][j][k];
        return m;
    }
};

/*
 * Both structure-constant tensors from the eigenmatrices:
 *   p^l_ij = (1/(n k_l)) sum_h m_h P_hi P_hj P_hl
 *   q^l_ij = (1/(n m_l)) sum_h k_h Q_hi Q_hj Q_hl
 */
inline std::pair<Tensor, Tensor> tensors_from_eigenmatrices(const RMatrix& P, const RMatrix& Q) {
    if (!P.square() || P.rows() != Q.rows() || !Q.square())
        throw DimensionMismatch("tensors_from_eigenmatrices: P, Q must be square and same size");
    std::size_t cnt = P.rows();
    Rational n = 0;
    for (std::size_t i = 0; i < cnt; ++i) n += P(0, i);
    Tensor p = make_tensor(cnt), q = make_tensor(cnt);
    for (std::size_t i = 0; i < cnt; ++i)
        for (std::size_t j = i; j < cnt; ++j)
            for (std::size_t l = 0; l < cnt; ++l) {
                Rational sp = 0, sq = 0;
                for (std::size_t h = 0; h < cnt; ++h) {
                    sp += Q(0, h) * P(h, i) * P(h, j) * P(h, l);
                    sq += P(0, h) * Q(h, i) * Q(h, j) * Q(h, l);
                }
                p[i][j][l] = sp / (n * P(0, l));
                q[i][j][l] = sq / (n * Q(0, l));
                p[j][i][l] = p[i][j][l];
                q[j][i][l] = q[i][j][l];
            }
    return {std::move(p), std::move(q)};
}

/* Validates the orthogonality relations and assembles the full ParameterSet. */
inline ParameterSet make_parameter_set(const RMatrix& P, const RMatrix& Q, std::string path) {
    if (!P.square() || !Q.square() || P.rows() != Q.rows())
        throw DimensionMismatch("parameter set: P, Q must be square and same size");
    std::size_t cnt = P.rows();
    Rational n = 0;
    for (std::size_t i = 0; i < cnt; ++i) {
        if (P(0, i) <= 0 || Q(0, i) <= 0)
            throw SchemeLabError("parameter set: valencies and multiplicities must be positive");
        n += P(0, i);
    }
    Rational nq = 0;
    for (std::size_t j = 0; j < cnt; ++j) nq += Q(0, j);
    if (nq != n) throw SchemeLabError("parameter set: valency and multiplicity sums differ");
    for (std::size_t i = 0; i < cnt; ++i)
        if (P(i, 0) != 1 || Q(i, 0) != 1)
            throw SchemeLabError("parameter set: column 0 of P and Q must be all ones");
    if (mat_mul(P, Q) != scalar_mul(n, RMatrix::identity(cnt)))
        throw SchemeLabError("parameter set: PQ = nI fails");
    for (std::size_t i = 0; i < cnt; ++i)
        for (std::size_t j = 0; j < cnt; ++j)
            if (Q(0, i) * P(i, j) != Q(j, i) * P(0, j))
                throw SchemeLabError("parameter set: Delta_m P = Q^T Delta_k fails");

    ParameterSet ps;
    ps.d = cnt - 1;
    ps.n = n;
    ps.P = P;
    ps.Q = Q;
    auto [p, q] = tensors_from_eigenmatrices(P, Q);
    ps.p_tensor = std::move(p);
    ps.q_tensor = std::move(q);
    ps.completion_path = std::move(path);
    return ps;
}

/* Q = n P^{-1} with n read off row 0; the same map inverts Q back to P. */
inline RMatrix q_from_p(const RMatrix& P) {
    if (!P.square()) throw DimensionMismatch("q_from_p: not square");
    Rational n = 0;
    for (std::size_t i = 0; i < P.cols(); ++i) {
        if (P(0, i) <= 0) throw SchemeLabError("q_from_p: row 0 must be positive");
        n += P(0, i);
    }
    return scalar_mul(n, inverse(P));
}
inline RMatrix p_from_q(const RMatrix& Q) { return q_from_p(Q); }

inline ParameterSet params_from_P(const RMatrix& P) {
    return make_parameter_set(P, q_from_p(P), "P");
}
inline ParameterSet params_from_Q(const RMatrix& Q) {
    return make_parameter_set(p_from_q(Q), Q, "Q");
}

/*
 * Valencies from an intersection array: k_0 = 1 and k_l L[l][j] = k_j L[j][l]
 * propagated over the nonzero support, which must be connected.
 */
inline std::vector<Rational> valencies_from_L1(const RMatrix& L1) {
    if (!L1.square()) throw DimensionMismatch("valencies_from_L1: not square");
    std::size_t cnt = L1.rows();
    std::vector<Rational> k(cnt, Rational(0));
    std::vector<bool> known(cnt, false);
    k[0] = 1;
    known[0] = true;
    std::vector<std::size_t> queue{0};
    while (!queue.empty()) {
        std::size_t j = queue.back();
        queue.pop_back();
        for (std::size_t l = 0; l < cnt; ++l) {
            if (known[l] || L1(l, j) == 0) continue;
            k[l] = k[j] * L1(j, l) / L1(l, j);
            known[l] = true;
            queue.push_back(l);
        }
    }
    for (std::size_t l = 0; l < cnt; ++l)
        if (!known[l]) throw SchemeLabError("valencies_from_L1: support graph disconnected");
    return k;
}

struct EigenmatrixPair {
    RMatrix P, Q;
    std::vector<Rational> multiplicities;
};

/*
 * Eigenmatrices from a generator array with distinct eigenvalues. Columns of
 * Q are the eigenvectors scaled so entry 0 is the multiplicity
 * m_j = n / (v_j^T Delta_k v_j); columns are ordered by descending
 * eigenvalue; P = n Q^{-1}.
 */
inline EigenmatrixPair eigen_from_L1(const RMatrix& L1, const std::vector<Rational>& valencies) {
    std::size_t cnt = L1.rows();
    if (valencies.size() != cnt) throw DimensionMismatch("eigen_from_L1: valency count");
    Rational n = 0;
    for (const auto& k : valencies) n += k;
    auto eig = rational_eigen(L1);
    if (eig.size() != cnt)
        throw RepeatedEigenvalue("eigen_from_L1: generator has a repeated eigenvalue");
    RMatrix Q(cnt, cnt);
    std::vector<Rational> mults;
    for (std::size_t j = 0; j < cnt; ++j) {
        const RMatrix& v = eig[j].vector;
        if (v(0, 0) != 1) throw ZeroLeadEntry("eigen_from_L1: eigenvector entry 0 vanishes");
        Rational norm = 0;
        for (std::size_t i = 0; i < cnt; ++i) norm += valencies[i] * v(i, 0) * v(i, 0);
        Rational m = n / norm;
        mults.push_back(m);
        for (std::size_t i = 0; i < cnt; ++i) Q(i, j) = m * v(i, 0);
    }
    return {scalar_mul(n, inverse(Q)), std::move(Q), std::move(mults)};
}

inline EigenmatrixPair eigen_from_L1(const RMatrix& L1) {
    return eigen_from_L1(L1, valencies_from_L1(L1));
}

inline ParameterSet params_from_L1(const RMatrix& L1) {
    auto em = eigen_from_L1(L1);
    return make_parameter_set(em.P, em.Q, "L1");
}

/*
 * Completion from a Krein array: the tridiagonal L1* has rows
 * [c*_j, a*_j, b*_j]; its eigenvectors are the columns of P so the eigen
 * machinery applies with the roles of P and Q exchanged. Relations come out
 * in the natural ordering (descending Q_{i1}).
 */
inline ParameterSet params_from_krein_array(const KreinArray& ka) {
    std::size_t cnt = ka.d + 1;
    RMatrix l1s(cnt, cnt);
    for (std::size_t j = 0; j < cnt; ++j) {
        if (j > 0) l1s(j, j - 1) = ka.c(j);
        l1s(j, j) = ka.a(j);
        if (j + 1 < cnt) l1s(j, j + 1) = ka.b(j);
    }
    auto em = eigen_from_L1(l1s);
    return make_parameter_set(em.Q, em.P, "krein_array");
}

/*
 * Completion from an intersection tensor. Prefers L_1 as generator, then the
 * remaining L_i, then small deterministic integer combinations.
 */
inline ParameterSet params_from_p_tensor(const Tensor& p) {
    std::size_t cnt = p.size();
    if (cnt == 0) throw DimensionMismatch("params_from_p_tensor: empty tensor");
    if (cnt == 1) {
        RMatrix one{{Rational(1)}};
        return make_parameter_set(one, one, "p_tensor");
    }
    std::vector<Rational> k(cnt);
    Rational n = 0;
    for (std::size_t i = 0; i < cnt; ++i) {
        k[i] = p[i][i][0];
        n += k[i];
    }
    auto array_of = [&](std::size_t i) {
        RMatrix m(cnt, cnt);
        for (std::size_t kk = 0; kk < cnt; ++kk)
            for (std::size_t j = 0; j < cnt; ++j) m(kk, j) = p[i][j][kk];
        return m;
    };
    std::vector<RMatrix> candidates;
    for (std::size_t i = 1; i < cnt; ++i) candidates.push_back(array_of(i));
    for (int power : {1, 2}) {
        RMatrix combo(cnt, cnt);
        for (std::size_t i = 1; i < cnt; ++i) {
            Rational w = 1;
            for (int t = 0; t < power; ++t) w *= Rational(static_cast<long>(i));
            combo = mat_add(combo, scalar_mul(w, array_of(i)));
        }
        candidates.push_back(combo);
    }
    bool saw_irrational = false;
    Poly residual;
    for (const auto& cand : candidates) {
        try {
            auto em = eigen_from_L1(cand, k);
            return make_parameter_set(em.P, em.Q, "p_tensor");
        } catch (const RepeatedEigenvalue&) {
            continue;
        } catch (const IrrationalSpectrum& e) {
            saw_irrational = true;
            residual = e.residual;
            continue;
        }
    }
    if (saw_irrational)
        throw IrrationalSpectrum("params_from_p_tensor: irrational eigenvalues", residual);
    throw RepeatedEigenvalue("params_from_p_tensor: no generator with distinct eigenvalues");
}

/* ------------------------------------------------------------------ */
/* Concrete schemes                                                    */
/* ------------------------------------------------------------------ */

class ConcreteScheme {
public:
    ConcreteScheme(std::size_t n, std::size_t classes) : n_(n), d_(classes), rel_(n * n, 0) {}

    std::size_t n() const { return n_; }
    std::size_t d() const { return d_; }
    std::uint8_t rel(std::size_t x, std::size_t y) const { return rel_[x * n_ + y]; }
    void set_rel(std::size_t x, std::size_t y, std::uint8_t v) {
        rel_[x * n_ + y] = v;
        rel_[y * n_ + x] = v;
    }

    RMatrix relation_matrix(std::size_t i) const {
        RMatrix m(n_, n_);
        for (std::size_t x = 0; x < n_; ++x)
            for (std::size_t y = 0; y < n_; ++y)
                if (rel(x, y) == i) m(x, y) = 1;
        return m;
    }

private:
    std::size_t n_, d_;
    std::vector<std::uint8_t> rel_;
};

namespace detail {

/*
 * Verifies, for every pair x <= y, that the triangle counts over z match the
 * expected tensor. For a fixed x the counts of all y are accumulated in one
 * pass over z, so both relation-row reads are sequential and the count buffer
 * stays cache resident. Counts are at most n, hence the counter type is
 * chosen by the caller to keep the buffer small.
 */
template <typename Counter>
inline void verify_triple_counts(const ConcreteScheme& s,
                                 const std::vector<long long>& expected,
                                 const std::vector<std::pair<std::size_t, std::size_t>>& first_pair) {
    std::size_t n = s.n(), cnt = s.d() + 1, c2 = cnt * cnt;
    std::vector<Counter> buf;
    for (std::size_t x = 0; x < n; ++x) {
        buf.assign((n - x) * c2, 0);
        for (std::size_t z = 0; z < n; ++z) {
            Counter* brow = buf.data() + s.rel(x, z) * cnt;
            for (std::size_t y = x, off = 0; y < n; ++y, off += c2)
                ++brow[off + s.rel(z, y)];
        }
        for (std::size_t y = x; y < n; ++y) {
            std::size_t k = s.rel(x, y);
            const Counter* c = buf.data() + (y - x) * c2;
            for (std::size_t i = 0; i < cnt; ++i)
                for (std::size_t j = 0; j < cnt; ++j)
                    if (static_cast<long long>(c[i * cnt + j]) != expected[(i * cnt + j) * cnt + k])
                        throw NotAScheme("triangle count not constant", i, j,
                                         first_pair[k].first, first_pair[k].second, x, y);
        }
    }
}

}  // namespace detail

/*
 * Triple counting: checks the partition axioms and that every
 * A_i A_j = sum_k p^k_ij A_k with constants p^k_ij. Returns the tensor.
 */
inline Tensor intersection_tensor(const ConcreteScheme& s) {
    std::size_t n = s.n(), d = s.d(), cnt = d + 1;
    if (n == 0) throw SchemeLabError("intersection_tensor: empty scheme");
    std::vector<bool> used(cnt, false);
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) {
            std::uint8_t r = s.rel(x, y);
            if (x == y && r != 0) throw NotAScheme("diagonal cell not in relation 0", 0, 0, x, y, x, y);
            if (x != y && r == 0) throw NotAScheme("off-diagonal cell in relation 0", 0, 0, x, y, x, y);
            if (r > d) throw NotAScheme("relation index out of range", r, r, x, y, x, y);
            if (s.rel(y, x) != r) throw NotAScheme("relation not symmetric", r, s.rel(y, x), x, y, y, x);
            used[r] = true;
        }
    for (std::size_t i = 0; i < cnt; ++i)
        if (!used[i]) throw SchemeLabError("intersection_tensor: a relation class is empty");

    /*
     * Expected counts come from the first pair (in row-major order) found in
     * each relation. The sweep below then only visits ordered pairs with
     * x <= y: the count matrix of (y, x) is the transpose of that of (x, y),
     * so once the representatives satisfy p^k_ij = p^k_ji, constancy on the
     * upper triangle implies constancy everywhere.
     */
    std::size_t c2 = cnt * cnt;
    std::vector<long long> expected(c2 * cnt, -1);
    std::vector<std::pair<std::size_t, std::size_t>> first_pair(cnt);
    std::vector<bool> seen(cnt, false);
    std::size_t remaining = cnt;
    for (std::size_t x = 0; x < n && remaining; ++x)
        for (std::size_t y = 0; y < n && remaining; ++y) {
            std::size_t k = s.rel(x, y);
            if (seen[k]) continue;
            seen[k] = true;
            first_pair[k] = {x, y};
            --remaining;
            std::vector<long long> count(c2, 0);
            for (std::size_t z = 0; z < n; ++z)
                ++count[s.rel(x, z) * cnt + s.rel(z, y)];
            for (std::size_t i = 0; i < cnt; ++i)
                for (std::size_t j = 0; j < cnt; ++j)
                    expected[(i * cnt + j) * cnt + k] = count[i * cnt + j];
        }
    for (std::size_t k = 0; k < cnt; ++k)
        for (std::size_t i = 0; i < cnt; ++i)
            for (std::size_t j = i + 1; j < cnt; ++j)
                if (expected[(i * cnt + j) * cnt + k] != expected[(j * cnt + i) * cnt + k])
                    throw NotAScheme("triangle count not constant", i, j,
                                     first_pair[k].first, first_pair[k].second,
                                     first_pair[k].second, first_pair[k].first);

    if (n <= 0xffff)
        detail::verify_triple_counts<std::uint16_t>(s, expected, first_pair);
    else
        detail::verify_triple_counts<std::uint32_t>(s, expected, first_pair);

    Tensor p = make_tensor(cnt);
    for (std::size_t i = 0; i < cnt; ++i)
        for (std::size_t j = 0; j < cnt; ++j)
            for (std::size_t k = 0; k < cnt; ++k)
                p[i][j][k] = Rational(expected[(i * cnt + j) * cnt + k]);
    return p;
}

inline ParameterSet verify_scheme_axioms(const ConcreteScheme& s) {
    return params_from_p_tensor(intersection_tensor(s));
}

/* ------------------------------------------------------------------ */
/* Parameter identities                                                */
/* ------------------------------------------------------------------ */

namespace detail {

/*
 * The thirteen identities relating one eigenmatrix pair with its structure
 * constants. Called twice: once as written and once with the roles of
 * (P, p, k) and (Q, q, m) exchanged, which yields the thirteen duals.
 */
inline std::vector<Verdict> identity_block(const RMatrix& P, const RMatrix& Q, const Tensor& p,
                                           const Rational& n, bool dual) {
    std::size_t cnt = P.rows();
    std::string sfx = dual ? "_dual" : "";
    const char* ps = dual ? "q" : "p";
    const char* Ps = dual ? "Q" : "P";
    const char* Qs = dual ? "P" : "Q";
    const char* ks = dual ? "m" : "k";
    auto kv = [&](std::size_t i) { return P(0, i); };
    std::vector<Verdict> out;
    auto start = [&](const char* roman, std::string rule) {
        Verdict v;
        v.test_id = std::string("identity_") + roman + sfx;
        v.citation = std::move(rule);
        v.status = Status::pass;
        return v;
    };
    auto fail = [&](Verdict& v, const Rational& lhs, const Rational& rhs, std::string where) {
        if (v.failed()) return;
        v.status = Status::fail;
        v.witness = {lhs, rhs};
        v.note = std::move(where);
    };
    auto idx3 = [](std::size_t a, std::size_t b, std::size_t c) {
        return "(" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c) + ")";
    };

    {  // (i) p^l_0j = delta_jl
        Verdict v = start("i", std::string(ps) + "^l_{0j} = delta_{jl}");
        for (std::size_t j = 0; j < cnt; ++j)
            for (std::size_t l = 0; l < cnt; ++l)
                if (p[0][j][l] != (j == l ? Rational(1) : Rational(0)))
                    fail(v, p[0][j][l], j == l ? 1 : 0, idx3(0, j, l));
        out.push_back(v);
    }
    {  // (ii) p^0_ij = delta_ij k_i
        Verdict v = start("ii", std::string(ps) + "^0_{ij} = delta_{ij} " + ks + "_i");
        for (std::size_t i = 0; i < cnt; ++i)
            for (std::size_t j = 0; j < cnt; ++j)
                if (p[i][j][0] != (i == j ? kv(i) : Rational(0)))
                    fail(v, p[i][j][0], i == j ? kv(i) : 0, idx3(i, j, 0));
        out.push_back(v);
    }
    {  // (iii) p^l_ij = p^l_ji
        Verdict v = start("iii", std::string(ps) + "^l_{ij} = " + ps + "^l_{ji}");
        for (std::size_t i = 0; i < cnt; ++i)
            for (std::size_t j = 0; j < cnt; ++j)
                for (std::size_t l = 0; l < cnt; ++l)
                    if (p[i][j][l] != p[j][i][l]) fail(v, p[i][j][l], p[j][i][l], idx3(i, j, l));
        out.push_back(v);
    }
    {  // (iv) p^l_ij k_l = p^j_il k_j
        Verdict v = start("iv", std::string(ps) + "^l_{ij} " + ks + "_l = " + ps + "^j_{il} " + ks + "_j");
        for (std::size_t i = 0; i < cnt; ++i)
            for (std::size_t j = 0; j < cnt; ++j)
                for (std::size_t l = 0; l < cnt; ++l)
                    if (p[i][j][l] * kv(l) != p[i][l][j] * kv(j))
                        fail(v, p[i][j][l] * kv(l), p[i][l][j] * kv(j), idx3(i, j, l));
        out.push_back(v);
    }
    {  // (v) sum_j p^l_ij = k_i
        Verdict v = start("v", std::string("sum_j ") + ps + "^l_{ij} = " + ks + "_i");
        for (std::size_t i = 0; i < cnt; ++i)
            for (std::size_t l = 0; l < cnt; ++l) {
                Rational s = 0;
                for (std::size_t j = 0; j < cnt; ++j) s += p[i][j][l];
                if (s != kv(i)) fail(v, s, kv(i), idx3(i, 0, l));
            }
        out.push_back(v);
    }
    {  // (vi) sum_l p^l_ij p^m_lh = sum_l p^m_il p^l_jh
        Verdict v = start("vi", std::string("sum_l ") + ps + "^l_{ij} " + ps + "^m_{lh} = sum_l " +
                                    ps + "^m_{il} " + ps + "^l_{jh}");
        for (std::size_t i = 0; i < cnt; ++i)
            for (std::size_t j = 0; j < cnt; ++j)
                for (std::size_t h = 0; h < cnt; ++h)
                    for (std::size_t mm = 0; mm < cnt; ++mm) {
                        Rational lhs = 0, rhs = 0;
                        for (std::size_t l = 0; l < cnt; ++l) {
                            lhs += p[i][j][l] * p[l][h][mm];
                            rhs += p[i][l][mm] * p[j][h][l];
                        }
                        if (lhs != rhs) fail(v, lhs, rhs, idx3(i, j, h));
                    }
        out.push_back(v);
    }
    {  // (vii) P_ij P_ih = sum_l p^l_jh P_il
        Verdict v = start("vii", std::string(Ps) + "_{ij} " + Ps + "_{ih} = sum_l " + ps +
                                     "^l_{jh} " + Ps + "_{il}");
        for (std::size_t i = 0; i < cnt; ++i)
            for (std::size_t j = 0; j < cnt; ++j)
                for (std::size_t h = 0; h < cnt; ++h) {
                    Rational rhs = 0;
                    for (std::size_t l = 0; l < cnt; ++l) rhs += p[j][h][l] * P(i, l);
                    if (P(i, j) * P(i, h) != rhs) fail(v, P(i, j) * P(i, h), rhs, idx3(i, j, h));
                }
        out.push_back(v);
    }
    {  // (viii) P_ji Q_hj = sum_l p^h_il Q_lj
        Verdict v = start("viii", std::string(Ps) + "_{ji} " + Qs + "_{hj} = sum_l " + ps +
                                      "^h_{il} " + Qs + "_{lj}");
        for (std::size_t j = 0; j < cnt; ++j)
            for (std::size_t i = 0; i < cnt; ++i)
                for (std::size_t h = 0; h < cnt; ++h) {
                    Rational rhs = 0;
                    for (std::size_t l = 0; l < cnt; ++l) rhs += p[i][l][h] * Q(l, j);
                    if (P(j, i) * Q(h, j) != rhs) fail(v, P(j, i) * Q(h, j), rhs, idx3(j, i, h));
                }
        out.push_back(v);
    }
    {  // (ix) sum_j P_ji = sum_h p^h_hi
        Verdict v = start("ix", std::string("sum_j ") + Ps + "_{ji} = sum_h " + ps + "^h_{hi}");
        for (std::size_t i = 0; i < cnt; ++i) {
            Rational lhs = 0, rhs = 0;
            for (std::size_t j = 0; j < cnt; ++j) lhs += P(j, i);
            for (std::size_t h = 0; h < cnt; ++h) rhs += p[h][i][h];
            if (lhs != rhs) fail(v, lhs, rhs, idx3(i, 0, 0));
        }
        out.push_back(v);
    }
    {  // (x) P_j0 = 1
        Verdict v = start("x", std::string(Ps) + "_{j0} = 1");
        for (std::size_t j = 0; j < cnt; ++j)
            if (P(j, 0) != 1) fail(v, P(j, 0), 1, idx3(j, 0, 0));
        out.push_back(v);
    }
    {  // (xi) P_0i = k_i
        Verdict v = start("xi", std::string(Ps) + "_{0i} = " + ks + "_i");
        for (std::size_t i = 0; i < cnt; ++i)
            if (P(0, i) != kv(i)) fail(v, P(0, i), kv(i), idx3(0, i, 0));
        out.push_back(v);
    }
    {  // (xii) sum_j m_j P_ji P_jh = n k_i delta_ih
        Verdict v = start("xii", std::string("sum_j ") + (dual ? "k" : "m") + "_j " + Ps +
                                     "_{ji} " + Ps + "_{jh} = n " + ks + "_i delta_{ih}");
        for (std::size_t i = 0; i < cnt; ++i)
            for (std::size_t h = 0; h < cnt; ++h) {
                Rational lhs = 0;
                for (std::size_t j = 0; j < cnt; ++j) lhs += Q(0, j) * P(j, i) * P(j, h);
                Rational rhs = (i == h) ? n * kv(i) : Rational(0);
                if (lhs != rhs) fail(v, lhs, rhs, idx3(i, h, 0));
            }
        out.push_back(v);
    }
    {  // (xiii) p^l_ij = (1/(n k_l)) sum_h m_h P_hi P_hj P_hl
        Verdict v = start("xiii", std::string(ps) + "^l_{ij} = (1/(n " + ks + "_l)) sum_h " +
                                      (dual ? "k" : "m") + "_h " + Ps + "_{hi} " + Ps + "_{hj} " +
                                      Ps + "_{hl}");
        for (std::size_t i = 0; i < cnt; ++i)
            for (std::size_t j = 0; j < cnt; ++j)
                for (std::size_t l = 0; l < cnt; ++l) {
                    Rational s = 0;
                    for (std::size_t h = 0; h < cnt; ++h) s += Q(0, h) * P(h, i) * P(h, j) * P(h, l);
                    s /= n * kv(l);
                    if (p[i][j][l] != s) fail(v, p[i][j][l], s, idx3(i, j, l));
                }
        out.push_back(v);
    }
    return out;
}

}  // namespace detail

/* All 26 parameter identities (13 plus their formal duals), exact. */
inline std::vector<Verdict> parameter_identities_report(const ParameterSet& ps) {
    auto out = detail::identity_block(ps.P, ps.Q, ps.p_tensor, ps.n, false);
    auto dual = detail::identity_block(ps.Q, ps.P, ps.q_tensor, ps.n, true);
    out.insert(out.end(), dual.begin(), dual.end());
    return out;
}

/* ------------------------------------------------------------------ */
/* Imprimitivity                                                       */
/* ------------------------------------------------------------------ */

struct ImprimitivitySystem {
    std::vector<std::size_t> index_set_I;  // relation indices, contains 0
    std::vector<std::size_t> index_set_J;  // idempotent indices, contains 0
    Rational w;                            // fiber count
    Rational r;                            // fiber size
    ParameterSet subscheme;
    ParameterSet quotient;
};

namespace detail {

inline RMatrix distinct_rows(const RMatrix& m) {
    std::vector<std::vector<Rational>> rows;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        std::vector<Rational> r(m.cols());
        for (std::size_t j = 0; j < m.cols(); ++j) r[j] = m(i, j);
        if (std::find(rows.begin(), rows.end(), r) == rows.end()) rows.push_back(std::move(r));
    }
    RMatrix out(rows.size(), m.cols());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = rows[i][j];
    return out;
}

inline RMatrix select_cols(const RMatrix& m, const std::vector<std::size_t>& cols) {
    RMatrix out(m.rows(), cols.size());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < cols.size(); ++j) out(i, j) = m(i, cols[j]);
    return out;
}

}  // namespace detail

/*
 * Enumerates all proper nontrivial relation index sets I containing 0 whose
 * union is an equivalence relation (closed under the intersection tensor).
 * For each, J holds the idempotent indices with sum_{i in I} P_ji = r; the
 * subscheme comes from the distinct rows of P restricted to columns I and
 * the quotient from the distinct rows of Q restricted to columns J.
 */
inline std::vector<ImprimitivitySystem> find_imprimitivity(const ParameterSet& ps) {
    std::vector<ImprimitivitySystem> out;
    std::size_t d = ps.d;
    if (d < 2) return out;
    for (std::uint64_t mask = 1; mask + 1 < (std::uint64_t(1) << d); ++mask) {
        std::vector<std::size_t> I{0};
        for (std::size_t i = 1; i <= d; ++i)
            if (mask & (std::uint64_t(1) << (i - 1))) I.push_back(i);
        auto in_I = [&](std::size_t k) { return std::find(I.begin(), I.end(), k) != I.end(); };
        bool closed = true;
        for (std::size_t a = 0; a < I.size() && closed; ++a)
            for (std::size_t b = 0; b < I.size() && closed; ++b)
                for (std::size_t k = 0; k <= d && closed; ++k)
                    if (ps.p_tensor[I[a]][I[b]][k] != 0 && !in_I(k)) closed = false;
        if (!closed) continue;
        Rational r = 0;
        for (auto i : I) r += ps.valency(i);
        Rational w = ps.n / r;
        if (!is_integer(w) || !is_integer(r)) continue;
        std::vector<std::size_t> J;
        for (std::size_t j = 0; j <= d; ++j) {
            Rational rowsum = 0;
            for (auto i : I) rowsum += ps.P(j, i);
            if (rowsum == r) J.push_back(j);
        }
        Rational msum = 0;
        for (auto j : J) msum += ps.multiplicity(j);
        if (msum != w) throw SchemeLabError("find_imprimitivity: idempotent set J inconsistent");

        ImprimitivitySystem sys;
        sys.index_set_I = I;
        sys.index_set_J = J;
        sys.w = w;
        sys.r = r;
        RMatrix subP = detail::distinct_rows(detail::select_cols(ps.P, I));
        if (subP.rows() != I.size())
            throw SchemeLabError("find_imprimitivity: subscheme row count mismatch");
        sys.subscheme = params_from_P(subP);
        RMatrix quoQ = detail::distinct_rows(detail::select_cols(ps.Q, J));
        if (quoQ.rows() != J.size())
            throw SchemeLabError("find_imprimitivity: quotient row count mismatch");
        sys.quotient = params_from_Q(quoQ);
        out.push_back(std::move(sys));
    }
    return out;
}

/* ------------------------------------------------------------------ */
/* Polynomial orderings                                                */
/* ------------------------------------------------------------------ */

struct QPolyOrdering {
    std::size_t e1 = 0;                          // idempotent serving as index 1
    std::vector<std::size_t> order;              // idempotent permutation, order[0] = 0
    KreinArray krein;
    std::vector<std::size_t> natural_relations;  // relations sorted by Q_{i,e1} descending
    bool q_bipartite = false;
    bool q_antipodal = false;
};

struct PPolyOrdering {
    std::size_t r1 = 0;              // relation serving as index 1
    std::vector<std::size_t> order;  // relation permutation, order[0] = 0
    std::vector<Rational> b;         // b_0..b_{d-1}
    std::vector<Rational> c;         // c_1..c_d
};

struct PolyOrderings {
    std::vector<PPolyOrdering> p_poly;
    std::vector<QPolyOrdering> q_poly;
};

namespace detail {

/*
 * Greedy tridiagonalization: ordering starting 0, c where each step has a
 * unique unplaced index with t[c][last][k] nonzero, and the reordered array
 * is irreducible tridiagonal. Returns nothing if no such ordering exists.
 */
inline std::optional<std::vector<std::size_t>> tridiagonal_order(const Tensor& t, std::size_t c) {
    std::size_t cnt = t.size();
    std::vector<std::size_t> order{0, c};
    std::vector<bool> placed(cnt, false);
    placed[0] = placed[c] = true;
    while (order.size() < cnt) {
        std::size_t last = order.back(), next = cnt;
        for (std::size_t k = 0; k < cnt; ++k) {
            if (placed[k] || t[c][last][k] == 0) continue;
            if (next != cnt) return std::nullopt;  // branching: not a path
            next = k;
        }
        if (next == cnt) return std::nullopt;  // dead end: support disconnected
        order.push_back(next);
        placed[next] = true;
    }
    for (std::size_t u = 0; u < cnt; ++u)
        for (std::size_t v = 0; v < cnt; ++v) {
            Rational x = t[c][order[v]][order[u]];  // entry (u, v) of the reordered array
            std::size_t lo = std::min(u, v), hi = std::max(u, v);
            if (hi - lo > 1 && x != 0) return std::nullopt;
            if (hi - lo == 1 && x == 0) return std::nullopt;
        }
    return order;
}

}  // namespace detail

/*
 * Tries every relation (resp. idempotent) as index 1 and keeps those whose
 * intersection (resp. Krein) array becomes irreducible tridiagonal. Each
 * cometric ordering carries its Krein array, the natural relation ordering,
 * and the two imprimitivity-type flags.
 */
inline PolyOrderings polynomial_orderings(const ParameterSet& ps) {
    PolyOrderings out;
    std::size_t d = ps.d;
    if (d == 0) return out;
    for (std::size_t c = 1; c <= d; ++c) {
        if (auto ord = detail::tridiagonal_order(ps.p_tensor, c)) {
            PPolyOrdering po;
            po.r1 = c;
            po.order = *ord;
            for (std::size_t t = 0; t + 1 <= d; ++t)
                po.b.push_back(ps.p_tensor[c][(*ord)[t + 1]][(*ord)[t]]);
            for (std::size_t t = 1; t <= d; ++t)
                po.c.push_back(ps.p_tensor[c][(*ord)[t - 1]][(*ord)[t]]);
            out.p_poly.push_back(std::move(po));
        }
        if (auto ord = detail::tridiagonal_order(ps.q_tensor, c)) {
            QPolyOrdering qo;
            qo.e1 = c;
            qo.order = *ord;
            std::vector<Rational> b, cc;
            for (std::size_t t = 0; t + 1 <= d; ++t)
                b.push_back(ps.q_tensor[c][(*ord)[t + 1]][(*ord)[t]]);
            for (std::size_t t = 1; t <= d; ++t)
                cc.push_back(ps.q_tensor[c][(*ord)[t - 1]][(*ord)[t]]);
            qo.krein = make_krein_array(b, cc);
            if (qo.krein.c(1) != 1)
                throw SchemeLabError("polynomial_orderings: c*_1 != 1 under normalization");
            qo.q_bipartite = true;
            for (std::size_t t = 0; t <= d; ++t)
                if (qo.krein.a(t) != 0) qo.q_bipartite = false;
            qo.q_antipodal = true;
            std::size_t lastq = qo.order[d];
            for (std::size_t t = 1; t < d; ++t)
                if (ps.q_tensor[lastq][lastq][qo.order[t]] != 0) qo.q_antipodal = false;
            qo.natural_relations.resize(d + 1);
            for (std::size_t i = 0; i <= d; ++i) qo.natural_relations[i] = i;
            std::sort(qo.natural_relations.begin(), qo.natural_relations.end(),
                      [&](std::size_t a2, std::size_t b2) { return ps.Q(a2, c) > ps.Q(b2, c); });
            for (std::size_t i = 0; i < d; ++i)
                if (ps.Q(qo.natural_relations[i], c) == ps.Q(qo.natural_relations[i + 1], c))
                    throw SchemeLabError("polynomial_orderings: tie in the natural relation ordering");
            out.q_poly.push_back(std::move(qo));
        }
    }
    return out;
}

/* ------------------------------------------------------------------ */
/* Closure dimensions and formal duality                               */
/* ------------------------------------------------------------------ */

/*
 * dim of the matrix algebra generated by A_i = number of distinct entries of
 * column i of P; dim of the Schur algebra generated by E_j = number of
 * distinct entries of column j of Q.
 */
inline std::pair<std::vector<std::size_t>, std::vector<std::size_t>> closure_dims(
    const ParameterSet& ps) {
    auto count_col = [](const RMatrix& m, std::size_t j) {
        std::vector<Rational> seen;
        for (std::size_t i = 0; i < m.rows(); ++i)
            if (std::find(seen.begin(), seen.end(), m(i, j)) == seen.end()) seen.push_back(m(i, j));
        return seen.size();
    };
    std::vector<std::size_t> mat, schur;
    for (std::size_t i = 0; i <= ps.d; ++i) {
        mat.push_back(count_col(ps.P, i));
        schur.push_back(count_col(ps.Q, i));
    }
    return {mat, schur};
}

struct FormalDualResult {
    std::optional<ParameterSet> dual;
    Verdict verdict;
};

/*
 * Swaps P and Q and retests the would-be intersection numbers for
 * nonnegative integrality; the dual exists exactly when they all pass.
 */
inline FormalDualResult formal_dual(const ParameterSet& ps) {
    FormalDualResult res;
    res.verdict.test_id = "formal_dual";
    res.verdict.citation = "dual intersection numbers are nonnegative integers";
    ParameterSet dual = make_parameter_set(ps.Q, ps.P, "formal_dual");
    for (std::size_t i = 0; i <= ps.d; ++i)
        for (std::size_t j = 0; j <= ps.d; ++j)
            for (std::size_t k = 0; k <= ps.d; ++k) {
                const Rational& v = dual.p_tensor[i][j][k];
                if (v < 0 || !is_integer(v)) {
                    res.verdict.status = Status::fail;
                    res.verdict.witness = {v};
                    res.verdict.note = "q^" + std::to_string(k) + "_{" + std::to_string(i) + "," +
                                       std::to_string(j) + "} is not a nonnegative integer";
                    return res;
                }
            }
    res.verdict.status = Status::pass;
    res.dual = std::move(dual);
    return res;
}

}  // namespace schemelab
