#pragma once

/*
 * Euclidean structures carried by association schemes: sets of equiangular
 * lines read off nonnegative idempotent combinations, the equiangular-line
 * and real-MUB systems attached to linked symmetric designs, unbiased
 * regular Hadamard matrices extracted from a concrete linked system, linked
 * regular simplices recovered from a fibered Gram matrix, and orthogonal
 * projective doubles of graphs together with the 4-class schemes they can
 * induce.
 *
 * Everything is exact. Gram matrices whose common angle is irrational are
 * handled through the rational square of the angle; unbiasedness tests are
 * restated in squared form so no square root is ever taken.
 */

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "constructions.hpp"
#include "errors.hpp"
#include "feasibility.hpp"
#include "graph.hpp"
#include "linalg.hpp"
#include "matrix.hpp"
#include "rational.hpp"
#include "scheme.hpp"
#include "verdict.hpp"

namespace schemelab {

/* ------------------------------------------------------------------ */
/* Gram systems                                                        */
/* ------------------------------------------------------------------ */

/*
 * A set of unit vectors described by its Gram matrix. Systems that come from
 * a scheme are stored in coefficient form: a_coeffs[i] is the common Gram
 * entry on pairs in relation i (a_coeffs[0] = 1), e_coeffs[j] the coefficient
 * of the j-th idempotent. The full matrix is filled in on demand from a
 * concrete scheme by materialize_gram.
 */
struct GramSystem {
    std::size_t count = 0;             // number of vectors (rows of the Gram matrix)
    std::size_t dim = 0;               // rank of the Gram matrix
    RMatrix gram{0, 0};                // empty until materialized
    std::vector<Rational> a_coeffs;    // Gram value per relation, when scheme-derived
    std::vector<Rational> e_coeffs;    // idempotent coefficients, when scheme-derived
    std::vector<Rational> value_map;   // distinct off-diagonal values, descending

    bool materialized() const { return gram.rows() > 0; }
};

namespace detail {

inline std::vector<Rational> distinct_descending(std::vector<Rational> vals) {
    std::sort(vals.begin(), vals.end(), [](const Rational& a, const Rational& b) { return a > b; });
    vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
    return vals;
}

/* The single common angle |value| of an equiangular value map. */
inline Rational equiangular_angle(const std::vector<Rational>& values) {
    if (values.empty()) throw PreconditionFailed("equiangular system has no off-diagonal values");
    Rational alpha = values[0] < 0 ? -values[0] : values[0];
    for (const auto& v : values) {
        Rational a = v < 0 ? -v : v;
        if (a != alpha)
            throw PreconditionFailed("not equiangular: off-diagonal magnitudes " + a.str() +
                                     " and " + alpha.str() + " differ");
    }
    if (alpha == 0) throw PreconditionFailed("not equiangular: all off-diagonal entries vanish");
    return alpha;
}

}  // namespace detail

/*
 * Gram matrix of the nonnegative idempotent combination sum_j x_j E_j,
 * rescaled to unit diagonal. In the relation basis the coefficient on A_i is
 * (sum_j x_j Q_ij) / (sum_j x_j m_j) and the rank is the total multiplicity
 * over the support of x.
 */
inline GramSystem gram_from_idempotents(const ParameterSet& ps, const std::vector<Rational>& x) {
    if (x.size() != ps.d + 1)
        throw DimensionMismatch("gram_from_idempotents: need one coefficient per idempotent");
    Rational sc = 0;
    Rational rank_sum = 0;
    for (std::size_t j = 0; j <= ps.d; ++j) {
        if (x[j] < 0)
            throw NegativeCoefficient("gram_from_idempotents: coefficient " + std::to_string(j) +
                                      " is negative");
        sc += x[j] * ps.multiplicity(j);
        if (x[j] > 0) rank_sum += ps.multiplicity(j);
    }
    if (sc == 0) throw NegativeCoefficient("gram_from_idempotents: all coefficients vanish");

    GramSystem sys;
    sys.count = static_cast<std::size_t>(to_integer(ps.n));
    sys.dim = static_cast<std::size_t>(to_integer(rank_sum));
    sys.a_coeffs.resize(ps.d + 1);
    sys.e_coeffs.resize(ps.d + 1);
    for (std::size_t i = 0; i <= ps.d; ++i) {
        Rational c = 0;
        for (std::size_t j = 0; j <= ps.d; ++j) c += x[j] * ps.Q(i, j);
        sys.a_coeffs[i] = c / sc;
    }
    if (sys.a_coeffs[0] != 1)
        throw SchemeLabError("gram_from_idempotents: unit-diagonal normalization failed");
    for (std::size_t j = 0; j <= ps.d; ++j) sys.e_coeffs[j] = ps.n * x[j] / sc;
    sys.value_map = detail::distinct_descending(
        std::vector<Rational>(sys.a_coeffs.begin() + 1, sys.a_coeffs.end()));
    return sys;
}

/* Fills in the full Gram matrix from a concrete scheme and verifies the rank. */
inline void materialize_gram(GramSystem& sys, const ConcreteScheme& s) {
    if (s.n() != sys.count)
        throw DimensionMismatch("materialize_gram: scheme order disagrees with vector count");
    if (sys.a_coeffs.size() != s.d() + 1)
        throw DimensionMismatch("materialize_gram: scheme class count disagrees");
    RMatrix g(s.n(), s.n());
    for (std::size_t x = 0; x < s.n(); ++x)
        for (std::size_t y = 0; y < s.n(); ++y) g(x, y) = sys.a_coeffs[s.rel(x, y)];
    if (rank(g) != sys.dim)
        throw SchemeLabError("materialize_gram: matrix rank disagrees with the declared dimension");
    sys.gram = std::move(g);
}

/* ------------------------------------------------------------------ */
/* Optimality of equiangular line systems                              */
/* ------------------------------------------------------------------ */

enum class Optimality { optimal, near_optimal, none };

struct LineSystemReport {
    std::size_t count = 0;
    std::size_t dim = 0;
    Rational angle;
    std::optional<Integer> bound;       // floored relative bound, when it applies
    bool bound_floored = false;         // the exact bound was not an integer
    Optimality optimality = Optimality::none;
    bool neumann_applies = false;       // count > 2 * dim
    bool neumann_ok = true;             // 1/angle is an odd integer
    bool augmentation_checked = false;  // near-optimal with idempotent data available
    bool augmentation_ok = false;       // E_0 coefficient equals count * angle^2
    std::string note;
};

/*
 * Relative bound dim(1-a^2)/(1-dim*a^2) floored when fractional; a system
 * meeting it is optimal, one short of it near-optimal. Beyond 2*dim lines
 * the reciprocal angle must be an odd integer. Near-optimal systems are
 * tested for the one-vector augmentation criterion: the coefficient of the
 * rank-one idempotent in the unit-diagonal Gram matrix must equal
 * count * angle^2.
 */
inline LineSystemReport check_optimality(const GramSystem& sys) {
    LineSystemReport rep;
    rep.count = sys.count;
    rep.dim = sys.dim;
    rep.angle = detail::equiangular_angle(sys.value_map);

    auto exact = relative_bound(Rational(static_cast<long>(sys.dim)), rep.angle);
    if (exact) {
        Integer floored = floor_int(*exact);
        rep.bound = floored;
        rep.bound_floored = !is_integer(*exact);
        Integer cnt = Integer(static_cast<long>(sys.count));
        if (cnt == floored)
            rep.optimality = Optimality::optimal;
        else if (cnt + 1 == floored)
            rep.optimality = Optimality::near_optimal;
    }

    rep.neumann_applies = sys.count > 2 * sys.dim;
    if (rep.neumann_applies) {
        Rational inv = 1 / rep.angle;
        rep.neumann_ok = is_integer(inv) && to_integer(inv) % 2 != 0;
        if (!rep.neumann_ok) rep.note = "reciprocal angle " + inv.str() + " is not an odd integer";
    }

    if (rep.optimality == Optimality::near_optimal && !sys.e_coeffs.empty()) {
        rep.augmentation_checked = true;
        Rational want = Rational(static_cast<long>(sys.count)) * rep.angle * rep.angle;
        rep.augmentation_ok = sys.e_coeffs[0] == want;
        if (!rep.augmentation_ok)
            rep.note = "augmentation criterion fails: rank-one coefficient " +
                       sys.e_coeffs[0].str() + " != " + want.str() +
                       (rep.bound_floored ? " (relative bound was not integral)" : "");
    }
    return rep;
}

/* ------------------------------------------------------------------ */
/* Linked symmetric designs: eigenmatrices                             */
/* ------------------------------------------------------------------ */

/*
 * Parameter set of the 3-class scheme of w linked symmetric (v,k,lambda)
 * designs, relations ordered (identity, heavy cross-fiber, same fiber, light
 * cross-fiber) with s = sqrt(k - lambda):
 *   P = [ 1  (w-1)k   v-1  (w-1)(v-k) ]
 *       [ 1  (w-1)s    -1   -(w-1)s   ]
 *       [ 1    -s      -1       s     ]
 *       [ 1    -k     v-1     k-v     ]
 */
inline ParameterSet lssd_parameter_set(const Integer& v, const Integer& k, const Integer& lam,
                                       const Integer& w) {
    if (w < 2) throw PreconditionFailed("lssd_parameter_set: need w >= 2");
    if (k * (k - 1) != lam * (v - 1))
        throw NotASymmetricDesign("lssd_parameter_set: k(k-1) = lambda(v-1) fails");
    auto sq = exact_sqrt(Integer(k - lam));
    if (!sq) throw NonIntegralParameter("lssd_parameter_set: k - lambda is not a perfect square");
    Rational s(*sq), V(v), K(k), W(w);
    RMatrix P(4, 4);
    P(0, 0) = 1; P(0, 1) = (W - 1) * K;     P(0, 2) = V - 1; P(0, 3) = (W - 1) * (V - K);
    P(1, 0) = 1; P(1, 1) = (W - 1) * s;     P(1, 2) = -1;    P(1, 3) = -(W - 1) * s;
    P(2, 0) = 1; P(2, 1) = -s;              P(2, 2) = -1;    P(2, 3) = s;
    P(3, 0) = 1; P(3, 1) = -K;              P(3, 2) = V - 1; P(3, 3) = K - V;
    return params_from_P(P);
}

/* ------------------------------------------------------------------ */
/* Equiangular lines from a linked system                              */
/* ------------------------------------------------------------------ */

struct EquiangularLines {
    Rational vw_alpha, vw_beta, vw_gamma;  // idempotent coefficients of the unit-diagonal Gram
    Rational angle;                        // 1/(2s - 1)
    Integer s;
    bool optimistic = false;
    GramSystem system;                     // vt vectors, rank v+t-1 (v+t-2 when vw_alpha = 0)
};

/*
 * The Gram matrix vt(alpha E_0 + beta E_1 + gamma E_3) built on t of the w
 * fibers of a linked system of symmetric (v,k,lambda) designs. In the
 * pessimistic orientation the construction only exists through the fiber
 * bound t <= 2 + 2(k+s)/(v-2k).
 */
inline EquiangularLines equiangular_from_lssd(const Integer& v, const Integer& k,
                                              const Integer& lam, const Integer& t) {
    if (t < 2) throw PreconditionFailed("equiangular_from_lssd: need t >= 2");
    if (k * (k - 1) != lam * (v - 1))
        throw NotASymmetricDesign("equiangular_from_lssd: k(k-1) = lambda(v-1) fails");
    auto sq = exact_sqrt(Integer(k - lam));
    if (!sq) throw NonIntegralParameter("equiangular_from_lssd: k - lambda is not a perfect square");
    EquiangularLines out;
    out.s = *sq;
    if (out.s < 1) throw PreconditionFailed("equiangular_from_lssd: need k > lambda");

    auto feas = lssd_feasibility(v, k, lam, Integer(2));
    if (!feas.heaviness_known)
        throw PreconditionFailed("equiangular_from_lssd: design orientation is undetermined");
    out.optimistic = feas.optimistic;
    Rational V(v), K(k), S(out.s), T(t);
    if (!out.optimistic) {
        if (v - 2 * k <= 0)
            throw GuardViolated("equiangular_from_lssd: pessimistic orientation needs v > 2k");
        Rational limit = 2 + 2 * (K + S) / (V - 2 * K);
        if (T > limit)
            throw GuardViolated("equiangular_from_lssd: fiber count exceeds the pessimistic bound " +
                                limit.str());
    }

    Rational den = 2 * S - 1;
    out.vw_alpha = (V + 2 * S - (T - 1) * (V - 2 * K)) / den;
    out.vw_beta = 2 * T * S / den;
    out.vw_gamma = (2 * V - 2 * K + 2 * S) / den;
    out.angle = 1 / den;
    if (out.vw_alpha < 0)
        throw GuardViolated("equiangular_from_lssd: rank-one coefficient came out negative");

    GramSystem& sys = out.system;
    sys.count = static_cast<std::size_t>(Integer(v * t));
    sys.dim = static_cast<std::size_t>(Integer(v + t - 1 - (out.vw_alpha == 0 ? 1 : 0)));
    sys.a_coeffs = {Rational(1), out.angle, out.angle, -out.angle};
    sys.e_coeffs = {out.vw_alpha, out.vw_beta, Rational(0), out.vw_gamma};
    sys.value_map = detail::distinct_descending({out.angle, -out.angle});
    return out;
}

/* ------------------------------------------------------------------ */
/* Real mutually unbiased bases                                        */
/* ------------------------------------------------------------------ */

/*
 * Gram matrix M = w(E_0 + E_1) of the w putative orthonormal bases of R^v
 * attached to a linked system of symmetric (v,k,lambda) designs. The
 * cross-fiber entries are beta_1 = (v-k+s)/(vs) on the heavy relation and
 * beta_2 = -(k-s)/(vs) on the light one; the bases are mutually unbiased
 * exactly when the magnitudes agree, i.e. v - 2k = -2s.
 */
inline GramSystem mub_gram(const Integer& v, const Integer& k, const Integer& lam,
                           const Integer& w) {
    if (k * (k - 1) != lam * (v - 1))
        throw NotASymmetricDesign("mub_gram: k(k-1) = lambda(v-1) fails");
    auto sq = exact_sqrt(Integer(k - lam));
    if (!sq) throw NonIntegralParameter("mub_gram: k - lambda is not a perfect square");
    Rational V(v), K(k), S(*sq);
    if (S == 0) throw PreconditionFailed("mub_gram: need k > lambda");
    Rational beta1 = (V - K + S) / (V * S);
    Rational beta2 = -(K - S) / (V * S);
    Rational m1 = beta1 < 0 ? -beta1 : beta1;
    Rational m2 = beta2 < 0 ? -beta2 : beta2;
    if (m1 != m2)
        throw NotMub("mub_gram: cross-fiber magnitudes " + m1.str() + " and " + m2.str() +
                         " differ, so the bases are biased",
                     beta1, beta2);

    ParameterSet ps = lssd_parameter_set(v, k, lam, w);
    Rational W(w);
    GramSystem sys;
    sys.count = static_cast<std::size_t>(to_integer(ps.n));
    sys.dim = static_cast<std::size_t>(Integer(v));
    sys.a_coeffs.resize(4);
    for (std::size_t i = 0; i < 4; ++i)
        sys.a_coeffs[i] = W * (ps.Q(i, 0) + ps.Q(i, 1)) / ps.n;
    if (sys.a_coeffs[0] != 1 || sys.a_coeffs[1] != beta1 || sys.a_coeffs[2] != 0 ||
        sys.a_coeffs[3] != beta2)
        throw SchemeLabError("mub_gram: idempotent expansion disagrees with the closed forms");
    sys.e_coeffs = {W, W, Rational(0), Rational(0)};
    sys.value_map = detail::distinct_descending({beta1, Rational(0), beta2});
    if (1 + ps.multiplicity(1) != V)
        throw SchemeLabError("mub_gram: rank idempotent has the wrong multiplicity");

    /* M^2 = wM in the Bose-Mesner algebra, via the intersection tensor. */
    for (std::size_t l = 0; l < 4; ++l) {
        Rational prod = 0;
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = 0; j < 4; ++j)
                prod += sys.a_coeffs[i] * sys.a_coeffs[j] * ps.p_tensor[i][j][l];
        if (prod != W * sys.a_coeffs[l])
            throw SchemeLabError("mub_gram: projection identity M^2 = wM fails");
    }
    return sys;
}

/* ------------------------------------------------------------------ */
/* Unbiased regular Hadamard matrices from a concrete linked system    */
/* ------------------------------------------------------------------ */

namespace detail {

/* Connected components of one relation, each required to be a clique. */
inline std::vector<std::vector<std::size_t>> relation_fibers(const ConcreteScheme& s,
                                                             std::size_t rel) {
    std::vector<int> comp(s.n(), -1);
    std::vector<std::vector<std::size_t>> fibers;
    for (std::size_t x = 0; x < s.n(); ++x) {
        if (comp[x] >= 0) continue;
        std::vector<std::size_t> fiber{x};
        comp[x] = static_cast<int>(fibers.size());
        for (std::size_t y = 0; y < s.n(); ++y)
            if (y != x && s.rel(x, y) == rel) {
                fiber.push_back(y);
                comp[y] = comp[x];
            }
        for (std::size_t a : fiber)
            for (std::size_t b : fiber)
                if (a != b && s.rel(a, b) != rel)
                    throw PreconditionFailed("relation " + std::to_string(rel) +
                                             " does not partition the vertices into cliques");
        fibers.push_back(std::move(fiber));
    }
    return fibers;
}

}  // namespace detail

/*
 * The w-1 sign matrices of the (fiber 1, fiber j) blocks of a concrete
 * linked system: +1 on the heavy cross relation, -1 on the light one. Each
 * must be a regular Hadamard matrix of order v with squared row sum v, and
 * every pair must be unbiased, checked in squared form as
 * (H_i H_j^T) o (H_i H_j^T) = vJ.
 */
inline std::vector<SignMatrix> unbiased_hadamards_from_lssd(const ConcreteScheme& s,
                                                            std::size_t fiber_relation = 2) {
    auto fibers = detail::relation_fibers(s, fiber_relation);
    std::size_t w = fibers.size();
    if (w < 2) throw PreconditionFailed("unbiased_hadamards_from_lssd: need at least two fibers");
    std::size_t v = fibers[0].size();
    for (const auto& f : fibers)
        if (f.size() != v)
            throw PreconditionFailed("unbiased_hadamards_from_lssd: fibers have unequal sizes");

    std::vector<SignMatrix> out;
    for (std::size_t j = 1; j < w; ++j) {
        SignMatrix h(v, std::vector<int>(v, 0));
        for (std::size_t a = 0; a < v; ++a)
            for (std::size_t b = 0; b < v; ++b) {
                std::uint8_t r = s.rel(fibers[0][a], fibers[j][b]);
                if (r == 1)
                    h[a][b] = 1;
                else if (r == 3)
                    h[a][b] = -1;
                else
                    throw PreconditionFailed(
                        "unbiased_hadamards_from_lssd: cross-fiber pair is neither heavy nor light");
            }
        long want = static_cast<long>(v);
        long rowsum0 = 0;
        for (std::size_t b = 0; b < v; ++b) rowsum0 += h[0][b];
        for (std::size_t a = 0; a < v; ++a) {
            long rs = 0;
            for (std::size_t b = 0; b < v; ++b) rs += h[a][b];
            if (rs != rowsum0)
                throw PreconditionFailed("unbiased_hadamards_from_lssd: block is not regular");
            for (std::size_t c = a; c < v; ++c) {
                long dot = 0;
                for (std::size_t b = 0; b < v; ++b) dot += h[a][b] * h[c][b];
                if (dot != (a == c ? want : 0))
                    throw PreconditionFailed("unbiased_hadamards_from_lssd: block is not Hadamard");
            }
        }
        if (rowsum0 * rowsum0 != want)
            throw PreconditionFailed(
                "unbiased_hadamards_from_lssd: row sum squared differs from the order");
        out.push_back(std::move(h));
    }

    for (std::size_t i = 0; i < out.size(); ++i)
        for (std::size_t j = i + 1; j < out.size(); ++j)
            for (std::size_t a = 0; a < v; ++a)
                for (std::size_t b = 0; b < v; ++b) {
                    long dot = 0;
                    for (std::size_t c = 0; c < v; ++c) dot += out[i][c][a] * out[j][c][b];
                    if (dot * dot != static_cast<long>(v))
                        throw PreconditionFailed(
                            "unbiased_hadamards_from_lssd: blocks are not unbiased");
                }
    return out;
}

/* ------------------------------------------------------------------ */
/* Linked regular simplices                                            */
/* ------------------------------------------------------------------ */

struct LinkedSimplices {
    Integer v, w;
    Rational gamma, delta;  // the two cross-fiber inner products, gamma > delta
    Integer k, lambda, mu, nu;
    bool degenerate = false;  // gamma = 1: fibers repeat the same simplex
};

/*
 * Recovers symmetric-design parameters from a unit-diagonal Gram matrix of w
 * linked regular simplices of v vectors each (fibers are consecutive blocks).
 * Within a fiber all inner products must be -1/(v-1); across fibers exactly
 * two values gamma > delta may occur, and the derived design and linking
 * parameters must all be nonnegative integers for the configuration to exist.
 */
inline LinkedSimplices linked_simplices_check(const RMatrix& gram, std::size_t fiber_size) {
    if (!gram.square()) throw DimensionMismatch("linked_simplices_check: Gram matrix not square");
    std::size_t n = gram.rows();
    if (fiber_size < 2 || n % fiber_size != 0)
        throw PreconditionFailed("linked_simplices_check: order is not a multiple of the fiber size");
    std::size_t w = n / fiber_size;
    if (w < 2) throw PreconditionFailed("linked_simplices_check: need at least two fibers");
    Rational V(static_cast<long>(fiber_size));
    Rational inner = -1 / (V - 1);

    std::vector<Rational> cross;
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) {
            const Rational& g = gram(x, y);
            if (gram(y, x) != g) throw PreconditionFailed("linked_simplices_check: not symmetric");
            if (x == y) {
                if (g != 1) throw PreconditionFailed("linked_simplices_check: diagonal entry not 1");
            } else if (x / fiber_size == y / fiber_size) {
                if (g != inner)
                    throw PreconditionFailed(
                        "linked_simplices_check: within-fiber entry is not -1/(v-1)");
            } else if (std::find(cross.begin(), cross.end(), g) == cross.end()) {
                cross.push_back(g);
            }
        }
    if (cross.size() != 2)
        throw PreconditionFailed("linked_simplices_check: expected exactly two cross-fiber values, saw " +
                                 std::to_string(cross.size()));

    LinkedSimplices out;
    out.v = Integer(static_cast<long>(fiber_size));
    out.w = Integer(static_cast<long>(w));
    out.gamma = std::max(cross[0], cross[1]);
    out.delta = std::min(cross[0], cross[1]);
    out.degenerate = out.gamma == 1;

    Rational diff = out.gamma - out.delta;
    Rational K = -V * out.delta / diff;
    Rational L = (V * out.delta * out.delta - V / ((V - 1) * (V - 1))) / (diff * diff);
    Rational Nu = (V / (diff * diff)) * (out.delta * out.delta + out.delta / (V - 1));
    Rational Mu = Nu + V / (diff * (V - 1));
    for (const Rational* p : {&K, &L, &Nu, &Mu})
        if (!is_integer(*p) || *p < 0)
            throw NonIntegralParameter("linked_simplices_check: derived parameter " + p->str() +
                                       " is not a nonnegative integer");
    out.k = to_integer(K);
    out.lambda = to_integer(L);
    out.nu = to_integer(Nu);
    out.mu = to_integer(Mu);

    /* Every vector must see exactly k gamma-entries in each other fiber. */
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t f = 0; f < w; ++f) {
            if (f == x / fiber_size) continue;
            Integer cnt = 0;
            for (std::size_t y = f * fiber_size; y < (f + 1) * fiber_size; ++y)
                if (gram(x, y) == out.gamma) ++cnt;
            if (cnt != out.k)
                throw PreconditionFailed(
                    "linked_simplices_check: cross-fiber value counts are not constant");
        }
    return out;
}

/* ------------------------------------------------------------------ */
/* Orthogonal projective doubles                                       */
/* ------------------------------------------------------------------ */

enum class OpdMode { incidence, srg_idempotent };

namespace detail {

struct SrgSpectrum {
    Rational k, lambda, mu, r, s, f, g;
};

/* Exact strongly-regular check with rational eigenvalues r > s. */
inline SrgSpectrum srg_spectrum(const SimpleGraph& g) {
    std::size_t v = g.n();
    if (v < 4) throw NotAnSRGSpectrum("srg_spectrum: too few vertices");
    std::size_t k = g.degree(0);
    for (std::size_t x = 0; x < v; ++x)
        if (g.degree(x) != k) throw NotAnSRGSpectrum("srg_spectrum: graph is not regular");
    if (k == 0 || k == v - 1)
        throw NotAnSRGSpectrum("srg_spectrum: complete and empty graphs are excluded");
    long lam = -1, mu = -1;
    for (std::size_t x = 0; x < v; ++x)
        for (std::size_t y = x + 1; y < v; ++y) {
            long common = static_cast<long>((g.neighbors(x) & g.neighbors(y)).count());
            long& slot = g.adjacent(x, y) ? lam : mu;
            if (slot < 0)
                slot = common;
            else if (slot != common)
                throw NotAnSRGSpectrum("srg_spectrum: common-neighbor counts are not constant");
        }
    if (mu <= 0) throw NotAnSRGSpectrum("srg_spectrum: graph is disconnected");
    SrgSpectrum out;
    out.k = Rational(static_cast<long>(k));
    out.lambda = Rational(lam);
    out.mu = Rational(mu);
    Rational half_trace = out.lambda - out.mu;
    Rational disc = half_trace * half_trace + 4 * (out.k - out.mu);
    auto root = exact_sqrt(disc);
    if (!root)
        throw IrrationalSpectrum("srg_spectrum: eigenvalues are irrational (conference graph)", {});
    out.r = (half_trace + *root) / 2;
    out.s = (half_trace - *root) / 2;
    SrgDerived der = srg_params(out.k, out.r, out.s);
    if (der.v != Rational(static_cast<long>(v)))
        throw NotAnSRGSpectrum("srg_spectrum: derived order disagrees");
    out.f = der.f;
    out.g = der.g;
    return out;
}

}  // namespace detail

/*
 * Gram matrix of an orthogonal projective double of a graph.
 *
 * incidence mode works for any graph with max degree d >= 2: the normalized
 * rows of the oriented incidence matrix (padded to constant norm) give unit
 * diagonal, -1/d on edges and 0 elsewhere.
 *
 * srg_idempotent mode rescales ((1+r)/(v-k-1))E_0 + (1/f)E_1 of a strongly
 * regular graph to unit diagonal: angle [k + r(v-1)] / [k(v+r-k)] on edges,
 * 0 elsewhere, rank f+1.
 */
inline GramSystem opd_gram(const SimpleGraph& graph, OpdMode mode) {
    std::size_t v = graph.n();
    if (v == 0) throw EmptyGraph("opd_gram: graph has no vertices");
    if (graph.edge_count() == 0) throw EmptyGraph("opd_gram: graph has no edges");

    GramSystem sys;
    sys.count = v;
    RMatrix g(v, v);
    Rational angle;
    if (mode == OpdMode::incidence) {
        std::size_t d = graph.max_degree();
        if (d < 2)
            throw PreconditionFailed("opd_gram: max degree 1 gives angle 1, not a line system");
        angle = Rational(1, static_cast<long>(d));
        for (std::size_t x = 0; x < v; ++x) {
            g(x, x) = 1;
            for (std::size_t y = 0; y < v; ++y)
                if (x != y && graph.adjacent(x, y)) g(x, y) = -angle;
        }
    } else {
        detail::SrgSpectrum sp = detail::srg_spectrum(graph);
        Rational V(static_cast<long>(v));
        angle = (sp.k + sp.r * (V - 1)) / (sp.k * (V + sp.r - sp.k));
        for (std::size_t x = 0; x < v; ++x) {
            g(x, x) = 1;
            for (std::size_t y = 0; y < v; ++y)
                if (x != y && graph.adjacent(x, y)) g(x, y) = angle;
        }
        sys.e_coeffs = {V * (1 + sp.r) / (V + sp.r - sp.k),
                        V * (V - sp.k - 1) / (sp.f * (V + sp.r - sp.k)), Rational(0)};
    }
    sys.dim = rank(g);
    if (mode == OpdMode::srg_idempotent) {
        detail::SrgSpectrum sp = detail::srg_spectrum(graph);
        if (sys.dim != static_cast<std::size_t>(to_integer(sp.f + 1)))
            throw SchemeLabError("opd_gram: rank disagrees with f + 1");
    }
    sys.gram = std::move(g);
    std::vector<Rational> vals;
    for (std::size_t x = 0; x < v; ++x)
        for (std::size_t y = x + 1; y < v; ++y) vals.push_back(sys.gram(x, y));
    sys.value_map = detail::distinct_descending(std::move(vals));
    return sys;
}

/* ------------------------------------------------------------------ */
/* Schemes induced by projective doubles                               */
/* ------------------------------------------------------------------ */

struct OpdSchemeResult {
    Verdict verdict;
    ConcreteScheme scheme{1, 0};  // the induced 4-class scheme (levels 1, beta, 0, -beta, -1)
    Rational beta2;
    Rational m;                   // forced dimension v/(1 + k beta^2)
    bool m_integral = false;
    bool q_bipartite = false;     // q^4_11 = 0, i.e. s = -1/beta^2
    Rational q411, q211;
    std::vector<RMatrix> krein_dual;  // L_0*..L_4* of the induced scheme, when computable
    std::string note;
};

namespace detail {

/* Elements of Q(beta) with beta^2 = B: value a + b*beta. */
struct Ext {
    Rational a, b;
};
inline Ext ext_mul(const Ext& x, const Ext& y, const Rational& B) {
    return {x.a * y.a + x.b * y.b * B, x.a * y.b + x.b * y.a};
}

}  // namespace detail

/*
 * Decides whether an antipodal system of 2v unit vectors with inner products
 * {1, beta, 0, -beta, -1} induces a 4-class association scheme. The input is
 * the level matrix (inner products divided by beta, so entries 2, 1, 0, -1,
 * -2) plus the rational square of beta.
 *
 * Closure of the five relations is checked by triple counting and a failure
 * throws NotClosed. On success the projection identity G^2 = 2(1+k beta^2)G
 * is verified exactly over Q(beta), the forced dimension m = v/(1+k beta^2)
 * is reported, and when the quotient graph has a rational spectrum the Krein
 * arrays of the induced scheme are computed from its second eigenmatrix.
 */
inline OpdSchemeResult opd_induces_scheme(const std::vector<std::vector<int>>& levels,
                                          const Rational& beta2) {
    std::size_t n = levels.size();
    if (n == 0 || n % 2 != 0)
        throw PreconditionFailed("opd_induces_scheme: need an even number of vectors");
    if (beta2 <= 0 || beta2 >= 1)
        throw PreconditionFailed("opd_induces_scheme: need 0 < beta^2 < 1");
    std::size_t v = n / 2;
    std::vector<std::size_t> mate(n, n);
    for (std::size_t x = 0; x < n; ++x) {
        if (levels[x].size() != n)
            throw DimensionMismatch("opd_induces_scheme: level matrix not square");
        if (levels[x][x] != 2)
            throw PreconditionFailed("opd_induces_scheme: diagonal level must be 2");
        for (std::size_t y = 0; y < n; ++y) {
            if (levels[x][y] < -2 || levels[x][y] > 2)
                throw PreconditionFailed("opd_induces_scheme: level out of range");
            if (levels[y][x] != levels[x][y])
                throw PreconditionFailed("opd_induces_scheme: level matrix not symmetric");
            if (levels[x][y] == -2) {
                if (mate[x] != n)
                    throw PreconditionFailed("opd_induces_scheme: vector has two antipodes");
                mate[x] = y;
            }
        }
        if (mate[x] == n) throw PreconditionFailed("opd_induces_scheme: vector has no antipode");
    }
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y)
            if (levels[mate[x]][y] != -levels[x][y])
                throw PreconditionFailed("opd_induces_scheme: levels are not antipodal");

    OpdSchemeResult out;
    out.beta2 = beta2;
    ConcreteScheme s(n, 4);
    bool seen[5] = {false, false, false, false, false};
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = x; y < n; ++y) {
            std::uint8_t rel = static_cast<std::uint8_t>(2 - levels[x][y]);
            seen[rel] = true;
            s.set_rel(x, y, rel);
        }
    for (int r = 0; r < 5; ++r)
        if (!seen[r])
            throw PreconditionFailed("opd_induces_scheme: level " + std::to_string(2 - r) +
                                     " never occurs");
    try {
        intersection_tensor(s);
    } catch (const NotAScheme& e) {
        throw NotClosed(std::string("opd_induces_scheme: Schur closure fails: ") + e.what());
    }
    out.scheme = std::move(s);

    /* Quotient graph on the antipodal classes, adjacency at level +-1. */
    std::vector<std::size_t> rep;
    std::vector<int> cls(n, -1);
    for (std::size_t x = 0; x < n; ++x)
        if (cls[x] < 0) {
            cls[x] = cls[mate[x]] = static_cast<int>(rep.size());
            rep.push_back(x);
        }
    SimpleGraph quotient(v);
    for (std::size_t i = 0; i < v; ++i)
        for (std::size_t j = i + 1; j < v; ++j)
            if (levels[rep[i]][rep[j]] == 1 || levels[rep[i]][rep[j]] == -1)
                quotient.add_edge(i, j);
    Rational K(static_cast<long>(quotient.degree(0)));
    out.m = Rational(static_cast<long>(v)) / (1 + K * beta2);
    out.m_integral = is_integer(out.m);

    /* G^2 = 2(1 + k beta^2) G over Q(beta). */
    auto as_ext = [&](int level) -> detail::Ext {
        switch (level) {
            case 2: return {Rational(1), Rational(0)};
            case 1: return {Rational(0), Rational(1)};
            case -1: return {Rational(0), Rational(-1)};
            case -2: return {Rational(-1), Rational(0)};
            default: return {Rational(0), Rational(0)};
        }
    };
    Rational scale = 2 * (1 + K * beta2);
    bool projection_ok = true;
    for (std::size_t x = 0; x < n && projection_ok; ++x)
        for (std::size_t y = 0; y < n && projection_ok; ++y) {
            detail::Ext sum{Rational(0), Rational(0)};
            for (std::size_t z = 0; z < n; ++z) {
                detail::Ext t = detail::ext_mul(as_ext(levels[x][z]), as_ext(levels[z][y]), beta2);
                sum.a += t.a;
                sum.b += t.b;
            }
            detail::Ext want = as_ext(levels[x][y]);
            if (sum.a != scale * want.a || sum.b != scale * want.b) projection_ok = false;
        }

    /* Krein arrays from the second eigenmatrix, when the quotient is an SRG
     * with rational spectrum; multiplicities are (1, m, f, v-m, g). */
    try {
        detail::SrgSpectrum sp = detail::srg_spectrum(quotient);
        Rational V(static_cast<long>(v));
        std::vector<detail::Ext> col1 = {{out.m, Rational(0)},  {Rational(0), out.m},
                                         {Rational(0), Rational(0)}, {Rational(0), -out.m},
                                         {-out.m, Rational(0)}};
        std::vector<Rational> col2 = {sp.f, sp.f * sp.r / sp.k, sp.f * (sp.r + 1) / (sp.k + 1 - V),
                                      sp.f * sp.r / sp.k, sp.f};
        std::vector<Rational> col4 = {sp.g, sp.g * sp.s / sp.k, sp.g * (sp.s + 1) / (sp.k + 1 - V),
                                      sp.g * sp.s / sp.k, sp.g};
        std::vector<std::vector<detail::Ext>> Q(5, std::vector<detail::Ext>(5));
        for (std::size_t h = 0; h < 5; ++h) {
            Q[h][0] = {Rational(1), Rational(0)};
            Q[h][1] = col1[h];
            Q[h][2] = {col2[h], Rational(0)};
            Q[h][3] = {(h == 0 ? V - out.m : h == 4 ? out.m - V : Rational(0)),
                       (h == 1 ? -out.m : h == 3 ? out.m : Rational(0))};
            Q[h][4] = {col4[h], Rational(0)};
        }
        std::vector<Rational> kval = {Rational(1), sp.k, 2 * (V - 1 - sp.k), sp.k, Rational(1)};
        std::vector<Rational> mval = {Rational(1), out.m, sp.f, V - out.m, sp.g};
        Tensor q = make_tensor(5);
        for (std::size_t i = 0; i < 5; ++i)
            for (std::size_t j = 0; j < 5; ++j)
                for (std::size_t l = 0; l < 5; ++l) {
                    detail::Ext sum{Rational(0), Rational(0)};
                    for (std::size_t h = 0; h < 5; ++h) {
                        detail::Ext t = detail::ext_mul(Q[h][i], Q[h][j], beta2);
                        t = detail::ext_mul(t, Q[h][l], beta2);
                        sum.a += kval[h] * t.a;
                        sum.b += kval[h] * t.b;
                    }
                    if (sum.b != 0)
                        throw SchemeLabError("opd_induces_scheme: Krein parameter not rational");
                    q[i][j][l] = sum.a / (2 * V * mval[l]);
                }
        for (std::size_t i = 0; i < 5; ++i) {  // row sums must give the multiplicities
            for (std::size_t k2 = 0; k2 < 5; ++k2) {
                Rational rs = 0;
                for (std::size_t j = 0; j < 5; ++j) rs += q[i][j][k2];
                if (rs != mval[i])
                    throw SchemeLabError("opd_induces_scheme: Krein row-sum identity fails");
            }
            RMatrix L(5, 5);
            for (std::size_t k2 = 0; k2 < 5; ++k2)
                for (std::size_t j = 0; j < 5; ++j) L(k2, j) = q[i][j][k2];
            out.krein_dual.push_back(std::move(L));
        }
        out.q211 = q[1][1][2];
        out.q411 = q[1][1][4];
        if (out.q211 != out.m * out.m * (1 + beta2 * sp.r) / V ||
            out.q411 != out.m * out.m * (1 + beta2 * sp.s) / V)
            throw SchemeLabError("opd_induces_scheme: closed-form Krein values disagree");
        out.q_bipartite = out.q411 == 0;
    } catch (const NotAnSRGSpectrum& e) {
        out.note = e.what();
    } catch (const IrrationalSpectrum& e) {
        out.note = e.what();
    }

    out.verdict.test_id = "opd_induces_scheme";
    out.verdict.citation = "closure, m = v(1 + k beta^2)^{-1}, and G^2 = (2v/m) G";
    out.verdict.status = (out.m_integral && projection_ok) ? Status::pass : Status::fail;
    out.verdict.witness = {out.m};
    if (!out.m_integral) out.verdict.note = "forced dimension is not an integer";
    else if (!projection_ok) out.verdict.note = "projection identity fails";
    return out;
}

}  // namespace schemelab
