#pragma once

/*
 * Feasibility tests for parameter sets: the three fundamental conditions,
 * Gegenbauer/Schoenberg positivity with a certified degree cutoff, the
 * closed-form cometric and Q-bipartite Krein inequalities, symmetric-design
 * (LSSD) arithmetic conditions, the relative bound for equiangular lines,
 * and the orthogonal projective double conditions. run_battery orchestrates
 * the parameter-set tests into a single deterministic report.
 */

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "errors.hpp"
#include "matrix.hpp"
#include "rational.hpp"
#include "scheme.hpp"
#include "verdict.hpp"

namespace schemelab {

namespace detail {

inline Verdict ineq_verdict(std::string id, const Rational& lhs, const Rational& rhs,
                            std::string rule) {
    Verdict v;
    v.test_id = std::move(id);
    v.citation = std::move(rule);
    v.status = lhs >= rhs ? Status::pass : Status::fail;
    v.witness = {lhs, rhs};
    return v;
}

inline Verdict na_verdict(std::string id, std::string rule, std::string why) {
    Verdict v;
    v.test_id = std::move(id);
    v.citation = std::move(rule);
    v.status = Status::inapplicable;
    v.note = std::move(why);
    return v;
}

}  // namespace detail

/* ------------------------------------------------------------------ */
/* Fundamental conditions                                              */
/* ------------------------------------------------------------------ */

/*
 * FC1: all Krein parameters nonnegative. FC2: all intersection numbers
 * nonnegative integers. FC3 (absolute bound): for every pair (i,j), the sum
 * of m_k over the support of q^k_ij is at most m_i m_j (i != j) or
 * binom(m_i + 1, 2) (i == j).
 */
inline std::vector<Verdict> check_fc(const ParameterSet& ps) {
    std::vector<Verdict> out;
    std::size_t cnt = ps.d + 1;
    {
        Verdict v;
        v.test_id = "fc1";
        v.citation = "all q^k_ij >= 0";
        v.status = Status::pass;
        for (std::size_t i = 0; i < cnt && v.passed(); ++i)
            for (std::size_t j = 0; j < cnt && v.passed(); ++j)
                for (std::size_t k = 0; k < cnt; ++k)
                    if (ps.q_tensor[i][j][k] < 0) {
                        v.status = Status::fail;
                        v.witness = {ps.q_tensor[i][j][k]};
                        v.note = "q^" + std::to_string(k) + "_{" + std::to_string(i) + "," +
                                 std::to_string(j) + "}";
                        break;
                    }
        out.push_back(std::move(v));
    }
    {
        Verdict v;
        v.test_id = "fc2";
        v.citation = "all p^k_ij are nonnegative integers";
        v.status = Status::pass;
        for (std::size_t i = 0; i < cnt && v.passed(); ++i)
            for (std::size_t j = 0; j < cnt && v.passed(); ++j)
                for (std::size_t k = 0; k < cnt; ++k) {
                    const Rational& x = ps.p_tensor[i][j][k];
                    if (x < 0 || !is_integer(x)) {
                        v.status = Status::fail;
                        v.witness = {x};
                        v.note = "p^" + std::to_string(k) + "_{" + std::to_string(i) + "," +
                                 std::to_string(j) + "}";
                        break;
                    }
                }
        out.push_back(std::move(v));
    }
    {
        Verdict v;
        v.test_id = "fc3";
        v.citation = "sum of m_k over the support of q^k_ij is at most rank(E_i o E_j)";
        v.status = Status::pass;
        for (std::size_t i = 0; i < cnt && v.passed(); ++i)
            for (std::size_t j = 0; j < cnt && v.passed(); ++j) {
                Rational s = 0;
                for (std::size_t k = 0; k < cnt; ++k)
                    if (ps.q_tensor[i][j][k] != 0) s += ps.multiplicity(k);
                Rational bound = (i == j)
                                     ? ps.multiplicity(i) * (ps.multiplicity(i) + 1) / 2
                                     : ps.multiplicity(i) * ps.multiplicity(j);
                if (s > bound) {
                    v.status = Status::fail;
                    v.witness = {s, bound};
                    v.note = "(i,j) = (" + std::to_string(i) + "," + std::to_string(j) + ")";
                }
            }
        out.push_back(std::move(v));
    }
    return out;
}

/* ------------------------------------------------------------------ */
/* Gegenbauer polynomials and Schoenberg positivity                    */
/* ------------------------------------------------------------------ */

/*
 * Normalized Gegenbauer polynomial Q_l^m(t) via the three-term recurrence
 *   (l + m - 3) Q_l = (2l + m - 4) t Q_{l-1} - (l - 1) Q_{l-2},
 * with Q_0 = 1, Q_1 = t. Normalized so Q_l(1) = 1.
 */
inline Rational gegenbauer_eval(long m, long ell, const Rational& t) {
    if (ell < 0) throw DomainViolation("gegenbauer_eval: negative degree");
    if (ell == 0) return 1;
    if (ell == 1) return t;
    if (m < 3) throw UnsupportedDimension("gegenbauer_eval: dimension must be at least 3");
    Rational prev = 1, cur = t;
    for (long l = 2; l <= ell; ++l) {
        Rational next = (Rational(2 * l + m - 4) * t * cur - Rational(l - 1) * prev) /
                        Rational(l + m - 3);
        prev = cur;
        cur = next;
    }
    return cur;
}

/*
 * Expansion coefficients theta_{l,j} of the entrywise Gegenbauer transform
 * of the scaled idempotent (n/m_i) E_i in the idempotent basis. Row l,
 * column j. Computed exactly as n times the first column of
 * Q_l^{m_i}((1/m_i) L_i*) via the matrix three-term recurrence.
 */
struct ThetaTable {
    std::size_t base_idempotent = 0;
    RMatrix theta;  // (lmax+1) x (d+1), entry (l, j) = theta_{l,j}
};

inline ThetaTable schoenberg_theta(const ParameterSet& ps, std::size_t i, std::size_t lmax) {
    Rational m = ps.multiplicity(i);
    if (m <= 2) throw UnsupportedDimension("schoenberg_theta: multiplicity must exceed 2");
    std::size_t cnt = ps.d + 1;
    RMatrix M = scalar_mul(Rational(1) / m, ps.Lstar(i));
    ThetaTable tt;
    tt.base_idempotent = i;
    tt.theta = RMatrix(lmax + 1, cnt);

    std::vector<Rational> prev(cnt, Rational(0)), cur(cnt, Rational(0));
    prev[0] = 1;  // c_0 = e_0
    for (std::size_t j = 0; j < cnt; ++j) tt.theta(0, j) = ps.n * prev[j];
    if (lmax == 0) return tt;
    for (std::size_t j = 0; j < cnt; ++j) cur[j] = M(j, 0);  // c_1 = M e_0
    for (std::size_t j = 0; j < cnt; ++j) tt.theta(1, j) = ps.n * cur[j];
    for (std::size_t l = 2; l <= lmax; ++l) {
        std::vector<Rational> next(cnt, Rational(0));
        Rational cl = Rational(2 * static_cast<long>(l)) + m - 4;
        Rational dl = Rational(static_cast<long>(l)) + m - 3;
        for (std::size_t r = 0; r < cnt; ++r) {
            Rational mv = 0;
            for (std::size_t s = 0; s < cnt; ++s)
                if (M(r, s) != 0) mv += M(r, s) * cur[s];
            next[r] = (cl * mv - Rational(static_cast<long>(l) - 1) * prev[r]) / dl;
        }
        for (std::size_t j = 0; j < cnt; ++j) tt.theta(l, j) = ps.n * next[j];
        prev.swap(cur);
        cur.swap(next);
    }
    return tt;
}

/*
 * Smallest degree l* certified nonnegative by the sufficient condition
 *   sum_j (prod_{l=2}^{l*+1} gamma_{l,j}) P_{0j} (1 + lambda_j^2) <= 1/n,
 * with gamma_{l,j} = lambda_j^2 when (1+mu_l)^2 lambda_j^2 >= 4 mu_l, else
 * mu_l = (l-1)/(l+m-3). When the ordering based at i is Q-bipartite the sum
 * runs over the middle relations only and the threshold relaxes to 4/n.
 * theta rows at degree >= l* are then nonnegative automatically, so the
 * table only needs scanning up to l* - 1.
 */
inline std::size_t degree_cutoff(const ParameterSet& ps, std::size_t i, std::size_t cap = 64) {
    Rational m = ps.multiplicity(i);
    if (m <= 2) throw UnsupportedDimension("degree_cutoff: multiplicity must exceed 2");
    std::size_t d = ps.d;

    bool qbip = false;
    if (auto ord = detail::tridiagonal_order(ps.q_tensor, i)) {
        qbip = true;
        for (std::size_t t = 0; t <= d; ++t)
            if (ps.q_tensor[i][(*ord)[t]][(*ord)[t]] != 0) qbip = false;
    }

    std::vector<std::size_t> rel(d + 1);
    std::iota(rel.begin(), rel.end(), std::size_t(0));
    std::stable_sort(rel.begin(), rel.end(),
                     [&](std::size_t a, std::size_t b) { return ps.Q(a, i) > ps.Q(b, i); });
    std::size_t last = qbip ? d - 1 : d;  // Q-bipartite: drop the lambda = -1 relation
    std::vector<std::size_t> js(rel.begin() + 1, rel.begin() + last + 1);
    Rational threshold = (qbip ? Rational(4) : Rational(1)) / ps.n;

    std::vector<Rational> lam2(js.size()), prod(js.size(), Rational(1));
    for (std::size_t t = 0; t < js.size(); ++t) {
        Rational lam = ps.Q(js[t], i) / m;
        lam2[t] = lam * lam;
    }
    for (std::size_t lstar = 1; lstar <= cap; ++lstar) {
        long l = static_cast<long>(lstar) + 1;  // new factor gamma_{l, j}
        Rational mu = Rational(l - 1) / (Rational(l) + m - 3);
        Rational sum = 0;
        for (std::size_t t = 0; t < js.size(); ++t) {
            Rational onemu = Rational(1) + mu;
            prod[t] *= (onemu * onemu * lam2[t] >= 4 * mu) ? lam2[t] : mu;
            sum += prod[t] * ps.P(0, js[t]) * (Rational(1) + lam2[t]);
        }
        if (sum <= threshold) return lstar;
    }
    throw NoCutoffFound("degree_cutoff: not certified below the degree cap");
}

/* ------------------------------------------------------------------ */
/* Closed-form Krein inequalities for cometric orderings               */
/* ------------------------------------------------------------------ */

/*
 * Necessary inequalities on a Krein array with m = b*_0 > 2; q22_2 is the
 * Krein parameter q^2_22, which lives outside the array itself. (vi) and
 * (vii) require a*_1 > 0; when every a*_i = 0 the five sharper Q-bipartite
 * specializations are emitted as well.
 */
inline std::vector<Verdict> cometric_bounds(const KreinArray& ka, const Rational& q22_2) {
    Rational m = ka.m();
    if (m <= 2) throw UnsupportedDimension("cometric_bounds: m = b*_0 must exceed 2");
    Rational a1 = ka.a(1), a2 = ka.a(2), a3 = ka.a(3);
    Rational b1 = ka.b(1), b2 = ka.b(2);
    Rational c2 = ka.c(2), c3 = ka.c(3);
    std::vector<Verdict> out;
    using detail::ineq_verdict;
    using detail::na_verdict;

    out.push_back(ineq_verdict("cometric_i", a1 * a1 + b1 * c2, 2 * m * (m - 1) / (m + 2),
                               "(a*_1)^2 + b*_1 c*_2 >= 2m(m-1)/(m+2)"));
    out.push_back(ineq_verdict("cometric_ii", a1 * a1 + 2 * a1 * a2 + c2 * q22_2,
                               4 * m * (m - 2) / (m + 4),
                               "(a*_1)^2 + 2 a*_1 a*_2 + c*_2 q^2_22 >= 4m(m-2)/(m+4)"));
    out.push_back(ineq_verdict(
        "cometric_iii",
        6 * m * (m - 1) * (m - 4) / ((m + 4) * (m + 6)) +
            ((3 * a1 * (a1 + a2) + c2 * q22_2) * b1 * c2 + a1 * a1 * a1 * a1) / m,
        (7 * m - 18) * (a1 * a1 + b1 * c2) / (m + 6),
        "6m(m-1)(m-4)/((m+4)(m+6)) + [(3a*_1(a*_1+a*_2)+c*_2 q^2_22) b*_1 c*_2 + (a*_1)^4]/m >= "
        "(7m-18)((a*_1)^2 + b*_1 c*_2)/(m+6)"));
    {
        Rational lhs = 0;
        for (std::size_t t = 1; t <= 3; ++t) {
            Rational tail = 0;
            for (std::size_t u = t; u <= 3; ++u) tail += ka.a(u);
            lhs += ka.b(t) * ka.c(t + 1) + ka.a(t) * tail;
        }
        out.push_back(ineq_verdict(
            "cometric_iv", lhs, 3 * (3 * m - 2) / (m + 6),
            "sum_{i=1..3} (b*_i c*_{i+1} + a*_i sum_{j=i..3} a*_j) >= 3(3m-2)/(m+6)"));
    }
    out.push_back(ineq_verdict(
        "cometric_v",
        16 * m * (m - 1) / ((m + 4) * (m + 8)) +
            (a1 * a1 * a1 * a1 + (3 * a1 * (a1 + a2) + c2 * q22_2) * b1 * c2) / ((m - 2) * m),
        12 * (a1 * a1 + b1 * c2) / (m + 8),
        "16m(m-1)/((m+4)(m+8)) + [(a*_1)^4 + (3a*_1(a*_1+a*_2)+c*_2 q^2_22) b*_1 c*_2]/((m-2)m) "
        ">= 12((a*_1)^2 + b*_1 c*_2)/(m+8)"));

    const char* rule_vi = "(a*_1)^2 + b*_1 c*_2 (2 + a*_2/a*_1) >= 4m(2m-3)/(m+6)";
    const char* rule_vii =
        "(a*_1)^2 + 2a*_1 a*_2 - (a*_2)^2 + 2c*_2 q^2_22 + [b*_2 c*_3 (a*_3 - a*_1) - m "
        "a*_2]/(a*_1 + a*_2) >= 6m(m-4)/(m+6)";
    if (a1 > 0) {
        out.push_back(ineq_verdict("cometric_vi",
                                   a1 * a1 + b1 * c2 * (2 + a2 / a1),
                                   4 * m * (2 * m - 3) / (m + 6), rule_vi));
        if (a1 + a2 != 0)
            out.push_back(ineq_verdict(
                "cometric_vii",
                a1 * a1 + 2 * a1 * a2 - a2 * a2 + 2 * c2 * q22_2 +
                    (b2 * c3 * (a3 - a1) - m * a2) / (a1 + a2),
                6 * m * (m - 4) / (m + 6), rule_vii));
        else
            out.push_back(na_verdict("cometric_vii", rule_vii, "a*_1 + a*_2 = 0"));
    } else {
        out.push_back(na_verdict("cometric_vi", rule_vi, "a*_1 = 0"));
        out.push_back(na_verdict("cometric_vii", rule_vii, "a*_1 = 0"));
    }

    bool all_a_zero = true;
    for (std::size_t t = 0; t <= ka.d; ++t)
        if (ka.a(t) != 0) all_a_zero = false;
    if (all_a_zero) {
        out.push_back(ineq_verdict("qbip_i", b1 * c2, 2 * m * (m - 1) / (m + 2),
                                   "b*_1 c*_2 >= 2m(m-1)/(m+2)"));
        out.push_back(ineq_verdict("qbip_ii", c2 * q22_2, 4 * m * (m - 2) / (m + 4),
                                   "c*_2 q^2_22 >= 4m(m-2)/(m+4)"));
        out.push_back(ineq_verdict(
            "qbip_iii",
            6 * m * (m - 1) * (m - 4) / ((m + 4) * (m + 6)) + b1 * c2 * c2 * q22_2 / m,
            b1 * c2 * (7 * m - 18) / (m + 6),
            "6m(m-1)(m-4)/((m+4)(m+6)) + b*_1 c*_2 c*_2 q^2_22 / m >= b*_1 c*_2 (7m-18)/(m+6)"));
        {
            Rational lhs = 0;
            for (std::size_t t = 1; t <= 3; ++t) lhs += ka.b(t) * ka.c(t + 1);
            out.push_back(ineq_verdict("qbip_iv", lhs, 3 * (3 * m - 2) / (m + 6),
                                       "sum_{i=1..3} b*_i c*_{i+1} >= 3(3m-2)/(m+6)"));
        }
        const char* rule_v =
            "16m(m-1)/((m+4) b*_1 c*_2) + c*_2 q^2_22 (m+8)/((m-2)m) >= 12";
        if (b1 * c2 != 0)
            out.push_back(ineq_verdict(
                "qbip_v",
                16 * m * (m - 1) / ((m + 4) * b1 * c2) + c2 * q22_2 * (m + 8) / ((m - 2) * m),
                Rational(12), rule_v));
        else
            out.push_back(na_verdict("qbip_v", rule_v, "b*_1 c*_2 = 0"));
    }
    return out;
}

/* ------------------------------------------------------------------ */
/* Linked symmetric design feasibility                                 */
/* ------------------------------------------------------------------ */

struct LssdFeasibility {
    std::vector<Verdict> verdicts;
    std::optional<Rational> s, mu, nu, q111;
    bool mu_heavy = false;   // valid only when heaviness_known
    bool heaviness_known = false;
    bool optimistic = false;
};

/*
 * Arithmetic feasibility of a putative system of w linked symmetric
 * (v, k, lambda) designs: integrality of s = sqrt(k - lambda), the
 * exactly-one-of condition on k(k +- s)/v, the gcd and compositeness
 * consequences (binding for w > 2), the Noda bound, and the sign of the
 * Krein parameter q^1_11 of the associated 3-class scheme.
 */
inline LssdFeasibility lssd_feasibility(const Integer& v, const Integer& k, const Integer& lam,
                                        const Integer& w) {
    if (w < 2) throw PreconditionFailed("lssd_feasibility: need w >= 2");
    if (k * (k - 1) != lam * (v - 1))
        throw NotASymmetricDesign("lssd_feasibility: k(k-1) = lambda(v-1) fails");
    LssdFeasibility out;
    using detail::na_verdict;

    auto sq = exact_sqrt(Integer(k - lam));
    {
        Verdict vd;
        vd.test_id = "s_integral";
        vd.citation = "s = sqrt(k - lambda) is an integer";
        vd.status = sq ? Status::pass : Status::fail;
        if (!sq) vd.note = "k - lambda is not a perfect square";
        out.verdicts.push_back(vd);
    }
    if (!sq) return out;
    Integer s = *sq;
    out.s = Rational(s);

    Rational nu_plus = Rational(k * (k + s), v);
    Rational nu_minus = Rational(k * (k - s), v);
    bool plus_int = is_integer(nu_plus), minus_int = is_integer(nu_minus);
    {
        Verdict vd;
        vd.test_id = "exactly_one_integral";
        vd.citation = "exactly one of k(k+s)/v, k(k-s)/v is an integer";
        if (v <= 2 || k <= 1 || k >= v - 1) {
            vd.status = Status::inapplicable;
            vd.note = "requires 1 < k < v - 1";
        } else {
            vd.status = (plus_int != minus_int) ? Status::pass : Status::fail;
            vd.witness = {nu_plus, nu_minus};
        }
        out.verdicts.push_back(vd);
    }
    if (plus_int != minus_int) {
        out.heaviness_known = true;
        if (minus_int) {  // nu = k(k-s)/v, mu = nu + s
            out.nu = nu_minus;
            out.mu = nu_minus + Rational(s);
            out.mu_heavy = true;
        } else {  // nu = k(k+s)/v, mu = nu - s
            out.nu = nu_plus;
            out.mu = nu_plus - Rational(s);
            out.mu_heavy = false;
        }
        out.optimistic = Rational(2 * k - v) * (*out.mu - *out.nu) > 0;
    }

    auto binding = [&](const char* id, const char* rule, bool ok, Rational wit) {
        Verdict vd;
        vd.test_id = id;
        vd.citation = rule;
        if (w <= 2) {
            vd.status = Status::inapplicable;
            vd.note = "binding only for w > 2";
        } else {
            vd.status = ok ? Status::pass : Status::fail;
            vd.witness = {wit};
        }
        out.verdicts.push_back(vd);
    };
    Integer g1 = gcd_int(v, k);
    Integer g2 = gcd_int(v, s);
    binding("gcd_vk", "gcd(v, k) > 1", g1 > 1, Rational(g1));
    binding("gcd_vs", "gcd(v, s) > 1", g2 > 1, Rational(g2));
    {
        bool composite = false;
        for (Integer f = 2; f * f <= v; ++f)
            if (v % f == 0) { composite = true; break; }
        binding("v_composite", "v is composite", composite, Rational(v));
    }

    if (2 * k - v > 0) {
        Rational bound = Rational((v - 2) * s, 2 * k - v) + 1;
        Verdict vd;
        vd.test_id = "noda_bound";
        vd.citation = "w <= (v-2)s/(2k-v) + 1";
        vd.status = Rational(w) <= bound ? Status::pass : Status::fail;
        vd.witness = {bound};
        out.verdicts.push_back(vd);
    } else {
        out.verdicts.push_back(
            na_verdict("noda_bound", "w <= (v-2)s/(2k-v) + 1", "requires 2k > v"));
    }

    Rational q111 = Rational((1 - w) * (2 * k - v) + (v - 2) * s) / Rational(w * s);
    out.q111 = q111;
    {
        Verdict vd;
        vd.test_id = "q111_nonneg";
        vd.citation = "q^1_11 = [(1-w)(2k-v) + (v-2)s]/(ws) >= 0";
        vd.status = q111 >= 0 ? Status::pass : Status::fail;
        vd.witness = {q111};
        out.verdicts.push_back(vd);
    }
    return out;
}

/* ------------------------------------------------------------------ */
/* Relative bound for equiangular lines                                */
/* ------------------------------------------------------------------ */

/*
 * Maximum number of equiangular lines at angle arccos(alpha) in dimension n:
 * n(1 - alpha^2)/(1 - n alpha^2), valid only when n < 1/alpha^2.
 */
inline std::optional<Rational> relative_bound(const Rational& n, const Rational& alpha) {
    if (alpha <= 0 || alpha >= 1) throw DomainViolation("relative_bound: need 0 < alpha < 1");
    Rational a2 = alpha * alpha;
    if (n * a2 >= 1) return std::nullopt;
    return n * (1 - a2) / (1 - n * a2);
}

/* ------------------------------------------------------------------ */
/* Orthogonal projective double conditions                             */
/* ------------------------------------------------------------------ */

struct SrgDerived {
    Rational mu, lambda, v, f, g;
};

/* Remaining strongly regular graph parameters from (k, r, s). */
inline SrgDerived srg_params(const Rational& k, const Rational& r, const Rational& s) {
    SrgDerived out;
    out.mu = k + r * s;
    if (out.mu <= 0) throw NotAnSRGSpectrum("srg_params: k + rs must be positive");
    out.lambda = out.mu + r + s;
    out.v = (k - r) * (k - s) / out.mu;
    out.f = (s + 1) * k * (k - s) / (out.mu * (s - r));
    out.g = out.v - 1 - out.f;
    if (!is_integer(out.v) || !is_integer(out.lambda) || !is_integer(out.f))
        throw NotAnSRGSpectrum("srg_params: non-integral derived parameter");
    return out;
}

/*
 * Conditions for an orthogonal projective double over a strongly regular
 * graph with a Delsarte coclique present: the derived parameter consistency,
 * the Delsarte coclique bound (reported), the necessity beta = 1/sqrt(-s),
 * the induced-scheme dimension m = v/(1 + k beta^2), and (when -s is a
 * perfect square n^2) the quartic inequality from the 4-class Q-bipartite
 * parameter route.
 */
inline std::vector<Verdict> opd_conditions(const Rational& v, const Rational& k, const Rational& r,
                                           const Rational& s, const Rational& beta,
                                           const Rational& m) {
    if (!(k > r && r > s)) throw PreconditionFailed("opd_conditions: need k > r > s");
    SrgDerived der = srg_params(k, r, s);
    if (der.v != v) throw NotAnSRGSpectrum("opd_conditions: derived v disagrees with input");
    std::vector<Verdict> out;

    {
        Verdict vd;
        vd.test_id = "delsarte_bound";
        vd.citation = "coclique size at most v(1 - k/s)^{-1}";
        vd.status = Status::pass;
        vd.witness = {v / (1 - k / s)};
        out.push_back(vd);
    }
    {
        Verdict vd;
        vd.test_id = "beta_necessity";
        vd.citation = "beta = 1/sqrt(-s)";
        vd.status = (beta > 0 && beta * beta * (-s) == 1) ? Status::pass : Status::fail;
        vd.witness = {beta, s};
        if (vd.failed() && !exact_sqrt(-s)) vd.note = "-s is not a perfect square";
        out.push_back(vd);
    }
    {
        Verdict vd;
        vd.test_id = "induced_dimension";
        vd.citation = "m = v(1 + k beta^2)^{-1}";
        Rational want = v / (1 + k * beta * beta);
        vd.status = (m == want) ? Status::pass : Status::fail;
        vd.witness = {m, want};
        out.push_back(vd);
    }
    {
        const char* rule =
            "with s = -n^2: 15n^4(2n^2-3)r^2 + (n^6-45kn^2+76k)n^2 r + k(16k+n^6)(n^2-2) >= 0";
        auto nroot = exact_sqrt(-s);
        if (nroot) {
            Rational n2 = -s, n4 = n2 * n2, n6 = n4 * n2;
            Rational lhs = 15 * n4 * (2 * n2 - 3) * r * r +
                           (n6 - 45 * k * n2 + 76 * k) * n2 * r +
                           k * (16 * k + n6) * (n2 - 2);
            out.push_back(detail::ineq_verdict("qbip_quartic", lhs, Rational(0), rule));
        } else {
            out.push_back(detail::na_verdict("qbip_quartic", rule, "-s is not a perfect square"));
        }
    }
    return out;
}

/* ------------------------------------------------------------------ */
/* Battery                                                             */
/* ------------------------------------------------------------------ */

struct BatteryOptions {
    std::size_t cap = 64;  // hard Gegenbauer degree cap when no cutoff certifies
};

struct BatteryReport {
    enum class Overall { feasible, infeasible, inconclusive };
    Overall overall = Overall::feasible;
    std::vector<Verdict> verdicts;
    PolyOrderings orderings;
    std::vector<ThetaTable> theta_tables;
    /* (base idempotent, certified cutoff); cutoff = cap + 1 when uncertified */
    std::vector<std::pair<std::size_t, std::size_t>> cutoffs;
};

inline const char* overall_name(BatteryReport::Overall o) {
    switch (o) {
        case BatteryReport::Overall::feasible: return "feasible";
        case BatteryReport::Overall::infeasible: return "infeasible";
        default: return "inconclusive beyond cap";
    }
}

/*
 * Deterministic pipeline: fundamental conditions, then for every cometric
 * ordering the closed-form Krein inequalities, the certified degree cutoff,
 * and the theta table scan. Overall status is infeasible exactly when some
 * applicable test fails; a capped, uncertified theta scan that found no
 * negative entry downgrades "feasible" to "inconclusive".
 */
inline BatteryReport run_battery(const ParameterSet& ps, const BatteryOptions& opt = {}) {
    BatteryReport rep;
    rep.verdicts = check_fc(ps);
    rep.orderings = polynomial_orderings(ps);
    bool capped_unresolved = false;

    for (const QPolyOrdering& qo : rep.orderings.q_poly) {
        std::size_t c = qo.e1;
        std::string sfx = "_e" + std::to_string(c);
        if (ps.multiplicity(c) <= 2) {
            rep.verdicts.push_back(detail::na_verdict(
                "schoenberg" + sfx, "all theta_{l,j} >= 0", "multiplicity m <= 2"));
            continue;
        }
        Rational q22_2 = 0;
        if (ps.d >= 2) {
            std::size_t s2 = qo.order[2];
            q22_2 = ps.q_tensor[s2][s2][s2];
        }
        for (Verdict v : cometric_bounds(qo.krein, q22_2)) {
            v.test_id += sfx;
            rep.verdicts.push_back(std::move(v));
        }

        std::size_t lmax;
        bool certified = true;
        try {
            std::size_t lstar = degree_cutoff(ps, c, opt.cap);
            rep.cutoffs.emplace_back(c, lstar);
            lmax = lstar == 0 ? 0 : lstar - 1;
        } catch (const NoCutoffFound&) {
            rep.cutoffs.emplace_back(c, opt.cap + 1);
            lmax = opt.cap;
            certified = false;
        }
        ThetaTable tt = schoenberg_theta(ps, c, lmax);
        Verdict v;
        v.test_id = "schoenberg" + sfx;
        v.citation = "all theta_{l,j} >= 0";
        v.status = Status::pass;
        for (std::size_t l = 0; l <= lmax && v.passed(); ++l)
            for (std::size_t j = 0; j <= ps.d; ++j)
                if (tt.theta(l, j) < 0) {
                    v.status = Status::fail;
                    v.witness = {tt.theta(l, j)};
                    v.note = "theta_{" + std::to_string(l) + "," + std::to_string(j) + "} < 0";
                    break;
                }
        if (v.passed() && !certified) {
            v.note = "not certified beyond the degree cap";
            capped_unresolved = true;
        }
        rep.verdicts.push_back(std::move(v));
        rep.theta_tables.push_back(std::move(tt));
    }

    bool any_fail = false;
    for (const auto& v : rep.verdicts) any_fail = any_fail || v.failed();
    rep.overall = any_fail ? BatteryReport::Overall::infeasible
                 : capped_unresolved ? BatteryReport::Overall::inconclusive
                                     : BatteryReport::Overall::feasible;
    return rep;
}

}  // namespace schemelab
