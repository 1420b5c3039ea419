#pragma once

/*
 * The 21 classical symmetric-design families, as exact parameter generators
 * plus a range sweep that reruns the linked-design integrality conditions
 * (v composite; gcd(v,k) > 1; gcd(v,s) > 1; exactly one of k(k +- s)/v
 * integral) on every instance. "Always infeasible" claims are verified on a
 * finite range only, never asserted as proofs.
 */

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "errors.hpp"
#include "feasibility.hpp"
#include "rational.hpp"
#include "verdict.hpp"

namespace schemelab {

struct FamilySpec {
    int id;
    std::string name;
    std::string domain;  // human-readable argument domain
    std::size_t arity;
};

using DesignTriple = std::array<Integer, 3>;  // (v, k, lambda)

namespace detail {

inline bool is_prime(const Integer& n) {
    if (n < 2) return false;
    for (Integer f = 2; f * f <= n; ++f)
        if (n % f == 0) return false;
    return true;
}

inline bool is_prime_power(const Integer& n) {
    if (n < 2) return false;
    Integer p = 2;
    while (p * p <= n && n % p != 0) ++p;
    if (p * p > n) return true;  // n itself is prime
    Integer m = n;
    while (m % p == 0) m /= p;
    return m == 1;
}

inline Integer ipow(const Integer& base, unsigned e) {
    Integer out = 1;
    for (unsigned i = 0; i < e; ++i) out *= base;
    return out;
}

/* 1 + q + ... + q^m */
inline Integer geom(const Integer& q, unsigned m) {
    Integer out = 0, term = 1;
    for (unsigned i = 0; i <= m; ++i) {
        out += term;
        term *= q;
    }
    return out;
}

inline unsigned to_exponent(const Integer& n, const char* what) {
    if (n < 0 || n > 64) throw DomainViolation(std::string(what) + ": exponent out of range");
    return static_cast<unsigned>(n);
}

}  // namespace detail

inline const std::vector<FamilySpec>& family_table() {
    static const std::vector<FamilySpec> table{
        {1, "Point-hyperplane designs", "q prime power, m >= 2", 2},
        {2, "Hadamard matrix designs", "n >= 1", 1},
        {3, "Chowla", "t odd, 4t^2+1 prime", 1},
        {4, "Lehmer", "variant 1..3, t, u; v prime", 3},
        {5, "Whiteman", "p and 3p+2 prime", 1},
        {6, "Menon", "t >= 1", 1},
        {7, "Wallis; McFarland", "q prime power, m >= 1", 2},
        {8, "Wilson; Shrikhande and Singhi", "m >= 1", 1},
        {9, "Spence", "m >= 1", 1},
        {10, "Rajkundlia and Mitchell; Ionin", "q prime power, d >= 2, m >= 1", 3},
        {11, "Wilson; Brouwer", "q odd prime power, m >= 1", 2},
        {12, "Spence, Jungnickel and Pott, Ionin", "q prime power, d >= 1, m >= 1", 3},
        {13, "Davis and Jedwab", "d >= 0", 1},
        {14, "Chen", "q prime power, d >= 1", 2},
        {15, "Ionin (r = q^{d+1}+q-1)", "q prime power, d >= 1, m >= 1", 3},
        {16, "Ionin (q = (3^{d+1}+1)/2)", "d >= 1, m >= 1", 2},
        {17, "Ionin (q = 3^{d+1}-2)", "d >= 1, m >= 1", 2},
        {18, "Ionin (q = (2^{2d+3}+1)/3)", "d >= 1, m >= 1", 2},
        {19, "Ionin (q = 2^{2d+3}-3)", "d >= 1, m >= 1", 2},
        {20, "Ionin (Mersenne realization)", "p = 2, 2^d-1 prime, m >= 1", 3},
        {21, "Kharaghani and Ionin", "t >= 2, m >= 1", 2},
    };
    return table;
}

/*
 * Exact (v, k, lambda) for one family instance. Returns nullopt when the
 * closed forms do not produce integers at these arguments; throws
 * DomainViolation when a stated domain condition (primality, prime power,
 * argument range) is violated.
 */
inline std::optional<DesignTriple> family_params(int id, const std::vector<Integer>& args) {
    using namespace detail;
    auto need = [&](std::size_t n) {
        if (args.size() != n) throw DomainViolation("family_params: wrong argument count");
    };
    auto triple = [](Integer v, Integer k, Integer lam) -> std::optional<DesignTriple> {
        if (k * (k - 1) != lam * (v - 1))
            throw SchemeLabError("family_params: design identity violated");
        return DesignTriple{std::move(v), std::move(k), std::move(lam)};
    };
    switch (id) {
        case 1: {
            need(2);
            const Integer& q = args[0];
            unsigned m = to_exponent(args[1], "family 1 m");
            if (!is_prime_power(q)) throw DomainViolation("family 1: q must be a prime power");
            if (m < 2) throw DomainViolation("family 1: need m >= 2");
            return triple(geom(q, m), geom(q, m - 1), geom(q, m - 2));
        }
        case 2: {
            need(1);
            const Integer& n = args[0];
            if (n < 1) throw DomainViolation("family 2: need n >= 1");
            return triple(4 * n - 1, 2 * n - 1, n - 1);
        }
        case 3: {
            need(1);
            const Integer& t = args[0];
            if (t < 1) throw DomainViolation("family 3: need t >= 1");
            Integer v = 4 * t * t + 1;
            if (!is_prime(v)) throw DomainViolation("family 3: v = 4t^2+1 must be prime");
            if ((t * t - 1) % 4 != 0) return std::nullopt;  // lambda not integral
            return triple(v, t * t, (t * t - 1) / 4);
        }
        case 4: {
            need(3);
            const Integer &variant = args[0], &t = args[1], &u = args[2];
            if (t < 1) throw DomainViolation("family 4: need t >= 1");
            if (variant == 1) {
                Integer v = 4 * t * t + 9;
                if (!is_prime(v)) throw DomainViolation("family 4: v must be prime");
                if ((t * t + 3) % 4 != 0) return std::nullopt;
                return triple(v, t * t + 3, (t * t + 3) / 4);
            }
            if (variant == 2) {
                if (t * t != 8 * u * u + 1)
                    throw DomainViolation("family 4: need t^2 = 8u^2 + 1");
                Integer v = 8 * t * t + 1;
                if (!is_prime(v)) throw DomainViolation("family 4: v must be prime");
                return triple(v, t * t, u * u);
            }
            if (variant == 3) {
                if (t * t != 8 * u * u + 49)
                    throw DomainViolation("family 4: need t^2 = 8u^2 + 49");
                Integer v = 8 * t * t + 49;
                if (!is_prime(v)) throw DomainViolation("family 4: v must be prime");
                return triple(v, t * t + 7, u * u + 7);
            }
            throw DomainViolation("family 4: variant must be 1, 2 or 3");
        }
        case 5: {
            need(1);
            const Integer& p = args[0];
            Integer q = 3 * p + 2;
            if (!is_prime(p) || !is_prime(q))
                throw DomainViolation("family 5: p and 3p+2 must be prime");
            Integer v = p * q;
            if ((v - 5) % 16 != 0) return std::nullopt;
            return triple(v, (v - 1) / 4, (v - 5) / 16);
        }
        case 6: {
            need(1);
            const Integer& t = args[0];
            if (t < 1) throw DomainViolation("family 6: need t >= 1");
            return triple(4 * t * t, 2 * t * t + t, t * t + t);
        }
        case 7: {
            need(2);
            const Integer& q = args[0];
            unsigned m = to_exponent(args[1], "family 7 m");
            if (!is_prime_power(q)) throw DomainViolation("family 7: q must be a prime power");
            if (m < 1) throw DomainViolation("family 7: need m >= 1");
            Integer qm = ipow(q, m);
            return triple(qm * q * (geom(q, m) + 1), qm * geom(q, m), qm * geom(q, m - 1));
        }
        case 8: {
            need(1);
            const Integer& m = args[0];
            if (m < 1) throw DomainViolation("family 8: need m >= 1");
            return triple(m * m * m + m + 1, m * m + 1, m);
        }
        case 9: {
            need(1);
            unsigned m = to_exponent(args[0], "family 9 m");
            if (m < 1) throw DomainViolation("family 9: need m >= 1");
            Integer p3 = ipow(3, m), p3m = ipow(3, m - 1);
            return triple(p3 * (p3 - 1) / 2, p3m * (p3 + 1) / 2, p3m * (p3m + 1) / 2);
        }
        case 10: {
            need(3);
            const Integer& q = args[0];
            unsigned d = to_exponent(args[1], "family 10 d");
            unsigned m = to_exponent(args[2], "family 10 m");
            if (!is_prime_power(q)) throw DomainViolation("family 10: q must be a prime power");
            if (d < 2 || m < 1) throw DomainViolation("family 10: need d >= 2, m >= 1");
            Integer r = geom(q, d - 1);
            return triple(1 + q * r * geom(r, m - 1), ipow(r, m),
                          ipow(r, m - 1) * ((r - 1) / q));
        }
        case 11: {
            need(2);
            const Integer& q = args[0];
            unsigned m = to_exponent(args[1], "family 11 m");
            if (!is_prime_power(q) || q % 2 == 0)
                throw DomainViolation("family 11: q must be an odd prime power");
            if (m < 1) throw DomainViolation("family 11: need m >= 1");
            return triple(2 * geom(q, m) - 1, ipow(q, m), ipow(q, m - 1) * (q - 1) / 2);
        }
        case 12: {
            need(3);
            const Integer& q = args[0];
            unsigned d = to_exponent(args[1], "family 12 d");
            unsigned m = to_exponent(args[2], "family 12 m");
            if (!is_prime_power(q)) throw DomainViolation("family 12: q must be a prime power");
            if (d < 1 || m < 1) throw DomainViolation("family 12: need d >= 1, m >= 1");
            Integer r = geom(q, d);
            return triple(ipow(q, d + 1) * geom(r, 2 * m - 1), ipow(r, 2 * m - 1) * ipow(q, d),
                          (r - 1) * ipow(r, 2 * m - 2) * ipow(q, d - 1));
        }
        case 13: {
            need(1);
            unsigned d = to_exponent(args[0], "family 13 d");
            Integer a = ipow(2, 2 * d + 1);
            return triple(8 * a * (2 * a - 1) / 3, a * (4 * a + 1) / 3, a * (a + 1) / 3);
        }
        case 14: {
            need(2);
            const Integer& q = args[0];
            unsigned d = to_exponent(args[1], "family 14 d");
            if (!is_prime_power(q)) throw DomainViolation("family 14: q must be a prime power");
            if (d < 1) throw DomainViolation("family 14: need d >= 1");
            Integer q2d = ipow(q, 2 * d), qo = ipow(q, 2 * d - 1);
            return triple(4 * q2d * ((q2d - 1) / (q * q - 1)),
                          qo * (1 + 2 * ((q2d - 1) / (q + 1))),
                          qo * (q - 1) * ((qo + 1) / (q + 1)));
        }
        case 15: {
            need(3);
            const Integer& q = args[0];
            unsigned d = to_exponent(args[1], "family 15 d");
            unsigned m = to_exponent(args[2], "family 15 m");
            if (!is_prime_power(q)) throw DomainViolation("family 15: q must be a prime power");
            if (d < 1 || m < 1) throw DomainViolation("family 15: need d >= 1, m >= 1");
            Integer qd = ipow(q, d), r = qd * q + q - 1;
            return triple(qd * ((ipow(r, 2 * m) - 1) / ((q - 1) * (qd + 1))),
                          qd * ipow(r, 2 * m - 1),
                          qd * (qd + 1) * (q - 1) * ipow(r, 2 * m - 2));
        }
        case 16: {
            need(2);
            unsigned d = to_exponent(args[0], "family 16 d");
            unsigned m = to_exponent(args[1], "family 16 m");
            if (d < 1 || m < 1) throw DomainViolation("family 16: need d >= 1, m >= 1");
            Integer td = ipow(3, d), q = (3 * td + 1) / 2;
            return triple(2 * td * (ipow(q, 2 * m) - 1) / (td + 1), td * ipow(q, 2 * m - 1),
                          td * (td + 1) * ipow(q, 2 * m - 2) / 2);
        }
        case 17: {
            need(2);
            unsigned d = to_exponent(args[0], "family 17 d");
            unsigned m = to_exponent(args[1], "family 17 m");
            if (d < 1 || m < 1) throw DomainViolation("family 17: need d >= 1, m >= 1");
            Integer td = ipow(3, d), q = 3 * td - 2;
            return triple(td * ((ipow(q, 2 * m) - 1) / (2 * (td - 1))), td * ipow(q, 2 * m - 1),
                          2 * td * (td - 1) * ipow(q, 2 * m - 2));
        }
        case 18: {
            need(2);
            unsigned d = to_exponent(args[0], "family 18 d");
            unsigned m = to_exponent(args[1], "family 18 m");
            if (d < 1 || m < 1) throw DomainViolation("family 18: need d >= 1, m >= 1");
            Integer a = ipow(2, 2 * d + 3), q = (a + 1) / 3;
            return triple(a * ((ipow(q, 2 * m) - 1) / (q + 1)), (a / 4) * ipow(q, 2 * m - 1),
                          (a / 16) * (q + 1) * ipow(q, 2 * m - 2));
        }
        case 19: {
            need(2);
            unsigned d = to_exponent(args[0], "family 19 d");
            unsigned m = to_exponent(args[1], "family 19 m");
            if (d < 1 || m < 1) throw DomainViolation("family 19: need d >= 1, m >= 1");
            Integer a = ipow(2, 2 * d + 3), q = a - 3;
            return triple(a * ((ipow(q, 2 * m) - 1) / (3 * (q - 1))), (a / 4) * ipow(q, 2 * m - 1),
                          3 * (a / 16) * (q - 1) * ipow(q, 2 * m - 2));
        }
        case 20: {
            need(3);
            const Integer& p = args[0];
            unsigned d = to_exponent(args[1], "family 20 d");
            unsigned m = to_exponent(args[2], "family 20 m");
            if (p != 2) throw DomainViolation("family 20: only the p = 2 realization is known");
            Integer q = ipow(2, d) - 1;
            if (!is_prime(q)) throw DomainViolation("family 20: 2^d - 1 must be a Mersenne prime");
            if (m < 1) throw DomainViolation("family 20: need m >= 1");
            Integer big = ipow(2, 2 * d * m);
            return triple(1 + 2 * ipow(2, d) * ((big - 1) / (ipow(2, d) + 1)), big,
                          (big / (2 * ipow(2, d))) * (ipow(2, d) + 1));
        }
        case 21: {
            need(2);
            const Integer& t = args[0];
            unsigned m = to_exponent(args[1], "family 21 m");
            if (t < 2 || m < 1) throw DomainViolation("family 21: need t >= 2, m >= 1");
            Integer q = (2 * t - 1) * (2 * t - 1), qm = ipow(q, m);
            return triple(4 * t * t * geom(q, m), (2 * t * t - t) * qm, (t * t - t) * qm);
        }
        default:
            throw DomainViolation("family_params: id must be 1..21");
    }
}

struct FamilyInstance {
    std::vector<Integer> args;
    Integer v, k, lambda;
    LssdFeasibility feasibility;  // evaluated at w = 3
    bool feasible = false;
    std::string first_failure;  // test_id of the first failing condition
};

struct FamilyReport {
    int id = 0;
    std::string name;
    std::vector<FamilyInstance> instances;
    bool all_feasible = true;
    bool any_feasible = false;
    std::string note;  // always "verified on range", never a proof
};

namespace detail {

/* Conditions binding for w > 2, in the order they are argued. */
inline const std::vector<std::string>& binding_condition_ids() {
    static const std::vector<std::string> ids{"s_integral", "v_composite", "gcd_vk", "gcd_vs",
                                              "exactly_one_integral"};
    return ids;
}

inline void classify(FamilyInstance& inst) {
    inst.feasibility = lssd_feasibility(inst.v, inst.k, inst.lambda, 3);
    inst.feasible = true;
    for (const std::string& id : binding_condition_ids())
        for (const Verdict& vd : inst.feasibility.verdicts)
            if (vd.test_id == id && vd.status != Status::pass) {
                inst.feasible = false;
                if (inst.first_failure.empty()) inst.first_failure = id;
            }
}

/* Skip degenerate designs: the linked-system theory needs 0 < lambda < k-1. */
inline bool nondegenerate(const DesignTriple& t) { return t[2] > 0 && t[2] < t[1] - 1; }

inline void push_instance(FamilyReport& rep, std::vector<Integer> args, const DesignTriple& t) {
    FamilyInstance inst;
    inst.args = std::move(args);
    inst.v = t[0];
    inst.k = t[1];
    inst.lambda = t[2];
    classify(inst);
    rep.all_feasible = rep.all_feasible && inst.feasible;
    rep.any_feasible = rep.any_feasible || inst.feasible;
    rep.instances.push_back(std::move(inst));
}

}  // namespace detail

/*
 * Sweep every instance of a family with v <= v_max and report the integrality
 * verdicts. Degenerate triples (lambda = 0 or lambda = k-1) are skipped.
 */
inline FamilyReport family_verdict(int id, const Integer& v_max) {
    using namespace detail;
    FamilyReport rep;
    rep.id = id;
    for (const FamilySpec& fs : family_table())
        if (fs.id == id) rep.name = fs.name;
    if (rep.name.empty()) throw DomainViolation("family_verdict: id must be 1..21");
    rep.note = "verified for all instances with v <= " + v_max.str();

    auto try_push = [&](std::vector<Integer> args) -> bool {
        auto t = family_params(id, args);
        if (!t || (*t)[0] > v_max) return false;
        if (nondegenerate(*t)) push_instance(rep, std::move(args), *t);
        return true;
    };

    auto prime_powers_while = [&](auto body) {
        for (Integer q = 2;; ++q) {
            if (!is_prime_power(q)) continue;
            if (!body(q)) break;
        }
    };

    switch (id) {
        case 1:
            prime_powers_while([&](const Integer& q) {
                if (geom(q, 2) > v_max) return false;
                for (Integer m = 2; geom(q, to_exponent(m, "m")) <= v_max; ++m)
                    try_push({q, m});
                return true;
            });
            break;
        case 2:
            for (Integer n = 1; 4 * n - 1 <= v_max; ++n) try_push({n});
            break;
        case 3:
            for (Integer t = 1; 4 * t * t + 1 <= v_max; t += 2)
                if (is_prime(4 * t * t + 1)) try_push({t});
            break;
        case 4:
            for (Integer t = 1; 4 * t * t + 9 <= v_max; t += 2)
                if (is_prime(4 * t * t + 9)) try_push({Integer(1), t, Integer(0)});
            for (Integer u = 0; 64 * u * u + 9 <= v_max; ++u) {
                auto t = exact_sqrt(Integer(8 * u * u + 1));
                if (t && is_prime(8 * *t * *t + 1)) try_push({Integer(2), *t, u});
            }
            for (Integer u = 0; 64 * u * u + 441 <= v_max; ++u) {
                auto t = exact_sqrt(Integer(8 * u * u + 49));
                if (t && is_prime(8 * *t * *t + 49)) try_push({Integer(3), *t, u});
            }
            break;
        case 5:
            for (Integer p = 2; p * (3 * p + 2) <= v_max; ++p)
                if (is_prime(p) && is_prime(3 * p + 2) && (p * (3 * p + 2) - 5) % 16 == 0)
                    try_push({p});
            break;
        case 6:
            for (Integer t = 1; 4 * t * t <= v_max; ++t) try_push({t});
            break;
        case 7:
            prime_powers_while([&](const Integer& q) {
                if (q * q * (q + 2) > v_max) return false;
                for (Integer m = 1; try_push({q, m}); ++m) {}
                return true;
            });
            break;
        case 8:
            for (Integer m = 1; m * m * m + m + 1 <= v_max; ++m) try_push({m});
            break;
        case 9:
            for (Integer m = 1; try_push({m}); ++m) {}
            break;
        case 10:
            prime_powers_while([&](const Integer& q) {
                if (1 + q * geom(q, 1) > v_max) return false;
                for (Integer d = 2;; ++d) {
                    bool any = false;
                    for (Integer m = 1; try_push({q, d, m}); ++m) any = true;
                    if (!any) break;
                }
                return true;
            });
            break;
        case 11:
            prime_powers_while([&](const Integer& q) {
                if (q % 2 == 0) return true;
                if (2 * geom(q, 1) - 1 > v_max) return false;
                for (Integer m = 1; try_push({q, m}); ++m) {}
                return true;
            });
            break;
        case 12:
            prime_powers_while([&](const Integer& q) {
                if (q * q * (geom(q, 1) + 1) > v_max) return false;
                for (Integer d = 1;; ++d) {
                    bool any = false;
                    for (Integer m = 1; try_push({q, d, m}); ++m) any = true;
                    if (!any) break;
                }
                return true;
            });
            break;
        case 13:
            for (Integer d = 0; try_push({d}); ++d) {}
            break;
        case 14:
            prime_powers_while([&](const Integer& q) {
                if (4 * q * q > v_max) return false;
                for (Integer d = 1; try_push({q, d}); ++d) {}
                return true;
            });
            break;
        case 15:
            prime_powers_while([&](const Integer& q) {
                bool fits = false;
                for (Integer d = 1;; ++d) {
                    bool any = false;
                    for (Integer m = 1; try_push({q, d, m}); ++m) any = true;
                    fits = fits || any;
                    if (!any) break;
                }
                return fits || q == 2;
            });
            break;
        case 16:
        case 17:
        case 18:
        case 19:
            for (Integer d = 1;; ++d) {
                bool any = false;
                for (Integer m = 1; try_push({d, m}); ++m) any = true;
                if (!any) break;
            }
            break;
        case 20:
            for (Integer d = 2;; ++d) {
                if (!is_prime(ipow(2, to_exponent(d, "d")) - 1)) {
                    if (ipow(2, to_exponent(d, "d")) > v_max) break;
                    continue;
                }
                bool any = false;
                for (Integer m = 1; try_push({Integer(2), d, m}); ++m) any = true;
                if (!any && ipow(2, to_exponent(d, "d")) > v_max) break;
            }
            break;
        case 21:
            for (Integer t = 2; 4 * t * t * geom((2 * t - 1) * (2 * t - 1), 1) <= v_max; ++t)
                for (Integer m = 1; try_push({t, m}); ++m) {}
            break;
        default:
            break;
    }
    if (rep.instances.empty()) rep.all_feasible = false;
    return rep;
}

}  // namespace schemelab
