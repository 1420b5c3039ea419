#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <schemelab/families.hpp>

using namespace schemelab;

namespace {

DesignTriple params(int id, std::vector<Integer> args) {
    auto t = family_params(id, args);
    REQUIRE(t.has_value());
    return *t;
}

}  // namespace

TEST_CASE("family generators reproduce reference triples") {
    CHECK(params(1, {2, 2}) == DesignTriple{7, 3, 1});
    CHECK(params(1, {4, 2}) == DesignTriple{21, 5, 1});
    CHECK(params(2, {4}) == DesignTriple{15, 7, 3});
    CHECK(params(3, {3}) == DesignTriple{37, 9, 2});
    CHECK(params(4, {1, 1, 0}) == DesignTriple{13, 4, 1});
    CHECK(params(4, {2, 3, 1}) == DesignTriple{73, 9, 1});
    CHECK(params(5, {13}) == DesignTriple{533, 133, 33});
    CHECK(params(6, {2}) == DesignTriple{16, 10, 6});
    CHECK(params(6, {3}) == DesignTriple{36, 21, 12});
    CHECK(params(7, {2, 1}) == DesignTriple{16, 6, 2});
    CHECK(params(8, {2}) == DesignTriple{11, 5, 2});
    CHECK(params(9, {2}) == DesignTriple{36, 15, 6});
    CHECK(params(10, {2, 2, 1}) == DesignTriple{7, 3, 1});
    CHECK(params(11, {3, 2}) == DesignTriple{25, 9, 3});
    CHECK(params(12, {2, 1, 1}) == params(7, {2, 1}));  // same triples at m = 1
    CHECK(params(13, {0}) == DesignTriple{16, 6, 2});
    CHECK(params(13, {1}) == DesignTriple{320, 88, 24});
    CHECK(params(14, {2, 1}) == DesignTriple{16, 6, 2});
    CHECK(params(14, {3, 1}) == DesignTriple{36, 15, 6});
    CHECK(params(15, {2, 1, 1}) == DesignTriple{16, 10, 6});
    CHECK(params(16, {1, 1}) == DesignTriple{36, 15, 6});
    CHECK(params(17, {1, 1}) == DesignTriple{36, 21, 12});
    CHECK(params(18, {1, 1}) == DesignTriple{320, 88, 24});
    CHECK(params(19, {1, 1}) == DesignTriple{320, 232, 168});
    CHECK(params(20, {2, 2, 1}) == DesignTriple{25, 16, 10});
    CHECK(params(21, {2, 1}) == DesignTriple{160, 54, 18});
}

TEST_CASE("family generator domain guards") {
    CHECK_THROWS_AS(family_params(0, {}), DomainViolation);
    CHECK_THROWS_AS(family_params(22, {}), DomainViolation);
    CHECK_THROWS_AS(family_params(6, {1, 2}), DomainViolation);  // arity
    CHECK_THROWS_AS(family_params(1, {6, 2}), DomainViolation);  // 6 not a prime power
    CHECK_THROWS_AS(family_params(1, {2, 1}), DomainViolation);  // m too small
    CHECK_THROWS_AS(family_params(3, {4}), DomainViolation);     // 65 not prime
    CHECK_THROWS_AS(family_params(4, {3, 7, 0}), DomainViolation);  // 441 composite
    CHECK_THROWS_AS(family_params(5, {2}), DomainViolation);     // 3p+2 = 8 is composite
    CHECK_THROWS_AS(family_params(11, {4, 1}), DomainViolation);  // q must be odd
    CHECK_THROWS_AS(family_params(20, {3, 2, 1}), DomainViolation);  // only p = 2 realized
    CHECK_THROWS_AS(family_params(20, {2, 4, 1}), DomainViolation);  // 15 not a Mersenne prime
    // Undefined (non-integral) rather than out of domain:
    CHECK_FALSE(family_params(3, {2}).has_value());  // v = 17 prime but lambda = 3/4
}

TEST_CASE("families that always satisfy the integrality conditions") {
    for (int id : {6, 7, 9, 13, 14}) {
        FamilyReport rep = family_verdict(id, 1000000);
        CHECK(!rep.instances.empty());
        CHECK(rep.all_feasible);
        CHECK(rep.note.find("verified") == 0);
    }
}

TEST_CASE("heaviness bookkeeping within the feasible families") {
    // Every McFarland instance realizes the k(k+s)/v branch.
    FamilyReport f7 = family_verdict(7, 1000000);
    for (const FamilyInstance& inst : f7.instances) {
        CHECK(inst.feasibility.heaviness_known);
        CHECK_FALSE(inst.feasibility.mu_heavy);
    }
    // The regular Hadamard family alternates branch with the parity of t.
    FamilyReport f6 = family_verdict(6, 1000000);
    for (const FamilyInstance& inst : f6.instances) {
        CHECK(inst.feasibility.heaviness_known);
        CHECK(inst.feasibility.mu_heavy == (inst.args[0] % 2 == 0));
    }
}

TEST_CASE("families feasible only at m = 1") {
    for (int id : {12, 15, 16, 17, 18, 19}) {
        FamilyReport rep = family_verdict(id, 1000000);
        CHECK(!rep.instances.empty());
        CHECK(rep.any_feasible);
        CHECK_FALSE(rep.all_feasible);
        bool saw_m1 = false, saw_higher = false;
        for (const FamilyInstance& inst : rep.instances) {
            Integer m = inst.args.back();
            CHECK(inst.feasible == (m == 1));
            saw_m1 = saw_m1 || m == 1;
            saw_higher = saw_higher || m > 1;
        }
        CHECK(saw_m1);
        CHECK(saw_higher);
    }
}

TEST_CASE("families with no feasible instances on the sweep range") {
    for (int id : {1, 3, 4, 5, 8, 10, 11, 20, 21}) {
        FamilyReport rep = family_verdict(id, 1000000);
        CHECK(!rep.instances.empty());
        CHECK_FALSE(rep.any_feasible);
    }
    FamilyReport f2 = family_verdict(2, 100000);
    CHECK(!f2.instances.empty());
    CHECK_FALSE(f2.any_feasible);
}

TEST_CASE("first failing condition matches the divisibility arguments") {
    // Point-hyperplane: whenever s is integral, gcd(v,s) = 1 always fails.
    for (const FamilyInstance& inst : family_verdict(1, 1000000).instances) {
        if (!inst.feasibility.s) {
            CHECK(inst.first_failure == "s_integral");
            continue;
        }
        bool gcd_vs_fails = false;
        for (const Verdict& vd : inst.feasibility.verdicts)
            if (vd.test_id == "gcd_vs") gcd_vs_fails = vd.failed();
        CHECK(gcd_vs_fails);
    }
    // Chowla and Lehmer require a prime v, so compositeness fails first.
    for (int id : {3, 4})
        for (const FamilyInstance& inst : family_verdict(id, 1000000).instances)
            if (inst.feasibility.s) CHECK(inst.first_failure == "v_composite");
    // Wilson / Shrikhande-Singhi: gcd(v,k) = 1.
    for (const FamilyInstance& inst : family_verdict(8, 1000000).instances)
        if (inst.feasibility.s) CHECK(inst.first_failure == "gcd_vk");
}
