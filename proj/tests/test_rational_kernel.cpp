#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <schemelab/linalg.hpp>
#include <schemelab/matrix.hpp>
#include <schemelab/rational.hpp>

using namespace schemelab;

TEST_CASE("rational parsing and rendering") {
    CHECK(rat_parse("3/4") == Rational(3, 4));
    CHECK(rat_parse("-7/2") == Rational(-7, 2));
    CHECK(rat_parse("12") == Rational(12));
    CHECK_THROWS(rat_parse("3//4"));
    CHECK_THROWS(rat_parse("0.5"));
    CHECK_THROWS(rat_parse("3/0"));
    CHECK_THROWS(rat_parse(""));
    CHECK(rat_str(Rational(-35, 8)) == "-35/8");
    CHECK(rat_str(Rational(6)) == "6");
}

TEST_CASE("fixed-precision rendering matches printed-table conventions") {
    CHECK(rat_fixed(Rational(-11, 100), 2) == "-0.11");
    CHECK(rat_fixed(Rational(1, 3), 2) == "0.33");
    CHECK(rat_fixed(Rational(5, 2), 0) == "3");
    CHECK(rat_fixed(Rational(-1, 200), 2) == "-0.01");
    CHECK(rat_fixed(Rational(0), 2) == "0.00");
    CHECK(rat_fixed(Rational(98, 100000), 5) == "0.00098");
}

TEST_CASE("integer helpers") {
    CHECK(*exact_sqrt(Integer(144)) == 12);
    CHECK(!exact_sqrt(Integer(2)).has_value());
    CHECK(*exact_sqrt(Rational(9, 4)) == Rational(3, 2));
    CHECK(binom(Integer(5), 2) == 10);
    CHECK(floor_int(Rational(-7, 2)) == -4);
    CHECK(ceil_int(Rational(-7, 2)) == -3);
}

TEST_CASE("mat_mul basics") {
    RMatrix m{{Rational(1), Rational(2)}, {Rational(3), Rational(4)}};
    CHECK(mat_mul(RMatrix::identity(2), m) == m);

    // hand-multiplied oracle for the K_{3,3} intersection array squared
    RMatrix l1{{Rational(0), Rational(3), Rational(0)},
               {Rational(1), Rational(0), Rational(2)},
               {Rational(0), Rational(3), Rational(0)}};
    RMatrix sq{{Rational(3), Rational(0), Rational(6)},
               {Rational(0), Rational(9), Rational(0)},
               {Rational(3), Rational(0), Rational(6)}};
    CHECK(mat_mul(l1, l1) == sq);  // equals 3*L0 + 3*L2 per the product expansion
    CHECK_THROWS_AS(mat_mul(m, RMatrix(3, 3)), DimensionMismatch);
}

TEST_CASE("plumbing operations") {
    RMatrix a{{Rational(1), Rational(-2)}, {Rational(0), Rational(5)}};
    RMatrix b{{Rational(2), Rational(1)}, {Rational(7), Rational(-1)}};
    CHECK(mat_add(a, b) == RMatrix{{Rational(3), Rational(-1)}, {Rational(7), Rational(4)}});
    CHECK(scalar_mul(Rational(1, 2), b) ==
          RMatrix{{Rational(1), Rational(1, 2)}, {Rational(7, 2), Rational(-1, 2)}});
    CHECK(entrywise_mul(a, b) == entrywise_mul(b, a));  // Schur product commutes
    CHECK(transpose(transpose(a)) == a);
    CHECK(trace(a) == 6);

    RMatrix k = kronecker(RMatrix::identity(2), b);
    CHECK(k.rows() == 4);
    CHECK(k(2, 2) == 2);
    CHECK(k(0, 2) == 0);
}

TEST_CASE("rank is fraction-free and transpose-invariant") {
    RMatrix m{{Rational(1, 2), Rational(1), Rational(3, 2)},
              {Rational(1), Rational(2), Rational(3)},
              {Rational(0), Rational(1), Rational(1)}};
    CHECK(rank(m) == 2);
    CHECK(rank(transpose(m)) == 2);
    CHECK(rank(RMatrix::identity(4)) == 4);
    CHECK(rank(RMatrix(3, 3)) == 0);
}

TEST_CASE("inverse") {
    RMatrix p{{Rational(1), Rational(3), Rational(2)},
              {Rational(1), Rational(0), Rational(-1)},
              {Rational(1), Rational(-3), Rational(2)}};
    RMatrix inv = inverse(p);
    CHECK(mat_mul(p, inv) == RMatrix::identity(3));
    CHECK_THROWS_AS(inverse(RMatrix(2, 2)), SingularMatrix);
}

TEST_CASE("char_poly via Faddeev-LeVerrier") {
    RMatrix m{{Rational(2), Rational(0)}, {Rational(0), Rational(3)}};
    Poly p = char_poly(m);  // (x-2)(x-3) = x^2 - 5x + 6
    CHECK(p == Poly{Rational(6), Rational(-5), Rational(1)});
}

TEST_CASE("rational_roots") {
    // (x - 1/2)(x + 3)^2 = x^3 + 11/2 x^2 + 6x - 9/2
    Poly p{Rational(-9, 2), Rational(6), Rational(11, 2), Rational(1)};
    Poly residual;
    auto roots = rational_roots(p, &residual);
    REQUIRE(roots.size() == 2);
    CHECK(poly_degree(residual) == 0);
    bool seen_half = false, seen_m3 = false;
    for (auto& [v, m] : roots) {
        if (v == Rational(1, 2)) { seen_half = true; CHECK(m == 1); }
        if (v == Rational(-3)) { seen_m3 = true; CHECK(m == 2); }
    }
    CHECK(seen_half);
    CHECK(seen_m3);
}

TEST_CASE("rational_eigen on diagonal matrix") {
    RMatrix m{{Rational(2), Rational(0), Rational(0)},
              {Rational(0), Rational(2), Rational(0)},
              {Rational(0), Rational(0), Rational(5)}};
    auto eig = rational_eigen(m);
    REQUIRE(eig.size() == 2);
    CHECK(eig[0].value == 5);
    CHECK(eig[0].multiplicity == 1);
    CHECK(eig[1].value == 2);
    CHECK(eig[1].multiplicity == 2);
    std::size_t total = 0;
    for (auto& e : eig) total += e.multiplicity;
    CHECK(total == 3);
}

TEST_CASE("rational_eigen of the K_{3,3} intersection array") {
    RMatrix l1{{Rational(0), Rational(3), Rational(0)},
               {Rational(1), Rational(0), Rational(2)},
               {Rational(0), Rational(3), Rational(0)}};
    auto eig = rational_eigen(l1);
    REQUIRE(eig.size() == 3);
    CHECK(eig[0].value == 3);
    CHECK(eig[1].value == 0);
    CHECK(eig[2].value == -3);
    for (const auto& e : eig) {
        CHECK(e.vector(0, 0) == 1);
        RMatrix lv = mat_mul(l1, e.vector);
        CHECK(lv == scalar_mul(e.value, e.vector));  // exact M v = lambda v
    }
}

TEST_CASE("rational_eigen rejects irrational spectra") {
    RMatrix m{{Rational(0), Rational(1)}, {Rational(1), Rational(0)}};   // x^2 - 1
    RMatrix m2{{Rational(0), Rational(2)}, {Rational(1), Rational(0)}};  // x^2 - 2
    CHECK_NOTHROW(rational_eigen(m));
    CHECK_THROWS_AS(rational_eigen(m2), IrrationalSpectrum);
    try {
        rational_eigen(m2);
    } catch (const IrrationalSpectrum& e) {
        CHECK(poly_degree(e.residual) == 2);  // unfactored x^2 - 2
    }
}

TEST_CASE("nullspace") {
    RMatrix m{{Rational(1), Rational(2), Rational(3)},
              {Rational(2), Rational(4), Rational(6)},
              {Rational(0), Rational(0), Rational(1)}};
    auto basis = nullspace(m);
    REQUIRE(basis.size() == 1);
    CHECK(mat_mul(m, basis[0]) == RMatrix(3, 1));
}
