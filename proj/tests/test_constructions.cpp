#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>
#include <string>

#include <schemelab/constructions.hpp>
#include <schemelab/feasibility.hpp>
#include <schemelab/scheme.hpp>

using namespace schemelab;

static SignMatrix load_grid(const std::string& name) {
    std::ifstream in(std::string(SCHEMELAB_DATA_DIR) + "/" + name);
    REQUIRE(in.good());
    return parse_sign_grid(in);
}

static HadamardMatrix load_hadamard(const std::string& name) {
    HadamardMatrix h{load_grid(name)};
    h.validate();
    return h;
}

/* Rows of P as a multiset, for comparisons that ignore eigenvalue order. */
static std::multiset<std::vector<Rational>> row_set(const RMatrix& m) {
    std::multiset<std::vector<Rational>> out;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        std::vector<Rational> row;
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        out.insert(row);
    }
    return out;
}

TEST_CASE("grid parser handles signs, integers, and rejects garbage") {
    std::istringstream ok("+ - 3\n-1 + -\n");
    SignMatrix g = parse_sign_grid(ok);
    CHECK(g == SignMatrix{{1, -1, 3}, {-1, 1, -1}});
    std::istringstream ragged("+ -\n+\n");
    CHECK_THROWS_AS(parse_sign_grid(ragged), ParseError);
    std::istringstream junk("+ x\n");
    CHECK_THROWS_AS(parse_sign_grid(junk), ParseError);
    std::istringstream empty("\n\n");
    CHECK_THROWS_AS(parse_sign_grid(empty), ParseError);
}

TEST_CASE("binary hypercube schemes") {
    ConcreteScheme k2 = hypercube_scheme(1);
    CHECK(k2.n() == 2);
    CHECK(verify_scheme_axioms(k2).d == 1);

    ConcreteScheme cube = hypercube_scheme(3);
    ParameterSet ps = verify_scheme_axioms(cube);
    RMatrix want{{1, 3, 3, 1}, {1, 1, -1, -1}, {1, -1, -1, 1}, {1, -3, 3, -1}};
    CHECK(ps.P == want);
    CHECK(ps.Q == want);

    // bipartite and antipodal: both nontrivial imprimitivity systems exist
    auto systems = find_imprimitivity(ps);
    bool even = false, antip = false;
    for (const auto& sys : systems) {
        if (sys.index_set_I == std::vector<std::size_t>{0, 2}) even = true;
        if (sys.index_set_I == std::vector<std::size_t>{0, 3}) antip = true;
    }
    CHECK(even);
    CHECK(antip);

    CHECK_THROWS_AS(hypercube_scheme(0), PreconditionFailed);
}

TEST_CASE("degenerate linked systems: eigenmatrices and no cometric ordering") {
    ConcreteScheme s = degenerate_lssd(4, 3);
    CHECK(s.n() == 12);
    ParameterSet ps = verify_scheme_axioms(s);
    CHECK(ps.valency(1) == 2);   // same clique: w - 1
    CHECK(ps.valency(2) == 3);   // same fiber: v - 1
    CHECK(ps.valency(3) == 6);   // (v-1)(w-1)
    RMatrix want{{1, 2, 3, 6}, {1, 2, -1, -2}, {1, -1, -1, 1}, {1, -1, 3, -3}};
    CHECK(row_set(ps.P) == row_set(want));
    CHECK(polynomial_orderings(ps).q_poly.empty());

    // small case is still a scheme
    ParameterSet tiny = verify_scheme_axioms(degenerate_lssd(2, 2));
    CHECK(tiny.n == 4);
    CHECK(polynomial_orderings(tiny).q_poly.empty());

    CHECK_THROWS_AS(degenerate_lssd(1, 3), PreconditionFailed);
}

/*
 * Intersection and Krein parameters of the quadratic-form linked
 * systems, as closed formulas in r and w. Columns are the unordered
 * pairs (1,1),(1,2),(1,3),(2,2),(2,3),(3,3); intersection entries carry
 * the column scales 2^{r-2}, 2^{r-1}, 2^{r-2}, 1, 2^{r-1}, 2^{r-2}.
 */
static void check_quadratic_form_tables(const ParameterSet& ps, long r, long w) {
    Rational t(1L << r);                 // 2^r
    Rational T = t * t;                  // 2^{2r}
    Rational inv(2, 1L << r);            // 2^{1-r}
    Rational sc[6] = {t / 4, t / 2, t / 4, Rational(1), t / 2, t / 4};
    Rational pt[4][6] = {
        {(2 * t + 2) * (w - 1), 0, 0, T - 1, 0, (2 * t - 2) * (w - 1)},
        {(t + 3) * (w - 2), t + 1 - inv, (t - 1) * (w - 2), 0, t - 1, (t - 1) * (w - 2)},
        {(t + 2) * (w - 1), 0, t * (w - 1), T - 2, 0, (t - 2) * (w - 1)},
        {(t + 1) * (w - 2), t + 1, (t + 1) * (w - 2), 0, t - 1 - inv, (t - 3) * (w - 2)},
    };
    Rational qt[4][6] = {
        {T - 1, 0, 0, (w - 1) * (T - 1), 0, Rational(w - 1)},
        {T / w - 2, T * (w - 1) / w, 0, T * (w - 1) * (w - 1) / w - 2 * (w - 1),
         Rational(w - 1), 0},
        {T / w, T * (w - 1) / w - 2, 1, T * (w - 1) * (w - 1) / w - 2 * (w - 2),
         Rational(w - 2), 0},
        {0, T - 1, 0, (w - 2) * (T - 1), 0, Rational(w - 2)},
    };
    const std::size_t pairs[6][2] = {{1, 1}, {1, 2}, {1, 3}, {2, 2}, {2, 3}, {3, 3}};
    for (std::size_t j = 0; j < 4; ++j)
        for (std::size_t c = 0; c < 6; ++c) {
            INFO("j=" << j << " pair=(" << pairs[c][0] << "," << pairs[c][1] << ")");
            CHECK(ps.p_tensor[pairs[c][0]][pairs[c][1]][j] == sc[c] * pt[j][c]);
            CHECK(ps.q_tensor[pairs[c][0]][pairs[c][1]][j] == qt[j][c]);
        }
}

TEST_CASE("quadratic-form linked system, eight fibers") {
    CameronSeidelScheme cs = cameron_seidel(2, 8);
    CHECK(cs.scheme.n() == 128);
    ParameterSet ps = verify_scheme_axioms(cs.scheme);
    CHECK(ps.valency(1) == 70);
    CHECK(ps.valency(2) == 15);
    CHECK(ps.valency(3) == 42);
    check_quadratic_form_tables(ps, 2, 8);
    CHECK(ps.q_tensor[1][1][1] == 0);  // 2^{2r}/w - 2, tight at w = 8

    BatteryReport rep = run_battery(ps);
    CHECK(rep.overall == BatteryReport::Overall::feasible);
}

TEST_CASE("quadratic-form evaluation vectors match the printed characteristic vectors") {
    QuadraticFormSet fs = cameron_seidel_forms(2, 8);
    auto as_string = [](const std::vector<std::uint8_t>& v) {
        std::string s;
        for (auto b : v) s += char('0' + b);
        return s;
    };
    CHECK(as_string(detail::form_evaluation(fs.forms[1], 4)) == "0001000100011110");
    CHECK(as_string(detail::form_evaluation(fs.forms[7], 4)) == "0001010001110010");
}

TEST_CASE("second fiber equals the printed shortened simplex") {
    CameronSeidelScheme cs = cameron_seidel(2, 8);
    SignMatrix printed = load_grid("simplex_fiber2.txt");
    std::multiset<std::vector<int>> got(cs.fibers[1].begin(), cs.fibers[1].end());
    std::multiset<std::vector<int>> want(printed.begin(), printed.end());
    CHECK(got == want);
}

TEST_CASE("quadratic-form linked system, three fibers") {
    CameronSeidelScheme cs = cameron_seidel(2, 3);
    CHECK(cs.scheme.n() == 48);
    ParameterSet ps = verify_scheme_axioms(cs.scheme);
    check_quadratic_form_tables(ps, 2, 3);

    // the Krein corner matches the arithmetic feasibility analysis
    LssdFeasibility lf = lssd_feasibility(16, 10, 6, 3);
    REQUIRE(lf.q111.has_value());
    CHECK(ps.q_tensor[1][1][1] == *lf.q111);
    CHECK(ps.q_tensor[1][1][1] == Rational(10, 3));
    CHECK(run_battery(ps).overall == BatteryReport::Overall::feasible);
}

TEST_CASE("symplectic recipe covers other dimensions") {
    CameronSeidelScheme two = cameron_seidel(3, 2);
    CHECK(two.scheme.n() == 128);
    ParameterSet ps2 = verify_scheme_axioms(two.scheme);
    CHECK(ps2.valency(1) == 36);  // k(w-1) with k = 2^{r-1}(2^r+1) = 36
    CHECK(ps2.valency(2) == 63);
    CHECK(ps2.valency(3) == 28);
    check_quadratic_form_tables(ps2, 3, 2);

    CameronSeidelScheme three = cameron_seidel(3, 3);
    ParameterSet ps3 = verify_scheme_axioms(three.scheme);
    check_quadratic_form_tables(ps3, 3, 3);
    CHECK(run_battery(ps3).overall == BatteryReport::Overall::feasible);

    ParameterSet tiny = verify_scheme_axioms(cameron_seidel(1, 2).scheme);
    CHECK(tiny.n == 8);  // designs (4,3,2)
    CHECK(tiny.valency(1) == 3);

    CHECK_THROWS_AS(cameron_seidel(2, 9), FormSetUnavailable);
    CHECK_THROWS_AS(cameron_seidel(3, 9), FormSetUnavailable);
    CHECK_THROWS_AS(cameron_seidel(1, 3), FormSetUnavailable);
}

TEST_CASE("column systems from the printed OA and Hadamard reproduce the mixed Grams") {
    OrthogonalArray oa{4, load_grid("oa16x3.txt")};
    oa.validate();
    HadamardMatrix h = load_hadamard("h4.txt");
    CHECK(h.require_regular() == 2);

    LinkedDesignSystem sys = lssd_from_oa_hadamard(oa, h);
    CHECK(sys.gram_row_sum == 4);
    CHECK(sys.mixed_grams[0][1] == load_grid("mixed_gram_12.txt"));
    CHECK(sys.mixed_grams[0][2] == load_grid("mixed_gram_13.txt"));
    CHECK(sys.mixed_grams[1][2] == load_grid("mixed_gram_23.txt"));

    // chaining identity: H_{1,2} H_{2,3} = sqrt(v) H_{1,3} with sqrt(v) = 4
    const SignMatrix &a = sys.mixed_grams[0][1], &b = sys.mixed_grams[1][2],
                     &c = sys.mixed_grams[0][2];
    for (std::size_t i = 0; i < 16; ++i)
        for (std::size_t j = 0; j < 16; ++j) {
            long dot = 0;
            for (std::size_t t = 0; t < 16; ++t) dot += a[i][t] * b[t][j];
            CHECK(dot == 4 * c[i][j]);
        }

    ParameterSet ps = verify_scheme_axioms(sys.scheme);
    CHECK(ps.n == 48);
    CHECK(ps.valency(1) == 20);
    CHECK(ps.valency(2) == 15);
    CHECK(ps.valency(3) == 12);

    // same parameters as the three-fiber quadratic-form object
    ParameterSet qs = verify_scheme_axioms(cameron_seidel(2, 3).scheme);
    CHECK(ps.P == qs.P);
    CHECK(ps.Q == qs.Q);
}

TEST_CASE("per-block Hadamard substitution still yields a linked system") {
    OrthogonalArray oa{4, load_grid("oa16x3.txt")};
    HadamardMatrix h = load_hadamard("h4.txt");
    HadamardMatrix swapped = h;
    std::swap(swapped.e[0], swapped.e[1]);  // row permutation keeps regularity
    std::vector<std::vector<HadamardMatrix>> blocks(3, std::vector<HadamardMatrix>(4, h));
    blocks[1][2] = swapped;
    LinkedDesignSystem sys = lssd_from_oa_hadamard(oa, h, &blocks);
    ParameterSet ps = verify_scheme_axioms(sys.scheme);
    CHECK(ps.valency(1) == 20);
    CHECK(run_battery(ps).overall == BatteryReport::Overall::feasible);
}

TEST_CASE("input screening for the OA + Hadamard builder") {
    OrthogonalArray oa{4, load_grid("oa16x3.txt")};
    HadamardMatrix sylvester{{{1, 1, 1, 1}, {1, -1, 1, -1}, {1, 1, -1, -1}, {1, -1, -1, 1}}};
    sylvester.validate();
    CHECK_THROWS_AS(lssd_from_oa_hadamard(oa, sylvester), NotRegular);

    HadamardMatrix h = load_hadamard("h4.txt");
    OrthogonalArray small = oa_from_mols(2);
    CHECK_THROWS_AS(lssd_from_oa_hadamard(small, h), SymbolMismatch);

    OrthogonalArray broken = oa;
    broken.entries[0][0] = 2;  // kills pair coverage
    CHECK_THROWS_AS(lssd_from_oa_hadamard(broken, h), PreconditionFailed);
}

TEST_CASE("five linked designs from the full MOLS orthogonal array") {
    OrthogonalArray oa = oa_from_mols(4);
    CHECK(oa.entries.size() == 16);
    CHECK(oa.cols() == 5);
    HadamardMatrix h = load_hadamard("h4.txt");
    LinkedDesignSystem sys = lssd_from_oa_hadamard(oa, h);
    ParameterSet ps = verify_scheme_axioms(sys.scheme);
    CHECK(ps.n == 80);
    CHECK(ps.valency(1) == 40);  // k(w-1) = 10 * 4
    LssdFeasibility lf = lssd_feasibility(16, 10, 6, 5);
    REQUIRE(lf.q111.has_value());
    CHECK(ps.q_tensor[1][1][1] == *lf.q111);
    CHECK(run_battery(ps).overall == BatteryReport::Overall::feasible);
}

TEST_CASE("orthogonal arrays from complete MOLS sets") {
    OrthogonalArray q2 = oa_from_mols(2);
    CHECK(q2.entries.size() == 4);
    CHECK(q2.cols() == 3);
    OrthogonalArray q3 = oa_from_mols(3);
    CHECK(q3.entries.size() == 9);
    CHECK(q3.cols() == 4);
    oa_from_mols(5);
    oa_from_mols(8);
    oa_from_mols(9);
    oa_from_mols(13);
    oa_from_mols(16);  // validate() inside checks pair coverage exhaustively

    CHECK_THROWS_AS(oa_from_mols(1), NotPrimePower);
    CHECK_THROWS_AS(oa_from_mols(6), NotPrimePower);
    CHECK_THROWS_AS(oa_from_mols(12), NotPrimePower);
    CHECK_THROWS_AS(oa_from_mols(17), NotPrimePower);
}

TEST_CASE("Kronecker products of Hadamard matrices") {
    HadamardMatrix h = load_hadamard("h4.txt");
    HadamardMatrix big = hadamard_tensor(h, h);
    big.validate();
    CHECK(big.order() == 16);
    CHECK(big.require_regular() == 4);  // row sums multiply

    HadamardMatrix one{{{1}}};
    CHECK(hadamard_tensor(h, one).e == h.e);
    CHECK(hadamard_tensor(one, h).e == h.e);
}

TEST_CASE("order-36 regular Hadamard data file is intact") {
    HadamardMatrix h = load_hadamard("seberry36.txt");
    CHECK(h.order() == 36);
    CHECK(h.require_regular() == 6);
}

TEST_CASE("Menon parameter families") {
    MenonFamily u1 = menon_params(1);
    CHECK(u1.v == 4);
    CHECK(u1.k == 3);
    CHECK(u1.lambda == 2);
    CHECK(u1.k_complement == 1);
    CHECK(u1.lambda_complement == 0);
    CHECK(u1.w_max == 2);

    MenonFamily u2 = menon_params(2);
    CHECK(u2.v == 16);
    CHECK(u2.k == 10);
    CHECK(u2.lambda == 6);
    CHECK(u2.k_complement == 6);
    CHECK(u2.lambda_complement == 2);
    CHECK(u2.w_max == 8);

    MenonFamily u3 = menon_params(3);
    CHECK(u3.v == 36);
    CHECK(u3.k == 21);
    CHECK(u3.lambda == 12);
    CHECK(u3.w_max == 2);

    CHECK_THROWS_AS(menon_params(0), PreconditionFailed);
}
