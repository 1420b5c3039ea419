#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <string>

#include <schemelab/constructions.hpp>
#include <schemelab/feasibility.hpp>
#include <schemelab/line_systems.hpp>
#include <schemelab/scheme.hpp>

using namespace schemelab;

static SignMatrix load_grid(const std::string& name) {
    std::ifstream in(std::string(SCHEMELAB_DATA_DIR) + "/" + name);
    REQUIRE(in.good());
    return parse_sign_grid(in);
}

/*
 * Five linked symmetric (1296, 666, 342) designs: the 1296 x 5 product
 * orthogonal array over 36 symbols paired with the order-36 regular
 * Hadamard matrix. The triple is the Menon family (4t^2, 2t^2 + t, t^2 + t)
 * at t = 18; its complement is (1296, 630, 306).
 */
TEST_CASE("order-1296 linked system from the product array and the order-36 Hadamard") {
    HadamardMatrix h36{load_grid("seberry36.txt")};
    h36.validate();
    REQUIRE(h36.require_regular() == 6);

    OrthogonalArray oa = oa_product(oa_from_mols(4), oa_from_mols(9));
    REQUIRE(oa.symbols == 36);
    REQUIRE(oa.entries.size() == 1296);
    REQUIRE(oa.cols() == 5);

    LinkedDesignSystem sys = lssd_from_oa_hadamard(oa, h36);
    CHECK(sys.gram_row_sum == 36);
    REQUIRE(sys.scheme.n() == 6480);  // five fibers of 1296 columns

    ParameterSet ps = verify_scheme_axioms(sys.scheme);
    ParameterSet want = lssd_parameter_set(1296, 666, 342, 5);
    CHECK(ps.P == want.P);
    CHECK(ps.Q == want.Q);
    CHECK(run_battery(ps).overall == BatteryReport::Overall::feasible);
}
