#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cstddef>
#include <limits>
#include <queue>
#include <utility>
#include <vector>

#include <schemelab/connectivity.hpp>
#include <schemelab/constructions.hpp>
#include <schemelab/graph.hpp>
#include <schemelab/line_systems.hpp>
#include <schemelab/scheme.hpp>

#include "common_schemes.hpp"

using namespace schemelab;

namespace {

/* Distances within a distribution diagram (loops never shorten paths). */
std::vector<std::size_t> diagram_distances(const DistributionDiagram& h, std::size_t src) {
    std::vector<std::size_t> dist(h.nodes(), std::numeric_limits<std::size_t>::max());
    std::queue<std::size_t> q;
    dist[src] = 0;
    q.push(src);
    while (!q.empty()) {
        std::size_t v = q.front();
        q.pop();
        for (std::size_t w = 0; w < h.nodes(); ++w)
            if (h.adjacent(v, w) && dist[w] == std::numeric_limits<std::size_t>::max()) {
                dist[w] = dist[v] + 1;
                q.push(w);
            }
    }
    return dist;
}

/* All maximal cliques (Bron-Kerbosch without pivoting; fine at desk scale). */
void maximal_cliques_rec(const SimpleGraph& g, boost::dynamic_bitset<> r,
                         boost::dynamic_bitset<> p, boost::dynamic_bitset<> x,
                         std::vector<boost::dynamic_bitset<>>& out) {
    if (p.none() && x.none()) {
        out.push_back(r);
        return;
    }
    boost::dynamic_bitset<> iter = p;
    for (std::size_t v = iter.find_first(); v != boost::dynamic_bitset<>::npos;
         v = iter.find_next(v)) {
        auto r2 = r;
        r2.set(v);
        maximal_cliques_rec(g, r2, p & g.neighbors(v), x & g.neighbors(v), out);
        p.reset(v);
        x.set(v);
    }
}

std::vector<boost::dynamic_bitset<>> maximal_cliques(const SimpleGraph& g) {
    std::vector<boost::dynamic_bitset<>> out;
    boost::dynamic_bitset<> r(g.n()), p(g.n()), x(g.n());
    p.set();
    maximal_cliques_rec(g, r, p, x, out);
    return out;
}

bool is_cycle_graph(const SimpleGraph& g) {
    if (g.n() < 3 || !is_connected(g)) return false;
    for (std::size_t v = 0; v < g.n(); ++v)
        if (g.degree(v) != 2) return false;
    return true;
}

std::size_t graph_diameter(const SimpleGraph& g) {
    std::size_t diam = 0;
    for (std::size_t v = 0; v < g.n(); ++v)
        for (std::size_t d : bfs_distances(g, v)) diam = std::max(diam, d);
    return diam;
}

}  // namespace

TEST_CASE("distribution diagram of the 3-cube nearest-neighbor relation is a path") {
    ParameterSet ps = verify_scheme_axioms(hypercube_scheme(3));
    DistributionDiagram h = distribution_diagram(ps, 1);
    CHECK(h.nodes() == 4);
    CHECK(h.relation == 1);
    for (std::size_t j = 0; j < 4; ++j)
        for (std::size_t k = 0; k < 4; ++k)
            CHECK(h.adjacent(j, k) == (j + 1 == k || k + 1 == j));
    CHECK(h.loops.none());
    CHECK_THROWS_AS(distribution_diagram(ps, 0), PreconditionFailed);
    CHECK_THROWS_AS(distribution_diagram(ps, 4), PreconditionFailed);
}

TEST_CASE("distribution diagram of the linked-design scheme matches its intersection matrix") {
    ParameterSet ps = lssd_parameter_set(16, 10, 6, 3);
    DistributionDiagram h = distribution_diagram(ps, 1);
    // Edges 0-1, 1-2, 1-3, 2-3 with loops at 1 and 3, per L1 for
    // (v,k,lambda,w) = (16,10,6,3) with mu = 7, nu = 5.
    CHECK(h.adjacent(0, 1));
    CHECK_FALSE(h.adjacent(0, 2));
    CHECK_FALSE(h.adjacent(0, 3));
    CHECK(h.adjacent(1, 2));
    CHECK(h.adjacent(1, 3));
    CHECK(h.adjacent(2, 3));
    CHECK(h.loop(1));
    CHECK(h.loop(3));
    CHECK_FALSE(h.loop(0));
    CHECK_FALSE(h.loop(2));
}

TEST_CASE("distribution diagram of a complete-graph relation is an edge with a loop") {
    ParameterSet ps = params_from_P(RMatrix{{Rational(1), Rational(4)}, {Rational(1), Rational(-1)}});
    DistributionDiagram h = distribution_diagram(ps, 1);
    CHECK(h.adjacent(0, 1));
    CHECK_FALSE(h.loop(0));
    CHECK(h.loop(1));
}

TEST_CASE("twin detection") {
    SimpleGraph k33 = complete_bipartite_graph(3, 3);
    auto t = twins(k33);
    CHECK(t.size() == 6);  // three pairs inside each part
    for (auto [a, b] : t) CHECK(a / 3 == b / 3);

    CHECK(twins(petersen_graph()).empty());

    SimpleGraph k2(2);
    k2.add_edge(0, 1);
    CHECK(twins(k2).empty());
}

TEST_CASE("complete multipartite detection") {
    CHECK(is_complete_multipartite(complete_bipartite_graph(3, 3)));
    CHECK(is_complete_multipartite(SimpleGraph::complete(4)));
    CHECK(is_complete_multipartite(SimpleGraph::cycle(4)));
    CHECK_FALSE(is_complete_multipartite(SimpleGraph::cycle(5)));
    CHECK_FALSE(is_complete_multipartite(petersen_graph()));
    SimpleGraph octa(6);  // complete tripartite on pairs {0,3},{1,4},{2,5}
    for (std::size_t i = 0; i < 6; ++i)
        for (std::size_t j = i + 1; j < 6; ++j)
            if (j != i + 3) octa.add_edge(i, j);
    CHECK(is_complete_multipartite(octa));
}

TEST_CASE("connectivity equivalence holds with all statements true") {
    ConcreteScheme cube = hypercube_scheme(3);
    Verdict v = tmain_check(cube, 1);
    CHECK(v.passed());
    REQUIRE(v.witness.size() == 4);
    for (const Rational& w : v.witness) CHECK(w == Rational(1));

    Verdict c5 = tmain_check(cycle_scheme(5), 1);
    CHECK(c5.passed());
    for (const Rational& w : c5.witness) CHECK(w == Rational(1));
}

TEST_CASE("connectivity equivalence holds with all statements false") {
    // Distance-3 relation of the 6-cube: connected, not complete multipartite,
    // and antipodal pairs are twins, so every statement fails together.
    ConcreteScheme cube = hypercube_scheme(6);
    Verdict v = tmain_check(cube, 3);
    CHECK(v.passed());
    REQUIRE(v.witness.size() == 4);
    for (const Rational& w : v.witness) CHECK(w == Rational(0));
}

TEST_CASE("connectivity equivalence guards") {
    Verdict cm = tmain_check(multipartite_scheme(2, 3), 1);
    CHECK(cm.status == Status::inapplicable);
    CHECK(cm.note == "relation graph is complete multipartite");

    Verdict disc = tmain_check(hypercube_scheme(3), 3);  // perfect matching
    CHECK(disc.status == Status::inapplicable);
    CHECK(disc.note == "relation graph is disconnected");
}

TEST_CASE("vertex connectivity on reference graphs") {
    CHECK(vertex_connectivity(SimpleGraph::cycle(8)) == 2);
    CHECK(vertex_connectivity(petersen_graph()) == 3);
    CHECK(vertex_connectivity(complete_bipartite_graph(3, 3)) == 3);
    CHECK(vertex_connectivity(SimpleGraph::complete(5)) == 4);
    CHECK(vertex_connectivity(SimpleGraph::cycle(3)) == 2);

    SimpleGraph bowtie(5);  // two triangles sharing vertex 2
    bowtie.add_edge(0, 1);
    bowtie.add_edge(0, 2);
    bowtie.add_edge(1, 2);
    bowtie.add_edge(2, 3);
    bowtie.add_edge(2, 4);
    bowtie.add_edge(3, 4);
    CHECK(vertex_connectivity(bowtie) == 1);

    SimpleGraph two(4);
    two.add_edge(0, 1);
    two.add_edge(2, 3);
    CHECK_THROWS_AS(vertex_connectivity(two), PreconditionFailed);
}

TEST_CASE("projection is a homomorphism and preserves basepoint distance") {
    std::vector<ConcreteScheme> schemes{hypercube_scheme(3), cycle_scheme(8),
                                        graph_scheme(petersen_graph())};
    for (const ConcreteScheme& s : schemes) {
        Tensor p = intersection_tensor(s);
        for (std::size_t i = 1; i <= s.d(); ++i) {
            SimpleGraph g = relation_graph(s, i);
            if (!is_connected(g)) continue;
            DistributionDiagram h = distribution_diagram(p, i);
            for (std::size_t a = 0; a < s.n(); ++a) {
                auto dg = bfs_distances(g, a);
                auto dh = diagram_distances(h, 0);
                for (std::size_t x = 0; x < s.n(); ++x) {
                    CHECK(dg[x] == dh[s.rel(a, x)]);
                    const auto& nb = g.neighbors(x);
                    for (std::size_t y = nb.find_first(); y != boost::dynamic_bitset<>::npos;
                         y = nb.find_next(y)) {
                        std::size_t j = s.rel(a, x), k = s.rel(a, y);
                        CHECK((j == k ? h.loop(j) : h.adjacent(j, k)));
                    }
                }
            }
        }
    }
}

TEST_CASE("open neighborhood and clique deletion corollaries") {
    std::vector<ConcreteScheme> schemes{hypercube_scheme(3), cycle_scheme(8),
                                        graph_scheme(petersen_graph()), multipartite_scheme(3, 2)};
    for (const ConcreteScheme& s : schemes)
        for (std::size_t i = 1; i <= s.d(); ++i) {
            SimpleGraph g = relation_graph(s, i);
            if (!is_connected(g)) continue;
            for (std::size_t a = 0; a < s.n(); ++a) {
                auto sizes = component_sizes(g, g.neighbors(a));
                std::size_t big = 0;
                for (std::size_t c : sizes)
                    if (c > 1) ++big;
                CHECK(big <= 1);
            }
            for (const auto& clique : maximal_cliques(g))
                CHECK(component_sizes(g, clique).size() <= 1);
        }
}

TEST_CASE("relations with a two-cut are polygons; small diameter-two exceptions") {
    std::vector<ConcreteScheme> schemes{hypercube_scheme(3), cycle_scheme(4),  cycle_scheme(5),
                                        cycle_scheme(8),     multipartite_scheme(2, 3),
                                        graph_scheme(petersen_graph())};
    for (const ConcreteScheme& s : schemes)
        for (std::size_t i = 1; i <= s.d(); ++i) {
            SimpleGraph g = relation_graph(s, i);
            if (!is_connected(g) || g.n() < 3) continue;
            std::size_t kappa = vertex_connectivity(g);
            if (kappa == 2) CHECK(is_cycle_graph(g));
            if (graph_diameter(g) == 2 && kappa <= 3) {
                bool known = (g.n() == 4 && is_cycle_graph(g)) ||
                             (g.n() == 5 && is_cycle_graph(g)) ||
                             (g.n() == 6 && kappa == 3 && g.degree(0) == 3) ||
                             (g.n() == 10 && kappa == 3);
                CHECK(known);
            }
        }
}

TEST_CASE("spectral cut bound") {
    ConcreteScheme c8 = cycle_scheme(8);
    Verdict v = spectral_cut_check(c8, 1, {0, 4});
    CHECK(v.passed());
    REQUIRE(v.witness.size() == 2);
    CHECK(v.witness[0] == Rational(2));
    CHECK(v.witness[1] == Rational(0));  // triangle-free, p^1_11 = 0

    Verdict nocut = spectral_cut_check(c8, 1, {1, 2});
    CHECK(nocut.status == Status::inapplicable);
    CHECK(nocut.note == "T is not a disconnecting set");

    ConcreteScheme pet = graph_scheme(petersen_graph());
    Verdict p3 = spectral_cut_check(pet, 1, {1, 4, 5});  // the neighborhood of vertex 0
    CHECK(p3.passed());
    CHECK(p3.witness[0] == Rational(3));
    CHECK(p3.witness[1] == Rational(0));

    ConcreteScheme octa = multipartite_scheme(3, 2);
    Verdict guard = spectral_cut_check(octa, 1, {0, 1});
    CHECK(guard.status == Status::inapplicable);
    CHECK(guard.note == "relation graph contains an induced K_{2,1,1}");

    CHECK_THROWS_AS(spectral_cut_check(c8, 1, {42}), DimensionMismatch);
}
