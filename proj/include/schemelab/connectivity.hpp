#pragma once

/*
 * Connectivity of basis relations: unweighted distribution diagrams, twins,
 * the four-way connectivity equivalence for connected non-complete-multipartite
 * relations, exact vertex connectivity via unit-capacity max-flow, and the
 * spectral lower bound on disconnecting sets of triangle-light relations.
 */

#include <algorithm>
#include <cstddef>
#include <limits>
#include <queue>
#include <string>
#include <utility>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "errors.hpp"
#include "graph.hpp"
#include "scheme.hpp"
#include "verdict.hpp"

namespace schemelab {

/*
 * Unweighted distribution diagram H_i of relation i: nodes {0..d}, an edge
 * (j,k) whenever p^k_ij > 0, and a loop at j whenever p^j_ij > 0. Node 0 is
 * adjacent only to i.
 */
struct DistributionDiagram {
    std::size_t relation = 0;
    std::vector<boost::dynamic_bitset<>> adj;  // j != k edges
    boost::dynamic_bitset<> loops;

    std::size_t nodes() const { return adj.size(); }
    bool adjacent(std::size_t j, std::size_t k) const { return adj[j].test(k); }
    bool loop(std::size_t j) const { return loops.test(j); }
};

inline DistributionDiagram distribution_diagram(const Tensor& p, std::size_t i) {
    std::size_t d = p.size() - 1;
    if (i < 1 || i > d)
        throw PreconditionFailed("distribution_diagram: relation index out of range");
    DistributionDiagram h;
    h.relation = i;
    h.adj.assign(d + 1, boost::dynamic_bitset<>(d + 1));
    h.loops.resize(d + 1);
    for (std::size_t j = 0; j <= d; ++j)
        for (std::size_t k = 0; k <= d; ++k) {
            if (p[i][j][k] == Rational(0)) continue;
            if (j == k)
                h.loops.set(j);
            else {
                h.adj[j].set(k);
                h.adj[k].set(j);
            }
        }
    return h;
}

inline DistributionDiagram distribution_diagram(const ParameterSet& ps, std::size_t i) {
    return distribution_diagram(ps.p_tensor, i);
}

/* The simple graph of one basis relation of a concrete scheme. */
inline SimpleGraph relation_graph(const ConcreteScheme& s, std::size_t i) {
    if (i < 1 || i > s.d())
        throw PreconditionFailed("relation_graph: relation index out of range");
    SimpleGraph g(s.n());
    for (std::size_t x = 0; x < s.n(); ++x)
        for (std::size_t y = x + 1; y < s.n(); ++y)
            if (s.rel(x, y) == i) g.add_edge(x, y);
    return g;
}

/*
 * Sizes of the connected components of g with the marked vertices deleted,
 * in first-touch BFS order.
 */
inline std::vector<std::size_t> component_sizes(const SimpleGraph& g,
                                                const boost::dynamic_bitset<>& removed) {
    if (removed.size() != g.n()) throw DimensionMismatch("component_sizes: mask size");
    std::vector<std::size_t> sizes;
    boost::dynamic_bitset<> seen = removed;
    for (std::size_t start = 0; start < g.n(); ++start) {
        if (seen.test(start)) continue;
        std::size_t count = 0;
        std::queue<std::size_t> q;
        q.push(start);
        seen.set(start);
        while (!q.empty()) {
            std::size_t v = q.front();
            q.pop();
            ++count;
            boost::dynamic_bitset<> next = g.neighbors(v) & ~seen;
            for (std::size_t w = next.find_first(); w != boost::dynamic_bitset<>::npos;
                 w = next.find_next(w)) {
                seen.set(w);
                q.push(w);
            }
        }
        sizes.push_back(count);
    }
    return sizes;
}

inline bool is_connected(const SimpleGraph& g) {
    return component_sizes(g, boost::dynamic_bitset<>(g.n())).size() <= 1;
}

/* BFS distances from a source; unreachable vertices get SIZE_MAX. */
inline std::vector<std::size_t> bfs_distances(const SimpleGraph& g, std::size_t source) {
    std::vector<std::size_t> dist(g.n(), std::numeric_limits<std::size_t>::max());
    std::queue<std::size_t> q;
    dist[source] = 0;
    q.push(source);
    while (!q.empty()) {
        std::size_t v = q.front();
        q.pop();
        const auto& nb = g.neighbors(v);
        for (std::size_t w = nb.find_first(); w != boost::dynamic_bitset<>::npos;
             w = nb.find_next(w))
            if (dist[w] == std::numeric_limits<std::size_t>::max()) {
                dist[w] = dist[v] + 1;
                q.push(w);
            }
    }
    return dist;
}

/* All unordered pairs of distinct vertices with identical open neighborhoods. */
inline std::vector<std::pair<std::size_t, std::size_t>> twins(const SimpleGraph& g) {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t a = 0; a < g.n(); ++a)
        for (std::size_t b = a + 1; b < g.n(); ++b)
            if (g.neighbors(a) == g.neighbors(b)) out.emplace_back(a, b);
    return out;
}

/* Complete multipartite: every two non-adjacent vertices are twins. */
inline bool is_complete_multipartite(const SimpleGraph& g) {
    for (std::size_t a = 0; a < g.n(); ++a)
        for (std::size_t b = a + 1; b < g.n(); ++b)
            if (!g.adjacent(a, b) && g.neighbors(a) != g.neighbors(b)) return false;
    return true;
}

namespace detail {

/* The subgraph with a vertex and its open neighborhood deleted is connected. */
inline bool connected_without_closed_neighborhood(const SimpleGraph& g, std::size_t a) {
    boost::dynamic_bitset<> removed = g.neighbors(a);
    removed.set(a);
    return component_sizes(g, removed).size() <= 1;
}

/* Connectivity of the distribution diagram with nodes 0 and i removed. */
inline bool diagram_interior_connected(const DistributionDiagram& h) {
    std::size_t cnt = h.nodes();
    boost::dynamic_bitset<> removed(cnt);
    removed.set(0);
    removed.set(h.relation);
    boost::dynamic_bitset<> seen = removed;
    std::size_t start = seen.size();
    for (std::size_t v = 0; v < cnt; ++v)
        if (!seen.test(v)) {
            start = v;
            break;
        }
    if (start == seen.size()) return true;
    std::queue<std::size_t> q;
    q.push(start);
    seen.set(start);
    while (!q.empty()) {
        std::size_t v = q.front();
        q.pop();
        boost::dynamic_bitset<> next = h.adj[v] & ~seen;
        for (std::size_t w = next.find_first(); w != boost::dynamic_bitset<>::npos;
             w = next.find_next(w)) {
            seen.set(w);
            q.push(w);
        }
    }
    return seen.count() == cnt;
}

}  // namespace detail

/*
 * Four-way equivalence for a connected, non-complete-multipartite basis
 * relation: (1) some basepoint a has Gamma minus the closed neighborhood of a
 * connected; (2) every basepoint does; (3) the distribution diagram minus
 * {0,i} is connected; (4) the relation has no twins. The verdict passes when
 * all four statements agree; the witness lists their truth values.
 */
inline Verdict tmain_check(const Tensor& p, const ConcreteScheme& s, std::size_t i) {
    Verdict v;
    v.test_id = "connectivity_equivalence";
    v.citation = "exists-a, for-all-a, diagram interior, twin-free: all equivalent";
    if (i < 1 || i > s.d()) throw PreconditionFailed("tmain_check: relation index out of range");
    SimpleGraph g = relation_graph(s, i);
    if (!is_connected(g)) {
        v.status = Status::inapplicable;
        v.note = "relation graph is disconnected";
        return v;
    }
    if (is_complete_multipartite(g)) {
        v.status = Status::inapplicable;
        v.note = "relation graph is complete multipartite";
        return v;
    }
    bool exists_a = false, all_a = true;
    for (std::size_t a = 0; a < g.n(); ++a) {
        bool ok = detail::connected_without_closed_neighborhood(g, a);
        exists_a = exists_a || ok;
        all_a = all_a && ok;
    }
    bool diagram = detail::diagram_interior_connected(distribution_diagram(p, i));
    bool twin_free = twins(g).empty();
    v.witness = {Rational(exists_a ? 1 : 0), Rational(all_a ? 1 : 0), Rational(diagram ? 1 : 0),
                 Rational(twin_free ? 1 : 0)};
    bool agree = exists_a == all_a && all_a == diagram && diagram == twin_free;
    v.status = agree ? Status::pass : Status::fail;
    if (!agree) v.note = "the four statements disagree";
    return v;
}

inline Verdict tmain_check(const ParameterSet& ps, const ConcreteScheme& s, std::size_t i) {
    return tmain_check(ps.p_tensor, s, i);
}

inline Verdict tmain_check(const ConcreteScheme& s, std::size_t i) {
    return tmain_check(intersection_tensor(s), s, i);
}

namespace detail {

/* Unit-capacity Dinic max-flow, with an early cutoff at a known upper bound. */
class Dinic {
public:
    explicit Dinic(std::size_t n) : head_(n, -1) {}

    void add_edge(std::size_t u, std::size_t v, int cap) {
        edges_.push_back({static_cast<int>(v), head_[u], cap});
        head_[u] = static_cast<int>(edges_.size()) - 1;
        edges_.push_back({static_cast<int>(u), head_[v], 0});
        head_[v] = static_cast<int>(edges_.size()) - 1;
    }

    std::size_t maxflow(std::size_t s, std::size_t t, std::size_t limit) {
        std::size_t flow = 0;
        while (flow < limit && build_levels(s, t)) {
            iter_ = head_;
            while (flow < limit) {
                int pushed = augment(s, t);
                if (pushed == 0) break;
                flow += static_cast<std::size_t>(pushed);
            }
        }
        return flow;
    }

private:
    struct Edge {
        int to, next, cap;
    };

    bool build_levels(std::size_t s, std::size_t t) {
        level_.assign(head_.size(), -1);
        std::queue<std::size_t> q;
        level_[s] = 0;
        q.push(s);
        while (!q.empty()) {
            std::size_t v = q.front();
            q.pop();
            for (int e = head_[v]; e != -1; e = edges_[e].next)
                if (edges_[e].cap > 0 && level_[edges_[e].to] == -1) {
                    level_[edges_[e].to] = level_[v] + 1;
                    q.push(static_cast<std::size_t>(edges_[e].to));
                }
        }
        return level_[t] != -1;
    }

    int augment(std::size_t v, std::size_t t) {
        if (v == t) return 1;
        for (int& e = iter_[v]; e != -1; e = edges_[e].next) {
            int to = edges_[e].to;
            if (edges_[e].cap > 0 && level_[to] == level_[v] + 1 &&
                augment(static_cast<std::size_t>(to), t)) {
                edges_[e].cap -= 1;
                edges_[e ^ 1].cap += 1;
                return 1;
            }
        }
        level_[v] = -2;
        return 0;
    }

    std::vector<Edge> edges_;
    std::vector<int> head_, iter_;
    std::vector<int> level_;
};

/*
 * Max vertex-disjoint paths between non-adjacent s and t in the vertex-split
 * network: every vertex becomes an in/out pair joined by a unit edge, every
 * graph edge two directed unit edges between the corresponding out/in nodes.
 */
inline std::size_t disjoint_paths(const SimpleGraph& g, std::size_t s, std::size_t t,
                                  std::size_t limit) {
    std::size_t n = g.n();
    Dinic net(2 * n);
    int big = static_cast<int>(n);
    for (std::size_t v = 0; v < n; ++v)
        net.add_edge(2 * v, 2 * v + 1, v == s || v == t ? big : 1);
    for (std::size_t u = 0; u < n; ++u) {
        const auto& nb = g.neighbors(u);
        for (std::size_t w = nb.find_first(); w != boost::dynamic_bitset<>::npos;
             w = nb.find_next(w))
            net.add_edge(2 * u + 1, 2 * w, 1);
    }
    return net.maxflow(2 * s + 1, 2 * t, limit);
}

}  // namespace detail

/*
 * Exact vertex connectivity of a connected graph. A minimum cut either avoids
 * a fixed minimum-degree vertex v (then it separates v from some non-neighbor)
 * or contains v (then it separates two non-adjacent neighbors of v), so those
 * source/sink candidates suffice.
 */
inline std::size_t vertex_connectivity(const SimpleGraph& g) {
    std::size_t n = g.n();
    if (n == 0) throw PreconditionFailed("vertex_connectivity: empty graph");
    if (!is_connected(g)) throw PreconditionFailed("vertex_connectivity: graph is disconnected");
    std::size_t v = 0;
    for (std::size_t u = 1; u < n; ++u)
        if (g.degree(u) < g.degree(v)) v = u;
    std::size_t best = g.degree(v);
    if (best == n - 1) return n - 1;  // complete graph
    for (std::size_t t = 0; t < n && best > 0; ++t)
        if (t != v && !g.adjacent(v, t))
            best = std::min(best, detail::disjoint_paths(g, v, t, best));
    std::vector<std::size_t> nb;
    const auto& nv = g.neighbors(v);
    for (std::size_t w = nv.find_first(); w != boost::dynamic_bitset<>::npos;
         w = nv.find_next(w))
        nb.push_back(w);
    for (std::size_t a = 0; a < nb.size() && best > 0; ++a)
        for (std::size_t b = a + 1; b < nb.size() && best > 0; ++b)
            if (!g.adjacent(nb[a], nb[b]))
                best = std::min(best, detail::disjoint_paths(g, nb[a], nb[b], best));
    return best;
}

namespace detail {

/*
 * Induced K_{2,1,1} scan: an edge whose endpoints have two non-adjacent common
 * neighbors spans one.
 */
inline bool has_induced_k211(const SimpleGraph& g) {
    for (std::size_t u = 0; u < g.n(); ++u) {
        const auto& nu = g.neighbors(u);
        for (std::size_t v = nu.find_next(u); v != boost::dynamic_bitset<>::npos;
             v = nu.find_next(v)) {
            boost::dynamic_bitset<> common = nu & g.neighbors(v);
            for (std::size_t a = common.find_first(); a != boost::dynamic_bitset<>::npos;
                 a = common.find_next(a))
                if ((common & ~g.neighbors(a)).count() > 1) return true;  // a itself plus one more
        }
    }
    return false;
}

}  // namespace detail

/*
 * Spectral cut bound: for a connected basis relation whose graph has no
 * induced K_{2,1,1}, any disconnecting set T satisfies |T| > p^i_ii. Verdict
 * is inapplicable when the guards fail or T does not disconnect.
 */
inline Verdict spectral_cut_check(const ConcreteScheme& s, std::size_t i,
                                  const std::vector<std::size_t>& T) {
    Verdict v;
    v.test_id = "spectral_cut_bound";
    v.citation = "disconnecting set size exceeds the triangle count p^i_ii";
    SimpleGraph g = relation_graph(s, i);
    if (!is_connected(g)) {
        v.status = Status::inapplicable;
        v.note = "relation graph is disconnected";
        return v;
    }
    if (detail::has_induced_k211(g)) {
        v.status = Status::inapplicable;
        v.note = "relation graph contains an induced K_{2,1,1}";
        return v;
    }
    boost::dynamic_bitset<> removed(g.n());
    for (std::size_t x : T) {
        if (x >= g.n()) throw DimensionMismatch("spectral_cut_check: vertex out of range");
        removed.set(x);
    }
    if (component_sizes(g, removed).size() <= 1) {
        v.status = Status::inapplicable;
        v.note = "T is not a disconnecting set";
        return v;
    }
    std::size_t p = 0;
    bool found = false;
    for (std::size_t x = 0; x < s.n() && !found; ++x)
        for (std::size_t y = 0; y < s.n() && !found; ++y)
            if (x != y && s.rel(x, y) == i) {
                for (std::size_t z = 0; z < s.n(); ++z)
                    if (s.rel(x, z) == i && s.rel(z, y) == i) ++p;
                found = true;
            }
    v.witness = {Rational(static_cast<long>(removed.count())), Rational(static_cast<long>(p))};
    if (removed.count() > p) {
        v.status = Status::pass;
    } else {
        v.status = Status::fail;
        v.note = "disconnecting set no larger than p^i_ii";
    }
    return v;
}

}  // namespace schemelab
