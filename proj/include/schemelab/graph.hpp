#pragma once

/*
 * Minimal simple-graph container shared by the line-system and connectivity
 * modules: symmetric loop-free adjacency over bitsets, with a few stock
 * families as factories.
 */

#include <cstddef>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "errors.hpp"

namespace schemelab {

class SimpleGraph {
public:
    explicit SimpleGraph(std::size_t n) : adj_(n, boost::dynamic_bitset<>(n)) {}

    std::size_t n() const { return adj_.size(); }

    void add_edge(std::size_t u, std::size_t v) {
        if (u >= n() || v >= n()) throw DimensionMismatch("add_edge: vertex out of range");
        if (u == v) throw DomainViolation("add_edge: loops not allowed");
        adj_[u].set(v);
        adj_[v].set(u);
    }

    bool adjacent(std::size_t u, std::size_t v) const { return adj_[u].test(v); }
    std::size_t degree(std::size_t v) const { return adj_[v].count(); }
    const boost::dynamic_bitset<>& neighbors(std::size_t v) const { return adj_[v]; }

    std::size_t edge_count() const {
        std::size_t total = 0;
        for (const auto& row : adj_) total += row.count();
        return total / 2;
    }

    std::size_t max_degree() const {
        std::size_t d = 0;
        for (std::size_t v = 0; v < n(); ++v) d = std::max(d, degree(v));
        return d;
    }

    static SimpleGraph cycle(std::size_t n) {
        SimpleGraph g(n);
        if (n < 3) throw DomainViolation("cycle: need at least 3 vertices");
        for (std::size_t v = 0; v < n; ++v) g.add_edge(v, (v + 1) % n);
        return g;
    }

    static SimpleGraph complete(std::size_t n) {
        SimpleGraph g(n);
        for (std::size_t u = 0; u < n; ++u)
            for (std::size_t v = u + 1; v < n; ++v) g.add_edge(u, v);
        return g;
    }

private:
    std::vector<boost::dynamic_bitset<>> adj_;
};

}  // namespace schemelab
