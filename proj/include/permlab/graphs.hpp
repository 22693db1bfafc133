#pragma once

// Vertex-labeled graphs with induced descending-product edge values,
// permutation-labeling and maximality checks (fixed labeling: a non-edge
// must collide with an existing edge value), plus construction and
// exhaustive enumeration of maximal graphs at small n.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <istream>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "permlab/labels.hpp"

namespace permlab {

struct VertexLabeledGraph {
    int64_t n = 0;
    std::vector<int64_t> labeling;               // labeling[v-1] in 1..n, bijective
    std::set<std::pair<int64_t, int64_t>> edges; // (u, v) with u < v, vertices in 1..n

    static VertexLabeledGraph empty(int64_t n) {
        if (n < 1)
            throw std::invalid_argument("graph: n must be >= 1");
        VertexLabeledGraph g;
        g.n = n;
        g.labeling.resize(static_cast<size_t>(n));
        for (int64_t v = 1; v <= n; ++v)
            g.labeling[static_cast<size_t>(v - 1)] = v;
        return g;
    }

    static VertexLabeledGraph complete(int64_t n) {
        auto g = empty(n);
        for (int64_t u = 1; u <= n; ++u)
            for (int64_t v = u + 1; v <= n; ++v)
                g.edges.emplace(u, v);
        return g;
    }

    int64_t label(int64_t v) const { return labeling[static_cast<size_t>(v - 1)]; }

    void add_edge(int64_t u, int64_t v) {
        if (u == v || u < 1 || v < 1 || u > n || v > n)
            throw std::invalid_argument("graph: bad edge endpoints");
        edges.emplace(std::min(u, v), std::max(u, v));
    }

    bool has_edge(int64_t u, int64_t v) const {
        return edges.count({std::min(u, v), std::max(u, v)}) > 0;
    }

    BigNat edge_value(int64_t u, int64_t v) const {
        int64_t a = label(u), b = label(v);
        if (a > b)
            std::swap(a, b);
        return falling_factorial(b, a);
    }

    void validate() const {
        if (static_cast<int64_t>(labeling.size()) != n)
            throw std::invalid_argument("graph: labeling size mismatch");
        std::vector<bool> seen(static_cast<size_t>(n), false);
        for (int64_t lab : labeling) {
            if (lab < 1 || lab > n || seen[static_cast<size_t>(lab - 1)])
                throw std::invalid_argument("graph: labeling is not a bijection onto 1..n");
            seen[static_cast<size_t>(lab - 1)] = true;
        }
        for (const auto& [u, v] : edges)
            if (u >= v || u < 1 || v > n)
                throw std::invalid_argument("graph: malformed edge set");
    }
};

// True iff the induced edge values are pairwise distinct.
inline bool is_permutation_labeling(const VertexLabeledGraph& g) {
    g.validate();
    std::set<BigNat> seen;
    for (const auto& [u, v] : g.edges)
        if (!seen.insert(g.edge_value(u, v)).second)
            return false;
    return true;
}

// True iff every non-edge's induced value already occurs on an edge, so no
// edge can be added without repeating a value. Requires a valid labeling.
inline bool is_maximal(const VertexLabeledGraph& g) {
    if (!is_permutation_labeling(g))
        throw std::invalid_argument("is_maximal: graph is not permutation-labeled");
    std::set<BigNat> values;
    for (const auto& [u, v] : g.edges)
        values.insert(g.edge_value(u, v));
    for (int64_t u = 1; u <= g.n; ++u)
        for (int64_t v = u + 1; v <= g.n; ++v)
            if (!g.has_edge(u, v) && values.count(g.edge_value(u, v)) == 0)
                return false;
    return true;
}

enum class EdgePolicy { lex_min, lex_max, seeded_random };

// One edge per collision class, identity labeling. lex_min/lex_max pick the
// (high, low)-lexicographic extremes of each class; seeded_random draws one
// choice per class (classes visited in ascending value order).
inline VertexLabeledGraph maximal_graph(int64_t n, EdgePolicy policy, uint64_t seed = 0,
                                        int64_t cap = default_pair_cap) {
    auto table = build_collision_table(n, recommended_mode(n), cap);
    auto g = VertexLabeledGraph::empty(n);
    std::mt19937_64 rng(seed);
    for (const auto& c : table.classes) {
        size_t idx = 0;
        switch (policy) {
            case EdgePolicy::lex_min: idx = 0; break;
            case EdgePolicy::lex_max: idx = c.pairs.size() - 1; break;
            case EdgePolicy::seeded_random: idx = static_cast<size_t>(rng() % c.pairs.size()); break;
        }
        g.add_edge(c.pairs[idx].first, c.pairs[idx].second);
    }
    return g;
}

// Number of maximal graphs = product of class sizes; throws beyond the cap.
inline uint64_t maximal_graph_count(int64_t n, uint64_t iteration_cap = 1000000,
                                    int64_t cap = default_pair_cap) {
    auto table = build_collision_table(n, recommended_mode(n), cap);
    uint64_t total = 1;
    for (const auto& c : table.classes) {
        total *= c.pairs.size();
        if (total > iteration_cap)
            throw std::invalid_argument("enumerate: graph count exceeds the iteration cap (" +
                                        std::to_string(iteration_cap) + ")");
    }
    return total;
}

// Visits every choice of one pair per collision class, classes in ascending
// value order and the first class varying slowest; choices within a class
// follow (high, low)-lex order. Return false from the visitor to stop.
inline void for_each_maximal(int64_t n, const std::function<bool(const VertexLabeledGraph&)>& visit,
                             int64_t n_cap = 12, uint64_t iteration_cap = 1000000) {
    if (n < 2 || n > n_cap)
        throw std::invalid_argument("enumerate: n must be within 2.." + std::to_string(n_cap));
    maximal_graph_count(n, iteration_cap);  // enforces the cap up front
    auto table = build_collision_table(n, recommended_mode(n));
    std::vector<size_t> choice(table.classes.size(), 0);
    while (true) {
        auto g = VertexLabeledGraph::empty(n);
        for (size_t i = 0; i < table.classes.size(); ++i) {
            const auto& p = table.classes[i].pairs[choice[i]];
            g.add_edge(p.first, p.second);
        }
        if (!visit(g))
            return;
        size_t i = choice.size();
        while (i > 0) {
            --i;
            if (++choice[i] < table.classes[i].pairs.size())
                break;
            choice[i] = 0;
            if (i == 0)
                return;
        }
    }
}

inline std::vector<VertexLabeledGraph> enumerate_maximal(int64_t n, int64_t n_cap = 12,
                                                         uint64_t iteration_cap = 1000000) {
    std::vector<VertexLabeledGraph> out;
    for_each_maximal(n, [&out](const VertexLabeledGraph& g) {
        out.push_back(g);
        return true;
    }, n_cap, iteration_cap);
    return out;
}

// Lines "a b" over vertex labels, a < b, sorted; one edge per line.
inline std::string to_edge_list(const VertexLabeledGraph& g) {
    std::vector<std::pair<int64_t, int64_t>> rows;
    rows.reserve(g.edges.size());
    for (const auto& [u, v] : g.edges) {
        int64_t a = g.label(u), b = g.label(v);
        if (a > b)
            std::swap(a, b);
        rows.emplace_back(a, b);
    }
    std::sort(rows.begin(), rows.end());
    std::string out;
    for (const auto& [a, b] : rows) {
        out += std::to_string(a);
        out += ' ';
        out += std::to_string(b);
        out += '\n';
    }
    return out;
}

inline std::string to_dot(const VertexLabeledGraph& g) {
    std::string out = "graph permutation_labeled {\n";
    for (int64_t v = 1; v <= g.n; ++v) {
        out += "  " + std::to_string(g.label(v)) + ";\n";
    }
    std::vector<std::pair<int64_t, int64_t>> rows;
    for (const auto& [u, v] : g.edges) {
        int64_t a = g.label(u), b = g.label(v);
        if (a > b)
            std::swap(a, b);
        rows.emplace_back(a, b);
    }
    std::sort(rows.begin(), rows.end());
    for (const auto& [a, b] : rows)
        out += "  " + std::to_string(a) + " -- " + std::to_string(b) + ";\n";
    out += "}\n";
    return out;
}

// Whitespace-separated 1-based label pairs; n is the largest label seen.
inline VertexLabeledGraph read_edge_list(std::istream& in) {
    std::vector<std::pair<int64_t, int64_t>> raw;
    int64_t a = 0, b = 0, n = 0;
    while (in >> a >> b) {
        if (a < 1 || b < 1 || a == b)
            throw std::invalid_argument("edge list: endpoints must be distinct positive labels");
        raw.emplace_back(a, b);
        n = std::max({n, a, b});
    }
    if (raw.empty())
        throw std::invalid_argument("edge list: no edges found");
    auto g = VertexLabeledGraph::empty(n);
    for (const auto& [u, v] : raw)
        g.add_edge(u, v);
    return g;
}

}  // namespace permlab
