#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "nlsp/graph.hpp"
#include "nlsp/rng.hpp"

namespace nlsp {

struct RepairResult {
    Graph graph;
    std::string message;
    std::size_t added = 0;
    std::size_t reversed = 0;
};

namespace detail {

//! Mutable digraph view used by the repair procedure; edges keep insertion order.
class RepairGraph {
public:
    explicit RepairGraph(const Graph& g) : n_(g.n_vertices()), out_(n_), in_(n_) {
        for (const auto& e : g.edges()) insert(e.u, e.v, e.w);
    }

    std::size_t n() const { return n_; }
    std::size_t indeg(std::size_t v) const { return in_[v].size(); }
    std::size_t outdeg(std::size_t v) const { return out_[v].size(); }
    bool has(std::size_t u, std::size_t v) const { return out_[u].count(v) != 0; }
    bool adjacent(std::size_t u, std::size_t v) const { return has(u, v) || has(v, u); }
    const std::set<std::size_t>& out(std::size_t v) const { return out_[v]; }
    const std::set<std::size_t>& in(std::size_t v) const { return in_[v]; }
    bool source(std::size_t v) const { return in_[v].empty(); }
    bool sink(std::size_t v) const { return out_[v].empty(); }

    bool add(std::size_t u, std::size_t v) {
        if (u == v || adjacent(u, v)) return false;
        insert(u, v, 1.0);
        ++added;
        return true;
    }
    void reverse(std::size_t u, std::size_t v) {
        auto it = std::find_if(order_.begin(), order_.end(), [&](const Edge& e) { return e.u == u && e.v == v; });
        if (it == order_.end()) throw std::logic_error("reverse of a missing edge");
        out_[u].erase(v);
        in_[v].erase(u);
        out_[v].insert(u);
        in_[u].insert(v);
        std::swap(it->u, it->v);
        ++reversed;
    }

    Graph to_graph() const {
        Graph g(n_, true);
        for (const auto& e : order_) g.add_edge(e.u, e.v, e.w);
        return g;
    }

    std::size_t added = 0;
    std::size_t reversed = 0;

private:
    void insert(std::size_t u, std::size_t v, double w) {
        out_[u].insert(v);
        in_[v].insert(u);
        order_.push_back({u, v, w});
    }

    std::size_t n_;
    std::vector<std::set<std::size_t>> out_, in_;
    std::vector<Edge> order_;
};

template <class Pred>
std::vector<std::size_t> collect(std::size_t n, Pred pred) {
    std::vector<std::size_t> out;
    for (std::size_t v = 0; v < n; ++v)
        if (pred(v)) out.push_back(v);
    return out;
}

//! Uniform pick from `pool` satisfying `ok`, redrawing up to 100 times before a linear scan.
template <class Ok>
std::optional<std::size_t> pick(const std::vector<std::size_t>& pool, Rng& rng, Ok ok) {
    if (pool.empty()) return std::nullopt;
    for (int attempt = 0; attempt < 100; ++attempt) {
        auto c = pool[rng.below(pool.size())];
        if (ok(c)) return c;
    }
    std::vector<std::size_t> good;
    for (auto c : pool)
        if (ok(c)) good.push_back(c);
    if (good.empty()) return std::nullopt;
    return good[rng.below(good.size())];
}

//! Gives a sink an outgoing edge: a new edge to a non-adjacent vertex, otherwise the
//! reversal of an incoming edge whose tail keeps another out-edge and whose head keeps
//! another in-edge.
inline bool fix_sink(RepairGraph& g, std::size_t v, const std::vector<std::size_t>& pool, Rng& rng) {
    if (auto y = pick(pool, rng, [&](std::size_t y) { return y != v && !g.adjacent(v, y); })) return g.add(v, *y);
    if (g.indeg(v) >= 2)
        for (auto u : std::vector<std::size_t>(g.in(v).begin(), g.in(v).end()))
            if (g.outdeg(u) >= 2) {
                g.reverse(u, v);
                return true;
            }
    return false;
}

inline bool fix_source(RepairGraph& g, std::size_t v, const std::vector<std::size_t>& pool, Rng& rng) {
    if (auto y = pick(pool, rng, [&](std::size_t y) { return y != v && !g.adjacent(v, y); })) return g.add(*y, v);
    if (g.outdeg(v) >= 2)
        for (auto u : std::vector<std::size_t>(g.out(v).begin(), g.out(v).end()))
            if (g.indeg(u) >= 2) {
                g.reverse(v, u);
                return true;
            }
    return false;
}

} // namespace detail

//! Turns every source and sink into an interior vertex without creating bi-directed
//! pairs or changing the vertex count: a degree-one pass first, then pairing of the
//! source and sink lists. Added edges get weight 1.
inline RepairResult repair_sources_sinks(const Graph& input, std::uint64_t seed) {
    if (!input.directed()) throw std::invalid_argument("repair_sources_sinks requires a directed graph");
    if (input.n_vertices() < 3) throw std::invalid_argument("repair_sources_sinks requires at least 3 vertices");
    Rng rng(seed);
    detail::RepairGraph g(input);
    const std::size_t n = g.n();
    std::vector<std::size_t> all(n);
    for (std::size_t v = 0; v < n; ++v) all[v] = v;

    for (std::size_t v = 0; v < n; ++v) {
        if (g.indeg(v) + g.outdeg(v) != 1) continue;
        if (g.indeg(v) == 1) {
            std::size_t u = *g.in(v).begin();
            if (auto y = detail::pick(all, rng, [&](std::size_t y) { return y != v && y != u && !g.adjacent(v, y); }))
                g.add(v, *y);
        } else {
            std::size_t u = *g.out(v).begin();
            if (auto y = detail::pick(all, rng, [&](std::size_t y) { return y != v && y != u && !g.adjacent(v, y); }))
                g.add(*y, v);
        }
    }

    auto sources = detail::collect(n, [&](std::size_t v) { return g.source(v); });
    auto sinks = detail::collect(n, [&](std::size_t v) { return g.sink(v); });
    RepairResult result;

    if (sources.empty() && sinks.empty()) {
        result.message = "There are no source and sink vertices in the graph";
    } else if (sources.empty()) {
        auto list1 = detail::collect(n, [&](std::size_t u) { return !g.sink(u); });
        for (auto s : sinks) detail::fix_sink(g, s, list1, rng);
        result.message = "sinks connected to non-sink vertices";
    } else if (sinks.empty()) {
        auto list2 = detail::collect(n, [&](std::size_t v) { return !g.source(v); });
        for (auto s : sources) detail::fix_source(g, s, list2, rng);
        result.message = "sources fed from non-source vertices";
    } else {
        // Pair sink -> source in list order, skipping pairs that are already joined.
        std::vector<char> source_used(sources.size(), 0), sink_used(sinks.size(), 0);
        for (std::size_t k = 0; k < sinks.size(); ++k)
            for (std::size_t i = 0; i < sources.size(); ++i) {
                if (source_used[i]) continue;
                if (g.add(sinks[k], sources[i])) {
                    source_used[i] = 1;
                    sink_used[k] = 1;
                    break;
                }
            }
        if (sources.size() <= sinks.size()) {
            for (std::size_t k = 0; k < sinks.size(); ++k)
                if (!sink_used[k] && g.sink(sinks[k])) {
                    auto t = detail::pick(sources, rng, [&](std::size_t y) { return y != sinks[k] && !g.adjacent(sinks[k], y); });
                    if (t) g.add(sinks[k], *t);
                }
            result.message = "sinks paired with sources; remaining sinks linked to random sources";
        } else {
            for (std::size_t i = 0; i < sources.size(); ++i)
                if (!source_used[i] && g.source(sources[i])) {
                    auto t = detail::pick(sinks, rng, [&](std::size_t y) { return y != sources[i] && !g.adjacent(sources[i], y); });
                    if (t) g.add(*t, sources[i]);
                }
            result.message = "sinks paired with sources; remaining sources fed from random sinks";
        }
    }

    // Anything the list steps could not serve (every candidate already adjacent) is
    // finished with a new edge to any non-adjacent vertex or a safe reversal.
    for (int round = 0; round < 4; ++round) {
        bool changed = false, clean = true;
        for (std::size_t v = 0; v < n; ++v) {
            if (g.sink(v)) {
                clean = false;
                changed |= detail::fix_sink(g, v, all, rng);
            }
            if (g.source(v)) {
                clean = false;
                changed |= detail::fix_source(g, v, all, rng);
            }
        }
        if (clean || !changed) break;
    }

    result.added = g.added;
    result.reversed = g.reversed;
    result.graph = g.to_graph();
    return result;
}

} // namespace nlsp
