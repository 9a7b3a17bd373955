#pragma once

// Graph constructions for every surveyed family. Each builder takes its size index
// and parameters explicitly and draws randomness from the supplied Rng only.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "nlsp/graph.hpp"
#include "nlsp/rng.hpp"

namespace nlsp::gen {

//! Attempts allowed when a sampled directed edge collides with an existing pair.
inline constexpr int redraw_limit = 100;

namespace detail {

inline void require(bool ok, const std::string& msg) {
    if (!ok) throw std::invalid_argument(msg);
}

//! Relabels tuple-indexed vertices to 0..N-1 in sorted tuple order.
template <class Key>
Graph from_labeled(const std::set<Key>& nodes, const std::vector<std::pair<Key, Key>>& edges, bool directed) {
    std::map<Key, std::size_t> index;
    for (const auto& k : nodes) index.emplace(k, index.size());
    Graph g(nodes.size(), directed);
    for (const auto& [a, b] : edges) g.try_add_edge(index.at(a), index.at(b));
    return g;
}

struct Point {
    double x, y;
};

inline std::vector<Point> unit_square(std::size_t n, Rng& rng) {
    std::vector<Point> p(n);
    for (auto& q : p) {
        q.x = rng.uniform();
        q.y = rng.uniform();
    }
    return p;
}

inline double dist(const Point& a, const Point& b) { return std::hypot(a.x - b.x, a.y - b.y); }

} // namespace detail

// ---------------------------------------------------------------- deterministic

inline Graph hypercube(long long n) {
    detail::require(n >= 1 && n <= 24, "hypercube dimension must be in 1..24");
    std::size_t N = std::size_t{1} << n;
    Graph g(N, false);
    for (std::size_t i = 0; i < N; ++i)
        for (long long b = 0; b < n; ++b) {
            std::size_t j = i ^ (std::size_t{1} << b);
            if (j > i) g.add_edge(i, j);
        }
    return g;
}

//! Vertices {1..a}^m in lexicographic order; edges join tuples at Hamming distance 1.
inline Graph generalized_hypercube(long long a, long long m) {
    detail::require(a >= 2 && m >= 1, "generalized hypercube needs a >= 2 and m >= 1");
    double size = std::pow(static_cast<double>(a), static_cast<double>(m));
    detail::require(size <= 1e7, "generalized hypercube too large");
    std::size_t N = static_cast<std::size_t>(std::llround(size));
    std::vector<std::size_t> place(m);
    place[m - 1] = 1;
    for (long long k = m - 1; k-- > 0;) place[k] = place[k + 1] * a;
    Graph g(N, false);
    for (std::size_t i = 0; i < N; ++i)
        for (long long k = 0; k < m; ++k) {
            std::size_t digit = (i / place[k]) % a;
            for (std::size_t d = digit + 1; d < static_cast<std::size_t>(a); ++d) g.add_edge(i, i + (d - digit) * place[k]);
        }
    return g;
}

//! Z_n x Z_n with neighbors (x+2y, y), (x+2y+1, y), (x, y+2x), (x, y+2x+1) mod n;
//! loops and parallel edges dropped. Vertex (x, y) has index n*x + y.
inline Graph margulis_gabber_galil(long long n) {
    detail::require(n >= 2, "MGG needs n >= 2");
    std::size_t N = n * n;
    Graph g(N, false);
    auto id = [n](long long x, long long y) { return static_cast<std::size_t>(((x % n) + n) % n * n + ((y % n) + n) % n); };
    for (long long x = 0; x < n; ++x)
        for (long long y = 0; y < n; ++y) {
            std::size_t u = id(x, y);
            for (std::size_t v : {id(x + 2 * y, y), id(x + 2 * y + 1, y), id(x, y + 2 * x), id(x, y + 2 * x + 1)})
                g.try_add_edge(u, v);
        }
    return g;
}

//! n^2 x n^2 board; cells adjacent when sharing a row, a column or an n x n box.
inline Graph sudoku(long long n) {
    detail::require(n >= 1, "sudoku needs n >= 1");
    long long side = n * n;
    std::size_t N = side * side;
    Graph g(N, false);
    for (long long r1 = 0; r1 < side; ++r1)
        for (long long c1 = 0; c1 < side; ++c1)
            for (long long r2 = r1; r2 < side; ++r2)
                for (long long c2 = 0; c2 < side; ++c2) {
                    if (r2 == r1 && c2 <= c1) continue;
                    bool same = r1 == r2 || c1 == c2 || (r1 / n == r2 / n && c1 / n == c2 / n);
                    if (same) g.add_edge(r1 * side + c1, r2 * side + c2);
                }
    return g;
}

//! rows x cols grid with 4-neighborhood.
inline Graph grid(long long rows, long long cols) {
    detail::require(rows >= 1 && cols >= 1, "grid needs positive dimensions");
    Graph g(rows * cols, false);
    for (long long i = 0; i < rows; ++i)
        for (long long j = 0; j < cols; ++j) {
            std::size_t u = i * cols + j;
            if (j + 1 < cols) g.add_edge(u, u + 1);
            if (i + 1 < rows) g.add_edge(u, u + cols);
        }
    return g;
}

//! Hexagonal lattice with `rows` x `cols` hexagons; (cols+1)(2 rows+2) - 2 vertices.
inline Graph hexagonal_lattice(long long rows, long long cols) {
    detail::require(rows >= 1 && cols >= 1, "hexagonal lattice needs positive dimensions");
    using K = std::pair<long long, long long>;
    long long M = 2 * rows;
    std::set<K> nodes;
    std::vector<std::pair<K, K>> edges;
    for (long long i = 0; i <= cols; ++i)
        for (long long j = 0; j <= M; ++j) edges.push_back({{i, j}, {i, j + 1}});
    for (long long i = 0; i < cols; ++i)
        for (long long j = 0; j <= M + 1; ++j)
            if (i % 2 == j % 2) edges.push_back({{i, j}, {i + 1, j}});
    K drop1{0, M + 1}, drop2{cols, (M + 1) * (cols % 2)};
    std::vector<std::pair<K, K>> kept;
    for (const auto& e : edges) {
        if (e.first == drop1 || e.second == drop1 || e.first == drop2 || e.second == drop2) continue;
        kept.push_back(e);
    }
    for (long long i = 0; i <= cols; ++i)
        for (long long j = 0; j <= M + 1; ++j)
            if (K{i, j} != drop1 && K{i, j} != drop2) nodes.insert({i, j});
    return detail::from_labeled(nodes, kept, false);
}

//! Triangular lattice with `rows` rows and `cols` columns of triangles.
inline Graph triangular_lattice(long long rows, long long cols) {
    detail::require(rows >= 1 && cols >= 1, "triangular lattice needs positive dimensions");
    using K = std::pair<long long, long long>;
    long long W = (cols + 1) / 2;
    std::set<K> nodes;
    std::vector<std::pair<K, K>> edges;
    for (long long j = 0; j <= rows; ++j)
        for (long long i = 0; i < W; ++i) edges.push_back({{i, j}, {i + 1, j}});
    for (long long j = 0; j < rows; ++j)
        for (long long i = 0; i <= W; ++i) edges.push_back({{i, j}, {i, j + 1}});
    for (long long j = 1; j < rows; j += 2)
        for (long long i = 0; i < W; ++i) edges.push_back({{i, j}, {i + 1, j + 1}});
    for (long long j = 0; j < rows; j += 2)
        for (long long i = 0; i < W; ++i) edges.push_back({{i + 1, j}, {i, j + 1}});
    auto dropped = [&](const K& k) { return cols % 2 == 1 && k.first == W && k.second % 2 == 1; };
    std::vector<std::pair<K, K>> kept;
    for (const auto& e : edges)
        if (!dropped(e.first) && !dropped(e.second)) kept.push_back(e);
    for (long long i = 0; i <= W; ++i)
        for (long long j = 0; j <= rows; ++j)
            if (!dropped({i, j})) nodes.insert({i, j});
    return detail::from_labeled(nodes, kept, false);
}

inline Graph complete(long long n) {
    detail::require(n >= 1, "complete graph needs n >= 1");
    Graph g(n, false);
    for (long long i = 0; i < n; ++i)
        for (long long j = i + 1; j < n; ++j) g.add_edge(i, j);
    return g;
}

//! Complete multipartite graph on n vertices with p near-equal parts.
inline Graph turan(long long n, long long p) {
    detail::require(n >= 1 && p >= 1 && p <= n, "turan needs 1 <= p <= n");
    std::vector<long long> part(n);
    long long small = n / p, big_parts = n % p, v = 0;
    for (long long k = 0; k < p; ++k) {
        long long size = k < p - big_parts ? small : small + 1;
        for (long long i = 0; i < size; ++i) part[v++] = k;
    }
    Graph g(n, false);
    for (long long i = 0; i < n; ++i)
        for (long long j = i + 1; j < n; ++j)
            if (part[i] != part[j]) g.add_edge(i, j);
    return g;
}

//! Harary graph H_{k,n}: k-connected with the fewest edges.
inline Graph harary_kn(long long n, long long k) {
    detail::require(k >= 2 && n > k, "harary_kn needs 2 <= k < n");
    Graph g(n, false);
    long long half = k / 2;
    for (long long i = 0; i < n; ++i)
        for (long long j = 1; j <= half; ++j) g.try_add_edge(i, (i + j) % n);
    if (k % 2 == 1) {
        long long h = n / 2;
        if (n % 2 == 0) {
            for (long long i = 0; i < h; ++i) g.try_add_edge(i, i + h);
        } else {
            for (long long i = 0; i <= h; ++i) g.try_add_edge(i, (i + h) % n);
        }
    }
    return g;
}

//! Harary graph H_{n,m}: maximal connectivity with exactly m edges (n - 1 <= m).
inline Graph harary_mn(long long n, long long m) {
    detail::require(n >= 3 && m >= n - 1 && m <= n * (n - 1) / 2, "harary_mn needs n - 1 <= m <= n(n-1)/2");
    Graph g(n, false);
    long long d = 2 * m / n;
    if (d < 2) {
        for (long long i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1);
        return g;
    }
    long long h = n / 2;
    if (n % 2 == 0 || d % 2 == 0) {
        long long offset = d / 2;
        for (long long i = 0; i < n; ++i)
            for (long long j = 1; j <= offset; ++j) g.try_add_edge(i, (i + j) % n);
        if (d % 2 == 1)
            for (long long i = 0; i < h; ++i) g.try_add_edge(i, i + h);
        long long r = 2 * m % n;
        for (long long i = 0; i < r / 2; ++i) g.try_add_edge(i, (i + offset + 1) % n);
    } else {
        long long offset = (d - 1) / 2;
        for (long long i = 0; i < n; ++i)
            for (long long j = 1; j <= offset; ++j) g.try_add_edge(i, (i + j) % n);
        for (long long i = 0; i < m - n * offset; ++i) g.try_add_edge(i, (i + h) % n);
    }
    return g;
}

inline Graph ladder(long long n) {
    detail::require(n >= 2, "ladder needs n >= 2");
    Graph g(2 * n, false);
    for (long long i = 0; i + 1 < n; ++i) {
        g.add_edge(i, i + 1);
        g.add_edge(n + i, n + i + 1);
    }
    for (long long i = 0; i < n; ++i) g.add_edge(i, n + i);
    return g;
}

inline Graph circular_ladder(long long n) {
    detail::require(n >= 3, "circular ladder needs n >= 3");
    Graph g(2 * n, false);
    for (long long i = 0; i < n; ++i) {
        g.add_edge(i, (i + 1) % n);
        g.add_edge(n + i, n + (i + 1) % n);
    }
    for (long long i = 0; i < n; ++i) g.add_edge(i, n + i);
    return g;
}

//! `cliques` cliques of `size` vertices; vertex 1 of clique i joins vertex 0 of clique i+1.
inline Graph ring_of_cliques(long long cliques, long long size) {
    detail::require(cliques >= 2 && size >= 2, "ring of cliques needs >= 2 cliques of size >= 2");
    long long N = cliques * size;
    Graph g(N, false);
    for (long long c = 0; c < cliques; ++c) {
        for (long long i = 0; i < size; ++i)
            for (long long j = i + 1; j < size; ++j) g.add_edge(c * size + i, c * size + j);
        g.try_add_edge(c * size + 1, ((c + 1) * size) % N);
    }
    return g;
}

//! Complete `arity`-ary tree of the given height; children of i are arity*i + 1 .. arity*i + arity.
inline Graph balanced_tree(long long arity, long long height) {
    detail::require(arity >= 2 && height >= 0, "balanced tree needs arity >= 2, height >= 0");
    long long N = 0, level = 1;
    for (long long h = 0; h <= height; ++h, level *= arity) N += level;
    Graph g(N, false);
    for (long long i = 1; i < N; ++i) g.add_edge((i - 1) / arity, i);
    return g;
}

//! Binomial tree of the given order (2^order vertices).
inline Graph binomial_tree(long long order) {
    detail::require(order >= 0 && order <= 24, "binomial tree order must be in 0..24");
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    std::size_t N = 1;
    for (long long i = 0; i < order; ++i) {
        std::size_t count = edges.size();
        for (std::size_t e = 0; e < count; ++e) edges.push_back({edges[e].first + N, edges[e].second + N});
        edges.push_back({0, N});
        N *= 2;
    }
    Graph g(N, false);
    for (auto [u, v] : edges) g.add_edge(u, v);
    return g;
}

//! Edge u -> w iff (u - w) mod p is a nonzero quadratic residue; p prime, p = 3 mod 4.
inline Graph paley(long long p) {
    auto is_prime = [](long long x) {
        if (x < 2) return false;
        for (long long d = 2; d * d <= x; ++d)
            if (x % d == 0) return false;
        return true;
    };
    detail::require(is_prime(p) && p % 4 == 3, "paley needs a prime congruent to 3 mod 4");
    std::vector<char> qr(p, 0);
    for (long long x = 1; x < p; ++x) qr[(x * x) % p] = 1;
    Graph g(p, true);
    for (long long u = 0; u < p; ++u)
        for (long long w = 0; w < p; ++w)
            if (u != w && qr[((u - w) % p + p) % p]) g.add_edge(u, w);
    return g;
}

//! Hypercube edges oriented toward the endpoint of larger Hamming weight.
inline Graph directed_hypercube(long long n) {
    detail::require(n >= 1 && n <= 24, "directed hypercube dimension must be in 1..24");
    std::size_t N = std::size_t{1} << n;
    Graph g(N, true);
    for (std::size_t i = 0; i < N; ++i)
        for (long long b = 0; b < n; ++b)
            if (!(i & (std::size_t{1} << b))) g.add_edge(i, i | (std::size_t{1} << b));
    return g;
}

// ---------------------------------------------------------------- random, undirected

//! Random d-regular graph by stub pairing with restarts on dead ends.
inline Graph random_regular(long long n, long long d, Rng& rng) {
    detail::require(d >= 0 && d < n, "random_regular needs 0 <= d < n");
    detail::require((n * d) % 2 == 0, "random_regular needs n*d even");
    for (int attempt = 0; attempt < 10000; ++attempt) {
        std::set<std::pair<long long, long long>> edges;
        std::vector<long long> stubs;
        for (long long v = 0; v < n; ++v)
            for (long long k = 0; k < d; ++k) stubs.push_back(v);
        bool failed = false;
        while (!stubs.empty()) {
            rng.shuffle(stubs);
            std::map<long long, long long> potential;
            for (std::size_t i = 0; i + 1 < stubs.size(); i += 2) {
                long long a = std::min(stubs[i], stubs[i + 1]), b = std::max(stubs[i], stubs[i + 1]);
                if (a != b && !edges.count({a, b})) {
                    edges.insert({a, b});
                } else {
                    ++potential[a];
                    ++potential[b];
                }
            }
            if (potential.empty()) break;
            bool suitable = false;
            for (auto it = potential.begin(); it != potential.end() && !suitable; ++it)
                for (auto jt = std::next(it); jt != potential.end(); ++jt)
                    if (!edges.count({it->first, jt->first})) {
                        suitable = true;
                        break;
                    }
            if (!suitable) {
                failed = true;
                break;
            }
            stubs.clear();
            for (auto [v, c] : potential)
                for (long long k = 0; k < c; ++k) stubs.push_back(v);
        }
        if (failed) continue;
        Graph g(n, false);
        for (auto [a, b] : edges) g.add_edge(a, b);
        return g;
    }
    throw std::runtime_error("random_regular: pairing did not converge");
}

//! Preferential attachment starting from a star on k+1 vertices.
inline Graph barabasi_albert(long long n, long long k, Rng& rng) {
    detail::require(k >= 1 && k < n, "barabasi_albert needs 1 <= k < n");
    Graph g(n, false);
    std::vector<std::size_t> repeated;
    for (long long i = 1; i <= k; ++i) {
        g.add_edge(0, i);
        repeated.push_back(0);
        repeated.push_back(i);
    }
    for (long long source = k + 1; source < n; ++source) {
        std::set<std::size_t> targets;
        while (static_cast<long long>(targets.size()) < k) targets.insert(repeated[rng.below(repeated.size())]);
        for (auto t : targets) {
            g.add_edge(source, t);
            repeated.push_back(t);
        }
        for (long long i = 0; i < k; ++i) repeated.push_back(source);
    }
    return g;
}

//! Ring lattice with k/2 neighbors per side plus, per ring edge (u,v), with probability p a
//! shortcut u-w to a uniformly chosen vertex.
inline Graph newman_watts_strogatz(long long n, long long k, double p, Rng& rng) {
    detail::require(n >= 3 && k >= 2 && k < n, "newman_watts_strogatz needs 2 <= k < n");
    Graph g(n, false);
    for (long long j = 1; j <= k / 2; ++j)
        for (long long i = 0; i < n; ++i) g.try_add_edge(i, (i + j) % n);
    auto ring = g.edges();
    auto deg = g.degrees();
    for (const auto& e : ring) {
        if (!rng.bernoulli(p)) continue;
        if (deg[e.u] >= static_cast<std::size_t>(n - 1)) continue;
        std::size_t w;
        do {
            w = rng.below(n);
        } while (w == e.u || g.has_edge(e.u, w));
        g.add_edge(e.u, w);
        ++deg[e.u];
        ++deg[w];
    }
    return g;
}

inline Graph gnp(long long n, double p, Rng& rng) {
    detail::require(n >= 1 && p >= 0.0 && p <= 1.0, "gnp needs n >= 1 and p in [0,1]");
    Graph g(n, false);
    for (long long i = 0; i < n; ++i)
        for (long long j = i + 1; j < n; ++j)
            if (rng.bernoulli(p)) g.add_edge(i, j);
    return g;
}

//! Block sizes drawn from a rounded normal(mean, sqrt(var)) until n vertices are covered.
inline std::vector<long long> gaussian_partition_sizes(long long n, double mean, double var, Rng& rng) {
    std::vector<long long> sizes;
    long long total = 0;
    while (total < n) {
        long long s = std::llround(rng.normal(mean, std::sqrt(var)));
        if (s < 1) continue;
        s = std::min(s, n - total);
        sizes.push_back(s);
        total += s;
    }
    return sizes;
}

//! Random partition graph; directed version samples each ordered pair and rejects a
//! pair whose reverse is already present.
inline Graph random_partition(const std::vector<long long>& sizes, double p_in, double p_out, bool directed, Rng& rng) {
    long long n = std::accumulate(sizes.begin(), sizes.end(), 0LL);
    std::vector<long long> block(n);
    long long v = 0;
    for (std::size_t b = 0; b < sizes.size(); ++b)
        for (long long i = 0; i < sizes[b]; ++i) block[v++] = static_cast<long long>(b);
    Graph g(n, directed);
    for (long long i = 0; i < n; ++i)
        for (long long j = directed ? 0 : i + 1; j < n; ++j) {
            if (i == j) continue;
            double p = block[i] == block[j] ? p_in : p_out;
            if (rng.bernoulli(p)) g.try_add_edge(i, j);
        }
    return g;
}

//! Unit-square points with Exp(rate) weights; edge iff (w_u + w_v) / r^2 >= theta.
inline Graph geographical_threshold(long long n, double rate, double theta, Rng& rng) {
    auto pts = detail::unit_square(n, rng);
    std::vector<double> w(n);
    for (auto& x : w) x = rng.exponential(rate);
    Graph g(n, false);
    for (long long i = 0; i < n; ++i)
        for (long long j = i + 1; j < n; ++j) {
            double r = detail::dist(pts[i], pts[j]);
            if ((w[i] + w[j]) / (r * r) >= theta) g.add_edge(i, j);
        }
    return g;
}

//! Unit-square points; pairs within `radius` join with probability exp(-r).
inline Graph soft_random_geometric(long long n, double radius, Rng& rng) {
    auto pts = detail::unit_square(n, rng);
    Graph g(n, false);
    for (long long i = 0; i < n; ++i)
        for (long long j = i + 1; j < n; ++j) {
            double r = detail::dist(pts[i], pts[j]);
            if (r <= radius && rng.uniform() < std::exp(-r)) g.add_edge(i, j);
        }
    return g;
}

//! Unit-square points with Exp(rate) weights; edge iff r <= radius and w_u + w_v >= theta.
inline Graph thresholded_random_geometric(long long n, double radius, double rate, double theta, Rng& rng) {
    auto pts = detail::unit_square(n, rng);
    std::vector<double> w(n);
    for (auto& x : w) x = rng.exponential(rate);
    Graph g(n, false);
    for (long long i = 0; i < n; ++i)
        for (long long j = i + 1; j < n; ++j)
            if (detail::dist(pts[i], pts[j]) <= radius && w[i] + w[j] >= theta) g.add_edge(i, j);
    return g;
}

inline Graph random_geometric(long long n, double radius, Rng& rng) {
    auto pts = detail::unit_square(n, rng);
    Graph g(n, false);
    for (long long i = 0; i < n; ++i)
        for (long long j = i + 1; j < n; ++j)
            if (detail::dist(pts[i], pts[j]) <= radius) g.add_edge(i, j);
    return g;
}

//! Bipartite G(n, m, p) projected on the n side: vertices sharing an attribute are adjacent.
inline Graph uniform_random_intersection(long long n, long long m, double p, Rng& rng) {
    detail::require(n >= 1 && m >= 0, "uniform_random_intersection needs n >= 1, m >= 0");
    std::size_t words = (static_cast<std::size_t>(m) + 63) / 64;
    std::vector<std::vector<std::uint64_t>> attr(n, std::vector<std::uint64_t>(std::max<std::size_t>(words, 1), 0));
    for (long long i = 0; i < n; ++i)
        for (long long a = 0; a < m; ++a)
            if (rng.bernoulli(p)) attr[i][a / 64] |= std::uint64_t{1} << (a % 64);
    Graph g(n, false);
    for (long long i = 0; i < n; ++i)
        for (long long j = i + 1; j < n; ++j) {
            bool share = false;
            for (std::size_t k = 0; k < words && !share; ++k) share = (attr[i][k] & attr[j][k]) != 0;
            if (share) g.add_edge(i, j);
        }
    return g;
}

//! Backbone path of n vertices; each backbone vertex grows legs while U < p1, each leg
//! grows one chain while U < p2.
inline Graph random_lobster(long long n, double p1, double p2, Rng& rng) {
    detail::require(n >= 2 && p1 < 1.0 && p2 < 1.0, "random_lobster needs n >= 2 and p1, p2 < 1");
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    std::size_t current = n - 1;
    for (long long i = 0; i + 1 < n; ++i) edges.push_back({static_cast<std::size_t>(i), static_cast<std::size_t>(i + 1)});
    for (long long i = 0; i < n; ++i)
        while (rng.uniform() < p1) {
            ++current;
            edges.push_back({static_cast<std::size_t>(i), current});
            std::size_t leg = current;
            while (rng.uniform() < p2) {
                ++current;
                edges.push_back({leg, current});
            }
        }
    Graph g(current + 1, false);
    for (auto [u, v] : edges) g.add_edge(u, v);
    return g;
}

// ---------------------------------------------------------------- random, directed

//! Growing network with attachment kernel f(d) = d; every edge points from new to old.
inline Graph gn(long long n, Rng& rng) {
    detail::require(n >= 2, "gn needs n >= 2");
    Graph g(n, true);
    g.add_edge(1, 0);
    std::vector<double> deg{1.0, 1.0};
    for (long long source = 2; source < n; ++source) {
        std::size_t target = rng.weighted(deg);
        g.add_edge(source, target);
        deg.push_back(1.0);
        deg[target] += 1.0;
    }
    return g;
}

//! Growing network with copying: the new vertex links to a random target and all its successors.
inline Graph gnc(long long n, Rng& rng) {
    detail::require(n >= 2, "gnc needs n >= 2");
    Graph g(n, true);
    std::vector<std::vector<std::size_t>> succ(n);
    for (long long source = 1; source < n; ++source) {
        std::size_t target = rng.below(source);
        for (auto s : succ[target]) {
            g.add_edge(source, s);
            succ[source].push_back(s);
        }
        g.add_edge(source, target);
        succ[source].push_back(target);
    }
    return g;
}

//! Growing network with redirection: with probability p the edge goes to the target's
//! first successor instead.
inline Graph gnr(long long n, double p, Rng& rng) {
    detail::require(n >= 2, "gnr needs n >= 2");
    Graph g(n, true);
    std::vector<std::vector<std::size_t>> succ(n);
    for (long long source = 1; source < n; ++source) {
        std::size_t target = rng.below(source);
        if (rng.uniform() < p && target != 0) target = succ[target].front();
        g.add_edge(source, target);
        succ[source].push_back(target);
    }
    return g;
}

//! side x side grid; short-range links to Manhattan-distance-1 vertices (one direction per
//! pair, the first vertex in index order wins) plus one long-range link per vertex with
//! probability proportional to R^-r.
inline Graph navigable_small_world(long long side, double r, Rng& rng) {
    detail::require(side >= 2, "navigable small world needs side >= 2");
    long long N = side * side;
    Graph g(N, true);
    auto manhattan = [side](long long a, long long b) {
        return std::abs(a / side - b / side) + std::abs(a % side - b % side);
    };
    for (long long u = 0; u < N; ++u)
        for (long long v = 0; v < N; ++v)
            if (u != v && manhattan(u, v) == 1) g.try_add_edge(u, v);
    std::vector<double> w(N);
    for (long long u = 0; u < N; ++u) {
        for (long long v = 0; v < N; ++v) w[v] = u == v ? 0.0 : std::pow(static_cast<double>(manhattan(u, v)), -r);
        for (int attempt = 0; attempt < redraw_limit; ++attempt)
            if (g.try_add_edge(u, rng.weighted(w))) break;
    }
    return g;
}

inline Graph directed_gnp(long long n, double p, Rng& rng) {
    return random_partition({n}, p, p, true, rng);
}

//! Every vertex sends k edges to distinct uniformly chosen vertices.
inline Graph random_uniform_kout(long long n, long long k, Rng& rng) {
    detail::require(k >= 1 && k < n, "random_uniform_kout needs 1 <= k < n");
    Graph g(n, true);
    for (long long u = 0; u < n; ++u) {
        long long added = 0;
        for (int attempt = 0; added < k && attempt < redraw_limit * k; ++attempt)
            if (g.try_add_edge(u, rng.below(n))) ++added;
    }
    return g;
}

//! Directed scale-free growth from the 3-cycle 0->1->2->0.
inline Graph scale_free(long long n, double alpha, double beta, double gamma, double delta_in, double delta_out, Rng& rng) {
    detail::require(n >= 3, "scale_free needs n >= 3");
    detail::require(std::abs(alpha + beta + gamma - 1.0) < 1e-9, "scale_free probabilities must sum to 1");
    std::vector<std::pair<std::size_t, std::size_t>> edges{{0, 1}, {1, 2}, {2, 0}};
    std::set<std::pair<std::size_t, std::size_t>> present(edges.begin(), edges.end());
    std::vector<std::size_t> vs{0, 1, 2}, ws{1, 2, 0};
    std::size_t count = 3;
    auto choose = [&](const std::vector<std::size_t>& cand, double delta) -> std::size_t {
        if (delta > 0.0) {
            double bias = static_cast<double>(count) * delta;
            if (rng.uniform() < bias / (bias + static_cast<double>(cand.size()))) return rng.below(count);
        }
        return cand[rng.below(cand.size())];
    };
    auto free_pair = [&](std::size_t v, std::size_t w) {
        return v != w && !present.count({v, w}) && !present.count({w, v});
    };
    while (static_cast<long long>(count) < n) {
        double x = rng.uniform();
        std::size_t v = 0, w = 0;
        bool ok = false;
        if (x < alpha) {
            v = count;
            w = choose(ws, delta_in);
            ++count;
            ok = true;
        } else if (x < alpha + beta) {
            for (int attempt = 0; attempt < redraw_limit && !ok; ++attempt) {
                v = choose(vs, delta_out);
                w = choose(ws, delta_in);
                ok = free_pair(v, w);
            }
        } else {
            v = choose(vs, delta_out);
            w = count;
            ++count;
            ok = true;
        }
        if (!ok) continue;
        edges.push_back({v, w});
        present.insert({v, w});
        vs.push_back(v);
        ws.push_back(w);
    }
    Graph g(count, true);
    for (auto [a, b] : edges) g.add_edge(a, b);
    return g;
}

} // namespace nlsp::gen
