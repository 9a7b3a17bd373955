#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace nlsp {

struct Edge {
    std::size_t u = 0;
    std::size_t v = 0;
    double w = 1.0;
    friend bool operator==(const Edge&, const Edge&) = default;
};

//! Simple graph with positive weights: no self-loops and no duplicate edges.
//! Directed graphs additionally never hold both (u,v) and (v,u).
class Graph {
public:
    Graph() = default;
    Graph(std::size_t n_vertices, bool directed) : n_(n_vertices), directed_(directed) {}

    std::size_t n_vertices() const { return n_; }
    std::size_t n_edges() const { return edges_.size(); }
    bool directed() const { return directed_; }
    const std::vector<Edge>& edges() const { return edges_; }

    bool has_edge(std::size_t u, std::size_t v) const { return keys_.count(key(u, v)) != 0; }
    //! True if u and v are joined in either direction.
    bool adjacent(std::size_t u, std::size_t v) const {
        return has_edge(u, v) || (directed_ && has_edge(v, u));
    }

    void add_edge(std::size_t u, std::size_t v, double w = 1.0) {
        if (u >= n_ || v >= n_) throw std::out_of_range("edge endpoint out of range");
        if (u == v) throw std::invalid_argument("self-loop rejected");
        if (!(w > 0.0)) throw std::invalid_argument("edge weight must be positive");
        if (adjacent(u, v)) throw std::invalid_argument("duplicate or bi-directed edge rejected");
        keys_.insert(key(u, v));
        edges_.push_back({u, v, w});
    }
    //! Adds the edge unless it is a loop or the vertices are already adjacent.
    bool try_add_edge(std::size_t u, std::size_t v, double w = 1.0) {
        if (u == v || adjacent(u, v)) return false;
        add_edge(u, v, w);
        return true;
    }
    void set_weight(std::size_t index, double w) {
        if (!(w > 0.0)) throw std::invalid_argument("edge weight must be positive");
        edges_.at(index).w = w;
    }

    std::vector<std::size_t> degrees() const {
        std::vector<std::size_t> d(n_, 0);
        for (const auto& e : edges_) {
            ++d[e.u];
            ++d[e.v];
        }
        return d;
    }
    std::vector<std::size_t> in_degrees() const {
        std::vector<std::size_t> d(n_, 0);
        for (const auto& e : edges_) ++d[e.v];
        return d;
    }
    std::vector<std::size_t> out_degrees() const {
        std::vector<std::size_t> d(n_, 0);
        for (const auto& e : edges_) ++d[e.u];
        return d;
    }
    //! Undirected neighbor lists (direction ignored), sorted.
    std::vector<std::vector<std::size_t>> neighbors() const {
        std::vector<std::vector<std::size_t>> nb(n_);
        for (const auto& e : edges_) {
            nb[e.u].push_back(e.v);
            nb[e.v].push_back(e.u);
        }
        for (auto& l : nb) std::sort(l.begin(), l.end());
        return nb;
    }
    bool connected() const {
        if (n_ == 0) return true;
        auto nb = neighbors();
        std::vector<char> seen(n_, 0);
        std::vector<std::size_t> stack{0};
        seen[0] = 1;
        std::size_t count = 1;
        while (!stack.empty()) {
            auto x = stack.back();
            stack.pop_back();
            for (auto y : nb[x])
                if (!seen[y]) {
                    seen[y] = 1;
                    ++count;
                    stack.push_back(y);
                }
        }
        return count == n_;
    }

    friend bool operator==(const Graph& a, const Graph& b) {
        return a.n_ == b.n_ && a.directed_ == b.directed_ && a.edges_ == b.edges_;
    }

private:
    std::uint64_t key(std::size_t u, std::size_t v) const {
        if (!directed_ && u > v) std::swap(u, v);
        return static_cast<std::uint64_t>(u) * n_ + v;
    }

    std::size_t n_ = 0;
    bool directed_ = false;
    std::vector<Edge> edges_;
    std::unordered_set<std::uint64_t> keys_;
};

//! Real symmetric matrix in sparse triplet form; only i <= j is stored.
class SymmetricMatrix {
public:
    explicit SymmetricMatrix(std::size_t order) : order_(order) {
        if (order == 0) throw std::invalid_argument("matrix order must be at least 1");
    }

    std::size_t order() const { return order_; }
    double entry(std::size_t i, std::size_t j) const {
        check(i, j);
        auto it = entries_.find(ordered(i, j));
        return it == entries_.end() ? 0.0 : it->second;
    }
    void set(std::size_t i, std::size_t j, double v) {
        check(i, j);
        if (v == 0.0)
            entries_.erase(ordered(i, j));
        else
            entries_[ordered(i, j)] = v;
    }
    void add(std::size_t i, std::size_t j, double v) { set(i, j, entry(i, j) + v); }

    //! Stored upper-triangle entries in (row, col) order.
    const std::map<std::pair<std::size_t, std::size_t>, double>& upper() const { return entries_; }

    std::vector<std::size_t> row_nnz() const {
        std::vector<std::size_t> c(order_, 0);
        for (const auto& [ij, v] : entries_) {
            ++c[ij.first];
            if (ij.first != ij.second) ++c[ij.second];
        }
        return c;
    }
    std::vector<double> row_sums() const {
        std::vector<double> s(order_, 0.0);
        for (const auto& [ij, v] : entries_) {
            s[ij.first] += v;
            if (ij.first != ij.second) s[ij.second] += v;
        }
        return s;
    }

    Eigen::MatrixXd to_dense() const {
        Eigen::MatrixXd m = Eigen::MatrixXd::Zero(order_, order_);
        for (const auto& [ij, v] : entries_) {
            m(ij.first, ij.second) = v;
            m(ij.second, ij.first) = v;
        }
        return m;
    }
    static SymmetricMatrix from_dense(const Eigen::MatrixXd& m, double tol = 0.0) {
        if (m.rows() != m.cols()) throw std::invalid_argument("matrix is not square");
        SymmetricMatrix s(static_cast<std::size_t>(m.rows()));
        for (Eigen::Index i = 0; i < m.rows(); ++i)
            for (Eigen::Index j = i; j < m.cols(); ++j) {
                if (std::abs(m(i, j) - m(j, i)) > tol) throw std::invalid_argument("matrix is not symmetric");
                if (m(i, j) != 0.0) s.set(i, j, m(i, j));
            }
        return s;
    }

    Eigen::VectorXd multiply(const Eigen::VectorXd& x) const {
        Eigen::VectorXd y = Eigen::VectorXd::Zero(order_);
        for (const auto& [ij, v] : entries_) {
            y[ij.first] += v * x[ij.second];
            if (ij.first != ij.second) y[ij.second] += v * x[ij.first];
        }
        return y;
    }

    SymmetricMatrix scaled(double c) const {
        SymmetricMatrix s(order_);
        for (const auto& [ij, v] : entries_) s.entries_[ij] = v * c;
        return s;
    }

    friend bool operator==(const SymmetricMatrix&, const SymmetricMatrix&) = default;

private:
    void check(std::size_t i, std::size_t j) const {
        if (i >= order_ || j >= order_) throw std::out_of_range("matrix index out of range");
    }
    static std::pair<std::size_t, std::size_t> ordered(std::size_t i, std::size_t j) {
        return i <= j ? std::make_pair(i, j) : std::make_pair(j, i);
    }

    std::size_t order_;
    std::map<std::pair<std::size_t, std::size_t>, double> entries_;
};

//! Real rectangular matrix in sparse triplet form.
class RectMatrix {
public:
    RectMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    double entry(std::size_t i, std::size_t j) const {
        check(i, j);
        auto it = entries_.find({i, j});
        return it == entries_.end() ? 0.0 : it->second;
    }
    void set(std::size_t i, std::size_t j, double v) {
        check(i, j);
        if (v == 0.0)
            entries_.erase({i, j});
        else
            entries_[{i, j}] = v;
    }
    const std::map<std::pair<std::size_t, std::size_t>, double>& entries() const { return entries_; }

    Eigen::MatrixXd to_dense() const {
        Eigen::MatrixXd m = Eigen::MatrixXd::Zero(rows_, cols_);
        for (const auto& [ij, v] : entries_) m(ij.first, ij.second) = v;
        return m;
    }
    static RectMatrix from_dense(const Eigen::MatrixXd& m) {
        RectMatrix r(m.rows(), m.cols());
        for (Eigen::Index i = 0; i < m.rows(); ++i)
            for (Eigen::Index j = 0; j < m.cols(); ++j)
                if (m(i, j) != 0.0) r.set(i, j, m(i, j));
        return r;
    }

private:
    void check(std::size_t i, std::size_t j) const {
        if (i >= rows_ || j >= cols_) throw std::out_of_range("matrix index out of range");
    }

    std::size_t rows_, cols_;
    std::map<std::pair<std::size_t, std::size_t>, double> entries_;
};

enum class MatrixKind { laplacian, incidence };

inline std::string to_string(MatrixKind k) { return k == MatrixKind::laplacian ? "laplacian" : "incidence"; }
inline MatrixKind matrix_kind_from_string(const std::string& s) {
    if (s == "laplacian") return MatrixKind::laplacian;
    if (s == "incidence") return MatrixKind::incidence;
    throw std::invalid_argument("unknown matrix kind: " + s);
}

namespace detail {
inline void require_undirected(const Graph& g, const char* what) {
    if (g.directed()) throw std::invalid_argument(std::string(what) + " requires an undirected graph");
}
} // namespace detail

inline SymmetricMatrix adjacency_matrix(const Graph& g) {
    detail::require_undirected(g, "adjacency_matrix");
    SymmetricMatrix q(std::max<std::size_t>(g.n_vertices(), 1));
    for (const auto& e : g.edges()) q.set(e.u, e.v, e.w);
    return q;
}

inline SymmetricMatrix degree_matrix(const Graph& g) {
    detail::require_undirected(g, "degree_matrix");
    SymmetricMatrix d(std::max<std::size_t>(g.n_vertices(), 1));
    for (const auto& e : g.edges()) {
        d.add(e.u, e.u, e.w);
        d.add(e.v, e.v, e.w);
    }
    return d;
}

inline SymmetricMatrix laplacian(const Graph& g) {
    detail::require_undirected(g, "laplacian");
    SymmetricMatrix l(std::max<std::size_t>(g.n_vertices(), 1));
    std::vector<double> deg(g.n_vertices(), 0.0);
    for (const auto& e : g.edges()) {
        deg[e.u] += e.w;
        deg[e.v] += e.w;
        l.set(e.u, e.v, -e.w);
    }
    for (std::size_t i = 0; i < g.n_vertices(); ++i) l.set(i, i, deg[i]);
    return l;
}

//! Column j holds -1 at the initial and +1 at the terminal vertex of edge j.
inline RectMatrix incidence_matrix(const Graph& g) {
    if (!g.directed()) throw std::invalid_argument("incidence_matrix requires a directed graph");
    RectMatrix b(g.n_vertices(), g.n_edges());
    for (std::size_t j = 0; j < g.n_edges(); ++j) {
        b.set(g.edges()[j].u, j, -1.0);
        b.set(g.edges()[j].v, j, 1.0);
    }
    return b;
}

//! [[0, B], [B^T, 0]] of order rows + cols.
inline SymmetricMatrix hermitian_dilation(const RectMatrix& b) {
    SymmetricMatrix h(b.rows() + b.cols());
    for (const auto& [ij, v] : b.entries()) h.set(ij.first, b.rows() + ij.second, v);
    return h;
}

inline std::size_t next_power_of_two(std::size_t n) {
    std::size_t p = 1;
    while (p < n) p <<= 1;
    return p;
}

//! Extends to the next power-of-two order with a fill * identity block.
inline SymmetricMatrix pad_to_power_of_two(const SymmetricMatrix& m, double fill) {
    if (!(fill > 0.0)) throw std::invalid_argument("padding fill must be positive");
    std::size_t p = next_power_of_two(m.order());
    if (p == m.order()) return m;
    SymmetricMatrix out(p);
    for (const auto& [ij, v] : m.upper()) out.set(ij.first, ij.second, v);
    for (std::size_t i = m.order(); i < p; ++i) out.set(i, i, fill);
    return out;
}

} // namespace nlsp
