#pragma once

#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "nlsp/graph.hpp"

namespace nlsp {

//! Edge-list text format: header "directed|undirected <n_vertices>", then one "u v w" per line.
//! Blank lines and lines starting with '#' are ignored.
inline void write_edge_list(const Graph& g, std::ostream& os) {
    os << (g.directed() ? "directed " : "undirected ") << g.n_vertices() << '\n';
    char buf[64];
    for (const auto& e : g.edges()) {
        std::snprintf(buf, sizeof buf, "%.17g", e.w);
        os << e.u << ' ' << e.v << ' ' << buf << '\n';
    }
}

inline Graph read_edge_list(std::istream& is) {
    std::string line;
    auto next_line = [&]() -> bool {
        while (std::getline(is, line)) {
            auto p = line.find_first_not_of(" \t\r");
            if (p == std::string::npos || line[p] == '#') continue;
            return true;
        }
        return false;
    };
    if (!next_line()) throw std::invalid_argument("edge list: missing header");
    std::istringstream hs(line);
    std::string kind;
    long long n = -1;
    if (!(hs >> kind >> n) || n < 0 || (kind != "directed" && kind != "undirected"))
        throw std::invalid_argument("edge list: bad header '" + line + "'");
    Graph g(static_cast<std::size_t>(n), kind == "directed");
    std::size_t lineno = 1;
    while (next_line()) {
        ++lineno;
        std::istringstream ls(line);
        long long u, v;
        double w = 1.0;
        if (!(ls >> u >> v)) throw std::invalid_argument("edge list: bad edge line '" + line + "'");
        if (!(ls >> w)) w = 1.0;
        if (u < 0 || v < 0) throw std::invalid_argument("edge list: negative vertex index");
        g.add_edge(static_cast<std::size_t>(u), static_cast<std::size_t>(v), w);
    }
    return g;
}

inline Graph load_edge_list(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open edge list: " + path);
    return read_edge_list(in);
}

inline void save_edge_list(const Graph& g, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write edge list: " + path);
    write_edge_list(g, out);
}

} // namespace nlsp
