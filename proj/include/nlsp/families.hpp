#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "nlsp/generators.hpp"
#include "nlsp/graph.hpp"
#include "nlsp/growth.hpp"
#include "nlsp/repair.hpp"
#include "nlsp/rng.hpp"
#include "nlsp/spectral.hpp"

namespace nlsp {

using Params = std::map<std::string, double>;

enum class WeightRule { unit, log_rule, linear_rule, quadratic_rule };

inline std::string to_string(WeightRule r) {
    switch (r) {
    case WeightRule::unit: return "unit";
    case WeightRule::log_rule: return "log_rule";
    case WeightRule::linear_rule: return "linear_rule";
    case WeightRule::quadratic_rule: return "quadratic_rule";
    }
    return "unit";
}

inline WeightRule weight_rule_from_string(const std::string& s) {
    if (s == "unit") return WeightRule::unit;
    if (s == "log_rule" || s == "log") return WeightRule::log_rule;
    if (s == "linear_rule" || s == "linear") return WeightRule::linear_rule;
    if (s == "quadratic_rule" || s == "quadratic") return WeightRule::quadratic_rule;
    throw std::invalid_argument("unknown weight rule: " + s);
}

inline constexpr std::uint64_t undirected_default_seed = 23;
inline constexpr std::uint64_t directed_default_seed = 19;

//! Output of a single construction before weights, repair and bookkeeping.
struct Built {
    Graph graph;
    std::vector<std::string> warnings;
};

struct FamilyInfo {
    std::string id;
    bool directed = false;
    bool random = false;
    std::uint64_t default_seed = 0;
    Params defaults;
    std::function<GrowthClass(const Params&)> size_growth;
    std::function<Built(const Params&, long long n, Rng& rng)> build;
};

namespace detail {

inline double param(const Params& p, const std::string& key) {
    auto it = p.find(key);
    if (it == p.end()) throw std::invalid_argument("missing family parameter: " + key);
    return it->second;
}
inline long long iparam(const Params& p, const std::string& key) {
    double v = param(p, key);
    if (v != std::floor(v)) throw std::invalid_argument("parameter " + key + " must be an integer");
    return static_cast<long long>(v);
}

inline GrowthClass n_pow(long long d) { return GrowthClass::poly_of(d); }

//! Second largest adjacency eigenvalue <= 2 sqrt(k - 1) and connected.
inline bool ramanujan(const Graph& g, long long k, std::optional<bool>& checked) {
    if (!g.connected()) return false;
    if (g.n_vertices() > default_dense_limit()) {
        checked = false;
        return true;
    }
    auto ev = full_spectrum(adjacency_matrix(g));
    checked = true;
    return ev.size() < 2 || ev[ev.size() - 2] <= 2.0 * std::sqrt(static_cast<double>(k - 1)) + 1e-9;
}

inline std::vector<FamilyInfo> make_catalog() {
    using namespace gen;
    std::vector<FamilyInfo> c;
    auto det = [&](std::string id, Params defaults, std::function<GrowthClass(const Params&)> size,
                   std::function<Graph(const Params&, long long)> build, bool directed = false) {
        FamilyInfo f;
        f.id = std::move(id);
        f.directed = directed;
        f.defaults = std::move(defaults);
        f.size_growth = std::move(size);
        f.build = [build](const Params& p, long long n, Rng&) { return Built{build(p, n), {}}; };
        c.push_back(std::move(f));
    };
    auto rnd = [&](std::string id, Params defaults, std::function<GrowthClass(const Params&)> size,
                   std::function<Graph(const Params&, long long, Rng&)> build, bool directed = false,
                   std::uint64_t seed = 0) {
        FamilyInfo f;
        f.id = std::move(id);
        f.directed = directed;
        f.random = true;
        f.default_seed = seed ? seed : (directed ? directed_default_seed : undirected_default_seed);
        f.defaults = std::move(defaults);
        f.size_growth = std::move(size);
        f.build = [build](const Params& p, long long n, Rng& rng) { return Built{build(p, n, rng), {}}; };
        c.push_back(std::move(f));
    };
    auto linear = [](const Params&) { return n_pow(1); };

    det("hypercube", {}, [](const Params&) { return GrowthClass::exponential(2); },
        [](const Params&, long long n) { return hypercube(n); });
    det("generalized_hypercube", {},
        [](const Params& p) {
            if (p.count("m")) return n_pow(iparam(p, "m"));
            return GrowthClass::exponential(param(p, "a"));
        },
        [](const Params& p, long long n) {
            if (p.count("m") && p.count("a")) throw std::invalid_argument("generalized_hypercube fixes exactly one of a, m");
            if (p.count("m")) return generalized_hypercube(n, iparam(p, "m"));
            if (p.count("a")) return generalized_hypercube(iparam(p, "a"), n);
            throw std::invalid_argument("generalized_hypercube needs parameter a or m");
        });
    det("mgg", {}, [](const Params&) { return n_pow(2); },
        [](const Params&, long long n) { return margulis_gabber_galil(n); });
    det("sudoku", {}, [](const Params&) { return n_pow(4); }, [](const Params&, long long n) { return sudoku(n); });
    det("grid_2d", {{"r", 101}}, linear,
        [](const Params& p, long long n) { return grid(iparam(p, "r") + 1, n + 1); });
    det("grid_2d_square", {}, [](const Params&) { return GrowthClass::exponential(4); },
        [](const Params&, long long n) { return grid(1LL << n, 1LL << n); });
    det("hexagonal_lattice", {{"c", 101}}, linear,
        [](const Params& p, long long n) { return hexagonal_lattice(n, iparam(p, "c")); });
    det("triangular_lattice", {{"c", 101}}, linear,
        [](const Params& p, long long n) { return triangular_lattice(n, iparam(p, "c")); });
    det("complete", {}, linear, [](const Params&, long long n) { return complete(n); });
    det("turan", {{"p", 2}}, linear, [](const Params& p, long long n) { return turan(n, iparam(p, "p")); });
    det("harary_kn", {{"k", 3}}, linear, [](const Params& p, long long n) { return harary_kn(n, iparam(p, "k")); });
    det("harary_mn", {{"extra_edges", 1}}, linear,
        [](const Params& p, long long n) { return harary_mn(n, n + iparam(p, "extra_edges")); });
    det("ladder", {}, linear, [](const Params&, long long n) { return ladder(n); });
    det("circular_ladder", {}, linear, [](const Params&, long long n) { return circular_ladder(n); });
    det("ring_of_cliques", {{"clique_size", 3}}, linear,
        [](const Params& p, long long n) { return ring_of_cliques(n, iparam(p, "clique_size")); });
    det("balanced_binary_tree", {}, [](const Params&) { return GrowthClass::exponential(2); },
        [](const Params&, long long n) { return balanced_tree(2, n); });
    det("balanced_ternary_tree", {}, [](const Params&) { return GrowthClass::exponential(3); },
        [](const Params&, long long n) { return balanced_tree(3, n); });
    det("binomial_tree", {}, [](const Params&) { return GrowthClass::exponential(2); },
        [](const Params&, long long n) { return binomial_tree(n); });

    {
        FamilyInfo f;
        f.id = "random_regular_expander";
        f.random = true;
        f.default_seed = undirected_default_seed;
        f.defaults = {{"k", 6}, {"retries", 200}};
        f.size_growth = linear;
        f.build = [](const Params& p, long long n, Rng& rng) {
            long long k = iparam(p, "k"), retries = iparam(p, "retries");
            Built b;
            std::optional<bool> checked;
            for (long long attempt = 0; attempt < retries; ++attempt) {
                b.graph = random_regular(n, k, rng);
                if (ramanujan(b.graph, k, checked)) {
                    if (checked == false) b.warnings.push_back("ramanujan check skipped above the dense limit");
                    return b;
                }
            }
            b.warnings.push_back("ramanujan retries exhausted");
            return b;
        };
        c.push_back(std::move(f));
    }
    rnd("barabasi_albert", {{"k", 3}}, linear,
        [](const Params& p, long long n, Rng& r) { return barabasi_albert(n, iparam(p, "k"), r); });
    rnd("newman_watts_strogatz", {{"g", 3}, {"p", 1.0}}, linear,
        [](const Params& p, long long n, Rng& r) { return newman_watts_strogatz(n, iparam(p, "g"), param(p, "p"), r); },
        false, 19);
    rnd("random_regular", {{"k", 4}}, linear,
        [](const Params& p, long long n, Rng& r) { return random_regular(n, iparam(p, "k"), r); });
    rnd("gnp", {{"p", 0.8}}, linear, [](const Params& p, long long n, Rng& r) { return gnp(n, param(p, "p"), r); });
    rnd("gaussian_random_partition", {{"mean", 5}, {"var", 1}, {"p_in", 0.5}, {"p_out", 0.4}}, linear,
        [](const Params& p, long long n, Rng& r) {
            auto sizes = gaussian_partition_sizes(n, param(p, "mean"), param(p, "var"), r);
            return random_partition(sizes, param(p, "p_in"), param(p, "p_out"), false, r);
        });
    rnd("geographical_threshold", {{"rate", 1}, {"theta", 10}}, linear,
        [](const Params& p, long long n, Rng& r) { return geographical_threshold(n, param(p, "rate"), param(p, "theta"), r); });
    rnd("soft_random_geometric", {{"radius", 1}}, linear,
        [](const Params& p, long long n, Rng& r) { return soft_random_geometric(n, param(p, "radius"), r); });
    rnd("thresholded_random_geometric", {{"radius", 1}, {"rate", 1}, {"theta", 2}}, linear,
        [](const Params& p, long long n, Rng& r) {
            return thresholded_random_geometric(n, param(p, "radius"), param(p, "rate"), param(p, "theta"), r);
        });
    rnd("planted_partition", {{"l", 2}, {"p", 0.5}, {"q", 0.4}}, linear,
        [](const Params& p, long long n, Rng& r) {
            return random_partition(std::vector<long long>(iparam(p, "l"), n), param(p, "p"), param(p, "q"), false, r);
        });
    rnd("random_geometric", {{"radius", 1}}, linear,
        [](const Params& p, long long n, Rng& r) { return random_geometric(n, param(p, "radius"), r); });
    rnd("uniform_random_intersection", {{"second_set_offset", 3}, {"p", 0.6}}, linear,
        [](const Params& p, long long n, Rng& r) {
            return uniform_random_intersection(n, n - iparam(p, "second_set_offset"), param(p, "p"), r);
        });
    rnd("random_lobster", {{"p1", 0.6}, {"p2", 0.5}}, linear,
        [](const Params& p, long long n, Rng& r) { return random_lobster(n, param(p, "p1"), param(p, "p2"), r); }, false,
        19);

    // Directed families: system size N' = N + M.
    det("paley", {}, [](const Params&) { return n_pow(2); }, [](const Params&, long long n) { return paley(n); }, true);
    det("directed_hypercube", {}, [](const Params&) { return GrowthClass::exponential(2) * n_pow(1); },
        [](const Params&, long long n) { return directed_hypercube(n); }, true);
    rnd("gn", {}, linear, [](const Params&, long long n, Rng& r) { return gn(n, r); }, true);
    rnd("gnc", {}, [](const Params&) { return n_pow(1) * GrowthClass::log_of(1); },
        [](const Params&, long long n, Rng& r) { return gnc(n, r); }, true);
    rnd("gnr", {{"p", 0.5}}, linear, [](const Params& p, long long n, Rng& r) { return gnr(n, param(p, "p"), r); }, true);
    rnd("directed_gaussian_random_partition", {{"mean", 5}, {"var", 1}, {"p_in", 0.5}, {"p_out", 0.4}},
        [](const Params&) { return n_pow(2); },
        [](const Params& p, long long n, Rng& r) {
            auto sizes = gaussian_partition_sizes(n, param(p, "mean"), param(p, "var"), r);
            return random_partition(sizes, param(p, "p_in"), param(p, "p_out"), true, r);
        },
        true);
    rnd("directed_planted_partition", {{"group_size", 5}, {"p", 0.8}, {"q", 0.4}}, [](const Params&) { return n_pow(2); },
        [](const Params& p, long long n, Rng& r) {
            return random_partition(std::vector<long long>(n, iparam(p, "group_size")), param(p, "p"), param(p, "q"), true, r);
        },
        true);
    rnd("navigable_small_world", {{"r", 2}}, [](const Params&) { return n_pow(2); },
        [](const Params& p, long long n, Rng& r) { return navigable_small_world(n, param(p, "r"), r); }, true);
    rnd("directed_gnp", {{"p", 0.8}}, [](const Params&) { return n_pow(2); },
        [](const Params& p, long long n, Rng& r) { return directed_gnp(n, param(p, "p"), r); }, true);
    rnd("random_uniform_kout", {{"k", 2}}, linear,
        [](const Params& p, long long n, Rng& r) { return random_uniform_kout(n, iparam(p, "k"), r); }, true);
    rnd("scale_free",
        {{"alpha", 0.41}, {"beta", 0.54}, {"gamma", 0.05}, {"delta_in", 0.2}, {"delta_out", 0.0}}, linear,
        [](const Params& p, long long n, Rng& r) {
            return scale_free(n, param(p, "alpha"), param(p, "beta"), param(p, "gamma"), param(p, "delta_in"),
                              param(p, "delta_out"), r);
        },
        true);
    return c;
}

} // namespace detail

inline const std::vector<FamilyInfo>& family_catalog() {
    static const std::vector<FamilyInfo> catalog = detail::make_catalog();
    return catalog;
}

inline const FamilyInfo& family_info(const std::string& id) {
    for (const auto& f : family_catalog())
        if (f.id == id) return f;
    throw std::invalid_argument("unknown family: " + id);
}

struct FamilySpec {
    std::string family;
    Params params;
    std::optional<std::uint64_t> seed;
    std::vector<long long> schedule;
    MatrixKind matrix_kind = MatrixKind::laplacian;
    WeightRule weight_rule = WeightRule::unit;
    //! Directed families only: apply the source/sink repair to every instance.
    bool repair = false;

    const FamilyInfo& info() const { return family_info(family); }

    //! Family defaults overlaid with the explicit parameters.
    Params effective_params() const {
        Params p = info().defaults;
        for (const auto& [k, v] : params) p[k] = v;
        return p;
    }
    std::uint64_t base_seed() const { return seed.value_or(info().default_seed); }
    std::string label() const { return repair ? family + "+repair" : family; }

    void validate() const {
        const auto& f = info();
        for (std::size_t i = 1; i < schedule.size(); ++i)
            if (schedule[i] <= schedule[i - 1]) throw std::invalid_argument(family + ": schedule must be strictly increasing");
        if (f.directed && matrix_kind != MatrixKind::incidence)
            throw std::invalid_argument(family + ": directed families use the incidence matrix");
        if (!f.directed && matrix_kind != MatrixKind::laplacian)
            throw std::invalid_argument(family + ": undirected families use the Laplacian");
        if (repair && !f.directed) throw std::invalid_argument(family + ": repair applies to directed families only");
        if (weight_rule != WeightRule::unit && family != "hypercube" && family != "mgg")
            throw std::invalid_argument(family + ": weight rules apply to hypercube and mgg only");
    }
};

//! System-size growth in the family index, fixed by the construction.
inline GrowthClass declared_or_fitted_size_growth(const FamilySpec& spec) {
    return spec.info().size_growth(spec.effective_params());
}

struct FamilyInstance {
    FamilySpec spec;
    long long n = 0;
    Graph graph;
    std::size_t n_vertices = 0;
    std::size_t n_edges = 0;
    std::size_t system_size = 0;
    std::uint64_t seed = 0;
    std::vector<std::string> warnings;
};

//! Hypercube weights use j = larger endpoint index: log(j+5), j+1, j^2+1.
//! MGG weights use k = n r + s + 1 for the lexicographically larger endpoint (r, s):
//! log(k)+1, k, k^2. Vertex (r, s) of MGG has index n r + s, so k = larger index + 1.
inline Graph apply_weight_rule(const Graph& g, WeightRule rule, const std::string& family) {
    if (rule == WeightRule::unit) return g;
    if (family != "hypercube" && family != "mgg") throw std::invalid_argument("weight rule/family mismatch: " + family);
    Graph out = g;
    for (std::size_t i = 0; i < g.n_edges(); ++i) {
        double j = static_cast<double>(std::max(g.edges()[i].u, g.edges()[i].v));
        double w = 1.0;
        if (family == "hypercube") {
            switch (rule) {
            case WeightRule::log_rule: w = std::log(j + 5.0); break;
            case WeightRule::linear_rule: w = j + 1.0; break;
            case WeightRule::quadratic_rule: w = j * j + 1.0; break;
            default: break;
            }
        } else {
            double k = j + 1.0;
            switch (rule) {
            case WeightRule::log_rule: w = std::log(k) + 1.0; break;
            case WeightRule::linear_rule: w = k; break;
            case WeightRule::quadratic_rule: w = k * k; break;
            default: break;
            }
        }
        out.set_weight(i, w);
    }
    return out;
}

inline constexpr std::uint64_t repair_salt = 0x7265706169720000ULL;

//! Builds one instance with a derived seed hash(base seed, family id, n).
inline FamilyInstance generate_instance(const FamilySpec& spec, long long n) {
    spec.validate();
    const auto& f = spec.info();
    FamilyInstance inst;
    inst.spec = spec;
    inst.n = n;
    inst.seed = f.random ? derive_seed(spec.base_seed(), f.id, static_cast<std::uint64_t>(n)) : 0;
    Rng rng(inst.seed);
    Built b = f.build(spec.effective_params(), n, rng);
    inst.warnings = std::move(b.warnings);
    Graph g = apply_weight_rule(b.graph, spec.weight_rule, f.id);
    if (spec.repair) {
        auto seed = derive_seed(spec.base_seed() ^ repair_salt, f.id, static_cast<std::uint64_t>(n));
        g = repair_sources_sinks(g, seed).graph;
    }
    inst.graph = std::move(g);
    inst.n_vertices = inst.graph.n_vertices();
    inst.n_edges = inst.graph.n_edges();
    inst.system_size = f.directed ? inst.n_vertices + inst.n_edges : inst.n_vertices;
    return inst;
}

//! Like generate_instance, but n must belong to the schedule.
inline FamilyInstance generate(const FamilySpec& spec, long long n) {
    if (std::find(spec.schedule.begin(), spec.schedule.end(), n) == spec.schedule.end())
        throw std::invalid_argument(spec.family + ": n = " + std::to_string(n) + " is not in the schedule");
    return generate_instance(spec, n);
}

inline std::vector<FamilyInstance> enumerate_schedule(const FamilySpec& spec) {
    if (spec.schedule.empty()) throw std::invalid_argument(spec.family + ": empty schedule");
    std::vector<FamilyInstance> out;
    for (long long n : spec.schedule) out.push_back(generate_instance(spec, n));
    return out;
}

//! Matrix whose spectrum is surveyed: Laplacian, or the Hermitian dilation of the incidence matrix.
inline SymmetricMatrix system_matrix(const FamilyInstance& inst) {
    if (inst.spec.matrix_kind == MatrixKind::laplacian) return laplacian(inst.graph);
    return hermitian_dilation(incidence_matrix(inst.graph));
}

} // namespace nlsp
