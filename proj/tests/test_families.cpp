#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "nlsp/families.hpp"
#include "nlsp/generators.hpp"
#include "nlsp/repair.hpp"
#include "nlsp/spectral.hpp"

using namespace nlsp;

namespace {

bool source_sink_free(const Graph& g) {
    auto in = g.in_degrees(), out = g.out_degrees();
    for (std::size_t v = 0; v < g.n_vertices(); ++v)
        if (in[v] == 0 || out[v] == 0) return false;
    return true;
}

bool no_bidirected_pairs(const Graph& g) {
    for (const auto& e : g.edges())
        if (g.has_edge(e.v, e.u)) return false;
    return true;
}

FamilySpec spec_of(const std::string& family, std::vector<long long> schedule) {
    FamilySpec s;
    s.family = family;
    s.schedule = std::move(schedule);
    s.matrix_kind = family_info(family).directed ? MatrixKind::incidence : MatrixKind::laplacian;
    return s;
}

} // namespace

TEST(Generators, HypercubeIsRegular) {
    auto g = gen::hypercube(3);
    EXPECT_EQ(g.n_vertices(), 8u);
    EXPECT_EQ(g.n_edges(), 12u);
    for (auto d : g.degrees()) EXPECT_EQ(d, 3u);
}

TEST(Generators, GeneralizedHypercubeSpecialCases) {
    auto k3 = gen::generalized_hypercube(3, 1);
    EXPECT_EQ(k3.n_vertices(), 3u);
    EXPECT_EQ(k3.n_edges(), 3u);
    EXPECT_EQ(gen::generalized_hypercube(2, 4).n_edges(), gen::hypercube(4).n_edges());
    auto g32 = laplacian(gen::generalized_hypercube(3, 2));
    EXPECT_EQ(g32.order(), 9u);
    EXPECT_NEAR(condition_number(g32), 2.0, 1e-10);
    EXPECT_EQ(sparsity(g32), 5u);
}

TEST(Generators, DirectedHypercubeHasOneSourceAndOneSink) {
    auto g = gen::directed_hypercube(3);
    EXPECT_EQ(g.n_vertices(), 8u);
    EXPECT_EQ(g.n_edges(), 12u);
    EXPECT_EQ(g.n_vertices() + g.n_edges(), 20u);
    auto in = g.in_degrees(), out = g.out_degrees();
    std::vector<std::size_t> sources, sinks;
    for (std::size_t v = 0; v < 8; ++v) {
        if (in[v] == 0) sources.push_back(v);
        if (out[v] == 0) sinks.push_back(v);
    }
    EXPECT_EQ(sources, std::vector<std::size_t>{0});
    EXPECT_EQ(sinks, std::vector<std::size_t>{7});
}

TEST(Generators, PaleyNeedsPrimeThreeModFour) {
    auto g = gen::paley(7);
    EXPECT_EQ(g.n_edges(), 21u);
    EXPECT_TRUE(no_bidirected_pairs(g));
    EXPECT_THROW(gen::paley(5), std::invalid_argument);
    EXPECT_THROW(gen::paley(9), std::invalid_argument);
}

TEST(Generators, EveryCatalogFamilyBuildsASimpleGraph) {
    for (const auto& f : family_catalog()) {
        if (f.id == "generalized_hypercube") continue;
        long long n = f.id == "paley" ? 7 : (f.id == "sudoku" ? 2 : 3);
        if (f.id == "hypercube" || f.id == "directed_hypercube" || f.id == "grid_2d_square") n = 3;
        if (f.id == "random_regular_expander" || f.id == "random_regular" || f.id == "harary_kn" || f.id == "gnp" ||
            f.id == "mgg" || f.id == "gaussian_random_partition" || f.id == "directed_gaussian_random_partition" ||
            f.id == "planted_partition" || f.id == "directed_planted_partition" || f.id == "barabasi_albert" ||
            f.id == "newman_watts_strogatz" || f.id == "uniform_random_intersection" || f.id == "scale_free" ||
            f.id == "random_uniform_kout" || f.id == "harary_mn" || f.id == "turan" || f.id == "ring_of_cliques")
            n = 10;
        auto s = spec_of(f.id, {n});
        FamilyInstance inst;
        ASSERT_NO_THROW(inst = generate(s, n)) << f.id;
        EXPECT_EQ(inst.graph.directed(), f.directed) << f.id;
        EXPECT_GT(inst.n_vertices, 0u) << f.id;
        if (f.directed) {
            EXPECT_TRUE(no_bidirected_pairs(inst.graph)) << f.id;
            EXPECT_EQ(inst.system_size, inst.n_vertices + inst.n_edges) << f.id;
        } else {
            EXPECT_EQ(inst.system_size, inst.n_vertices) << f.id;
        }
    }
}

TEST(Families, ScheduleEnumeration) {
    std::vector<long long> sched;
    for (long long n = 2; n <= 14; ++n) sched.push_back(n);
    auto s = spec_of("hypercube", sched);
    s.schedule = {2, 14};
    auto two = enumerate_schedule(s);
    EXPECT_EQ(two.front().n_vertices, 4u);
    EXPECT_EQ(two.back().n_vertices, 16384u);
    s.schedule = sched;
    EXPECT_NO_THROW(s.validate());
    EXPECT_EQ(s.schedule.size(), 13u);
    s.schedule.clear();
    EXPECT_THROW(enumerate_schedule(s), std::invalid_argument);
    EXPECT_THROW(generate(spec_of("hypercube", {3}), 4), std::invalid_argument);
}

TEST(Families, FixedSeedRerunIsIdentical) {
    for (std::string fam : {"gnp", "barabasi_albert", "random_geometric", "gnr", "scale_free"}) {
        auto s = spec_of(fam, {30});
        s.seed = 99;
        EXPECT_EQ(generate(s, 30).graph, generate(s, 30).graph) << fam;
        auto t = s;
        t.seed = 100;
        EXPECT_NE(generate(s, 30).seed, generate(t, 30).seed) << fam;
    }
    EXPECT_EQ(generate(spec_of("hypercube", {4}), 4).seed, 0u);
}

TEST(Families, SpecValidation) {
    auto s = spec_of("hypercube", {3, 2});
    EXPECT_THROW(s.validate(), std::invalid_argument);
    s = spec_of("hypercube", {3});
    s.matrix_kind = MatrixKind::incidence;
    EXPECT_THROW(s.validate(), std::invalid_argument);
    s = spec_of("hypercube", {3});
    s.repair = true;
    EXPECT_THROW(s.validate(), std::invalid_argument);
    s = spec_of("ladder", {3});
    s.weight_rule = WeightRule::log_rule;
    EXPECT_THROW(s.validate(), std::invalid_argument);
    EXPECT_THROW(family_info("no_such_family"), std::invalid_argument);
}

TEST(Weights, HypercubeRules) {
    Graph g(4, false);
    g.add_edge(0, 1);
    g.add_edge(2, 3);
    auto lg = apply_weight_rule(g, WeightRule::log_rule, "hypercube");
    EXPECT_NEAR(lg.edges()[0].w, std::log(6.0), 1e-15);
    EXPECT_NEAR(lg.edges()[0].w, 1.7918, 1e-4);
    EXPECT_EQ(apply_weight_rule(g, WeightRule::linear_rule, "hypercube").edges()[1].w, 4.0);
    EXPECT_EQ(apply_weight_rule(g, WeightRule::quadratic_rule, "hypercube").edges()[1].w, 10.0);
    EXPECT_EQ(apply_weight_rule(g, WeightRule::unit, "hypercube"), g);
}

TEST(Weights, MggRulesUseLargerTuple) {
    // n = 3: vertex (r, s) has index 3 r + s; edge (0,0)-(1,2) gives k = 3*1 + 2 + 1 = 6.
    Graph g(9, false);
    g.add_edge(0, 5);
    EXPECT_NEAR(apply_weight_rule(g, WeightRule::log_rule, "mgg").edges()[0].w, std::log(6.0) + 1.0, 1e-15);
    EXPECT_EQ(apply_weight_rule(g, WeightRule::linear_rule, "mgg").edges()[0].w, 6.0);
    EXPECT_EQ(apply_weight_rule(g, WeightRule::quadratic_rule, "mgg").edges()[0].w, 36.0);
    EXPECT_THROW(apply_weight_rule(g, WeightRule::linear_rule, "ladder"), std::invalid_argument);
}

TEST(Repair, PathBecomesThreeCycle) {
    Graph g(3, true);
    g.add_edge(0, 1);
    g.add_edge(1, 2);
    auto r = repair_sources_sinks(g, 1);
    EXPECT_EQ(r.graph.n_edges(), 3u);
    EXPECT_TRUE(r.graph.has_edge(2, 0));
    EXPECT_TRUE(source_sink_free(r.graph));
}

TEST(Repair, CycleUnchanged) {
    Graph g(4, true);
    for (std::size_t i = 0; i < 4; ++i) g.add_edge(i, (i + 1) % 4);
    auto r = repair_sources_sinks(g, 5);
    EXPECT_EQ(r.graph, g);
    EXPECT_EQ(r.message, "There are no source and sink vertices in the graph");
}

TEST(Repair, TwoSourcesOneSink) {
    // 0 -> 2 <- 1, 2 -> 3 -> 4 and 4 -> 2 closes a cycle; 0 and 1 are sources, 5 is a sink fed by 3.
    Graph g(6, true);
    g.add_edge(0, 2);
    g.add_edge(1, 2);
    g.add_edge(2, 3);
    g.add_edge(3, 4);
    g.add_edge(4, 2);
    g.add_edge(3, 5);
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        auto r = repair_sources_sinks(g, seed);
        EXPECT_TRUE(source_sink_free(r.graph)) << seed;
        EXPECT_TRUE(no_bidirected_pairs(r.graph)) << seed;
        EXPECT_EQ(r.graph.n_vertices(), 6u);
    }
}

TEST(Repair, PropertiesOnRandomDigraphs) {
    Rng rng(77);
    for (int t = 0; t < 60; ++t) {
        auto n = 3 + static_cast<long long>(rng.below(30));
        auto g = gen::directed_gnp(n, 0.05 + 0.3 * rng.uniform(), rng);
        auto r = repair_sources_sinks(g, static_cast<std::uint64_t>(t));
        EXPECT_TRUE(source_sink_free(r.graph));
        EXPECT_TRUE(no_bidirected_pairs(r.graph));
        EXPECT_EQ(r.graph.n_vertices(), g.n_vertices());
        EXPECT_EQ(repair_sources_sinks(r.graph, 3).graph, r.graph);
        for (const auto& e : g.edges()) EXPECT_TRUE(r.graph.adjacent(e.u, e.v));
    }
}

TEST(Repair, RejectsUndirectedAndTinyInputs) {
    EXPECT_THROW(repair_sources_sinks(Graph(4, false), 0), std::invalid_argument);
    EXPECT_THROW(repair_sources_sinks(Graph(2, true), 0), std::invalid_argument);
}

TEST(Families, RepairVariantHasNoSourcesOrSinks) {
    for (std::string fam : {"directed_hypercube", "gn", "gnc", "directed_gnp", "random_uniform_kout"}) {
        long long n = fam == "directed_hypercube" ? 4 : 25;
        auto s = spec_of(fam, {n});
        s.repair = true;
        auto inst = generate(s, n);
        EXPECT_TRUE(source_sink_free(inst.graph)) << fam;
    }
}
