#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "nlsp/edge_list.hpp"
#include "nlsp/generators.hpp"
#include "nlsp/graph.hpp"
#include "nlsp/growth.hpp"
#include "nlsp/rational.hpp"
#include "nlsp/rng.hpp"
#include "nlsp/spectral.hpp"

using namespace nlsp;

namespace {

Graph path(std::size_t n, bool directed = false) {
    Graph g(n, directed);
    for (std::size_t i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1);
    return g;
}

Graph cycle(std::size_t n, bool directed = false) {
    Graph g = path(n, directed);
    g.add_edge(n - 1, 0);
    return g;
}

Eigen::MatrixXd dense(std::initializer_list<std::initializer_list<double>> rows) {
    Eigen::MatrixXd m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.begin()->size()));
    Eigen::Index i = 0;
    for (const auto& r : rows) {
        Eigen::Index j = 0;
        for (double v : r) m(i, j++) = v;
        ++i;
    }
    return m;
}

} // namespace

TEST(Rational, NormalizesAndCompares) {
    EXPECT_EQ(Rational(2, 4), Rational(1, 2));
    EXPECT_EQ(Rational(3, -6).str(), "-1/2");
    EXPECT_LT(Rational(1, 3), Rational(1, 2));
    EXPECT_EQ(Rational(1, 2) + Rational(1, 3), Rational(5, 6));
    EXPECT_EQ(Rational::parse("11/2"), Rational(11, 2));
    EXPECT_THROW(Rational(1, 0), std::domain_error);
    EXPECT_THROW(Rational(1) / Rational(0), std::domain_error);
}

TEST(Growth, ParseAndPrintRoundTrip) {
    for (std::string s : {"2^n*n^(3/2)*log(n)", "n^2*ll(n)", "log(n)^(19/2)", "n^(n)", "1"}) {
        auto g = parse_growth(s);
        EXPECT_EQ(parse_growth(g.str()), g) << s;
    }
    EXPECT_EQ(parse_growth("n^2*ll(n)/log^7(n)"), GrowthClass::poly_of(2) * GrowthClass::loglog_of(1) / GrowthClass::log_of(7));
    EXPECT_EQ(parse_growth("c"), GrowthClass::constant());
    EXPECT_THROW(parse_growth("n/n/n"), std::invalid_argument);
    EXPECT_THROW(parse_growth("sin(n)"), std::invalid_argument);
}

TEST(Growth, OrderingIsLexicographicByDominance) {
    auto exp2 = GrowthClass::exponential(2.0);
    EXPECT_GT(compare(exp2, GrowthClass::poly_of(100)), 0);
    EXPECT_GT(compare(GrowthClass::poly_of(Rational(1, 2)), GrowthClass::log_of(50)), 0);
    EXPECT_GT(compare(GrowthClass::log_of(1), GrowthClass::loglog_of(9)), 0);
    EXPECT_EQ(compare(GrowthClass::constant(), GrowthClass::constant()), 0);
    EXPECT_LT(compare(GrowthClass::poly_of(-1), GrowthClass::constant()), 0);
}

TEST(Growth, ComposeWithExponentialSize) {
    // log N with N = 2^n is n up to a constant.
    EXPECT_EQ(GrowthClass::log_of(1).compose(GrowthClass::exponential(2.0)), GrowthClass::index());
    // N^2 with N = n^4 is n^8.
    EXPECT_EQ(GrowthClass::poly_of(2).compose(GrowthClass::poly_of(4)), GrowthClass::poly_of(8));
}

TEST(Rng, DerivedSeedsAreStableAndDistinct) {
    EXPECT_EQ(derive_seed(19, "gnp", 10), derive_seed(19, "gnp", 10));
    EXPECT_NE(derive_seed(19, "gnp", 10), derive_seed(19, "gnp", 11));
    EXPECT_NE(derive_seed(19, "gnp", 10), derive_seed(19, "gn", 10));
    Rng a(5), b(5);
    for (int i = 0; i < 100; ++i) EXPECT_EQ(a.next(), b.next());
    Rng c(1);
    for (int i = 0; i < 1000; ++i) {
        double u = c.uniform();
        EXPECT_GE(u, 0.0);
        EXPECT_LT(u, 1.0);
        EXPECT_LT(c.below(7), 7u);
    }
}

TEST(Graph, RejectsLoopsDuplicatesAndBidirectedPairs) {
    Graph g(3, true);
    g.add_edge(0, 1);
    EXPECT_THROW(g.add_edge(0, 1), std::invalid_argument);
    EXPECT_THROW(g.add_edge(1, 0), std::invalid_argument);
    EXPECT_THROW(g.add_edge(2, 2), std::invalid_argument);
    EXPECT_THROW(g.add_edge(0, 3), std::out_of_range);
    EXPECT_THROW(g.add_edge(1, 2, 0.0), std::invalid_argument);
    EXPECT_FALSE(g.try_add_edge(1, 0));
}

TEST(Graph, AdjacencyMatrixExamples) {
    Graph k3(3, false);
    k3.add_edge(0, 1), k3.add_edge(0, 2), k3.add_edge(1, 2);
    EXPECT_EQ(adjacency_matrix(k3).to_dense(), dense({{0, 1, 1}, {1, 0, 1}, {1, 1, 0}}));
    auto q = adjacency_matrix(path(3));
    EXPECT_EQ(q.entry(0, 1), 1.0);
    EXPECT_EQ(q.entry(1, 2), 1.0);
    EXPECT_EQ(q.entry(0, 2), 0.0);
    Graph w(2, false);
    w.add_edge(0, 1, 2.5);
    EXPECT_EQ(adjacency_matrix(w).entry(0, 1), 2.5);
}

TEST(Graph, DegreeMatrixExamples) {
    EXPECT_EQ(degree_matrix(gen::complete(4)).to_dense(), 3.0 * Eigen::MatrixXd::Identity(4, 4));
    EXPECT_EQ(degree_matrix(path(3)).to_dense().diagonal(), Eigen::Vector3d(1, 2, 1));
    Graph star(5, false);
    for (std::size_t i = 1; i < 5; ++i) star.add_edge(0, i);
    EXPECT_EQ(degree_matrix(star).entry(0, 0), 4.0);
}

TEST(Graph, LaplacianExamples) {
    EXPECT_EQ(laplacian(path(3)).to_dense(), dense({{1, -1, 0}, {-1, 2, -1}, {0, -1, 1}}));
    EXPECT_EQ(laplacian(path(2)).to_dense(), dense({{1, -1}, {-1, 1}}));
    EXPECT_EQ(laplacian(cycle(4)).to_dense(), dense({{2, -1, 0, -1}, {-1, 2, -1, 0}, {0, -1, 2, -1}, {-1, 0, -1, 2}}));
    EXPECT_THROW(laplacian(path(3, true)), std::invalid_argument);
}

TEST(Graph, LaplacianRowsSumToZeroOnRandomGraphs) {
    Rng rng(3);
    for (int t = 0; t < 20; ++t) {
        auto g = gen::gnp(5 + static_cast<long long>(rng.below(20)), 0.3, rng);
        for (std::size_t i = 0; i < g.n_edges(); ++i) g.set_weight(i, 0.1 + rng.uniform());
        auto l = laplacian(g);
        for (double s : l.row_sums()) EXPECT_NEAR(s, 0.0, 1e-12);
        Eigen::MatrixXd d = l.to_dense();
        EXPECT_TRUE(d.isApprox(d.transpose()));
    }
}

TEST(Graph, IncidenceMatrixExamples) {
    auto b = incidence_matrix(cycle(4, true)).to_dense();
    EXPECT_EQ(b, dense({{-1, 0, 0, 1}, {1, -1, 0, 0}, {0, 1, -1, 0}, {0, 0, 1, -1}}));
    Graph e(2, true);
    e.add_edge(0, 1);
    EXPECT_EQ(incidence_matrix(e).to_dense(), dense({{-1}, {1}}));
    auto p = incidence_matrix(path(3, true)).to_dense();
    EXPECT_EQ(p.rows(), 3);
    EXPECT_EQ(p.cols(), 2);
    EXPECT_EQ(p.colwise().sum(), Eigen::RowVector2d::Zero());
    EXPECT_THROW(incidence_matrix(path(3)), std::invalid_argument);
}

TEST(Graph, HermitianDilationExamples) {
    auto one = hermitian_dilation(RectMatrix::from_dense(dense({{1}})));
    EXPECT_EQ(one.to_dense(), dense({{0, 1}, {1, 0}}));
    auto s = full_spectrum(one);
    EXPECT_NEAR(s.front(), -1.0, 1e-12);
    EXPECT_NEAR(s.back(), 1.0, 1e-12);
    auto z = hermitian_dilation(RectMatrix::from_dense(Eigen::MatrixXd::Zero(2, 3)));
    EXPECT_EQ(z.order(), 5u);
    EXPECT_TRUE(z.to_dense().isZero());
}

TEST(Graph, DilationEigenvaluesArePlusMinusSingularValues) {
    Rng rng(11);
    for (int t = 0; t < 5; ++t) {
        Eigen::MatrixXd m(3 + t, 2 + t);
        for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = rng.normal(0.0, 1.0);
        auto h = hermitian_dilation(RectMatrix::from_dense(m));
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
        std::vector<double> expect;
        for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i) {
            expect.push_back(svd.singularValues()(i));
            expect.push_back(-svd.singularValues()(i));
        }
        for (Eigen::Index i = svd.singularValues().size(); i < m.rows(); ++i) expect.push_back(0.0);
        std::sort(expect.begin(), expect.end());
        auto got = full_spectrum(h);
        ASSERT_EQ(got.size(), expect.size());
        for (std::size_t i = 0; i < got.size(); ++i) EXPECT_NEAR(got[i], expect[i], 1e-10);
    }
}

TEST(Graph, PadToPowerOfTwo) {
    auto l3 = laplacian(path(3));
    auto p = pad_to_power_of_two(l3, 1.0);
    EXPECT_EQ(p.order(), 4u);
    EXPECT_EQ(p.entry(3, 3), 1.0);
    EXPECT_EQ(p.entry(0, 3), 0.0);
    auto l4 = laplacian(cycle(4));
    EXPECT_EQ(pad_to_power_of_two(l4, 7.0).to_dense(), l4.to_dense());
    auto p5 = pad_to_power_of_two(laplacian(path(5)), 2.0);
    EXPECT_EQ(p5.order(), 8u);
    for (std::size_t i = 5; i < 8; ++i) EXPECT_EQ(p5.entry(i, i), 2.0);
}

TEST(EdgeList, RoundTripsDirectedAndWeighted) {
    Graph g(4, true);
    g.add_edge(0, 1, 1.5);
    g.add_edge(2, 1, 0.1);
    g.add_edge(3, 0);
    std::stringstream ss;
    write_edge_list(g, ss);
    EXPECT_EQ(read_edge_list(ss), g);
    std::stringstream bad("undirected 3\n0 0 1\n");
    EXPECT_THROW(read_edge_list(bad), std::invalid_argument);
}

TEST(Spectral, FullSpectrumExamples) {
    auto k4 = full_spectrum(laplacian(gen::complete(4)));
    std::vector<double> want = {0, 4, 4, 4};
    for (std::size_t i = 0; i < 4; ++i) EXPECT_NEAR(k4[i], want[i], 1e-12);
    auto cube = full_spectrum(laplacian(gen::hypercube(3)));
    want = {0, 2, 2, 2, 4, 4, 4, 6};
    for (std::size_t i = 0; i < 8; ++i) EXPECT_NEAR(cube[i], want[i], 1e-12);
    SymmetricMatrix one(1);
    one.set(0, 0, 3.5);
    EXPECT_EQ(full_spectrum(one), std::vector<double>{3.5});
}

TEST(Spectral, ExtremesAndConditionNumbers) {
    auto e = extreme_eigs(laplacian(cycle(4)));
    EXPECT_NEAR(e.lambda_min_nz, 2.0, 1e-12);
    EXPECT_NEAR(e.lambda_max, 4.0, 1e-12);
    EXPECT_NEAR(condition_number(laplacian(path(2))), 1.0, 1e-12);
    for (long long n : {3, 5, 9}) EXPECT_NEAR(condition_number(laplacian(gen::complete(n))), 1.0, 1e-10);
    for (long long n = 2; n <= 8; ++n) EXPECT_NEAR(condition_number(laplacian(gen::hypercube(n))), n, 1e-9 * n);
    EXPECT_THROW(condition_number(SymmetricMatrix(3)), EffectivelyZeroMatrix);
}

TEST(Spectral, ScalingWeightsLeavesKappaAndSparsityUnchanged) {
    Rng rng(4);
    std::vector<Graph> graphs = {gen::hypercube(4), gen::complete(6), cycle(7), gen::ladder(6),
                                 gen::gnp(20, 0.4, rng)};
    for (const auto& g : graphs) {
        auto base = measure(laplacian(g), MatrixKind::laplacian);
        for (double c : {0.5, 3.0}) {
            auto r = measure(laplacian(g).scaled(c), MatrixKind::laplacian);
            EXPECT_NEAR(r.kappa, base.kappa, 1e-9 * base.kappa);
            EXPECT_EQ(r.sparsity, base.sparsity);
        }
    }
}

TEST(Spectral, SparsityExamples) {
    EXPECT_EQ(sparsity(laplacian(gen::complete(4))), 4u);
    EXPECT_EQ(sparsity(laplacian(gen::grid(5, 5))), 5u);
    Graph g(5, true);
    for (std::size_t v = 1; v < 5; ++v) g.add_edge(0, v);
    g.add_edge(1, 2);
    auto b = incidence_matrix(g);
    auto bd = b.to_dense();
    std::size_t row = 0, col = 0;
    for (Eigen::Index i = 0; i < bd.rows(); ++i) row = std::max<std::size_t>(row, (bd.row(i).array() != 0).count());
    for (Eigen::Index j = 0; j < bd.cols(); ++j) col = std::max<std::size_t>(col, (bd.col(j).array() != 0).count());
    EXPECT_EQ(sparsity(hermitian_dilation(b)), std::max(row, col));
}

TEST(Spectral, CutoffSensitivityOnWideGap) {
    auto c = cutoff_sensitivity(laplacian(gen::complete(8)));
    EXPECT_EQ(c.delta, 0.0);
    EXPECT_FALSE(c.flagged);
}

TEST(Spectral, LanczosAgreesWithDenseSolve) {
    auto l = laplacian(gen::hypercube(8));
    auto dense_rec = measure(l, MatrixKind::laplacian, default_cutoff, 10000);
    auto iter_rec = measure(l, MatrixKind::laplacian, default_cutoff, 64);
    EXPECT_TRUE(iter_rec.iterative);
    EXPECT_NEAR(iter_rec.kappa, dense_rec.kappa, 1e-6 * dense_rec.kappa);
}
