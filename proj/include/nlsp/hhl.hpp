#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <numbers>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/FFT>

#include "nlsp/graph.hpp"

namespace nlsp {

inline constexpr int hhl_max_qubits = 22;

//! Clock of n_r qubits, U = exp(i A t). Scaled eigenvalues are lambda * t / (2 pi).
//! PSD mode reads clock value k as k / 2^n_r; signed mode reads values >= 2^(n_r - 1)
//! as (k - 2^n_r) / 2^n_r (two's complement).
struct HhlConfig {
    int n_r = 6;
    double t = 0.0;
    double C = 0.0;
    bool signed_mode = false;
    //! Absent: exact amplitudes. Present: overlaps are estimated from SWAP-test shots.
    std::optional<std::size_t> shots;
    std::uint64_t seed = 0x48484cULL;
};

//! Evolution time mapping an upper spectral bound d_max just below the top of the clock
//! range: lambda~(d_max) = 1 - 2^-n_r, or half of that in signed mode.
inline double time_from_lambda_max(int n_r, double d_max, bool signed_mode) {
    if (!(d_max > 0.0)) throw std::invalid_argument("spectral bound must be positive");
    double top = 1.0 - std::ldexp(1.0, -n_r);
    if (signed_mode) top *= 0.5;
    return 2.0 * std::numbers::pi * top / d_max;
}

//! Evolution time placing a lower bound d_min of the nonzero spectrum on the first clock bin.
//! Valid while d_max / 2^n_r < d_min (2 d_max / 2^n_r in signed mode).
inline double time_from_lambda_min(int n_r, double d_min) {
    if (!(d_min > 0.0)) throw std::invalid_argument("spectral bound must be positive");
    return 2.0 * std::numbers::pi * std::ldexp(1.0, -n_r) / d_min;
}

//! t from the upper bound, C = 0.9 * lambda~(lambda_lo) with lambda_lo a lower bound of the
//! nonzero spectrum magnitudes.
inline HhlConfig default_hhl_config(int n_r, double lambda_lo, double lambda_hi, bool signed_mode = false) {
    if (!(lambda_lo > 0.0) || lambda_lo > lambda_hi) throw std::invalid_argument("need 0 < lambda_lo <= lambda_hi");
    HhlConfig cfg;
    cfg.n_r = n_r;
    cfg.signed_mode = signed_mode;
    cfg.t = time_from_lambda_max(n_r, lambda_hi, signed_mode);
    cfg.C = 0.9 * lambda_lo * cfg.t / (2.0 * std::numbers::pi);
    return cfg;
}

struct HhlOutcome {
    //! Probability of ancilla 1 with the clock back at all zeros.
    double p_success = 0.0;
    Eigen::VectorXd solution_state;
    //! t / (2 pi C).
    double scale = 0.0;
    double b_norm = 1.0;
    //! Probability of ancilla 1 over all clock values.
    double p_ancilla = 0.0;
    //! P(clock = 0 | ancilla = 1) after the uncompute.
    double clock_zero_probability = 0.0;
    int n_b = 0;
    int n_r = 0;
    std::optional<std::size_t> shots;
    std::uint64_t seed = 0;

    //! Unnormalized solution estimate of A x = b.
    Eigen::VectorXd reconstruct() const { return b_norm * scale * std::sqrt(p_success) * solution_state; }
};

namespace detail {

inline int log2_exact(std::size_t n) {
    if (n == 0 || (n & (n - 1)) != 0) throw std::invalid_argument("matrix order must be a power of two (pad first)");
    int k = 0;
    while ((std::size_t{1} << k) < n) ++k;
    return k;
}

inline double clock_value(std::size_t k, std::size_t M, bool signed_mode) {
    double v = static_cast<double>(k) / static_cast<double>(M);
    if (signed_mode && 2 * k >= M) v -= 1.0;
    return v;
}

//! Exact simulation in the eigenbasis of A. The basis change acts on the state register
//! only and commutes with every clock and ancilla gate, so the circuit is reproduced
//! exactly: H on the clock, controlled U^(2^q), inverse QFT.
struct QpeState {
    Eigen::VectorXd lambda;
    Eigen::MatrixXd vectors;
    Eigen::VectorXd beta;
    //! Column j holds the clock amplitudes attached to eigenvector j.
    Eigen::MatrixXcd clock;
    int n_b = 0;
    std::size_t M = 0;
};

inline void validate_config(const HhlConfig& cfg, int n_b) {
    if (cfg.n_r < 1) throw std::invalid_argument("n_r must be at least 1");
    if (n_b + cfg.n_r + 1 > hhl_max_qubits)
        throw std::invalid_argument("statevector limit exceeded: n_b + n_r + 1 > " + std::to_string(hhl_max_qubits));
    if (!(cfg.t > 0.0) || !std::isfinite(cfg.t)) throw std::invalid_argument("evolution time must be positive");
    if (!(cfg.C > 0.0) || !std::isfinite(cfg.C)) throw std::invalid_argument("C must be positive");
}

inline QpeState run_qpe(const SymmetricMatrix& a, const Eigen::VectorXd& b, const HhlConfig& cfg) {
    QpeState q;
    q.n_b = log2_exact(a.order());
    validate_config(cfg, q.n_b);
    if (static_cast<std::size_t>(b.size()) != a.order()) throw std::invalid_argument("b length does not match A");
    double bn = b.norm();
    if (!(bn > 0.0)) throw std::invalid_argument("b must be nonzero");

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a.to_dense());
    if (es.info() != Eigen::Success) throw std::runtime_error("eigendecomposition failed");
    q.lambda = es.eigenvalues();
    q.vectors = es.eigenvectors();
    q.beta = q.vectors.transpose() * (b / bn);

    const double two_pi = 2.0 * std::numbers::pi;
    const double lam_scale = std::max(1.0, q.lambda.cwiseAbs().maxCoeff());
    double min_nz = std::numeric_limits<double>::infinity();
    for (Eigen::Index j = 0; j < q.lambda.size(); ++j) {
        double lt = q.lambda(j) * cfg.t / two_pi;
        if (cfg.signed_mode) {
            if (!(std::abs(lt) < 0.5)) throw std::invalid_argument("scaled eigenvalue outside (-1/2, 1/2)");
        } else if (lt < -1e-12 || !(lt < 1.0)) {
            throw std::invalid_argument("scaled eigenvalue outside [0, 1); use signed mode for indefinite A");
        }
        if (std::abs(q.lambda(j)) > 1e-9 * lam_scale) min_nz = std::min(min_nz, std::abs(lt));
    }
    if (cfg.C > min_nz * (1.0 + 1e-12)) throw std::invalid_argument("C exceeds the smallest nonzero scaled eigenvalue");

    q.M = std::size_t{1} << cfg.n_r;
    const auto M = q.M;
    const double inv_sqrt_m = 1.0 / std::sqrt(static_cast<double>(M));
    q.clock.resize(static_cast<Eigen::Index>(M), q.lambda.size());
    Eigen::FFT<double> fft;
    std::vector<std::complex<double>> in(M), out(M);
    for (Eigen::Index j = 0; j < q.lambda.size(); ++j) {
        // H^n_r then phase exp(i lambda t c) on clock value c, the product of the controlled U^(2^q).
        for (std::size_t c = 0; c < M; ++c)
            in[c] = std::polar(inv_sqrt_m, q.lambda(j) * cfg.t * static_cast<double>(c));
        // Inverse QFT: |c> -> M^-1/2 sum_k exp(-2 pi i c k / M) |k>.
        fft.fwd(out, in);
        for (std::size_t k = 0; k < M; ++k) q.clock(static_cast<Eigen::Index>(k), j) = out[k] * inv_sqrt_m;
    }
    return q;
}

} // namespace detail

//! Statevector HHL: QPE, eigenvalue-inverting RY on the ancilla, QPE^dagger, post-selection
//! on ancilla 1 and clock 0. Clock value 0 gets angle 0, so null-space components never
//! reach the success branch and the result approximates A^+ b.
inline HhlOutcome hhl_solve(const SymmetricMatrix& a, const Eigen::VectorXd& b, const HhlConfig& cfg) {
    auto q = detail::run_qpe(a, b, cfg);
    const auto M = q.M;
    const double inv_sqrt_m = 1.0 / std::sqrt(static_cast<double>(M));

    std::vector<double> ratio(M, 0.0);
    for (std::size_t k = 1; k < M; ++k)
        ratio[k] = std::clamp(cfg.C / detail::clock_value(k, M, cfg.signed_mode), -1.0, 1.0);

    Eigen::FFT<double> fft;
    std::vector<std::complex<double>> in(M), out(M);
    Eigen::VectorXcd amp0(q.lambda.size());
    double p_anc = 0.0;
    for (Eigen::Index j = 0; j < q.lambda.size(); ++j) {
        // Ancilla-1 branch after RY(2 asin(ratio)).
        for (std::size_t k = 0; k < M; ++k) in[k] = q.clock(static_cast<Eigen::Index>(k), j) * ratio[k];
        double branch = 0.0;
        for (const auto& z : in) branch += std::norm(z);
        p_anc += q.beta(j) * q.beta(j) * branch;
        // QFT, inverse controlled phases, then the clock-zero amplitude of H^n_r.
        fft.inv(out, in);
        std::complex<double> zero = 0.0;
        for (std::size_t c = 0; c < M; ++c)
            zero += out[c] * std::sqrt(static_cast<double>(M)) *
                    std::polar(1.0, -q.lambda(j) * cfg.t * static_cast<double>(c));
        amp0(j) = q.beta(j) * zero * inv_sqrt_m;
    }

    HhlOutcome o;
    o.n_b = q.n_b;
    o.n_r = cfg.n_r;
    o.shots = cfg.shots;
    o.seed = cfg.seed;
    o.b_norm = b.norm();
    o.scale = cfg.t / (2.0 * std::numbers::pi * cfg.C);
    o.p_success = amp0.squaredNorm();
    o.p_ancilla = p_anc;
    if (o.p_success < 1e-14) throw std::invalid_argument("b lies in the null space of A (p_success < 1e-14)");
    o.clock_zero_probability = p_anc > 0.0 ? std::min(1.0, o.p_success / p_anc) : 0.0;
    // Real symmetric A and real b give a real success branch up to rounding.
    o.solution_state = q.vectors * amp0.real() / std::sqrt(o.p_success);
    return o;
}

//! Exact mode: <probe|solution> * b_norm * scale * sqrt(p_success), signed. Shot mode: an
//! estimate of |<probe|solution_state>|^2 from a SWAP test, P(0) = (1 + |<.|.>|^2) / 2.
inline double extract_overlap(const HhlOutcome& o, const Eigen::VectorXd& probe) {
    if (probe.size() != o.solution_state.size()) throw std::invalid_argument("probe length does not match the state");
    if (std::abs(probe.norm() - 1.0) > 1e-9) throw std::invalid_argument("probe must be normalized");
    double ov = probe.dot(o.solution_state);
    if (!o.shots) return ov * o.b_norm * o.scale * std::sqrt(o.p_success);
    if (*o.shots == 0) throw std::invalid_argument("shot count must be positive");
    std::mt19937_64 gen(o.seed);
    double p0 = std::clamp(0.5 * (1.0 + ov * ov), 0.0, 1.0);
    std::binomial_distribution<std::size_t> dist(*o.shots, p0);
    double est = 2.0 * static_cast<double>(dist(gen)) / static_cast<double>(*o.shots) - 1.0;
    return std::clamp(est, 0.0, 1.0);
}

//! Clock qubits whose marginal after QPE puts probability >= p_th on one bit value.
//! Qubit q is bit q of the clock value (q = 0 least significant).
inline std::vector<std::pair<int, int>> detect_fixed_clock_qubits(const SymmetricMatrix& a, const Eigen::VectorXd& b,
                                                                  const HhlConfig& cfg, double p_th = 0.8) {
    auto q = detail::run_qpe(a, b, cfg);
    std::vector<double> hist(q.M, 0.0);
    for (Eigen::Index j = 0; j < q.lambda.size(); ++j)
        for (std::size_t k = 0; k < q.M; ++k)
            hist[k] += q.beta(j) * q.beta(j) * std::norm(q.clock(static_cast<Eigen::Index>(k), j));
    std::vector<std::pair<int, int>> fixed;
    for (int bit = 0; bit < cfg.n_r; ++bit) {
        double one = 0.0;
        for (std::size_t k = 0; k < q.M; ++k)
            if ((k >> bit) & 1U) one += hist[k];
        if (one >= p_th) fixed.emplace_back(bit, 1);
        else if (1.0 - one >= p_th) fixed.emplace_back(bit, 0);
    }
    return fixed;
}

struct AqfCertificate {
    bool holds = false;
    std::size_t i = 0, j = 0;
    std::optional<double> eigenvalue;
};

//! delta_i - delta_j is an eigenvector iff L[p,i] = L[p,j] for p outside {i, j} and
//! L[i,i] = L[j,j]; the eigenvalue is then L[i,i] - L[i,j].
inline AqfCertificate check_aqf(const SymmetricMatrix& l, std::size_t i, std::size_t j) {
    if (i == j) throw std::invalid_argument("check_aqf needs i != j");
    if (i >= l.order() || j >= l.order()) throw std::out_of_range("vertex index out of range");
    AqfCertificate c;
    c.i = i;
    c.j = j;
    const double tol = 1e-12 * std::max(1.0, std::max(std::abs(l.entry(i, i)), std::abs(l.entry(j, j))));
    bool ok = std::abs(l.entry(i, i) - l.entry(j, j)) <= tol;
    for (std::size_t p = 0; ok && p < l.order(); ++p)
        if (p != i && p != j && std::abs(l.entry(p, i) - l.entry(p, j)) > tol) ok = false;
    c.holds = ok;
    if (ok) c.eigenvalue = l.entry(i, i) - l.entry(i, j);
    return c;
}

//! Adds two vertices joined to exactly the attach set; the Laplacian of the result has
//! eigenvalue k = |attach| with eigenvector (0, ..., 0, 1, -1).
inline Graph augment_for_aqf(const Graph& g, const std::vector<std::size_t>& attach) {
    detail::require_undirected(g, "augment_for_aqf");
    if (attach.empty()) throw std::invalid_argument("attach set must be nonempty");
    std::vector<std::size_t> sorted = attach;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw std::invalid_argument("attach set contains duplicates");
    const std::size_t n = g.n_vertices();
    if (sorted.back() >= n) throw std::out_of_range("attach vertex out of range");
    Graph h(n + 2, false);
    for (const auto& e : g.edges()) h.add_edge(e.u, e.v, e.w);
    for (std::size_t u : attach) {
        h.add_edge(n, u);
        h.add_edge(n + 1, u);
    }
    Eigen::VectorXd v = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n + 2));
    v(static_cast<Eigen::Index>(n)) = 1.0;
    v(static_cast<Eigen::Index>(n + 1)) = -1.0;
    Eigen::VectorXd r = laplacian(h).multiply(v) - static_cast<double>(attach.size()) * v;
    if (r.norm() > 1e-9) throw std::logic_error("augmented Laplacian failed the eigenvector check");
    return h;
}

//! All-qubit-fixed HHL for an eigenvector input with eigenvalue lambda: p_success = (C / lambda~)^2.
inline double one_qubit_hhl(double lambda, const HhlConfig& cfg, double cutoff = 1e-9) {
    detail::validate_config(cfg, 0);
    if (!(std::abs(lambda) > cutoff)) throw std::invalid_argument("eigenvalue below cutoff");
    double lt = lambda * cfg.t / (2.0 * std::numbers::pi);
    if (cfg.signed_mode ? !(std::abs(lt) < 0.5) : !(lt > 0.0 && lt < 1.0))
        throw std::invalid_argument("scaled eigenvalue out of range");
    if (cfg.C > std::abs(lt) * (1.0 + 1e-12)) throw std::invalid_argument("C exceeds the scaled eigenvalue");
    double r = std::min(1.0, cfg.C / std::abs(lt));
    return r * r;
}

//! RY angle of the one-qubit circuit.
inline double one_qubit_angle(double lambda, const HhlConfig& cfg) {
    return 2.0 * std::asin(std::sqrt(one_qubit_hhl(lambda, cfg)));
}

//! b^T x for an eigenvector b with |b|^2 = b_norm_sq, from the one-qubit success probability.
inline double one_qubit_reff(double lambda, const HhlConfig& cfg, double b_norm_sq = 2.0) {
    double scale = cfg.t / (2.0 * std::numbers::pi * cfg.C);
    double sign = lambda < 0.0 ? -1.0 : 1.0;
    return sign * b_norm_sq * scale * std::sqrt(one_qubit_hhl(lambda, cfg));
}

//! Dense Moore-Penrose pseudo-inverse applied to a vector.
inline Eigen::VectorXd pinv_solve(const Eigen::MatrixXd& a, const Eigen::VectorXd& b) {
    Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(a);
    return cod.solve(b);
}

namespace detail {
inline Eigen::VectorXd pad_vector(const Eigen::VectorXd& v, std::size_t order) {
    Eigen::VectorXd out = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(order));
    out.head(v.size()) = v;
    return out;
}
//! Identity fill for padded rows, at the smallest scaled value C allows.
inline double padding_fill(const HhlConfig& cfg) { return 2.0 * std::numbers::pi * cfg.C / cfg.t; }

inline Eigen::VectorXd unit_pair(std::size_t n, std::size_t i, std::size_t j) {
    if (i == j) throw std::invalid_argument("effective resistance needs i != j");
    if (i >= n || j >= n) throw std::out_of_range("vertex index out of range");
    Eigen::VectorXd b = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
    b(static_cast<Eigen::Index>(i)) = 1.0;
    b(static_cast<Eigen::Index>(j)) = -1.0;
    return b;
}
} // namespace detail

//! (delta_i - delta_j)^T L^+ (delta_i - delta_j) from the dense pseudo-inverse.
inline double effective_resistance_oracle(const Graph& g, std::size_t i, std::size_t j) {
    detail::require_undirected(g, "effective_resistance");
    if (!g.connected()) throw std::invalid_argument("effective resistance needs a connected graph");
    auto b = detail::unit_pair(g.n_vertices(), i, j);
    return b.dot(pinv_solve(laplacian(g).to_dense(), b));
}

//! HHL route: b = delta_i - delta_j sums to zero, so it is orthogonal to the all-ones null
//! vector. r_eff = |b| <b^|x>, read from the overlap with the normalized input.
inline double effective_resistance_hhl(const Graph& g, std::size_t i, std::size_t j, const HhlConfig& cfg) {
    detail::require_undirected(g, "effective_resistance");
    if (!g.connected()) throw std::invalid_argument("effective resistance needs a connected graph");
    auto b = detail::unit_pair(g.n_vertices(), i, j);
    auto l = pad_to_power_of_two(laplacian(g), detail::padding_fill(cfg));
    auto bp = detail::pad_vector(b, l.order());
    auto o = hhl_solve(l, bp, cfg);
    Eigen::VectorXd probe = bp / bp.norm();
    double ov = extract_overlap(o, probe);
    if (cfg.shots) return o.b_norm * o.b_norm * o.scale * std::sqrt(o.p_success) * std::sqrt(ov);
    return bp.norm() * ov;
}

inline double effective_resistance(const Graph& g, std::size_t i, std::size_t j,
                                   const std::optional<HhlConfig>& hhl = std::nullopt) {
    return hhl ? effective_resistance_hhl(g, i, j, *hhl) : effective_resistance_oracle(g, i, j);
}

struct TrafficFlow {
    Eigen::VectorXd y;
    //! |B y - rhs| of the returned flow.
    double residual = 0.0;
    //! Edges carrying negative flow; nonnegativity is not enforced.
    std::vector<std::size_t> negative_edges;
};

//! Flow conservation B y = -c with c the signed net inflow per vertex (positive where vehicles
//! enter, negative where they leave). Returns the min-norm y via the dilation
//! [[0, B], [B^T, 0]] (Y = (0, y), rhs = (-c, 0)), by pseudo-inverse or by HHL in signed mode.
inline TrafficFlow traffic_flow(const Graph& g, const Eigen::VectorXd& net_inflow,
                                const std::optional<HhlConfig>& hhl = std::nullopt) {
    if (!g.directed()) throw std::invalid_argument("traffic_flow requires a directed graph");
    if (static_cast<std::size_t>(net_inflow.size()) != g.n_vertices())
        throw std::invalid_argument("injection vector length must equal the vertex count");
    const auto nv = static_cast<Eigen::Index>(g.n_vertices());
    const auto ne = static_cast<Eigen::Index>(g.n_edges());
    const RectMatrix bm = incidence_matrix(g);
    const Eigen::MatrixXd bd = bm.to_dense();
    const Eigen::VectorXd rhs = -net_inflow;

    const SymmetricMatrix h = hermitian_dilation(bm);
    Eigen::VectorXd big = Eigen::VectorXd::Zero(nv + ne);
    big.head(nv) = rhs;
    Eigen::VectorXd oracle = pinv_solve(h.to_dense(), big).tail(ne);
    if ((bd * oracle - rhs).norm() > 1e-8) throw std::invalid_argument("imbalanced injections: |By - c| > 1e-8");

    TrafficFlow f;
    if (!hhl || rhs.norm() == 0.0) {
        f.y = oracle;
    } else {
        if (!hhl->signed_mode) throw std::invalid_argument("the dilated system is indefinite; use signed mode");
        auto hp = pad_to_power_of_two(h, detail::padding_fill(*hhl));
        auto o = hhl_solve(hp, detail::pad_vector(big, hp.order()), *hhl);
        f.y = o.reconstruct().segment(nv, ne);
    }
    f.residual = (bd * f.y - rhs).norm();
    for (Eigen::Index e = 0; e < ne; ++e)
        if (f.y(e) < -1e-12) f.negative_edges.push_back(static_cast<std::size_t>(e));
    return f;
}

} // namespace nlsp
