#pragma once

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "nlsp/graph.hpp"
#include "nlsp/rng.hpp"

namespace nlsp {

inline constexpr double default_cutoff = 1e-6;
inline constexpr double sensitivity_cutoff = 1e-10;
inline constexpr std::size_t builtin_dense_limit = 3000;

//! Dense eigensolver cap; NLSP_DENSE_LIMIT overrides the built-in 3000.
inline std::size_t default_dense_limit() {
    if (const char* env = std::getenv("NLSP_DENSE_LIMIT")) {
        char* end = nullptr;
        long long v = std::strtoll(env, &end, 10);
        if (end != env && v > 0) return static_cast<std::size_t>(v);
    }
    return builtin_dense_limit;
}

struct DenseLimitExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct EffectivelyZeroMatrix : std::runtime_error {
    using std::runtime_error::runtime_error;
};

//! All eigenvalues in ascending order via a dense symmetric solve.
inline std::vector<double> full_spectrum(const SymmetricMatrix& m, std::size_t dense_limit = default_dense_limit()) {
    if (m.order() > dense_limit)
        throw DenseLimitExceeded("order " + std::to_string(m.order()) + " exceeds the dense limit " +
                                 std::to_string(dense_limit) + "; use extreme_eigs");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m.to_dense(), Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw std::runtime_error("dense eigensolver did not converge");
    const auto& ev = es.eigenvalues();
    return {ev.data(), ev.data() + ev.size()};
}

struct ExtremeEigs {
    double lambda_min_nz = 0.0;
    double lambda_max = 0.0;
    bool iterative = false;
    bool converged = true;
    std::size_t krylov_dim = 0;
};

namespace detail {

inline ExtremeEigs extremes_from_values(const std::vector<double>& values, double cutoff) {
    ExtremeEigs r;
    double mn = std::numeric_limits<double>::infinity(), mx = 0.0;
    for (double l : values) {
        double a = std::abs(l);
        mx = std::max(mx, a);
        if (a > cutoff) mn = std::min(mn, a);
    }
    if (!std::isfinite(mn)) throw EffectivelyZeroMatrix("effectively zero matrix: no eigenvalue above the cutoff");
    r.lambda_min_nz = mn;
    r.lambda_max = mx;
    return r;
}

//! Lanczos with full reorthogonalization. The start vector is M*r, which lies in the
//! range of M, so null-space directions only enter through rounding and stay below
//! the cutoff. Convergence: Ritz residual |beta_k s_ki| <= tol * |theta_max| for both
//! the largest-magnitude and the smallest above-cutoff Ritz values.
inline ExtremeEigs lanczos_extremes(const SymmetricMatrix& m, double cutoff, double tol, std::size_t max_dim) {
    const std::size_t n = m.order();
    max_dim = std::min(max_dim, n);
    Rng rng(0x5eed1a2c05ULL);
    Eigen::VectorXd r(n);
    for (std::size_t i = 0; i < n; ++i) r[i] = rng.uniform() - 0.5;
    Eigen::VectorXd v = m.multiply(r);
    double nv = v.norm();
    if (!(nv > 0.0)) throw EffectivelyZeroMatrix("effectively zero matrix: M r = 0");
    v /= nv;

    Eigen::MatrixXd basis(n, max_dim);
    std::vector<double> alpha, beta;
    ExtremeEigs best;
    best.iterative = true;
    best.converged = false;
    for (std::size_t k = 0; k < max_dim; ++k) {
        basis.col(k) = v;
        Eigen::VectorXd w = m.multiply(v);
        double a = v.dot(w);
        alpha.push_back(a);
        for (int pass = 0; pass < 2; ++pass) {
            Eigen::VectorXd c = basis.leftCols(k + 1).transpose() * w;
            w -= basis.leftCols(k + 1) * c;
        }
        double b = w.norm();
        bool breakdown = b <= 1e-13 * std::max(1.0, std::abs(a));
        bool last = breakdown || k + 1 == max_dim;
        if (last || (k + 1) % 20 == 0) {
            std::size_t dim = k + 1;
            Eigen::VectorXd d(dim), e(dim > 1 ? dim - 1 : 1);
            for (std::size_t i = 0; i < dim; ++i) d[i] = alpha[i];
            for (std::size_t i = 0; i + 1 < dim; ++i) e[i] = beta[i];
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
            es.computeFromTridiagonal(d, e.head(dim - 1), Eigen::ComputeEigenvectors);
            const auto& theta = es.eigenvalues();
            Eigen::Index imax = 0, imin = -1;
            for (Eigen::Index i = 0; i < theta.size(); ++i) {
                if (std::abs(theta[i]) > std::abs(theta[imax])) imax = i;
                if (std::abs(theta[i]) > cutoff && (imin < 0 || std::abs(theta[i]) < std::abs(theta[imin]))) imin = i;
            }
            if (imin < 0) throw EffectivelyZeroMatrix("effectively zero matrix: no Ritz value above the cutoff");
            double scale = std::abs(theta[imax]);
            double bk = breakdown ? 0.0 : b;
            double res_max = std::abs(bk * es.eigenvectors()(dim - 1, imax));
            double res_min = std::abs(bk * es.eigenvectors()(dim - 1, imin));
            best.lambda_max = scale;
            best.lambda_min_nz = std::abs(theta[imin]);
            best.krylov_dim = dim;
            best.converged = res_max <= tol * scale && res_min <= tol * scale;
            if (best.converged || last) return best;
        }
        beta.push_back(b);
        v = w / b;
    }
    return best;
}

} // namespace detail

//! (min |lambda| above cutoff, max |lambda|). Dense up to the limit, Lanczos above it.
inline ExtremeEigs extreme_eigs(const SymmetricMatrix& m, double cutoff = default_cutoff,
                                std::size_t dense_limit = default_dense_limit(), double tol = 1e-8,
                                std::size_t max_krylov = 800) {
    if (!(cutoff > 0.0)) throw std::invalid_argument("cutoff must be positive");
    if (m.order() <= dense_limit) return detail::extremes_from_values(full_spectrum(m, dense_limit), cutoff);
    return detail::lanczos_extremes(m, cutoff, tol, max_krylov);
}

inline double condition_number(const SymmetricMatrix& m, double cutoff = default_cutoff,
                               std::size_t dense_limit = default_dense_limit()) {
    auto e = extreme_eigs(m, cutoff, dense_limit);
    return e.lambda_max / e.lambda_min_nz;
}

//! Largest number of stored (nonzero) entries in a row.
inline std::size_t sparsity(const SymmetricMatrix& m) {
    auto c = m.row_nnz();
    return *std::max_element(c.begin(), c.end());
}

struct CutoffSensitivity {
    std::size_t system_size = 0;
    double min_eig_at_1e6 = 0.0;
    double min_eig_at_1e10 = 0.0;
    double delta = 0.0;
    bool flagged = false;
};

inline CutoffSensitivity cutoff_sensitivity(const SymmetricMatrix& m, std::size_t dense_limit = default_dense_limit()) {
    auto values = full_spectrum(m, dense_limit);
    CutoffSensitivity c;
    c.system_size = m.order();
    c.min_eig_at_1e6 = detail::extremes_from_values(values, default_cutoff).lambda_min_nz;
    c.min_eig_at_1e10 = detail::extremes_from_values(values, sensitivity_cutoff).lambda_min_nz;
    c.delta = std::abs(c.min_eig_at_1e6 - c.min_eig_at_1e10);
    c.flagged = c.delta > 0.0;
    return c;
}

struct SpectralRecord {
    std::size_t system_size = 0;
    double lambda_min_nz = 0.0;
    double lambda_max = 0.0;
    double kappa = 0.0;
    std::size_t sparsity = 0;
    double cutoff = default_cutoff;
    MatrixKind matrix_kind = MatrixKind::laplacian;
    //! Smallest nonzero |lambda| under the 1e-10 cutoff (dense path only).
    std::optional<double> lambda_min_nz_fine;
    bool iterative = false;
    bool converged = true;
};

inline SpectralRecord measure(const SymmetricMatrix& m, MatrixKind kind, double cutoff = default_cutoff,
                              std::size_t dense_limit = default_dense_limit()) {
    SpectralRecord r;
    r.system_size = m.order();
    r.matrix_kind = kind;
    r.cutoff = cutoff;
    r.sparsity = sparsity(m);
    if (m.order() <= dense_limit) {
        auto values = full_spectrum(m, dense_limit);
        auto e = detail::extremes_from_values(values, cutoff);
        r.lambda_min_nz = e.lambda_min_nz;
        r.lambda_max = e.lambda_max;
        double fine_cut = std::min(cutoff, sensitivity_cutoff);
        r.lambda_min_nz_fine = detail::extremes_from_values(values, fine_cut).lambda_min_nz;
    } else {
        auto e = extreme_eigs(m, cutoff, dense_limit);
        r.lambda_min_nz = e.lambda_min_nz;
        r.lambda_max = e.lambda_max;
        r.iterative = true;
        r.converged = e.converged;
    }
    r.kappa = r.lambda_max / r.lambda_min_nz;
    return r;
}

} // namespace nlsp
