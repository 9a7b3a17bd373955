#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "nlsp/growth.hpp"

namespace nlsp {

enum class FitKind { kappa, sparsity };
enum class FitModel { constant, polylog, polynomial, exponential };

inline std::string to_string(FitModel m) {
    switch (m) {
    case FitModel::constant: return "constant";
    case FitModel::polylog: return "polylog";
    case FitModel::polynomial: return "polynomial";
    case FitModel::exponential: return "exponential";
    }
    return "constant";
}
inline std::string to_string(FitKind k) { return k == FitKind::kappa ? "kappa" : "sparsity"; }

struct NoAdmissibleFit : std::runtime_error {
    using std::runtime_error::runtime_error;
};

//! One fitted candidate. Coefficients are in ascending order of the basis:
//! constant {c}; polylog {a0..ap} of log(N)^k; polynomial {a0..ap} of N^k;
//! exponential {a0, a1, a2} for a2 exp(a1 N) + a0.
struct FitCandidate {
    FitModel model = FitModel::constant;
    int order = 0;
    std::vector<double> coefficients;
    //! Plain sum of squared residuals.
    double sse = std::numeric_limits<double>::infinity();
    //! Sum of squared relative residuals; this drives the fit and the score.
    double rel_sse = std::numeric_limits<double>::infinity();
    double score = std::numeric_limits<double>::infinity();
    bool admissible = false;
    std::string rejection;

    int n_params() const { return model == FitModel::exponential ? 3 : order + 1; }
    //! Simplicity rank used by the tie-break: constant < polylog 1..3 < polynomial 1..3 < exponential.
    int complexity() const {
        switch (model) {
        case FitModel::constant: return 0;
        case FitModel::polylog: return order;
        case FitModel::polynomial: return 3 + order;
        case FitModel::exponential: return 7;
        }
        return 8;
    }
    std::string label() const {
        if (model == FitModel::constant || model == FitModel::exponential) return to_string(model);
        return to_string(model) + std::to_string(order);
    }

    double evaluate(double x) const {
        switch (model) {
        case FitModel::constant: return coefficients.at(0);
        case FitModel::polylog:
        case FitModel::polynomial: {
            double t = model == FitModel::polylog ? std::log(x) : x;
            double v = 0.0;
            for (std::size_t k = coefficients.size(); k-- > 0;) v = v * t + coefficients[k];
            return v;
        }
        case FitModel::exponential: return coefficients.at(2) * std::exp(coefficients.at(1) * x) + coefficients.at(0);
        }
        return 0.0;
    }

    //! Growth of the fitted curve in N.
    GrowthClass growth() const {
        switch (model) {
        case FitModel::constant: return GrowthClass::constant();
        case FitModel::polylog: return GrowthClass::log_of(order);
        case FitModel::polynomial: return GrowthClass::poly_of(order);
        case FitModel::exponential: {
            GrowthClass g;
            g.exp_rate = coefficients.at(1);
            return g;
        }
        }
        return GrowthClass::constant();
    }
};

struct FitResult {
    FitKind kind = FitKind::kappa;
    FitCandidate best;
    std::vector<FitCandidate> candidates;
    std::size_t n_points = 0;
    bool flagged = false;
    std::vector<std::string> notes;
    //! Sparsity fits only: max |round(fit(x_i)) - s_i| over the data.
    std::optional<double> max_rounding_deviation;

    FitModel model() const { return best.model; }
    int order() const { return best.order; }
    const std::vector<double>& coefficients() const { return best.coefficients; }
    double sse() const { return best.sse; }
    GrowthClass growth() const { return best.growth(); }
    double evaluate(double x) const {
        double v = best.evaluate(x);
        return kind == FitKind::sparsity ? std::round(v) : v;
    }
    const FitCandidate* candidate(const std::string& label) const {
        for (const auto& c : candidates)
            if (c.label() == label) return &c;
        return nullptr;
    }
};

inline constexpr double tie_window = 2.0;
inline constexpr int admissibility_grid = 256;

namespace detail {

inline double weight(double y) { return y > 0.0 ? 1.0 / y : 1.0; }

//! Sum of squared residuals; relative residuals (divided by y) when `relative` is set.
inline double sse_of(const FitCandidate& c, const std::vector<double>& xs, const std::vector<double>& ys,
                     bool relative = false) {
    double s = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        double r = c.evaluate(xs[i]) - ys[i];
        if (relative) r *= weight(ys[i]);
        s += r * r;
    }
    return s;
}

//! Relative least squares on the basis {1, t, .., t^p}, with t rescaled for conditioning.
inline std::vector<double> power_lsq(const std::vector<double>& ts, const std::vector<double>& ys, int p) {
    const Eigen::Index n = static_cast<Eigen::Index>(ts.size());
    double scale = 0.0;
    for (double t : ts) scale = std::max(scale, std::abs(t));
    if (scale == 0.0) scale = 1.0;
    Eigen::MatrixXd a(n, p + 1);
    Eigen::VectorXd y(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        double u = ts[static_cast<std::size_t>(i)] / scale, v = 1.0;
        double w = weight(ys[static_cast<std::size_t>(i)]);
        for (int k = 0; k <= p; ++k, v *= u) a(i, k) = v * w;
        y[i] = ys[static_cast<std::size_t>(i)] * w;
    }
    Eigen::VectorXd c = a.colPivHouseholderQr().solve(y);
    std::vector<double> out(static_cast<std::size_t>(p + 1));
    double f = 1.0;
    for (int k = 0; k <= p; ++k, f *= scale) out[static_cast<std::size_t>(k)] = c[k] / f;
    return out;
}

//! For a fixed rate a1, solves the linear part (a2, a0) of a2 exp(a1 x) + a0.
//! The basis is shifted by x_max so large rates stay finite.
inline FitCandidate exp_given_rate(double a1, const std::vector<double>& xs, const std::vector<double>& ys) {
    const Eigen::Index n = static_cast<Eigen::Index>(xs.size());
    double xmax = xs.back();
    Eigen::MatrixXd a(n, 2);
    Eigen::VectorXd y(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        double w = weight(ys[static_cast<std::size_t>(i)]);
        a(i, 0) = std::exp(a1 * (xs[static_cast<std::size_t>(i)] - xmax)) * w;
        a(i, 1) = w;
        y[i] = ys[static_cast<std::size_t>(i)] * w;
    }
    Eigen::Vector2d c = a.colPivHouseholderQr().solve(y);
    FitCandidate f;
    f.model = FitModel::exponential;
    f.order = 1;
    f.coefficients = {c[1], a1, c[0] * std::exp(-a1 * xmax)};
    if (!std::isfinite(f.coefficients[2])) f.coefficients[2] = c[0] > 0 ? std::numeric_limits<double>::max() : 0.0;
    f.sse = sse_of(f, xs, ys, true);
    return f;
}

//! Initial rates from log(y - a0) ~ log a2 + a1 x over the offsets {0, min/2, min - 1}.
inline std::vector<double> exp_initial_rates(const std::vector<double>& xs, const std::vector<double>& ys) {
    double ymin = *std::min_element(ys.begin(), ys.end());
    std::vector<double> rates;
    for (double a0 : {0.0, ymin / 2.0, ymin - 1.0}) {
        std::vector<double> lx, ly;
        for (std::size_t i = 0; i < xs.size(); ++i)
            if (ys[i] - a0 > 0.0) {
                lx.push_back(xs[i]);
                ly.push_back(std::log(ys[i] - a0));
            }
        if (lx.size() < 2) continue;
        Eigen::MatrixXd a(static_cast<Eigen::Index>(lx.size()), 2);
        Eigen::VectorXd y(static_cast<Eigen::Index>(lx.size()));
        for (std::size_t i = 0; i < lx.size(); ++i) {
            a(static_cast<Eigen::Index>(i), 0) = 1.0;
            a(static_cast<Eigen::Index>(i), 1) = lx[i] - lx.front();
            y[static_cast<Eigen::Index>(i)] = ly[i];
        }
        Eigen::Vector2d c = a.colPivHouseholderQr().solve(y);
        if (c[1] > 0.0 && std::isfinite(c[1])) rates.push_back(c[1]);
    }
    return rates;
}

//! Exponential fit: log-linearized initial rates, then variable projection over the
//! rate (log-spaced scan plus golden-section refinement) with (a2, a0) solved exactly.
inline FitCandidate fit_exponential(const std::vector<double>& xs, const std::vector<double>& ys) {
    auto rates = exp_initial_rates(xs, ys);
    double span = xs.back() - xs.front();
    double max_rate = 700.0 / std::max(span, 1e-300);
    if (rates.empty()) rates.push_back(1.0 / std::max(span, 1e-300));
    auto eval = [&](double lr) { return exp_given_rate(std::exp(lr), xs, ys).sse; };
    double best_lr = 0.0, best_sse = std::numeric_limits<double>::infinity();
    for (double r0 : rates) {
        double lo = std::log(r0) - std::log(100.0), hi = std::min(std::log(r0) + std::log(100.0), std::log(max_rate));
        if (hi <= lo) lo = hi - std::log(100.0);
        const int steps = 80;
        for (int i = 0; i <= steps; ++i) {
            double lr = lo + (hi - lo) * i / steps;
            double s = eval(lr);
            if (s < best_sse) best_sse = s, best_lr = lr;
        }
    }
    double step = std::log(100.0) * 2.0 / 80.0;
    double a = best_lr - step, b = std::min(best_lr + step, std::log(max_rate));
    const double g = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - g * (b - a), d = a + g * (b - a), fc = eval(c), fd = eval(d);
    for (int it = 0; it < 200 && b - a > 1e-13 * std::max(1.0, std::abs(a)); ++it) {
        if (fc < fd) {
            b = d, d = c, fd = fc;
            c = b - g * (b - a), fc = eval(c);
        } else {
            a = c, c = d, fc = fd;
            d = a + g * (b - a), fd = eval(d);
        }
    }
    double lr = fc < fd ? c : d;
    if (std::min(fc, fd) > best_sse) lr = best_lr;
    return exp_given_rate(std::exp(lr), xs, ys);
}

inline std::vector<double> admissibility_points(const std::vector<double>& xs) {
    std::vector<double> pts = xs;
    double lo = xs.front(), hi = xs.back();
    for (int i = 0; i <= admissibility_grid; ++i) pts.push_back(lo + (hi - lo) * i / admissibility_grid);
    return pts;
}

inline void check_admissible(FitCandidate& c, const std::vector<double>& xs, FitKind kind) {
    c.admissible = false;
    for (double v : c.coefficients)
        if (!std::isfinite(v)) {
            c.rejection = "non-finite coefficient";
            return;
        }
    if (c.model == FitModel::exponential) {
        if (!(c.coefficients[1] > 0.0)) {
            c.rejection = "exponential rate not positive";
            return;
        }
        if (!(c.coefficients[2] > 0.0)) {
            c.rejection = "exponential amplitude not positive";
            return;
        }
    } else if (c.model != FitModel::constant && !(c.coefficients.back() > 0.0)) {
        c.rejection = "leading coefficient not positive";
        return;
    }
    for (double x : admissibility_points(xs)) {
        double v = c.evaluate(x);
        if (kind == FitKind::kappa ? v < 1.0 - 1e-9 : std::round(v) < 1.0) {
            c.rejection = kind == FitKind::kappa ? "curve below 1 on the data range" : "rounded sparsity below 1";
            return;
        }
    }
    c.admissible = true;
}

} // namespace detail

//! Keeps (x_i, y_i) iff y_i >= every y in the window ending at i (window points, i included).
//! Returns the indices kept.
inline std::vector<std::size_t> upper_envelope_indices(const std::vector<double>& ys, std::size_t window = 5) {
    if (window == 0) throw std::invalid_argument("envelope window must be positive");
    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < ys.size(); ++i) {
        std::size_t lo = i + 1 >= window ? i + 1 - window : 0;
        bool top = true;
        for (std::size_t j = lo; j < i; ++j) top = top && ys[i] >= ys[j];
        if (top) keep.push_back(i);
    }
    return keep;
}

struct Envelope {
    std::vector<double> xs, ys;
    bool fallback = false;
};

inline Envelope upper_envelope(const std::vector<double>& xs, const std::vector<double>& ys, std::size_t window = 5) {
    if (xs.size() != ys.size()) throw std::invalid_argument("upper_envelope: size mismatch");
    if (xs.size() < 4) throw std::invalid_argument("upper_envelope needs at least 4 points");
    Envelope e;
    auto keep = upper_envelope_indices(ys, window);
    if (keep.size() < 4) {
        e.xs = xs, e.ys = ys, e.fallback = true;
        return e;
    }
    for (auto i : keep) e.xs.push_back(xs[i]), e.ys.push_back(ys[i]);
    return e;
}

//! Fits every candidate model by relative least squares, rejects inadmissible ones and selects by the small-sample
//! information score n ln(SSE/n) + 2k n/(n-k-1); scores within 2.0 of the minimum go to
//! the simplest model.
inline FitResult fit_series(const std::vector<double>& xs, const std::vector<double>& ys, FitKind kind) {
    if (xs.size() != ys.size()) throw std::invalid_argument("fit_series: size mismatch");
    if (xs.size() < 4) throw std::invalid_argument("fit_series needs at least 4 points");
    for (std::size_t i = 1; i < xs.size(); ++i)
        if (!(xs[i] > xs[i - 1])) throw std::invalid_argument("fit_series: xs must be strictly increasing");
    for (double x : xs)
        if (!(x > 0.0)) throw std::invalid_argument("fit_series: xs must be positive");

    const std::size_t n = xs.size();
    const double sse_floor = 1e-24 * static_cast<double>(n);

    FitResult r;
    r.kind = kind;
    r.n_points = n;

    std::vector<double> logs(n);
    for (std::size_t i = 0; i < n; ++i) logs[i] = std::log(xs[i]);

    auto push = [&](FitCandidate c) {
        c.sse = detail::sse_of(c, xs, ys);
        c.rel_sse = detail::sse_of(c, xs, ys, true);
        detail::check_admissible(c, xs, kind);
        const double k = c.n_params();
        if (c.admissible && static_cast<double>(n) - k - 1.0 <= 0.0) {
            c.admissible = false;
            c.rejection = "too few points for the parameter count";
        }
        if (c.admissible) {
            double sse = std::max(c.rel_sse, sse_floor);
            c.score = n * std::log(sse / n) + 2.0 * k * n / (n - k - 1.0);
        }
        r.candidates.push_back(std::move(c));
    };

    {
        FitCandidate c;
        c.model = FitModel::constant;
        c.coefficients = detail::power_lsq(logs, ys, 0);
        push(c);
    }
    for (int p = 1; p <= 3; ++p) {
        FitCandidate c;
        c.model = FitModel::polylog;
        c.order = p;
        c.coefficients = detail::power_lsq(logs, ys, p);
        push(c);
    }
    for (int p = 1; p <= 3; ++p) {
        FitCandidate c;
        c.model = FitModel::polynomial;
        c.order = p;
        c.coefficients = detail::power_lsq(xs, ys, p);
        push(c);
    }
    push(detail::fit_exponential(xs, ys));

    double min_score = std::numeric_limits<double>::infinity();
    for (const auto& c : r.candidates)
        if (c.admissible) min_score = std::min(min_score, c.score);
    if (!std::isfinite(min_score)) throw NoAdmissibleFit("no admissible fit");
    const FitCandidate* chosen = nullptr;
    for (const auto& c : r.candidates)
        if (c.admissible && c.score <= min_score + tie_window)
            if (!chosen || c.complexity() < chosen->complexity()) chosen = &c;
    r.best = *chosen;

    if (kind == FitKind::sparsity) {
        double dev = 0.0;
        for (std::size_t i = 0; i < n; ++i) dev = std::max(dev, std::abs(std::round(r.best.evaluate(xs[i])) - ys[i]));
        r.max_rounding_deviation = dev;
        if (dev > 2.0) {
            r.flagged = true;
            r.notes.push_back("rounded sparsity fit deviates by more than 2");
        }
    }
    return r;
}

} // namespace nlsp
