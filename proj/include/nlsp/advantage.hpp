#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "nlsp/growth.hpp"

namespace nlsp {

enum class SolverKind { CLS, HHL, HHL_AA, HHL_VTAA, PSI_HHL, PHASE_RAND, CKS, AQC, DREAM };

//! A linear-solver runtime model. `k` is the polylog power for CKS and AQC (1, 2 or 3).
struct SolverModel {
    SolverKind kind = SolverKind::HHL;
    int k = 1;

    std::string name() const {
        switch (kind) {
        case SolverKind::CLS: return "CLS";
        case SolverKind::HHL: return "HHL";
        case SolverKind::HHL_AA: return "HHL_AA";
        case SolverKind::HHL_VTAA: return "HHL_VTAA";
        case SolverKind::PSI_HHL: return "PSI_HHL";
        case SolverKind::PHASE_RAND: return "PHASE_RAND";
        case SolverKind::CKS: return "CKS(" + std::to_string(k) + ")";
        case SolverKind::AQC: return "AQC(" + std::to_string(k) + ")";
        case SolverKind::DREAM: return "DREAM";
        }
        return "?";
    }
    friend bool operator==(const SolverModel&, const SolverModel&) = default;

    static SolverModel parse(const std::string& s) {
        auto polylog = [&](const std::string& prefix, SolverKind kind) -> std::optional<SolverModel> {
            if (s == prefix) return SolverModel{kind, 1};
            if (s.size() == prefix.size() + 3 && s.compare(0, prefix.size(), prefix) == 0 && s[prefix.size()] == '(' &&
                s.back() == ')' && s[prefix.size() + 1] >= '1' && s[prefix.size() + 1] <= '3')
                return SolverModel{kind, s[prefix.size() + 1] - '0'};
            return std::nullopt;
        };
        if (auto m = polylog("CKS", SolverKind::CKS)) return *m;
        if (auto m = polylog("AQC", SolverKind::AQC)) return *m;
        for (auto kind : {SolverKind::CLS, SolverKind::HHL, SolverKind::HHL_AA, SolverKind::HHL_VTAA, SolverKind::PSI_HHL,
                          SolverKind::PHASE_RAND, SolverKind::DREAM})
            if (SolverModel{kind, 1}.name() == s) return {kind, 1};
        throw std::invalid_argument("unknown solver: " + s);
    }
};

//! Every quantum model, CKS and AQC at k = 1, 2, 3.
inline std::vector<SolverModel> quantum_solvers() {
    std::vector<SolverModel> out = {{SolverKind::HHL},      {SolverKind::HHL_AA},     {SolverKind::HHL_VTAA},
                                    {SolverKind::PSI_HHL},  {SolverKind::PHASE_RAND}};
    for (int k = 1; k <= 3; ++k) out.push_back({SolverKind::CKS, k});
    for (int k = 1; k <= 3; ++k) out.push_back({SolverKind::AQC, k});
    out.push_back({SolverKind::DREAM});
    return out;
}

//! Runtime with 1/eps = log N, log(1/eps) = log log N, natural logs and unit prefactors.
//! log(kappa) in the phase-randomisation model is floored at 1 so kappa = 1 stays positive.
inline double runtime(const SolverModel& m, double n_sys, double kappa, double s) {
    if (!(n_sys >= 3.0)) throw std::invalid_argument("runtime needs N >= 3");
    if (!(kappa >= 1.0)) throw std::invalid_argument("runtime needs kappa >= 1");
    if (!(s >= 1.0)) throw std::invalid_argument("runtime needs s >= 1");
    const double l = std::log(n_sys), ll = std::log(l);
    switch (m.kind) {
    case SolverKind::CLS: return n_sys * s * std::sqrt(kappa) * ll;
    case SolverKind::HHL: return l * s * s * kappa * kappa * kappa * l;
    case SolverKind::HHL_AA: return l * s * s * kappa * kappa * l;
    case SolverKind::HHL_VTAA: return l * s * s * kappa * std::pow(std::log(kappa * l), 3) * l * l * l * ll * ll;
    case SolverKind::PSI_HHL: return l * s * s * kappa * l;
    case SolverKind::PHASE_RAND: return l * s * kappa * std::max(1.0, std::log(kappa)) * l;
    case SolverKind::CKS:
    case SolverKind::AQC: return l * s * kappa * std::pow(std::log(s * kappa * l), m.k);
    case SolverKind::DREAM: return l * std::sqrt(s) * kappa * ll;
    }
    throw std::logic_error("runtime: unknown solver");
}

inline const SolverModel cls_model{SolverKind::CLS};
inline const SolverModel hhl_model{SolverKind::HHL};

//! Runtime class in the index n from the n-domain growths of system size, kappa and s.
inline GrowthClass t_class(const SolverModel& m, const GrowthClass& size, const GrowthClass& kappa, const GrowthClass& s) {
    const GrowthClass l = size.log_class();
    auto ll = [&] { return l.log_class(); };
    switch (m.kind) {
    case SolverKind::CLS: return size * s * kappa.pow({1, 2}) * ll();
    case SolverKind::HHL: return l.pow(2) * s.pow(2) * kappa.pow(3);
    case SolverKind::HHL_AA: return l.pow(2) * s.pow(2) * kappa.pow(2);
    case SolverKind::HHL_VTAA: return l.pow(4) * s.pow(2) * kappa * (kappa * l).log_class().pow(3) * ll().pow(2);
    case SolverKind::PSI_HHL: return l.pow(2) * s.pow(2) * kappa;
    case SolverKind::PHASE_RAND: return l.pow(2) * s * kappa * kappa.log_class();
    case SolverKind::CKS:
    case SolverKind::AQC: return l * s * kappa * (s * kappa * l).log_class().pow(m.k);
    case SolverKind::DREAM: return l * s.pow({1, 2}) * kappa * ll();
    }
    throw std::logic_error("t_class: unknown solver");
}

//! R~ = t_CLS / t_solver from n-domain growths.
inline GrowthClass ratio_class_n(const SolverModel& m, const GrowthClass& size, const GrowthClass& kappa_n,
                                 const GrowthClass& s_n) {
    return t_class(cls_model, size, kappa_n, s_n) / t_class(m, size, kappa_n, s_n);
}

//! R~ from growths fitted against the system size N, composed with the size growth in n.
inline GrowthClass ratio_class(const SolverModel& m, const GrowthClass& size, const GrowthClass& kappa_of_N,
                               const GrowthClass& s_of_N) {
    return ratio_class_n(m, size, kappa_of_N.compose(size), s_of_N.compose(size));
}

enum class Category { best, better, good, bad };

inline std::string to_string(Category c) {
    switch (c) {
    case Category::best: return "best";
    case Category::better: return "better";
    case Category::good: return "good";
    case Category::bad: return "bad";
    }
    return "bad";
}
//! Advantage label: exp, poly, sub-linear, none.
inline std::string advantage_label(Category c) {
    switch (c) {
    case Category::best: return "exp";
    case Category::better: return "poly";
    case Category::good: return "sub-linear";
    case Category::bad: return "none";
    }
    return "none";
}
inline Category category_from_label(const std::string& s) {
    if (s == "exp" || s == "best") return Category::best;
    if (s == "poly" || s == "better") return Category::better;
    if (s == "sub-linear" || s == "good") return Category::good;
    if (s == "none" || s == "bad") return Category::bad;
    throw std::invalid_argument("unknown advantage label: " + s);
}

struct AdvantageVerdict {
    std::string solver;
    GrowthClass ratio;
    GrowthClass t_solver;
    Category category = Category::bad;
    bool futile = false;
    std::optional<double> crossover_N;
};

//! best: exponential ratio; better: ratio at least linear in n (exactly n counts);
//! good: unbounded but sub-linear; bad: bounded or decreasing.
//! Futile when the solver runtime itself is exponential.
inline Category category_of(const GrowthClass& ratio) {
    int e = ratio.exp_sign();
    if (e > 0) return Category::best;
    if (e < 0) return Category::bad;
    if (ratio.poly > Rational(1) || (ratio.poly == Rational(1) && (ratio.log.sign() > 0 || (ratio.log.is_zero() && ratio.loglog.sign() >= 0))))
        return Category::better;
    if (ratio.trend() > 0) return Category::good;
    return Category::bad;
}

inline AdvantageVerdict classify(const GrowthClass& ratio, const GrowthClass& t_solver, const std::string& solver = "") {
    AdvantageVerdict v;
    v.solver = solver;
    v.ratio = ratio;
    v.t_solver = t_solver;
    v.category = category_of(ratio);
    v.futile = t_solver.exp_sign() > 0;
    return v;
}

//! Verdict from n-domain growths.
inline AdvantageVerdict verdict_n(const SolverModel& m, const GrowthClass& size, const GrowthClass& kappa_n,
                                  const GrowthClass& s_n) {
    return classify(ratio_class_n(m, size, kappa_n, s_n), t_class(m, size, kappa_n, s_n), m.name());
}

//! Verdict from growths fitted in N.
inline AdvantageVerdict verdict(const SolverModel& m, const GrowthClass& size, const GrowthClass& kappa_of_N,
                                const GrowthClass& s_of_N) {
    return verdict_n(m, size, kappa_of_N.compose(size), s_of_N.compose(size));
}

using Curve = std::function<double(double)>;

//! R(N) = t_CLS / t_solver with fitted kappa(N), s(N).
inline double ratio_R(const SolverModel& m, double n_sys, const Curve& kappa_fit, const Curve& s_fit) {
    double k = kappa_fit(n_sys), s = s_fit(n_sys);
    if (!std::isfinite(k) || !std::isfinite(s) || k < 1.0 || s < 1.0)
        throw std::domain_error("fit undefined at N = " + std::to_string(n_sys));
    return runtime(cls_model, n_sys, k, s) / runtime(m, n_sys, k, s);
}

//! Smallest scanned N with R(N) >= 1.
inline std::optional<double> crossover(const SolverModel& m, const Curve& kappa_fit, const Curve& s_fit,
                                       const std::vector<double>& scan) {
    for (std::size_t i = 1; i < scan.size(); ++i)
        if (!(scan[i] > scan[i - 1])) throw std::invalid_argument("crossover scan must be increasing");
    for (double n : scan)
        if (ratio_R(m, n, kappa_fit, s_fit) >= 1.0) return n;
    return std::nullopt;
}

//! Classical baselines compared against a quantum solver in the index domain.
enum class Baseline { CLS, KMP, PLANAR };

inline std::string to_string(Baseline b) {
    switch (b) {
    case Baseline::CLS: return "CLS";
    case Baseline::KMP: return "KMP";
    case Baseline::PLANAR: return "PLANAR";
    }
    return "CLS";
}

//! Prefactor-free baseline runtime at index n. With X = size L^2 LL (M ~ size, 1/eps = L):
//! CLS uses its class, KMP is X log X, PLANAR is size LL.
inline double baseline_value(Baseline b, const GrowthClass& size, const GrowthClass& kappa_n, const GrowthClass& s_n,
                             double n) {
    const GrowthClass l = size.log_class(), ll = l.log_class();
    switch (b) {
    case Baseline::CLS: return t_class(cls_model, size, kappa_n, s_n).value(n);
    case Baseline::KMP: {
        double log_x = (size * l.pow(2) * ll).log_value(n);
        return std::exp(log_x) * log_x;
    }
    case Baseline::PLANAR: return (size * ll).value(n);
    }
    throw std::logic_error("baseline_value: unknown baseline");
}

//! R~(n) = t_baseline(n) / t_solver(n) without prefactors.
inline double ratio_tilde(const SolverModel& m, Baseline b, const GrowthClass& size, const GrowthClass& kappa_n,
                          const GrowthClass& s_n, double n) {
    return baseline_value(b, size, kappa_n, s_n, n) / t_class(m, size, kappa_n, s_n).value(n);
}

//! Smallest integer n in [n_min, n_max] with R~(n) >= 1.
inline std::optional<long long> crossover_index(const SolverModel& m, Baseline b, const GrowthClass& size,
                                                const GrowthClass& kappa_n, const GrowthClass& s_n, long long n_min,
                                                long long n_max) {
    for (long long n = std::max(n_min, 3LL); n <= n_max; ++n)
        if (ratio_tilde(m, b, size, kappa_n, s_n, static_cast<double>(n)) >= 1.0) return n;
    return std::nullopt;
}

} // namespace nlsp
