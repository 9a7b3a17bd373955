#pragma once

#include <cmath>
#include <cstdio>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "nlsp/advantage.hpp"
#include "nlsp/generators.hpp"
#include "nlsp/growth.hpp"
#include "nlsp/spectral.hpp"

namespace nlsp {

//! Cell (a, m) of the generalized hypercube tableau: G_a^m on {1..a}^m.
struct TableauCell {
    long long a = 2;
    long long m = 1;
    long long n_vertices = 0;
    long long kappa_predicted = 0;
    long long sparsity_predicted = 0;
    std::optional<double> kappa_measured;
    std::optional<long long> sparsity_measured;

    bool measured() const { return kappa_measured.has_value(); }
    bool identities_hold() const {
        return measured() && std::abs(*kappa_measured - static_cast<double>(kappa_predicted)) <= 1e-9 * kappa_predicted &&
               *sparsity_measured == sparsity_predicted;
    }
};

namespace detail {
inline long long checked_pow(long long a, long long m) {
    long long v = 1;
    for (long long i = 0; i < m; ++i) {
        if (v > (1LL << 62) / a) throw std::overflow_error("a^m overflows");
        v *= a;
    }
    return v;
}
} // namespace detail

inline TableauCell predicted_cell(long long a, long long m) {
    if (a < 2 || m < 1) throw std::invalid_argument("tableau cells need a >= 2 and m >= 1");
    TableauCell c;
    c.a = a;
    c.m = m;
    c.n_vertices = detail::checked_pow(a, m);
    c.kappa_predicted = m;
    c.sparsity_predicted = a * m - m + 1;
    return c;
}

//! Builds G_a^m and measures kappa and s of its Laplacian; above the dense limit only
//! the predictions are returned.
inline TableauCell cell_measurements(long long a, long long m, std::size_t dense_limit = default_dense_limit()) {
    TableauCell c = predicted_cell(a, m);
    if (static_cast<std::size_t>(c.n_vertices) > dense_limit) return c;
    auto lap = laplacian(gen::generalized_hypercube(a, m));
    auto e = detail::extremes_from_values(full_spectrum(lap, dense_limit), default_cutoff);
    c.kappa_measured = e.lambda_max / e.lambda_min_nz;
    c.sparsity_measured = static_cast<long long>(sparsity(lap));
    return c;
}

enum class SliceKind { row, column, main_diagonal, super_diagonal, sub_diagonal, iso_s };

inline std::string to_string(SliceKind k) {
    switch (k) {
    case SliceKind::row: return "row";
    case SliceKind::column: return "column";
    case SliceKind::main_diagonal: return "main";
    case SliceKind::super_diagonal: return "super";
    case SliceKind::sub_diagonal: return "sub";
    case SliceKind::iso_s: return "iso_s";
    }
    return "row";
}
inline SliceKind slice_kind_from_string(const std::string& s) {
    for (auto k : {SliceKind::row, SliceKind::column, SliceKind::main_diagonal, SliceKind::super_diagonal,
                   SliceKind::sub_diagonal, SliceKind::iso_s})
        if (to_string(k) == s) return k;
    if (s == "main_diagonal") return SliceKind::main_diagonal;
    if (s == "super_diagonal") return SliceKind::super_diagonal;
    if (s == "sub_diagonal") return SliceKind::sub_diagonal;
    throw std::invalid_argument("unknown slice kind: " + s);
}

//! `param` is m for rows, a for columns, D for diagonals off the main one, s for iso-s.
struct TableauSlice {
    SliceKind kind = SliceKind::row;
    long long param = 0;
    std::vector<std::pair<long long, long long>> cells;
};

//! Cells of a slice with a <= a_max and m <= m_max. Iso-s cells are a = d + 1,
//! m = (s - 1)/d over the divisors d of s - 1 with d / log(d + 1) < s - 1.
inline TableauSlice make_slice(SliceKind kind, long long param, long long a_max, long long m_max) {
    TableauSlice sl;
    sl.kind = kind;
    sl.param = param;
    switch (kind) {
    case SliceKind::row:
        if (param < 1) throw std::invalid_argument("row slice needs m >= 1");
        for (long long a = 2; a <= a_max; ++a) sl.cells.emplace_back(a, param);
        break;
    case SliceKind::column:
        if (param < 2) throw std::invalid_argument("column slice needs a >= 2");
        for (long long m = 1; m <= m_max; ++m) sl.cells.emplace_back(param, m);
        break;
    case SliceKind::main_diagonal:
        for (long long a = 2; a <= std::min(a_max, m_max); ++a) sl.cells.emplace_back(a, a);
        break;
    case SliceKind::super_diagonal:
        if (param < 1) throw std::invalid_argument("diagonal offset must be >= 1");
        for (long long a = std::max(2LL, param + 1); a <= a_max; ++a)
            if (a - param <= m_max) sl.cells.emplace_back(a, a - param);
        break;
    case SliceKind::sub_diagonal:
        if (param < 1) throw std::invalid_argument("diagonal offset must be >= 1");
        for (long long a = std::max(2LL, param); a <= a_max; ++a)
            if (a + param <= m_max) sl.cells.emplace_back(a, a + param);
        break;
    case SliceKind::iso_s: {
        if (param < 2) throw std::invalid_argument("iso-s slices need s >= 2 (s = 1 is trivial)");
        const long long t = param - 1;
        for (long long d = 1; d <= t; ++d)
            if (t % d == 0 && static_cast<double>(d) / std::log(static_cast<double>(d + 1)) < static_cast<double>(t))
                sl.cells.emplace_back(d + 1, t / d);
        break;
    }
    }
    return sl;
}

struct SliceVerdict {
    TableauSlice slice;
    GrowthClass size, kappa, sparsity;
    AdvantageVerdict verdict;
    //! Row m = 1 is the complete-graph row, excluded from the better-row family.
    bool excluded_complete_row = false;
    //! Iso-s families are finite, so every growth is bounded.
    bool finite_family = false;
};

//! Growths along the slice parameter (a for rows and diagonals, m for columns) and the
//! resulting verdict. Rows: N = a^m, kappa = m, s ~ a. Columns: N = a^m, kappa = m,
//! s ~ m. Diagonals (a, a + o): N = a^a a^o, kappa ~ a, s ~ a^2.
inline SliceVerdict slice_verdict(const TableauSlice& slice, const SolverModel& solver = hhl_model) {
    if (slice.cells.empty()) throw std::invalid_argument("empty tableau slice");
    SliceVerdict v;
    v.slice = slice;
    const long long p = slice.param;
    for (auto [a, m] : slice.cells) {
        bool ok = true;
        switch (slice.kind) {
        case SliceKind::row: ok = m == p; break;
        case SliceKind::column: ok = a == p; break;
        case SliceKind::main_diagonal: ok = m == a; break;
        case SliceKind::super_diagonal:
            if (p > a) throw std::invalid_argument("diagonal offset D > a is outside the tableau constraint");
            ok = m == a - p;
            break;
        case SliceKind::sub_diagonal:
            if (p > a) throw std::invalid_argument("diagonal offset D > a is outside the tableau constraint");
            ok = m == a + p;
            break;
        case SliceKind::iso_s: ok = a * m - m + 1 == p; break;
        }
        if (!ok || a < 2 || m < 1) throw std::invalid_argument("cell does not belong to the slice");
    }
    switch (slice.kind) {
    case SliceKind::row:
        v.size = GrowthClass::poly_of(p);
        v.kappa = GrowthClass::constant();
        v.sparsity = GrowthClass::index();
        v.excluded_complete_row = p == 1;
        break;
    case SliceKind::column:
        v.size = GrowthClass::exponential(static_cast<double>(p));
        v.kappa = GrowthClass::index();
        v.sparsity = GrowthClass::index();
        break;
    case SliceKind::main_diagonal:
    case SliceKind::super_diagonal:
    case SliceKind::sub_diagonal: {
        long long offset = slice.kind == SliceKind::main_diagonal ? 0 : (slice.kind == SliceKind::sub_diagonal ? p : -p);
        v.size = GrowthClass::super_exponential(1) * GrowthClass::poly_of(offset);
        v.kappa = GrowthClass::index();
        v.sparsity = GrowthClass::poly_of(2);
        break;
    }
    case SliceKind::iso_s:
        v.size = v.kappa = v.sparsity = GrowthClass::constant();
        v.finite_family = true;
        break;
    }
    if (v.finite_family) {
        // Bounded size: the logs of the size are bounded too, so every runtime is a constant.
        GrowthClass c = GrowthClass::constant();
        v.verdict = classify(c, c, solver.name());
    } else {
        v.verdict = verdict_n(solver, v.size, v.kappa, v.sparsity);
    }
    return v;
}

//! Tableau CSV: a, m, N, kappa_pred, kappa_meas, s_pred, s_meas (empty when not measured).
inline void write_tableau_csv(const std::vector<TableauCell>& cells, std::ostream& os) {
    os << "a,m,N,kappa_pred,kappa_meas,s_pred,s_meas\n";
    char buf[64];
    for (const auto& c : cells) {
        os << c.a << ',' << c.m << ',' << c.n_vertices << ',' << c.kappa_predicted << ',';
        if (c.kappa_measured) {
            std::snprintf(buf, sizeof buf, "%.12g", *c.kappa_measured);
            os << buf;
        }
        os << ',' << c.sparsity_predicted << ',';
        if (c.sparsity_measured) os << *c.sparsity_measured;
        os << '\n';
    }
}

//! All cells with a in [2, a_max], m in [1, m_max] and a^m <= n_max.
inline std::vector<TableauCell> tableau(long long a_max, long long m_max, long long n_max,
                                        std::size_t dense_limit = default_dense_limit()) {
    std::vector<TableauCell> out;
    for (long long m = 1; m <= m_max; ++m)
        for (long long a = 2; a <= a_max; ++a) {
            double n = std::pow(static_cast<double>(a), static_cast<double>(m));
            if (n > static_cast<double>(n_max)) continue;
            out.push_back(cell_measurements(a, m, dense_limit));
        }
    return out;
}

} // namespace nlsp
