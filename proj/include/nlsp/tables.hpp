#pragma once

#include <string>
#include <vector>

#include "nlsp/advantage.hpp"
#include "nlsp/growth.hpp"

namespace nlsp {

//! One published survey row. Growths are in the family index n; labels are
//! exp / poly / sub-linear / none.
struct TableRow {
    int table = 2;
    std::string name;
    std::string family;
    bool repair = false;
    std::string kappa, s, size;
    std::string t_hhl, t_cls, ratio;
    std::string hhl, cks_aqc, dream;
};

inline const std::vector<TableRow>& survey_tables() {
    static const std::vector<TableRow> rows = [] {
        std::vector<TableRow> r;
        auto l2 = [&](std::string name, std::string fam, std::string k, std::string s, std::string size, std::string th,
                      std::string tc, std::string ratio, std::string hhl, std::string cks, std::string dream) {
            r.push_back({2, name, fam, false, k, s, size, th, tc, ratio, hhl, cks, dream});
        };
        auto l3 = [&](std::string name, std::string fam, bool repair, std::string k, std::string s, std::string size,
                      std::string th, std::string tc, std::string ratio, std::string hhl, std::string cks,
                      std::string dream) {
            r.push_back({3, name, fam, repair, k, s, size, th, tc, ratio, hhl, cks, dream});
        };
        const std::string sub = "sub-linear";

        l2("Hypercube", "hypercube", "n", "n", "2^n", "n^7", "2^n*n^(3/2)*log(n)", "2^n*log(n)/n^(11/2)", "exp", "exp", "exp");
        l2("Modified Margulis-Gabber-Galil", "mgg", "log^2(n)", "c", "n^2", "log^8(n)", "n^2*log(n)*ll(n)",
           "n^2*ll(n)/log^7(n)", "poly", "poly", "poly");
        l2("Sudoku", "sudoku", "log^2(n)", "log^3(n)", "n^4", "log^14(n)", "n^4*log^4(n)*ll(n)", "n^4*ll(n)/log^10(n)",
           "poly", "poly", "poly");
        for (auto [name, fam] : {std::pair{"Grid 2d", "grid_2d"}, {"Hexagonal lattice", "hexagonal_lattice"},
                                 {"Random regular expander", "random_regular_expander"}})
            l2(name, fam, "log^3(n)", "c", "n", "log^11(n)", "n*log^(3/2)(n)*ll(n)", "n*ll(n)/log^(19/2)(n)", sub, sub, sub);
        for (auto [name, fam] : {std::pair{"Barabasi-Albert", "barabasi_albert"}, {"Newman-Watts-Strogatz", "newman_watts_strogatz"}})
            l2(name, fam, "log^3(n)", "log^3(n)", "n", "log^17(n)", "n*log^(9/2)(n)*ll(n)", "n*ll(n)/log^(25/2)(n)", sub, sub, sub);
        l2("Random regular", "random_regular", "log^2(n)", "c", "n", "log^8(n)", "n*log(n)*ll(n)", "n*ll(n)/log^7(n)", sub, sub, sub);
        l2("Triangular lattice", "triangular_lattice", "n", "c", "n", "n^3*log^2(n)", "n^(3/2)*ll(n)",
           "ll(n)/(n^(3/2)*log^2(n))", "none", sub, sub);
        l2("Complete", "complete", "c", "n", "n", "n^2*log^2(n)", "n^2*ll(n)", "ll(n)/log^2(n)", "none", sub, "poly");
        l2("Turan", "turan", "log^2(n)", "n", "n", "n^2*log^8(n)", "n^2*log(n)*ll(n)", "ll(n)/log^7(n)", "none", sub, "poly");
        for (auto [name, fam] : {std::pair{"Gaussian random partition", "gaussian_random_partition"},
                                 {"Geographical threshold", "geographical_threshold"},
                                 {"Soft random geometric", "soft_random_geometric"},
                                 {"Thresholded random geometric", "thresholded_random_geometric"},
                                 {"Planted partition", "planted_partition"},
                                 {"Random geometric", "random_geometric"}})
            l2(name, fam, "log^3(n)", "n", "n", "n^2*log^11(n)", "n^2*log^(3/2)(n)*ll(n)", "ll(n)/log^(19/2)(n)", "none", sub,
               "poly");
        l2("Uniform random intersection", "uniform_random_intersection", "c", "n", "n", "n^2*log^2(n)", "n^2*ll(n)",
           "ll(n)/log^2(n)", "none", sub, "poly");
        for (auto [name, fam] : {std::pair{"Harary H_kn", "harary_kn"}, {"Harary H_mn", "harary_mn"},
                                 {"Circular ladder", "circular_ladder"}, {"Ladder", "ladder"},
                                 {"Ring of cliques", "ring_of_cliques"}})
            l2(name, fam, "n^2", "c", "n", "n^6*log^2(n)", "n^2*ll(n)", "ll(n)/(n^4*log^2(n))", "none", "none", "none");
        l2("Balanced binary tree", "balanced_binary_tree", "2^n", "c", "2^n", "n^2*2^(3 n)", "2^(3/2 n)*log(n)",
           "log(n)/(n^2*2^(3/2 n))", "none", "exp", "exp");
        l2("Balanced ternary tree", "balanced_ternary_tree", "3^n", "c", "3^n", "n^2*3^(3 n)", "3^(3/2 n)*log(n)",
           "log(n)/(n^2*3^(3/2 n))", "none", "exp", "exp");
        l2("Binomial tree", "binomial_tree", "2^n", "n", "2^n", "n^4*2^(3 n)", "2^(3/2 n)*n*log(n)",
           "log(n)/(n^3*2^(3/2 n))", "none", "exp", "exp");
        l2("Grid 2d (r=c)", "grid_2d_square", "4^n", "c", "4^n", "n^2*4^(3 n)", "4^(3/2 n)*log(n)",
           "log(n)/(n^2*4^(3/2 n))", "none", "exp", "exp");
        l2("Random lobster", "random_lobster", "n^2", "n^2", "n", "n^10*log^2(n)", "n^4*ll(n)", "ll(n)/(n^6*log^2(n))",
           "none", "none", sub);
        l2("G_np random", "gnp", "log^2(n)", "n", "n", "n^2*log^8(n)", "n^2*log(n)*ll(n)", "ll(n)/log^7(n)", "none", sub,
           "poly");

        l3("Directed hypercube (Yes)", "directed_hypercube", false, "n^2", "n", "n*2^n", "n^10", "2^n*n^3*log(n)",
           "2^n*log(n)/n^7", "exp", "exp", "exp");
        for (auto [name, fam] : {std::pair{"Gaussian random partition", "directed_gaussian_random_partition"},
                                 {"Planted partition", "directed_planted_partition"}})
            for (bool repair : {true, false})
                l3(std::string(name) + (repair ? " (No)" : " (Yes)"), fam, repair, "log^3(n)", "log^3(n)", "n^2",
                   "log^17(n)", "n^2*log^(9/2)(n)*ll(n)", "n^2*ll(n)/log^(25/2)(n)", "poly", "poly", "poly");
        for (bool repair : {true, false})
            l3(std::string("Navigable small world") + (repair ? " (No)" : " (Yes)"), "navigable_small_world", repair,
               "log^3(n)", "log(n)", "n^2", "log^13(n)", "n^2*log^(5/2)(n)*ll(n)", "n^2*ll(n)/log^(21/2)(n)", "poly",
               "poly", "poly");
        for (bool repair : {true, false})
            l3(std::string("G_np") + (repair ? " (No)" : " (Yes)"), "directed_gnp", repair, "log(n)", "log^3(n)", "n^2",
               "log^11(n)", "n^2*log^(7/2)(n)*ll(n)", "n^2*ll(n)/log^(15/2)(n)", "poly", "poly", "poly");
        l3("Paley (No)", "paley", false, "c", "log^3(n)", "n^3", "log^8(n)", "n^3*log^3(n)*ll(n)", "n^3*ll(n)/log^5(n)",
           "poly", "poly", "poly");
        for (auto [name, fam] : {std::pair{"Random uniform k-out", "random_uniform_kout"}, {"Scale-free", "scale_free"}})
            for (bool repair : {true, false})
                l3(std::string(name) + (repair ? " (No)" : " (Yes)"), fam, repair, "log^3(n)", "log^3(n)", "n",
                   "log^17(n)", "n*log^(9/2)(n)*ll(n)", "n*ll(n)/log^(25/2)(n)", sub, sub, sub);
        l3("GN (No)", "gn", true, "n^2", "n", "n", "n^8*log^2(n)", "n^3*ll(n)", "ll(n)/(n^5*log^2(n))", "none", "none", sub);
        l3("GN (Yes)", "gn", false, "n^2", "log^3(n)", "n", "n^6*log^8(n)", "n^2*log^3(n)*ll(n)", "ll(n)/(n^4*log^5(n))",
           "none", "none", sub);
        for (bool repair : {true, false})
            l3(std::string("GNC") + (repair ? " (No)" : " (Yes)"), "gnc", repair, "log^3(n)", "n^4", "n^2",
               "n^8*log^11(n)", "n^6*log^(3/2)(n)*ll(n)", "ll(n)/(n^2*log^(19/2)(n))", "none", "poly", "poly");
        l3("GNR (No)", "gnr", true, "log^3(n)", "n", "n", "n^2*log^11(n)", "n^2*log^(3/2)(n)*ll(n)", "ll(n)/log^(19/2)(n)",
           "none", sub, "poly");
        l3("GNR (Yes)", "gnr", false, "n^2", "log^3(n)", "n", "n^6*log^8(n)", "n^2*log^3(n)*ll(n)", "ll(n)/(n^4*log^5(n))",
           "none", "none", sub);
        return r;
    }();
    return rows;
}

struct RowCheck {
    TableRow row;
    GrowthClass t_hhl, t_cls, ratio;
    std::string hhl, cks_aqc, dream;
    bool hhl_ok = false, cks_aqc_ok = false, dream_ok = false;
    //! Printed t_HHL, t_CLS and R~ classes agree with the recomputed ones.
    bool classes_ok = false;
    bool labels_ok() const { return hhl_ok && cks_aqc_ok && dream_ok; }
};

//! Recomputes every row from its printed kappa, s and size growths. CKS and AQC use k = 1.
inline RowCheck check_row(const TableRow& row) {
    RowCheck c;
    c.row = row;
    const GrowthClass k = parse_growth(row.kappa), s = parse_growth(row.s), size = parse_growth(row.size);
    c.t_hhl = t_class(hhl_model, size, k, s);
    c.t_cls = t_class(cls_model, size, k, s);
    c.ratio = c.t_cls / c.t_hhl;
    c.hhl = advantage_label(category_of(c.ratio));
    auto cks = advantage_label(verdict_n({SolverKind::CKS, 1}, size, k, s).category);
    auto aqc = advantage_label(verdict_n({SolverKind::AQC, 1}, size, k, s).category);
    c.cks_aqc = cks == aqc ? cks : cks + "/" + aqc;
    c.dream = advantage_label(verdict_n({SolverKind::DREAM}, size, k, s).category);
    c.hhl_ok = c.hhl == row.hhl;
    c.cks_aqc_ok = c.cks_aqc == row.cks_aqc;
    c.dream_ok = c.dream == row.dream;
    c.classes_ok = c.t_hhl == parse_growth(row.t_hhl) && c.t_cls == parse_growth(row.t_cls) &&
                   c.ratio == parse_growth(row.ratio);
    return c;
}

inline std::vector<RowCheck> reproduce_tables(const std::vector<TableRow>& rows = survey_tables()) {
    std::vector<RowCheck> out;
    out.reserve(rows.size());
    for (const auto& r : rows) out.push_back(check_row(r));
    return out;
}

} // namespace nlsp
