#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "nlsp/edge_list.hpp"
#include "nlsp/families.hpp"
#include "nlsp/hhl.hpp"
#include "nlsp/superfamily.hpp"
#include "nlsp/survey.hpp"
#include "nlsp/tables.hpp"

using namespace nlsp;
namespace fs = std::filesystem;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_config = 2;
constexpr int exit_partial = 3;

json read_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read " + path);
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw ConfigError(path + ": " + e.what());
    }
}

void emit(const json& j, const std::string& out) {
    if (out.empty()) {
        std::cout << j.dump(2) << '\n';
        return;
    }
    std::ofstream os(out);
    if (!os) throw ConfigError("cannot write " + out);
    os << j.dump(2) << '\n';
}

std::vector<SolverModel> parse_solvers(const std::vector<std::string>& names) {
    std::vector<SolverModel> out;
    for (const auto& n : names) {
        try {
            out.push_back(SolverModel::parse(n));
        } catch (const std::invalid_argument& e) {
            throw ConfigError(e.what());
        }
    }
    return out;
}

struct HhlOptions {
    int n_r = 8;
    std::optional<double> t, C, lambda_lo, lambda_hi;
    std::optional<std::size_t> shots;
    std::uint64_t seed = HhlConfig{}.seed;

    void add(CLI::App* app) {
        app->add_option("--n-r", n_r, "clock qubits")->capture_default_str();
        app->add_option("--t", t, "evolution time");
        app->add_option("--C", C, "rotation constant");
        app->add_option("--lambda-lo", lambda_lo, "lower bound of the nonzero spectrum magnitudes (sets C)");
        app->add_option("--lambda-hi", lambda_hi, "upper spectral bound (sets t; default Gershgorin)");
        app->add_option("--shots", shots, "SWAP-test shots (default exact amplitudes)");
        app->add_option("--seed", seed, "shot-noise seed");
    }

    //! t from the upper bound, C from the lower bound unless given directly.
    HhlConfig build(const SymmetricMatrix& a, bool signed_mode) const {
        double hi = lambda_hi.value_or(0.0);
        if (!lambda_hi) {
            for (std::size_t i = 0; i < a.order(); ++i) {
                double r = 0.0;
                for (std::size_t j = 0; j < a.order(); ++j) r += std::abs(a.entry(i, j));
                hi = std::max(hi, r);
            }
        }
        HhlConfig cfg;
        cfg.n_r = n_r;
        cfg.signed_mode = signed_mode;
        cfg.shots = shots;
        cfg.seed = seed;
        cfg.t = t.value_or(time_from_lambda_max(n_r, hi, signed_mode));
        if (C) cfg.C = *C;
        else if (lambda_lo) cfg.C = 0.9 * *lambda_lo * cfg.t / (2.0 * std::numbers::pi);
        else throw ConfigError("HHL needs --C or --lambda-lo (C is never tuned from an exact eigensolve)");
        return cfg;
    }
};

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

Eigen::VectorXd to_vector(const json& j) {
    auto v = j.get<std::vector<double>>();
    return Eigen::Map<Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

std::vector<double> to_std(const Eigen::VectorXd& v) { return {v.data(), v.data() + v.size()}; }

//! Problem file: {"graph": edge-list path | "matrix": rows, "b": [...], "config": {...},
//! "probes": {name: vector}}. Directed graphs use the Hermitian dilation in signed mode.
json hhl_solve_problem(const std::string& path) {
    const json p = read_json(path);
    std::optional<SymmetricMatrix> loaded;
    bool signed_mode = false;
    try {
        if (p.contains("graph")) {
            fs::path gp = p.at("graph").get<std::string>();
            if (gp.is_relative()) gp = fs::path(path).parent_path() / gp;
            Graph g = load_edge_list(gp.string());
            if (g.directed()) {
                loaded = hermitian_dilation(incidence_matrix(g));
                signed_mode = true;
            } else {
                loaded = laplacian(g);
            }
        } else {
            auto rows = p.at("matrix").get<std::vector<std::vector<double>>>();
            Eigen::MatrixXd m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.size()));
            for (std::size_t i = 0; i < rows.size(); ++i) {
                if (rows[i].size() != rows.size()) throw ConfigError("matrix must be square");
                for (std::size_t j = 0; j < rows.size(); ++j) m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
            }
            if (!m.isApprox(m.transpose())) throw ConfigError("matrix must be symmetric");
            loaded = SymmetricMatrix::from_dense(m);
        }
        const SymmetricMatrix& a = *loaded;
        const json c = p.value("config", json::object());
        signed_mode = c.value("signed", signed_mode);
        HhlConfig cfg;
        cfg.n_r = c.value("n_r", 6);
        cfg.signed_mode = signed_mode;
        if (c.contains("shots") && !c.at("shots").is_null()) cfg.shots = c.at("shots").get<std::size_t>();
        cfg.seed = c.value("seed", cfg.seed);
        if (c.contains("t")) cfg.t = c.at("t").get<double>();
        else if (c.contains("lambda_hi")) cfg.t = time_from_lambda_max(cfg.n_r, c.at("lambda_hi").get<double>(), signed_mode);
        else throw ConfigError("config needs t or lambda_hi");
        if (c.contains("C")) cfg.C = c.at("C").get<double>();
        else if (c.contains("lambda_lo")) cfg.C = 0.9 * c.at("lambda_lo").get<double>() * cfg.t / (2.0 * std::numbers::pi);
        else throw ConfigError("config needs C or lambda_lo");

        Eigen::VectorXd b = to_vector(p.at("b"));
        if (static_cast<std::size_t>(b.size()) != a.order()) throw ConfigError("b length does not match the matrix order");
        const std::size_t order = a.order();
        auto ap = pad_to_power_of_two(a, 2.0 * std::numbers::pi * cfg.C / cfg.t);
        Eigen::VectorXd bp = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(ap.order()));
        bp.head(b.size()) = b;

        auto o = hhl_solve(ap, bp, cfg);
        Eigen::VectorXd x = o.reconstruct().head(static_cast<Eigen::Index>(order));
        Eigen::VectorXd oracle = pinv_solve(a.to_dense(), b);
        json out = {{"n_b", o.n_b},
                    {"n_r", o.n_r},
                    {"padded_order", ap.order()},
                    {"p_success", o.p_success},
                    {"p_ancilla", o.p_ancilla},
                    {"clock_zero_probability", o.clock_zero_probability},
                    {"scale", o.scale},
                    {"solution_state", to_std(o.solution_state)},
                    {"reconstructed", to_std(x)},
                    {"oracle", to_std(oracle)},
                    {"max_abs_delta", (x - oracle).cwiseAbs().maxCoeff()}};
        if (p.contains("probes")) {
            json feats = json::object();
            for (const auto& [name, v] : p.at("probes").items()) {
                Eigen::VectorXd probe = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(ap.order()));
                Eigen::VectorXd raw = to_vector(v);
                if (raw.size() != static_cast<Eigen::Index>(order)) throw ConfigError("probe " + name + " has the wrong length");
                probe.head(raw.size()) = raw / raw.norm();
                double val = extract_overlap(o, probe);
                double ref = probe.head(raw.size()).dot(oracle);
                feats[name] = {{"value", val}, {"oracle", cfg.shots ? ref * ref / oracle.squaredNorm() : ref}};
            }
            out["features"] = feats;
        }
        return out;
    } catch (const json::exception& e) {
        throw ConfigError(path + ": " + e.what());
    }
}

int run_survey_cmd(const std::string& config, const std::string& out_dir) {
    auto cfg = load_survey_config(config);
    if (!out_dir.empty()) cfg.output_dir = out_dir;
    auto r = run_survey(cfg);
    write_survey_outputs(r, cfg.output_dir);
    for (const auto& f : r.families) {
        std::cout << f.key;
        if (f.failure) {
            std::cout << "  FAILED: " << *f.failure << '\n';
            continue;
        }
        std::cout << "  kappa " << f.kappa_fit->best.label() << ", s " << f.s_fit->best.label() << ", size "
                  << f.size_growth.str() << '\n';
        for (const auto& v : f.verdicts)
            std::cout << "    " << v.solver << ": " << to_string(v.category) << (v.futile ? " (futile)" : "")
                      << ", R~ = " << v.ratio.str()
                      << (v.crossover_N ? ", crossover N = " + fmt(*v.crossover_N) : std::string()) << '\n';
    }
    for (const auto& s : r.skipped) std::cerr << "skipped " << s.family << " n=" << s.n << ": " << s.error << '\n';
    std::cout << "wrote " << cfg.output_dir << '\n';
    return r.exit_code();
}

int repro_tables_cmd(int table) {
    auto checks = reproduce_tables();
    int shown = 0, ok = 0;
    for (const auto& c : checks) {
        if (table && c.row.table != table) continue;
        ++shown;
        bool good = c.labels_ok() && c.classes_ok;
        ok += good;
        std::cout << "Table " << c.row.table << "  " << (good ? "match   " : "MISMATCH") << "  " << c.row.name << "  HHL "
                  << c.hhl << ", CKS/AQC " << c.cks_aqc << ", DREAM " << c.dream;
        if (!c.labels_ok())
            std::cout << "  [printed " << c.row.hhl << ", " << c.row.cks_aqc << ", " << c.row.dream << "]";
        if (!c.classes_ok) std::cout << "  [R~ " << c.ratio.str() << " vs printed " << c.row.ratio << "]";
        std::cout << '\n';
    }
    std::cout << ok << "/" << shown << " rows match\n";
    return ok == shown ? exit_ok : exit_partial;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Networks-based linear system survey toolkit"};
    app.require_subcommand(1);
    int code = exit_ok;

    auto* survey = app.add_subcommand("survey", "survey pipeline");
    survey->require_subcommand(1);
    std::string config, out_dir, records, fits, out_file;
    std::vector<std::string> solver_names = {"HHL", "CKS(1)", "AQC(1)", "DREAM"};
    std::string solver_name = "HHL";
    double max_N = 1e12, min_N = 8;
    std::vector<std::uint64_t> seeds;

    auto* s_run = survey->add_subcommand("run", "generate, measure, fit and classify");
    s_run->add_option("config", config, "survey config JSON")->required();
    s_run->add_option("--out", out_dir, "override output_dir");
    s_run->callback([&] { code = run_survey_cmd(config, out_dir); });

    auto* s_fit = survey->add_subcommand("fit", "fit kappa and s from records.csv");
    s_fit->add_option("records", records, "records.csv")->required();
    s_fit->add_option("-o,--out", out_file, "write the fits JSON here");
    s_fit->callback([&] {
        std::ifstream in(records);
        if (!in) throw ConfigError("cannot read " + records);
        emit(fit_records(read_records_csv(in)), out_file);
    });

    auto* s_cls = survey->add_subcommand("classify", "verdicts from a fits JSON");
    s_cls->add_option("fits", fits, "fits JSON from survey fit")->required();
    s_cls->add_option("--solver", solver_names, "solvers to classify")->capture_default_str();
    s_cls->add_option("-o,--out", out_file, "write the verdicts JSON here");
    s_cls->callback([&] { emit(classify_fits(read_json(fits), parse_solvers(solver_names)), out_file); });

    auto* s_x = survey->add_subcommand("crossover", "crossover N from a fits JSON");
    s_x->add_option("fits", fits, "fits JSON from survey fit")->required();
    s_x->add_option("--solver", solver_name, "solver")->capture_default_str();
    s_x->add_option("--max-N", max_N, "largest scanned system size")->capture_default_str();
    s_x->add_option("--min-N", min_N, "smallest scanned system size")->capture_default_str();
    s_x->add_option("-o,--out", out_file, "write the crossover JSON here");
    s_x->callback([&] {
        ScanRange scan;
        scan.min_N = min_N;
        scan.max_N = max_N;
        emit(crossover_fits(read_json(fits), parse_solvers({solver_name}).front(), scan), out_file);
    });

    auto* s_seed = survey->add_subcommand("seeds", "seed sensitivity of random families");
    s_seed->add_option("config", config, "survey config JSON")->required();
    s_seed->add_option("--seeds", seeds, "seeds (at least two)")->required()->delimiter(',');
    s_seed->add_option("--solver", solver_name, "solver")->capture_default_str();
    s_seed->callback([&] {
        auto cfg = load_survey_config(config);
        std::vector<SeedSensitivity> rep;
        try {
            rep = seed_sensitivity(cfg, seeds, parse_solvers({solver_name}).front());
        } catch (const std::invalid_argument& e) {
            throw ConfigError(e.what());
        }
        json out = json::array();
        bool all = true;
        for (const auto& r : rep) {
            json cats = json::array();
            for (const auto& c : r.categories) cats.push_back(c ? json(to_string(*c)) : json(nullptr));
            out.push_back({{"key", r.key}, {"seeds", r.seeds}, {"categories", cats}, {"stable", r.stable}});
            all = all && r.stable;
        }
        std::cout << out.dump(2) << '\n';
        code = all ? exit_ok : exit_partial;
    });

    auto* sf = app.add_subcommand("superfamily", "generalized hypercube tableau");
    sf->require_subcommand(1);
    long long a_max = 6, m_max = 5, n_max = 2048, param = 2;
    std::string kind = "row";
    auto* sf_t = sf->add_subcommand("tableau", "measured vs predicted kappa and s per cell");
    sf_t->add_option("--a-max", a_max)->capture_default_str();
    sf_t->add_option("--m-max", m_max)->capture_default_str();
    sf_t->add_option("--n-max", n_max, "largest a^m")->capture_default_str();
    sf_t->add_option("-o,--out", out_file, "CSV path (default stdout)");
    sf_t->callback([&] {
        auto cells = tableau(a_max, m_max, n_max);
        bool ok = true;
        for (const auto& c : cells) ok = ok && (!c.measured() || c.identities_hold());
        if (out_file.empty()) {
            write_tableau_csv(cells, std::cout);
        } else {
            std::ofstream os(out_file);
            write_tableau_csv(cells, os);
        }
        code = ok ? exit_ok : exit_partial;
    });
    auto* sf_s = sf->add_subcommand("slice", "classify a slice of the tableau");
    sf_s->add_option("--kind", kind, "row | column | main | super | sub | iso_s")->capture_default_str();
    sf_s->add_option("--param", param, "m (row), a (column), D (super/sub), s (iso_s)")->capture_default_str();
    sf_s->add_option("--a-max", a_max)->capture_default_str();
    sf_s->add_option("--m-max", m_max)->capture_default_str();
    sf_s->add_option("--solver", solver_name)->capture_default_str();
    sf_s->callback([&] {
        SliceKind k;
        try {
            k = slice_kind_from_string(kind);
        } catch (const std::invalid_argument& e) {
            throw ConfigError(e.what());
        }
        auto v = slice_verdict(make_slice(k, param, a_max, m_max), parse_solvers({solver_name}).front());
        json cells = json::array();
        for (auto [a, m] : v.slice.cells) cells.push_back({a, m});
        json out = {{"kind", to_string(k)},        {"param", param},          {"cells", cells},
                    {"size", v.size.str()},        {"kappa", v.kappa.str()},  {"sparsity", v.sparsity.str()},
                    {"verdict", to_json(v.verdict)}, {"finite_family", v.finite_family},
                    {"excluded_complete_row", v.excluded_complete_row}};
        std::cout << out.dump(2) << '\n';
    });

    auto* hhl = app.add_subcommand("hhl", "statevector HHL");
    hhl->require_subcommand(1);
    std::string problem, graph_path, inj_path;
    std::size_t vi = 0, vj = 1;
    bool oracle = false, use_hhl = false;
    HhlOptions hopt;

    auto* h_solve = hhl->add_subcommand("solve", "solve a problem file");
    h_solve->add_option("problem", problem, "problem JSON")->required();
    h_solve->add_option("-o,--out", out_file, "write the result JSON here");
    h_solve->callback([&] { emit(hhl_solve_problem(problem), out_file); });

    auto* h_reff = hhl->add_subcommand("reff", "effective resistance between two vertices");
    h_reff->add_option("graph", graph_path, "undirected edge list")->required();
    h_reff->add_option("--i", vi)->required();
    h_reff->add_option("--j", vj)->required();
    h_reff->add_flag("--oracle", oracle, "dense pseudo-inverse only");
    hopt.add(h_reff);
    h_reff->callback([&] {
        Graph g = load_edge_list(graph_path);
        double ref = effective_resistance_oracle(g, vi, vj);
        json out = {{"i", vi}, {"j", vj}, {"oracle", ref}};
        if (!oracle) {
            double val = effective_resistance_hhl(g, vi, vj, hopt.build(laplacian(g), false));
            out["hhl"] = val;
            out["relative_error"] = std::abs(val - ref) / ref;
        }
        std::cout << out.dump(2) << '\n';
    });

    auto* h_tr = hhl->add_subcommand("traffic", "min-norm flows from net inflows");
    h_tr->add_option("graph", graph_path, "directed edge list")->required();
    h_tr->add_option("injections", inj_path, "JSON list of net inflow per vertex (positive = entering)")->required();
    h_tr->add_flag("--hhl", use_hhl, "solve the dilated system with HHL");
    hopt.add(h_tr);
    h_tr->callback([&] {
        Graph g = load_edge_list(graph_path);
        Eigen::VectorXd c;
        try {
            c = to_vector(read_json(inj_path));
        } catch (const json::exception& e) {
            throw ConfigError(inj_path + ": " + e.what());
        }
        auto ref = traffic_flow(g, c);
        json out = {{"oracle", to_std(ref.y)}, {"oracle_residual", ref.residual}};
        if (use_hhl) {
            auto f = traffic_flow(g, c, hopt.build(hermitian_dilation(incidence_matrix(g)), true));
            out["hhl"] = to_std(f.y);
            out["hhl_residual"] = f.residual;
            out["negative_edges"] = f.negative_edges;
        } else {
            out["negative_edges"] = ref.negative_edges;
        }
        std::cout << out.dump(2) << '\n';
    });

    auto* fam = app.add_subcommand("family", "graph families");
    fam->require_subcommand(1);
    std::string fam_id;
    long long fam_n = 3;
    std::optional<std::uint64_t> fam_seed;
    bool fam_repair = false;
    auto* f_list = fam->add_subcommand("list", "catalog ids");
    f_list->callback([&] {
        for (const auto& f : family_catalog())
            std::cout << f.id << (f.directed ? "  directed" : "  undirected") << (f.random ? "  random" : "") << '\n';
    });
    auto* f_gen = fam->add_subcommand("generate", "write one instance as an edge list");
    f_gen->add_option("family", fam_id)->required();
    f_gen->add_option("--n", fam_n)->required();
    f_gen->add_option("--seed", fam_seed);
    f_gen->add_flag("--repair", fam_repair, "source/sink repair (directed only)");
    f_gen->add_option("-o,--out", out_file, "edge-list path (default stdout)");
    f_gen->callback([&] {
        FamilySpec spec;
        spec.family = fam_id;
        spec.seed = fam_seed;
        spec.repair = fam_repair;
        try {
            spec.matrix_kind = family_info(fam_id).directed ? MatrixKind::incidence : MatrixKind::laplacian;
        } catch (const std::invalid_argument& e) {
            throw ConfigError(e.what());
        }
        auto inst = generate_instance(spec, fam_n);
        for (const auto& w : inst.warnings) std::cerr << "warning: " << w << '\n';
        if (out_file.empty()) write_edge_list(inst.graph, std::cout);
        else save_edge_list(inst.graph, out_file);
    });

    auto* repro = app.add_subcommand("repro", "reproduction reports");
    repro->require_subcommand(1);
    int table = 0;
    auto* r_tab = repro->add_subcommand("tables", "recompute the survey table labels");
    r_tab->add_option("--table", table, "2 or 3 (default both)");
    r_tab->callback([&] { code = repro_tables_cmd(table); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? exit_ok : exit_config;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return exit_config;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid input: " << e.what() << '\n';
        return exit_config;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return code;
}
