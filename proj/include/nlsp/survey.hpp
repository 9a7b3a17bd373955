#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <mutex>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "nlsp/advantage.hpp"
#include "nlsp/families.hpp"
#include "nlsp/fit.hpp"
#include "nlsp/rng.hpp"
#include "nlsp/spectral.hpp"

namespace nlsp {

using json = nlohmann::json;

inline constexpr const char* survey_schema = "nlsp-survey/1";
inline constexpr const char* tool_version = "0.1.0";

//! Invalid or unreadable configuration; maps to exit code 2.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

//! Log-spaced system sizes for crossover scans.
struct ScanRange {
    double min_N = 8.0;
    double max_N = 1e12;
    int points_per_decade = 20;

    std::vector<double> points() const {
        if (!(min_N >= 3.0) || !(max_N > min_N) || points_per_decade < 1)
            throw ConfigError("scan range needs 3 <= min_N < max_N and points_per_decade >= 1");
        std::vector<double> out;
        const double lo = std::log10(min_N), hi = std::log10(max_N);
        const auto steps = static_cast<long long>(std::ceil((hi - lo) * points_per_decade));
        for (long long i = 0; i <= steps; ++i) out.push_back(std::pow(10.0, std::min(hi, lo + static_cast<double>(i) / points_per_decade)));
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    }
};

struct SurveyFamily {
    FamilySpec spec;
    //! Fit the upper envelope of the series; defaults to on for random families.
    std::optional<bool> envelope;

    bool use_envelope() const { return envelope.value_or(spec.info().random); }
    //! family[+repair][@weight_rule]
    std::string key() const {
        std::string k = spec.label();
        if (spec.weight_rule != WeightRule::unit) k += "@" + to_string(spec.weight_rule);
        return k;
    }
};

struct SurveyConfig {
    std::vector<SurveyFamily> families;
    double cutoff = default_cutoff;
    std::size_t dense_limit = default_dense_limit();
    std::vector<SolverModel> solvers = {{SolverKind::HHL}, {SolverKind::CKS, 1}, {SolverKind::AQC, 1}, {SolverKind::DREAM}};
    ScanRange scan;
    std::string output_dir = "survey_out";
    //! Seed for random families without an explicit one.
    std::optional<std::uint64_t> base_seed;
    unsigned workers = 1;
};

namespace detail {

inline std::vector<long long> parse_schedule(const json& j, const std::string& fam) {
    std::vector<long long> out;
    if (j.is_array()) {
        for (const auto& v : j) out.push_back(v.get<long long>());
    } else if (j.is_object()) {
        long long from = j.at("from").get<long long>(), to = j.at("to").get<long long>();
        long long step = j.value("step", 1LL);
        if (step < 1) throw ConfigError(fam + ": schedule step must be positive");
        for (long long n = from; n <= to; n += step) out.push_back(n);
    } else {
        throw ConfigError(fam + ": schedule must be a list or {from, to[, step]}");
    }
    if (out.empty()) throw ConfigError(fam + ": empty schedule");
    return out;
}

inline SurveyFamily parse_family(const json& j, const std::optional<std::uint64_t>& base_seed) {
    SurveyFamily f;
    auto& s = f.spec;
    s.family = j.at("family").get<std::string>();
    const FamilyInfo* info = nullptr;
    try {
        info = &family_info(s.family);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    if (j.contains("params"))
        for (const auto& [k, v] : j.at("params").items()) s.params[k] = v.get<double>();
    if (j.contains("seed") && !j.at("seed").is_null()) s.seed = j.at("seed").get<std::uint64_t>();
    else if (base_seed && info->random) s.seed = base_seed;
    s.schedule = parse_schedule(j.at("schedule"), s.family);
    s.matrix_kind = j.contains("matrix_kind") ? matrix_kind_from_string(j.at("matrix_kind").get<std::string>())
                                              : (info->directed ? MatrixKind::incidence : MatrixKind::laplacian);
    if (j.contains("weight_rule")) s.weight_rule = weight_rule_from_string(j.at("weight_rule").get<std::string>());
    s.repair = j.value("repair", false);
    if (j.contains("envelope")) f.envelope = j.at("envelope").get<bool>();
    try {
        s.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    return f;
}

inline std::string hex64(std::uint64_t v) {
    char buf[24];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

inline std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline std::string file_stem(const std::string& key) {
    std::string out;
    for (char c : key) out += std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' ? c : '_';
    return out;
}

} // namespace detail

inline SurveyConfig parse_survey_config(const json& j) {
    try {
        if (!j.is_object()) throw ConfigError("config must be a JSON object");
        if (j.value("schema", std::string()) != survey_schema)
            throw ConfigError(std::string("config schema must be \"") + survey_schema + "\"");
        SurveyConfig c;
        if (j.contains("base_seed") && !j.at("base_seed").is_null()) c.base_seed = j.at("base_seed").get<std::uint64_t>();
        c.cutoff = j.value("cutoff", default_cutoff);
        if (!(c.cutoff > 0.0)) throw ConfigError("cutoff must be positive");
        if (j.contains("dense_limit")) c.dense_limit = j.at("dense_limit").get<std::size_t>();
        if (std::getenv("NLSP_DENSE_LIMIT")) c.dense_limit = default_dense_limit();
        if (j.contains("solvers")) {
            c.solvers.clear();
            for (const auto& s : j.at("solvers")) {
                try {
                    c.solvers.push_back(SolverModel::parse(s.get<std::string>()));
                } catch (const std::invalid_argument& e) {
                    throw ConfigError(e.what());
                }
            }
        }
        if (j.contains("scan")) {
            const auto& s = j.at("scan");
            c.scan.min_N = s.value("min_N", c.scan.min_N);
            c.scan.max_N = s.value("max_N", c.scan.max_N);
            c.scan.points_per_decade = s.value("points_per_decade", c.scan.points_per_decade);
            c.scan.points();
        }
        c.output_dir = j.value("output_dir", c.output_dir);
        c.workers = std::max(1U, j.value("workers", 1U));
        if (!j.contains("families") || !j.at("families").is_array() || j.at("families").empty())
            throw ConfigError("config needs a nonempty families list");
        for (const auto& f : j.at("families")) c.families.push_back(detail::parse_family(f, c.base_seed));
        std::map<std::string, int> seen;
        for (const auto& f : c.families)
            if (seen[f.key()]++) throw ConfigError("duplicate family entry: " + f.key());
        return c;
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
}

inline SurveyConfig load_survey_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    return parse_survey_config(j);
}

//! Canonical form used for the config hash: every default made explicit.
inline json to_json(const SurveyConfig& c) {
    json fams = json::array();
    for (const auto& f : c.families) {
        json params = json::object();
        for (const auto& [k, v] : f.spec.effective_params()) params[k] = v;
        fams.push_back({{"family", f.spec.family},
                        {"params", params},
                        {"seed", f.spec.info().random ? json(f.spec.base_seed()) : json(nullptr)},
                        {"schedule", f.spec.schedule},
                        {"matrix_kind", to_string(f.spec.matrix_kind)},
                        {"weight_rule", to_string(f.spec.weight_rule)},
                        {"repair", f.spec.repair},
                        {"envelope", f.use_envelope()}});
    }
    json solvers = json::array();
    for (const auto& s : c.solvers) solvers.push_back(s.name());
    return {{"schema", survey_schema},
            {"families", fams},
            {"cutoff", c.cutoff},
            {"dense_limit", c.dense_limit},
            {"solvers", solvers},
            {"scan", {{"min_N", c.scan.min_N}, {"max_N", c.scan.max_N}, {"points_per_decade", c.scan.points_per_decade}}},
            {"output_dir", c.output_dir},
            {"base_seed", c.base_seed ? json(*c.base_seed) : json(nullptr)}};
}

inline std::string config_hash(const SurveyConfig& c) { return detail::hex64(fnv1a(to_json(c).dump())); }

struct SurveyRecord {
    std::string family;
    long long n = 0;
    std::uint64_t seed = 0;
    SpectralRecord spectral;
    double elapsed_ms = 0.0;
    std::vector<std::string> warnings;
};

struct SkippedInstance {
    std::string family;
    long long n = 0;
    std::string error;
};

struct FamilyReport {
    std::string key;
    FamilySpec spec;
    bool envelope = false;
    GrowthClass size_growth;
    std::vector<SurveyRecord> records;
    //! Points actually fitted (envelope applied, duplicates in N merged).
    std::vector<double> fit_N, fit_kappa, fit_s;
    std::optional<FitResult> kappa_fit, s_fit;
    std::vector<AdvantageVerdict> verdicts;
    std::vector<std::string> notes;
    std::optional<std::string> failure;
};

struct SurveyResult {
    SurveyConfig config;
    std::vector<SurveyRecord> records;
    std::vector<SkippedInstance> skipped;
    std::vector<FamilyReport> families;

    bool partial() const {
        if (!skipped.empty()) return true;
        return std::any_of(families.begin(), families.end(), [](const auto& f) { return f.failure.has_value(); });
    }
    int exit_code() const { return partial() ? 3 : 0; }
};

namespace detail {

struct Series {
    std::vector<double> x, kappa, s;
};

//! Sorted by N; repeated N values keep the larger measurement.
inline Series series_of(const std::vector<SurveyRecord>& recs) {
    std::map<double, std::pair<double, double>> by_n;
    for (const auto& r : recs) {
        auto x = static_cast<double>(r.spectral.system_size);
        auto [it, fresh] = by_n.try_emplace(x, r.spectral.kappa, static_cast<double>(r.spectral.sparsity));
        if (!fresh) {
            it->second.first = std::max(it->second.first, r.spectral.kappa);
            it->second.second = std::max(it->second.second, static_cast<double>(r.spectral.sparsity));
        }
    }
    Series s;
    for (const auto& [x, ks] : by_n) {
        s.x.push_back(x);
        s.kappa.push_back(ks.first);
        s.s.push_back(ks.second);
    }
    return s;
}

//! Scan points where both fits are defined.
inline std::vector<double> defined_scan(const FitResult& k, const FitResult& s, const std::vector<double>& scan) {
    std::vector<double> out;
    for (double n : scan) {
        double kv = k.evaluate(n), sv = s.evaluate(n);
        if (std::isfinite(kv) && std::isfinite(sv) && kv >= 1.0 && sv >= 1.0) out.push_back(n);
    }
    return out;
}

} // namespace detail

//! Fits kappa(N) and s(N), composes with the declared size growth and classifies for
//! each solver. Failures are recorded on the report, never thrown.
inline FamilyReport analyze_family(const SurveyFamily& fam, std::vector<SurveyRecord> recs,
                                   const std::vector<SolverModel>& solvers, const ScanRange& scan) {
    FamilyReport rep;
    rep.key = fam.key();
    rep.spec = fam.spec;
    rep.envelope = fam.use_envelope();
    rep.size_growth = declared_or_fitted_size_growth(fam.spec);
    rep.records = std::move(recs);
    try {
        auto ser = detail::series_of(rep.records);
        if (ser.x.size() < 4) throw std::runtime_error("fewer than 4 distinct system sizes to fit");
        std::vector<double> xk = ser.x, yk = ser.kappa, xs = ser.x, ys = ser.s;
        if (rep.envelope) {
            auto ek = upper_envelope(ser.x, ser.kappa);
            auto es = upper_envelope(ser.x, ser.s);
            if (ek.fallback) rep.notes.push_back("kappa envelope kept fewer than 4 points; full series used");
            if (es.fallback) rep.notes.push_back("sparsity envelope kept fewer than 4 points; full series used");
            xk = ek.xs, yk = ek.ys, xs = es.xs, ys = es.ys;
        }
        rep.fit_N = ser.x;
        rep.fit_kappa = ser.kappa;
        rep.fit_s = ser.s;
        rep.kappa_fit = fit_series(xk, yk, FitKind::kappa);
        rep.s_fit = fit_series(xs, ys, FitKind::sparsity);
        const auto pts = detail::defined_scan(*rep.kappa_fit, *rep.s_fit, scan.points());
        const FitResult kf = *rep.kappa_fit, sf = *rep.s_fit;
        Curve kc = [kf](double n) { return kf.evaluate(n); };
        Curve sc = [sf](double n) { return sf.evaluate(n); };
        for (const auto& m : solvers) {
            auto v = verdict(m, rep.size_growth, kf.growth(), sf.growth());
            v.crossover_N = crossover(m, kc, sc, pts);
            rep.verdicts.push_back(std::move(v));
        }
    } catch (const std::exception& e) {
        rep.failure = e.what();
    }
    return rep;
}

//! Measures every scheduled instance with a bounded worker pool. Results land in
//! per-task slots, so output order is canonical (config family order, then n).
inline SurveyResult run_survey(const SurveyConfig& cfg) {
    SurveyResult res;
    res.config = cfg;
    struct Task {
        std::size_t fam;
        long long n;
    };
    std::vector<Task> tasks;
    for (std::size_t f = 0; f < cfg.families.size(); ++f)
        for (long long n : cfg.families[f].spec.schedule) tasks.push_back({f, n});

    std::vector<std::optional<SurveyRecord>> done(tasks.size());
    std::vector<std::optional<std::string>> errors(tasks.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < tasks.size(); i = next++) {
            const auto& fam = cfg.families[tasks[i].fam];
            try {
                auto t0 = std::chrono::steady_clock::now();
                auto inst = generate_instance(fam.spec, tasks[i].n);
                SurveyRecord r;
                r.family = fam.key();
                r.n = tasks[i].n;
                r.seed = inst.seed;
                r.warnings = inst.warnings;
                r.spectral = measure(system_matrix(inst), fam.spec.matrix_kind, cfg.cutoff, cfg.dense_limit);
                r.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
                done[i] = std::move(r);
            } catch (const std::exception& e) {
                errors[i] = e.what();
            }
        }
    };
    const unsigned n_threads = std::max(1U, std::min<unsigned>(cfg.workers, static_cast<unsigned>(tasks.size())));
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < n_threads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();

    std::vector<std::vector<SurveyRecord>> per_family(cfg.families.size());
    for (std::size_t i = 0; i < tasks.size(); ++i) {
        if (done[i]) {
            res.records.push_back(*done[i]);
            per_family[tasks[i].fam].push_back(*done[i]);
        } else {
            res.skipped.push_back({cfg.families[tasks[i].fam].key(), tasks[i].n, errors[i].value_or("unknown error")});
        }
    }
    for (std::size_t f = 0; f < cfg.families.size(); ++f)
        res.families.push_back(analyze_family(cfg.families[f], std::move(per_family[f]), cfg.solvers, cfg.scan));
    return res;
}

// ---- serialization ----

inline const std::vector<std::string>& records_csv_columns() {
    static const std::vector<std::string> cols = {"family", "n",        "system_size", "matrix_kind", "kappa",
                                                  "lambda_min_nz", "lambda_max", "sparsity", "cutoff", "seed"};
    return cols;
}

inline void write_records_csv(const std::vector<SurveyRecord>& recs, std::ostream& os) {
    const auto& cols = records_csv_columns();
    for (std::size_t i = 0; i < cols.size(); ++i) os << (i ? "," : "") << cols[i];
    os << '\n';
    for (const auto& r : recs) {
        const auto& s = r.spectral;
        os << r.family << ',' << r.n << ',' << s.system_size << ',' << to_string(s.matrix_kind) << ','
           << detail::fmt_double(s.kappa) << ',' << detail::fmt_double(s.lambda_min_nz) << ','
           << detail::fmt_double(s.lambda_max) << ',' << s.sparsity << ',' << detail::fmt_double(s.cutoff) << ','
           << r.seed << '\n';
    }
}

inline std::vector<SurveyRecord> read_records_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) throw ConfigError("records file is empty");
    std::vector<std::string> header;
    {
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) header.push_back(cell);
    }
    if (header != records_csv_columns()) throw ConfigError("records header does not match the survey schema");
    std::vector<SurveyRecord> out;
    std::size_t lineno = 1;
    while (std::getline(is, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::vector<std::string> c;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) c.push_back(cell);
        if (c.size() != header.size()) throw ConfigError("records line " + std::to_string(lineno) + ": wrong column count");
        try {
            SurveyRecord r;
            r.family = c[0];
            r.n = std::stoll(c[1]);
            r.spectral.system_size = std::stoull(c[2]);
            r.spectral.matrix_kind = matrix_kind_from_string(c[3]);
            r.spectral.kappa = std::stod(c[4]);
            r.spectral.lambda_min_nz = std::stod(c[5]);
            r.spectral.lambda_max = std::stod(c[6]);
            r.spectral.sparsity = std::stoull(c[7]);
            r.spectral.cutoff = std::stod(c[8]);
            r.seed = std::stoull(c[9]);
            out.push_back(std::move(r));
        } catch (const std::exception& e) {
            throw ConfigError("records line " + std::to_string(lineno) + ": " + e.what());
        }
    }
    return out;
}

inline json to_json(const FitCandidate& c) {
    json j = {{"model", to_string(c.model)}, {"order", c.order},       {"label", c.label()},
              {"coefficients", c.coefficients}, {"admissible", c.admissible}};
    auto num = [](double v) { return std::isfinite(v) ? json(v) : json(nullptr); };
    j["sse"] = num(c.sse);
    j["rel_sse"] = num(c.rel_sse);
    j["score"] = num(c.score);
    if (!c.rejection.empty()) j["rejection"] = c.rejection;
    return j;
}

inline FitCandidate fit_candidate_from_json(const json& j) {
    FitCandidate c;
    const auto m = j.at("model").get<std::string>();
    if (m == "constant") c.model = FitModel::constant;
    else if (m == "polylog") c.model = FitModel::polylog;
    else if (m == "polynomial") c.model = FitModel::polynomial;
    else if (m == "exponential") c.model = FitModel::exponential;
    else throw ConfigError("unknown fit model: " + m);
    c.order = j.at("order").get<int>();
    c.coefficients = j.at("coefficients").get<std::vector<double>>();
    c.admissible = j.value("admissible", true);
    if (j.contains("sse") && !j.at("sse").is_null()) c.sse = j.at("sse").get<double>();
    if (j.contains("score") && !j.at("score").is_null()) c.score = j.at("score").get<double>();
    return c;
}

inline json to_json(const FitResult& r) {
    json cands = json::array();
    for (const auto& c : r.candidates) cands.push_back(to_json(c));
    json j = {{"kind", to_string(r.kind)},     {"best", to_json(r.best)},  {"growth_in_N", r.growth().str("N")},
              {"n_points", r.n_points},        {"flagged", r.flagged},     {"notes", r.notes},
              {"candidates", cands}};
    if (r.max_rounding_deviation) j["max_rounding_deviation"] = *r.max_rounding_deviation;
    return j;
}

inline FitResult fit_result_from_json(const json& j) {
    FitResult r;
    r.kind = j.at("kind").get<std::string>() == "kappa" ? FitKind::kappa : FitKind::sparsity;
    r.best = fit_candidate_from_json(j.at("best"));
    r.n_points = j.value("n_points", std::size_t{0});
    r.flagged = j.value("flagged", false);
    return r;
}

inline json to_json(const AdvantageVerdict& v) {
    json j = {{"solver", v.solver},
              {"category", to_string(v.category)},
              {"advantage", advantage_label(v.category)},
              {"ratio_class", v.ratio.str()},
              {"t_solver_class", v.t_solver.str()},
              {"futile", v.futile}};
    j["crossover_N"] = v.crossover_N ? json(*v.crossover_N) : json(nullptr);
    return j;
}

inline json to_json(const SurveyRecord& r) {
    return {{"n", r.n},
            {"system_size", r.spectral.system_size},
            {"kappa", r.spectral.kappa},
            {"lambda_min_nz", r.spectral.lambda_min_nz},
            {"lambda_max", r.spectral.lambda_max},
            {"sparsity", r.spectral.sparsity},
            {"seed", r.seed}};
}

inline json to_json(const FamilyReport& f) {
    json recs = json::array();
    for (const auto& r : f.records) recs.push_back(to_json(r));
    json j = {{"key", f.key},
              {"family", f.spec.family},
              {"matrix_kind", to_string(f.spec.matrix_kind)},
              {"repair", f.spec.repair},
              {"weight_rule", to_string(f.spec.weight_rule)},
              {"envelope", f.envelope},
              {"size_growth", f.size_growth.str()},
              {"records", recs},
              {"notes", f.notes}};
    if (f.failure) {
        j["failure"] = *f.failure;
        return j;
    }
    j["fits"] = {{"kappa", to_json(*f.kappa_fit)}, {"sparsity", to_json(*f.s_fit)}};
    json v = json::object();
    for (const auto& x : f.verdicts) v[x.solver] = to_json(x);
    j["verdicts"] = v;
    return j;
}

inline json report_json(const SurveyResult& r) {
    json fams = json::array();
    for (const auto& f : r.families) fams.push_back(to_json(f));
    return {{"schema", "nlsp-report/1"}, {"config_hash", config_hash(r.config)}, {"families", fams}};
}

inline json manifest_json(const SurveyResult& r) {
    json recs = json::array();
    for (const auto& x : r.records)
        recs.push_back({{"family", x.family}, {"n", x.n}, {"seed", x.seed}, {"elapsed_ms", x.elapsed_ms}, {"warnings", x.warnings}});
    json skipped = json::array();
    for (const auto& s : r.skipped) skipped.push_back({{"family", s.family}, {"n", s.n}, {"error", s.error}});
    json failed = json::array();
    for (const auto& f : r.families)
        if (f.failure) failed.push_back({{"family", f.key}, {"error", *f.failure}});
    char stamp[32];
    std::time_t now = std::time(nullptr);
    std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
    return {{"schema", "nlsp-manifest/1"},
            {"tool_version", tool_version},
            {"config_hash", config_hash(r.config)},
            {"config", to_json(r.config)},
            {"created", stamp},
            {"records", recs},
            {"skipped", skipped},
            {"failed_families", failed}};
}

//! Plot-ready series: kappa and s against N with fits, R(N) per solver over the scan, and
//! R~(n) per solver with the R~ = n reference.
inline void write_series(const FamilyReport& f, const ScanRange& scan, const std::filesystem::path& dir) {
    if (f.failure) return;
    std::filesystem::create_directories(dir);
    const auto stem = detail::file_stem(f.key);
    {
        std::ofstream os(dir / (stem + "_kappa_s.csv"));
        os << "N,kappa,sparsity,kappa_fit,sparsity_fit\n";
        for (std::size_t i = 0; i < f.fit_N.size(); ++i)
            os << detail::fmt_double(f.fit_N[i]) << ',' << detail::fmt_double(f.fit_kappa[i]) << ','
               << detail::fmt_double(f.fit_s[i]) << ',' << detail::fmt_double(f.kappa_fit->evaluate(f.fit_N[i])) << ','
               << detail::fmt_double(f.s_fit->evaluate(f.fit_N[i])) << '\n';
    }
    {
        std::ofstream os(dir / (stem + "_R.csv"));
        os << "N";
        for (const auto& v : f.verdicts) os << ',' << v.solver;
        os << '\n';
        for (double n : detail::defined_scan(*f.kappa_fit, *f.s_fit, scan.points())) {
            os << detail::fmt_double(n);
            for (const auto& v : f.verdicts) {
                auto m = SolverModel::parse(v.solver);
                os << ',' << detail::fmt_double(ratio_R(m, n, [&](double x) { return f.kappa_fit->evaluate(x); },
                                                        [&](double x) { return f.s_fit->evaluate(x); }));
            }
            os << '\n';
        }
    }
    {
        std::ofstream os(dir / (stem + "_Rtilde.csv"));
        os << "n,reference_n";
        for (const auto& v : f.verdicts) os << ',' << v.solver;
        os << '\n';
        const long long hi = std::max<long long>(f.spec.schedule.back(), 32);
        for (long long n = std::max<long long>(3, f.spec.schedule.front()); n <= hi; ++n) {
            os << n << ',' << n;
            for (const auto& v : f.verdicts) os << ',' << detail::fmt_double(v.ratio.value(static_cast<double>(n)));
            os << '\n';
        }
    }
}

//! records.csv, report.json, manifest.json and series/ under the output directory.
inline void write_survey_outputs(const SurveyResult& r, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    {
        std::ofstream os(dir / "records.csv");
        write_records_csv(r.records, os);
    }
    std::ofstream(dir / "report.json") << report_json(r).dump(2) << '\n';
    std::ofstream(dir / "manifest.json") << manifest_json(r).dump(2) << '\n';
    for (const auto& f : r.families) write_series(f, r.config.scan, dir / "series");
}

// ---- file-driven stages ----

//! family[+repair][@rule] back to a spec with default parameters.
inline SurveyFamily family_from_key(const std::string& key) {
    SurveyFamily f;
    std::string k = key;
    if (auto at = k.find('@'); at != std::string::npos) {
        f.spec.weight_rule = weight_rule_from_string(k.substr(at + 1));
        k = k.substr(0, at);
    }
    const std::string suffix = "+repair";
    if (k.size() > suffix.size() && k.compare(k.size() - suffix.size(), suffix.size(), suffix) == 0) {
        f.spec.repair = true;
        k = k.substr(0, k.size() - suffix.size());
    }
    f.spec.family = k;
    f.spec.matrix_kind = family_info(k).directed ? MatrixKind::incidence : MatrixKind::laplacian;
    return f;
}

//! Groups records by family key and fits kappa and s; the size growth uses default
//! family parameters.
inline json fit_records(const std::vector<SurveyRecord>& recs) {
    std::vector<std::string> order;
    std::map<std::string, std::vector<SurveyRecord>> groups;
    for (const auto& r : recs) {
        if (!groups.count(r.family)) order.push_back(r.family);
        groups[r.family].push_back(r);
    }
    json fams = json::array();
    for (const auto& key : order) {
        auto fam = family_from_key(key);
        for (const auto& r : groups[key]) fam.spec.schedule.push_back(r.n);
        std::sort(fam.spec.schedule.begin(), fam.spec.schedule.end());
        auto rep = analyze_family(fam, groups[key], {}, ScanRange{});
        json j = {{"key", key}, {"family", fam.spec.family}, {"size_growth", rep.size_growth.str()}, {"envelope", rep.envelope}};
        if (rep.failure) {
            j["failure"] = *rep.failure;
        } else {
            j["kappa"] = to_json(*rep.kappa_fit);
            j["sparsity"] = to_json(*rep.s_fit);
        }
        fams.push_back(j);
    }
    return {{"schema", "nlsp-fits/1"}, {"families", fams}};
}

namespace detail {
inline void require_fits_schema(const json& fits) {
    if (!fits.is_object() || fits.value("schema", std::string()) != "nlsp-fits/1")
        throw ConfigError("fits document must carry schema nlsp-fits/1");
}
} // namespace detail

inline json classify_fits(const json& fits, const std::vector<SolverModel>& solvers) {
    detail::require_fits_schema(fits);
    json out = json::array();
    for (const auto& f : fits.at("families")) {
        json j = {{"key", f.at("key")}};
        if (f.contains("failure")) {
            j["failure"] = f.at("failure");
        } else {
            const auto size = parse_growth(f.at("size_growth").get<std::string>());
            const auto k = fit_result_from_json(f.at("kappa")).growth();
            const auto s = fit_result_from_json(f.at("sparsity")).growth();
            json v = json::object();
            for (const auto& m : solvers) v[m.name()] = to_json(verdict(m, size, k, s));
            j["verdicts"] = v;
        }
        out.push_back(j);
    }
    return {{"schema", "nlsp-verdicts/1"}, {"families", out}};
}

inline json crossover_fits(const json& fits, const SolverModel& solver, const ScanRange& scan) {
    detail::require_fits_schema(fits);
    json out = json::array();
    for (const auto& f : fits.at("families")) {
        json j = {{"key", f.at("key")}, {"solver", solver.name()}};
        if (f.contains("failure")) {
            j["failure"] = f.at("failure");
        } else {
            const auto kf = fit_result_from_json(f.at("kappa"));
            const auto sf = fit_result_from_json(f.at("sparsity"));
            auto pts = detail::defined_scan(kf, sf, scan.points());
            auto c = crossover(solver, [&](double n) { return kf.evaluate(n); }, [&](double n) { return sf.evaluate(n); }, pts);
            j["crossover_N"] = c ? json(*c) : json(nullptr);
        }
        out.push_back(j);
    }
    return {{"schema", "nlsp-crossovers/1"}, {"families", out}};
}

struct SeedSensitivity {
    std::string key;
    std::vector<std::uint64_t> seeds;
    std::vector<std::optional<Category>> categories;
    bool stable = false;
};

//! Reruns each configured family under every seed and compares the verdict category of
//! `solver` across seeds. Deterministic families are rejected.
inline std::vector<SeedSensitivity> seed_sensitivity(const SurveyConfig& cfg, const std::vector<std::uint64_t>& seeds,
                                                     const SolverModel& solver = hhl_model) {
    if (seeds.size() < 2) throw std::invalid_argument("seed sensitivity needs at least two seeds");
    for (const auto& f : cfg.families)
        if (!f.spec.info().random) throw std::invalid_argument(f.spec.family + " is deterministic; seeds do not apply");
    std::vector<SeedSensitivity> out;
    for (const auto& f : cfg.families) {
        SeedSensitivity s;
        s.key = f.key();
        s.seeds = seeds;
        for (auto seed : seeds) {
            SurveyConfig one = cfg;
            one.families = {f};
            one.families[0].spec.seed = seed;
            one.solvers = {solver};
            auto r = run_survey(one);
            const auto& rep = r.families.front();
            s.categories.push_back(rep.failure ? std::nullopt : std::optional<Category>(rep.verdicts.front().category));
        }
        s.stable = std::all_of(s.categories.begin(), s.categories.end(),
                               [&](const auto& c) { return c && c == s.categories.front(); });
        out.push_back(std::move(s));
    }
    return out;
}

} // namespace nlsp
