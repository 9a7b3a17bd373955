#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "nlsp/survey.hpp"

using namespace nlsp;
namespace fs = std::filesystem;

namespace {

json small_config() {
    return json::parse(R"({
        "schema": "nlsp-survey/1",
        "base_seed": 5,
        "workers": 2,
        "solvers": ["HHL", "DREAM"],
        "families": [
            {"family": "hypercube", "schedule": {"from": 2, "to": 8}},
            {"family": "gnp", "schedule": [8, 12, 16, 20, 24, 28]},
            {"family": "directed_hypercube", "schedule": {"from": 2, "to": 6}, "repair": true}
        ]
    })");
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

fs::path scratch(const std::string& name) {
    auto p = fs::temp_directory_path() / ("nlsp_test_" + name);
    fs::remove_all(p);
    return p;
}

} // namespace

TEST(SurveyConfig, ParsesSchedulesAndDefaults) {
    auto c = parse_survey_config(small_config());
    ASSERT_EQ(c.families.size(), 3u);
    EXPECT_EQ(c.families[0].spec.schedule, (std::vector<long long>{2, 3, 4, 5, 6, 7, 8}));
    EXPECT_EQ(c.families[0].spec.matrix_kind, MatrixKind::laplacian);
    EXPECT_EQ(c.families[2].spec.matrix_kind, MatrixKind::incidence);
    EXPECT_EQ(c.families[1].spec.seed, std::optional<std::uint64_t>(5));
    EXPECT_FALSE(c.families[0].spec.seed.has_value());
    EXPECT_EQ(c.families[2].key(), "directed_hypercube+repair");
    EXPECT_EQ(c.solvers.size(), 2u);
    EXPECT_EQ(config_hash(c), config_hash(parse_survey_config(to_json(c))));
}

TEST(SurveyConfig, RejectsBadInput) {
    auto bad = [](auto mutate) {
        json j = small_config();
        mutate(j);
        return j;
    };
    EXPECT_THROW(parse_survey_config(bad([](json& j) { j["schema"] = "other"; })), ConfigError);
    EXPECT_THROW(parse_survey_config(bad([](json& j) { j["families"] = json::array(); })), ConfigError);
    EXPECT_THROW(parse_survey_config(bad([](json& j) { j["families"][0]["family"] = "nope"; })), ConfigError);
    EXPECT_THROW(parse_survey_config(bad([](json& j) { j["families"][0]["schedule"] = {3, 2}; })), ConfigError);
    EXPECT_THROW(parse_survey_config(bad([](json& j) { j["families"][1] = j["families"][0]; })), ConfigError);
    EXPECT_THROW(parse_survey_config(bad([](json& j) { j["solvers"] = {"QUANTUM"}; })), ConfigError);
    EXPECT_THROW(parse_survey_config(bad([](json& j) { j["families"][0]["repair"] = true; })), ConfigError);
    EXPECT_THROW(parse_survey_config(bad([](json& j) { j["cutoff"] = -1.0; })), ConfigError);
}

TEST(Survey, RunProducesRecordsAndVerdicts) {
    auto c = parse_survey_config(small_config());
    auto r = run_survey(c);
    EXPECT_FALSE(r.partial());
    EXPECT_EQ(r.exit_code(), 0);
    EXPECT_EQ(r.records.size(), 7u + 6u + 5u);
    ASSERT_EQ(r.families.size(), 3u);
    const auto& hc = r.families[0];
    ASSERT_TRUE(hc.kappa_fit.has_value());
    EXPECT_EQ(hc.kappa_fit->best.label(), "polylog1");
    EXPECT_EQ(hc.verdicts.front().category, Category::best);
    EXPECT_EQ(hc.verdicts.front().solver, "HHL");
    for (const auto& rec : r.records)
        if (rec.family == "hypercube") EXPECT_EQ(rec.seed, 0u);
}

TEST(Survey, RecordsAreReproducibleAcrossWorkerCounts) {
    auto c = parse_survey_config(small_config());
    std::ostringstream a, b;
    write_records_csv(run_survey(c).records, a);
    c.workers = 1;
    write_records_csv(run_survey(c).records, b);
    EXPECT_EQ(a.str(), b.str());
}

TEST(Survey, RecordsCsvRoundTrip) {
    auto c = parse_survey_config(small_config());
    auto r = run_survey(c);
    std::stringstream ss;
    write_records_csv(r.records, ss);
    auto back = read_records_csv(ss);
    ASSERT_EQ(back.size(), r.records.size());
    for (std::size_t i = 0; i < back.size(); ++i) {
        EXPECT_EQ(back[i].family, r.records[i].family);
        EXPECT_EQ(back[i].n, r.records[i].n);
        EXPECT_EQ(back[i].spectral.kappa, r.records[i].spectral.kappa);
        EXPECT_EQ(back[i].spectral.sparsity, r.records[i].spectral.sparsity);
    }
    std::stringstream bad("family,n\nx,1\n");
    EXPECT_THROW(read_records_csv(bad), std::exception);
}

TEST(Survey, OutputDirectoryLayout) {
    auto c = parse_survey_config(small_config());
    auto dir = scratch("layout");
    auto r = run_survey(c);
    write_survey_outputs(r, dir);
    for (const char* f : {"records.csv", "report.json", "manifest.json"}) EXPECT_TRUE(fs::exists(dir / f)) << f;
    EXPECT_TRUE(fs::exists(dir / "series" / "hypercube_kappa_s.csv"));
    auto report = json::parse(slurp(dir / "report.json"));
    EXPECT_EQ(report.at("families").size(), 3u);
    auto manifest = json::parse(slurp(dir / "manifest.json"));
    EXPECT_EQ(manifest.at("config_hash"), config_hash(c));
    EXPECT_EQ(manifest.at("records").size(), r.records.size());
    auto first = slurp(dir / "records.csv");
    write_survey_outputs(run_survey(c), dir);
    EXPECT_EQ(first, slurp(dir / "records.csv"));
    fs::remove_all(dir);
}

TEST(Survey, FitClassifyCrossoverFromRecords) {
    auto c = parse_survey_config(small_config());
    auto r = run_survey(c);
    auto fits = fit_records(r.records);
    EXPECT_EQ(fits.at("schema"), "nlsp-fits/1");
    ASSERT_EQ(fits.at("families").size(), 3u);
    auto verdicts = classify_fits(fits, {hhl_model});
    EXPECT_EQ(verdicts.at("schema"), "nlsp-verdicts/1");
    const auto& hc = verdicts.at("families").at(0);
    EXPECT_EQ(hc.at("key"), "hypercube");
    auto cross = crossover_fits(fits, hhl_model, ScanRange{});
    EXPECT_EQ(cross.at("schema"), "nlsp-crossovers/1");
    EXPECT_THROW(classify_fits(json{{"schema", "x"}}, {hhl_model}), ConfigError);
}

TEST(Survey, FailedFamilyMakesRunPartial) {
    json j = small_config();
    j["families"] = json::parse(R"([{"family": "paley", "schedule": [7, 9, 11, 19, 23]}])");
    auto r = run_survey(parse_survey_config(j));
    EXPECT_TRUE(r.partial());
    EXPECT_EQ(r.exit_code(), 3);
    ASSERT_FALSE(r.skipped.empty());
    EXPECT_EQ(r.skipped.front().n, 9);
}

TEST(SeedStudy, RejectsDeterministicFamiliesAndSingleSeed) {
    auto c = parse_survey_config(small_config());
    EXPECT_THROW(seed_sensitivity(c, {1, 2, 3}), std::invalid_argument);
    c.families = {c.families[1]};
    EXPECT_THROW(seed_sensitivity(c, {1}), std::invalid_argument);
    auto s = seed_sensitivity(c, {1, 2});
    ASSERT_EQ(s.size(), 1u);
    EXPECT_EQ(s.front().categories.size(), 2u);
}
