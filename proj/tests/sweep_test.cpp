#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "safeoco/sweep.hpp"

using namespace safeoco;

namespace {

SweepConfig small_config() {
    SweepConfig config;
    config.setting = Setting::Linear;
    config.algorithms = {"mp-rogd", "rogd"};
    config.horizons = {20, 40, 80};
    config.seeds = {0, 1, 2, 3, 4, 5, 6, 7, 8, 9};
    config.schedule = Schedule::Experiment;
    config.dim = 2;
    config.stable_timing = true;
    config.workers = 4;
    return config;
}

long count_lines(const std::string& text) {
    long n = 0;
    for (char ch : text)
        if (ch == '\n') ++n;
    return n;
}

const SweepRow& find_row(const SweepResult& result, const std::string& algo,
                         std::uint64_t seed, long horizon) {
    for (const auto& row : result.rows)
        if (row.algo == algo && row.seed == seed && row.horizon == horizon) return row;
    REQUIRE_MESSAGE(false, "missing row " << algo << " s" << seed << " T" << horizon);
    static SweepRow dummy;
    return dummy;
}

long count_occurrences(const std::string& text, const std::string& needle) {
    long n = 0;
    for (std::size_t pos = text.find(needle); pos != std::string::npos;
         pos = text.find(needle, pos + needle.size()))
        ++n;
    return n;
}

}  // namespace

TEST_CASE("zero cost override gives zero regret everywhere") {
    SweepConfig config = small_config();
    config.horizons = {15};
    config.seeds = {0, 1};
    config.zero_cost = true;
    const auto result = run_sweep(config);
    for (const auto& row : result.rows) {
        REQUIRE(row.error.empty());
        CHECK(row.regret == doctest::Approx(0.0));
        CHECK(row.avg_regret == doctest::Approx(0.0));
        CHECK(row.max_g_value < 0.0);
    }
}

TEST_CASE("row counts and CSV shape") {
    const SweepConfig config = small_config();
    const auto result = run_sweep(config);
    CHECK(result.rows.size() == 60);
    for (const auto& row : result.rows) CHECK(row.error.empty());
    // header + 60 data rows + 6 aggregate rows
    CHECK(count_lines(result.csv) == 67);
    std::istringstream in(result.csv);
    std::string header;
    std::getline(in, header);
    CHECK(header == kCsvHeader);
    long agg_rows = 0;
    std::string line;
    while (std::getline(in, line)) {
        CHECK(line.rfind("linear,", 0) == 0);
        if (line.find(",agg,") != std::string::npos) {
            ++agg_rows;
            CHECK(line.find(';') != std::string::npos);  // mean;std pairs
        }
    }
    CHECK(agg_rows == 6);
}

TEST_CASE("stable timing makes the CSV byte identical across runs") {
    SweepConfig config = small_config();
    config.horizons = {20, 40};
    config.seeds = {0, 1, 2};
    config.audit = true;
    const auto first = run_sweep(config);
    config.workers = 1;  // worker count must not affect the document
    const auto second = run_sweep(config);
    CHECK(first.csv == second.csv);
}

TEST_CASE("prefix checkpoints reuse one long run per algo and seed") {
    SweepConfig config = small_config();
    config.seeds = {0, 1};
    const auto direct = run_sweep(config);

    config.prefix_checkpoints = true;
    const auto prefixed = run_sweep(config);
    CHECK(prefixed.rows.size() == direct.rows.size());
    for (const auto& row : prefixed.rows) REQUIRE(row.error.empty());

    // at the largest horizon the prefix row is the full run itself
    for (std::uint64_t seed : {0ull, 1ull}) {
        for (const std::string algo : {"mp-rogd", "rogd"}) {
            const auto& a = find_row(direct, algo, seed, 80);
            const auto& b = find_row(prefixed, algo, seed, 80);
            CHECK(b.regret == doctest::Approx(a.regret).epsilon(1e-12));
            CHECK(b.max_g_value == a.max_g_value);
        }
        // shorter rows come from the same trajectory, so the running
        // constraint maximum is monotone in the horizon
        const auto& r20 = find_row(prefixed, "mp-rogd", seed, 20);
        const auto& r40 = find_row(prefixed, "mp-rogd", seed, 40);
        const auto& r80 = find_row(prefixed, "mp-rogd", seed, 80);
        CHECK(r20.max_g_value <= r40.max_g_value + 1e-18);
        CHECK(r40.max_g_value <= r80.max_g_value + 1e-18);
    }
}

TEST_CASE("plot output") {
    SweepConfig config = small_config();
    config.seeds = {0, 1, 2};
    const auto result = run_sweep(config);

    SUBCASE("two curves with bands") {
        const std::string svg = emit_plot(result.csv);
        CHECK(svg.rfind("<svg", 0) == 0);
        CHECK(count_occurrences(svg, "<polyline") == 2);
        CHECK(count_occurrences(svg, "<polygon") == 2);
        CHECK(svg.find("mp-rogd") != std::string::npos);
        CHECK(svg.find("rogd") != std::string::npos);
        // identical input, identical drawing
        CHECK(emit_plot(result.csv) == svg);
    }
    SUBCASE("schema and empty input faults") {
        CHECK_THROWS_AS(emit_plot("regret,stuff\n1,2\n"), EvaluationFault);
        CHECK_THROWS_AS(emit_plot(std::string(kCsvHeader) + "\n"), EvaluationFault);
    }
    SUBCASE("single horizon degenerates to markers") {
        SweepConfig one = small_config();
        one.horizons = {25};
        one.seeds = {0};
        one.algorithms = {"mp-rogd"};
        const auto single = run_sweep(one);
        const std::string svg = emit_plot(single.csv);
        CHECK(count_occurrences(svg, "<polyline") == 0);
        CHECK(count_occurrences(svg, "<circle") == 1);
    }
}

TEST_CASE("saved traces round trip") {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "safeoco_trace_test";
    fs::remove_all(dir);
    fs::create_directories(dir);

    SweepConfig config = small_config();
    config.algorithms = {"mp-rogd"};
    config.horizons = {30};
    config.seeds = {5};
    config.save_traces_dir = dir.string();
    const auto result = run_sweep(config);
    REQUIRE(result.rows.size() == 1);
    REQUIRE(result.rows[0].error.empty());

    std::ifstream in(dir / "linear_mp-rogd_experiment_s5_T30.json");
    REQUIRE(in.good());
    nlohmann::json doc;
    in >> doc;
    CHECK(doc["setting"] == "linear");
    CHECK(doc["algo"] == "mp-rogd");
    CHECK(doc["horizon"] == 30);
    CHECK(double(doc["regret"]) == result.rows[0].regret);

    // recompute the regret from the persisted points and comparator
    const auto inst = gen_linear_setting(5, 2);
    const auto draws = materialize_costs(inst, 30);
    Vec x_star(2);
    x_star << double(doc["x_star"][0]), double(doc["x_star"][1]);
    std::vector<std::vector<Vec>> played;
    for (const auto& round : doc["played"]) {
        std::vector<Vec> pts;
        for (const auto& p : round) {
            Vec v(2);
            v << double(p[0]), double(p[1]);
            pts.push_back(v);
        }
        played.push_back(std::move(pts));
    }
    REQUIRE(played.size() == 30);
    CHECK(regret(played, x_star, draws) ==
          doctest::Approx(result.rows[0].regret).epsilon(1e-12));
    fs::remove_all(dir);
}
