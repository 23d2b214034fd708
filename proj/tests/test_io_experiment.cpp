#include <catch2/catch.hpp>

#include <filesystem>
#include <string>

#include "iceberg/experiment.hpp"
#include "iceberg/io.hpp"

using namespace iceberg;

TEST_CASE("schedule JSON round-trips losslessly", "[io]") {
    IcebergSchedule schedule{"10", {{2, {0, 1}, {}}, {3, {0, 2, 1}, {1, 0, 2}}}};
    const json j = schedule;
    const auto back = j.get<IcebergSchedule>();
    REQUIRE(back == schedule);
    REQUIRE(json(back).dump() == j.dump());
}

TEST_CASE("random spec JSON round-trips both rule forms", "[io]") {
    RandomSpec with_list;
    with_list.seed = 7;
    with_list.q_list = {3, 4};
    with_list.spacer_lists = {{1, 0, 2}, {0, 0, 0, 1}};
    REQUIRE(json(with_list).get<RandomSpec>() == with_list);

    RandomSpec with_gamma;
    with_gamma.seed = 8;
    with_gamma.gamma = 1.5;
    REQUIRE(json(with_gamma).get<RandomSpec>() == with_gamma);
    REQUIRE(json(with_gamma)["spacer_rule"] == "zero");
}

TEST_CASE("experiment config JSON round-trips", "[io]") {
    ExperimentConfig cfg;
    cfg.kind = "upper-bound";
    cfg.seed = 99;
    cfg.engine = "naive";
    cfg.out_csv = "x.csv";
    cfg.params = json{{"instances", 3}};
    const json j = cfg;
    const auto back = j.get<ExperimentConfig>();
    REQUIRE(back.kind == cfg.kind);
    REQUIRE(back.seed == cfg.seed);
    REQUIRE(back.engine == cfg.engine);
    REQUIRE(back.out_csv == cfg.out_csv);
    REQUIRE(back.params == cfg.params);
    REQUIRE(json(back).dump() == j.dump());
}

TEST_CASE("csv uses header row, LF endings and round-trip reals", "[io]") {
    CsvWriter csv({"a", "b"});
    csv.row(1, 0.5);
    csv.row(std::size_t{2}, 1.0 / 3.0);
    const std::string text = csv.text();
    REQUIRE(text.substr(0, 4) == "a,b\n");
    REQUIRE(text.find("\r") == std::string::npos);
    REQUIRE(text.find("0.3333333333333333") != std::string::npos);
}

TEST_CASE("word files round-trip", "[io]") {
    const auto dir = std::filesystem::temp_directory_path() / "iceberg_io_test";
    std::filesystem::create_directories(dir);
    const std::string path = (dir / "words.txt").string();
    const std::vector<Word> words = {"10010", "1001010010"};
    write_words(path, words);
    REQUIRE(read_words(path) == words);
    std::filesystem::remove_all(dir);
}

TEST_CASE("experiments are deterministic given the config", "[experiment]") {
    ExperimentConfig cfg;
    cfg.kind = "upper-bound";
    cfg.seed = 2024;
    cfg.params = json{{"instances", 5}};
    const ExperimentResult a = run_experiment(cfg);
    const ExperimentResult b = run_experiment(cfg);
    REQUIRE(a.csv == b.csv);
    REQUIRE(a.summary.dump() == b.summary.dump());
    REQUIRE(a.pass);
}

TEST_CASE("engine flag changes nothing about the computed values", "[experiment]") {
    ExperimentConfig fast;
    fast.kind = "upper-bound";
    fast.seed = 321;
    fast.params = json{{"instances", 4}};
    ExperimentConfig naive = fast;
    naive.engine = "naive";
    const ExperimentResult rf = run_experiment(fast);
    const ExperimentResult rn = run_experiment(naive);
    REQUIRE(rf.csv == rn.csv);
    REQUIRE(rf.pass);
    REQUIRE(rn.pass);
}

TEST_CASE("invalid configs name the offending field", "[experiment]") {
    ExperimentConfig cfg;
    cfg.kind = "no-such-kind";
    REQUIRE_THROWS_AS(run_experiment(cfg), ConfigError);

    ExperimentConfig bad_engine;
    bad_engine.kind = "upper-bound";
    bad_engine.engine = "quantum";
    try {
        run_experiment(bad_engine);
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        REQUIRE(e.path() == "engine");
    }

    ExperimentConfig bad_param;
    bad_param.kind = "pascal-complexity";
    bad_param.params = json{{"level", "sixteen"}};
    try {
        run_experiment(bad_param);
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        REQUIRE(e.path() == "params.level");
    }
}

TEST_CASE("memory guard rejects infeasible sizes before building", "[experiment]") {
    ExperimentConfig cfg;
    cfg.kind = "lower-bound";
    cfg.seed = 5;
    cfg.max_letters = 1000;
    cfg.params = json{{"h", 30}, {"q", 5000}};
    REQUIRE_THROWS_AS(run_experiment(cfg), ConfigError);
}

TEST_CASE("d-prob experiment reports both bound sign readings", "[experiment]") {
    ExperimentConfig cfg;
    cfg.kind = "d-prob";
    cfg.seed = 11;
    cfg.params = json{{"q_list", {4, 8}}, {"trials", 10}};
    const ExperimentResult r = run_experiment(cfg);
    REQUIRE(r.csv.find("bound_eta_as_written") != std::string::npos);
    REQUIRE(r.csv.find("bound_eta_flipped") != std::string::npos);
    REQUIRE(r.summary.contains("runs"));
}
