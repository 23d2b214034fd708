// Command-line front end: builds words and schedules, computes complexity
// profiles, checks the matching property, runs greedy covers and drives the
// experiment harness.
//
// Exit codes: 0 = all assertions pass, 1 = an assertion failed, 2 = usage or
// config error.

#include <cstdint>
#include <exception>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "iceberg/builders.hpp"
#include "iceberg/complexity.hpp"
#include "iceberg/experiment.hpp"
#include "iceberg/io.hpp"
#include "iceberg/matching.hpp"
#include "iceberg/scaling.hpp"

namespace {

using namespace iceberg;

constexpr int kExitPass = 0;
constexpr int kExitAssertionFailed = 1;
constexpr int kExitUsage = 2;

void write_or_print(const std::string& path, const std::string& text) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    const auto parent = std::filesystem::path(path).parent_path();
    if (!parent.empty()) std::filesystem::create_directories(parent);
    write_text_file(path, text);
}

Word load_word(const std::string& path, std::size_t line) {
    const auto words = read_words(path);
    if (line == 0 || line > words.size())
        throw std::runtime_error(path + ": no word on line " + std::to_string(line));
    return words[line - 1];
}

std::vector<std::vector<std::int64_t>> parse_spacer_lists(const std::string& text) {
    // per-level lists separated by ';', entries by ','  e.g. "1,0;2"
    std::vector<std::vector<std::int64_t>> lists;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find(';', pos);
        if (end == std::string::npos) end = text.size();
        std::vector<std::int64_t> list;
        std::size_t p = pos;
        while (p < end) {
            std::size_t q = text.find(',', p);
            if (q == std::string::npos || q > end) q = end;
            list.push_back(std::stoll(text.substr(p, q - p)));
            p = q + 1;
        }
        lists.push_back(std::move(list));
        pos = end + 1;
    }
    return lists;
}

int run_gen(const std::string& kind, const std::string& seed_word, std::size_t levels,
            std::int64_t q, const std::string& q_list_text, double gamma,
            const std::string& spacers_text, std::size_t pascal_level, std::uint64_t seed,
            std::uint64_t max_letters, const std::string& out_prefix) {
    std::vector<Word> words;
    json meta;
    if (kind == "iceberg") {
        RandomSpec spec;
        spec.seed = seed;
        if (!q_list_text.empty()) {
            for (const auto& lst : parse_spacer_lists(q_list_text))
                for (std::int64_t v : lst) spec.q_list.push_back(v);
        } else if (q > 0) {
            spec.q_list.assign(levels, q);
        } else {
            spec.gamma = gamma;
        }
        if (!spacers_text.empty()) spec.spacer_lists = parse_spacer_lists(spacers_text);
        const IcebergSchedule schedule = random_schedule(spec, seed_word, levels);
        const std::uint64_t projected = projected_length(schedule);
        if (projected > max_letters)
            throw ConfigError("max-letters", "projected length " + std::to_string(projected) +
                                                 " exceeds the cap");
        words = build_iceberg(schedule);
        meta = json{{"spec", spec}, {"schedule", schedule}};
    } else if (kind == "rank-one") {
        const auto gaps = parse_spacer_lists(spacers_text.empty() ? "0" : spacers_text);
        words = build_rank_one_chain(seed_word, gaps, levels == 0 ? gaps.size() : levels);
        meta = json{{"seed_word", seed_word}, {"spacers", gaps}};
    } else if (kind == "pascal") {
        words.push_back(pascal_word(pascal_level));
        meta = json{{"level", pascal_level}, {"length", words.back().size()}};
    } else {
        throw ConfigError("kind", "unknown gen kind '" + kind + "'");
    }
    write_words(out_prefix + ".words.txt", words);
    write_text_file(out_prefix + ".schedule.json", meta.dump(2) + "\n");
    std::cout << "wrote " << out_prefix << ".words.txt (" << words.size() << " words, last "
              << words.back().size() << " letters) and " << out_prefix << ".schedule.json\n";
    return kExitPass;
}

int run_complexity(const std::string& in, std::size_t line, std::size_t l_max,
                   const std::string& engine, bool saturated, std::size_t freq_l,
                   const std::string& format, const std::string& out) {
    const Word w = load_word(in, line);
    if (freq_l > 0) {
        const FrequencyTable table = empirical_frequencies(w, freq_l);
        write_or_print(out, json(table).dump(2) + "\n");
        return kExitPass;
    }
    const Engine eng = engine == "naive" ? Engine::naive : Engine::automaton;
    const ComplexityProfile p = complexity_profile(w, l_max == 0 ? w.size() : l_max, eng);
    if (p.clamped) std::cerr << "warning: l_max clamped to the word length " << p.l_max << "\n";
    if (format == "json") {
        json values = json::array();
        for (std::size_t l = 1; l <= p.l_max; ++l) {
            json row{{"l", l}, {"p", p.values[l]}};
            if (saturated) row["p_bar"] = saturated_complexity(w, l);
            values.push_back(row);
        }
        write_or_print(out, json{{"word_length", p.word_length},
                                 {"engine", std::string(engine_name(p.engine))},
                                 {"values", values}}
                                .dump(2) +
                                "\n");
    } else {
        write_or_print(out, profile_csv(w, p, saturated));
    }
    return kExitPass;
}

int run_check_d(const std::string& in, std::size_t line, double beta, const std::string& out) {
    const Word w = load_word(in, line);
    const DReport report = check_d(w, beta);
    write_or_print(out, json(report).dump(2) + "\n");
    return report.holds ? kExitPass : kExitAssertionFailed;
}

int run_cover(const std::string& orbit_path, const std::string& window_path,
              const std::string& mode, double epsilon, const std::string& out) {
    const Word orbit = load_word(orbit_path, 1);
    const Word window = load_word(window_path, 1);
    const CoverMode m = mode == "rotation" ? CoverMode::cyclic_rotation : CoverMode::subword;
    const CoverStats stats = greedy_cover(orbit, window, m, epsilon);
    write_or_print(out, json(stats).dump(2) + "\n");
    return stats.succeeded ? kExitPass : kExitAssertionFailed;
}

int run_exp(const std::string& config_path) {
    const json j = json::parse(read_text_file(config_path));
    const auto cfg = j.get<ExperimentConfig>();
    const ExperimentResult result = run_experiment(cfg);
    std::cout << result.summary.dump(2) << "\n";
    return result.pass ? kExitPass : kExitAssertionFailed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"iceberg words: builders, exact subword complexity, matching experiments"};
    app.require_subcommand(1);

    // gen
    auto* gen = app.add_subcommand("gen", "build word chains and schedules");
    std::string gen_kind = "iceberg", seed_word = "10", q_list_text, spacers_text, out_prefix = "out";
    std::size_t levels = 2, pascal_level = 9, line = 1;
    std::int64_t q = 0;
    double gamma = 1.0;
    std::uint64_t seed = 0, max_letters = 100'000'000;
    gen->add_option("--kind", gen_kind, "iceberg | rank-one | pascal");
    gen->add_option("--seed-word", seed_word, "starting word");
    gen->add_option("--levels", levels, "number of expansion steps");
    gen->add_option("--q", q, "fixed block count per level");
    gen->add_option("--q-list", q_list_text, "per-level block counts, comma separated");
    gen->add_option("--gamma", gamma, "power rule q = ceil(h^gamma)");
    gen->add_option("--spacers", spacers_text, "per-level spacer lists, e.g. '1,0;2,0,1'");
    gen->add_option("--pascal-level", pascal_level, "level for --kind pascal");
    gen->add_option("--seed", seed, "rng seed");
    gen->add_option("--max-letters", max_letters, "memory guard");
    gen->add_option("--out", out_prefix, "output path prefix");

    // complexity
    auto* cx = app.add_subcommand("complexity", "exact subword complexity profile");
    std::string cx_in, cx_engine = "fast", cx_format = "csv", cx_out;
    std::size_t cx_lmax = 0, cx_freq = 0;
    bool cx_saturated = false;
    cx->add_option("--in", cx_in, "word file, one word per line")->required();
    cx->add_option("--line", line, "line number of the word to use");
    cx->add_option("--lmax", cx_lmax, "largest subword length (default: word length)");
    cx->add_option("--engine", cx_engine, "fast | naive")
        ->check(CLI::IsMember({"fast", "naive"}));
    cx->add_flag("--saturated", cx_saturated, "add the saturated complexity column");
    cx->add_option("--freq", cx_freq, "emit empirical frequencies at this length instead");
    cx->add_option("--format", cx_format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
    cx->add_option("--out", cx_out, "output file (default: stdout)");

    // check-d
    auto* cd = app.add_subcommand("check-d", "matching property verdict");
    std::string cd_in, cd_out;
    double cd_beta = 0.5;
    cd->add_option("--in", cd_in, "word file")->required();
    cd->add_option("--line", line, "line number of the word to use");
    cd->add_option("--beta", cd_beta, "threshold fraction in (0,1]")->required();
    cd->add_option("--out", cd_out, "output file (default: stdout)");

    // cover
    auto* cv = app.add_subcommand("cover", "greedy cover of an orbit word");
    std::string cv_orbit, cv_window, cv_mode = "subword", cv_out;
    double cv_eps = 1.0;
    cv->add_option("--orbit", cv_orbit, "orbit word file")->required();
    cv->add_option("--window", cv_window, "window word file")->required();
    cv->add_option("--mode", cv_mode, "subword | rotation")
        ->check(CLI::IsMember({"subword", "rotation"}));
    cv->add_option("--epsilon", cv_eps, "uncovered-fraction budget");
    cv->add_option("--out", cv_out, "output file (default: stdout)");

    // exp
    auto* ex = app.add_subcommand("exp", "run an experiment config");
    std::string ex_config;
    ex->add_option("--config", ex_config, "experiment config JSON")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (gen->parsed())
            return run_gen(gen_kind, seed_word, levels, q, q_list_text, gamma, spacers_text,
                           pascal_level, seed, max_letters, out_prefix);
        if (cx->parsed())
            return run_complexity(cx_in, line, cx_lmax, cx_engine, cx_saturated, cx_freq,
                                  cx_format, cx_out);
        if (cd->parsed()) return run_check_d(cd_in, line, cd_beta, cd_out);
        if (cv->parsed()) return run_cover(cv_orbit, cv_window, cv_mode, cv_eps, cv_out);
        if (ex->parsed()) return run_exp(ex_config);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return kExitUsage;
    } catch (const json::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
