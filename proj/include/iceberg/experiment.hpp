#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "iceberg/builders.hpp"
#include "iceberg/complexity.hpp"
#include "iceberg/io.hpp"
#include "iceberg/matching.hpp"
#include "iceberg/parallel.hpp"
#include "iceberg/rng.hpp"
#include "iceberg/scaling.hpp"

namespace iceberg {

/// Invalid or infeasible configuration; `path` names the offending field.
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string path, const std::string& message)
        : std::runtime_error(path + ": " + message), path_(std::move(path)) {}

    const std::string& path() const noexcept { return path_; }

private:
    std::string path_;
};

struct ExperimentConfig {
    std::string kind;  // upper-bound | lower-bound | d-prob | pascal-complexity | scaling
    std::uint64_t seed = 0;
    std::string engine = "fast";  // fast | naive
    std::uint64_t max_letters = 100'000'000;
    std::string out_csv;
    std::string out_json;
    json params = json::object();
};

inline void to_json(json& j, const ExperimentConfig& c) {
    j = json{{"kind", c.kind},     {"seed", c.seed},       {"engine", c.engine},
             {"max_letters", c.max_letters}, {"out_csv", c.out_csv}, {"out_json", c.out_json},
             {"params", c.params}};
}

inline void from_json(const json& j, ExperimentConfig& c) {
    j.at("kind").get_to(c.kind);
    j.at("seed").get_to(c.seed);
    if (j.contains("engine")) j.at("engine").get_to(c.engine);
    if (j.contains("max_letters")) j.at("max_letters").get_to(c.max_letters);
    if (j.contains("out_csv")) j.at("out_csv").get_to(c.out_csv);
    if (j.contains("out_json")) j.at("out_json").get_to(c.out_json);
    if (j.contains("params")) c.params = j.at("params");
}

struct ExperimentResult {
    bool pass = false;
    json summary;
    std::string csv;
};

namespace detail {

template <typename T>
T param(const json& params, const std::string& key, const T& fallback) {
    if (!params.contains(key)) return fallback;
    try {
        return params.at(key).get<T>();
    } catch (const json::exception&) {
        throw ConfigError("params." + key, "has the wrong type");
    }
}

inline Engine parse_engine(const std::string& name) {
    if (name == "fast") return Engine::automaton;
    if (name == "naive") return Engine::naive;
    throw ConfigError("engine", "must be 'fast' or 'naive'");
}

inline Word random_word_over(Rng& rng, std::size_t len, std::string_view alphabet) {
    Word w(len, '\0');
    for (auto& c : w) c = alphabet[rng.below(alphabet.size())];
    return w;
}

/// Random binary word guaranteed to contain both letters.
inline Word random_binary_seed(Rng& rng, std::size_t len) {
    Word w(len, '0');
    do {
        for (auto& c : w) c = rng.below(2) ? '1' : '0';
    } while (w.find('0') == Word::npos || w.find('1') == Word::npos);
    return w;
}

inline void guard_length(std::uint64_t projected, std::uint64_t max_letters) {
    if (projected > max_letters)
        throw ConfigError("params",
                          "instance word length " + std::to_string(projected) +
                              " exceeds max_letters " + std::to_string(max_letters));
}

// -------------------------------------------------------------------------
// upper-bound: the complexity cap at l = h+1 over seeded two-level builds,
// optionally with spacers and the saturated variant.
// -------------------------------------------------------------------------
inline ExperimentResult run_upper_bound(const ExperimentConfig& cfg) {
    const auto instances = param<std::size_t>(cfg.params, "instances", 50);
    const auto h1_min = param<std::size_t>(cfg.params, "h1_min", 3);
    const auto h1_max = param<std::size_t>(cfg.params, "h1_max", 8);
    const auto q_min = param<std::size_t>(cfg.params, "q_min", 3);
    const auto q_max = param<std::size_t>(cfg.params, "q_max", 8);
    const bool spacers = param<bool>(cfg.params, "spacers", false);
    const auto spacer_max = param<std::size_t>(cfg.params, "spacer_max", 3);
    const bool saturated = param<bool>(cfg.params, "saturated", false);
    const Engine engine = parse_engine(cfg.engine);
    if (h1_min < 2 || h1_max < h1_min) throw ConfigError("params.h1_min", "bad h1 range");
    if (q_min < 2 || q_max < q_min) throw ConfigError("params.q_min", "bad q range");

    CsvWriter csv(saturated
                      ? std::vector<std::string>{"instance", "h1", "q1", "q2", "h2", "len_w3",
                                                 "p_h2", "p_h2_plus1", "pbar_h2_plus1",
                                                 "bound_h2", "bound_h2_plus1", "pass"}
                      : std::vector<std::string>{"instance", "h1", "q1", "q2", "h2", "len_w3",
                                                 "p_h2", "p_h2_plus1", "bound_h2",
                                                 "bound_h2_plus1", "pass"});
    const Rng master(cfg.seed);
    bool all_pass = true;
    std::size_t failures = 0;
    double melt_dbar_sum = 0.0, melt_dbar_max = 0.0;
    std::size_t melt_samples = 0;

    for (std::size_t i = 0; i < instances; ++i) {
        Rng rng = master.child(i);
        const std::size_t h1 = rng.range(h1_min, h1_max);
        const Word seed = random_binary_seed(rng, h1);
        IcebergSchedule schedule;
        schedule.seed_word = seed;
        std::size_t h = h1;
        for (int level = 0; level < 2; ++level) {
            LevelSpec spec;
            spec.q = static_cast<std::int64_t>(rng.range(q_min, q_max));
            spec.alphas.assign(static_cast<std::size_t>(spec.q), 0);
            for (std::size_t j = 1; j < spec.alphas.size(); ++j)
                spec.alphas[j] = static_cast<std::int64_t>(rng.below(h));
            if (spacers) {
                spec.spacers.assign(static_cast<std::size_t>(spec.q), 0);
                for (auto& s : spec.spacers)
                    s = static_cast<std::int64_t>(rng.below(spacer_max + 1));
            }
            h = static_cast<std::size_t>(next_length(spec, h));
            schedule.levels.push_back(std::move(spec));
        }
        guard_length(projected_length(schedule), cfg.max_letters);
        const auto chain = build_iceberg(schedule);
        const std::uint64_t h2 = chain[1].size();
        const ComplexityProfile p = complexity_profile(chain[2], chain[1].size() + 1, engine);
        const std::uint64_t cube = h2 * h2 * h2;
        const std::uint64_t bound_h2 = cube - h2 * h2 + h2;
        bool pass = p.at(chain[1].size() + 1) <= cube && p.at(chain[1].size()) <= bound_h2;
        std::uint64_t pbar = 0;
        if (saturated) {
            pbar = saturated_complexity(chain[2], chain[1].size() + 1);
            pass = pass && pbar <= cube;
            // melting report: growing the junction spacer by one letter while
            // compensating with the opposite rotation changes the straddling
            // window in at most one position
            const LevelSpec& top = schedule.levels[1];
            const Word& w2 = chain[1];
            for (std::size_t j = 0; j + 1 < static_cast<std::size_t>(top.q); ++j) {
                const auto s = static_cast<std::size_t>(top.spacers[j]);
                if (s + 2 >= h2) continue;
                const std::size_t a = std::max<std::size_t>(2, (h2 + 1 - s) / 2);
                const std::size_t b = h2 + 1 - s - a;
                if (b < 1) continue;
                const Word r1 = rotate(w2, top.alphas[j]);
                const Word r1m = rotate(w2, top.alphas[j] - 1);
                const Word r2 = rotate(w2, top.alphas[j + 1]);
                Word v = r1.substr(h2 - a) + Word(s, kSpacer) + r2.substr(0, b);
                Word melted = r1m.substr(h2 - (a - 1)) + Word(s + 1, kSpacer) + r2.substr(0, b);
                const double d = dbar(v, melted);
                melt_dbar_sum += d;
                melt_dbar_max = std::max(melt_dbar_max, d);
                ++melt_samples;
            }
        }
        if (saturated)
            csv.row(i, h1, schedule.levels[0].q, schedule.levels[1].q, h2, chain[2].size(),
                    p.at(chain[1].size()), p.at(chain[1].size() + 1), pbar, bound_h2, cube,
                    pass ? 1 : 0);
        else
            csv.row(i, h1, schedule.levels[0].q, schedule.levels[1].q, h2, chain[2].size(),
                    p.at(chain[1].size()), p.at(chain[1].size() + 1), bound_h2, cube,
                    pass ? 1 : 0);
        all_pass = all_pass && pass;
        failures += pass ? 0 : 1;
    }

    ExperimentResult result;
    result.pass = all_pass;
    result.csv = csv.text();
    result.summary = json{{"kind", cfg.kind},
                          {"seed", cfg.seed},
                          {"engine", cfg.engine},
                          {"instances", instances},
                          {"failures", failures},
                          {"spacers", spacers},
                          {"saturated", saturated},
                          {"pass", all_pass}};
    if (melt_samples > 0) {
        result.summary["melting_report"] =
            json{{"samples", melt_samples},
                 {"mean_dbar", melt_dbar_sum / static_cast<double>(melt_samples)},
                 {"max_dbar", melt_dbar_max}};
    }
    return result;
}

// -------------------------------------------------------------------------
// lower-bound: one D-verified base word, one huge level, exact p(h) vs the
// progression bound.
// -------------------------------------------------------------------------
inline ExperimentResult run_lower_bound(const ExperimentConfig& cfg) {
    const auto h = param<std::size_t>(cfg.params, "h", 30);
    const auto q = param<std::size_t>(cfg.params, "q", 5000);
    const double beta = param<double>(cfg.params, "beta", 0.1);
    const auto alphabet = param<std::string>(cfg.params, "alphabet", "abcdefgh");
    const auto max_draws = param<std::size_t>(cfg.params, "max_draws", 200);
    if (h < 2) throw ConfigError("params.h", "must be >= 2");
    if (q < 2) throw ConfigError("params.q", "must be >= 2");
    if (alphabet.size() < 2) throw ConfigError("params.alphabet", "needs >= 2 letters");
    guard_length(static_cast<std::uint64_t>(h) * q, cfg.max_letters);

    const Rng master(cfg.seed);
    Word w;
    std::size_t draws = 0;
    bool found = false;
    for (; draws < max_draws; ++draws) {
        Rng rng = master.child(2 * draws);
        w = random_word_over(rng, h, alphabet);
        if (check_d(w, beta).holds) {
            found = true;
            ++draws;
            break;
        }
    }
    if (!found) {
        ExperimentResult result;
        result.pass = false;
        result.summary = json{{"kind", cfg.kind},
                              {"seed", cfg.seed},
                              {"pass", false},
                              {"draws", draws},
                              {"note", "no base word satisfying the matching property"}};
        result.csv = CsvWriter({"h", "beta", "q", "draws", "p_h", "bound", "pass"}).text();
        return result;
    }

    Rng alpha_rng = master.child(2 * (draws - 1) + 1);
    IcebergSchedule schedule;
    schedule.seed_word = w;
    LevelSpec level;
    level.q = static_cast<std::int64_t>(q);
    level.alphas.assign(q, 0);
    for (std::size_t j = 1; j < q; ++j)
        level.alphas[j] = static_cast<std::int64_t>(alpha_rng.below(h));
    schedule.levels.push_back(std::move(level));
    const Word w_next = build_iceberg(schedule).back();
    const LowerBoundReport report = lower_bound_check(w_next, w, beta);

    CsvWriter csv({"h", "beta", "q", "draws", "p_h", "bound", "margin", "sigma_size",
                   "sigma_distinct", "sigma_realized", "sigma_realized_distinct", "pass"});
    csv.row(report.h, report.beta, report.q, draws, report.p_at_h, report.bound, report.margin,
            report.sigma_size, report.sigma_distinct, report.sigma_realized,
            report.sigma_realized_distinct, report.passed ? 1 : 0);

    ExperimentResult result;
    result.pass = report.passed;
    result.csv = csv.text();
    result.summary = json{{"kind", cfg.kind}, {"seed", cfg.seed},   {"draws", draws},
                          {"base_word", w},   {"report", report},   {"pass", report.passed}};
    return result;
}

// -------------------------------------------------------------------------
// d-prob: Monte Carlo failure rates of the matching property across q,
// with both sign readings of the probability bounds.
// -------------------------------------------------------------------------
inline ExperimentResult run_d_prob(const ExperimentConfig& cfg) {
    const auto seed_word = param<std::string>(cfg.params, "seed_word", "10010");
    const auto q_list = param<std::vector<std::size_t>>(cfg.params, "q_list", {8, 16, 32});
    const auto trials = param<std::size_t>(cfg.params, "trials", 200);
    const double beta = param<double>(cfg.params, "beta", 0.5);
    if (q_list.empty()) throw ConfigError("params.q_list", "must not be empty");
    for (std::size_t q : q_list)
        guard_length(static_cast<std::uint64_t>(q) * seed_word.size(), cfg.max_letters);

    const Rng master(cfg.seed);
    CsvWriter csv({"q", "trials", "failures", "rate", "eta", "bound_eta_as_written",
                   "bound_eta_flipped", "bound_h_as_written", "bound_h_flipped"});
    std::vector<MatchStats> all;
    for (std::size_t i = 0; i < q_list.size(); ++i) {
        const MatchStats stats =
            match_probability_mc(seed_word, q_list[i], trials, beta, master.child(i).seed());
        csv.row(stats.q, stats.trials, stats.failures, stats.estimate, stats.eta_param,
                stats.bound, stats.bound_eta_flipped, stats.bound_h_as_written,
                stats.bound_h_flipped);
        all.push_back(stats);
    }
    bool nonincreasing = true;
    for (std::size_t i = 1; i < all.size(); ++i)
        nonincreasing = nonincreasing && all[i].failures <= all[i - 1].failures;

    ExperimentResult result;
    result.pass = nonincreasing;
    result.csv = csv.text();
    result.summary = json{{"kind", cfg.kind},       {"seed", cfg.seed},
                          {"seed_word", seed_word}, {"beta", beta},
                          {"runs", all},            {"nonincreasing", nonincreasing},
                          {"pass", nonincreasing}};
    return result;
}

// -------------------------------------------------------------------------
// pascal-complexity: cubic-trend check on one coding word level.
// -------------------------------------------------------------------------
inline constexpr double kPascalSlopeMin = 2.5;
inline constexpr double kPascalSlopeMax = 3.5;

inline ExperimentResult run_pascal_complexity(const ExperimentConfig& cfg) {
    const auto level = param<std::size_t>(cfg.params, "level", 16);
    const auto l_min = param<std::size_t>(cfg.params, "l_min", 8);
    const auto l_max = param<std::size_t>(cfg.params, "l_max", 40);
    if (level == 0 || level > kPascalMaxLevel) throw ConfigError("params.level", "out of range");
    if (l_min < 1 || l_max < l_min) throw ConfigError("params.l_min", "bad l range");
    guard_length(std::uint64_t{1} << (level - 1), cfg.max_letters);

    const Word w = pascal_word(level);
    if (l_max > w.size()) throw ConfigError("params.l_max", "exceeds the word length");
    const ComplexityProfile p = complexity_profile(w, l_max, parse_engine(cfg.engine));

    CsvWriter csv({"l", "p_l", "l3_over_6", "ratio_6p_over_l3"});
    const auto lsq_slope = [&p](std::size_t lo, std::size_t hi) {
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (std::size_t l = lo; l <= hi; ++l) {
            const double x = std::log(static_cast<double>(l));
            const double y = std::log(static_cast<double>(p.at(l)));
            sx += x;
            sy += y;
            sxx += x * x;
            sxy += x * y;
        }
        const double n = static_cast<double>(hi - lo + 1);
        return (n * sxy - sx * sy) / (n * sxx - sx * sx);
    };
    bool nondecreasing = true;
    for (std::size_t l = l_min; l <= l_max; ++l) {
        const double ld = static_cast<double>(l);
        csv.row(l, p.at(l), ld * ld * ld / 6.0,
                6.0 * static_cast<double>(p.at(l)) / (ld * ld * ld));
        if (l > l_min) nondecreasing = nondecreasing && p.at(l) >= p.at(l - 1);
    }
    const double slope = lsq_slope(l_min, l_max);
    const bool slope_ok = slope >= kPascalSlopeMin && slope <= kPascalSlopeMax;

    ExperimentResult result;
    result.pass = slope_ok && nondecreasing;
    result.csv = csv.text();
    result.summary = json{{"kind", cfg.kind},
                          {"level", level},
                          {"word_length", w.size()},
                          {"l_min", l_min},
                          {"l_max", l_max},
                          {"slope", slope},
                          {"slope_window", json::array({kPascalSlopeMin, kPascalSlopeMax})},
                          // where the cubic regime actually lives at this size
                          {"slope_low_range", lsq_slope(l_min, std::min(2 * l_min, l_max))},
                          {"nondecreasing", nondecreasing},
                          {"pass", result.pass}};
    return result;
}

// -------------------------------------------------------------------------
// scaling: greedy-cover statistics for rank-one, iceberg and Pascal words.
// -------------------------------------------------------------------------
inline ExperimentResult run_scaling(const ExperimentConfig& cfg) {
    const auto rank_one_instances = param<std::size_t>(cfg.params, "rank_one_instances", 10);
    const auto iceberg_instances = param<std::size_t>(cfg.params, "iceberg_instances", 20);
    const auto pascal_min = param<std::size_t>(cfg.params, "pascal_level_min", 10);
    const auto pascal_max = param<std::size_t>(cfg.params, "pascal_level_max", 14);
    const auto pascal_ahead = param<std::size_t>(cfg.params, "pascal_ahead", 2);
    if (pascal_max < pascal_min || pascal_max + pascal_ahead > kPascalMaxLevel)
        throw ConfigError("params.pascal_level_max", "bad pascal level range");

    const Rng master(cfg.seed);
    CsvWriter csv({"family", "instance", "window_len", "orbit_len", "fragments",
                   "covered_fraction", "avg_fragment_length", "scale_estimate", "prediction",
                   "pass"});
    bool rank_one_pass = true, iceberg_pass = true, pascal_info = true;

    // every fragment must verbatim-match its claimed source in the window
    const auto fragments_verbatim = [](const CoverStats& stats, std::string_view orbit,
                                       std::string_view window) {
        for (const auto& f : stats.fragments)
            if (Word(orbit.substr(f.span.start, f.span.length)) !=
                cover_fragment_source(f, window))
                return false;
        return true;
    };

    // rank-one: exact copies must be recovered whole; spacers stay uncovered.
    // Levels below the top are spacer-free so the window word itself contains
    // no spacer letter.
    for (std::size_t i = 0; i < rank_one_instances; ++i) {
        Rng rng = master.child(i);
        const std::size_t seed_len = rng.range(2, 4);
        Word seed(seed_len, 'a');
        for (auto& c : seed) c = rng.below(2) ? 'a' : 'b';
        seed[0] = 'a';
        seed[seed_len - 1] = 'b';
        std::vector<std::vector<std::int64_t>> gaps(2);
        gaps[0].assign(rng.range(2, 4), 0);
        gaps[1].resize(rng.range(2, 4));
        for (auto& g : gaps[1]) g = static_cast<std::int64_t>(rng.below(4));
        const auto chain = build_rank_one_chain(seed, gaps, 2);
        const Word& v2 = chain[1];
        const Word& v3 = chain[2];
        const std::size_t spacer_letters =
            static_cast<std::size_t>(std::count(v3.begin(), v3.end(), kSpacer));
        const double eps = static_cast<double>(spacer_letters) / static_cast<double>(v3.size());
        const CoverStats stats = greedy_cover(v3, v2, CoverMode::subword, eps);
        bool exact = stats.succeeded && stats.covered_letters + spacer_letters == v3.size();
        for (const auto& f : stats.fragments) exact = exact && f.span.length == v2.size();
        exact = exact && fragments_verbatim(stats, v3, v2);
        rank_one_pass = rank_one_pass && exact;
        csv.row("rank-one", i, v2.size(), v3.size(), stats.fragments.size(),
                stats.covered_fraction, stats.avg_fragment_length, stats.scale_estimate, 1.0,
                exact ? 1 : 0);
    }

    // iceberg: blocks split into at most about two window subwords, so the
    // average fragment stays above 0.45 h.
    for (std::size_t i = 0; i < iceberg_instances; ++i) {
        Rng rng = master.child(1000 + i);
        const Word seed = random_binary_seed(rng, rng.range(5, 8));
        IcebergSchedule schedule;
        schedule.seed_word = seed;
        std::size_t h = seed.size();
        for (int level = 0; level < 2; ++level) {
            LevelSpec spec;
            spec.q = static_cast<std::int64_t>(level == 0 ? rng.range(4, 6) : rng.range(30, 60));
            spec.alphas.assign(static_cast<std::size_t>(spec.q), 0);
            for (std::size_t j = 1; j < spec.alphas.size(); ++j)
                spec.alphas[j] = static_cast<std::int64_t>(rng.below(h));
            h = static_cast<std::size_t>(next_length(spec, h));
            schedule.levels.push_back(std::move(spec));
        }
        guard_length(projected_length(schedule), cfg.max_letters);
        const auto chain = build_iceberg(schedule);
        const CoverStats stats = greedy_cover(chain[2], chain[1], CoverMode::subword);
        const bool ok =
            stats.avg_fragment_length >= 0.45 * static_cast<double>(chain[1].size()) &&
            fragments_verbatim(stats, chain[2], chain[1]);
        iceberg_pass = iceberg_pass && ok;
        csv.row("iceberg", i, chain[1].size(), chain[2].size(), stats.fragments.size(),
                stats.covered_fraction, stats.avg_fragment_length, stats.scale_estimate, 0.5,
                ok ? 1 : 0);
    }

    // pascal (informational): greedy scale vs 1/sqrt(pi log2 h), full level
    // word and tallest column word as the two window choices.
    for (std::size_t n = pascal_min; n <= pascal_max; ++n) {
        const Word orbit = pascal_word(n + pascal_ahead);
        guard_length(orbit.size(), cfg.max_letters);
        for (const bool column : {false, true}) {
            const Word window =
                pascal_word(n, column ? PascalReading::tallest_column : PascalReading::level_concat);
            const CoverStats stats = greedy_cover(orbit, window, CoverMode::subword);
            const double prediction = pascal_scale_prediction(window.size());
            const double ratio = stats.scale_estimate / prediction;
            const bool within = ratio >= 0.25 && ratio <= 4.0;
            if (!column) pascal_info = pascal_info && within;
            csv.row(column ? "pascal-column" : "pascal", n, window.size(), orbit.size(),
                    stats.fragments.size(), stats.covered_fraction, stats.avg_fragment_length,
                    stats.scale_estimate, prediction, within ? 1 : 0);
        }
    }

    ExperimentResult result;
    result.pass = rank_one_pass && iceberg_pass;  // pascal rows are informational
    result.csv = csv.text();
    result.summary = json{{"kind", cfg.kind},
                          {"seed", cfg.seed},
                          {"rank_one_pass", rank_one_pass},
                          {"iceberg_pass", iceberg_pass},
                          {"pascal_within_factor_4", pascal_info},
                          {"pass", result.pass}};
    return result;
}

}  // namespace detail

/// Runs one experiment; deterministic in the config (seed included). Output
/// files are written once at the end when paths are configured.
inline ExperimentResult run_experiment(const ExperimentConfig& cfg) {
    ExperimentResult result;
    if (cfg.kind == "upper-bound")
        result = detail::run_upper_bound(cfg);
    else if (cfg.kind == "lower-bound")
        result = detail::run_lower_bound(cfg);
    else if (cfg.kind == "d-prob")
        result = detail::run_d_prob(cfg);
    else if (cfg.kind == "pascal-complexity")
        result = detail::run_pascal_complexity(cfg);
    else if (cfg.kind == "scaling")
        result = detail::run_scaling(cfg);
    else
        throw ConfigError("kind", "unknown experiment kind '" + cfg.kind + "'");

    if (!cfg.out_csv.empty()) {
        const auto parent = std::filesystem::path(cfg.out_csv).parent_path();
        if (!parent.empty()) std::filesystem::create_directories(parent);
        write_text_file(cfg.out_csv, result.csv);
    }
    if (!cfg.out_json.empty()) {
        const auto parent = std::filesystem::path(cfg.out_json).parent_path();
        if (!parent.empty()) std::filesystem::create_directories(parent);
        write_text_file(cfg.out_json, result.summary.dump(2) + "\n");
    }
    return result;
}

}  // namespace iceberg
