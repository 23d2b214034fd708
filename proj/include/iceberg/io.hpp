#pragma once

#include <charconv>
#include <cstdint>
#include <fstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "iceberg/builders.hpp"
#include "iceberg/complexity.hpp"
#include "iceberg/matching.hpp"
#include "iceberg/scaling.hpp"
#include "iceberg/word.hpp"

namespace iceberg {

using json = nlohmann::json;

// ---------------------------------------------------------------------------
// number formatting: ASCII decimal integers, shortest-round-trip reals
// ---------------------------------------------------------------------------

inline std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

/// Comma-separated rows, header first, LF endings.
class CsvWriter {
public:
    explicit CsvWriter(std::vector<std::string> header) { row_of_strings(header); }

    template <typename... Cells>
    void row(const Cells&... cells) {
        std::vector<std::string> formatted;
        formatted.reserve(sizeof...(cells));
        (formatted.push_back(format_cell(cells)), ...);
        row_of_strings(formatted);
    }

    const std::string& text() const noexcept { return text_; }

private:
    static std::string format_cell(const std::string& s) { return s; }
    static std::string format_cell(const char* s) { return s; }
    static std::string format_cell(double v) { return format_double(v); }
    template <typename Int>
    static std::string format_cell(Int v) {
        return std::to_string(v);
    }

    void row_of_strings(const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) text_ += ',';
            text_ += cells[i];
        }
        text_ += '\n';
    }

    std::string text_;
};

// ---------------------------------------------------------------------------
// file helpers
// ---------------------------------------------------------------------------

inline void write_text_file(const std::string& path, std::string_view text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!out) throw std::runtime_error("write failed: " + path);
}

inline std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open for reading: " + path);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return text;
}

/// Words serialize one per line.
inline void write_words(const std::string& path, const std::vector<Word>& words) {
    std::string text;
    for (const Word& w : words) {
        text += w;
        text += '\n';
    }
    write_text_file(path, text);
}

inline std::vector<Word> read_words(const std::string& path) {
    const std::string text = read_text_file(path);
    std::vector<Word> words;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string::npos) end = text.size();
        if (end > pos) words.emplace_back(text.substr(pos, end - pos));
        pos = end + 1;
    }
    return words;
}

// ---------------------------------------------------------------------------
// JSON bindings (stable key order via nlohmann's sorted object storage)
// ---------------------------------------------------------------------------

inline void to_json(json& j, const LevelSpec& level) {
    j = json{{"q", level.q}, {"alphas", level.alphas}, {"spacers", level.spacers}};
}

inline void from_json(const json& j, LevelSpec& level) {
    j.at("q").get_to(level.q);
    j.at("alphas").get_to(level.alphas);
    if (j.contains("spacers")) j.at("spacers").get_to(level.spacers);
}

inline void to_json(json& j, const IcebergSchedule& s) {
    j = json{{"seed_word", s.seed_word}, {"levels", s.levels}};
}

inline void from_json(const json& j, IcebergSchedule& s) {
    j.at("seed_word").get_to(s.seed_word);
    j.at("levels").get_to(s.levels);
}

inline void to_json(json& j, const RandomSpec& spec) {
    j = json{{"seed", spec.seed}};
    if (!spec.q_list.empty()) j["q_list"] = spec.q_list;
    if (spec.gamma) j["gamma"] = *spec.gamma;
    j["spacer_rule"] = spec.spacer_lists.empty() ? json("zero") : json(spec.spacer_lists);
}

inline void from_json(const json& j, RandomSpec& spec) {
    j.at("seed").get_to(spec.seed);
    if (j.contains("q_list")) j.at("q_list").get_to(spec.q_list);
    if (j.contains("gamma")) spec.gamma = j.at("gamma").get<double>();
    if (j.contains("spacer_rule") && j.at("spacer_rule").is_array())
        j.at("spacer_rule").get_to(spec.spacer_lists);
}

inline void to_json(json& j, const Occurrence& o) {
    j = json{{"start", o.start}, {"length", o.length}, {"cyclic", o.host_cyclic}};
}

inline void from_json(const json& j, Occurrence& o) {
    j.at("start").get_to(o.start);
    j.at("length").get_to(o.length);
    j.at("cyclic").get_to(o.host_cyclic);
}

inline void to_json(json& j, const DWitness& w) {
    j = json{{"m", w.m}, {"first", w.first}, {"second", w.second}};
}

inline void to_json(json& j, const DReport& r) {
    j = json{{"beta", r.beta},
             {"word_length", r.word_length},
             {"m_star", r.m_star},
             {"m_max", r.m_max},
             {"holds", r.holds},
             {"witnesses", r.witnesses}};
}

inline void to_json(json& j, const MatchStats& s) {
    j = json{{"trials", s.trials},
             {"failures", s.failures},
             {"estimate", s.estimate},
             {"eta", s.eta_param},
             {"beta", s.beta},
             {"q", s.q},
             {"h", s.h},
             {"bound", s.bound},
             {"bound_eta_flipped", s.bound_eta_flipped},
             {"bound_h_as_written", s.bound_h_as_written},
             {"bound_h_flipped", s.bound_h_flipped}};
}

inline void to_json(json& j, const LowerBoundReport& r) {
    j = json{{"h", r.h},
             {"beta", r.beta},
             {"q", r.q},
             {"d_holds", r.d_holds},
             {"blocks_ok", r.blocks_ok},
             {"p_at_h", r.p_at_h},
             {"bound", r.bound},
             {"margin", r.margin},
             {"sigma_size", r.sigma_size},
             {"sigma_distinct", r.sigma_distinct},
             {"sigma_realized", r.sigma_realized},
             {"sigma_realized_distinct", r.sigma_realized_distinct},
             {"passed", r.passed},
             {"note", r.note}};
}

inline void to_json(json& j, const CoverFragment& f) {
    j = json{{"start", f.span.start},
             {"length", f.span.length},
             {"rotation", f.rotation},
             {"source_offset", f.source_offset}};
}

inline void to_json(json& j, const CoverStats& s) {
    j = json{{"orbit_length", s.orbit_length},
             {"window_length", s.window_length},
             {"mode", std::string(cover_mode_name(s.mode))},
             {"epsilon", s.epsilon},
             {"fragments", s.fragments},
             {"covered_letters", s.covered_letters},
             {"uncovered_letters", s.uncovered_letters},
             {"covered_fraction", s.covered_fraction},
             {"avg_fragment_length", s.avg_fragment_length},
             {"scale_estimate", s.scale_estimate},
             {"succeeded", s.succeeded}};
}

inline void to_json(json& j, const FrequencyTable& t) {
    json entries = json::array();
    for (const auto& e : t.entries)
        entries.push_back(json{{"word", e.word}, {"count", e.count}, {"freq", e.freq}});
    j = json{{"l", t.l}, {"windows", t.windows}, {"entries", entries}};
}

/// CSV form of a complexity profile: columns l,p_l and optionally p_bar_l.
inline std::string profile_csv(std::string_view w, const ComplexityProfile& p,
                               bool with_saturated = false, char spacer = kSpacer) {
    CsvWriter csv(with_saturated ? std::vector<std::string>{"l", "p_l", "p_bar_l"}
                                 : std::vector<std::string>{"l", "p_l"});
    for (std::size_t l = 1; l <= p.l_max; ++l) {
        if (with_saturated)
            csv.row(l, p.values[l], saturated_complexity(w, l, spacer));
        else
            csv.row(l, p.values[l]);
    }
    return csv.text();
}

}  // namespace iceberg
