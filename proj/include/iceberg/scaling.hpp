#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "iceberg/suffix_automaton.hpp"
#include "iceberg/word.hpp"

namespace iceberg {

enum class CoverMode { subword, cyclic_rotation };

inline std::string_view cover_mode_name(CoverMode m) noexcept {
    return m == CoverMode::subword ? "subword" : "cyclic-rotation";
}

/// One fragment of a greedy cover: a span of the orbit word that verbatim
/// matches rotate(W, rotation) starting at source_offset (rotation is 0 in
/// subword mode).
struct CoverFragment {
    Occurrence span;
    std::size_t rotation = 0;
    std::size_t source_offset = 0;
};

struct CoverStats {
    std::size_t orbit_length = 0;
    std::size_t window_length = 0;  // |W|
    CoverMode mode = CoverMode::subword;
    double epsilon = 0.0;  // uncovered-fraction budget
    std::vector<CoverFragment> fragments;
    std::size_t covered_letters = 0;
    std::size_t uncovered_letters = 0;
    double covered_fraction = 0.0;
    double avg_fragment_length = 0.0;
    double scale_estimate = 0.0;  // avg_fragment_length / |W|
    bool succeeded = false;       // covered_fraction >= 1 - epsilon
};

/// Left-to-right greedy cover: at each position take the longest prefix of
/// the remaining orbit that is a subword of W (subword mode) or of some
/// cyclic rotation of W (cyclic-rotation mode; fragments are then capped at
/// |W| and located in the doubled word WW). Positions matching no fragment
/// of length >= 1 stay uncovered.
inline CoverStats greedy_cover(std::string_view orbit, std::string_view window, CoverMode mode,
                               double epsilon = 0.0) {
    if (window.empty()) throw std::invalid_argument("greedy_cover: empty window word");
    if (window.size() > orbit.size())
        throw std::invalid_argument("greedy_cover: window longer than orbit");

    std::string doubled;
    if (mode == CoverMode::cyclic_rotation) {
        doubled.reserve(2 * window.size());
        doubled.append(window);
        doubled.append(window);
    }
    const SuffixAutomaton automaton(mode == CoverMode::subword ? window
                                                               : std::string_view(doubled));

    CoverStats stats;
    stats.orbit_length = orbit.size();
    stats.window_length = window.size();
    stats.mode = mode;
    stats.epsilon = epsilon;

    std::size_t p = 0;
    while (p < orbit.size()) {
        int state = automaton.initial();
        std::size_t len = 0;
        while (p + len < orbit.size() && len < window.size()) {
            const int next = automaton.step(state, orbit[p + len]);
            if (next < 0) break;
            state = next;
            ++len;
        }
        if (len == 0) {
            ++stats.uncovered_letters;
            ++p;
            continue;
        }
        const std::size_t start = automaton.first_end(state) + 1 - len;
        CoverFragment fragment;
        fragment.span = {p, len, false};
        if (mode == CoverMode::subword) {
            fragment.rotation = 0;
            fragment.source_offset = start;
        } else {
            fragment.rotation = start % window.size();
            fragment.source_offset = 0;
        }
        stats.fragments.push_back(fragment);
        stats.covered_letters += len;
        p += len;
    }

    stats.covered_fraction =
        static_cast<double>(stats.covered_letters) / static_cast<double>(orbit.size());
    if (!stats.fragments.empty())
        stats.avg_fragment_length = static_cast<double>(stats.covered_letters) /
                                    static_cast<double>(stats.fragments.size());
    stats.scale_estimate = stats.avg_fragment_length / static_cast<double>(window.size());
    stats.succeeded = stats.covered_fraction >= 1.0 - epsilon - 1e-12;
    return stats;
}

/// Reads the fragment back from (W, rotation, source_offset); tests assert it
/// verbatim-matches the orbit span.
inline Word cover_fragment_source(const CoverFragment& fragment, std::string_view window) {
    const Word rotated = rotate(window, static_cast<std::int64_t>(fragment.rotation));
    return rotated.substr(fragment.source_offset, fragment.span.length);
}

/// Predicted cover scale for the Pascal coding word: 1 / sqrt(pi * log2 h).
inline double pascal_scale_prediction(std::size_t h) {
    if (h < 2) throw std::invalid_argument("pascal_scale_prediction: h must be >= 2");
    return 1.0 / std::sqrt(3.14159265358979323846 * std::log2(static_cast<double>(h)));
}

/// Binomial tower heights (C(n,0), ..., C(n,n)); their sum is 2^n while the
/// generalized tower of the level-(n) coding word has height 2^{n-1}.
inline std::vector<std::uint64_t> pascal_tower_profile(std::size_t n) {
    if (n == 0) throw std::invalid_argument("pascal_tower_profile: n must be >= 1");
    if (n > 62) throw std::invalid_argument("pascal_tower_profile: n too large for 64-bit heights");
    std::vector<std::uint64_t> row = {1};
    for (std::size_t m = 1; m <= n; ++m) {
        std::vector<std::uint64_t> next(m + 1, 1);
        for (std::size_t k = 1; k < m; ++k) next[k] = row[k - 1] + row[k];
        row = std::move(next);
    }
    return row;
}

}  // namespace iceberg
