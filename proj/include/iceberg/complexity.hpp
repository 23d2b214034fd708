#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "iceberg/suffix_automaton.hpp"
#include "iceberg/word.hpp"

namespace iceberg {

enum class Engine { naive, automaton };

inline std::string_view engine_name(Engine e) noexcept {
    return e == Engine::naive ? "naive" : "automaton";
}

/// Exact subword complexity values p(l) for 1 <= l <= l_max.
struct ComplexityProfile {
    std::size_t word_length = 0;
    std::size_t l_max = 0;
    bool clamped = false;  // requested l_max exceeded the word length
    Engine engine = Engine::automaton;
    std::vector<std::uint64_t> values;  // values[l], index 0 unused

    std::uint64_t at(std::size_t l) const {
        if (l == 0 || l > l_max) throw std::out_of_range("ComplexityProfile::at");
        return values[l];
    }
};

/// The set of distinct length-l subwords, sorted. Out-of-range l gives the
/// empty set.
inline std::vector<Word> language(std::string_view w, std::size_t l) {
    std::vector<Word> out;
    if (l == 0 || l > w.size()) return out;
    std::unordered_set<std::string_view> seen;
    seen.reserve(w.size() - l + 1);
    for (std::size_t i = 0; i + l <= w.size(); ++i) seen.insert(w.substr(i, l));
    out.reserve(seen.size());
    for (std::string_view v : seen) out.emplace_back(v);
    std::sort(out.begin(), out.end());
    return out;
}

/// Exact p(l) for every l up to l_max. The naive engine materializes the
/// window set per length; the automaton engine recovers all counts from one
/// suffix automaton pass. Both are exact and must agree.
inline ComplexityProfile complexity_profile(std::string_view w, std::size_t l_max,
                                            Engine engine = Engine::automaton) {
    if (w.empty()) throw std::invalid_argument("complexity_profile: empty word");
    if (l_max == 0) throw std::invalid_argument("complexity_profile: l_max must be >= 1");
    ComplexityProfile profile;
    profile.word_length = w.size();
    profile.engine = engine;
    if (l_max > w.size()) {
        profile.clamped = true;
        l_max = w.size();
    }
    profile.l_max = l_max;
    if (engine == Engine::automaton) {
        profile.values = SuffixAutomaton(w).distinct_counts(l_max);
    } else {
        profile.values.assign(l_max + 1, 0);
        std::unordered_set<std::string_view> seen;
        for (std::size_t l = 1; l <= l_max; ++l) {
            seen.clear();
            seen.reserve(w.size() - l + 1);
            for (std::size_t i = 0; i + l <= w.size(); ++i) seen.insert(w.substr(i, l));
            profile.values[l] = seen.size();
        }
    }
    return profile;
}

namespace detail {

/// u <= x in the spacer order: u is x with some letters replaced by the
/// spacer symbol.
inline bool spacer_dominated(std::string_view u, std::string_view x, char spacer) noexcept {
    for (std::size_t i = 0; i < u.size(); ++i)
        if (u[i] != x[i] && u[i] != spacer) return false;
    return true;
}

}  // namespace detail

/// Saturated complexity: the number of maximal elements of the length-l
/// language under the replace-with-spacer order. Plain pairwise scan, meant
/// for desk-scale languages.
inline std::uint64_t saturated_complexity(std::string_view w, std::size_t l,
                                          char spacer = kSpacer) {
    const std::vector<Word> lang = language(w, l);
    std::uint64_t maximal = 0;
    for (std::size_t i = 0; i < lang.size(); ++i) {
        bool dominated = false;
        for (std::size_t j = 0; j < lang.size() && !dominated; ++j)
            dominated = i != j && detail::spacer_dominated(lang[i], lang[j], spacer);
        if (!dominated) ++maximal;
    }
    return maximal;
}

/// Window counts and empirical frequencies of length-l subwords.
struct FrequencyTable {
    struct Entry {
        Word word;
        std::uint64_t count = 0;
        double freq = 0.0;
    };

    std::size_t l = 0;
    std::size_t windows = 0;             // |w| - l + 1
    std::vector<Entry> entries;          // sorted by word
};

inline FrequencyTable empirical_frequencies(std::string_view w, std::size_t l) {
    FrequencyTable table;
    table.l = l;
    if (l == 0 || l > w.size()) return table;
    table.windows = w.size() - l + 1;
    std::unordered_map<std::string_view, std::uint64_t> counts;
    counts.reserve(table.windows);
    for (std::size_t i = 0; i + l <= w.size(); ++i) ++counts[w.substr(i, l)];
    table.entries.reserve(counts.size());
    for (const auto& [view, count] : counts)
        table.entries.push_back(
            {Word(view), count, static_cast<double>(count) / static_cast<double>(table.windows)});
    std::sort(table.entries.begin(), table.entries.end(),
              [](const auto& a, const auto& b) { return a.word < b.word; });
    return table;
}

}  // namespace iceberg
