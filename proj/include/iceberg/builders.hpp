#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "iceberg/rng.hpp"
#include "iceberg/word.hpp"

namespace iceberg {

/// Parameters of one expansion step w_{n+1} = rot(w_n, alphas[0]) 0^{spacers[0]}
/// rot(w_n, alphas[1]) 0^{spacers[1]} ... : q blocks, q rotation offsets, q
/// trailing spacer runs (one after each block). An empty spacer list means
/// all-zero, i.e. the spacer-free system.
struct LevelSpec {
    std::int64_t q = 0;
    std::vector<std::int64_t> alphas;
    std::vector<std::int64_t> spacers;

    friend bool operator==(const LevelSpec&, const LevelSpec&) = default;
};

struct IcebergSchedule {
    Word seed_word;
    std::vector<LevelSpec> levels;

    friend bool operator==(const IcebergSchedule&, const IcebergSchedule&) = default;
};

namespace detail {

inline void require_seed_word(const Word& seed, bool needs_two_letters) {
    if (seed.empty()) throw std::invalid_argument("seed word must be non-empty");
    if (needs_two_letters) {
        bool two = false;
        for (char c : seed)
            if (c != seed.front()) {
                two = true;
                break;
            }
        if (!two)
            throw std::invalid_argument("seed word must contain a pair of different letters");
    }
}

inline std::string level_tag(std::size_t level_index) {
    return "level " + std::to_string(level_index + 1);
}

}  // namespace detail

/// Validates one level against the current word length h (block length at
/// this level). Throws std::invalid_argument naming the offending level.
inline void validate_level(const LevelSpec& level, std::size_t h, std::size_t level_index) {
    const std::string tag = detail::level_tag(level_index);
    if (level.q < 2) throw std::invalid_argument(tag + ": q must be >= 2");
    if (level.alphas.size() != static_cast<std::size_t>(level.q))
        throw std::invalid_argument(tag + ": expected q rotation offsets");
    if (level.alphas[0] != 0)
        throw std::invalid_argument(tag + ": alphas[0] must be 0 so the chain extends");
    for (std::int64_t a : level.alphas)
        if (a < 0 || a >= static_cast<std::int64_t>(h))
            throw std::invalid_argument(tag + ": rotation offset out of [0, h)");
    if (!level.spacers.empty() && level.spacers.size() != static_cast<std::size_t>(level.q))
        throw std::invalid_argument(tag + ": expected q spacer runs (or none)");
    for (std::int64_t s : level.spacers)
        if (s < 0) throw std::invalid_argument(tag + ": negative spacer length");
}

/// Length of the next word under one level: q*h + sum of spacers.
inline std::uint64_t next_length(const LevelSpec& level, std::uint64_t h) {
    std::uint64_t n = static_cast<std::uint64_t>(level.q) * h;
    for (std::int64_t s : level.spacers) n += static_cast<std::uint64_t>(s);
    return n;
}

/// Final word length of a whole schedule without building anything.
inline std::uint64_t projected_length(const IcebergSchedule& schedule) {
    std::uint64_t h = schedule.seed_word.size();
    for (const auto& level : schedule.levels) h = next_length(level, h);
    return h;
}

/// Builds the chain w_1, ..., w_{N+1} where each step concatenates cyclic
/// rotations of the previous word with spacer runs in between. Since
/// alphas[0] = 0 every w_n is a prefix of w_{n+1}.
inline std::vector<Word> build_iceberg(const IcebergSchedule& schedule) {
    detail::require_seed_word(schedule.seed_word, /*needs_two_letters=*/true);
    std::vector<Word> chain;
    chain.reserve(schedule.levels.size() + 1);
    chain.push_back(schedule.seed_word);
    for (std::size_t n = 0; n < schedule.levels.size(); ++n) {
        const LevelSpec& level = schedule.levels[n];
        const Word& w = chain.back();
        validate_level(level, w.size(), n);
        Word next;
        next.reserve(static_cast<std::size_t>(next_length(level, w.size())));
        for (std::size_t j = 0; j < static_cast<std::size_t>(level.q); ++j) {
            next.append(rotate(w, level.alphas[j]));
            if (!level.spacers.empty())
                next.append(static_cast<std::size_t>(level.spacers[j]), kSpacer);
        }
        chain.push_back(std::move(next));
    }
    return chain;
}

/// Rank-one chain v_1, ..., v_{N+1}: each step concatenates unrotated copies
/// of v_n separated by spacer runs, v_{n+1} = v_n 0^{s_0} v_n 0^{s_1} ... v_n.
/// A level with spacer list of length r produces r+1 copies.
inline std::vector<Word> build_rank_one_chain(
    const Word& seed, const std::vector<std::vector<std::int64_t>>& spacer_schedule,
    std::size_t levels) {
    detail::require_seed_word(seed, /*needs_two_letters=*/false);
    if (levels > spacer_schedule.size())
        throw std::invalid_argument("rank-one: fewer spacer lists than levels");
    std::vector<Word> chain;
    chain.reserve(levels + 1);
    chain.push_back(seed);
    for (std::size_t n = 0; n < levels; ++n) {
        const auto& gaps = spacer_schedule[n];
        if (gaps.empty())
            throw std::invalid_argument(detail::level_tag(n) +
                                        ": rank-one level needs at least one gap");
        const Word& v = chain.back();
        std::uint64_t total = static_cast<std::uint64_t>(gaps.size() + 1) * v.size();
        for (std::int64_t s : gaps) {
            if (s < 0)
                throw std::invalid_argument(detail::level_tag(n) + ": negative spacer length");
            total += static_cast<std::uint64_t>(s);
        }
        Word next;
        next.reserve(static_cast<std::size_t>(total));
        next.append(v);
        for (std::int64_t s : gaps) {
            next.append(static_cast<std::size_t>(s), kSpacer);
            next.append(v);
        }
        chain.push_back(std::move(next));
    }
    return chain;
}

inline Word build_rank_one(const Word& seed,
                           const std::vector<std::vector<std::int64_t>>& spacer_schedule,
                           std::size_t levels) {
    return build_rank_one_chain(seed, spacer_schedule, levels).back();
}

/// Recipe for drawing an IcebergSchedule. Exactly one of q_list / gamma must
/// be set; q_n = ceil(h_n^gamma) in the power form. Spacer lists are explicit
/// or absent (spacer-free).
struct RandomSpec {
    std::uint64_t seed = 0;
    std::vector<std::int64_t> q_list;
    std::optional<double> gamma;
    std::vector<std::vector<std::int64_t>> spacer_lists;

    friend bool operator==(const RandomSpec&, const RandomSpec&) = default;
};

/// Draws rotation offsets level by level: alphas[0] = 0, alphas[j] uniform on
/// [0, h_n) for j >= 1. Level n uses child stream n of the spec seed, so the
/// result is a pure function of (spec, seed_word, levels).
inline IcebergSchedule random_schedule(const RandomSpec& spec, const Word& seed_word,
                                       std::size_t levels) {
    detail::require_seed_word(seed_word, /*needs_two_letters=*/true);
    const bool has_q_list = !spec.q_list.empty();
    if (has_q_list == spec.gamma.has_value())
        throw std::invalid_argument("random_schedule: set exactly one of q_list / gamma");
    if (has_q_list && spec.q_list.size() < levels)
        throw std::invalid_argument("random_schedule: q_list shorter than levels");
    if (!spec.spacer_lists.empty() && spec.spacer_lists.size() < levels)
        throw std::invalid_argument("random_schedule: spacer_lists shorter than levels");

    Rng master(spec.seed);
    IcebergSchedule schedule;
    schedule.seed_word = seed_word;
    std::uint64_t h = seed_word.size();
    for (std::size_t n = 0; n < levels; ++n) {
        LevelSpec level;
        if (has_q_list) {
            level.q = spec.q_list[n];
        } else {
            level.q = static_cast<std::int64_t>(
                std::ceil(std::pow(static_cast<double>(h), *spec.gamma)));
        }
        if (level.q < 2) throw std::invalid_argument(detail::level_tag(n) + ": q must be >= 2");
        Rng rng = master.child(n);
        level.alphas.resize(static_cast<std::size_t>(level.q));
        level.alphas[0] = 0;
        for (std::size_t j = 1; j < level.alphas.size(); ++j)
            level.alphas[j] = static_cast<std::int64_t>(rng.below(h));
        if (!spec.spacer_lists.empty()) {
            level.spacers = spec.spacer_lists[n];
            if (level.spacers.size() != static_cast<std::size_t>(level.q))
                throw std::invalid_argument(detail::level_tag(n) +
                                            ": spacer list size must equal q");
        }
        validate_level(level, static_cast<std::size_t>(h), n);
        h = next_length(level, h);
        schedule.levels.push_back(std::move(level));
    }
    return schedule;
}

// ---------------------------------------------------------------------------
// Pascal adic coding word.
//
// Tower blocks over {a,b} follow the edge recursion
//   B(n,0) = "a",  B(n,n) = "b",  B(n,k) = B(n-1,k-1) B(n-1,k),
// so |B(n,k)| = C(n,k). The level word reads the full generalized tower of
// step n bottom to top: pascal_word(n) = B(n-1,0) B(n-1,1) ... B(n-1,n-1),
// of length 2^{n-1}. Every step-n tower word B(n,k) occurs in it contiguously
// because adjacent blocks concatenate to the next row's block. The reading is
// pluggable: tallest_column selects the single mid column word instead.
// ---------------------------------------------------------------------------

enum class PascalReading { level_concat, tallest_column };

/// Levels above this would exceed the default memory guard.
inline constexpr std::size_t kPascalMaxLevel = 27;

/// Row n of tower blocks, B(n,0), ..., B(n,n); n >= 1.
inline std::vector<Word> pascal_blocks(std::size_t n) {
    if (n == 0) throw std::invalid_argument("pascal_blocks: n must be >= 1");
    if (n > kPascalMaxLevel) throw std::invalid_argument("pascal_blocks: level above limit");
    std::vector<Word> row = {"a", "b"};
    for (std::size_t m = 2; m <= n; ++m) {
        std::vector<Word> next(m + 1);
        next.front() = "a";
        next.back() = "b";
        for (std::size_t k = 1; k < m; ++k) next[k] = row[k - 1] + row[k];
        row = std::move(next);
    }
    return row;
}

inline Word pascal_word(std::size_t level,
                        PascalReading reading = PascalReading::level_concat) {
    if (level == 0) throw std::invalid_argument("pascal_word: level must be >= 1");
    if (level > kPascalMaxLevel) throw std::invalid_argument("pascal_word: level above limit");
    if (level == 1) return "a";
    const std::vector<Word> row = pascal_blocks(level - 1);
    if (reading == PascalReading::tallest_column) return row[(level - 1) / 2];
    Word out;
    out.reserve(std::size_t{1} << (level - 1));
    for (const Word& block : row) out.append(block);
    return out;
}

}  // namespace iceberg
