#pragma once

#include <array>
#include <cstdint>
#include <string_view>
#include <vector>

namespace iceberg {

/// Suffix automaton over a byte string. Linear construction; the alphabet is
/// remapped to the distinct letters actually present, so per-state transition
/// tables stay small for the few-letter words this library works with.
///
/// Besides membership walks it recovers the number of distinct subwords of
/// each length: a state whose longest string has length `len` and whose link
/// points to a state of longest length `plen` contributes one subword for
/// every l in (plen, len], which is a difference-array accumulation.
class SuffixAutomaton {
public:
    explicit SuffixAutomaton(std::string_view text) {
        letter_index_.fill(-1);
        for (unsigned char c : text)
            if (letter_index_[c] < 0) letter_index_[c] = 0;
        sigma_ = 0;
        for (int c = 0; c < 256; ++c)
            if (letter_index_[c] == 0) letter_index_[c] = static_cast<std::int16_t>(sigma_++);
        if (sigma_ == 0) sigma_ = 1;

        states_.reserve(2 * text.size() + 2);
        trans_.reserve((2 * text.size() + 2) * static_cast<std::size_t>(sigma_));
        last_ = new_state(0, -1, -1);
        for (std::size_t i = 0; i < text.size(); ++i) extend(letter_index_[static_cast<unsigned char>(text[i])], i);
        text_length_ = text.size();
    }

    std::size_t state_count() const noexcept { return states_.size(); }
    std::size_t text_length() const noexcept { return text_length_; }

    int initial() const noexcept { return 0; }

    /// Transition from `state` on letter `c`, or -1 when the walked string
    /// cannot be extended (i.e. it is not a subword of the text).
    int step(int state, char c) const noexcept {
        const std::int16_t k = letter_index_[static_cast<unsigned char>(c)];
        if (k < 0) return -1;
        return trans_[static_cast<std::size_t>(state) * sigma_ + k];
    }

    /// Longest string length represented by the state.
    std::size_t max_length(int state) const noexcept {
        return static_cast<std::size_t>(states_[static_cast<std::size_t>(state)].len);
    }

    /// Index of the last letter of the first occurrence of any string in the
    /// state's class; a string of length L reached by a walk into this state
    /// occurs at [first_end - L + 1, first_end].
    std::size_t first_end(int state) const noexcept {
        return static_cast<std::size_t>(states_[static_cast<std::size_t>(state)].first_end);
    }

    /// counts[l] = number of distinct subwords of length l, for 1 <= l <=
    /// min(l_max, text length); counts[0] is unused.
    std::vector<std::uint64_t> distinct_counts(std::size_t l_max) const {
        if (l_max > text_length_) l_max = text_length_;
        std::vector<std::int64_t> diff(text_length_ + 2, 0);
        for (std::size_t s = 1; s < states_.size(); ++s) {
            const auto& st = states_[s];
            const std::int64_t lo = states_[static_cast<std::size_t>(st.link)].len + 1;
            const std::int64_t hi = st.len;
            diff[static_cast<std::size_t>(lo)] += 1;
            diff[static_cast<std::size_t>(hi) + 1] -= 1;
        }
        std::vector<std::uint64_t> counts(l_max + 1, 0);
        std::int64_t running = 0;
        for (std::size_t l = 1; l <= l_max; ++l) {
            running += diff[l];
            counts[l] = static_cast<std::uint64_t>(running);
        }
        return counts;
    }

private:
    struct State {
        std::int64_t len = 0;
        std::int32_t link = -1;
        std::int64_t first_end = -1;
    };

    int new_state(std::int64_t len, std::int32_t link, std::int64_t first_end) {
        states_.push_back({len, link, first_end});
        trans_.resize(states_.size() * static_cast<std::size_t>(sigma_), -1);
        return static_cast<int>(states_.size() - 1);
    }

    std::int32_t& tr(int state, int letter) {
        return trans_[static_cast<std::size_t>(state) * sigma_ + static_cast<std::size_t>(letter)];
    }

    void extend(int letter, std::size_t position) {
        const int cur = new_state(states_[static_cast<std::size_t>(last_)].len + 1, -1,
                                  static_cast<std::int64_t>(position));
        int p = last_;
        while (p >= 0 && tr(p, letter) < 0) {
            tr(p, letter) = cur;
            p = states_[static_cast<std::size_t>(p)].link;
        }
        if (p < 0) {
            states_[static_cast<std::size_t>(cur)].link = 0;
        } else {
            const int q = tr(p, letter);
            if (states_[static_cast<std::size_t>(p)].len + 1 == states_[static_cast<std::size_t>(q)].len) {
                states_[static_cast<std::size_t>(cur)].link = q;
            } else {
                const int clone = new_state(states_[static_cast<std::size_t>(p)].len + 1,
                                            states_[static_cast<std::size_t>(q)].link,
                                            states_[static_cast<std::size_t>(q)].first_end);
                for (int c = 0; c < sigma_; ++c) tr(clone, c) = tr(q, c);
                while (p >= 0 && tr(p, letter) == q) {
                    tr(p, letter) = clone;
                    p = states_[static_cast<std::size_t>(p)].link;
                }
                states_[static_cast<std::size_t>(q)].link = clone;
                states_[static_cast<std::size_t>(cur)].link = clone;
            }
        }
        last_ = cur;
    }

    std::vector<State> states_;
    std::vector<std::int32_t> trans_;
    std::array<std::int16_t, 256> letter_index_{};
    int sigma_ = 0;
    int last_ = 0;
    std::size_t text_length_ = 0;
};

}  // namespace iceberg
