#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace iceberg {

/// Finite words are plain byte strings; each char is one letter.
using Word = std::string;

/// Reserved spacer letter. It is shared with the data alphabet on purpose:
/// binary constructions use {0,1} and insert runs of '0' between blocks.
inline constexpr char kSpacer = '0';

/// One occurrence of a subword inside a host word, 0-based. When the host is
/// treated cyclically the start is reduced mod |host|.
struct Occurrence {
    std::size_t start = 0;
    std::size_t length = 0;
    bool host_cyclic = false;

    friend bool operator==(const Occurrence&, const Occurrence&) = default;
};

/// Same starting position = identical; equal content at different starts is
/// merely "equal".
inline bool identical(const Occurrence& a, const Occurrence& b) noexcept {
    return a.start == b.start;
}

/// Cyclic rotation: rotate(w, alpha)[i] = w[(i + alpha) mod |w|].
/// Equivalently, for w = uv with |u| = alpha the result is vu. Any integer
/// alpha is accepted and reduced mod |w|.
inline Word rotate(std::string_view w, std::int64_t alpha) {
    if (w.empty()) throw std::invalid_argument("rotate: empty word");
    const auto h = static_cast<std::int64_t>(w.size());
    std::int64_t r = alpha % h;
    if (r < 0) r += h;
    Word out;
    out.reserve(w.size());
    out.append(w.substr(static_cast<std::size_t>(r)));
    out.append(w.substr(0, static_cast<std::size_t>(r)));
    return out;
}

/// Fraction of positions where two equal-length words differ.
inline double dbar(std::string_view u, std::string_view v) {
    if (u.size() != v.size()) throw std::invalid_argument("dbar: length mismatch");
    if (u.empty()) throw std::invalid_argument("dbar: empty words");
    std::size_t mismatches = 0;
    for (std::size_t i = 0; i < u.size(); ++i)
        if (u[i] != v[i]) ++mismatches;
    return static_cast<double>(mismatches) / static_cast<double>(u.size());
}

/// Count and fraction of one distinguished letter (default '1').
struct LetterStats {
    std::size_t count = 0;
    std::size_t length = 0;

    double fraction() const noexcept {
        return length == 0 ? 0.0 : static_cast<double>(count) / static_cast<double>(length);
    }
};

inline LetterStats letter_stats(std::string_view w, char letter = '1') noexcept {
    LetterStats s;
    s.length = w.size();
    for (char c : w)
        if (c == letter) ++s.count;
    return s;
}

/// Fraction of '1' letters.
inline double nu(std::string_view w) noexcept { return letter_stats(w).fraction(); }

/// All start positions of `u` in `host`. With cyclic = true the host wraps
/// around: starts range over [0, |host|) and matches may cross the end,
/// which is the doubled-word scan with start < |host|.
inline std::vector<Occurrence> classify_occurrences(std::string_view u, std::string_view host,
                                                    bool cyclic = false) {
    if (u.empty()) throw std::invalid_argument("classify_occurrences: empty subword");
    std::vector<Occurrence> out;
    if (host.empty()) return out;
    if (!cyclic) {
        if (u.size() > host.size()) return out;
        for (std::size_t s = 0; s + u.size() <= host.size(); ++s)
            if (host.compare(s, u.size(), u) == 0) out.push_back({s, u.size(), false});
        return out;
    }
    if (u.size() > host.size()) return out;
    std::string doubled;
    doubled.reserve(2 * host.size());
    doubled.append(host);
    doubled.append(host);
    for (std::size_t s = 0; s < host.size(); ++s)
        if (doubled.compare(s, u.size(), u) == 0) out.push_back({s, u.size(), true});
    return out;
}

/// Witness that u is a subword of some cyclic rotation of a host word:
/// u occurs at position `occurrence.start` of rotate(host, rotation).
struct CyclicOccurrence {
    std::size_t rotation = 0;
    Occurrence occurrence;
};

/// Finds a rotation of `w` containing `u`, scanning the doubled word ww at
/// start positions < |w|. The witness places u as a prefix of rotate(w, s).
inline std::optional<CyclicOccurrence> find_cyclic_subword(std::string_view u, std::string_view w) {
    if (u.empty()) throw std::invalid_argument("find_cyclic_subword: empty subword");
    if (w.empty() || u.size() > w.size()) return std::nullopt;
    std::string doubled;
    doubled.reserve(2 * w.size());
    doubled.append(w);
    doubled.append(w);
    for (std::size_t s = 0; s < w.size(); ++s)
        if (doubled.compare(s, u.size(), u) == 0)
            return CyclicOccurrence{s, Occurrence{0, u.size(), false}};
    return std::nullopt;
}

inline bool is_cyclic_subword(std::string_view u, std::string_view w) {
    return find_cyclic_subword(u, w).has_value();
}

}  // namespace iceberg
