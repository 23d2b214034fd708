#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "iceberg/builders.hpp"
#include "iceberg/complexity.hpp"
#include "iceberg/parallel.hpp"
#include "iceberg/rng.hpp"
#include "iceberg/word.hpp"

namespace iceberg {

/// Smallest subword length the matching property D(beta) constrains:
/// the least integer m with m >= beta*|w|, clamped to [1, |w|]. A small
/// epsilon guards against decimal beta values like 0.1 whose product with h
/// lands a hair above an exact integer.
inline std::size_t d_threshold(std::size_t h, double beta) {
    if (!(beta > 0.0) || beta > 1.0)
        throw std::invalid_argument("d_threshold: beta must lie in (0, 1]");
    const double x = beta * static_cast<double>(h);
    const double eps = std::max(1e-9, x * 1e-12);
    auto m = static_cast<std::size_t>(std::ceil(x - eps));
    if (m < 1) m = 1;
    if (m > h) m = h;
    return m;
}

/// A pair of equal-but-not-identical cyclic occurrences of some length-m
/// subword.
struct DWitness {
    std::size_t m = 0;
    Occurrence first;
    Occurrence second;
};

/// Verdict of the matching property D(beta) for a finite cyclic word: no
/// length-m cyclic subword with m >= beta*|w| may occur at two distinct
/// cyclic start positions.
struct DReport {
    double beta = 0.0;
    std::size_t word_length = 0;
    std::size_t m_star = 0;  // smallest constrained length; checking it suffices
    std::size_t m_max = 0;   // largest constrained length, |w|
    bool holds = false;
    std::vector<DWitness> witnesses;
};

/// Checks D(beta) by examining only m* = ceil(beta*|w|): any repeated longer
/// cyclic subword contains a repeated length-m* one at the same distinct
/// start positions. Witness pairs are adjacent duplicates in sorted window
/// order, capped at max_witnesses (holds is always exact).
inline DReport check_d(std::string_view w, double beta, std::size_t max_witnesses = 16) {
    if (w.empty()) throw std::invalid_argument("check_d: empty word");
    DReport report;
    report.beta = beta;
    report.word_length = w.size();
    report.m_star = d_threshold(w.size(), beta);
    report.m_max = w.size();

    const std::size_t h = w.size();
    const std::size_t m = report.m_star;
    std::string doubled;
    doubled.reserve(2 * h);
    doubled.append(w);
    doubled.append(w);
    const std::string_view d(doubled);

    std::vector<std::size_t> order(h);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        const int c = d.compare(a, m, d.substr(b, m));
        return c < 0 || (c == 0 && a < b);
    });
    report.holds = true;
    for (std::size_t k = 1; k < h; ++k) {
        const std::size_t a = order[k - 1], b = order[k];
        if (d.compare(a, m, d.substr(b, m)) == 0) {
            report.holds = false;
            if (report.witnesses.size() < max_witnesses)
                report.witnesses.push_back(
                    {m, Occurrence{std::min(a, b), m, true}, Occurrence{std::max(a, b), m, true}});
        }
    }
    return report;
}

/// Single-position matching probability bound for two independently rotated
/// copies of a word with a nu-fraction of '1' letters: 1 - 2 nu + 2 nu^2.
inline double eta(double nu) {
    if (nu < 0.0 || nu > 1.0) throw std::invalid_argument("eta: nu must lie in [0, 1]");
    return 1.0 - 2.0 * nu + 2.0 * nu * nu;
}

/// Established by exhaustive verification (see the acceptance suite): the
/// block construction below meets the ceil(m/3) size floor for every m >= 1.
inline constexpr std::size_t kOverlappingSubsetM0 = 1;

/// A subset A of [0, m) with A and A+s disjoint and |A| >= ceil(m/3):
/// residues mod 2|s| falling in [0, |s|), i.e. keep a block of s, skip s.
inline std::vector<std::size_t> overlapping_subset(std::size_t m, std::int64_t s) {
    if (s == 0) throw std::invalid_argument("overlapping_subset: shift must be nonzero");
    const std::size_t t = static_cast<std::size_t>(s < 0 ? -s : s);
    std::vector<std::size_t> out;
    out.reserve(m / 2 + 1);
    for (std::size_t x = 0; x < m; ++x)
        if (x % (2 * t) < t) out.push_back(x);
    return out;
}

/// Reflection form: A inside [0, m] (inclusive) with x + y != c for all
/// x, y in A. Kept alongside the shift form, which is the one the chain
/// arguments actually consume.
inline std::vector<std::size_t> reflection_disjoint_subset(std::size_t m, std::int64_t c) {
    if (c == 0)
        throw std::invalid_argument("reflection_disjoint_subset: offset must be nonzero");
    std::vector<std::size_t> out;
    out.reserve(m + 1);
    if (c < 0) {
        for (std::size_t x = 0; x <= m; ++x) out.push_back(x);
        return out;
    }
    const std::size_t uc = static_cast<std::size_t>(c);
    for (std::size_t x = 0; x <= m; ++x)
        if (2 * x < uc || x > uc) out.push_back(x);
    return out;
}

/// Boundary-straddling configuration: the length-h word made of the last xi
/// letters of rotate(w, phi1) followed by the first h - xi letters of
/// rotate(w, phi2).
struct TripleConfig {
    std::size_t xi = 0;
    std::size_t phi1 = 0;
    std::size_t phi2 = 0;

    friend bool operator==(const TripleConfig&, const TripleConfig&) = default;
};

inline Word triple_word(const TripleConfig& t, std::string_view w) {
    const std::size_t h = w.size();
    if (t.xi == 0 || t.xi >= h)
        throw std::invalid_argument("triple_word: xi must lie strictly inside (0, h)");
    Word v(h, '\0');
    for (std::size_t i = 0; i < t.xi; ++i) v[i] = w[(h - t.xi + i + t.phi1) % h];
    for (std::size_t i = t.xi; i < h; ++i) v[i] = w[(i - t.xi + t.phi2) % h];
    return v;
}

/// The identical-interval matching condition for two straddling
/// configurations (xi, phi1, phi2) and (eta, psi1, psi2) over a word of
/// length h, all equalities mod h:
///   eta - xi = psi1 - phi1 = psi2 - phi2 = h + psi1 - phi2.
/// When xi = eta the middle interval [xi, eta) is empty and the last
/// equality does not arise. Under the matching property and the separation
/// hypotheses this is equivalent to the two configuration words being equal.
inline bool triple_match_condition(TripleConfig a, TripleConfig b, std::size_t h) {
    if (h == 0) throw std::invalid_argument("triple_match_condition: empty word length");
    if (a.xi > b.xi) std::swap(a, b);
    const auto sub = [h](std::size_t x, std::size_t y) { return (x % h + h - y % h) % h; };
    const std::size_t d = sub(b.xi, a.xi);
    if (sub(b.phi1, a.phi1) != d || sub(b.phi2, a.phi2) != d) return false;
    return d == 0 || sub(b.phi1, a.phi2) == d;
}

/// The progression family of configurations used for the lower-bound count:
/// xi runs over kappa, kappa + a, ..., with kappa = a = floor(beta*h), and
/// (phi1, phi2) over all ordered pairs with phi1 != phi2. Its size is
/// m * (h^2 - h) with m = floor((1 - 2 beta) h / a).
inline std::vector<TripleConfig> sigma_set(std::size_t h, double beta) {
    if (!(beta > 0.0) || beta > 1.0) throw std::invalid_argument("sigma_set: beta out of (0, 1]");
    const auto a = static_cast<std::size_t>(std::floor(beta * static_cast<double>(h) + 1e-9));
    if (a == 0) throw std::invalid_argument("sigma_set: beta too small for this h");
    const double span = (1.0 - 2.0 * beta) * static_cast<double>(h);
    const auto m = span <= 0.0 ? std::size_t{0}
                               : static_cast<std::size_t>(std::floor(span / static_cast<double>(a) + 1e-9));
    std::vector<TripleConfig> out;
    out.reserve(m * h * (h - 1));
    for (std::size_t j = 0; j < m; ++j) {
        const std::size_t xi = a + j * a;
        for (std::size_t phi1 = 0; phi1 < h; ++phi1)
            for (std::size_t phi2 = 0; phi2 < h; ++phi2)
                if (phi1 != phi2) out.push_back({xi, phi1, phi2});
    }
    return out;
}

/// One Monte Carlo trial: builds a single level from the given rotation
/// offsets and evaluates D(beta) on the result. Returns true when the
/// property holds.
inline bool d_trial(const Word& seed_word, const std::vector<std::int64_t>& alphas, double beta) {
    IcebergSchedule schedule;
    schedule.seed_word = seed_word;
    schedule.levels.push_back({static_cast<std::int64_t>(alphas.size()), alphas, {}});
    const std::vector<Word> chain = build_iceberg(schedule);
    return check_d(chain.back(), beta).holds;
}

/// Empirical failure rate of D(beta) over seeded random one-level builds,
/// reported next to the matching-probability bound formulas. Both sign
/// readings of the exponent are included because the written form of the
/// eta bound exceeds 1 for large q.
struct MatchStats {
    std::size_t trials = 0;
    std::size_t failures = 0;
    double estimate = 0.0;   // failures / trials
    double eta_param = 0.0;  // eta(nu(seed word))
    double beta = 0.0;
    std::size_t q = 0;
    std::size_t h = 0;                 // seed word length
    double bound = 0.0;                // 2 q^3 eta^{-beta q / 12}, as written
    double bound_eta_flipped = 0.0;    // 2 q^3 eta^{+beta q / 12}
    double bound_h_as_written = 0.0;   // q^3 h^{-beta q / 12}
    double bound_h_flipped = 0.0;      // q^3 h^{+beta q / 12}
};

inline MatchStats match_probability_mc(const Word& seed_word, std::size_t q, std::size_t trials,
                                       double beta, std::uint64_t rng_seed) {
    if (trials == 0) throw std::invalid_argument("match_probability_mc: trials must be >= 1");
    if (q < 2) throw std::invalid_argument("match_probability_mc: q must be >= 2");
    detail::require_seed_word(seed_word, /*needs_two_letters=*/true);

    const std::size_t h = seed_word.size();
    const Rng master(rng_seed);
    std::vector<std::uint8_t> failed(trials, 0);
    parallel_for(trials, [&](std::size_t t) {
        Rng rng = master.child(t);
        std::vector<std::int64_t> alphas(q, 0);
        for (std::size_t j = 1; j < q; ++j) alphas[j] = static_cast<std::int64_t>(rng.below(h));
        failed[t] = d_trial(seed_word, alphas, beta) ? 0 : 1;
    });

    MatchStats stats;
    stats.trials = trials;
    for (std::uint8_t f : failed) stats.failures += f;
    stats.estimate = static_cast<double>(stats.failures) / static_cast<double>(trials);
    stats.eta_param = eta(nu(seed_word));
    stats.beta = beta;
    stats.q = q;
    stats.h = h;
    const double qd = static_cast<double>(q);
    const double hd = static_cast<double>(h);
    const double expo = beta * qd / 12.0;
    stats.bound = 2.0 * qd * qd * qd * std::pow(stats.eta_param, -expo);
    stats.bound_eta_flipped = 2.0 * qd * qd * qd * std::pow(stats.eta_param, expo);
    stats.bound_h_as_written = qd * qd * qd * std::pow(hd, -expo);
    stats.bound_h_flipped = qd * qd * qd * std::pow(hd, expo);
    return stats;
}

/// Outcome of the lower-bound comparison p_{w_next}(h) >= (1-4b)/b (h^2 - h)
/// for a word w_next assembled from q rotated blocks of w.
struct LowerBoundReport {
    std::size_t h = 0;
    double beta = 0.0;
    std::size_t q = 0;
    bool d_holds = false;     // precondition: w satisfies D(beta)
    bool blocks_ok = false;   // w_next decomposes into rotations of w
    std::uint64_t p_at_h = 0;
    double bound = 0.0;
    double margin = 0.0;
    std::size_t sigma_size = 0;
    std::size_t sigma_distinct = 0;           // distinct configuration words
    std::size_t sigma_realized = 0;           // configs whose (phi1, phi2) occurs adjacently
    std::size_t sigma_realized_distinct = 0;  // distinct words among those
    bool passed = false;
    std::string note;
};

/// Exact complexity vs. the progression bound. Recovers the per-block
/// rotation offsets of w_next, checks D(beta) on w, computes p_{w_next}(h)
/// with the fast engine, and verifies pairwise distinctness of the
/// progression words (all of them, and the subfamily realized by adjacent
/// block pairs of w_next).
inline LowerBoundReport lower_bound_check(std::string_view w_next, std::string_view w,
                                          double beta) {
    LowerBoundReport report;
    const std::size_t h = w.size();
    if (h < 2) throw std::invalid_argument("lower_bound_check: base word too short");
    report.h = h;
    report.beta = beta;
    const double bd = beta;
    report.bound = (1.0 - 4.0 * bd) / bd * (static_cast<double>(h) * static_cast<double>(h) -
                                            static_cast<double>(h));

    const DReport d = check_d(w, beta);
    report.d_holds = d.holds;

    if (w_next.size() % h != 0 || w_next.size() < 2 * h) {
        report.note = "w_next length is not a multiple (>= 2) of |w|";
        return report;
    }
    report.q = w_next.size() / h;

    std::unordered_map<std::string_view, std::size_t> rotation_of;
    std::vector<Word> rotations(h);
    for (std::size_t r = 0; r < h; ++r) {
        rotations[r] = rotate(w, static_cast<std::int64_t>(r));
        rotation_of.emplace(rotations[r], r);
    }
    std::vector<std::size_t> offsets;
    offsets.reserve(report.q);
    report.blocks_ok = true;
    for (std::size_t j = 0; j < report.q; ++j) {
        const auto it = rotation_of.find(w_next.substr(j * h, h));
        if (it == rotation_of.end()) {
            report.blocks_ok = false;
            report.note = "block " + std::to_string(j) + " is not a rotation of w";
            break;
        }
        offsets.push_back(it->second);
    }
    if (!report.d_holds && report.note.empty()) report.note = "precondition D(beta) fails for w";
    if (!report.blocks_ok) return report;

    report.p_at_h = complexity_profile(w_next, h, Engine::automaton).at(h);
    report.margin = static_cast<double>(report.p_at_h) - report.bound;

    const std::vector<TripleConfig> sigma = sigma_set(h, beta);
    report.sigma_size = sigma.size();
    std::vector<std::string> words;
    words.reserve(sigma.size());
    for (const TripleConfig& t : sigma) words.push_back(triple_word(t, w));
    std::sort(words.begin(), words.end());
    report.sigma_distinct =
        static_cast<std::size_t>(std::unique(words.begin(), words.end()) - words.begin());

    std::unordered_set<std::uint64_t> adjacent;
    adjacent.reserve(report.q);
    for (std::size_t j = 0; j + 1 < report.q; ++j)
        adjacent.insert(offsets[j] * static_cast<std::uint64_t>(h) + offsets[j + 1]);
    std::vector<std::string> realized;
    for (const TripleConfig& t : sigma)
        if (adjacent.contains(t.phi1 * static_cast<std::uint64_t>(h) + t.phi2))
            realized.push_back(triple_word(t, w));
    report.sigma_realized = realized.size();
    std::sort(realized.begin(), realized.end());
    report.sigma_realized_distinct =
        static_cast<std::size_t>(std::unique(realized.begin(), realized.end()) - realized.begin());

    report.passed = report.d_holds && report.blocks_ok &&
                    static_cast<double>(report.p_at_h) >= report.bound;
    return report;
}

}  // namespace iceberg
