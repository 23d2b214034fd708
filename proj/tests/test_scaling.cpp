#include <catch2/catch.hpp>

#include <string>
#include <vector>

#include "iceberg/builders.hpp"
#include "iceberg/rng.hpp"
#include "iceberg/scaling.hpp"

using namespace iceberg;

namespace {

Word random_binary_seed(Rng& rng, std::size_t len) {
    Word w(len, '0');
    do {
        for (auto& c : w) c = rng.below(2) ? '1' : '0';
    } while (w.find('0') == Word::npos || w.find('1') == Word::npos);
    return w;
}

void require_fragments_verbatim(const CoverStats& stats, std::string_view orbit,
                                std::string_view window) {
    std::size_t prev_end = 0;
    for (const auto& f : stats.fragments) {
        REQUIRE(f.span.start >= prev_end);  // disjoint, left to right
        prev_end = f.span.start + f.span.length;
        REQUIRE(Word(orbit.substr(f.span.start, f.span.length)) ==
                cover_fragment_source(f, window));
    }
}

}  // namespace

TEST_CASE("self-cover of a doubled word", "[scaling]") {
    const Word w = "10010";
    const Word orbit = w + w;
    const CoverStats stats = greedy_cover(orbit, w, CoverMode::subword);
    REQUIRE(stats.fragments.size() == 2);
    REQUIRE(stats.fragments[0].span.length == w.size());
    REQUIRE(stats.fragments[1].span.length == w.size());
    REQUIRE(stats.covered_fraction == Approx(1.0));
    REQUIRE(stats.scale_estimate == Approx(1.0));
    require_fragments_verbatim(stats, orbit, w);
}

TEST_CASE("disjoint alphabets cover nothing", "[scaling]") {
    const CoverStats stats = greedy_cover("xyxyxy", "ab", CoverMode::subword);
    REQUIRE(stats.covered_fraction == 0.0);
    REQUIRE(stats.fragments.empty());
    REQUIRE(stats.uncovered_letters == 6);
}

TEST_CASE("iceberg blocks split into about two window subwords",
          "[scaling][property]") {
    Rng rng(333);
    for (int it = 0; it < 20; ++it) {
        const Word seed = random_binary_seed(rng, 5 + rng.below(4));
        RandomSpec spec;
        spec.seed = rng.next();
        spec.q_list = {static_cast<std::int64_t>(4 + rng.below(3)),
                       static_cast<std::int64_t>(20 + rng.below(20))};
        const auto chain = build_iceberg(random_schedule(spec, seed, 2));
        const Word& w2 = chain[1];
        const Word& w3 = chain[2];
        const CoverStats stats = greedy_cover(w3, w2, CoverMode::subword);
        // both letters occur in w2, so singles always match: full cover
        REQUIRE(stats.covered_fraction == Approx(1.0));
        REQUIRE(stats.avg_fragment_length >= 0.45 * static_cast<double>(w2.size()));
        require_fragments_verbatim(stats, w3, w2);
    }
}

TEST_CASE("rotation-mode covers blocks whole", "[scaling]") {
    Rng rng(51);
    const Word seed = random_binary_seed(rng, 6);
    RandomSpec spec;
    spec.seed = 7;
    spec.q_list = {5};
    const auto chain = build_iceberg(random_schedule(spec, seed, 1));
    const Word& w2 = chain[1];
    const CoverStats stats = greedy_cover(w2, seed, CoverMode::cyclic_rotation);
    // every block is a rotation of the seed, so fragments have full length
    REQUIRE(stats.covered_fraction == Approx(1.0));
    REQUIRE(stats.fragments.size() == 5);
    for (const auto& f : stats.fragments) REQUIRE(f.span.length == seed.size());
    require_fragments_verbatim(stats, w2, seed);
}

TEST_CASE("rank-one covers align with the copies when the window is spacer-free",
          "[scaling]") {
    // level 1 without spacers keeps '0' out of v2, so the greedy pass cannot
    // swallow top-level spacers and every copy is matched whole
    const std::vector<std::vector<std::int64_t>> schedule = {{0, 0}, {1, 2, 0}};
    const auto chain = build_rank_one_chain("ab", schedule, 2);
    const Word& v2 = chain[1];
    const Word& v3 = chain[2];
    const CoverStats stats = greedy_cover(v3, v2, CoverMode::subword);
    REQUIRE(stats.fragments.size() == 4);
    for (const auto& f : stats.fragments) REQUIRE(f.span.length == v2.size());
    REQUIRE(stats.covered_letters + stats.uncovered_letters == v3.size());
    REQUIRE(stats.uncovered_letters == 3);  // the spacer letters
    REQUIRE(stats.scale_estimate == Approx(1.0));
}

TEST_CASE("pascal scale prediction", "[scaling]") {
    REQUIRE(pascal_scale_prediction(2) == Approx(0.5641895835).epsilon(1e-9));
    REQUIRE(pascal_scale_prediction(256) == Approx(0.1994711402).epsilon(1e-9));
    for (std::size_t h = 2; h < 4096; h *= 2)
        REQUIRE(pascal_scale_prediction(h) > pascal_scale_prediction(2 * h));
    REQUIRE_THROWS_AS(pascal_scale_prediction(1), std::invalid_argument);
}

TEST_CASE("tower profiles are binomial rows", "[scaling]") {
    REQUIRE(pascal_tower_profile(1) == std::vector<std::uint64_t>{1, 1});
    REQUIRE(pascal_tower_profile(2) == std::vector<std::uint64_t>{1, 2, 1});
    const auto row9 = pascal_tower_profile(9);
    std::uint64_t sum = 0, max = 0;
    for (auto v : row9) {
        sum += v;
        max = std::max(max, v);
    }
    REQUIRE(sum == 512);
    REQUIRE(max == 126);
}
