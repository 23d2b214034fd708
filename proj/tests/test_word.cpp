#include <catch2/catch.hpp>

#include <string>
#include <vector>

#include "iceberg/rng.hpp"
#include "iceberg/word.hpp"

using namespace iceberg;

namespace {

Word random_word(Rng& rng, std::size_t len, std::string_view alphabet) {
    Word w(len, '\0');
    for (auto& c : w) c = alphabet[rng.below(alphabet.size())];
    return w;
}

// Oracle: u occurs in some rotation, by scanning all |w| rotations.
bool cyclic_subword_oracle(std::string_view u, std::string_view w) {
    if (u.size() > w.size()) return false;
    for (std::size_t r = 0; r < w.size(); ++r)
        if (rotate(w, static_cast<std::int64_t>(r)).find(u) != std::string::npos) return true;
    return false;
}

}  // namespace

TEST_CASE("rotate shifts cyclically", "[word]") {
    REQUIRE(rotate("abcdef", 2) == "cdefab");
    REQUIRE(rotate("ab", 0) == "ab");
    REQUIRE(rotate("ab", -1) == rotate("ab", 1));
    REQUIRE(rotate("ab", -1) == "ba");
    // one-letter rotation moves the head letter to the tail
    REQUIRE(rotate("bu", 1) == "ub");
    REQUIRE(rotate("bcat", 1) == "catb");
    REQUIRE_THROWS_AS(rotate("", 1), std::invalid_argument);
}

TEST_CASE("rotate composes additively and preserves letters", "[word][property]") {
    Rng rng(1234);
    for (int it = 0; it < 200; ++it) {
        const Word w = random_word(rng, 1 + rng.below(24), "01a");
        const auto h = static_cast<std::int64_t>(w.size());
        const std::int64_t a = static_cast<std::int64_t>(rng.below(64)) - 32;
        const std::int64_t b = static_cast<std::int64_t>(rng.below(64)) - 32;
        REQUIRE(rotate(rotate(w, a), b) == rotate(w, a + b));
        REQUIRE(rotate(w, h) == w);
        REQUIRE(nu(rotate(w, a)) == nu(w));
    }
}

TEST_CASE("dbar counts mismatching positions", "[word]") {
    REQUIRE(dbar("abc", "abc") == 0.0);
    REQUIRE(dbar("ab", "ba") == 1.0);
    REQUIRE(dbar("abcd", "abca") == Approx(0.25));
    REQUIRE_THROWS_AS(dbar("ab", "abc"), std::invalid_argument);
}

TEST_CASE("dbar is a metric on fixed-length words", "[word][property]") {
    Rng rng(77);
    for (int it = 0; it < 200; ++it) {
        const std::size_t len = 1 + rng.below(12);
        const Word a = random_word(rng, len, "01");
        const Word b = random_word(rng, len, "01");
        const Word c = random_word(rng, len, "01");
        REQUIRE(dbar(a, b) == dbar(b, a));
        REQUIRE(dbar(a, c) <= dbar(a, b) + dbar(b, c) + 1e-12);
        REQUIRE((dbar(a, b) == 0.0) == (a == b));
    }
}

TEST_CASE("letter stats count exact fractions", "[word]") {
    const LetterStats s = letter_stats("10010");
    REQUIRE(s.count == 2);
    REQUIRE(s.length == 5);
    REQUIRE(nu("10010") == Approx(0.4));
}

TEST_CASE("cyclic subword detection with witness", "[word]") {
    const auto hit = find_cyclic_subword("cat", "atc");
    REQUIRE(hit.has_value());
    REQUIRE(hit->rotation == 2);
    REQUIRE(rotate("atc", static_cast<std::int64_t>(hit->rotation)).substr(0, 3) == "cat");
    REQUIRE_FALSE(is_cyclic_subword("aa", "ab"));
    REQUIRE(is_cyclic_subword("ba", "ab"));
    REQUIRE_FALSE(is_cyclic_subword("abc", "ab"));  // longer than host: false, not an error
}

TEST_CASE("cyclic subword agrees with the all-rotations oracle", "[word][property]") {
    Rng rng(4242);
    for (int it = 0; it < 300; ++it) {
        const Word w = random_word(rng, 1 + rng.below(10), "01");
        const Word u = random_word(rng, 1 + rng.below(10), "01");
        REQUIRE(is_cyclic_subword(u, w) == cyclic_subword_oracle(u, w));
    }
}

TEST_CASE("occurrences are classified by start position", "[word]") {
    const auto occ = classify_occurrences("cat", "littlecatandbigcat");
    REQUIRE(occ.size() == 2);
    REQUIRE(occ[0].start == 6);
    REQUIRE(occ[1].start == 15);
    REQUIRE_FALSE(identical(occ[0], occ[1]));  // equal but not identical

    REQUIRE(classify_occurrences("z", "abc").empty());

    const auto cyc = classify_occurrences("aa", "aaa", /*cyclic=*/true);
    REQUIRE(cyc.size() == 3);
    REQUIRE(cyc[0].start == 0);
    REQUIRE(cyc[1].start == 1);
    REQUIRE(cyc[2].start == 2);
}
