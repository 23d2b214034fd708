#include <catch2/catch.hpp>

#include <string>
#include <vector>

#include "iceberg/builders.hpp"
#include "iceberg/complexity.hpp"
#include "iceberg/rng.hpp"
#include "iceberg/suffix_automaton.hpp"

using namespace iceberg;

namespace {

Word random_word(Rng& rng, std::size_t len, std::string_view alphabet) {
    Word w(len, '\0');
    for (auto& c : w) c = alphabet[rng.below(alphabet.size())];
    return w;
}

}  // namespace

TEST_CASE("language enumerates distinct subwords", "[complexity]") {
    REQUIRE(language("abab", 2) == std::vector<Word>{"ab", "ba"});
    REQUIRE(language("aaaa", 3) == std::vector<Word>{"aaa"});
    REQUIRE(language("abba", 2) == std::vector<Word>{"ab", "ba", "bb"});
    REQUIRE(language("ab", 3).empty());
    REQUIRE(language("ab", 0).empty());
}

TEST_CASE("complexity profiles for tiny words", "[complexity]") {
    const ComplexityProfile p = complexity_profile("abab", 4);
    REQUIRE(p.at(1) == 2);
    REQUIRE(p.at(2) == 2);
    REQUIRE(p.at(3) == 2);
    REQUIRE(p.at(4) == 1);

    const ComplexityProfile q = complexity_profile("aaaa", 4, Engine::naive);
    for (std::size_t l = 1; l <= 4; ++l) REQUIRE(q.at(l) == 1);

    const ComplexityProfile clamped = complexity_profile("abc", 10);
    REQUIRE(clamped.clamped);
    REQUIRE(clamped.l_max == 3);
    REQUIRE_THROWS_AS(complexity_profile("abc", 0), std::invalid_argument);
}

TEST_CASE("automaton walks accept exactly the subwords", "[complexity]") {
    const Word text = "abcabx";
    const SuffixAutomaton sam(text);
    const auto walk = [&](std::string_view u) {
        int state = sam.initial();
        for (char c : u) {
            state = sam.step(state, c);
            if (state < 0) return state;
        }
        return state;
    };
    REQUIRE(walk("abc") >= 0);
    REQUIRE(walk("cabx") >= 0);
    REQUIRE(walk("abx") >= 0);
    REQUIRE(walk("ba") < 0);
    REQUIRE(walk("xz") < 0);
    // first_end points at the first occurrence: walking "ab" must report the
    // occurrence ending at index 1, not the later one
    const int st = walk("ab");
    REQUIRE(sam.first_end(st) == 1);
    REQUIRE(text.substr(sam.first_end(st) - 1, 2) == "ab");
}

TEST_CASE("automaton first occurrences are genuine on random words",
          "[complexity][property]") {
    Rng rng(4096);
    for (int it = 0; it < 40; ++it) {
        const Word w = random_word(rng, 2 + rng.below(80), "ab0");
        const SuffixAutomaton sam(w);
        // walk every window and confirm the reported first occurrence matches
        for (std::size_t start = 0; start < w.size(); start += 1 + rng.below(3)) {
            const std::size_t len = 1 + rng.below(w.size() - start);
            int state = sam.initial();
            for (std::size_t k = 0; k < len; ++k) state = sam.step(state, w[start + k]);
            REQUIRE(state >= 0);
            const std::size_t first = sam.first_end(state) + 1 - len;
            REQUIRE(first <= start);
            REQUIRE(w.substr(first, len) == w.substr(start, len));
        }
    }
}

TEST_CASE("fast engine equals naive counting on random words", "[complexity][property]") {
    Rng rng(555);
    for (int it = 0; it < 40; ++it) {
        const std::size_t len = 1 + rng.below(300);
        const Word w = random_word(rng, len, it % 3 == 0 ? "ab0" : "01");
        const ComplexityProfile fast = complexity_profile(w, len, Engine::automaton);
        const ComplexityProfile naive = complexity_profile(w, len, Engine::naive);
        REQUIRE(fast.values == naive.values);
        // structural sanity: p(l) <= window count, p(1) <= alphabet size
        std::size_t sigma = language(w, 1).size();
        REQUIRE(fast.at(1) <= sigma);
        for (std::size_t l = 1; l <= len; ++l) REQUIRE(fast.at(l) <= len - l + 1);
    }
}

TEST_CASE("profiles agree with language cardinality", "[complexity]") {
    Rng rng(919);
    for (int it = 0; it < 20; ++it) {
        const Word w = random_word(rng, 2 + rng.below(60), "01");
        const ComplexityProfile p = complexity_profile(w, w.size());
        for (std::size_t l = 1; l <= w.size(); ++l)
            REQUIRE(p.at(l) == language(w, l).size());
    }
}

TEST_CASE("upper bound holds on generated spacer-free instances",
          "[complexity][property]") {
    Rng rng(31337);
    for (int it = 0; it < 25; ++it) {
        Word seed(3 + rng.below(4), '0');
        do {
            for (auto& c : seed) c = rng.below(2) ? '1' : '0';
        } while (seed.find('1') == Word::npos || seed.find('0') == Word::npos);
        RandomSpec spec;
        spec.seed = rng.next();
        spec.q_list = {static_cast<std::int64_t>(3 + rng.below(4)),
                       static_cast<std::int64_t>(3 + rng.below(4))};
        const auto chain = build_iceberg(random_schedule(spec, seed, 2));
        const std::uint64_t h = chain[1].size();
        const ComplexityProfile p = complexity_profile(chain[2], chain[1].size() + 1);
        REQUIRE(p.at(chain[1].size() + 1) <= h * h * h);
        REQUIRE(p.at(chain[1].size()) <= h * h * h - h * h + h);
    }
}

TEST_CASE("saturated complexity counts maximal subwords", "[complexity]") {
    REQUIRE(saturated_complexity("10", 1) == 1);  // "0" is dominated by "1"
    // a word whose 2-language is exactly {10, 00, 01}
    REQUIRE(language("1001", 2) == std::vector<Word>{"00", "01", "10"});
    REQUIRE(saturated_complexity("1001", 2) == 2);
    // without the spacer letter the order is discrete
    const Word w = "abbaba";
    const ComplexityProfile p = complexity_profile(w, w.size());
    for (std::size_t l = 1; l <= w.size(); ++l)
        REQUIRE(saturated_complexity(w, l) == p.at(l));
}

TEST_CASE("saturated complexity never exceeds plain complexity",
          "[complexity][property]") {
    Rng rng(808);
    for (int it = 0; it < 30; ++it) {
        const Word w = random_word(rng, 2 + rng.below(40), "01");
        const ComplexityProfile p = complexity_profile(w, w.size());
        for (std::size_t l = 1; l <= w.size(); ++l)
            REQUIRE(saturated_complexity(w, l) <= p.at(l));
    }
}

TEST_CASE("empirical frequencies normalize over windows", "[complexity]") {
    const FrequencyTable t = empirical_frequencies("abab", 2);
    REQUIRE(t.windows == 3);
    REQUIRE(t.entries.size() == 2);
    REQUIRE(t.entries[0].word == "ab");
    REQUIRE(t.entries[0].count == 2);
    REQUIRE(t.entries[0].freq == Approx(2.0 / 3.0));
    REQUIRE(t.entries[1].word == "ba");
    REQUIRE(t.entries[1].freq == Approx(1.0 / 3.0));

    const FrequencyTable single = empirical_frequencies("aaa", 1);
    REQUIRE(single.entries.size() == 1);
    REQUIRE(single.entries[0].freq == Approx(1.0));
}

TEST_CASE("window counts conserve and 1-letter frequencies equal fractions",
          "[complexity][property]") {
    Rng rng(2718);
    for (int it = 0; it < 30; ++it) {
        const Word w = random_word(rng, 1 + rng.below(50), "01");
        const std::size_t l = 1 + rng.below(w.size());
        const FrequencyTable t = empirical_frequencies(w, l);
        std::uint64_t total = 0;
        double freq_sum = 0.0;
        for (const auto& e : t.entries) {
            total += e.count;
            freq_sum += e.freq;
        }
        REQUIRE(total == w.size() - l + 1);
        REQUIRE(freq_sum == Approx(1.0).epsilon(1e-12));
        if (l == 1) {
            for (const auto& e : t.entries)
                if (e.word == "1") REQUIRE(e.freq == Approx(nu(w)));
        }
    }
}
