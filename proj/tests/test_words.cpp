#include <doctest.h>

#include "crlab/words.hpp"

#include <cstdint>
#include <optional>
#include <vector>

using namespace crlab;

namespace {

// Independent count of valid variable words by dynamic programming over
// strings of length n on {1..k, wildcard}: first and last letters constant,
// no two adjacent wildcards, minus the wildcard-free strings.
std::uint64_t variable_word_count_oracle(std::uint32_t n, std::uint64_t k) {
    if (n < 2) return 0;
    std::uint64_t end_const = k, end_wild = 0;  // length-1 prefixes, first letter constant
    for (std::uint32_t i = 2; i <= n; ++i) {
        std::uint64_t nc = k * (end_const + end_wild);
        std::uint64_t nw = end_const;
        end_const = nc;
        end_wild = nw;
    }
    std::uint64_t no_wild = 1;
    for (std::uint32_t i = 0; i < n; ++i) no_wild *= k;
    return end_const - no_wild;
}

std::vector<std::uint8_t> L(std::initializer_list<int> xs) {
    return std::vector<std::uint8_t>(xs.begin(), xs.end());
}

} // namespace

TEST_CASE("enumerate_words is exhaustive and lexicographic") {
    auto w22 = enumerate_words(2, 2);
    REQUIRE(w22.size() == 4);
    CHECK(w22[0].letters == L({1, 1}));
    CHECK(w22[1].letters == L({1, 2}));
    CHECK(w22[2].letters == L({2, 1}));
    CHECK(w22[3].letters == L({2, 2}));

    auto w13 = enumerate_words(1, 3);
    REQUIRE(w13.size() == 3);
    for (std::uint8_t l = 1; l <= 3; ++l) CHECK(w13[l - 1].letters == L({l}));

    CHECK(enumerate_words(5, 3).size() == 243);
    CHECK_THROWS_AS(enumerate_words(20, 4), SizeLimit);
    CHECK_THROWS_AS(enumerate_words(0, 2), DomainError);
    CHECK_THROWS_AS(enumerate_words(2, 0), DomainError);
}

TEST_CASE("enumerate_variable_words respects the three constraints") {
    CHECK(enumerate_variable_words(2, 2).empty());
    CHECK(enumerate_variable_words(1, 2).empty());

    auto v32 = enumerate_variable_words(3, 2);
    REQUIRE(v32.size() == 4);
    CHECK(v32[0].letters == L({1, 0, 1}));
    CHECK(v32[1].letters == L({1, 0, 2}));
    CHECK(v32[2].letters == L({2, 0, 1}));
    CHECK(v32[3].letters == L({2, 0, 2}));

    for (std::uint32_t n = 2; n <= 8; ++n)
        for (std::uint8_t k = 1; k <= 3; ++k) {
            auto vws = enumerate_variable_words(n, k);
            CHECK(vws.size() == variable_word_count_oracle(n, k));
            for (const auto& vw : vws) {
                CHECK(vw.letters.front() != 0);
                CHECK(vw.letters.back() != 0);
                bool has_wild = false, adjacent = false;
                for (std::size_t i = 0; i < vw.letters.size(); ++i) {
                    has_wild |= vw.letters[i] == 0;
                    if (i > 0 && vw.letters[i] == 0 && vw.letters[i - 1] == 0) adjacent = true;
                }
                CHECK(has_wild);
                CHECK_FALSE(adjacent);
                CHECK_NOTHROW(validate_variable_word(vw));
            }
        }
}

TEST_CASE("variable word validation rejects each broken invariant") {
    CHECK_THROWS_AS(validate_variable_word({L({0, 1, 1}), 2}), InvalidArgument);
    CHECK_THROWS_AS(validate_variable_word({L({1, 1, 0}), 2}), InvalidArgument);
    CHECK_THROWS_AS(validate_variable_word({L({1, 1, 1}), 2}), InvalidArgument);
    CHECK_THROWS_AS(validate_variable_word({L({1, 0, 0, 1}), 2}), InvalidArgument);
    CHECK_THROWS_AS(validate_variable_word({L({1, 3, 1}), 2}), InvalidArgument);
    CHECK_NOTHROW(validate_variable_word({L({1, 0, 1, 0, 2}), 2}));
}

TEST_CASE("substitution replaces wildcards and nothing else") {
    VariableWord w{L({1, 0, 1}), 2};
    CHECK(substitute(w, 2).letters == L({1, 2, 1}));
    CHECK(substitute(w, 1).letters == L({1, 1, 1}));

    VariableWord long_w{L({2, 0, 2, 0, 1}), 3};
    CHECK(substitute(long_w, 3).letters == L({2, 3, 2, 3, 1}));
    CHECK_THROWS_AS(substitute(w, 3), InvalidArgument);
    CHECK_THROWS_AS(substitute(w, 0), InvalidArgument);

    // Restriction property: constants survive, wildcard slots all become l.
    for (const auto& vw : enumerate_variable_words(5, 2))
        for (std::uint8_t l = 1; l <= 2; ++l) {
            Word s = substitute(vw, l);
            for (auto p : constant_positions(vw)) CHECK(s.letters[p - 1] == vw.letters[p - 1]);
            for (auto p : wildcard_positions(vw)) CHECK(s.letters[p - 1] == l);
        }
}

TEST_CASE("position splits partition the index range") {
    VariableWord w1{L({1, 0, 1}), 2};
    CHECK(constant_positions(w1) == NatSet{1, 3});
    CHECK(wildcard_positions(w1) == NatSet{2});

    VariableWord w2{L({1, 0, 2, 0, 1}), 2};
    CHECK(constant_positions(w2) == NatSet{1, 3, 5});
    CHECK(wildcard_positions(w2) == NatSet{2, 4});

    for (const auto& vw : enumerate_variable_words(6, 2))
        CHECK(constant_positions(vw).size() + wildcard_positions(vw).size() ==
              vw.letters.size());
}

TEST_CASE("monochromatic search returns the enumeration-first hit") {
    auto c_const = named_coloring("constant");
    auto hit = find_monochromatic_variable_word(c_const, 3, 2);
    REQUIRE(hit.has_value());
    CHECK(hit->first.letters == L({1, 0, 1}));
    CHECK(hit->second == 1);

    // Middle letter: every length-3 variable word has its wildcard at
    // position 2, so substitution always flips the color.
    CHECK_FALSE(find_monochromatic_variable_word(named_coloring("middle-letter"), 3, 2));

    // First letter: substitution never touches position 1.
    auto first = find_monochromatic_variable_word(named_coloring("first-letter"), 3, 2);
    REQUIRE(first.has_value());
    CHECK(first->first.letters == L({1, 0, 1}));
    CHECK(first->second == 1);

    CHECK_THROWS_AS(named_coloring("no-such-rule"), InvalidArgument);
}

TEST_CASE("monochromatic search agrees with the brute-force scan") {
    const char* rules[] = {"constant", "first-letter", "middle-letter", "parity-of-ones"};
    for (const char* rule : rules)
        for (std::uint32_t n = 2; n <= 5; ++n) {
            auto coloring = named_coloring(rule);
            auto fast = find_monochromatic_variable_word(coloring, n, 2);

            std::optional<std::pair<VariableWord, std::uint32_t>> brute;
            for (const auto& vw : enumerate_variable_words(n, 2)) {
                std::uint32_t c1 = coloring.fn(substitute(vw, 1));
                if (coloring.fn(substitute(vw, 2)) == c1) {
                    brute = std::make_pair(vw, c1);
                    break;
                }
            }

            CHECK(fast.has_value() == brute.has_value());
            if (fast && brute) {
                CHECK(fast->first.letters == brute->first.letters);
                CHECK(fast->second == brute->second);
            }
        }
}
