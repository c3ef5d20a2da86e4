#pragma once

#include "crlab/errors.hpp"
#include "crlab/natset.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace crlab {

// Constant word over the alphabet {1..k}.
struct Word {
    std::vector<std::uint8_t> letters;
    std::uint8_t k = 0;
};

// Word over {1..k} plus a wildcard (stored as 0).  Valid variable words
// start and end with a constant letter, contain at least one wildcard, and
// never place two wildcards adjacently.
struct VariableWord {
    std::vector<std::uint8_t> letters;  // 0 = wildcard
    std::uint8_t k = 0;
};

// Explicit finite coloring of length-n words; fn returns a color in
// {1..colors} and must be total on valid words.
struct Coloring {
    std::uint32_t colors = 2;
    std::function<std::uint32_t(const Word&)> fn;
    std::string desc;
};

void validate_word(const Word& w);
void validate_variable_word(const VariableWord& w);

// All k^n constant words in lexicographic order.  Throws SizeLimit when
// k^n exceeds the budget, DomainError on n == 0 or k == 0.
std::vector<Word> enumerate_words(std::uint32_t n, std::uint8_t k,
                                  std::uint64_t budget = 1000000);

// All valid variable words of length n in lexicographic order, wildcard
// ordered after the largest constant letter.  Budgeted by (k+1)^n.
std::vector<VariableWord> enumerate_variable_words(std::uint32_t n, std::uint8_t k,
                                                   std::uint64_t budget = 1000000);

// Replaces every wildcard with the constant letter l in {1..k}.
Word substitute(const VariableWord& w, std::uint8_t l);

// 1-based positions of wildcards / constants.
NatSet wildcard_positions(const VariableWord& w);
NatSet constant_positions(const VariableWord& w);

// First valid variable word (in enumeration order) all of whose k
// substitution instances receive the same color, together with that color.
std::optional<std::pair<VariableWord, std::uint32_t>>
find_monochromatic_variable_word(const Coloring& coloring, std::uint32_t n, std::uint8_t k,
                                 std::uint64_t budget = 1000000);

// Named coloring rules usable from scenario files:
//   "constant"       — every word gets color 1
//   "first-letter"   — color = first letter's parity-derived index (1 or 2)
//   "middle-letter"  — same, from the letter at position ceil(n/2)
//   "parity-of-ones" — 1 if the count of letter 1 is even, else 2
Coloring named_coloring(const std::string& rule);

} // namespace crlab
