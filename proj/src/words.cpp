#include "crlab/words.hpp"

#include "crlab/errors.hpp"

namespace crlab {

namespace {

// k^n with overflow capping against `cap` (returns cap+1 on overflow).
std::uint64_t checked_pow(std::uint64_t base, std::uint32_t exp, std::uint64_t cap) {
    std::uint64_t v = 1;
    for (std::uint32_t i = 0; i < exp; ++i) {
        if (v > cap / base) return cap + 1;
        v *= base;
    }
    return v;
}

} // namespace

void validate_word(const Word& w) {
    if (w.k == 0) throw InvalidArgument("word alphabet must be nonempty");
    if (w.letters.empty()) throw InvalidArgument("word must be nonempty");
    for (auto l : w.letters)
        if (l == 0 || l > w.k)
            throw InvalidArgument("word letter out of range 1.." + std::to_string(w.k));
}

void validate_variable_word(const VariableWord& w) {
    if (w.k == 0) throw InvalidArgument("variable word alphabet must be nonempty");
    if (w.letters.size() < 2)
        throw InvalidArgument("variable word needs length >= 2 (constant ends plus a wildcard)");
    for (auto l : w.letters)
        if (l > w.k) throw InvalidArgument("variable word letter out of range");
    if (w.letters.front() == 0 || w.letters.back() == 0)
        throw InvalidArgument("variable word must start and end with a constant letter");
    bool has_wild = false;
    for (std::size_t i = 0; i < w.letters.size(); ++i) {
        if (w.letters[i] != 0) continue;
        has_wild = true;
        if (i + 1 < w.letters.size() && w.letters[i + 1] == 0)
            throw InvalidArgument("variable word has adjacent wildcards");
    }
    if (!has_wild) throw InvalidArgument("variable word has no wildcard");
}

std::vector<Word> enumerate_words(std::uint32_t n, std::uint8_t k, std::uint64_t budget) {
    if (n == 0 || k == 0) throw DomainError("word enumeration needs n >= 1 and k >= 1");
    std::uint64_t total = checked_pow(k, n, budget);
    if (total > budget)
        throw SizeLimit("word enumeration k^n exceeds budget " + std::to_string(budget));
    std::vector<Word> out;
    out.reserve(total);
    std::vector<std::uint8_t> cur(n, 1);
    while (true) {
        out.push_back(Word{cur, k});
        // odometer increment, least significant at the right: lexicographic
        std::size_t i = n;
        while (i > 0) {
            if (cur[i - 1] < k) {
                ++cur[i - 1];
                break;
            }
            cur[i - 1] = 1;
            --i;
        }
        if (i == 0) break;
    }
    return out;
}

std::vector<VariableWord> enumerate_variable_words(std::uint32_t n, std::uint8_t k,
                                                   std::uint64_t budget) {
    if (n == 0 || k == 0) throw DomainError("word enumeration needs n >= 1 and k >= 1");
    if (checked_pow(k + 1, n, budget) > budget)
        throw SizeLimit("variable word enumeration (k+1)^n exceeds budget " +
                        std::to_string(budget));
    std::vector<VariableWord> out;
    if (n < 2) return out;  // no valid variable word fits
    // Digits run over 1..k+1 with k+1 standing for the wildcard, so plain
    // odometer order is exactly "lexicographic with wildcard after k".
    std::vector<std::uint8_t> cur(n, 1);
    auto to_letters = [&] {
        std::vector<std::uint8_t> ls(n);
        for (std::uint32_t i = 0; i < n; ++i) ls[i] = cur[i] == k + 1 ? 0 : cur[i];
        return ls;
    };
    auto valid = [&] {
        if (cur.front() == k + 1 || cur.back() == k + 1) return false;
        bool wild = false;
        for (std::uint32_t i = 0; i < n; ++i) {
            if (cur[i] != k + 1) continue;
            wild = true;
            if (i + 1 < n && cur[i + 1] == k + 1) return false;
        }
        return wild;
    };
    while (true) {
        if (valid()) out.push_back(VariableWord{to_letters(), k});
        std::size_t i = n;
        while (i > 0) {
            if (cur[i - 1] < k + 1) {
                ++cur[i - 1];
                break;
            }
            cur[i - 1] = 1;
            --i;
        }
        if (i == 0) break;
    }
    return out;
}

Word substitute(const VariableWord& w, std::uint8_t l) {
    validate_variable_word(w);
    if (l == 0 || l > w.k)
        throw InvalidArgument("substitution letter out of range 1.." + std::to_string(w.k));
    Word out{w.letters, w.k};
    for (auto& c : out.letters)
        if (c == 0) c = l;
    return out;
}

NatSet wildcard_positions(const VariableWord& w) {
    NatSet out;
    for (std::size_t i = 0; i < w.letters.size(); ++i)
        if (w.letters[i] == 0) out.push_back(i + 1);
    return out;
}

NatSet constant_positions(const VariableWord& w) {
    NatSet out;
    for (std::size_t i = 0; i < w.letters.size(); ++i)
        if (w.letters[i] != 0) out.push_back(i + 1);
    return out;
}

std::optional<std::pair<VariableWord, std::uint32_t>>
find_monochromatic_variable_word(const Coloring& coloring, std::uint32_t n, std::uint8_t k,
                                 std::uint64_t budget) {
    if (!coloring.fn) throw InvalidArgument("coloring has no rule attached");
    for (const auto& vw : enumerate_variable_words(n, k, budget)) {
        std::uint32_t color = coloring.fn(substitute(vw, 1));
        bool mono = true;
        for (std::uint8_t l = 2; l <= k && mono; ++l)
            mono = coloring.fn(substitute(vw, l)) == color;
        if (mono) return std::make_pair(vw, color);
    }
    return std::nullopt;
}

Coloring named_coloring(const std::string& rule) {
    if (rule == "constant")
        return Coloring{1, [](const Word&) { return 1u; }, rule};
    if (rule == "first-letter")
        return Coloring{2, [](const Word& w) { return w.letters.front() % 2 == 1 ? 1u : 2u; },
                        rule};
    if (rule == "middle-letter")
        return Coloring{2,
                        [](const Word& w) {
                            std::size_t mid = (w.letters.size() + 1) / 2;  // 1-based middle
                            return w.letters[mid - 1] % 2 == 1 ? 1u : 2u;
                        },
                        rule};
    if (rule == "parity-of-ones")
        return Coloring{2,
                        [](const Word& w) {
                            std::size_t ones = 0;
                            for (auto l : w.letters) ones += (l == 1);
                            return ones % 2 == 0 ? 1u : 2u;
                        },
                        rule};
    throw InvalidArgument("unknown coloring rule '" + rule + "'");
}

} // namespace crlab
