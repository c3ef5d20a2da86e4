#include "crlab/natset.hpp"

#include "crlab/errors.hpp"

#include <algorithm>

namespace crlab {

NatSet natset_normalize(NatSet h) {
    std::sort(h.begin(), h.end());
    h.erase(std::unique(h.begin(), h.end()), h.end());
    if (!h.empty() && h.front() == 0)
        throw InvalidArgument("index sets contain positive naturals only");
    return h;
}

void natset_require_valid(const NatSet& h, const char* what) {
    if (h.empty()) throw InvalidArgument(std::string(what) + ": index set is empty");
    std::uint64_t prev = 0;
    for (auto v : h) {
        if (v <= prev)
            throw InvalidArgument(std::string(what) +
                                  ": index set must be strictly ascending and positive");
        prev = v;
    }
}

NatSet natset_union(const NatSet& a, const NatSet& b) {
    NatSet out;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

std::string natset_str(const NatSet& h) {
    std::string s = "{";
    for (std::size_t i = 0; i < h.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(h[i]);
    }
    return s + "}";
}

std::vector<std::uint32_t> subset_masks_in_search_order(std::uint32_t r, std::uint64_t budget) {
    if (r == 0 || r > 31) throw InvalidArgument("subset enumeration needs 1 <= r <= 31");
    if (((std::uint64_t{1} << r) - 1) > budget)
        throw SizeLimit("subset enumeration 2^r-1 exceeds budget " + std::to_string(budget));
    std::vector<std::uint32_t> out;
    out.reserve((std::size_t{1} << r) - 1);
    for (std::uint32_t max_el = 1; max_el <= r; ++max_el) {
        std::uint32_t top = std::uint32_t{1} << (max_el - 1);
        for (std::uint32_t size = 1; size <= max_el; ++size) {
            // lexicographically ascending (size-1)-combinations of {1..max_el-1}
            std::uint32_t c = size - 1;
            if (c == 0) {
                out.push_back(top);
                continue;
            }
            if (c > max_el - 1) continue;
            std::vector<std::uint32_t> comb(c);
            for (std::uint32_t i = 0; i < c; ++i) comb[i] = i + 1;
            while (true) {
                std::uint32_t mask = top;
                for (auto e : comb) mask |= std::uint32_t{1} << (e - 1);
                out.push_back(mask);
                // next combination in lex order
                std::int64_t i = static_cast<std::int64_t>(c) - 1;
                while (i >= 0 && comb[i] == max_el - 1 - (c - 1 - i)) --i;
                if (i < 0) break;
                ++comb[i];
                for (std::uint32_t j = i + 1; j < c; ++j) comb[j] = comb[j - 1] + 1;
            }
        }
    }
    return out;
}

NatSet mask_to_natset(std::uint32_t mask) {
    NatSet h;
    for (std::uint32_t i = 0; i < 32; ++i)
        if (mask & (std::uint32_t{1} << i)) h.push_back(i + 1);
    return h;
}

} // namespace crlab
