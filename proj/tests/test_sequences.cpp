#include <doctest.h>

#include "crlab/sequences.hpp"

#include <algorithm>
#include <random>
#include <vector>

using namespace crlab;

namespace {

Rational R(const char* s) { return parse_rational(s); }

// Independent oracle for the minimal strictly increasing reindexing: scan
// indices upward against the family's pointwise maximum until the f(s_t) <
// delta/2^(t+1) threshold is met at each t.
std::vector<std::uint64_t> refine_map_oracle(const std::vector<ZeroSequence>& fam,
                                             const Rational& delta, std::size_t count) {
    std::vector<std::uint64_t> map;
    std::uint64_t prev = 0;
    Rational eps = delta / 2;
    for (std::size_t t = 1; t <= count; ++t) {
        eps /= 2;
        std::uint64_t cand = prev + 1;
        for (;;) {
            Rational mx = fam[0].at(cand);
            for (std::size_t i = 1; i < fam.size(); ++i)
                mx = std::max(mx, fam[i].at(cand));
            if (mx < eps) break;
            ++cand;
        }
        map.push_back(cand);
        prev = cand;
    }
    return map;
}

} // namespace

TEST_CASE("geometric and table evaluation is exact") {
    auto g = ZeroSequence::geometric(R("1"), R("1/2"));
    CHECK(g.at(1) == R("1/2"));
    CHECK(g.at(3) == R("1/8"));

    auto t = ZeroSequence::table_then_geometric({R("1"), R("1")}, R("1"), R("1/2"));
    CHECK(t.at(1) == R("1"));
    CHECK(t.at(2) == R("1"));
    CHECK(t.at(3) == R("1/8"));
    CHECK(t.at(4) == R("1/16"));

    CHECK_THROWS_AS(g.at(0), DomainError);
    CHECK_THROWS_AS(ZeroSequence::geometric(R("1"), R("1")), DomainError);
    CHECK_THROWS_AS(ZeroSequence::geometric(R("0"), R("1/2")), DomainError);
    CHECK_THROWS_AS(ZeroSequence::table_then_geometric({R("0")}, R("1"), R("1/2")),
                    DomainError);
}

TEST_CASE("sum_over sums exactly over index sets") {
    auto g = ZeroSequence::geometric(R("1"), R("1/2"));
    CHECK(sum_over(g, {1, 3}) == R("5/8"));
    CHECK(sum_over(g, {2}) == R("1/4"));

    auto t = ZeroSequence::table_then_geometric({R("1"), R("1")}, R("1"), R("1/2"));
    CHECK(sum_over(t, {1, 2, 3}) == R("17/8"));

    CHECK_THROWS_AS(sum_over(g, {}), InvalidArgument);
    CHECK_THROWS_AS(sum_over(g, {0, 2}), InvalidArgument);
}

TEST_CASE("decay certificates dominate their sequences out to t = 50") {
    std::vector<ZeroSequence> seqs;
    seqs.push_back(ZeroSequence::geometric(R("1"), R("1/2")));
    seqs.push_back(ZeroSequence::geometric(R("3/7"), R("2/3")));
    seqs.push_back(ZeroSequence::table_then_geometric({R("2"), R("1/3"), R("5")},
                                                      R("1"), R("1/2")));
    seqs.push_back(refine_tail(ZeroSequence::geometric(R("1"), R("1/2")), R("1/2")));
    seqs.push_back(block_sum_sequence(ZeroSequence::geometric(R("1"), R("1/2")),
                                      {{1, 2}, {4}, {5, 6, 7}}));
    seqs.push_back(word_composed_sequence(
        {ZeroSequence::geometric(R("1"), R("1/2")), ZeroSequence::geometric(R("1"), R("1/4"))},
        {1, 2, 1}));
    auto fam = refine_family({ZeroSequence::geometric(R("1"), R("1/2")),
                              ZeroSequence::geometric(R("2"), R("2/3"))},
                             R("1/4"));
    seqs.insert(seqs.end(), fam.begin(), fam.end());

    for (const auto& f : seqs) {
        const auto& cert = f.certificate();
        for (std::uint64_t t = 1; t <= 50; ++t) {
            CHECK(is_positive(f.at(t)));
            CHECK(f.at(t) <= cert.bound_at(t));
        }
        // The bound really decays: past index_below(eps) it stays under eps.
        std::uint64_t cut = cert.index_below(R("1/1000"));
        CHECK(cert.bound_at(cut) < R("1/1000"));
        CHECK(cert.bound_at(cut + 7) < R("1/1000"));
    }
}

TEST_CASE("certificate tail sums are exact geometric sums") {
    auto g = ZeroSequence::geometric(R("1"), R("1/2"));
    // sum_{t>=1} (1/2)^t = 1, sum_{t>=4} = 1/8.
    CHECK(g.certificate().sum_from(1) == R("1"));
    CHECK(g.certificate().sum_from(4) == R("1/8"));
    CHECK_THROWS_AS(g.certificate().sum_from(0), DomainError);
}

TEST_CASE("refine_tail picks the minimal strictly increasing reindexing") {
    auto f = ZeroSequence::geometric(R("1"), R("1/2"));
    auto r = refine_tail(f, R("1/2"));
    // Thresholds delta/2^(t+1) = 2^-(t+2) force s_t = t + 3.
    CHECK(r.at(1) == R("1/16"));
    CHECK(r.at(2) == R("1/32"));
    CHECK(r.at(7) == f.at(10));
    CHECK(reindex_prefix(r, 5) == std::vector<std::uint64_t>{4, 5, 6, 7, 8});

    // A sequence already decaying fast enough keeps its own indices.
    auto f2 = ZeroSequence::geometric(R("1/16"), R("1/2"));
    auto r2 = refine_tail(f2, R("1"));
    CHECK(reindex_prefix(r2, 4) == std::vector<std::uint64_t>{1, 2, 3, 4});
    for (std::uint64_t t = 1; t <= 6; ++t) CHECK(r2.at(t) == f2.at(t));

    // Resumming through the index map is just composition.
    auto map = reindex_prefix(r, 2);
    CHECK(sum_over(r, {1, 2}) == f.at(map[0]) + f.at(map[1]));

    CHECK_THROWS_AS(reindex_prefix(f, 3), InvalidArgument);
}

TEST_CASE("refine_tail matches the brute-force minimal-map oracle") {
    std::vector<ZeroSequence> pool = {
        ZeroSequence::geometric(R("1"), R("1/2")),
        ZeroSequence::geometric(R("5"), R("3/4")),
        ZeroSequence::geometric(R("1/16"), R("1/2")),
        ZeroSequence::table_then_geometric({R("3"), R("3"), R("1/64")}, R("2"), R("2/3")),
    };
    std::vector<Rational> deltas = {R("1"), R("1/2"), R("1/8"), R("3/5")};
    for (const auto& f : pool) {
        for (const auto& d : deltas) {
            auto r = refine_tail(f, d);
            auto expect = refine_map_oracle({f}, d, 12);
            CHECK(reindex_prefix(r, 12) == expect);
            for (std::size_t t = 1; t <= 12; ++t) CHECK(r.at(t) == f.at(expect[t - 1]));
        }
    }
}

TEST_CASE("refine_tail output tail-sums strictly below delta/2") {
    std::vector<std::pair<ZeroSequence, Rational>> cases = {
        {ZeroSequence::geometric(R("1"), R("1/2")), R("1/2")},
        {ZeroSequence::geometric(R("7"), R("9/10")), R("1/4")},
        {ZeroSequence::table_then_geometric({R("1"), R("1")}, R("1"), R("1/2")), R("1/3")},
    };
    for (const auto& [f, d] : cases) {
        auto r = refine_tail(f, d);
        Rational s = 0;
        for (std::uint64_t t = 1; t <= 50; ++t) s += r.at(t);
        CHECK(s + r.certificate().sum_from(51) < d / 2);
    }
    // The worked example: refining Geometric(1,1/2) at 1/2 shifts to
    // r(t) = 2^-(t+3), whose full sum is exactly sum_{t>=4} 2^-t = 1/8.
    // The base geometric's certificate is tight, so the remainder past
    // r(30) = f(33) is its sum_from(34).
    auto f = ZeroSequence::geometric(R("1"), R("1/2"));
    auto r = refine_tail(f, R("1/2"));
    Rational s = 0;
    for (std::uint64_t t = 1; t <= 30; ++t) s += r.at(t);
    CHECK(s + f.certificate().sum_from(34) == R("1/8"));
}

TEST_CASE("refine_family shares one index map across all members") {
    std::vector<ZeroSequence> fam = {ZeroSequence::geometric(R("1"), R("1/2")),
                  ZeroSequence::geometric(R("5"), R("3/4")),
                  ZeroSequence::table_then_geometric({R("2")}, R("1"), R("1/2"))};
    Rational delta = R("1/4");
    auto refined = refine_family(fam, delta);
    REQUIRE(refined.size() == fam.size());

    auto shared = reindex_prefix(refined[0], 10);
    for (std::size_t i = 1; i < refined.size(); ++i)
        CHECK(reindex_prefix(refined[i], 10) == shared);

    // The shared map is the minimal one for the pointwise maximum.
    CHECK(shared == refine_map_oracle(fam, delta, 10));

    // Every member reindexes through it, and every member's tail fits the
    // half-radius budget (the map was chosen against the maximum).
    for (std::size_t i = 0; i < refined.size(); ++i) {
        Rational s = 0;
        for (std::uint64_t t = 1; t <= 10; ++t) {
            CHECK(refined[i].at(t) == fam[i].at(shared[t - 1]));
            s += refined[i].at(t);
        }
        CHECK(s + refined[i].certificate().sum_from(11) < delta / 2);
    }

    CHECK_THROWS_AS(refine_family({}, delta), InvalidArgument);
}

TEST_CASE("block_sum_sequence sums blocks then falls back to the base") {
    auto f = ZeroSequence::geometric(R("1"), R("1/2"));
    auto g = block_sum_sequence(f, {{1}, {2, 3}});
    CHECK(g.at(1) == R("1/2"));
    CHECK(g.at(2) == R("3/8"));
    CHECK(g.at(3) == f.at(3));
    CHECK(g.at(9) == f.at(9));

    auto h = block_sum_sequence(f, {{5}});
    CHECK(h.at(1) == f.at(5));
    CHECK(h.at(2) == f.at(2));

    CHECK_THROWS_AS(block_sum_sequence(f, {}), InvalidArgument);
    CHECK_THROWS_AS(block_sum_sequence(f, {{2, 3}, {3, 4}}), InvalidArgument);
    CHECK_THROWS_AS(block_sum_sequence(f, {{4}, {1}}), InvalidArgument);
}

TEST_CASE("word_composed_sequence substitutes indices n*y + i") {
    auto f1 = ZeroSequence::geometric(R("1"), R("1/2"));
    auto f2 = ZeroSequence::geometric(R("1"), R("1/4"));

    auto g12 = word_composed_sequence({f1, f2}, {1, 2});
    CHECK(g12.at(1) == R("33/256"));  // f1(3) + f2(4)
    CHECK(g12.at(2) == f1.at(5) + f2.at(6));

    auto g11 = word_composed_sequence({f1, f2}, {1, 1});
    for (std::uint64_t y = 1; y <= 5; ++y) CHECK(g11.at(y) == f1.at(2 * y + 1) + f1.at(2 * y + 2));

    CHECK_THROWS_AS(word_composed_sequence({f1}, {1, 2}), InvalidArgument);
    CHECK_THROWS_AS(word_composed_sequence({f1}, {}), InvalidArgument);
    CHECK_THROWS_AS(word_composed_sequence({}, {1}), InvalidArgument);
}

TEST_CASE("constant words compose to the same values as block sums") {
    auto f = ZeroSequence::geometric(R("2"), R("2/3"));
    for (std::uint32_t n = 1; n <= 4; ++n) {
        auto gw = word_composed_sequence({f}, std::vector<std::uint8_t>(n, 1));
        std::vector<NatSet> blocks;
        for (std::uint64_t y = 1; y <= 3; ++y) {
            NatSet b;
            for (std::uint64_t i = 1; i <= n; ++i) b.push_back(n * y + i);
            blocks.push_back(std::move(b));
        }
        auto gb = block_sum_sequence(f, blocks);
        for (std::uint64_t y = 1; y <= 3; ++y) CHECK(gw.at(y) == gb.at(y));
    }
}

TEST_CASE("reindexing identity: double sum equals sum over the fused set") {
    std::vector<ZeroSequence> pool = {
        ZeroSequence::geometric(R("1"), R("1/2")),
        ZeroSequence::geometric(R("1/4"), R("1/2")),
        ZeroSequence::geometric(R("1"), R("1/4")),
        ZeroSequence::table_then_geometric({R("1"), R("1/2")}, R("1"), R("1/2")),
        refine_tail(ZeroSequence::geometric(R("3"), R("2/3")), R("1/2")),
    };
    std::mt19937_64 rng(20240817);
    for (int iter = 0; iter < 1000; ++iter) {
        const auto& f = pool[rng() % pool.size()];
        std::uint64_t n = 1 + rng() % 4;
        std::uint32_t kmask = 1 + static_cast<std::uint32_t>(rng() % 15);          // K subseteq {1..4}
        std::uint32_t imask = 1 + static_cast<std::uint32_t>(rng() % ((1u << n) - 1));  // I subseteq {1..n}
        NatSet k_set = mask_to_natset(kmask);
        NatSet i_set = mask_to_natset(imask);

        Rational lhs = 0;
        NatSet fused;
        for (auto y : k_set)
            for (auto i : i_set) {
                lhs += f.at(n * y + i);
                fused.push_back(n * y + i);
            }
        CHECK(lhs == sum_over(f, natset_normalize(fused)));
    }
}

TEST_CASE("project_pair splits coordinates verbatim") {
    std::vector<PairZeroSequence> pairs;
    pairs.push_back({ZeroSequence::geometric(R("1"), R("1/2")),
                     ZeroSequence::geometric(R("1"), R("1/4"))});
    pairs.push_back({ZeroSequence::geometric(R("3"), R("1/3")),
                     ZeroSequence::table_then_geometric({R("1")}, R("1"), R("1/2"))});
    pairs.push_back({ZeroSequence::geometric(R("1/7"), R("1/2")),
                     ZeroSequence::geometric(R("2"), R("3/4"))});

    auto [g, h] = project_pair(pairs);
    REQUIRE(g.size() == 3);
    REQUIRE(h.size() == 3);
    CHECK(g[0].at(2) == R("1/4"));
    CHECK(h[0].at(2) == R("1/16"));
    for (std::size_t i = 0; i < pairs.size(); ++i)
        for (std::uint64_t t = 1; t <= 6; ++t) {
            CHECK(g[i].at(t) == pairs[i].first.at(t));
            CHECK(h[i].at(t) == pairs[i].second.at(t));
        }

    CHECK_THROWS_AS(project_pair({}), InvalidArgument);
}
