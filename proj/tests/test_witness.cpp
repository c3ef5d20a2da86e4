#include <doctest.h>

#include "crlab/witness.hpp"

#include <optional>
#include <random>
#include <utility>
#include <vector>

using namespace crlab;

namespace {

Rational R(const char* s) { return parse_rational(s); }

SetOfS full_grid(std::uint32_t m, const char* upper) {
    return SetOfS::full({GroundGrid(m, R(upper))});
}

// Independent witness oracle: the same pool semantics, written as a plain
// double loop with no shared code path beyond the subset order helper.
std::optional<std::pair<Rational, NatSet>> oracle(const SetOfS& a, const Family& fam,
                                                  const Rational& delta, std::uint64_t r) {
    for (auto mask : subset_masks_in_search_order(static_cast<std::uint32_t>(r))) {
        NatSet h = mask_to_natset(mask);
        Rational sum0 = sum_over(fam[0], h);
        for (const auto& x : a.window_elements(sum0, sum0 + delta)) {
            Rational base = x - sum0;
            if (!is_positive(base) || base >= delta) continue;
            bool ok = true;
            for (const auto& f : fam)
                if (!a.contains(base + sum_over(f, h))) {
                    ok = false;
                    break;
                }
            if (ok) return std::make_pair(base, h);
        }
    }
    return std::nullopt;
}

} // namespace

TEST_CASE("find_witness lands on the search-order-least pair") {
    Family fam = {ZeroSequence::geometric(R("1"), R("1/2"))};

    auto w = find_witness(full_grid(4, "1"), fam, R("1/4"), 2);
    REQUIRE(w.has_value());
    CHECK(w->a == R("1/16"));
    CHECK(w->h == NatSet{1});
    CHECK(w->delta == R("1/4"));
    CHECK(w->r_bound == 2);

    // An isolated point defeats the search: the only base points shifting
    // 1/2 into {1/2} would be 0, 1/4 or -1/4, none inside (0, 1/16).
    auto absent = find_witness(SetOfS::window({R("1/2")}), fam, R("1/16"), 2);
    CHECK_FALSE(absent.has_value());

    // Full set: everything lands, so H = {1} with the least pool point —
    // the first grid point past f(1) = 1/2 is 17/32, giving a = 1/32.
    auto triv = find_witness(full_grid(5, "1"), fam, R("1/8"), 1);
    REQUIRE(triv.has_value());
    CHECK(triv->h == NatSet{1});
    CHECK(triv->a == R("1/32"));

    CHECK_THROWS_AS(find_witness(full_grid(4, "1"), {}, R("1/4"), 2), InvalidArgument);
    CHECK_THROWS_AS(find_witness(full_grid(4, "1"), fam, R("0"), 2), DomainError);
    CHECK_THROWS_AS(find_witness(full_grid(4, "1"), fam, R("1/4"), 0), InvalidArgument);
    CHECK_THROWS_AS(
        find_witness(SetOfS::predicate([](const Rational&) { return true; }, "bare"), fam,
                     R("1/4"), 2),
        NotEnumerable);
}

TEST_CASE("find_j_witness scans deep index tails") {
    Family fam = {ZeroSequence::geometric(R("1"), R("1/2"))};
    auto a = intersect_sets(SetOfS::interval(R("0"), R("1/8")),
                            SetOfS::grid_window(GroundGrid(4, R("1"))));

    auto w = find_j_witness(a, fam, R("1/16"), 10);
    REQUIRE(w.has_value());
    CHECK(w->a == R("1/32"));
    CHECK(w->h == NatSet{5});

    CHECK_FALSE(find_j_witness(a, fam, R("1/16"), 2).has_value());

    auto full = find_j_witness(full_grid(4, "1"), fam, R("1/4"), 10);
    REQUIRE(full.has_value());
    CHECK(full->h == NatSet{1});
}

TEST_CASE("find_witness equals the brute-force oracle on a random matrix") {
    std::vector<ZeroSequence> pool = {
        ZeroSequence::geometric(R("1"), R("1/2")),
        ZeroSequence::geometric(R("1/4"), R("1/2")),
        ZeroSequence::geometric(R("1"), R("1/4")),
        ZeroSequence::table_then_geometric({R("1/2"), R("1/2")}, R("1"), R("1/2")),
    };
    std::vector<Rational> deltas = {R("1/4"), R("1/16"), R("3/8")};
    std::mt19937_64 rng(777);

    GroundGrid grid(5, R("1"));
    auto grid_elems = grid.elements();

    int found = 0, absent = 0;
    for (int iter = 0; iter < 200; ++iter) {
        // Random window set from the grid, occasionally an interval predicate.
        SetOfS a = SetOfS::window({R("1/2")});
        if (iter % 5 == 0) {
            Rational lo = grid_elems[rng() % 8];
            a = intersect_sets(SetOfS::interval(lo, lo + R("1/2")),
                               SetOfS::grid_window(grid));
        } else {
            std::vector<Rational> elems;
            for (const auto& e : grid_elems)
                if (rng() % 3 == 0) elems.push_back(e);
            if (elems.empty()) elems.push_back(grid_elems[rng() % grid_elems.size()]);
            a = SetOfS::window(elems, grid);
        }

        Family fam = {pool[rng() % pool.size()]};
        if (rng() % 2 == 0) fam.push_back(pool[rng() % pool.size()]);
        Rational delta = deltas[rng() % deltas.size()];
        std::uint64_t r = 2 + rng() % 7;  // 2..8

        auto fast = find_witness(a, fam, delta, r);
        auto slow = oracle(a, fam, delta, r);

        REQUIRE(fast.has_value() == slow.has_value());
        if (fast) {
            CHECK(fast->a == slow->first);
            CHECK(fast->h == slow->second);
            CHECK(validate_witness(a, fam, *fast));
            ++found;
        } else {
            ++absent;
        }

        // Thread count must never change the answer.
        ExecPolicy par{8};
        auto wide = find_witness(a, fam, delta, r, par);
        REQUIRE(wide.has_value() == fast.has_value());
        if (fast) {
            CHECK(wide->a == fast->a);
            CHECK(wide->h == fast->h);
        }
    }
    // The matrix must genuinely exercise both outcomes.
    CHECK(found >= 20);
    CHECK(absent >= 10);
}

TEST_CASE("validate_witness is an exact recheck") {
    Family fam = {ZeroSequence::geometric(R("1"), R("1/2"))};
    auto a = SetOfS::grid_window(GroundGrid(4, R("1")));
    auto w = find_witness(a, fam, R("1/4"), 2);
    REQUIRE(w.has_value());
    CHECK(validate_witness(a, fam, *w));

    Witness bad = *w;
    bad.a += R("1/1024");  // off the grid
    CHECK_FALSE(validate_witness(a, fam, bad));

    Witness outside = *w;
    outside.a = R("1/4");  // not strictly inside (0, delta)
    CHECK_FALSE(validate_witness(a, fam, outside));
}

TEST_CASE("certify_r finds the least covering index range") {
    Family easy = {ZeroSequence::geometric(R("1"), R("1/2"))};
    Corpus corpus{"unit-corpus", {easy, {ZeroSequence::geometric(R("1"), R("1/4"))}}};

    auto cert = certify_r(full_grid(4, "1"), 1, R("1/4"), corpus, 6);
    auto* c = std::get_if<CertifiedR>(&cert);
    REQUIRE(c != nullptr);
    CHECK(c->r == 1);
    CHECK(c->corpus_id == "unit-corpus");

    // Monotonicity: a larger budget returns the same least r.
    auto again = certify_r(full_grid(4, "1"), 1, R("1/4"), corpus, 12);
    CHECK(std::get<CertifiedR>(again).r == 1);

    // Least-r agrees with the definitional loop: the smallest r whose
    // witnesses exist for every family with H inside {1..r}.
    auto a = intersect_sets(SetOfS::interval(R("0"), R("1/4")),
                            SetOfS::grid_window(GroundGrid(5, R("1"))));
    Corpus harder{"unit-corpus-2",
                  {{ZeroSequence::geometric(R("1"), R("1/2"))},
                   {ZeroSequence::geometric(R("1/2"), R("1/2"))}}};
    auto cert2 = certify_r(a, 1, R("1/8"), harder, 8);
    auto* c2 = std::get_if<CertifiedR>(&cert2);
    REQUIRE(c2 != nullptr);
    std::uint64_t least = 0;
    for (std::uint64_t r = 1; r <= 8 && least == 0; ++r) {
        bool all = true;
        for (const auto& fam : harder.families) {
            auto w = find_witness(a, fam, R("1/8"), r);
            if (!w) {
                all = false;
                break;
            }
        }
        if (all) least = r;
    }
    CHECK(c2->r == least);

    // A family of adversarial flat prefixes defeats a thin window.
    Corpus blocky{"unit-corpus-3",
                  {{ZeroSequence::table_then_geometric({R("1"), R("1"), R("1")}, R("1"),
                                                       R("1/2"))}}};
    auto thin = intersect_sets(SetOfS::interval(R("0"), R("1/8")),
                               SetOfS::grid_window(GroundGrid(4, R("1"))));
    auto ref = certify_r(thin, 1, R("1/16"), blocky, 3);
    auto* rr = std::get_if<Refutation>(&ref);
    REQUIRE(rr != nullptr);
    CHECK(rr->r_tried == 3);
    CHECK_FALSE(find_witness(thin, rr->family, R("1/16"), 3).has_value());

    // Arity contract: families larger than k are rejected.
    Corpus toobig{"unit-corpus-4", {{easy[0], easy[0]}}};
    CHECK_THROWS_AS(certify_r(full_grid(4, "1"), 1, R("1/4"), toobig, 3), InvalidArgument);
}

TEST_CASE("refute_cr defeats thin windows and spares the full set") {
    auto thin = intersect_sets(SetOfS::interval(R("0"), R("1/8")),
                               SetOfS::grid_window(GroundGrid(4, R("1"))));
    auto ref = refute_cr(thin, 1, R("1/16"), 3);
    REQUIRE(ref.has_value());
    CHECK_FALSE(find_witness(thin, ref->family, R("1/16"), 3).has_value());

    // The full set survives every probe — provided its enumeration window
    // reaches past the largest adversary sum (3 * 1 + delta here), so the
    // candidate pools stay nonempty.
    CHECK_FALSE(refute_cr(full_grid(4, "4"), 1, R("1/4"), 3).has_value());

    // Two isolated points with a tiny radius fall to a small flat prefix.
    auto isolated = SetOfS::window({R("1/2"), R("1")}, GroundGrid(4, R("1")));
    auto ref2 = refute_cr(isolated, 1, R("1/32"), 2);
    REQUIRE(ref2.has_value());
    CHECK_FALSE(find_witness(isolated, ref2->family, R("1/32"), 2).has_value());
}

TEST_CASE("translate_witness shifts base points with strict half budgets") {
    Family fam = {ZeroSequence::geometric(R("1"), R("1/2"))};
    auto a = full_grid(4, "1");

    Witness w{R("1/16"), {2}, R("1/2"), 2};
    auto t = translate_witness(R("1/8"), w, a, fam, R("1/2"));
    CHECK(t.a == R("3/16"));
    CHECK(t.h == NatSet{2});
    CHECK(validate_witness(a, fam, t));

    // Both budgets are strict at delta/2.
    CHECK_THROWS_AS(translate_witness(R("1/4"), w, a, fam, R("1/2")), BudgetExceeded);
    Witness fat{R("1/4"), {2}, R("1/2"), 2};
    CHECK_THROWS_AS(translate_witness(R("1/8"), fat, a, fam, R("1/2")), BudgetExceeded);

    // Recheck is against the target set, so junk witnesses are caught.
    auto spot = SetOfS::window({R("1/2")});
    Witness junk{R("1/64"), {1}, R("1/4"), 1};
    CHECK_THROWS_AS(translate_witness(R("1/32"), junk, spot, fam, R("1/4")), InvalidWitness);
}

TEST_CASE("translation composes with a search on the shifted set") {
    Family fam = {ZeroSequence::geometric(R("1"), R("1/2"))};
    auto a = full_grid(5, "1");
    Rational delta = R("1/4");
    Rational x = R("1/16");  // < delta/2

    auto shifted = shift_set(x, a);
    auto w = find_witness(shifted, fam, delta / 2, 3);
    REQUIRE(w.has_value());

    auto t = translate_witness(x, *w, a, fam, delta);
    CHECK(t.a == x + w->a);
    CHECK(validate_witness(a, fam, t));
    CHECK(t.a < delta);
}
