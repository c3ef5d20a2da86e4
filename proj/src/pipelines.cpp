#include "crlab/pipelines.hpp"

#include "crlab/errors.hpp"

#include <algorithm>

namespace crlab {

// ---------------------------------------------------------------------------
// Partition pipeline

PartitionRun partition_regularity_witness(const SetOfS& a1, const SetOfS& a2,
                                          const Family& family, const Rational& delta,
                                          std::uint32_t n, std::uint64_t r1,
                                          const ExecPolicy& policy, std::uint64_t budget) {
    if (family.empty()) throw InvalidArgument("partition pipeline needs a nonempty family");
    if (family.size() > 255) throw SizeLimit("family too large to index by word letters");
    if (!is_positive(delta)) throw DomainError("partition radius must be positive");
    if (n == 0 || r1 == 0)
        throw InvalidArgument("partition pipeline needs word length n >= 1 and r1 >= 1");

    auto k = static_cast<std::uint8_t>(family.size());
    SetOfS whole = union_sets(a1, a2);

    PartitionRun run;
    run.refined = refine_family(family, delta);
    run.shared_reindex = reindex_prefix(run.refined.front(),
                                        std::max<std::uint64_t>(n * r1 + n, 8));

    // One composed sequence per length-n word over {1..k}.
    auto words = enumerate_words(n, k, budget);
    Family composed;
    composed.reserve(words.size());
    for (const auto& w : words)
        composed.push_back(word_composed_sequence(run.refined, w.letters));
    run.words_colored = words.size();

    // Base witness at half radius: c + sum_{y in K} g_w(y) lands in the
    // union for every word w.
    auto base = find_witness(whole, composed, delta / 2, r1, policy, budget);
    if (!base)
        throw NoBaseWitness("no base point covers all " + std::to_string(words.size()) +
                            " composed sequences at half radius " + rational_str(delta / 2));
    run.base_point = base->a;
    run.base_index_set = base->h;

    // Color each word by the cell its completed sum lands in.  The base
    // witness guarantees the sum is in the union, so the rule is total.
    auto word_sum = [&](const Word& w) {
        Rational s = run.base_point;
        auto g = word_composed_sequence(run.refined, w.letters);
        for (auto y : run.base_index_set) s += g.at(y);
        return s;
    };
    Coloring by_cell{2,
                     [&](const Word& w) {
                         Rational s = word_sum(w);
                         if (a1.contains(s)) return 1u;
                         if (a2.contains(s)) return 2u;
                         throw ValidationFailed("completed sum " + rational_str(s) +
                                                " escaped both cells");
                     },
                     "cell-of-completed-sum"};

    auto mono = find_monochromatic_variable_word(by_cell, n, k, budget);
    if (!mono)
        throw NoVariableWord("no variable word of length " + std::to_string(n) +
                             " is monochromatic for the cell coloring");
    run.chosen_word = mono->first;
    run.word_color = mono->second;
    run.cell = mono->second;
    run.const_positions = constant_positions(run.chosen_word);
    run.wild_positions = wildcard_positions(run.chosen_word);

    // Assemble the witness: constants fold into the base point, wildcards
    // become the index set.
    Rational a_val = run.base_point;
    for (auto y : run.base_index_set)
        for (auto i : run.const_positions) {
            std::uint8_t letter = run.chosen_word.letters[i - 1];
            a_val += run.refined[letter - 1].at(n * y + i);
        }
    NatSet h;
    for (auto y : run.base_index_set)
        for (auto i : run.wild_positions) h.push_back(n * y + i);
    h = natset_normalize(std::move(h));

    const SetOfS& cell_set = run.cell == 1 ? a1 : a2;
    run.witness = Witness{a_val, h, delta, n * r1 + n};

    // Reindexing identity: for every letter j the assembled sum must equal
    // the completed sum of the word obtained by substituting j — exactly.
    for (std::uint8_t j = 1; j <= k; ++j) {
        Rational assembled = a_val + sum_over(run.refined[j - 1], h);
        Rational direct = word_sum(substitute(run.chosen_word, j));
        if (assembled != direct)
            throw ValidationFailed("reindexing identity failed for letter " +
                                   std::to_string(j));
        if (!cell_set.contains(assembled))
            throw ValidationFailed("assembled witness escaped cell " +
                                   std::to_string(run.cell));
    }
    if (!is_positive(a_val) || a_val >= delta)
        throw ValidationFailed("assembled base point left the radius window");
    return run;
}

// ---------------------------------------------------------------------------
// Product pipeline

ProductRun product_witness(const SetOfS& first_set, const SetOfS& second_set,
                           const std::vector<PairZeroSequence>& pairs, const Rational& delta,
                           std::uint32_t n_max, const ExecPolicy& policy,
                           std::uint64_t budget) {
    if (pairs.empty()) throw InvalidArgument("product pipeline needs at least one pair");
    if (!is_positive(delta)) throw DomainError("product radius must be positive");
    auto [firsts, seconds] = project_pair(pairs);
    ThetaSet theta1(first_set, firsts, delta);
    ThetaSet theta2(second_set, seconds, delta);

    auto masks = subset_masks_in_search_order(n_max, budget);
    std::function<std::optional<std::pair<Rational, Rational>>(std::uint64_t)> probe =
        [&](std::uint64_t idx) -> std::optional<std::pair<Rational, Rational>> {
        NatSet h = mask_to_natset(masks[idx]);
        auto a = theta1.membership(h);
        if (!a) return std::nullopt;
        auto b = theta2.membership(h);
        if (!b) return std::nullopt;
        return std::make_pair(*a, *b);
    };
    auto hit = first_hit<std::pair<Rational, Rational>>(masks.size(), probe, policy);
    if (!hit)
        throw NoCommonIndexSet("no index set inside {1.." + std::to_string(n_max) +
                               "} reaches both coordinate sets");

    ProductRun run;
    run.h = mask_to_natset(masks[hit->first]);
    run.a = hit->second.first;
    run.b = hit->second.second;
    run.l = run.h.back();
    run.delta = delta;

    // Independent recheck of both coordinates.
    if (!is_positive(run.a) || run.a >= delta || !is_positive(run.b) || run.b >= delta)
        throw ValidationFailed("product base points left the radius window");
    for (const auto& p : pairs) {
        if (!first_set.contains(run.a + sum_over(p.first, run.h)))
            throw ValidationFailed("first coordinate failed revalidation");
        if (!second_set.contains(run.b + sum_over(p.second, run.h)))
            throw ValidationFailed("second coordinate failed revalidation");
    }
    return run;
}

// ---------------------------------------------------------------------------
// Tuple trees

FuncTree FuncTree::explicit_tree(std::vector<std::vector<Rational>> tuples) {
    FuncTree t;
    for (auto& f : tuples) {
        if (f.empty())
            throw InvalidArgument("explicit trees list nonempty tuples; the root is implicit");
        for (const auto& x : f)
            if (!is_positive(x))
                throw DomainError("tuple entries must be positive rationals");
    }
    std::sort(tuples.begin(), tuples.end());
    tuples.erase(std::unique(tuples.begin(), tuples.end()), tuples.end());
    t.tuples_ = std::move(tuples);
    return t;
}

FuncTree FuncTree::uniform(SetOfS base) {
    FuncTree t;
    t.uniform_ = std::move(base);
    return t;
}

const SetOfS& FuncTree::base() const {
    if (!uniform_) throw InvalidArgument("only uniform trees have a base set");
    return *uniform_;
}

bool FuncTree::contains(const std::vector<Rational>& f) const {
    if (f.empty()) return true;  // the root
    if (uniform_) {
        for (const auto& x : f)
            if (!uniform_->contains(x)) return false;
        return true;
    }
    return std::binary_search(tuples_.begin(), tuples_.end(), f);
}

SetOfS b_set(const FuncTree& t, const std::vector<Rational>& f) {
    if (t.is_uniform()) {
        for (const auto& x : f)
            if (!t.base().contains(x)) return SetOfS::window({});
        return t.base();
    }
    std::vector<Rational> exts;
    for (const auto& g : t.tuples()) {
        if (g.size() != f.size() + 1) continue;
        if (std::equal(f.begin(), f.end(), g.begin())) exts.push_back(g.back());
    }
    return SetOfS::window(std::move(exts));
}

namespace {

std::string tuple_str(const std::vector<Rational>& f) {
    std::string s = "<";
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (i) s += ",";
        s += rational_str(f[i]);
    }
    return s + ">";
}

// All nodes of an explicit tree: the root plus every listed tuple.
std::vector<std::vector<Rational>> explicit_nodes(const FuncTree& t) {
    std::vector<std::vector<Rational>> nodes;
    nodes.push_back({});
    for (const auto& f : t.tuples()) nodes.push_back(f);
    return nodes;
}

} // namespace

TreeCheckReport check_tree_conditions(const FuncTree& t, const SetOfS& a, const CrCheck& cr) {
    if (!cr) throw InvalidArgument("tree check needs a richness check");
    TreeCheckReport rep;

    if (t.is_uniform()) {
        rep.scope_note = "uniform tree: conditions verified structurally over the base set";
        const SetOfS& base = t.base();

        try {
            rep.range_in_target.holds = subset_of(base, a);
            rep.range_in_target.detail =
                rep.range_in_target.holds ? "base set lies inside the target"
                                          : "base set leaves the target";
        } catch (const NotEnumerable& e) {
            rep.range_in_target = {false, std::string("undecidable: ") + e.what()};
        }

        if (base.is_full()) {
            rep.successor_shift = {true, "shifting the full set yields the full set"};
        } else if (base.is_window()) {
            rep.successor_shift.holds = true;
            for (const auto& x : base.elements()) {
                SetOfS shifted = shift_set(x, base);
                if (!subset_of(base, shifted)) {
                    rep.successor_shift = {false, "extension set escapes the shift at x = " +
                                                      rational_str(x)};
                    break;
                }
            }
            if (rep.successor_shift.holds)
                rep.successor_shift.detail = "verified for every base element";
        } else {
            rep.successor_shift = {false, "undecidable for a predicate base"};
        }

        // Every node of a uniform tree has the same extension set, so the
        // branch intersection is the base itself.
        rep.intersection_rich.holds = cr(base);
        rep.intersection_rich.detail = rep.intersection_rich.holds
                                           ? "base set certified"
                                           : "base set failed the richness check";
        return rep;
    }

    rep.scope_note = "explicit tree: every node visited";
    auto nodes = explicit_nodes(t);

    rep.range_in_target.holds = true;
    for (const auto& f : nodes) {
        SetOfS ext = b_set(t, f);
        if (!subset_of(ext, a)) {
            rep.range_in_target = {false,
                                   "extensions of " + tuple_str(f) + " leave the target"};
            break;
        }
    }
    if (rep.range_in_target.holds) rep.range_in_target.detail = "all extension sets inside";

    rep.successor_shift.holds = true;
    for (const auto& f : nodes) {
        SetOfS ext = b_set(t, f);
        if (ext.empty()) continue;
        for (const auto& x : ext.elements()) {
            auto child = f;
            child.push_back(x);
            SetOfS child_ext = b_set(t, child);
            SetOfS shifted = shift_set(x, ext);
            if (!subset_of(child_ext, shifted)) {
                rep.successor_shift = {false, "child of " + tuple_str(f) + " at x = " +
                                                  rational_str(x) + " escapes the shift"};
                break;
            }
        }
        if (!rep.successor_shift.holds) break;
    }
    if (rep.successor_shift.holds) rep.successor_shift.detail = "verified at every node";

    // Branch intersection across all nodes.  A finite explicit tree always
    // has maximal tuples with empty extension sets, so this intersection is
    // empty and the richness check decides the verdict on the empty set.
    SetOfS inter = b_set(t, nodes.front());
    for (std::size_t i = 1; i < nodes.size(); ++i)
        inter = intersect_sets(inter, b_set(t, nodes[i]));
    rep.intersection_rich.holds = cr(inter);
    rep.intersection_rich.detail =
        inter.empty() ? "branch intersection is empty (finite tree has maximal tuples)"
                      : "branch intersection checked";
    return rep;
}

// ---------------------------------------------------------------------------
// Directed families

FamilyCheckReport check_directed_family(const DirectedFamily& d, const SetOfS& a,
                                        const CrCheck& cr) {
    if (!cr) throw InvalidArgument("family check needs a richness check");
    if (d.members.empty()) throw InvalidArgument("directed family has no members");
    FamilyCheckReport rep;
    rep.scope_note = "membership and shifts quantified over declared windows where needed";

    rep.members_in_target.holds = true;
    for (const auto& [name, c] : d.members) {
        bool ok;
        try {
            ok = subset_of(c, a);
        } catch (const NotEnumerable&) {
            ok = false;
        }
        if (!ok) {
            rep.members_in_target = {false, "member '" + name + "' leaves the target"};
            break;
        }
    }
    if (rep.members_in_target.holds) rep.members_in_target.detail = "all members inside";

    // Directedness: any two members dominate a third.
    rep.directed.holds = true;
    for (const auto& [n1, c1] : d.members) {
        for (const auto& [n2, c2] : d.members) {
            SetOfS meet = intersect_sets(c1, c2);
            bool found = false;
            for (const auto& [n3, c3] : d.members) {
                try {
                    if (subset_of(c3, meet)) {
                        found = true;
                        break;
                    }
                } catch (const NotEnumerable&) {
                    continue;
                }
            }
            if (!found) {
                rep.directed = {false, "no member sits below '" + n1 + "' meet '" + n2 + "'"};
                break;
            }
        }
        if (!rep.directed.holds) break;
    }
    if (rep.directed.holds) rep.directed.detail = "every pair dominates a member";

    // Shift cover: for each member C and x in C, some member fits inside
    // the shifted window -x + C.
    rep.shift_cover.holds = true;
    for (const auto& [name, c] : d.members) {
        std::vector<Rational> probes;
        std::string scope;
        if (c.is_window()) {
            probes = c.elements();
            scope = "all elements";
        } else if (c.is_full()) {
            // -x + full is full again, so any member fits; nothing to scan.
            continue;
        } else if (c.enumerable()) {
            Rational hi = 1;
            for (const auto& w : c.windows()) hi = std::max(hi, Rational(w.upper() + 1));
            for (const auto& e : c.extra_points()) hi = std::max(hi, Rational(e + 1));
            probes = c.window_elements(0, hi);
            scope = "window elements";
        } else {
            rep.shift_cover = {false, "member '" + name + "' offers no finite scan"};
            break;
        }
        for (const auto& x : probes) {
            SetOfS shifted = shift_set(x, c);
            bool found = false;
            for (const auto& [gname, g] : d.members) {
                try {
                    if (subset_of(g, shifted)) {
                        found = true;
                        break;
                    }
                } catch (const NotEnumerable&) {
                    continue;
                }
            }
            if (!found) {
                rep.shift_cover = {false, "no member fits the shift of '" + name + "' at x = " +
                                              rational_str(x) + " (scanned " + scope + ")"};
                break;
            }
        }
        if (!rep.shift_cover.holds) break;
    }
    if (rep.shift_cover.holds) rep.shift_cover.detail = "every shift covered";

    // Finite intersections: every nonempty subfamily.
    rep.intersections_rich.holds = true;
    auto masks = subset_masks_in_search_order(static_cast<std::uint32_t>(d.members.size()),
                                              1u << 20);
    for (auto mask : masks) {
        NatSet pick = mask_to_natset(mask);
        SetOfS inter = d.members[pick.front() - 1].second;
        std::string label = d.members[pick.front() - 1].first;
        for (std::size_t j = 1; j < pick.size(); ++j) {
            inter = intersect_sets(inter, d.members[pick[j] - 1].second);
            label += "&" + d.members[pick[j] - 1].first;
        }
        if (!cr(inter)) {
            rep.intersections_rich = {false, "intersection " + label +
                                                 " failed the richness check"};
            break;
        }
    }
    if (rep.intersections_rich.holds)
        rep.intersections_rich.detail = "all finite intersections certified";
    return rep;
}

// ---------------------------------------------------------------------------
// Corpus-relative checker

CrChecker::CrChecker(Corpus corpus, std::uint64_t k, Rational delta, std::uint64_t r_max,
                     ExecPolicy policy)
    : corpus_(std::move(corpus)), k_(k), delta_(std::move(delta)), r_max_(r_max),
      policy_(policy) {
    if (corpus_.id.empty()) throw InvalidArgument("richness corpus needs an id");
}

std::optional<std::uint64_t> CrChecker::certified_r(const SetOfS& candidate) const {
    auto outcome = certify_r(candidate, k_, delta_, corpus_, r_max_, policy_);
    if (auto* c = std::get_if<CertifiedR>(&outcome)) return c->r;
    return std::nullopt;
}

bool CrChecker::certifies(const SetOfS& candidate) const {
    return certified_r(candidate).has_value();
}

CrCheck CrChecker::as_check() const {
    CrChecker self = *this;
    return [self](const SetOfS& s) { return self.certifies(s); };
}

} // namespace crlab
