#pragma once

#include "crlab/exec.hpp"
#include "crlab/natset.hpp"
#include "crlab/sequences.hpp"
#include "crlab/set_of_s.hpp"
#include "crlab/witness.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace crlab {

// Ordered sequence of index blocks H_1, ..., H_r with max(H_i) < min(H_{i+1}).
struct BlockSequence {
    std::vector<NatSet> blocks;

    std::uint64_t r() const { return blocks.size(); }
};

// Validates ordering and block contents.  Throws InvalidArgument.
BlockSequence make_block_sequence(std::vector<NatSet> blocks);

// All 2^r - 1 unions over nonempty subsets of the blocks, ordered by the
// canonical subset search order of the selector.  Entries are distinct
// because blocks never overlap.
std::vector<NatSet> finite_unions(const BlockSequence& bs, std::uint64_t budget = 1000000);

// True iff h is the union of some nonempty subset of the blocks.
bool is_finite_union_member(const BlockSequence& bs, const NatSet& h);

// Every block sequence with exactly r blocks drawn from {1..n_max}.
// Deterministic order: the first block runs through the canonical subset
// order, and later blocks recurse over the indices above the previous
// block's maximum.  Throws SizeLimit past the budget.
std::vector<BlockSequence> enumerate_block_sequences(std::uint32_t n_max, std::uint32_t r,
                                                     std::uint64_t budget = 1000000);

// Membership rule for finite index sets (the shape Theta-style sets and
// structural filters share).
struct NatSetPredicate {
    std::function<bool(const NatSet&)> fn;
    std::string desc;

    bool operator()(const NatSet& h) const { return fn(h); }
};

// Named structural rules usable from scenario files:
//   "min-size" s      — |H| >= s
//   "contains" t      — t is an element of H
//   "max-at-least" m  — max(H) >= m
NatSetPredicate named_natset_predicate(const std::string& rule, std::uint64_t param);

// Star-verification verdict over a finite index window.
struct IpStarVerdict {
    bool holds = false;
    std::uint64_t r = 0;
    std::uint32_t n_max = 0;
    std::uint64_t checked = 0;  // block sequences examined before concluding
    std::optional<BlockSequence> counterexample;
};

// Enumeration-first check that `pred` meets every r-block sequence inside
// {1..n_max}: for each such sequence some nonempty union of its blocks must
// satisfy pred.  The first failing sequence (in enumeration order) is the
// counterexample regardless of thread count.
IpStarVerdict is_ip_r_star(const NatSetPredicate& pred, std::uint64_t r, std::uint32_t n_max,
                           const ExecPolicy& policy = {}, std::uint64_t budget = 1000000);

// The index sets H whose sums can be completed into the target set from a
// common base point:  H is a member iff some a in (0, delta) has
// a + sum_{t in H} f(t) in A for every family member f.  Membership is
// decided by the same window scan the witness search uses (so the least
// such a is returned) and memoised; copies share the cache.
class ThetaSet {
public:
    ThetaSet(SetOfS a, Family family, Rational delta);

    std::optional<Rational> membership(const NatSet& h) const;
    bool contains(const NatSet& h) const { return membership(h).has_value(); }

    const SetOfS& set() const { return st_->a; }
    const Family& family() const { return st_->family; }
    const Rational& delta() const { return st_->delta; }

    // Predicate view sharing this set's cache.
    NatSetPredicate as_predicate(const std::string& name) const;

private:
    struct State {
        SetOfS a;
        Family family;
        Rational delta;
        mutable std::mutex mu;
        mutable std::map<NatSet, std::optional<Rational>> cache;

        State(SetOfS a_, Family f_, Rational d_)
            : a(std::move(a_)), family(std::move(f_)), delta(std::move(d_)) {}
    };
    std::shared_ptr<State> st_;
};

// Constructive star-verification for a ThetaSet: instead of scanning all
// unions per block sequence, build the block-sum family and run the witness
// search; its hit K selects the union.  A sequence where the witness search
// comes up empty is reported and flagged — it would contradict any r-level
// certificate for the underlying set.
struct ThetaStarReport {
    bool holds = false;
    std::uint64_t r = 0;
    std::uint32_t n_max = 0;
    std::vector<std::pair<BlockSequence, NatSet>> selections;  // sequence -> chosen K
    std::optional<BlockSequence> failing;
    bool flags_certificate_refutation = false;
};

ThetaStarReport verify_theta_ip_r_star(const ThetaSet& theta, std::uint64_t r,
                                       std::uint32_t n_max, const ExecPolicy& policy = {},
                                       std::uint64_t budget = 1000000);

// Empirical intersection level: the least l <= n_max such that for every
// supplied pair the intersection of the two predicates is IP_l* on
// {1..n_max}.  Preconditions: the first predicate of each pair must verify
// at level r, the second at level s (throws InvalidArgument otherwise).
struct EmpiricalLOutcome {
    std::optional<std::uint64_t> l;
    std::uint64_t r = 0, s = 0;
    std::uint32_t n_max = 0;
    std::vector<IpStarVerdict> failed_levels;  // first failing verdict for each l that lost
};

EmpiricalLOutcome empirical_l(std::uint64_t r, std::uint64_t s, std::uint32_t n_max,
                              const std::vector<std::pair<NatSetPredicate, NatSetPredicate>>& pairs,
                              const ExecPolicy& policy = {}, std::uint64_t budget = 1000000);

} // namespace crlab
