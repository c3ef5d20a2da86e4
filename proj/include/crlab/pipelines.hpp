#pragma once

#include "crlab/exec.hpp"
#include "crlab/ip.hpp"
#include "crlab/sequences.hpp"
#include "crlab/set_of_s.hpp"
#include "crlab/witness.hpp"
#include "crlab/words.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace crlab {

// Everything the two-cell partition pipeline produced, witness plus the
// intermediates needed to audit it end to end.
struct PartitionRun {
    std::uint32_t cell = 0;  // 1 or 2: which cell the witness landed in
    Witness witness;         // valid for the refined family against that cell

    Family refined;                             // tail-refined input family
    std::vector<std::uint64_t> shared_reindex;  // s_1.. for the shared map
    std::uint64_t words_colored = 0;            // k^n instances that were colored
    Rational base_point;                        // c, found at half radius
    NatSet base_index_set;                      // K, the base witness index set
    VariableWord chosen_word;
    std::uint32_t word_color = 0;
    NatSet const_positions;  // 1-based constant positions of the chosen word
    NatSet wild_positions;   // 1-based wildcard positions
};

// Two-cell partition pipeline: given A split into cells a1, a2 and a family
// of k zero-convergent sequences, produce a witness landing entirely in one
// cell.  Stages: refine the family at delta; form the k^n word-composed
// sequences over length-n words; find a base witness (c, K) for the union
// at radius delta/2 with K in {1..r1}; color each word by which cell its
// completed sum hits; take the first monochromatic variable word; split its
// positions into constants C and wildcards I; assemble
//
//   a = c + sum_{y in K} sum_{i in C} refined[w_i](n*y + i),
//   H = { n*y + i : y in K, i in I }  (inside {1 .. n*r1 + n}).
//
// The assembled witness is rechecked exactly against the winning cell and
// the reindexing identity is asserted for every family member.
// Throws NoBaseWitness, NoVariableWord, or ValidationFailed.
PartitionRun partition_regularity_witness(const SetOfS& a1, const SetOfS& a2,
                                          const Family& family, const Rational& delta,
                                          std::uint32_t n, std::uint64_t r1,
                                          const ExecPolicy& policy = {},
                                          std::uint64_t budget = 1000000);

// Witness that a product pair of sets is reached from a common index set:
// scans nonempty H inside {1..n_max} in canonical order for the first H
// that is a member of both coordinate theta sets, and returns the two base
// points with l = max(H).  Throws NoCommonIndexSet when the scan runs out.
struct ProductRun {
    Rational a;
    Rational b;
    NatSet h;
    std::uint64_t l = 0;
    Rational delta;
};

ProductRun product_witness(const SetOfS& first_set, const SetOfS& second_set,
                           const std::vector<PairZeroSequence>& pairs, const Rational& delta,
                           std::uint32_t n_max, const ExecPolicy& policy = {},
                           std::uint64_t budget = 1000000);

// Tree of finite tuples over the positive rationals.  Two presentations:
// an explicit finite tuple list, or the uniform tree over a base set (all
// finite tuples with entries in the base — infinitely many, but finitely
// described, which is what lets the branch conditions below collapse to
// finite checks).
class FuncTree {
public:
    static FuncTree explicit_tree(std::vector<std::vector<Rational>> tuples);
    static FuncTree uniform(SetOfS base);

    bool is_uniform() const { return uniform_.has_value(); }
    const SetOfS& base() const;
    const std::vector<std::vector<Rational>>& tuples() const { return tuples_; }

    bool contains(const std::vector<Rational>& f) const;

private:
    FuncTree() = default;
    std::vector<std::vector<Rational>> tuples_;  // sorted, deduped, no empty tuple
    std::optional<SetOfS> uniform_;
};

// Extension set of a node: { x : f followed by x is in the tree }.  The
// empty tuple addresses the root.
SetOfS b_set(const FuncTree& t, const std::vector<Rational>& f);

// Corpus-relative richness check a checker plugs in (true = certified).
using CrCheck = std::function<bool(const SetOfS&)>;

struct ConditionVerdict {
    bool holds = false;
    std::string detail;
};

struct TreeCheckReport {
    ConditionVerdict range_in_target;     // every extension set inside A
    ConditionVerdict successor_shift;     // B(f.x) inside -x + B(f), all f, x
    ConditionVerdict intersection_rich;   // the branch intersection passes CrCheck
    std::string scope_note;

    bool all_hold() const {
        return range_in_target.holds && successor_shift.holds && intersection_rich.holds;
    }
};

// Checks the three branch conditions of a tuple tree against a target set,
// with the richness of the intersection delegated to `cr`.  For explicit
// trees every node is visited; for uniform trees the conditions reduce to
// finitely many structural checks (recorded in scope_note).
TreeCheckReport check_tree_conditions(const FuncTree& t, const SetOfS& a, const CrCheck& cr);

// Downward-directed family of named subsets.
struct DirectedFamily {
    std::vector<std::pair<std::string, SetOfS>> members;
};

struct FamilyCheckReport {
    ConditionVerdict members_in_target;   // every member set inside A
    ConditionVerdict directed;            // any two members dominate a third
    ConditionVerdict shift_cover;         // for each member and x in it, some member fits -x + it
    ConditionVerdict intersections_rich;  // every nonempty finite intersection passes CrCheck
    std::string scope_note;

    bool all_hold() const {
        return members_in_target.holds && directed.holds && shift_cover.holds &&
               intersections_rich.holds;
    }
};

FamilyCheckReport check_directed_family(const DirectedFamily& d, const SetOfS& a,
                                        const CrCheck& cr);

// Corpus-relative richness checker: certifies a candidate set by running
// the r-certification against a fixed corpus.  Its verdicts are always
// relative to that corpus id — there is no absolute claim at finite scale.
class CrChecker {
public:
    CrChecker(Corpus corpus, std::uint64_t k, Rational delta, std::uint64_t r_max,
              ExecPolicy policy = {});

    bool certifies(const SetOfS& candidate) const;
    std::optional<std::uint64_t> certified_r(const SetOfS& candidate) const;
    const std::string& corpus_id() const { return corpus_.id; }

    CrCheck as_check() const;

private:
    Corpus corpus_;
    std::uint64_t k_;
    Rational delta_;
    std::uint64_t r_max_;
    ExecPolicy policy_;
};

} // namespace crlab
