#pragma once

#include "crlab/exec.hpp"
#include "crlab/natset.hpp"
#include "crlab/sequences.hpp"
#include "crlab/set_of_s.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace crlab {

using Family = std::vector<ZeroSequence>;

// A certified hit: a in (0, delta) and, for every family member f,
// a + sum_{t in h} f(t) lands in the target set.  r_bound records the index
// range {1..r_bound} the search ranged over.
struct Witness {
    Rational a;
    NatSet h;
    Rational delta;
    std::uint64_t r_bound = 0;
};

// Evidence against a richness claim: a family that admits no witness within
// the stated index range.
struct Refutation {
    Family family;
    std::uint64_t r_tried = 0;
    std::string note;
};

// Outcome of corpus-wide certification: the least r such that every corpus
// family admits a witness with indices in {1..r}.  Always names the corpus
// it is relative to — there is no absolute certificate at finite scale.
struct CertifiedR {
    std::uint64_t r = 0;
    std::uint64_t k = 0;
    Rational delta;
    std::string corpus_id;
};

// Named, fixed collection of families a certification runs against.
struct Corpus {
    std::string id;
    std::vector<Family> families;
};

// Least witness for (A, F, delta) with index sets H in {1..r}: H runs in
// canonical search order, and for each H candidate base points a ascend.
// Candidates are derived from A's elements in the window
// (sum_F0(H), sum_F0(H) + delta) shifted back by sum_F0(H), where F0 is the
// first family member; remaining members are then checked exactly.
// Throws NotEnumerable when A offers no finite scan.
std::optional<Witness> find_witness(const SetOfS& a, const Family& family,
                                    const Rational& delta, std::uint64_t r,
                                    const ExecPolicy& policy = {},
                                    std::uint64_t budget = 1000000);

// Same search with the index range read as a raw tail bound {1..t_max}
// rather than a certified arity; the two forms differ only in intent.
std::optional<Witness> find_j_witness(const SetOfS& a, const Family& family,
                                      const Rational& delta, std::uint64_t t_max,
                                      const ExecPolicy& policy = {},
                                      std::uint64_t budget = 1000000);

// Exact recheck of a claimed witness.
bool validate_witness(const SetOfS& a, const Family& family, const Witness& w);

// Runs find_witness for every corpus family at r_max and reports the least
// r that covers all of them, or the first family that defeats the search.
// Requires every family to have between 1 and k members.
std::variant<CertifiedR, Refutation> certify_r(const SetOfS& a, std::uint64_t k,
                                               const Rational& delta, const Corpus& corpus,
                                               std::uint64_t r_max,
                                               const ExecPolicy& policy = {},
                                               std::uint64_t budget = 1000000);

// Adversarial search for a defeating family: constant-prefix sequences
// f_g(t) = g for t <= r, then g * (1/2)^t, with g running over the first
// adversary_budget enumerable values of A's windows.  Returns the first
// family admitting no witness, or nullopt if every probe is witnessed.
std::optional<Refutation> refute_cr(const SetOfS& a, std::uint64_t k, const Rational& delta,
                                    std::uint64_t r, std::uint64_t adversary_budget = 16,
                                    const ExecPolicy& policy = {},
                                    std::uint64_t budget = 1000000);

// Witness transport along a set shift: a witness w for shift_set(x, A) with
// w.a < delta/2 and x < delta/2 becomes the witness (x + w.a, w.h) for A.
// Both halves of the budget are strict; the composed witness is rechecked
// against (A, family) before it is returned.  Throws BudgetExceeded or
// InvalidWitness accordingly.
Witness translate_witness(const Rational& x, const Witness& w, const SetOfS& a,
                          const Family& family, const Rational& delta);

} // namespace crlab
