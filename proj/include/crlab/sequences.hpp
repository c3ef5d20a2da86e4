#pragma once

#include "crlab/natset.hpp"
#include "crlab/rational.hpp"

#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace crlab {

// One geometric envelope term c * rho^t (c > 0, 0 < rho < 1).
struct GeometricTerm {
    Rational c;
    Rational rho;
};

// Proof-carrying decay bound for a zero-convergent sequence:
//
//   f(t) <= flat_max                    for 1 <= t <= flat_len,
//   f(t) <= sum_j c_j * rho_j^t        for t  > flat_len.
//
// Every sequence in the library carries one, which is what lets searches
// terminate with certainty instead of by fiat cutoff.
class DecayCertificate {
public:
    DecayCertificate(Rational flat_max, std::uint64_t flat_len,
                     std::vector<GeometricTerm> tail);

    const Rational& flat_max() const { return flat_max_; }
    std::uint64_t flat_len() const { return flat_len_; }
    const std::vector<GeometricTerm>& tail() const { return tail_; }

    // Upper bound for f(t), t >= 1.
    Rational bound_at(std::uint64_t t) const;

    // Exact value of sum_{t >= t0} bound_at(t) (geometric tails converge).
    Rational sum_from(std::uint64_t t0) const;

    // Least T > flat_len such that bound_at(t) < eps for all t >= T.
    // Requires eps > 0.
    std::uint64_t index_below(const Rational& eps) const;

private:
    Rational flat_max_;
    std::uint64_t flat_len_;
    std::vector<GeometricTerm> tail_;
};

// A zero-convergent sequence of positive rationals, evaluated exactly at
// 1-based indices and carrying a decay certificate.  Values are immutable;
// transformers build new sequences that remember their provenance.
class ZeroSequence {
public:
    enum class Kind { geometric, table, refined, block_sum, word_composed };

    // f(t) = c * rho^t.
    static ZeroSequence geometric(const Rational& c, const Rational& rho);

    // f(t) = prefix[t-1] for t <= |prefix|, then c * rho^t.
    static ZeroSequence table_then_geometric(std::vector<Rational> prefix,
                                             const Rational& c, const Rational& rho);

    Rational at(std::uint64_t t) const;  // t >= 1
    const DecayCertificate& certificate() const;
    Kind kind() const;
    std::string desc() const;

private:
    struct Node;
    explicit ZeroSequence(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    std::shared_ptr<const Node> node_;

    friend ZeroSequence refine_tail(const ZeroSequence&, const Rational&);
    friend std::vector<ZeroSequence> refine_family(const std::vector<ZeroSequence>&,
                                                   const Rational&);
    friend ZeroSequence block_sum_sequence(const ZeroSequence&,
                                           const std::vector<NatSet>&);
    friend ZeroSequence word_composed_sequence(const std::vector<ZeroSequence>&,
                                               const std::vector<std::uint8_t>&);
    friend std::vector<std::uint64_t> reindex_prefix(const ZeroSequence&, std::uint64_t);
};

// A pair of zero-convergent sequences, one per product coordinate.
struct PairZeroSequence {
    ZeroSequence first;
    ZeroSequence second;
};

// Exact sum of f over a finite index set (nonempty, ascending, positive).
Rational sum_over(const ZeroSequence& f, const NatSet& h);

// Minimal strictly increasing reindexing s_1 < s_2 < ... with
// f(s_t) < delta / 2^(t+1); returns t |-> f(s_t).  The result's tail sums
// below delta/2, which is what every half-radius argument here consumes.
ZeroSequence refine_tail(const ZeroSequence& f, const Rational& delta);

// Same, but one shared index map chosen against the pointwise maximum of
// the family, so all members are reindexed identically.
std::vector<ZeroSequence> refine_family(const std::vector<ZeroSequence>& family,
                                        const Rational& delta);

// g(n) = sum of f over blocks[n-1] while blocks last, then g(n) = f(n).
// Blocks must be max/min separated: max(blocks[i]) < min(blocks[i+1]).
ZeroSequence block_sum_sequence(const ZeroSequence& f, const std::vector<NatSet>& blocks);

// g(y) = sum_{i=1..n} comps[letters[i-1]-1](n*y + i) for a fixed word:
// letters[i] in {1..|comps|}, n = |letters| >= 1.
ZeroSequence word_composed_sequence(const std::vector<ZeroSequence>& comps,
                                    const std::vector<std::uint8_t>& letters);

// For a refined sequence: the first `count` entries s_1..s_count of its
// index map (extending lazily if needed).  Throws InvalidArgument on other
// kinds.
std::vector<std::uint64_t> reindex_prefix(const ZeroSequence& f, std::uint64_t count);

// Splits coordinate pairs into the two component families.
std::pair<std::vector<ZeroSequence>, std::vector<ZeroSequence>>
project_pair(const std::vector<PairZeroSequence>& pairs);

} // namespace crlab
