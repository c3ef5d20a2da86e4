#pragma once

#include "crlab/rational.hpp"

#include <cstdint>
#include <vector>

namespace crlab {

// Finite dyadic grid { i/2^m : 1 <= i <= floor(U * 2^m) }.  Grids stand in
// for a dense positive ground universe: every element is strictly positive,
// and refining m packs more points into any fixed interval.
class GroundGrid {
public:
    // Throws InvalidBound unless floor(U * 2^m) >= 1 (grid must be nonempty).
    GroundGrid(std::uint32_t m, const Rational& upper);

    std::uint32_t m() const { return m_; }
    const Rational& upper() const { return upper_; }

    // Number of grid points, floor(U * 2^m).
    const Int& max_index() const { return max_index_; }

    // i-th element i/2^m (1-based, in lowest terms).
    Rational element(const Int& i) const;

    // True iff x lies exactly on the grid and within the bound.
    bool contains(const Rational& x) const;

    // All grid elements in the open interval (lo, hi), ascending.  The
    // range is clamped to the grid; an empty result is fine.
    std::vector<Rational> elements_in(const Rational& lo, const Rational& hi) const;

    // Full element list, ascending.  Throws SizeLimit if the grid has more
    // than `budget` points.
    std::vector<Rational> elements(std::uint64_t budget = 1000000) const;

    bool operator==(const GroundGrid& o) const {
        return m_ == o.m_ && upper_ == o.upper_;
    }

private:
    std::uint32_t m_;
    Rational upper_;
    Int max_index_;
};

} // namespace crlab
