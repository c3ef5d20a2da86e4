#pragma once

#include "crlab/grid.hpp"
#include "crlab/rational.hpp"

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace crlab {

// Membership is a tri-state: explicit windows only describe the universe up
// to a declared bound, and queries beyond it say so instead of guessing.
enum class Membership { in, out, out_of_window };

// A subset of the positive rationals, in one of three presentations:
//
//   explicit window  — finite sorted element list with a declared coverage
//                      bound (and optionally the grid it was cut from);
//   full             — all positive rationals, with optional enumeration
//                      windows;
//   predicate        — a total membership test, with optional enumeration
//                      windows and extra seed points so that finite scans
//                      are possible.
//
// Predicates are total (no out_of_window), but any *enumeration* of a
// predicate set is relative to its declared windows; operations that need
// a finite scan throw NotEnumerable when no window exists.
class SetOfS {
public:
    enum class Kind { window, full, predicate };

    // Finite element list (all strictly positive, strictly ascending after
    // normalisation; duplicates are merged).  The coverage bound defaults
    // to the grid bound when a grid is given, else the largest element; a
    // wider bound can be declared explicitly.
    static SetOfS window(std::vector<Rational> elems,
                         std::optional<GroundGrid> grid = std::nullopt,
                         std::optional<Rational> declared_bound = std::nullopt);

    // Every point of a grid, as an explicit window.
    static SetOfS grid_window(const GroundGrid& g, std::uint64_t budget = 1000000);

    static SetOfS full(std::vector<GroundGrid> windows = {});

    // Open interval (lo, hi) as a predicate set.
    static SetOfS interval(const Rational& lo, const Rational& hi,
                           std::vector<GroundGrid> windows = {});

    static SetOfS predicate(std::function<bool(const Rational&)> fn,
                            std::string desc,
                            std::vector<GroundGrid> windows = {},
                            std::vector<Rational> extra_points = {});

    Kind kind() const { return kind_; }
    bool is_full() const { return kind_ == Kind::full; }
    bool is_window() const { return kind_ == Kind::window; }

    Membership query(const Rational& x) const;
    bool contains(const Rational& x) const { return query(x) == Membership::in; }

    // True when a finite enumeration over any interval is available.
    bool enumerable() const;

    // Elements of the set in the open interval (lo, hi), ascending and
    // deduplicated.  Exact for explicit windows; window-relative for full
    // and predicate sets.  Throws NotEnumerable when nothing to scan.
    std::vector<Rational> window_elements(const Rational& lo, const Rational& hi) const;

    // Explicit windows only: the whole element list.
    const std::vector<Rational>& elements() const;
    bool empty() const { return kind_ == Kind::window && elems_.empty(); }

    // Explicit windows: declared coverage bound.
    const Rational& bound() const { return bound_; }
    const std::optional<GroundGrid>& grid() const { return grid_; }
    const std::vector<GroundGrid>& windows() const { return windows_; }
    const std::vector<Rational>& extra_points() const { return extra_; }
    const std::string& desc() const { return desc_; }

private:
    SetOfS() = default;

    Kind kind_ = Kind::window;
    std::vector<Rational> elems_;
    Rational bound_ = 0;
    std::optional<GroundGrid> grid_;
    std::function<bool(const Rational&)> fn_;
    std::vector<GroundGrid> windows_;
    std::vector<Rational> extra_;
    std::string desc_;
};

// (-x + A) restricted to the positive half line: { a - x : a in A, a > x }.
// Explicit windows stay explicit; full sets stay full; predicates compose.
// Enumeration windows survive when they still make sense after the shift.
SetOfS shift_set(const Rational& x, const SetOfS& a);

// Splits A into (A & sel, A & !sel).  Explicit windows split exactly; full
// and predicate sets yield two predicate cells sharing A's windows.
std::pair<SetOfS, SetOfS> two_partition(const SetOfS& a,
                                        const std::function<bool(const Rational&)>& sel,
                                        const std::string& sel_desc);

SetOfS union_sets(const SetOfS& a, const SetOfS& b);
SetOfS intersect_sets(const SetOfS& a, const SetOfS& b);

// X subseteq Y.  Decidable when X is an explicit window (elementwise), when
// Y is full (always true — every set here lives in the positive rationals),
// or when both are full.  Otherwise throws NotEnumerable: a window-relative
// answer would be a global claim we cannot back.
bool subset_of(const SetOfS& x, const SetOfS& y);

} // namespace crlab
