#include "crlab/set_of_s.hpp"

#include "crlab/errors.hpp"

#include <algorithm>
#include <set>

namespace crlab {

namespace {

std::vector<Rational> normalise_elems(std::vector<Rational> elems) {
    std::sort(elems.begin(), elems.end());
    elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
    for (const auto& e : elems)
        if (!is_positive(e))
            throw DomainError("set elements must be positive, got " + rational_str(e));
    return elems;
}

// Keeps a grid-backed window meaningful after shifting it left by x: the
// new bound must still hold at least one grid point and x must lie on the
// grid scale, otherwise the window is dropped.
std::optional<GroundGrid> shift_grid(const Rational& x, const GroundGrid& g) {
    Rational scaled = x * pow2(g.m());
    if (denominator(scaled) != 1) return std::nullopt;
    Rational nb = g.upper() - x;
    if (nb * pow2(g.m()) < 1) return std::nullopt;
    return GroundGrid(g.m(), nb);
}

std::vector<GroundGrid> shift_windows(const Rational& x, const std::vector<GroundGrid>& ws) {
    std::vector<GroundGrid> out;
    for (const auto& w : ws)
        if (auto s = shift_grid(x, w)) out.push_back(*s);
    return out;
}

std::vector<GroundGrid> merge_windows(std::vector<GroundGrid> a, const std::vector<GroundGrid>& b) {
    for (const auto& w : b) {
        bool dup = false;
        for (const auto& v : a) dup = dup || (v == w);
        if (!dup) a.push_back(w);
    }
    return a;
}

// Enumeration seeds a predicate-backed set contributes to a union or
// intersection: its own extras plus, for an explicit side, its elements.
std::vector<Rational> side_extras(const SetOfS& s) {
    if (s.is_window()) return s.elements();
    return s.extra_points();
}

std::vector<GroundGrid> side_windows(const SetOfS& s) {
    if (s.is_window())
        return s.grid() ? std::vector<GroundGrid>{*s.grid()} : std::vector<GroundGrid>{};
    return s.windows();
}

} // namespace

SetOfS SetOfS::window(std::vector<Rational> elems, std::optional<GroundGrid> grid,
                      std::optional<Rational> declared_bound) {
    SetOfS s;
    s.kind_ = Kind::window;
    s.elems_ = normalise_elems(std::move(elems));
    s.grid_ = std::move(grid);
    if (declared_bound)
        s.bound_ = *declared_bound;
    else if (s.grid_)
        s.bound_ = s.grid_->upper();
    else
        s.bound_ = s.elems_.empty() ? Rational(0) : s.elems_.back();
    for (const auto& e : s.elems_)
        if (e > s.bound_)
            throw DomainError("window element " + rational_str(e) +
                              " exceeds declared bound " + rational_str(s.bound_));
    s.desc_ = "window";
    return s;
}

SetOfS SetOfS::grid_window(const GroundGrid& g, std::uint64_t budget) {
    return window(g.elements(budget), g);
}

SetOfS SetOfS::full(std::vector<GroundGrid> windows) {
    SetOfS s;
    s.kind_ = Kind::full;
    s.windows_ = std::move(windows);
    s.desc_ = "full";
    return s;
}

SetOfS SetOfS::interval(const Rational& lo, const Rational& hi,
                        std::vector<GroundGrid> windows) {
    if (!(lo < hi))
        throw DomainError("interval needs lo < hi, got (" + rational_str(lo) + "," +
                          rational_str(hi) + ")");
    Rational l = lo, h = hi;
    return predicate([l, h](const Rational& x) { return l < x && x < h; },
                     "interval(" + rational_str(lo) + "," + rational_str(hi) + ")",
                     std::move(windows));
}

SetOfS SetOfS::predicate(std::function<bool(const Rational&)> fn, std::string desc,
                         std::vector<GroundGrid> windows,
                         std::vector<Rational> extra_points) {
    SetOfS s;
    s.kind_ = Kind::predicate;
    s.fn_ = std::move(fn);
    s.windows_ = std::move(windows);
    s.extra_ = normalise_elems(std::move(extra_points));
    s.desc_ = std::move(desc);
    return s;
}

Membership SetOfS::query(const Rational& x) const {
    switch (kind_) {
    case Kind::window: {
        if (std::binary_search(elems_.begin(), elems_.end(), x)) return Membership::in;
        return x > bound_ ? Membership::out_of_window : Membership::out;
    }
    case Kind::full:
        return is_positive(x) ? Membership::in : Membership::out;
    case Kind::predicate:
        return (is_positive(x) && fn_(x)) ? Membership::in : Membership::out;
    }
    return Membership::out;
}

bool SetOfS::enumerable() const {
    if (kind_ == Kind::window) return true;
    return !windows_.empty() || !extra_.empty();
}

std::vector<Rational> SetOfS::window_elements(const Rational& lo, const Rational& hi) const {
    if (kind_ == Kind::window) {
        std::vector<Rational> out;
        for (const auto& e : elems_)
            if (lo < e && e < hi) out.push_back(e);
        return out;
    }
    if (!enumerable())
        throw NotEnumerable("set '" + desc_ + "' has no enumeration window");
    std::set<Rational> seen;
    for (const auto& w : windows_)
        for (const auto& e : w.elements_in(lo, hi)) seen.insert(e);
    for (const auto& e : extra_)
        if (lo < e && e < hi) seen.insert(e);
    std::vector<Rational> out;
    for (const auto& e : seen)
        if (contains(e)) out.push_back(e);
    return out;
}

const std::vector<Rational>& SetOfS::elements() const {
    if (kind_ != Kind::window)
        throw NotEnumerable("full element list only exists for explicit windows (set '" +
                            desc_ + "')");
    return elems_;
}

SetOfS shift_set(const Rational& x, const SetOfS& a) {
    if (!is_positive(x))
        throw DomainError("shift offset must be positive, got " + rational_str(x));
    switch (a.kind()) {
    case SetOfS::Kind::window: {
        std::vector<Rational> elems;
        for (const auto& e : a.elements())
            if (e > x) elems.push_back(e - x);
        std::optional<GroundGrid> g;
        if (a.grid()) g = shift_grid(x, *a.grid());
        Rational nb = a.bound() - x;
        if (nb < 0) nb = 0;
        return SetOfS::window(std::move(elems), g, nb);
    }
    case SetOfS::Kind::full:
        return SetOfS::full(shift_windows(x, a.windows()));
    case SetOfS::Kind::predicate: {
        SetOfS base = a;  // capture by value: SetOfS is a value type
        Rational off = x;
        std::vector<Rational> extras;
        for (const auto& e : a.extra_points())
            if (e > x) extras.push_back(e - x);
        return SetOfS::predicate(
            [base, off](const Rational& y) { return base.contains(y + off); },
            "shift(" + rational_str(x) + "," + a.desc() + ")",
            shift_windows(x, a.windows()), std::move(extras));
    }
    }
    throw DomainError("unreachable set kind");
}

std::pair<SetOfS, SetOfS> two_partition(const SetOfS& a,
                                        const std::function<bool(const Rational&)>& sel,
                                        const std::string& sel_desc) {
    if (a.is_window()) {
        std::vector<Rational> in1, in2;
        for (const auto& e : a.elements()) (sel(e) ? in1 : in2).push_back(e);
        auto c1 = SetOfS::window(std::move(in1), a.grid());
        auto c2 = SetOfS::window(std::move(in2), a.grid());
        return {c1, c2};
    }
    SetOfS base = a;
    auto f1 = [base, sel](const Rational& x) { return base.contains(x) && sel(x); };
    auto f2 = [base, sel](const Rational& x) { return base.contains(x) && !sel(x); };
    std::vector<Rational> ex1, ex2;
    for (const auto& e : a.extra_points()) (sel(e) ? ex1 : ex2).push_back(e);
    return {SetOfS::predicate(f1, "cell1[" + sel_desc + "](" + a.desc() + ")", a.windows(), ex1),
            SetOfS::predicate(f2, "cell2[" + sel_desc + "](" + a.desc() + ")", a.windows(), ex2)};
}

SetOfS union_sets(const SetOfS& a, const SetOfS& b) {
    if (a.is_full() || b.is_full())
        return SetOfS::full(merge_windows(side_windows(a), side_windows(b)));
    if (a.is_window() && b.is_window()) {
        std::vector<Rational> elems = a.elements();
        elems.insert(elems.end(), b.elements().begin(), b.elements().end());
        std::optional<GroundGrid> g;
        if (a.grid() && b.grid() && *a.grid() == *b.grid()) g = a.grid();
        return SetOfS::window(std::move(elems), g, std::max(a.bound(), b.bound()));
    }
    SetOfS x = a, y = b;
    auto fn = [x, y](const Rational& v) { return x.contains(v) || y.contains(v); };
    std::vector<Rational> extras = side_extras(a);
    auto eb = side_extras(b);
    extras.insert(extras.end(), eb.begin(), eb.end());
    return SetOfS::predicate(fn, "union(" + a.desc() + "," + b.desc() + ")",
                             merge_windows(side_windows(a), side_windows(b)),
                             std::move(extras));
}

SetOfS intersect_sets(const SetOfS& a, const SetOfS& b) {
    if (a.is_full()) return b;
    if (b.is_full()) return a;
    if (a.is_window()) {
        std::vector<Rational> elems;
        for (const auto& e : a.elements())
            if (b.contains(e)) elems.push_back(e);
        // Coverage only extends to where both sides are decided.
        Rational nb = b.is_window() ? std::min(a.bound(), b.bound()) : a.bound();
        if (!elems.empty() && elems.back() > nb) nb = elems.back();
        return SetOfS::window(std::move(elems), a.grid(), nb);
    }
    if (b.is_window()) return intersect_sets(b, a);
    SetOfS x = a, y = b;
    auto fn = [x, y](const Rational& v) { return x.contains(v) && y.contains(v); };
    std::vector<Rational> extras = side_extras(a);
    auto eb = side_extras(b);
    extras.insert(extras.end(), eb.begin(), eb.end());
    return SetOfS::predicate(fn, "intersect(" + a.desc() + "," + b.desc() + ")",
                             merge_windows(side_windows(a), side_windows(b)),
                             std::move(extras));
}

bool subset_of(const SetOfS& x, const SetOfS& y) {
    if (y.is_full()) return true;
    if (x.is_window()) {
        for (const auto& e : x.elements())
            if (!y.contains(e)) return false;
        return true;
    }
    throw NotEnumerable("cannot decide subset relation from non-explicit set '" + x.desc() +
                        "' into '" + y.desc() + "'");
}

} // namespace crlab
