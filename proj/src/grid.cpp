#include "crlab/grid.hpp"

#include "crlab/errors.hpp"

namespace crlab {

GroundGrid::GroundGrid(std::uint32_t m, const Rational& upper)
    : m_(m), upper_(upper) {
    if (!is_positive(upper))
        throw InvalidBound("grid bound must be positive, got " + rational_str(upper));
    max_index_ = floor_int(upper * pow2(m));
    if (max_index_ < 1)
        throw InvalidBound("grid bound " + rational_str(upper) +
                           " holds no point at resolution m=" + std::to_string(m));
}

Rational GroundGrid::element(const Int& i) const {
    return Rational(i, Int(1) << m_);
}

bool GroundGrid::contains(const Rational& x) const {
    if (!is_positive(x) || x > upper_) return false;
    // x = i/2^m exactly iff x * 2^m is an integer.
    Rational scaled = x * pow2(m_);
    if (denominator(scaled) != 1) return false;
    Int i = numerator(scaled);
    return i >= 1 && i <= max_index_;
}

std::vector<Rational> GroundGrid::elements_in(const Rational& lo, const Rational& hi) const {
    // Smallest index with i/2^m > lo is floor(lo * 2^m) + 1; largest with
    // i/2^m < hi is ceil(hi * 2^m) - 1.  Both ends strict.
    Int first = floor_int(lo * pow2(m_)) + 1;
    if (first < 1) first = 1;
    Rational hi_scaled = hi * pow2(m_);
    Int last = floor_int(hi_scaled);
    if (Rational(last, 1) == hi_scaled) --last;  // hi itself excluded
    if (last > max_index_) last = max_index_;
    std::vector<Rational> out;
    for (Int i = first; i <= last; ++i) out.push_back(element(i));
    return out;
}

std::vector<Rational> GroundGrid::elements(std::uint64_t budget) const {
    if (max_index_ > budget)
        throw SizeLimit("grid enumeration of " + max_index_.str() +
                        " points exceeds budget " + std::to_string(budget));
    std::vector<Rational> out;
    out.reserve(static_cast<std::size_t>(max_index_));
    for (Int i = 1; i <= max_index_; ++i) out.push_back(element(i));
    return out;
}

} // namespace crlab
