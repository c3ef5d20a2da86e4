#include "crlab/witness.hpp"

#include "crlab/errors.hpp"

#include <algorithm>

namespace crlab {

namespace {

void require_search_inputs(const Family& family, const Rational& delta, std::uint64_t r) {
    if (family.empty()) throw InvalidArgument("witness search needs a nonempty family");
    if (!is_positive(delta)) throw DomainError("witness radius must be positive");
    if (r == 0) throw InvalidArgument("witness search needs an index range r >= 1");
}

} // namespace

std::optional<Witness> find_witness(const SetOfS& a, const Family& family,
                                    const Rational& delta, std::uint64_t r,
                                    const ExecPolicy& policy, std::uint64_t budget) {
    require_search_inputs(family, delta, r);
    if (r > 31) throw SizeLimit("index ranges beyond 31 are not enumerable here");
    auto masks = subset_masks_in_search_order(static_cast<std::uint32_t>(r), budget);

    std::function<std::optional<Witness>(std::uint64_t)> probe =
        [&](std::uint64_t idx) -> std::optional<Witness> {
        NatSet h = mask_to_natset(masks[idx]);
        std::vector<Rational> sums;
        sums.reserve(family.size());
        for (const auto& f : family) sums.push_back(sum_over(f, h));
        const Rational& sum0 = sums.front();
        for (const auto& x : a.window_elements(sum0, sum0 + delta)) {
            Rational cand = x - sum0;
            if (!is_positive(cand) || cand >= delta) continue;
            bool ok = true;
            for (const auto& s : sums) {
                if (!a.contains(cand + s)) {
                    ok = false;
                    break;
                }
            }
            if (ok) return Witness{cand, h, delta, r};
        }
        return std::nullopt;
    };

    auto hit = first_hit<Witness>(masks.size(), probe, policy);
    if (!hit) return std::nullopt;
    return hit->second;
}

std::optional<Witness> find_j_witness(const SetOfS& a, const Family& family,
                                      const Rational& delta, std::uint64_t t_max,
                                      const ExecPolicy& policy, std::uint64_t budget) {
    return find_witness(a, family, delta, t_max, policy, budget);
}

bool validate_witness(const SetOfS& a, const Family& family, const Witness& w) {
    if (family.empty()) return false;
    if (!is_positive(w.a) || w.a >= w.delta) return false;
    if (w.h.empty() || w.h.back() > w.r_bound) return false;
    std::uint64_t prev = 0;
    for (auto t : w.h) {
        if (t <= prev) return false;
        prev = t;
    }
    for (const auto& f : family)
        if (!a.contains(w.a + sum_over(f, w.h))) return false;
    return true;
}

std::variant<CertifiedR, Refutation> certify_r(const SetOfS& a, std::uint64_t k,
                                               const Rational& delta, const Corpus& corpus,
                                               std::uint64_t r_max, const ExecPolicy& policy,
                                               std::uint64_t budget) {
    if (corpus.families.empty())
        throw InvalidArgument("certification corpus '" + corpus.id + "' is empty");
    if (k == 0) throw InvalidArgument("certification arity k must be >= 1");
    for (const auto& fam : corpus.families)
        if (fam.empty() || fam.size() > k)
            throw InvalidArgument("corpus '" + corpus.id + "' has a family of size " +
                                  std::to_string(fam.size()) + " outside 1.." +
                                  std::to_string(k));
    std::uint64_t r_star = 1;
    for (std::size_t i = 0; i < corpus.families.size(); ++i) {
        auto w = find_witness(a, corpus.families[i], delta, r_max, policy, budget);
        if (!w)
            return Refutation{corpus.families[i], r_max,
                              "family #" + std::to_string(i) + " of corpus '" + corpus.id +
                                  "' admits no witness"};
        // Search order is max-ascending, so the hit's largest index is the
        // least r that covers this family.
        r_star = std::max(r_star, w->h.back());
    }
    return CertifiedR{r_star, k, delta, corpus.id};
}

std::optional<Refutation> refute_cr(const SetOfS& a, std::uint64_t k, const Rational& delta,
                                    std::uint64_t r, std::uint64_t adversary_budget,
                                    const ExecPolicy& policy, std::uint64_t budget) {
    if (k == 0) throw InvalidArgument("refutation arity k must be >= 1");
    if (!is_positive(delta)) throw DomainError("witness radius must be positive");
    if (r == 0) throw InvalidArgument("refutation needs an index range r >= 1");

    // Probe scales: the first few enumerable values of the target's windows.
    std::vector<Rational> scales;
    if (a.is_window()) {
        for (const auto& e : a.elements()) {
            scales.push_back(e);
            if (scales.size() >= adversary_budget) break;
        }
    } else {
        for (const auto& w : a.windows()) {
            for (const auto& e : w.elements_in(0, w.upper() + 1)) {
                scales.push_back(e);
                if (scales.size() >= adversary_budget) break;
            }
            if (scales.size() >= adversary_budget) break;
        }
    }
    std::sort(scales.begin(), scales.end());
    scales.erase(std::unique(scales.begin(), scales.end()), scales.end());

    for (const auto& g : scales) {
        std::vector<Rational> prefix(static_cast<std::size_t>(r), g);
        Family adversary{ZeroSequence::table_then_geometric(prefix, g, Rational(1, 2))};
        if (!find_witness(a, adversary, delta, r, policy, budget))
            return Refutation{adversary, r,
                              "constant-prefix family at scale " + rational_str(g) +
                                  " admits no witness"};
    }
    return std::nullopt;
}

Witness translate_witness(const Rational& x, const Witness& w, const SetOfS& a,
                          const Family& family, const Rational& delta) {
    if (!is_positive(delta)) throw DomainError("translation radius must be positive");
    if (!is_positive(x)) throw DomainError("translation offset must be positive");
    Rational half = delta / 2;
    if (!(x < half))
        throw BudgetExceeded("offset " + rational_str(x) + " must stay strictly below " +
                             rational_str(half));
    if (!(w.a < half))
        throw BudgetExceeded("witness base " + rational_str(w.a) +
                             " must stay strictly below " + rational_str(half));
    Witness out{x + w.a, w.h, delta, w.r_bound};
    if (!validate_witness(a, family, out))
        throw InvalidWitness("translated witness failed revalidation against the target set");
    return out;
}

} // namespace crlab
