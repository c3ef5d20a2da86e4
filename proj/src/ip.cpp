#include "crlab/ip.hpp"

#include "crlab/errors.hpp"

#include <algorithm>

namespace crlab {

BlockSequence make_block_sequence(std::vector<NatSet> blocks) {
    if (blocks.empty()) throw InvalidArgument("block sequence needs at least one block");
    std::uint64_t prev_max = 0;
    for (auto& b : blocks) {
        b = natset_normalize(std::move(b));
        natset_require_valid(b, "block sequence");
        if (b.front() <= prev_max)
            throw InvalidArgument("block sequence must satisfy max(H_i) < min(H_{i+1})");
        prev_max = b.back();
    }
    return BlockSequence{std::move(blocks)};
}

std::vector<NatSet> finite_unions(const BlockSequence& bs, std::uint64_t budget) {
    auto masks = subset_masks_in_search_order(static_cast<std::uint32_t>(bs.r()), budget);
    std::vector<NatSet> out;
    out.reserve(masks.size());
    for (auto mask : masks) {
        NatSet u;
        for (auto k : mask_to_natset(mask)) u = natset_union(u, bs.blocks[k - 1]);
        out.push_back(std::move(u));
    }
    return out;
}

bool is_finite_union_member(const BlockSequence& bs, const NatSet& h) {
    if (h.empty()) return false;
    // Blocks are disjoint and ordered, so each must be wholly inside or
    // wholly outside h, and together the inside ones must cover it.
    std::size_t covered = 0;
    bool any = false;
    for (const auto& b : bs.blocks) {
        bool inside = std::includes(h.begin(), h.end(), b.begin(), b.end());
        if (inside) {
            covered += b.size();
            any = true;
        }
    }
    return any && covered == h.size();
}

std::vector<BlockSequence> enumerate_block_sequences(std::uint32_t n_max, std::uint32_t r,
                                                     std::uint64_t budget) {
    if (n_max == 0 || r == 0)
        throw InvalidArgument("block sequence enumeration needs n_max >= 1 and r >= 1");
    if (n_max > 31) throw SizeLimit("index windows beyond 31 are not enumerable here");
    std::vector<BlockSequence> out;
    std::vector<NatSet> cur;

    // Subsets of {lo..n_max} in canonical order, as sets.
    auto local_subsets = [&](std::uint32_t lo) {
        std::vector<NatSet> subs;
        std::uint32_t span = n_max - lo + 1;
        for (auto mask : subset_masks_in_search_order(span, budget)) {
            NatSet s = mask_to_natset(mask);
            for (auto& v : s) v += lo - 1;
            subs.push_back(std::move(s));
        }
        return subs;
    };

    std::function<void(std::uint32_t, std::uint32_t)> rec = [&](std::uint32_t lo,
                                                                std::uint32_t remaining) {
        if (remaining == 0) {
            if (out.size() >= budget)
                throw SizeLimit("block sequence enumeration exceeds budget " +
                                std::to_string(budget));
            out.push_back(BlockSequence{cur});
            return;
        }
        if (lo > n_max) return;
        for (auto& s : local_subsets(lo)) {
            std::uint32_t next_lo = static_cast<std::uint32_t>(s.back()) + 1;
            cur.push_back(s);
            rec(next_lo, remaining - 1);
            cur.pop_back();
        }
    };
    rec(1, r);
    return out;
}

NatSetPredicate named_natset_predicate(const std::string& rule, std::uint64_t param) {
    if (rule == "min-size")
        return {[param](const NatSet& h) { return h.size() >= param; },
                "min-size(" + std::to_string(param) + ")"};
    if (rule == "contains")
        return {[param](const NatSet& h) {
                    return std::binary_search(h.begin(), h.end(), param);
                },
                "contains(" + std::to_string(param) + ")"};
    if (rule == "max-at-least")
        return {[param](const NatSet& h) { return !h.empty() && h.back() >= param; },
                "max-at-least(" + std::to_string(param) + ")"};
    throw InvalidArgument("unknown index-set rule '" + rule + "'");
}

IpStarVerdict is_ip_r_star(const NatSetPredicate& pred, std::uint64_t r, std::uint32_t n_max,
                           const ExecPolicy& policy, std::uint64_t budget) {
    if (!pred.fn) throw InvalidArgument("index-set predicate has no rule attached");
    if (r == 0 || n_max == 0)
        throw InvalidArgument("star verification needs r >= 1 and n_max >= 1");
    auto seqs = enumerate_block_sequences(n_max, static_cast<std::uint32_t>(r), budget);
    auto selector = subset_masks_in_search_order(static_cast<std::uint32_t>(r), budget);

    std::function<std::optional<std::uint64_t>(std::uint64_t)> fails =
        [&](std::uint64_t idx) -> std::optional<std::uint64_t> {
        const auto& bs = seqs[idx];
        for (auto mask : selector) {
            NatSet u;
            for (auto k : mask_to_natset(mask)) u = natset_union(u, bs.blocks[k - 1]);
            if (pred.fn(u)) return std::nullopt;
        }
        return idx;
    };

    IpStarVerdict v;
    v.r = r;
    v.n_max = n_max;
    auto miss = first_hit<std::uint64_t>(seqs.size(), fails, policy);
    if (miss) {
        v.holds = false;
        v.checked = miss->first + 1;
        v.counterexample = seqs[miss->first];
    } else {
        v.holds = true;
        v.checked = seqs.size();
    }
    return v;
}

// ---------------------------------------------------------------------------
// ThetaSet

ThetaSet::ThetaSet(SetOfS a, Family family, Rational delta) {
    if (family.empty()) throw InvalidArgument("theta set needs a nonempty family");
    if (!is_positive(delta)) throw DomainError("theta radius must be positive");
    st_ = std::make_shared<State>(std::move(a), std::move(family), std::move(delta));
}

std::optional<Rational> ThetaSet::membership(const NatSet& h) const {
    natset_require_valid(h, "theta membership");
    {
        std::lock_guard<std::mutex> lock(st_->mu);
        auto it = st_->cache.find(h);
        if (it != st_->cache.end()) return it->second;
    }
    std::vector<Rational> sums;
    sums.reserve(st_->family.size());
    for (const auto& f : st_->family) sums.push_back(sum_over(f, h));
    const Rational& sum0 = sums.front();
    std::optional<Rational> found;
    for (const auto& x : st_->a.window_elements(sum0, sum0 + st_->delta)) {
        Rational cand = x - sum0;
        if (!is_positive(cand) || cand >= st_->delta) continue;
        bool ok = true;
        for (const auto& s : sums) {
            if (!st_->a.contains(cand + s)) {
                ok = false;
                break;
            }
        }
        if (ok) {
            found = cand;
            break;
        }
    }
    std::lock_guard<std::mutex> lock(st_->mu);
    st_->cache.emplace(h, found);
    return found;
}

NatSetPredicate ThetaSet::as_predicate(const std::string& name) const {
    ThetaSet self = *this;
    return {[self](const NatSet& h) { return self.contains(h); }, name};
}

ThetaStarReport verify_theta_ip_r_star(const ThetaSet& theta, std::uint64_t r,
                                       std::uint32_t n_max, const ExecPolicy& policy,
                                       std::uint64_t budget) {
    ThetaStarReport rep;
    rep.r = r;
    rep.n_max = n_max;
    auto seqs = enumerate_block_sequences(n_max, static_cast<std::uint32_t>(r), budget);
    for (const auto& bs : seqs) {
        Family block_family;
        block_family.reserve(theta.family().size());
        for (const auto& f : theta.family())
            block_family.push_back(block_sum_sequence(f, bs.blocks));
        auto w = find_witness(theta.set(), block_family, theta.delta(), r, policy, budget);
        if (!w) {
            rep.holds = false;
            rep.failing = bs;
            rep.flags_certificate_refutation = true;
            return rep;
        }
        // The hit's index set selects which blocks to merge; the merged set
        // must round-trip through direct theta membership.
        NatSet u;
        for (auto k : w->h) u = natset_union(u, bs.blocks[k - 1]);
        auto direct = theta.membership(u);
        if (!direct)
            throw ValidationFailed("block-sum witness did not survive direct membership at " +
                                   natset_str(u));
        rep.selections.emplace_back(bs, w->h);
    }
    rep.holds = true;
    return rep;
}

EmpiricalLOutcome empirical_l(std::uint64_t r, std::uint64_t s, std::uint32_t n_max,
                              const std::vector<std::pair<NatSetPredicate, NatSetPredicate>>& pairs,
                              const ExecPolicy& policy, std::uint64_t budget) {
    if (pairs.empty()) throw InvalidArgument("empirical level scan needs at least one pair");
    EmpiricalLOutcome out;
    out.r = r;
    out.s = s;
    out.n_max = n_max;
    for (const auto& [p1, p2] : pairs) {
        if (!is_ip_r_star(p1, r, n_max, policy, budget).holds)
            throw InvalidArgument("first rule '" + p1.desc + "' is not star-verified at level " +
                                  std::to_string(r));
        if (!is_ip_r_star(p2, s, n_max, policy, budget).holds)
            throw InvalidArgument("second rule '" + p2.desc + "' is not star-verified at level " +
                                  std::to_string(s));
    }
    for (std::uint64_t l = 1; l <= n_max; ++l) {
        bool all = true;
        for (const auto& [p1, p2] : pairs) {
            NatSetPredicate both{
                [p1, p2](const NatSet& h) { return p1.fn(h) && p2.fn(h); },
                "and(" + p1.desc + "," + p2.desc + ")"};
            auto v = is_ip_r_star(both, l, n_max, policy, budget);
            if (!v.holds) {
                out.failed_levels.push_back(v);
                all = false;
                break;
            }
        }
        if (all) {
            out.l = l;
            return out;
        }
    }
    return out;
}

} // namespace crlab
