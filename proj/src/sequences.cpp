#include "crlab/sequences.hpp"

#include "crlab/errors.hpp"

#include <algorithm>

namespace crlab {

// ---------------------------------------------------------------------------
// DecayCertificate

DecayCertificate::DecayCertificate(Rational flat_max, std::uint64_t flat_len,
                                   std::vector<GeometricTerm> tail)
    : flat_max_(std::move(flat_max)), flat_len_(flat_len), tail_(std::move(tail)) {
    if (tail_.empty())
        throw BadCertificate("certificate needs at least one geometric tail term");
    for (const auto& t : tail_) {
        if (!is_positive(t.c))
            throw BadCertificate("tail coefficient must be positive");
        if (!is_positive(t.rho) || t.rho >= 1)
            throw BadCertificate("tail ratio must lie in (0,1), got " + rational_str(t.rho));
    }
    if (flat_len_ > 0 && !is_positive(flat_max_))
        throw BadCertificate("flat bound must be positive when the flat part is nonempty");
}

Rational DecayCertificate::bound_at(std::uint64_t t) const {
    if (t == 0) throw DomainError("sequence indices start at 1");
    if (t <= flat_len_) return flat_max_;
    Rational b = 0;
    for (const auto& g : tail_) b += g.c * rational_pow(g.rho, t);
    return b;
}

Rational DecayCertificate::sum_from(std::uint64_t t0) const {
    if (t0 == 0) throw DomainError("sequence indices start at 1");
    Rational total = 0;
    std::uint64_t tail_start = std::max(t0, flat_len_ + 1);
    if (t0 <= flat_len_) total += flat_max_ * Rational(flat_len_ - t0 + 1, 1);
    // sum_{t >= T} c rho^t = c rho^T / (1 - rho)
    for (const auto& g : tail_)
        total += g.c * rational_pow(g.rho, tail_start) / (Rational(1) - g.rho);
    return total;
}

std::uint64_t DecayCertificate::index_below(const Rational& eps) const {
    if (!is_positive(eps)) throw DomainError("index_below needs a positive threshold");
    std::uint64_t t = flat_len_ + 1;
    std::vector<Rational> vals;
    vals.reserve(tail_.size());
    for (const auto& g : tail_) vals.push_back(g.c * rational_pow(g.rho, t));
    auto total = [&] {
        Rational s = 0;
        for (const auto& v : vals) s += v;
        return s;
    };
    while (total() >= eps) {
        for (std::size_t j = 0; j < tail_.size(); ++j) vals[j] *= tail_[j].rho;
        ++t;
    }
    return t;
}

// ---------------------------------------------------------------------------
// ZeroSequence node

struct ZeroSequence::Node {
    Kind kind;
    DecayCertificate cert;
    std::string desc;

    // geometric / table
    Rational c, rho;
    std::vector<Rational> prefix;

    // refined: deps = the family the shared map was built against
    std::vector<ZeroSequence> deps;
    std::size_t member = 0;
    Rational delta;
    std::vector<std::uint64_t> map;  // s_1 .. s_P, extended lazily past P

    // block_sum: deps = {base}
    std::vector<NatSet> blocks;
    std::vector<Rational> block_sums;

    // word_composed: deps = component family
    std::vector<std::uint8_t> letters;

    Node(Kind k, DecayCertificate ce, std::string d)
        : kind(k), cert(std::move(ce)), desc(std::move(d)) {}
};

namespace {

// Pointwise maximum of a family at one index.
Rational family_max_at(const std::vector<ZeroSequence>& fam, std::uint64_t s) {
    Rational m = fam[0].at(s);
    for (std::size_t j = 1; j < fam.size(); ++j) m = std::max(m, fam[j].at(s));
    return m;
}

// Least s > prev with max_j fam[j](s) < eps.  The certificates guarantee a
// stopping index, so the scan cannot run away.
std::uint64_t scan_next_index(const std::vector<ZeroSequence>& fam, std::uint64_t prev,
                              const Rational& eps) {
    std::uint64_t stop = prev + 1;
    for (const auto& f : fam)
        stop = std::max(stop, f.certificate().index_below(eps));
    for (std::uint64_t s = prev + 1;; ++s) {
        if (family_max_at(fam, s) < eps) return s;
        if (s >= stop)
            throw BadCertificate("decay certificate did not dominate its sequence");
    }
}

constexpr std::uint64_t kMapHorizon = 64;

} // namespace

ZeroSequence ZeroSequence::geometric(const Rational& c, const Rational& rho) {
    if (!is_positive(c)) throw DomainError("geometric scale must be positive");
    if (!is_positive(rho) || rho >= 1)
        throw DomainError("geometric ratio must lie in (0,1), got " + rational_str(rho));
    auto n = std::make_shared<Node>(Kind::geometric,
                                    DecayCertificate(0, 0, {{c, rho}}),
                                    "geometric(" + rational_str(c) + "," + rational_str(rho) + ")");
    n->c = c;
    n->rho = rho;
    return ZeroSequence(std::move(n));
}

ZeroSequence ZeroSequence::table_then_geometric(std::vector<Rational> prefix,
                                                const Rational& c, const Rational& rho) {
    if (!is_positive(c)) throw DomainError("geometric scale must be positive");
    if (!is_positive(rho) || rho >= 1)
        throw DomainError("geometric ratio must lie in (0,1), got " + rational_str(rho));
    for (const auto& v : prefix)
        if (!is_positive(v)) throw DomainError("table values must be positive");
    Rational fm = 0;
    for (const auto& v : prefix) fm = std::max(fm, v);
    if (prefix.empty()) fm = c * rho;  // unused; keep the certificate well-formed
    auto n = std::make_shared<Node>(
        Kind::table, DecayCertificate(fm, prefix.size(), {{c, rho}}),
        "table(len=" + std::to_string(prefix.size()) + "," + rational_str(c) + "," +
            rational_str(rho) + ")");
    n->c = c;
    n->rho = rho;
    n->prefix = std::move(prefix);
    return ZeroSequence(std::move(n));
}

Rational ZeroSequence::at(std::uint64_t t) const {
    if (t == 0) throw DomainError("sequence indices start at 1");
    const Node& n = *node_;
    switch (n.kind) {
    case Kind::geometric:
        return n.c * rational_pow(n.rho, t);
    case Kind::table:
        if (t <= n.prefix.size()) return n.prefix[t - 1];
        return n.c * rational_pow(n.rho, t);
    case Kind::refined: {
        if (t <= n.map.size()) return n.deps[n.member].at(n.map[t - 1]);
        // Past the precomputed horizon: extend the shared map logic
        // deterministically from the last stored entry.
        std::uint64_t s = n.map.empty() ? 0 : n.map.back();
        for (std::uint64_t k = n.map.size() + 1; k <= t; ++k) {
            Rational eps = n.delta / pow2(k + 1);
            s = scan_next_index(n.deps, s, eps);
        }
        return n.deps[n.member].at(s);
    }
    case Kind::block_sum:
        if (t <= n.blocks.size()) return n.block_sums[t - 1];
        return n.deps[0].at(t);
    case Kind::word_composed: {
        Rational total = 0;
        std::uint64_t len = n.letters.size();
        for (std::uint64_t i = 1; i <= len; ++i)
            total += n.deps[n.letters[i - 1] - 1].at(len * t + i);
        return total;
    }
    }
    throw DomainError("unreachable sequence kind");
}

const DecayCertificate& ZeroSequence::certificate() const { return node_->cert; }
ZeroSequence::Kind ZeroSequence::kind() const { return node_->kind; }
std::string ZeroSequence::desc() const { return node_->desc; }

// ---------------------------------------------------------------------------
// Transformers

Rational sum_over(const ZeroSequence& f, const NatSet& h) {
    natset_require_valid(h, "sum_over");
    Rational s = 0;
    for (auto t : h) s += f.at(t);
    return s;
}

std::vector<ZeroSequence> refine_family(const std::vector<ZeroSequence>& family,
                                        const Rational& delta) {
    if (family.empty()) throw InvalidArgument("refine_family: empty family");
    if (!is_positive(delta)) throw DomainError("refine radius must be positive");

    std::vector<std::uint64_t> map;
    map.reserve(kMapHorizon);
    std::uint64_t s = 0;
    for (std::uint64_t t = 1; t <= kMapHorizon; ++t) {
        s = scan_next_index(family, s, delta / pow2(t + 1));
        map.push_back(s);
    }

    std::vector<ZeroSequence> out;
    out.reserve(family.size());
    for (std::size_t j = 0; j < family.size(); ++j) {
        auto n = std::make_shared<ZeroSequence::Node>(
            ZeroSequence::Kind::refined,
            DecayCertificate(0, 0, {{delta / 2, Rational(1, 2)}}),
            "refined(delta=" + rational_str(delta) + "," + family[j].desc() + ")");
        n->deps = family;
        n->member = j;
        n->delta = delta;
        n->map = map;
        out.push_back(ZeroSequence(std::move(n)));
    }
    return out;
}

ZeroSequence refine_tail(const ZeroSequence& f, const Rational& delta) {
    return refine_family(std::vector<ZeroSequence>{f}, delta)[0];
}

ZeroSequence block_sum_sequence(const ZeroSequence& f, const std::vector<NatSet>& blocks) {
    if (blocks.empty()) throw InvalidArgument("block_sum_sequence: no blocks");
    std::uint64_t prev_max = 0;
    for (const auto& b : blocks) {
        natset_require_valid(b, "block_sum_sequence");
        if (b.front() <= prev_max)
            throw InvalidArgument("block_sum_sequence: blocks must satisfy max < next min");
        prev_max = b.back();
    }
    std::vector<Rational> sums;
    sums.reserve(blocks.size());
    Rational peak = 0;
    for (const auto& b : blocks) {
        sums.push_back(sum_over(f, b));
        peak = std::max(peak, sums.back());
    }

    const auto& base_cert = f.certificate();
    std::uint64_t r = blocks.size();
    std::uint64_t flat_len = std::max<std::uint64_t>(r, base_cert.flat_len());
    Rational flat_max = peak;
    if (base_cert.flat_len() > r) flat_max = std::max(flat_max, base_cert.flat_max());

    auto n = std::make_shared<ZeroSequence::Node>(
        ZeroSequence::Kind::block_sum,
        DecayCertificate(flat_max, flat_len, base_cert.tail()),
        "blocksum(r=" + std::to_string(r) + "," + f.desc() + ")");
    n->deps = {f};
    n->blocks = blocks;
    n->block_sums = std::move(sums);
    return ZeroSequence(std::move(n));
}

ZeroSequence word_composed_sequence(const std::vector<ZeroSequence>& comps,
                                    const std::vector<std::uint8_t>& letters) {
    if (comps.empty()) throw InvalidArgument("word_composed_sequence: empty family");
    if (letters.empty()) throw InvalidArgument("word_composed_sequence: empty word");
    for (auto l : letters)
        if (l == 0 || l > comps.size())
            throw InvalidArgument("word_composed_sequence: letter out of range");

    std::uint64_t len = letters.size();
    std::uint64_t flat_len = 0;
    for (auto l : letters)
        flat_len = std::max(flat_len, comps[l - 1].certificate().flat_len());

    // Tail: component j's term c*rho^(len*y+i) becomes (c*rho^i) * (rho^len)^y,
    // valid once len*y+i clears component flat parts, i.e. for y > flat_len.
    std::vector<GeometricTerm> tail;
    for (std::uint64_t i = 1; i <= len; ++i)
        for (const auto& g : comps[letters[i - 1] - 1].certificate().tail())
            tail.push_back({g.c * rational_pow(g.rho, i), rational_pow(g.rho, len)});

    auto n = std::make_shared<ZeroSequence::Node>(
        ZeroSequence::Kind::word_composed,
        DecayCertificate(0, 0, std::move(tail)),  // flat part patched below
        "wordsum(n=" + std::to_string(len) + ",comps=" + std::to_string(comps.size()) + ")");
    n->deps = comps;
    n->letters = letters;
    ZeroSequence g(std::move(n));

    if (flat_len > 0) {
        // Exact pointwise maximum over the flat region.
        Rational fm = 0;
        for (std::uint64_t y = 1; y <= flat_len; ++y) fm = std::max(fm, g.at(y));
        auto patched = std::make_shared<ZeroSequence::Node>(*g.node_);
        patched->cert = DecayCertificate(fm, flat_len, g.node_->cert.tail());
        g = ZeroSequence(std::move(patched));
    }
    return g;
}

std::vector<std::uint64_t> reindex_prefix(const ZeroSequence& f, std::uint64_t count) {
    if (f.kind() != ZeroSequence::Kind::refined)
        throw InvalidArgument("reindex_prefix: sequence is not a refinement");
    const auto& n = *f.node_;
    std::vector<std::uint64_t> out(n.map.begin(),
                                   n.map.begin() + std::min<std::uint64_t>(count, n.map.size()));
    std::uint64_t s = out.empty() ? 0 : out.back();
    for (std::uint64_t t = out.size() + 1; t <= count; ++t) {
        s = scan_next_index(n.deps, s, n.delta / pow2(t + 1));
        out.push_back(s);
    }
    return out;
}

std::pair<std::vector<ZeroSequence>, std::vector<ZeroSequence>>
project_pair(const std::vector<PairZeroSequence>& pairs) {
    if (pairs.empty()) throw InvalidArgument("project_pair: empty pair family");
    std::vector<ZeroSequence> a, b;
    a.reserve(pairs.size());
    b.reserve(pairs.size());
    for (const auto& p : pairs) {
        a.push_back(p.first);
        b.push_back(p.second);
    }
    return {std::move(a), std::move(b)};
}

} // namespace crlab
