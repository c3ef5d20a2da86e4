#include "crlab/json_io.hpp"

#include "crlab/errors.hpp"

#include <cstdio>

namespace crlab {

namespace {

// Shared checked accessors: scenario files come from users, so every read
// names the offending field.
const Json& field(const Json& j, const char* name) {
    if (!j.is_object() || !j.contains(name))
        throw BadScenario("missing field '" + std::string(name) + "'");
    return j.at(name);
}

// Nonnegative integer check that also accepts signed storage: the text
// parser always stores nonnegative numbers unsigned, but JSON built in
// code from int literals arrives signed.
bool is_uint(const Json& v) {
    return v.is_number_unsigned() ||
           (v.is_number_integer() && v.get<std::int64_t>() >= 0);
}

std::uint64_t uint_field(const Json& j, const char* name) {
    const Json& v = field(j, name);
    if (!is_uint(v))
        throw BadScenario("field '" + std::string(name) + "' must be a nonnegative integer");
    return v.get<std::uint64_t>();
}

std::string str_field(const Json& j, const char* name) {
    const Json& v = field(j, name);
    if (!v.is_string())
        throw BadScenario("field '" + std::string(name) + "' must be a string");
    return v.get<std::string>();
}

} // namespace

Json rational_to_json(const Rational& q) { return rational_str(q); }

Rational rational_from_json(const Json& j) {
    if (!j.is_string()) throw BadScenario("rationals are written as \"p/q\" strings");
    return parse_rational(j.get<std::string>());
}

Json grid_to_json(const GroundGrid& g) {
    return Json{{"m", g.m()}, {"U", rational_to_json(g.upper())}};
}

GroundGrid grid_from_json(const Json& j) {
    return GroundGrid(static_cast<std::uint32_t>(uint_field(j, "m")),
                      rational_from_json(field(j, "U")));
}

Json set_to_json(const SetOfS& s) {
    switch (s.kind()) {
    case SetOfS::Kind::window: {
        if (s.grid()) {
            Json out{{"kind", "window"}, {"grid", grid_to_json(*s.grid())}};
            Json elems = Json::array();
            for (const auto& e : s.elements()) elems.push_back(rational_to_json(e));
            out["elements"] = std::move(elems);
            return out;
        }
        Json elems = Json::array();
        for (const auto& e : s.elements()) elems.push_back(rational_to_json(e));
        return elems;
    }
    case SetOfS::Kind::full: {
        Json out{{"kind", "full"}};
        Json ws = Json::array();
        for (const auto& w : s.windows()) ws.push_back(grid_to_json(w));
        out["windows"] = std::move(ws);
        return out;
    }
    case SetOfS::Kind::predicate: {
        Json out{{"kind", "predicate"}, {"desc", s.desc()}};
        Json ws = Json::array();
        for (const auto& w : s.windows()) ws.push_back(grid_to_json(w));
        out["windows"] = std::move(ws);
        return out;
    }
    }
    throw DomainError("unreachable set kind");
}

SetOfS set_from_json(const Json& j) {
    if (j.is_array()) {
        std::vector<Rational> elems;
        for (const auto& e : j) elems.push_back(rational_from_json(e));
        return SetOfS::window(std::move(elems));
    }
    if (!j.is_object()) throw BadScenario("a set is an array of rationals or a tagged object");
    if (j.contains("grid") && !j.contains("kind") && !j.contains("elements"))
        return SetOfS::grid_window(grid_from_json(j.at("grid")));
    std::string kind = j.contains("kind") ? str_field(j, "kind") : "window";
    auto read_windows = [&] {
        std::vector<GroundGrid> ws;
        if (j.contains("windows"))
            for (const auto& w : j.at("windows")) ws.push_back(grid_from_json(w));
        return ws;
    };
    if (kind == "window") {
        std::vector<Rational> elems;
        for (const auto& e : field(j, "elements")) elems.push_back(rational_from_json(e));
        std::optional<GroundGrid> g;
        if (j.contains("grid")) g = grid_from_json(j.at("grid"));
        std::optional<Rational> bound;
        if (j.contains("bound")) bound = rational_from_json(j.at("bound"));
        return SetOfS::window(std::move(elems), g, bound);
    }
    if (kind == "grid") return SetOfS::grid_window(grid_from_json(field(j, "grid")));
    if (kind == "full") return SetOfS::full(read_windows());
    if (kind == "interval")
        return SetOfS::interval(rational_from_json(field(j, "lo")),
                                rational_from_json(field(j, "hi")), read_windows());
    throw BadScenario("unknown set kind '" + kind + "'");
}

Json natset_to_json(const NatSet& h) {
    Json out = Json::array();
    for (auto v : h) out.push_back(v);
    return out;
}

NatSet natset_from_json(const Json& j) {
    if (!j.is_array()) throw BadScenario("index sets are arrays of positive integers");
    NatSet h;
    for (const auto& v : j) {
        if (!is_uint(v) || v.get<std::uint64_t>() == 0)
            throw BadScenario("index sets contain positive integers only");
        h.push_back(v.get<std::uint64_t>());
    }
    return natset_normalize(std::move(h));
}

Json blocks_to_json(const BlockSequence& bs) {
    Json out = Json::array();
    for (const auto& b : bs.blocks) out.push_back(natset_to_json(b));
    return out;
}

BlockSequence blocks_from_json(const Json& j) {
    if (!j.is_array()) throw BadScenario("block sequences are arrays of index sets");
    std::vector<NatSet> blocks;
    for (const auto& b : j) blocks.push_back(natset_from_json(b));
    return make_block_sequence(std::move(blocks));
}

Json seq_to_json(const ZeroSequence& f) {
    switch (f.kind()) {
    case ZeroSequence::Kind::geometric:
    case ZeroSequence::Kind::table:
        break;
    default:
        return Json{{"kind", "derived"}, {"desc", f.desc()}};
    }
    // Parameters are recovered exactly from sequence values (arithmetic is
    // rational throughout): rho = f(t+1)/f(t) past any prefix, then c.
    if (f.kind() == ZeroSequence::Kind::geometric) {
        Rational f1 = f.at(1), f2 = f.at(2);
        Rational rho = f2 / f1;
        Rational c = f1 / rho;
        return Json{{"kind", "geometric"}, {"c", rational_to_json(c)},
                    {"rho", rational_to_json(rho)}};
    }
    std::uint64_t len = f.certificate().flat_len();
    Json prefix = Json::array();
    for (std::uint64_t t = 1; t <= len; ++t) prefix.push_back(rational_to_json(f.at(t)));
    Rational f1 = f.at(len + 1), f2 = f.at(len + 2);
    Rational rho = f2 / f1;
    Rational c = f1 / rational_pow(rho, len + 1);
    return Json{{"kind", "table"}, {"prefix", std::move(prefix)},
                {"c", rational_to_json(c)}, {"rho", rational_to_json(rho)}};
}

ZeroSequence seq_from_json(const Json& j) {
    std::string kind = str_field(j, "kind");
    if (kind == "geometric")
        return ZeroSequence::geometric(rational_from_json(field(j, "c")),
                                       rational_from_json(field(j, "rho")));
    if (kind == "table") {
        std::vector<Rational> prefix;
        for (const auto& v : field(j, "prefix")) prefix.push_back(rational_from_json(v));
        return ZeroSequence::table_then_geometric(std::move(prefix),
                                                  rational_from_json(field(j, "c")),
                                                  rational_from_json(field(j, "rho")));
    }
    throw BadScenario("sequences in scenarios are 'geometric' or 'table', got '" + kind + "'");
}

Json family_to_json(const Family& fam) {
    Json out = Json::array();
    for (const auto& f : fam) out.push_back(seq_to_json(f));
    return out;
}

Family family_from_json(const Json& j) {
    if (!j.is_array() || j.empty())
        throw BadScenario("a family is a nonempty array of sequences");
    Family fam;
    for (const auto& f : j) fam.push_back(seq_from_json(f));
    return fam;
}

Json witness_to_json(const Witness& w) {
    return Json{{"a", rational_to_json(w.a)},
                {"H", natset_to_json(w.h)},
                {"delta", rational_to_json(w.delta)},
                {"r", w.r_bound}};
}

Witness witness_from_json(const Json& j) {
    return Witness{rational_from_json(field(j, "a")), natset_from_json(field(j, "H")),
                   rational_from_json(field(j, "delta")), uint_field(j, "r")};
}

Json refutation_to_json(const Refutation& r) {
    return Json{{"family", family_to_json(r.family)}, {"rTried", r.r_tried}, {"note", r.note}};
}

Json certified_to_json(const CertifiedR& c) {
    return Json{{"r", c.r},
                {"k", c.k},
                {"delta", rational_to_json(c.delta)},
                {"corpusId", c.corpus_id}};
}

Json variable_word_to_json(const VariableWord& w) {
    Json letters = Json::array();
    for (auto l : w.letters) {
        if (l == 0)
            letters.push_back("*");
        else
            letters.push_back(l);
    }
    return Json{{"letters", std::move(letters)}, {"k", w.k}};
}

Json ip_verdict_to_json(const IpStarVerdict& v) {
    Json out{{"holds", v.holds}, {"r", v.r}, {"N", v.n_max}, {"checked", v.checked}};
    if (v.counterexample) out["counterexample"] = blocks_to_json(*v.counterexample);
    return out;
}

Json theta_report_to_json(const ThetaStarReport& r) {
    Json out{{"holds", r.holds},
             {"r", r.r},
             {"N", r.n_max},
             {"flagsCertificateRefutation", r.flags_certificate_refutation}};
    Json sel = Json::array();
    for (const auto& [bs, k] : r.selections)
        sel.push_back(Json{{"blocks", blocks_to_json(bs)}, {"K", natset_to_json(k)}});
    out["selections"] = std::move(sel);
    if (r.failing) out["failing"] = blocks_to_json(*r.failing);
    return out;
}

Json empirical_to_json(const EmpiricalLOutcome& o) {
    Json out{{"r", o.r}, {"s", o.s}, {"N", o.n_max}};
    if (o.l)
        out["l"] = *o.l;
    else
        out["l"] = nullptr;
    Json fails = Json::array();
    for (const auto& v : o.failed_levels) fails.push_back(ip_verdict_to_json(v));
    out["failedLevels"] = std::move(fails);
    return out;
}

Json partition_to_json(const PartitionRun& r) {
    Json reindex = Json::array();
    for (auto s : r.shared_reindex) reindex.push_back(s);
    return Json{{"cell", r.cell},
                {"witness", witness_to_json(r.witness)},
                {"refinedFamily", family_to_json(r.refined)},
                {"sharedReindex", std::move(reindex)},
                {"wordsColored", r.words_colored},
                {"basePoint", rational_to_json(r.base_point)},
                {"baseIndexSet", natset_to_json(r.base_index_set)},
                {"word", variable_word_to_json(r.chosen_word)},
                {"color", r.word_color},
                {"constantPositions", natset_to_json(r.const_positions)},
                {"wildcardPositions", natset_to_json(r.wild_positions)}};
}

Json product_to_json(const ProductRun& r) {
    return Json{{"a", rational_to_json(r.a)},
                {"b", rational_to_json(r.b)},
                {"H", natset_to_json(r.h)},
                {"l", r.l},
                {"delta", rational_to_json(r.delta)}};
}

namespace {

Json verdict_to_json(const ConditionVerdict& v) {
    return Json{{"holds", v.holds}, {"detail", v.detail}};
}

} // namespace

Json tree_report_to_json(const TreeCheckReport& r) {
    return Json{{"allHold", r.all_hold()},
                {"rangeInTarget", verdict_to_json(r.range_in_target)},
                {"successorShift", verdict_to_json(r.successor_shift)},
                {"intersectionRich", verdict_to_json(r.intersection_rich)},
                {"scopeNote", r.scope_note}};
}

Json family_report_to_json(const FamilyCheckReport& r) {
    return Json{{"allHold", r.all_hold()},
                {"membersInTarget", verdict_to_json(r.members_in_target)},
                {"directed", verdict_to_json(r.directed)},
                {"shiftCover", verdict_to_json(r.shift_cover)},
                {"intersectionsRich", verdict_to_json(r.intersections_rich)},
                {"scopeNote", r.scope_note}};
}

std::string json_fingerprint(const Json& j) {
    std::string canon = j.dump();
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : canon) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return std::string("fnv1a:") + buf;
}

} // namespace crlab
