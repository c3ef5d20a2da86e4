#pragma once

#include "crlab/grid.hpp"
#include "crlab/ip.hpp"
#include "crlab/natset.hpp"
#include "crlab/pipelines.hpp"
#include "crlab/rational.hpp"
#include "crlab/sequences.hpp"
#include "crlab/set_of_s.hpp"
#include "crlab/witness.hpp"
#include "crlab/words.hpp"

#include <json.hpp>

namespace crlab {

using Json = nlohmann::json;

// Rationals travel as exact "p/q" strings; everything else is built from
// them.  All object keys are emitted sorted (the JSON library keeps object
// keys ordered), so serialised reports are stable byte-for-byte.

Json rational_to_json(const Rational& q);
Rational rational_from_json(const Json& j);

Json grid_to_json(const GroundGrid& g);
GroundGrid grid_from_json(const Json& j);

// Explicit windows serialise as plain arrays of "p/q" strings and round-trip
// exactly.  Full and interval sets use tagged objects.  Composite predicate
// sets serialise descriptively (reports only, no round trip).
Json set_to_json(const SetOfS& s);
SetOfS set_from_json(const Json& j);

Json natset_to_json(const NatSet& h);
NatSet natset_from_json(const Json& j);

Json blocks_to_json(const BlockSequence& bs);
BlockSequence blocks_from_json(const Json& j);

// Base sequence kinds (geometric, table) round-trip; derived kinds
// serialise their provenance descriptively.
Json seq_to_json(const ZeroSequence& f);
ZeroSequence seq_from_json(const Json& j);

Json family_to_json(const Family& fam);
Family family_from_json(const Json& j);

Json witness_to_json(const Witness& w);
Witness witness_from_json(const Json& j);

Json refutation_to_json(const Refutation& r);
Json certified_to_json(const CertifiedR& c);

Json variable_word_to_json(const VariableWord& w);

Json ip_verdict_to_json(const IpStarVerdict& v);
Json theta_report_to_json(const ThetaStarReport& r);
Json empirical_to_json(const EmpiricalLOutcome& o);
Json partition_to_json(const PartitionRun& r);
Json product_to_json(const ProductRun& r);
Json tree_report_to_json(const TreeCheckReport& r);
Json family_report_to_json(const FamilyCheckReport& r);

// FNV-1a 64-bit over a canonical (sorted-key, compact) dump.
std::string json_fingerprint(const Json& j);

} // namespace crlab
