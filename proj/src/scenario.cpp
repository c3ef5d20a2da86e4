#include "crlab/scenario.hpp"

#include "crlab/errors.hpp"
#include "crlab/pipelines.hpp"

#include <chrono>
#include <random>

namespace crlab {

namespace {

const Json& field(const Json& j, const char* name) {
    if (!j.is_object() || !j.contains(name))
        throw BadScenario("missing field '" + std::string(name) + "'");
    return j.at(name);
}

std::uint64_t uint_field(const Json& j, const char* name) {
    const Json& v = field(j, name);
    bool integral = v.is_number_unsigned() ||
                    (v.is_number_integer() && v.get<std::int64_t>() >= 0);
    if (!integral || v.get<std::uint64_t>() == 0)
        throw BadScenario("field '" + std::string(name) + "' must be a positive integer");
    return v.get<std::uint64_t>();
}

std::string str_field(const Json& j, const char* name) {
    const Json& v = field(j, name);
    if (!v.is_string())
        throw BadScenario("field '" + std::string(name) + "' must be a string");
    return v.get<std::string>();
}

// Intermediate produced by a task handler before the envelope is wrapped.
struct TaskOutcome {
    int exit_code = 0;
    std::string status;
    Json body;
    Json trace = Json::array();
};

struct Budgets {
    std::uint64_t enumeration = 1000000;
    std::uint64_t adversary = 16;
};

Budgets read_budgets(const Json& s, const RunOptions& opts) {
    Budgets b;
    if (s.contains("budgets")) {
        const Json& j = s.at("budgets");
        if (j.contains("enumeration")) b.enumeration = j.at("enumeration").get<std::uint64_t>();
        if (j.contains("adversary")) b.adversary = j.at("adversary").get<std::uint64_t>();
    }
    if (opts.budget) b.enumeration = *opts.budget;
    return b;
}

Corpus corpus_from_json(const Json& j) {
    Corpus c;
    c.id = str_field(j, "id");
    for (const auto& fam : field(j, "families")) c.families.push_back(family_from_json(fam));
    if (c.families.empty()) throw BadScenario("corpus '" + c.id + "' lists no families");
    return c;
}

CrChecker checker_from_json(const Json& j, const ExecPolicy& policy) {
    return CrChecker(corpus_from_json(field(j, "corpus")), uint_field(j, "k"),
                     rational_from_json(field(j, "delta")), uint_field(j, "rMax"), policy);
}

NatSetPredicate natset_pred_from_json(const Json& j, const ExecPolicy& /*policy*/) {
    if (j.contains("rule"))
        return named_natset_predicate(str_field(j, "rule"), uint_field(j, "param"));
    if (j.contains("theta")) {
        const Json& t = j.at("theta");
        ThetaSet theta(set_from_json(field(t, "set")), family_from_json(field(t, "family")),
                       rational_from_json(field(t, "delta")));
        return theta.as_predicate("theta");
    }
    throw BadScenario("an index-set rule needs 'rule'/'param' or a 'theta' block");
}

// ---------------------------------------------------------------------------
// Task handlers

TaskOutcome run_find_witness(const Json& s, const RunOptions& opts, const Budgets& bud,
                             bool j_form) {
    auto a = set_from_json(field(s, "set"));
    auto fam = family_from_json(field(s, "family"));
    auto delta = rational_from_json(field(s, "delta"));
    std::uint64_t range = uint_field(s, j_form ? "tMax" : "r");
    auto w = find_witness(a, fam, delta, range, opts.policy, bud.enumeration);
    TaskOutcome out;
    if (w) {
        out.exit_code = 0;
        out.status = "witness-found";
        out.body = Json{{"witness", witness_to_json(*w)}};
    } else {
        out.exit_code = 1;
        out.status = "absent";
        out.body = Json{{"witness", nullptr}};
    }
    return out;
}

TaskOutcome run_certify_r(const Json& s, const RunOptions& opts, const Budgets& bud) {
    auto a = set_from_json(field(s, "set"));
    auto corpus = corpus_from_json(field(s, "corpus"));
    auto delta = rational_from_json(field(s, "delta"));
    std::uint64_t k = uint_field(s, "k");
    std::uint64_t r_max = uint_field(s, "rMax");
    auto outcome = certify_r(a, k, delta, corpus, r_max, opts.policy, bud.enumeration);
    TaskOutcome out;
    if (auto* cert = std::get_if<CertifiedR>(&outcome)) {
        out.exit_code = 0;
        out.status = "certified";
        Json rows = Json::array();
        for (std::size_t i = 0; i < corpus.families.size(); ++i) {
            auto w = find_witness(a, corpus.families[i], delta, r_max, opts.policy,
                                  bud.enumeration);
            rows.push_back(Json{{"family", i}, {"witness", witness_to_json(*w)}});
        }
        out.body = Json{{"certified", certified_to_json(*cert)}, {"perFamily", std::move(rows)}};
    } else {
        out.exit_code = 1;
        out.status = "refuted";
        out.body = Json{{"refutation", refutation_to_json(std::get<Refutation>(outcome))}};
    }
    return out;
}

TaskOutcome run_refute_cr(const Json& s, const RunOptions& opts, const Budgets& bud) {
    auto a = set_from_json(field(s, "set"));
    auto delta = rational_from_json(field(s, "delta"));
    std::uint64_t k = uint_field(s, "k");
    std::uint64_t r = uint_field(s, "r");
    std::uint64_t adversary = s.contains("adversaryBudget")
                                  ? s.at("adversaryBudget").get<std::uint64_t>()
                                  : bud.adversary;
    auto ref = refute_cr(a, k, delta, r, adversary, opts.policy, bud.enumeration);
    TaskOutcome out;
    if (ref) {
        out.exit_code = 1;
        out.status = "refuted";
        out.body = Json{{"refutation", refutation_to_json(*ref)}};
    } else {
        out.exit_code = 0;
        out.status = "unrefuted";
        out.body = Json{{"refutation", nullptr},
                        {"probesTried", adversary}};
    }
    return out;
}

TaskOutcome run_translate(const Json& s, const RunOptions&, const Budgets&) {
    auto a = set_from_json(field(s, "set"));
    auto fam = family_from_json(field(s, "family"));
    auto delta = rational_from_json(field(s, "delta"));
    auto x = rational_from_json(field(s, "x"));
    auto w = witness_from_json(field(s, "witness"));
    Witness t = translate_witness(x, w, a, fam, delta);
    TaskOutcome out;
    out.exit_code = 0;
    out.status = "translated";
    out.body = Json{{"witness", witness_to_json(t)}};
    return out;
}

TaskOutcome run_partition(const Json& s, const RunOptions& opts, const Budgets& bud) {
    SetOfS a1 = SetOfS::window({});
    SetOfS a2 = SetOfS::window({});
    if (s.contains("cells")) {
        const Json& cells = s.at("cells");
        if (!cells.is_array() || cells.size() != 2)
            throw BadScenario("'cells' must list exactly two sets");
        a1 = set_from_json(cells.at(0));
        a2 = set_from_json(cells.at(1));
    } else {
        auto a = set_from_json(field(s, "set"));
        const Json& sel = field(s, "selector");
        if (str_field(sel, "kind") != "threshold")
            throw BadScenario("only the 'threshold' selector is available");
        Rational v = rational_from_json(field(sel, "value"));
        auto cells = two_partition(
            a, [v](const Rational& x) { return x > v; },
            "threshold(" + rational_str(v) + ")");
        a1 = cells.first;
        a2 = cells.second;
    }
    auto fam = family_from_json(field(s, "family"));
    auto delta = rational_from_json(field(s, "delta"));
    auto n = static_cast<std::uint32_t>(uint_field(s, "n"));
    std::uint64_t r1 = uint_field(s, "r1");
    auto run = partition_regularity_witness(a1, a2, fam, delta, n, r1, opts.policy,
                                            bud.enumeration);
    TaskOutcome out;
    out.exit_code = 0;
    out.status = "witness-found";
    out.body = partition_to_json(run);
    if (opts.trace) {
        out.trace.push_back("refined family of " + std::to_string(fam.size()));
        out.trace.push_back("colored " + std::to_string(run.words_colored) + " words");
        out.trace.push_back("base witness at " + rational_str(run.base_point));
    }
    return out;
}

TaskOutcome run_verify_ip_star(const Json& s, const RunOptions& opts, const Budgets& bud) {
    auto pred = natset_pred_from_json(field(s, "predicate"), opts.policy);
    std::uint64_t r = uint_field(s, "r");
    auto n_max = static_cast<std::uint32_t>(uint_field(s, "N"));
    auto v = is_ip_r_star(pred, r, n_max, opts.policy, bud.enumeration);
    TaskOutcome out;
    out.exit_code = v.holds ? 0 : 1;
    out.status = v.holds ? "holds" : "fails";
    out.body = ip_verdict_to_json(v);
    return out;
}

TaskOutcome run_verify_theta_star(const Json& s, const RunOptions& opts, const Budgets& bud) {
    ThetaSet theta(set_from_json(field(s, "set")), family_from_json(field(s, "family")),
                   rational_from_json(field(s, "delta")));
    std::uint64_t r = uint_field(s, "r");
    auto n_max = static_cast<std::uint32_t>(uint_field(s, "N"));
    auto rep = verify_theta_ip_r_star(theta, r, n_max, opts.policy, bud.enumeration);
    TaskOutcome out;
    out.exit_code = rep.holds ? 0 : 1;
    out.status = rep.holds ? "holds" : "fails";
    out.body = theta_report_to_json(rep);
    return out;
}

TaskOutcome run_empirical_l(const Json& s, const RunOptions& opts, const Budgets& bud) {
    std::uint64_t r = uint_field(s, "r");
    std::uint64_t sv = uint_field(s, "s");
    auto n_max = static_cast<std::uint32_t>(uint_field(s, "N"));
    std::vector<std::pair<NatSetPredicate, NatSetPredicate>> pairs;
    for (const auto& p : field(s, "pairs"))
        pairs.emplace_back(natset_pred_from_json(field(p, "first"), opts.policy),
                           natset_pred_from_json(field(p, "second"), opts.policy));
    auto o = empirical_l(r, sv, n_max, pairs, opts.policy, bud.enumeration);
    TaskOutcome out;
    out.exit_code = o.l ? 0 : 1;
    out.status = o.l ? "level-found" : "exhausted";
    out.body = empirical_to_json(o);
    return out;
}

TaskOutcome run_product(const Json& s, const RunOptions& opts, const Budgets& bud) {
    auto first_set = set_from_json(field(s, "firstSet"));
    auto second_set = set_from_json(field(s, "secondSet"));
    auto delta = rational_from_json(field(s, "delta"));
    auto n_max = static_cast<std::uint32_t>(uint_field(s, "N"));
    std::vector<PairZeroSequence> pairs;
    for (const auto& p : field(s, "pairs"))
        pairs.push_back(PairZeroSequence{seq_from_json(field(p, "first")),
                                         seq_from_json(field(p, "second"))});
    TaskOutcome out;
    try {
        auto run = product_witness(first_set, second_set, pairs, delta, n_max, opts.policy,
                                   bud.enumeration);
        out.exit_code = 0;
        out.status = "witness-found";
        out.body = product_to_json(run);
    } catch (const NoCommonIndexSet& e) {
        out.exit_code = 1;
        out.status = "absent";
        out.body = Json{{"found", false}, {"note", e.what()}};
    }
    return out;
}

TaskOutcome run_check_tree(const Json& s, const RunOptions& opts, const Budgets&) {
    const Json& tj = field(s, "tree");
    FuncTree tree = [&] {
        if (tj.contains("uniform")) return FuncTree::uniform(set_from_json(tj.at("uniform")));
        std::vector<std::vector<Rational>> tuples;
        for (const auto& t : field(tj, "tuples")) {
            std::vector<Rational> tup;
            for (const auto& x : t) tup.push_back(rational_from_json(x));
            tuples.push_back(std::move(tup));
        }
        return FuncTree::explicit_tree(std::move(tuples));
    }();
    auto a = set_from_json(field(s, "set"));
    auto checker = checker_from_json(field(s, "checker"), opts.policy);
    auto rep = check_tree_conditions(tree, a, checker.as_check());
    TaskOutcome out;
    out.exit_code = rep.all_hold() ? 0 : 1;
    out.status = rep.all_hold() ? "holds" : "violated";
    out.body = tree_report_to_json(rep);
    out.body["corpusId"] = checker.corpus_id();
    return out;
}

TaskOutcome run_check_family(const Json& s, const RunOptions& opts, const Budgets&) {
    DirectedFamily fam;
    for (const auto& m : field(s, "members"))
        fam.members.emplace_back(str_field(m, "name"), set_from_json(field(m, "set")));
    auto a = set_from_json(field(s, "set"));
    auto checker = checker_from_json(field(s, "checker"), opts.policy);
    auto rep = check_directed_family(fam, a, checker.as_check());
    TaskOutcome out;
    out.exit_code = rep.all_hold() ? 0 : 1;
    out.status = rep.all_hold() ? "holds" : "violated";
    out.body = family_report_to_json(rep);
    out.body["corpusId"] = checker.corpus_id();
    return out;
}

TaskOutcome run_generate_corpus(const Json& s, const RunOptions& opts, const Budgets&) {
    std::uint64_t seed = opts.seed ? *opts.seed
                                   : (s.contains("seed") ? s.at("seed").get<std::uint64_t>()
                                                         : 1);
    std::uint64_t count = uint_field(s, "count");
    std::uint64_t k = uint_field(s, "k");
    std::mt19937_64 rng(seed);
    auto dyadic = [&](std::uint32_t max_m) {
        std::uint32_t m = 1 + static_cast<std::uint32_t>(rng() % max_m);
        std::uint64_t num = 1 + rng() % ((std::uint64_t{1} << m));
        return Rational(Int(num), Int(1) << m);
    };
    Json families = Json::array();
    for (std::uint64_t i = 0; i < count; ++i) {
        std::uint64_t size = 1 + rng() % k;
        Json fam = Json::array();
        for (std::uint64_t j = 0; j < size; ++j) {
            if (rng() % 2 == 0) {
                Rational c = dyadic(5);
                Rational rho = rng() % 2 == 0 ? Rational(1, 2) : Rational(1, 4);
                fam.push_back(seq_to_json(ZeroSequence::geometric(c, rho)));
            } else {
                std::vector<Rational> prefix;
                std::uint64_t len = 1 + rng() % 3;
                for (std::uint64_t t = 0; t < len; ++t) prefix.push_back(dyadic(5));
                fam.push_back(seq_to_json(
                    ZeroSequence::table_then_geometric(prefix, dyadic(5), Rational(1, 2))));
            }
        }
        families.push_back(std::move(fam));
    }
    TaskOutcome out;
    out.exit_code = 0;
    out.status = "generated";
    out.body = Json{{"corpus", Json{{"id", "seeded-" + std::to_string(seed)},
                                    {"families", std::move(families)}}},
                    {"seed", seed}};
    return out;
}

TaskOutcome dispatch(const std::string& task, const Json& s, const RunOptions& opts,
                     const Budgets& bud) {
    if (task == "find-witness") return run_find_witness(s, opts, bud, false);
    if (task == "find-j-witness") return run_find_witness(s, opts, bud, true);
    if (task == "certify-r") return run_certify_r(s, opts, bud);
    if (task == "refute-cr") return run_refute_cr(s, opts, bud);
    if (task == "translate-witness") return run_translate(s, opts, bud);
    if (task == "partition-witness") return run_partition(s, opts, bud);
    if (task == "verify-ip-star") return run_verify_ip_star(s, opts, bud);
    if (task == "verify-theta-star") return run_verify_theta_star(s, opts, bud);
    if (task == "empirical-l") return run_empirical_l(s, opts, bud);
    if (task == "product-witness") return run_product(s, opts, bud);
    if (task == "check-tree") return run_check_tree(s, opts, bud);
    if (task == "check-family") return run_check_family(s, opts, bud);
    if (task == "generate-corpus") return run_generate_corpus(s, opts, bud);
    throw UnsupportedTask("unknown task '" + task + "'");
}

} // namespace

RunResult run_scenario(const Json& scenario, const std::string& expected_task,
                       const RunOptions& opts) {
    auto start = std::chrono::steady_clock::now();
    RunResult rr;
    Json& rep = rr.report;
    rep["tool"] = kToolVersion;

    std::string task;
    try {
        if (!scenario.is_object()) throw BadScenario("a scenario is a JSON object");
        task = str_field(scenario, "task");
        if (!expected_task.empty() && task != expected_task)
            throw UnsupportedTask("scenario task '" + task + "' does not match subcommand '" +
                                  expected_task + "'");
        Budgets bud = read_budgets(scenario, opts);
        rep["task"] = task;
        rep["scenario"] = scenario;
        rep["scenarioHash"] = json_fingerprint(scenario);
        rep["budgets"] = Json{{"enumeration", bud.enumeration}, {"adversary", bud.adversary}};
        TaskOutcome out = dispatch(task, scenario, opts, bud);
        rep["status"] = out.status;
        rep["outcome"] = std::move(out.body);
        if (opts.trace) rep["trace"] = std::move(out.trace);
        rr.exit_code = out.exit_code;
    } catch (const Error& e) {
        rep["status"] = "error";
        rep["error"] = Json{{"code", e.code()}, {"message", e.what()}};
        if (!task.empty()) rep["task"] = task;
        rr.exit_code = 2;
    } catch (const Json::exception& e) {
        rep["status"] = "error";
        rep["error"] = Json{{"code", "BadScenario"}, {"message", e.what()}};
        rr.exit_code = 2;
    }

    // Thread count lives with the timing diagnostics: everything outside
    // this block is byte-identical across runs and thread counts.
    if (opts.include_timing) {
        auto us = std::chrono::duration_cast<std::chrono::microseconds>(
                      std::chrono::steady_clock::now() - start)
                      .count();
        rep["timing"] = Json{{"totalMicros", us},
                             {"threads", opts.policy.threads == 0 ? 1u : opts.policy.threads}};
    }
    return rr;
}

std::string emit_csv(const Json& report) {
    if (!report.contains("task"))
        throw UnsupportedTask("report carries no task; csv export needs a completed run");
    std::string task = report.at("task").get<std::string>();
    const Json& outcome = report.contains("outcome") ? report.at("outcome") : Json::object();

    if (task == "certify-r") {
        std::string csv = "family,a,H,maxH\n";
        if (outcome.contains("perFamily")) {
            for (const auto& row : outcome.at("perFamily")) {
                const Json& w = row.at("witness");
                std::string h;
                for (const auto& t : w.at("H"))
                    h += (h.empty() ? "" : " ") + std::to_string(t.get<std::uint64_t>());
                csv += std::to_string(row.at("family").get<std::uint64_t>()) + "," +
                       w.at("a").get<std::string>() + "," + h + "," +
                       std::to_string(w.at("H").back().get<std::uint64_t>()) + "\n";
            }
        }
        return csv;
    }
    if (task == "verify-ip-star") {
        std::string csv = "holds,r,N,checked\n";
        csv += std::string(outcome.at("holds").get<bool>() ? "true" : "false") + "," +
               std::to_string(outcome.at("r").get<std::uint64_t>()) + "," +
               std::to_string(outcome.at("N").get<std::uint64_t>()) + "," +
               std::to_string(outcome.at("checked").get<std::uint64_t>()) + "\n";
        return csv;
    }
    if (task == "empirical-l") {
        std::string csv = "level,holds\n";
        for (const auto& v : outcome.at("failedLevels"))
            csv += std::to_string(v.at("r").get<std::uint64_t>()) + ",false\n";
        if (!outcome.at("l").is_null())
            csv += std::to_string(outcome.at("l").get<std::uint64_t>()) + ",true\n";
        return csv;
    }
    throw UnsupportedTask("csv export covers certify-r, verify-ip-star and empirical-l; task '" +
                          task + "' has no tabular form");
}

} // namespace crlab
