// Copyright (c) shexc contributors.
// SPDX-License-Identifier: Apache-2.0
#include "shexc/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "shexc/containment.hpp"
#include "shexc/embedding.hpp"
#include "shexc/error.hpp"
#include "shexc/fixtures.hpp"
#include "shexc/presburger.hpp"
#include "shexc/validation.hpp"

namespace shexc::cli {

namespace {

using json = nlohmann::ordered_json;

struct IoError : Error {
    using Error::Error;
};

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out || !(out << text)) throw IoError("cannot write " + path);
}

// Result of one subcommand; printed as text or as the JSON envelope
//   {"command", "verdict": holds|fails|unknown, "witness": string|null, "stats": {...}}
struct Outcome {
    Exit exit = holds;
    std::string text;     // human-readable report
    std::string witness;  // empty = none
    json stats = json::object();
};

std::string_view verdict_name(Exit e) {
    switch (e) {
    case holds: return "holds";
    case fails: return "fails";
    default: return "unknown";
    }
}

struct Common {
    bool json_out = false;
    bool strict = false;
    unsigned jobs = 1;
};

struct Budget {
    std::size_t max_nodes = SearchBudget{}.max_nodes;
    std::uint64_t max_card = SearchBudget{}.max_card;
    double timeout = SearchBudget{}.timeout_seconds;
    bool assume_complete = false;

    void add(CLI::App* sub) {
        sub->add_option("--max-nodes", max_nodes, "largest counter-example node count tried")->capture_default_str();
        sub->add_option("--max-card", max_card, "largest edge cardinality tried")->capture_default_str();
        sub->add_option("--timeout", timeout, "wall-clock limit in seconds")->capture_default_str();
        sub->add_flag("--assume-complete", assume_complete,
                      "report 'contained' when the budget is exhausted without a counter-example");
    }
    SearchBudget get(unsigned jobs) const {
        SearchBudget b;
        b.max_nodes = max_nodes;
        b.max_card = max_card;
        b.timeout_seconds = timeout;
        b.assume_complete = assume_complete;
        b.jobs = jobs;
        return b;
    }
};

json search_stats(const SearchStats& s) {
    return json{{"candidates", s.candidates},   {"expansions", s.expansions}, {"levels_completed", s.levels_completed},
                {"timed_out", s.timed_out},     {"minimal", s.minimal}};
}

Outcome search_outcome(const ContainmentVerdict& v) {
    Outcome o;
    o.stats = search_stats(v.stats);
    o.stats["method"] = "search";
    switch (v.verdict) {
    case ContainmentVerdict::Kind::contained:
        o.exit = holds;
        o.text = "contained (no counter-example within the budget, declared complete)\n";
        break;
    case ContainmentVerdict::Kind::not_contained:
        o.exit = fails;
        o.witness = serialize_graph(*v.witness, GraphKind::compressed);
        o.text = "not contained; counter-example" + std::string(v.stats.minimal ? " (minimal)" : "") + ":\n" + o.witness;
        break;
    case ContainmentVerdict::Kind::unknown:
        o.exit = unknown;
        o.text = "unknown: no counter-example up to " + std::to_string(v.stats.levels_completed) + " nodes" +
                 (v.stats.timed_out ? " (timed out)" : "") + "\n";
        break;
    }
    return o;
}

ValidationOptions::Method method_of(const std::string& m) {
    if (m == "flow") return ValidationOptions::Method::flow;
    if (m == "exhaustive") return ValidationOptions::Method::exhaustive;
    return ValidationOptions::Method::automatic;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Shape expression schemas: validation, embeddings and containment", "shexc"};
    app.require_subcommand(1);
    Common c;
    app.add_flag("--json", c.json_out, "print a JSON envelope {command, verdict, witness, stats}");
    app.add_flag("--strict", c.strict, "report unknown verdicts as errors on stderr");
    app.add_option("--jobs", c.jobs, "worker threads")->check(CLI::PositiveNumber)->capture_default_str();

    std::string graph_path, graph2_path, schema_path, schema2_path, vmethod = "auto";
    auto* validate = app.add_subcommand("validate", "check that every node of GRAPH has a type in SCHEMA");
    auto* typing = app.add_subcommand("typing", "print the maximal typing of GRAPH against SCHEMA");
    for (auto* s : {validate, typing}) {
        s->add_option("graph", graph_path)->required();
        s->add_option("schema", schema_path)->required();
        s->add_option("--method", vmethod, "node check")->check(CLI::IsMember({"auto", "flow", "exhaustive"}));
    }

    bool dump = false;
    auto* embed = app.add_subcommand("embed", "decide whether GRAPH embeds in GRAPH2");
    embed->add_option("graph", graph_path)->required();
    embed->add_option("graph2", graph2_path)->required();
    embed->add_flag("--dump", dump, "print the simulation and its witnesses");

    auto* classify_cmd = app.add_subcommand("classify", "print the most restrictive class of SCHEMA");
    classify_cmd->add_option("schema", schema_path)->required();

    std::string cmethod = "auto";
    Budget budget;
    auto* contains = app.add_subcommand("contains", "decide whether SCHEMA is contained in SCHEMA2");
    auto* cex = app.add_subcommand("counterexample", "search for a graph valid for SCHEMA but not SCHEMA2");
    for (auto* s : {contains, cex}) {
        s->add_option("schema", schema_path)->required();
        s->add_option("schema2", schema2_path)->required();
        budget.add(s);
    }
    contains->add_option("--method", cmethod)->check(CLI::IsMember({"auto", "embedding", "search"}))->capture_default_str();

    auto* characterize = app.add_subcommand("characterize", "print the characterizing graph of a DetShEx0Minus SCHEMA");
    characterize->add_option("schema", schema_path)->required();

    std::string rbe_text, emit_path;
    auto* presburger = app.add_subcommand("presburger", "print the Presburger formula of an expression");
    presburger->add_option("rbe", rbe_text, "expression, e.g. \"a, b* | c^[2;3]\"")->required();
    presburger->add_option("--emit", emit_path, "also write an SMT-LIB script to this file");

    std::string out_prefix;
    std::vector<std::string> fx_args;
    std::size_t exp_n = 1;
    auto* fixtures = app.add_subcommand("fixtures", "generate reduction instances");
    fixtures->require_subcommand(1);
    fixtures->add_option("--out", out_prefix, "write PREFIX.h.* and PREFIX.k.* instead of printing");
    auto* fx_sat = fixtures->add_subcommand("sat", "graphs H, K from a CNF such as \"1 -2; 2 3\"");
    auto* fx_dnf = fixtures->add_subcommand("dnf", "schemas H, K from a DNF such as \"1 -2; 2 -3\"");
    for (auto* s : {fx_sat, fx_dnf}) s->add_option("formula", fx_args)->required()->expected(1);
    auto* fx_exp = fixtures->add_subcommand("exp", "schemas H, K of the exponential family");
    fx_exp->add_option("n", exp_n)->required()->check(CLI::PositiveNumber);
    auto* fx_union = fixtures->add_subcommand("union", "schemas H, K from expressions E0 E1 [E2 ...]");
    fx_union->add_option("exprs", fx_args)->required()->expected(2, -1);

    for (auto* s : app.get_subcommands({})) s->fallthrough();
    for (auto* s : fixtures->get_subcommands({})) s->fallthrough();

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::CallForHelp& e) {
        app.exit(e, out, err);
        return holds;
    } catch (const CLI::CallForAllHelp& e) {
        app.exit(e, out, err);
        return holds;
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return usage;
    }

    auto* sub = app.get_subcommands().front();
    std::string command = sub->get_name();
    ValidationOptions vopts;
    vopts.method = method_of(vmethod);
    vopts.jobs = c.jobs;
    SimulationOptions sopts;
    sopts.jobs = c.jobs;

    Outcome o;
    try {
        auto read_graph = [](const std::string& p) { return parse_graph(slurp(p)); };
        auto read_schema = [](const std::string& p) { return parse_schema(slurp(p)); };

        if (sub == validate || sub == typing) {
            Graph g = read_graph(graph_path);
            Schema s = read_schema(schema_path);
            Typing t = max_typing(g, s, vopts);
            o.stats = {{"nodes", g.node_count()}, {"typed_pairs", t.size()}};
            if (sub == typing) {
                o.witness = typing_dump(g, s, t);
                o.text = o.witness;
            } else {
                std::string untyped;
                for (NodeId n = 0; n < g.node_count(); ++n)
                    if (t.types(n).none()) untyped += g.name(n) + "\n";
                o.exit = untyped.empty() ? holds : fails;
                o.witness = untyped;
                o.text = untyped.empty() ? "valid\n" : "invalid; nodes without a type:\n" + untyped;
            }
        } else if (sub == embed) {
            Graph g = read_graph(graph_path);
            Graph h = read_graph(graph2_path);
            SimulationStats st;
            auto r = max_simulation(g, h, sopts, &st);
            bool ok = r.total();
            o.exit = ok ? holds : fails;
            o.stats = {{"rounds", st.rounds}, {"relation_size", r.size()}};
            std::string d = embedding_dump(g, h, r);
            if (dump || c.json_out) o.witness = d;
            o.text = std::string(ok ? "embeds\n" : "does not embed\n") + (dump ? d : "");
        } else if (sub == classify_cmd) {
            Schema s = read_schema(schema_path);
            auto cl = classify(s);
            o.text = std::string(to_string(cl.cls)) + "\n";
            for (const auto& d : cl.diagnostics) o.text += "  " + d + "\n";
            o.witness = std::string(to_string(cl.cls));
            o.stats = {{"diagnostics", cl.diagnostics}};
        } else if (sub == contains) {
            Schema h = read_schema(schema_path);
            Schema k = read_schema(schema2_path);
            bool minus = classify(h).cls == SchemaClass::det_shex0_minus &&
                         classify(k).cls == SchemaClass::det_shex0_minus;
            if (cmethod == "embedding" || (cmethod == "auto" && minus)) {
                bool yes = contains_detshex0minus(h, k);  // checks the class itself
                o.exit = yes ? holds : fails;
                o.text = yes ? "contained\n" : "not contained\n";
                o.stats = {{"method", "embedding"}};
            } else {
                o = search_outcome(find_counterexample(h, k, budget.get(c.jobs)));
            }
        } else if (sub == cex) {
            o = search_outcome(find_counterexample(read_schema(schema_path), read_schema(schema2_path), budget.get(c.jobs)));
        } else if (sub == characterize) {
            Graph g = characterizing_graph(read_schema(schema_path));
            o.witness = serialize_graph(g, GraphKind::simple);
            o.text = o.witness;
            o.stats = {{"nodes", g.node_count()}, {"edges", g.edge_count()}};
        } else if (sub == presburger) {
            std::vector<std::string> alphabet;
            Rbe e = parse_rbe(rbe_text, alphabet);
            auto psi = presburger_of(e, alphabet);
            o.witness = to_sexpr(psi.formula, *psi.vars);
            o.text = o.witness + "\n";
            if (!emit_path.empty()) write_file(emit_path, to_smtlib(psi.formula, *psi.vars));
            o.stats = {{"variables", psi.vars->size()}};
        } else if (sub == fixtures) {
            auto* which = fixtures->get_subcommands().front();
            std::string h_text, k_text, ext;
            if (which == fx_sat) {
                auto pair = sat_embedding_instance(normalize(parse_cnf(fx_args.front())));
                h_text = serialize_graph(pair.h);
                k_text = serialize_graph(pair.k);
                ext = "graph";
            } else {
                SchemaPair pair;
                if (which == fx_dnf) {
                    pair = dnf_containment_instance(parse_dnf(fx_args.front()));
                } else if (which == fx_exp) {
                    pair = exponential_family(exp_n);
                } else {
                    std::vector<std::string> alphabet;
                    Rbe e0 = parse_rbe(fx_args.front(), alphabet);
                    std::vector<Rbe> es;
                    for (std::size_t i = 1; i < fx_args.size(); ++i) es.push_back(parse_rbe(fx_args[i], alphabet));
                    pair = union_containment_instance(e0, es, alphabet);
                }
                h_text = serialize_schema(pair.h);
                k_text = serialize_schema(pair.k);
                ext = "schema";
            }
            command += " " + which->get_name();
            if (out_prefix.empty()) {
                o.text = "# h\n" + h_text + "# k\n" + k_text;
            } else {
                write_file(out_prefix + ".h." + ext, h_text);
                write_file(out_prefix + ".k." + ext, k_text);
                o.text = "wrote " + out_prefix + ".h." + ext + " and " + out_prefix + ".k." + ext + "\n";
            }
            o.witness = o.text;
        }
    } catch (const IoError& e) {
        err << "shexc: " << e.what() << "\n";
        return usage;
    } catch (const ParseError& e) {
        err << "shexc: parse error: " << e.what() << "\n";
        return usage;
    } catch (const PreconditionError& e) {
        err << "shexc: " << e.what() << "\n";
        return usage;
    } catch (const BudgetExceeded& e) {
        o = Outcome{};
        o.exit = unknown;
        o.text = std::string("unknown: ") + e.what() + "\n";
    }

    if (c.json_out) {
        json env{{"command", command},
                 {"verdict", verdict_name(o.exit)},
                 {"witness", o.witness.empty() ? json(nullptr) : json(o.witness)},
                 {"stats", o.stats}};
        out << env.dump(2) << "\n";
    } else {
        out << o.text;
    }
    if (o.exit == unknown && c.strict) err << "shexc: unknown verdict (--strict)\n";
    return o.exit;
}

int run(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return run(args, std::cout, std::cerr);
}

} // namespace shexc::cli
