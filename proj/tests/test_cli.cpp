// Copyright (c) shexc contributors.
// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <json.hpp>
#include <sstream>
#include <sys/wait.h>

#include "shexc/cli.hpp"
#include "support.hpp"

namespace {

struct Result {
    int code;
    std::string out, err;
};

Result run(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = shexc::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string d(const std::string& name) { return testing::data_path(name); }

std::filesystem::path scratch() {
    auto p = std::filesystem::temp_directory_path() / "shexc_cli_test";
    std::filesystem::create_directories(p);
    return p;
}

} // namespace

TEST_CASE("validate and typing") {
    auto v = run({"validate", d("bug_reports.graph"), d("bug_reports.schema")});
    CHECK(v.code == 0);
    CHECK(v.out == "valid\n");
    auto t = run({"typing", d("g0.graph"), d("s0.schema")});
    CHECK(t.code == 0);
    CHECK(t.out == "n0\tt0\nn1\tt1,t2\nn2\tt3\n");
    auto f = run({"typing", d("g0.graph"), d("s0.schema"), "--method", "exhaustive"});
    CHECK(f.out == t.out);
    auto bad = run({"validate", d("g0.graph"), d("bug_reports.schema")});
    CHECK(bad.code == 1);
    CHECK(bad.out.rfind("invalid; nodes without a type:\n", 0) == 0);
}

TEST_CASE("embed and classify") {
    CHECK(run({"embed", d("g0.graph"), d("h0.graph")}).code == 0);
    auto no = run({"embed", d("star_star_g.graph"), d("star_star_h.graph")});
    CHECK(no.code == 1);
    CHECK(no.out == "does not embed\n");
    auto c = run({"classify", d("bug_reports_split.schema")});
    CHECK(c.code == 0);
    CHECK(c.out.rfind("ShEx0\n  DetShEx0: type Bug1 uses label related twice\n", 0) == 0);
    CHECK(run({"classify", d("bug_reports.schema")}).out == "DetShEx0Minus\n");
}

TEST_CASE("contains and counterexample") {
    CHECK(run({"contains", d("bug_reports.schema"), d("bug_reports.schema"), "--method", "embedding"}).code == 0);
    auto s = run({"contains", d("star_star_g.schema"), d("star_star_h.schema"), "--max-nodes", "3", "--max-card", "2"});
    CHECK(s.code == 2);
    CHECK(s.out == "unknown: no counter-example up to 3 nodes\n");
    auto strict = run({"--strict", "contains", d("star_star_g.schema"), d("star_star_h.schema"), "--max-nodes", "2"});
    CHECK(strict.code == 2);
    CHECK(strict.err == "shexc: unknown verdict (--strict)\n");
    auto cex = run({"counterexample", d("star_star_g.schema"), d("s0.schema"), "--max-nodes", "3", "--max-card", "2"});
    CHECK(cex.code == 1);
    CHECK(cex.out == "not contained; counter-example (minimal):\ngraph compressed\nnode n0\nnode n1\nn1 a n0\n");
    auto complete = run({"counterexample", d("s0.schema"), d("s0.schema"), "--max-nodes", "2", "--assume-complete"});
    CHECK(complete.code == 0);
    // The embedding shortcut refuses non-DetShEx0Minus input instead of guessing.
    CHECK(run({"contains", d("bug_reports_split.schema"), d("bug_reports.schema"), "--method", "embedding"}).code == 3);
}

TEST_CASE("json envelope") {
    auto r = run({"--json", "typing", d("g0.graph"), d("s0.schema")});
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["command"] == "typing");
    CHECK(j["verdict"] == "holds");
    CHECK(j["witness"] == "n0\tt0\nn1\tt1,t2\nn2\tt3\n");
    CHECK(j["stats"]["nodes"] == 3);
    auto u = nlohmann::json::parse(run({"--json", "contains", d("star_star_g.schema"), d("star_star_h.schema"), "--max-nodes", "2"}).out);
    CHECK(u["verdict"] == "unknown");
    CHECK(u["witness"].is_null());
    CHECK(u["stats"]["method"] == "search");
    auto n = nlohmann::json::parse(run({"--json", "embed", d("star_star_g.graph"), d("star_star_h.graph")}).out);
    CHECK(n["verdict"] == "fails");
}

TEST_CASE("characterize, presburger and fixtures") {
    auto c = run({"characterize", d("charz_h.schema")});
    CHECK(c.code == 0);
    CHECK(shexc::parse_graph(c.out).node_count() == 19);
    auto dir = scratch();
    auto smt = (dir / "a.smt2").string();
    auto p = run({"presburger", "a", "--emit", smt});
    CHECK(p.out == "(= x_a n)\n");
    CHECK(std::filesystem::exists(smt));
    auto fx = run({"fixtures", "dnf", "1 -2; 2 -3"});
    CHECK(fx.out.rfind("# h\nschema\nr -> ", 0) == 0);
    auto prefix = (dir / "e2").string();
    auto w = run({"fixtures", "--out", prefix, "exp", "2"});
    CHECK(w.code == 0);
    CHECK(std::filesystem::exists(prefix + ".h.schema"));
    CHECK(std::filesystem::exists(prefix + ".k.schema"));
    auto sat = run({"fixtures", "sat", "1 -2; 2"});
    CHECK(sat.out.find("graph general\n") != std::string::npos);
    CHECK(run({"fixtures", "union", "a*", "eps", "a"}).code == 0);
}

TEST_CASE("usage errors exit 3") {
    CHECK(run({}).code == 3);
    CHECK(run({"frobnicate"}).code == 3);
    CHECK(run({"validate", "/nonexistent.graph", d("s0.schema")}).code == 3);
    auto parse = run({"classify", d("g0.graph")});
    CHECK(parse.code == 3);
    CHECK(parse.err.rfind("shexc: parse error: ", 0) == 0);
    CHECK(run({"typing", d("g0.graph"), d("s0.schema"), "--method", "magic"}).code == 3);
    CHECK(run({"fixtures", "exp", "0"}).code == 3);
    CHECK(run({"--help"}).code == 0);
}

TEST_CASE("output is deterministic across runs and job counts") {
    std::vector<std::vector<std::string>> cmds{
        {"typing", d("bug_reports.graph"), d("bug_reports.schema")},
        {"embed", "--dump", d("g0.graph"), d("h0.graph")},
        {"counterexample", d("star_star_h.schema"), d("star_star_g.schema"), "--max-nodes", "3", "--max-card", "2"},
        {"counterexample", d("star_star_g.schema"), d("s0.schema"), "--max-nodes", "3"},
        {"characterize", d("charz_h.schema")},
    };
    for (auto cmd : cmds) {
        auto a = run(cmd);
        auto b = run(cmd);
        CHECK(a.out == b.out);
        auto par = cmd;
        par.insert(par.begin(), {"--json", "--jobs", "3"});
        auto seq = cmd;
        seq.insert(seq.begin(), "--json");
        CHECK(run(par).out == run(seq).out);
    }
}

TEST_CASE("the installed binary reports exit codes") {
    auto call = [](const std::string& args) {
        int st = std::system((std::string(SHEXC_BIN) + " " + args + " >/dev/null 2>&1").c_str());
        return WIFEXITED(st) ? WEXITSTATUS(st) : -1;
    };
    CHECK(call("validate " + d("bug_reports.graph") + " " + d("bug_reports.schema")) == 0);
    CHECK(call("embed " + d("star_star_g.graph") + " " + d("star_star_h.graph")) == 1);
    CHECK(call("contains " + d("star_star_g.schema") + " " + d("star_star_h.schema") + " --max-nodes 2") == 2);
    CHECK(call("nonsense") == 3);
}
