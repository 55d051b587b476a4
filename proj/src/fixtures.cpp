// Copyright (c) shexc contributors.
// SPDX-License-Identifier: Apache-2.0
#include "shexc/fixtures.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <set>

#include "shexc/error.hpp"

namespace shexc {

namespace {

std::vector<std::vector<Literal>> parse_groups(std::string_view text, std::size_t& vars) {
    std::vector<std::vector<Literal>> out;
    vars = 0;
    std::size_t start = 0;
    for (std::size_t pos = 0;; ++pos) {
        if (pos < text.size() && text[pos] != ';') continue;
        std::vector<Literal> g;
        std::string_view part = text.substr(start, pos - start);
        std::size_t i = 0;
        while (i < part.size()) {
            if (std::isspace(static_cast<unsigned char>(part[i]))) {
                ++i;
                continue;
            }
            std::size_t j = i;
            while (j < part.size() && !std::isspace(static_cast<unsigned char>(part[j]))) ++j;
            long long v = 0;
            auto tok = part.substr(i, j - i);
            auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
            if (ec != std::errc() || p != tok.data() + tok.size() || v == 0)
                throw ParseError(1, start + i + 1, "expected a non-zero signed variable index, got '" + std::string(tok) + "'");
            std::size_t var = static_cast<std::size_t>(v < 0 ? -v : v);
            vars = std::max(vars, var);
            g.push_back({var - 1, v > 0});
            i = j;
        }
        if (!g.empty()) out.push_back(std::move(g));
        if (pos == text.size()) break;
        start = pos + 1;
    }
    return out;
}

std::string idx(std::size_t i) { return std::to_string(i + 1); }

} // namespace

CnfFormula parse_cnf(std::string_view text) {
    CnfFormula f;
    f.clauses = parse_groups(text, f.vars);
    return f;
}

DnfFormula parse_dnf(std::string_view text) {
    DnfFormula f;
    f.terms = parse_groups(text, f.vars);
    return f;
}

CnfFormula normalize(const CnfFormula& phi) {
    std::vector<std::size_t> pos(phi.vars, 0), neg(phi.vars, 0);
    for (const auto& c : phi.clauses)
        for (const auto& l : c) ++(l.positive ? pos : neg)[l.var];
    std::size_t k = 0;
    for (std::size_t i = 0; i < phi.vars; ++i) k = std::max({k, pos[i], neg[i]});
    ++k;
    CnfFormula out = phi;
    out.k = k;
    for (std::size_t i = 0; i < phi.vars; ++i) {
        std::vector<Literal> pad;
        for (std::size_t j = pos[i]; j < k; ++j) pad.push_back({i, true});
        for (std::size_t j = neg[i]; j < k; ++j) pad.push_back({i, false});
        out.clauses.push_back(std::move(pad));
    }
    return out;
}

bool is_normalized(const CnfFormula& phi) {
    if (phi.k == 0) return false;
    std::vector<std::size_t> pos(phi.vars, 0), neg(phi.vars, 0);
    for (const auto& c : phi.clauses)
        for (const auto& l : c) {
            if (l.var >= phi.vars) return false;
            ++(l.positive ? pos : neg)[l.var];
        }
    for (std::size_t i = 0; i < phi.vars; ++i)
        if (pos[i] != phi.k || neg[i] != phi.k) return false;
    return true;
}

bool brute_force_sat(const CnfFormula& phi) {
    if (phi.vars > 24) throw PreconditionError("brute-force SAT is limited to 24 variables");
    for (std::uint64_t v = 0; v < (1ULL << phi.vars); ++v) {
        bool all = std::all_of(phi.clauses.begin(), phi.clauses.end(), [&](const auto& c) {
            return std::any_of(c.begin(), c.end(), [&](const Literal& l) { return ((v >> l.var) & 1) == l.positive; });
        });
        if (all) return true;
    }
    return false;
}

bool brute_force_tautology(const DnfFormula& phi) {
    if (phi.vars > 24) throw PreconditionError("brute-force tautology check is limited to 24 variables");
    for (std::uint64_t v = 0; v < (1ULL << phi.vars); ++v) {
        bool any = std::any_of(phi.terms.begin(), phi.terms.end(), [&](const auto& t) {
            return std::all_of(t.begin(), t.end(), [&](const Literal& l) { return ((v >> l.var) & 1) == l.positive; });
        });
        if (!any) return false;
    }
    return true;
}

// x_{i,j} is the j-th positive occurrence of x_i, nx_{i,j} the j-th negative one.
GraphPair sat_embedding_instance(const CnfFormula& phi) {
    if (!is_normalized(phi)) throw PreconditionError("SAT instance needs a normalized formula");
    const std::size_t n = phi.vars, k = phi.k;
    auto occ = [](bool positive, std::size_t i, std::size_t j) {
        return std::string(positive ? "x" : "nx") + idx(i) + "_" + idx(j);
    };
    GraphPair out;
    Graph& h = out.h;
    NodeId r1 = h.add_node("r1");
    NodeId ho = h.add_node("o");
    for (std::size_t i = 0; i < n; ++i) {
        NodeId w = h.add_node("w" + idx(i));
        h.add_edge(r1, "a", w, Interval::exactly(k));
        h.add_edge(w, "v" + idx(i), ho);
        for (bool positive : {true, false})
            for (std::size_t j = 0; j < k; ++j) {
                NodeId x = h.add_node(occ(positive, i, j));
                h.add_edge(r1, "a", x);
                h.add_edge(x, occ(positive, i, j), ho);
            }
    }

    Graph& g = out.k;
    NodeId r2 = g.add_node("r2");
    NodeId ko = g.add_node("o");
    for (std::size_t i = 0; i < n; ++i)
        for (bool positive : {true, false}) {
            NodeId x = g.add_node((positive ? "x" : "nx") + idx(i));
            g.add_edge(r2, "a", x, Interval::exactly(k));
            g.add_edge(x, "v" + idx(i), ko, Interval::opt());
            for (std::size_t j = 0; j < k; ++j) g.add_edge(x, occ(positive, i, j), ko, Interval::opt());
        }
    std::vector<std::size_t> seen_pos(n, 0), seen_neg(n, 0);
    for (std::size_t p = 0; p < phi.clauses.size(); ++p) {
        NodeId c = g.add_node("c" + idx(p));
        g.add_edge(r2, "a", c, Interval::plus());
        for (const auto& l : phi.clauses[p]) {
            std::size_t j = l.positive ? seen_pos[l.var]++ : seen_neg[l.var]++;
            g.add_edge(c, occ(l.positive, l.var, j), ko, Interval::opt());
        }
    }
    return out;
}

SchemaPair dnf_containment_instance(const DnfFormula& phi) {
    const std::size_t n = phi.vars;
    auto x = [](std::size_t i) { return "x" + idx(i); };
    SchemaPair out;

    Schema& h = out.h;
    TypeId r = h.add_type("r"), v = h.add_type("v"), o = h.add_type("o");
    std::vector<Rbe> root;
    for (std::size_t i = 0; i < n; ++i) root.push_back(Rbe::symbol(h.atom(x(i), v)));
    h.define(r, Rbe::concat_all(root));
    h.define(v, Rbe::concat(Rbe::repeat(Rbe::symbol(h.atom("t", o)), Interval::opt()),
                            Rbe::repeat(Rbe::symbol(h.atom("f", o)), Interval::opt())));
    h.define(o, Rbe::epsilon());

    Schema& s = out.k;
    TypeId ko = s.add_type("o"), kv = s.add_type("v"), v0 = s.add_type("v0"), v1 = s.add_type("v1");
    auto t_one = [&] { return Rbe::symbol(s.atom("t", ko)); };
    auto f_one = [&] { return Rbe::symbol(s.atom("f", ko)); };
    s.define(ko, Rbe::epsilon());
    s.define(kv, Rbe::concat(Rbe::repeat(t_one(), Interval::opt()), Rbe::repeat(f_one(), Interval::opt())));
    s.define(v0, Rbe::epsilon());
    s.define(v1, Rbe::concat(t_one(), f_one()));
    // One root type per variable and per special value, then one per term.
    auto root_with = [&](const std::string& name, std::size_t i, TypeId special) {
        TypeId t = s.add_type(name);
        std::vector<Rbe> parts;
        for (std::size_t q = 0; q < n; ++q) parts.push_back(Rbe::symbol(s.atom(x(q), q == i ? special : kv)));
        s.define(t, Rbe::concat_all(parts));
    };
    for (std::size_t i = 0; i < n; ++i) root_with("r0_" + idx(i), i, v0);
    for (std::size_t i = 0; i < n; ++i) root_with("r1_" + idx(i), i, v1);
    for (std::size_t d = 0; d < phi.terms.size(); ++d) {
        TypeId t = s.add_type("rd_" + idx(d));
        std::vector<Rbe> parts;
        for (std::size_t q = 0; q < n; ++q) {
            bool pos = false, neg = false;
            for (const auto& l : phi.terms[d])
                if (l.var == q) (l.positive ? pos : neg) = true;
            TypeId vd = s.add_type("vd_" + idx(d) + "_" + idx(q));
            if (pos || neg) {
                std::vector<Rbe> vals;
                if (pos) vals.push_back(t_one());
                if (neg) vals.push_back(f_one());
                s.define(vd, Rbe::concat_all(vals));
            } else {
                s.define(vd, Rbe::concat(Rbe::repeat(t_one(), Interval::opt()), Rbe::repeat(f_one(), Interval::opt())));
            }
            parts.push_back(Rbe::symbol(s.atom(x(q), vd)));
        }
        s.define(t, Rbe::concat_all(parts));
    }
    return out;
}

SchemaPair exponential_family(std::size_t n) {
    if (n == 0) throw PreconditionError("exponential family needs n >= 1");
    const std::string dirs[2] = {"L", "R"};
    auto tname = [](std::size_t i) { return "t" + std::to_string(i); };
    auto sname = [&](std::size_t j, std::size_t i, int m, int d) {
        return "s" + std::to_string(j) + "_" + std::to_string(i) + "_" + std::to_string(m) + "_" + dirs[d];
    };
    auto pname = [&](std::size_t j, std::size_t i, int d) {
        return "p" + std::to_string(j) + "_" + std::to_string(i) + "_" + dirs[d];
    };
    auto a = [](std::size_t i) { return "a" + std::to_string(i); };

    // Types are declared first so that rules may refer forward.
    auto tree = [&](Schema& s, std::size_t from) {
        for (std::size_t i = from; i <= n + 1; ++i) s.add_type(tname(i));
        s.add_type("to");
    };
    auto tree_rules = [&](Schema& s, std::size_t from) {
        auto T = [&](const std::string& nm) { return *s.find_type(nm); };
        for (std::size_t i = from; i <= n; ++i)
            s.define(T(tname(i)), Rbe::concat(Rbe::symbol(s.atom("L", T(tname(i + 1)))),
                                              Rbe::symbol(s.atom("R", T(tname(i + 1))))));
        std::vector<Rbe> leaf;
        for (std::size_t i = 1; i <= n; ++i)
            leaf.push_back(Rbe::repeat(Rbe::symbol(s.atom(a(i), T("to"))), Interval::opt()));
        s.define(T(tname(n + 1)), Rbe::concat_all(leaf));
        s.define(T("to"), Rbe::epsilon());
    };

    SchemaPair out;
    tree(out.h, 1);
    tree_rules(out.h, 1);

    Schema& k = out.k;
    tree(k, 2);
    for (std::size_t i = 1; i <= n; ++i)
        for (std::size_t j = i + 1; j <= n + 1; ++j)
            for (int m = 0; m < 2; ++m)
                for (int d = 0; d < 2; ++d) k.add_type(sname(j, i, m, d));
    for (std::size_t i = 1; i <= n; ++i)
        for (std::size_t j = 1; j <= i; ++j)
            for (int d = 0; d < 2; ++d) k.add_type(pname(j, i, d));
    tree_rules(k, 2);
    auto T = [&](const std::string& nm) { return *k.find_type(nm); };
    auto one = [&](const std::string& l, const std::string& t) { return Rbe::symbol(k.atom(l, T(t))); };
    auto opt = [&](const std::string& l, const std::string& t) { return Rbe::repeat(one(l, t), Interval::opt()); };
    // Leaves: a_i present (M = 1) or absent (M = 0), other symbols free.
    for (std::size_t i = 1; i <= n; ++i)
        for (int m = 0; m < 2; ++m)
            for (int d = 0; d < 2; ++d) {
                std::vector<Rbe> parts;
                for (std::size_t q = 1; q <= n; ++q) {
                    if (q != i)
                        parts.push_back(opt(a(q), "to"));
                    else if (m == 1)
                        parts.push_back(one(a(q), "to"));
                }
                k.define(T(sname(n + 1, i, m, d)), Rbe::concat_all(parts));
            }
    // Usage of a_i propagated upwards through levels j > i. The sibling
    // subtree sits one level below, hence t^(j+1).
    for (std::size_t i = 1; i <= n; ++i)
        for (std::size_t j = i + 1; j <= n; ++j)
            for (int m = 0; m < 2; ++m) {
                k.define(T(sname(j, i, m, 0)), Rbe::concat_all({opt("L", sname(j + 1, i, m, 0)),
                                                                opt("L", sname(j + 1, i, m, 1)),
                                                                one("R", tname(j + 1))}));
                k.define(T(sname(j, i, m, 1)), Rbe::concat_all({one("L", tname(j + 1)),
                                                                opt("R", sname(j + 1, i, m, 0)),
                                                                opt("R", sname(j + 1, i, m, 1))}));
            }
    // Violations at level i, propagated to the root.
    for (std::size_t i = 1; i <= n; ++i) {
        k.define(T(pname(i, i, 0)), Rbe::concat_all({opt("L", sname(i + 1, i, 0, 0)), opt("L", sname(i + 1, i, 0, 1)),
                                                     one("R", tname(i + 1))}));
        k.define(T(pname(i, i, 1)), Rbe::concat_all({one("L", tname(i + 1)), opt("R", sname(i + 1, i, 1, 0)),
                                                     opt("R", sname(i + 1, i, 1, 1))}));
        for (std::size_t j = 1; j < i; ++j) {
            k.define(T(pname(j, i, 0)), Rbe::concat_all({opt("L", pname(j + 1, i, 0)), opt("L", pname(j + 1, i, 1)),
                                                         one("R", tname(j + 1))}));
            k.define(T(pname(j, i, 1)), Rbe::concat_all({one("L", tname(j + 1)), opt("R", pname(j + 1, i, 0)),
                                                         opt("R", pname(j + 1, i, 1))}));
        }
    }
    return out;
}

namespace {

Rbe relabel(const Rbe& e, const std::vector<Symbol>& to) {
    using K = Rbe::Kind;
    switch (e.kind()) {
    case K::empty: return Rbe::empty();
    case K::epsilon: return Rbe::epsilon();
    case K::symbol: return Rbe::symbol(to.at(e.sym()));
    case K::disj: return Rbe::disj(relabel(e.left(), to), relabel(e.right(), to));
    case K::concat: return Rbe::concat(relabel(e.left(), to), relabel(e.right(), to));
    case K::intersect: return Rbe::intersect(relabel(e.left(), to), relabel(e.right(), to));
    case K::repeat: return Rbe::repeat(relabel(e.left(), to), e.interval());
    }
    return e;
}

} // namespace

SchemaPair union_containment_instance(const Rbe& e0, const std::vector<Rbe>& es,
                                      const std::vector<std::string>& alphabet) {
    if (es.empty()) throw PreconditionError("union containment needs at least one right-hand expression");
    std::size_t bound = e0.alphabet_bound();
    for (const auto& e : es) bound = std::max(bound, e.alphabet_bound());
    if (bound > alphabet.size()) throw PreconditionError("expression uses a symbol outside the alphabet");
    std::set<std::string> used(alphabet.begin(), alphabet.end());
    std::string z = "z";
    while (used.count(z)) z += "_";

    auto build = [&](const Rbe& body) {
        Schema s;
        TypeId t = s.add_type("t"), t0 = s.add_type("t0");
        Symbol zs = s.atom(z, t0);
        std::vector<Symbol> to;
        for (const auto& a : alphabet) to.push_back(s.atom(a, t0));
        s.define(t, Rbe::concat(Rbe::symbol(zs), relabel(body, to)));
        s.define(t0, Rbe::epsilon());
        return s;
    };
    std::vector<Rbe> right;
    for (const auto& e : es) right.push_back(e);
    return {build(e0), build(Rbe::disj_all(right))};
}

} // namespace shexc
