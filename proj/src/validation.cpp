// Copyright (c) shexc contributors.
// SPDX-License-Identifier: Apache-2.0
#include <algorithm>
#include <exception>
#include <map>
#include <thread>

#include "shexc/error.hpp"
#include "shexc/presburger.hpp"
#include "shexc/routing.hpp"
#include "validation_impl.hpp"

namespace shexc {

std::size_t Typing::size() const {
    std::size_t n = 0;
    for (const auto& s : sets_) n += s.count();
    return n;
}

bool Typing::total() const {
    return std::all_of(sets_.begin(), sets_.end(), [](const TypeSet& s) { return s.any(); });
}

namespace detail {

CompiledSchema compile(const Schema& s) {
    CompiledSchema cs;
    cs.schema = &s;
    for (const auto& a : s.atoms()) {
        auto [it, fresh] = cs.label_id.emplace(a.label, static_cast<std::uint32_t>(cs.atoms_by_label.size()));
        if (fresh) cs.atoms_by_label.emplace_back();
        cs.atom_label.push_back(it->second);
        cs.atoms_by_label[it->second].push_back(static_cast<Symbol>(cs.atom_label.size() - 1));
    }
    for (TypeId t = 0; t < s.type_count(); ++t) {
        cs.rbe0.push_back(to_rbe0(s.def(t)));
        cs.label_ranges.push_back(symbol_ranges(s.def(t), cs.atom_label, cs.atoms_by_label.size()));
    }
    return cs;
}

std::vector<CEdge> compile_out(const Graph& g, const CompiledSchema& cs, NodeId n) {
    std::vector<CEdge> out;
    for (auto e : g.out(n)) {
        const auto& ed = g.edge(e);
        out.push_back({cs.label(ed.label), ed.target, ed.occur.min()});
    }
    return out;
}

namespace {

std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
    if (a == 0 || b == 0) return 0;
    return a > UINT64_MAX / b ? UINT64_MAX : a * b;
}

// Number of ways to split k into parts indexed by r slots: C(k + r - 1, r - 1).
std::uint64_t compositions(std::uint64_t k, std::uint64_t r) {
    if (r <= 1) return 1;
    std::uint64_t c = 1;
    for (std::uint64_t i = 1; i < r; ++i) {
        // c = C(k + i, i), computed incrementally; saturates.
        unsigned __int128 next = static_cast<unsigned __int128>(c) * (k + i) / i;
        if (next > UINT64_MAX) return UINT64_MAX;
        c = static_cast<std::uint64_t>(next);
    }
    return c;
}

struct Group {
    std::vector<Symbol> candidates;
    std::uint64_t count = 0;
};

bool flow_path(const Rbe0& atoms, const std::vector<Group>& groups) {
    std::vector<Interval> src, snk;
    for (const auto& a : atoms) snk.push_back(a.occur);
    std::vector<const Group*> owner;
    for (const auto& g : groups)
        for (std::uint64_t i = 0; i < g.count; ++i) {
            src.push_back(Interval::one());
            owner.push_back(&g);
        }
    RoutingInstance inst(src, snk);
    for (std::size_t v = 0; v < src.size(); ++v)
        for (std::size_t u = 0; u < atoms.size(); ++u)
            if (std::find(owner[v]->candidates.begin(), owner[v]->candidates.end(), atoms[u].symbol) !=
                owner[v]->candidates.end())
                inst.allow(v, u);
    return witness_exists_basic(inst).has_value();
}

bool exhaustive_path(const Rbe& def, std::size_t dimension, const std::vector<Group>& groups,
                     const ValidationOptions& opts) {
    std::uint64_t choices = 1;
    for (const auto& g : groups) choices = sat_mul(choices, compositions(g.count, g.candidates.size()));
    if (choices > opts.choice_cap)
        throw BudgetExceeded("node has " + (choices == UINT64_MAX ? std::string("too many") : std::to_string(choices)) +
                             " type choices, above the cap of " + std::to_string(opts.choice_cap));
    Bag bag(std::max(dimension, def.alphabet_bound()));
    // Distribute each group's count over its candidates, depth first.
    auto rec = [&](auto&& self, std::size_t gi, std::size_t ci, std::uint64_t left) -> bool {
        if (gi == groups.size()) return bag_matches(def, bag);
        const auto& g = groups[gi];
        Symbol a = g.candidates[ci];
        if (ci + 1 == g.candidates.size()) {
            bag.add(a, left);
            bool r = self(self, gi + 1, 0, groups.size() > gi + 1 ? groups[gi + 1].count : 0);
            bag.set(a, bag.count(a) - left);
            return r;
        }
        for (std::uint64_t k = 0; k <= left; ++k) {
            bag.add(a, k);
            bool r = self(self, gi, ci + 1, left - k);
            bag.set(a, bag.count(a) - k);
            if (r) return true;
        }
        return false;
    };
    if (groups.empty()) return bag_matches(def, bag);
    return rec(rec, 0, 0, groups[0].count);
}

bool formula_path(const Rbe& def, std::size_t dimension, const std::vector<Group>& groups, std::uint64_t width) {
    VarPool pool;
    std::vector<Var> x;
    for (std::size_t a = 0; a < dimension; ++a) x.push_back(pool.fresh("x" + std::to_string(a)));
    Var n = pool.fresh("n");
    std::vector<PaFormula> cs;
    std::vector<Var> bound = x;
    std::vector<LinearTerm> sums(dimension);
    for (std::size_t gi = 0; gi < groups.size(); ++gi) {
        LinearTerm total;
        for (auto a : groups[gi].candidates) {
            Var y = pool.fresh("y" + std::to_string(gi) + "_" + std::to_string(a));
            bound.push_back(y);
            total += LinearTerm::var(y);
            sums[a] += LinearTerm::var(y);
        }
        cs.push_back(PaFormula::eq(total, LinearTerm::lit(static_cast<std::int64_t>(groups[gi].count))));
    }
    for (std::size_t a = 0; a < dimension; ++a) cs.push_back(PaFormula::eq(LinearTerm::var(x[a]), sums[a]));
    cs.push_back(presburger_of(def, pool, x, n));
    PaFormula phi = PaFormula::exists(bound, PaFormula::conj(std::move(cs)));
    Assignment values(pool.size());
    values[n] = 1;
    Truth t = pa_eval_bounded(phi, values, width * std::max<std::size_t>(1, def.size()));
    if (t == Truth::unknown) throw BudgetExceeded("formula check hit its enumeration cap");
    return t == Truth::yes;
}

} // namespace

bool satisfies(const CompiledSchema& cs, const std::vector<CEdge>& out, const Typing& t, TypeId ty,
               const ValidationOptions& opts) {
    const Schema& s = *cs.schema;
    // Per-label count check against an over-approximation of δ(ty).
    std::vector<std::uint64_t> per_label(cs.atoms_by_label.size(), 0);
    std::uint64_t width = 0;
    for (const auto& e : out) {
        if (e.count == 0) continue;
        if (e.label == no_label) return false;
        per_label[e.label] += e.count;
        width += e.count;
    }
    const auto& ranges = cs.label_ranges[ty];
    for (std::size_t l = 0; l < per_label.size(); ++l)
        if (per_label[l] < ranges[l].lo || per_label[l] > ranges[l].hi) return false;

    // Group edges by candidate atom set; an empty set makes the node fail.
    std::map<std::vector<Symbol>, std::uint64_t> grouped;
    for (const auto& e : out) {
        if (e.count == 0) continue;
        std::vector<Symbol> cand;
        for (auto a : cs.atoms_by_label[e.label])
            if (t.contains(e.target, s.atoms()[a].type)) cand.push_back(a);
        if (cand.empty()) return false;
        grouped[cand] += e.count;
    }
    std::vector<Group> groups;
    for (auto& [c, k] : grouped) groups.push_back({c, k});

    using M = ValidationOptions::Method;
    const auto& atoms = cs.rbe0[ty];
    if (opts.method == M::flow) {
        if (!atoms) throw PreconditionError("flow check needs an RBE0 definition");
        return flow_path(*atoms, groups);
    }
    if (opts.method == M::exhaustive) return exhaustive_path(s.def(ty), s.atoms().size(), groups, opts);
    if (width <= opts.expand_width) {
        if (atoms) return flow_path(*atoms, groups);
        return exhaustive_path(s.def(ty), s.atoms().size(), groups, opts);
    }
    return formula_path(s.def(ty), s.atoms().size(), groups, width);
}

} // namespace detail

namespace {

void require_kind(const Graph& g) {
    if (!g.is_simple() && !g.is_compressed()) throw PreconditionError("validation needs a simple or compressed graph");
}

} // namespace

Signature signature(const Graph& g, const Schema& s, const Typing& t, NodeId n) {
    if (n >= g.node_count()) throw Error("unknown node");
    Signature sig;
    std::map<std::pair<std::string, TypeId>, Symbol> ids;
    std::vector<Rbe> factors;
    for (auto e : g.out(n)) {
        const auto& ed = g.edge(e);
        std::vector<Rbe> alts;
        t.types(ed.target).for_each([&](std::size_t ty) {
            auto [it, fresh] = ids.emplace(std::make_pair(ed.label, ty), static_cast<Symbol>(sig.symbols.size()));
            if (fresh) sig.symbols.push_back(ed.label + "::" + s.type_name(ty));
            alts.push_back(Rbe::symbol(it->second));
        });
        Rbe f = Rbe::disj_all(alts);
        if (ed.occur != Interval::one()) f = Rbe::repeat(f, ed.occur);
        factors.push_back(f);
    }
    sig.expr = Rbe::concat_all(factors);
    return sig;
}

bool satisfies_type(const Graph& g, const Schema& s, const Typing& t, NodeId n, TypeId ty,
                    const ValidationOptions& opts) {
    require_kind(g);
    if (n >= g.node_count()) throw Error("unknown node");
    if (ty >= s.type_count()) throw Error("unknown type");
    auto cs = detail::compile(s);
    return detail::satisfies(cs, detail::compile_out(g, cs, n), t, ty, opts);
}

Typing max_typing(const Graph& g, const Schema& s, const ValidationOptions& opts) {
    require_kind(g);
    auto cs = detail::compile(s);
    std::vector<std::vector<detail::CEdge>> outs;
    for (NodeId n = 0; n < g.node_count(); ++n) outs.push_back(detail::compile_out(g, cs, n));
    Typing cur(g.node_count(), s.type_count(), true);
    unsigned jobs = std::max(1u, opts.jobs);
    for (bool changed = true; changed;) {
        Typing next = cur;
        auto refine = [&](NodeId lo, NodeId hi) {
            for (NodeId n = lo; n < hi; ++n)
                cur.types(n).for_each([&](std::size_t ty) {
                    if (!detail::satisfies(cs, outs[n], cur, ty, opts)) next.remove(n, ty);
                });
        };
        if (jobs == 1 || g.node_count() < 2 * jobs) {
            refine(0, g.node_count());
        } else {
            // Each worker writes only its own nodes of `next`; `cur` is read-only.
            std::vector<std::thread> pool;
            std::vector<std::exception_ptr> errors(jobs);
            std::size_t chunk = (g.node_count() + jobs - 1) / jobs;
            for (unsigned j = 0; j < jobs; ++j)
                pool.emplace_back([&, j] {
                    try {
                        refine(std::min(g.node_count(), j * chunk), std::min(g.node_count(), (j + 1) * chunk));
                    } catch (...) {
                        errors[j] = std::current_exception();
                    }
                });
            for (auto& th : pool) th.join();
            for (auto& e : errors)
                if (e) std::rethrow_exception(e);
        }
        changed = !(next == cur);
        cur = std::move(next);
    }
    return cur;
}

bool validates(const Graph& g, const Schema& s, const ValidationOptions& opts) {
    return max_typing(g, s, opts).total();
}

std::string typing_dump(const Graph& g, const Schema& s, const Typing& t) {
    std::string out;
    for (NodeId n = 0; n < g.node_count(); ++n) {
        out += g.name(n) + "\t";
        bool first = true;
        t.types(n).for_each([&](std::size_t ty) {
            if (!first) out += ",";
            first = false;
            out += s.type_name(ty);
        });
        out += "\n";
    }
    return out;
}

} // namespace shexc
