// Copyright (c) shexc contributors.
// SPDX-License-Identifier: Apache-2.0
#include <algorithm>
#include <array>
#include <atomic>
#include <chrono>
#include <exception>
#include <map>
#include <stdexcept>
#include <thread>

#include "shexc/canonical.hpp"
#include "shexc/containment.hpp"
#include "shexc/error.hpp"
#include "validation_impl.hpp"

namespace shexc {

std::string_view to_string(ContainmentVerdict::Kind k) {
    switch (k) {
    case ContainmentVerdict::Kind::contained: return "contained";
    case ContainmentVerdict::Kind::not_contained: return "not-contained";
    case ContainmentVerdict::Kind::unknown: return "unknown";
    }
    return "?";
}

namespace {

using Clock = std::chrono::steady_clock;

struct TimedOut {};

struct Found {
    std::uint64_t card = 0;
    std::string code;
    Graph graph;
    bool better_than(const Found& o) const { return card < o.card || (card == o.card && code < o.code); }
};

// Candidate type set for a node, with the per-label count range it implies.
struct Guess {
    TypeSet types;
    std::vector<SymbolRange> range;  // per H label
    std::vector<bool> reachable_by;  // per H label: some atom l::t with t in types
};

// Generates rooted compressed graphs in BFS order. Every node carries a
// guessed H-typing; a node's out-edges are fixed when it is processed and
// the guess is checked there, so each complete graph arrives with a
// consistent typing. Complete graphs with that typing maximal and a root
// outside K's typing are counter-examples.
class Enumerator {
  public:
    Enumerator(const Schema& h, const Schema& k, const detail::CompiledSchema& cs, const std::vector<Guess>& guesses,
               const SearchBudget& b, Clock::time_point deadline, const std::atomic<bool>& stop, unsigned part,
               unsigned parts)
        : h_(h), k_(k), cs_(cs), csk_(detail::compile(k)), guesses_(guesses), b_(b), deadline_(deadline),
          stop_(stop), part_(part), parts_(parts) {
        for (const auto& [l, id] : cs_.label_id) {
            if (by_id_.size() <= id) by_id_.resize(id + 1);
            by_id_[id] = l;
        }
        // H labels as K label ids; labels K does not know stay no_label.
        for (const auto& l : by_id_) to_k_.push_back(csk_.label(l));
    }

    // Throws TimedOut.
    void level(std::size_t n) {
        n_ = n;
        root_branch_ = 0;
        typing_ = Typing(n, h_.type_count());
        for (std::size_t gi = 0; gi < guesses_.size(); ++gi) {
            nodes_.clear();
            add_node(gi);
            process(0);
        }
    }

    std::optional<Found> best;
    std::uint64_t candidates = 0, expansions = 0;

  private:
    struct SNode {
        std::size_t guess;
        std::vector<detail::CEdge> out;
    };

    const TypeSet& types(NodeId v) const { return guesses_[nodes_[v].guess].types; }
    void add_node(std::size_t gi) {
        typing_.types(nodes_.size()) = guesses_[gi].types;
        nodes_.push_back({gi, {}});
    }

    void tick() {
        ++expansions;
        if ((++polls_ & 255) == 0 && (stop_.load(std::memory_order_relaxed) || Clock::now() >= deadline_))
            throw TimedOut{};
    }

    void process(std::size_t i) {
        if (i == nodes_.size()) {
            if (nodes_.size() == n_) complete();
            return;
        }
        labels(i, 0);
    }

    // Chooses node i's edges for label li and onwards.
    void labels(std::size_t i, std::size_t li) {
        if (li == cs_.atoms_by_label.size()) {
            // Root configurations are dealt round-robin to the workers; only
            // the owner counts one, so the totals do not depend on the split.
            if (i == 0 && root_branch_++ % parts_ != part_) {
                if ((++polls_ & 255) == 0 && stop_.load(std::memory_order_relaxed)) throw TimedOut{};
                return;
            }
            tick();
            if (!locally_consistent(i)) return;
            process(i + 1);
            return;
        }
        const auto& r = guesses_[nodes_[i].guess].range[li];
        if (r.hi == 0) {
            labels(i, li + 1);
            return;
        }
        existing(i, li, 0, 0);
    }

    // Edges with label li to existing nodes j, j+1, ...
    void existing(std::size_t i, std::size_t li, NodeId j, std::uint64_t total) {
        const auto& r = guesses_[nodes_[i].guess].range[li];
        if (j == nodes_.size()) {
            fresh(i, li, total, 0, 1);
            return;
        }
        existing(i, li, j + 1, total);
        if (!guesses_[nodes_[j].guess].reachable_by[li]) return;
        // nodes_ may grow below, so no reference into it is held across calls.
        for (std::uint64_t c = 1; c <= b_.max_card && total + c <= r.hi; ++c) {
            nodes_[i].out.push_back({static_cast<std::uint32_t>(li), j, c});
            existing(i, li, j + 1, total + c);
            nodes_[i].out.pop_back();
        }
    }

    // New children with label li; descriptors (guess, card) are nondecreasing.
    void fresh(std::size_t i, std::size_t li, std::uint64_t total, std::size_t min_guess, std::uint64_t min_card) {
        const auto& r = guesses_[nodes_[i].guess].range[li];
        if (total >= r.lo) labels(i, li + 1);
        if (nodes_.size() >= n_) return;
        for (std::size_t gi = min_guess; gi < guesses_.size(); ++gi) {
            if (!guesses_[gi].reachable_by[li]) continue;
            for (std::uint64_t c = gi == min_guess ? min_card : 1; c <= b_.max_card && total + c <= r.hi; ++c) {
                NodeId v = nodes_.size();
                add_node(gi);
                nodes_[i].out.push_back({static_cast<std::uint32_t>(li), v, c});
                fresh(i, li, total + c, gi, c);
                nodes_[i].out.pop_back();
                nodes_.pop_back();
            }
        }
    }

    // Slots past nodes_.size() may hold stale guesses; no edge points there.
    // The answer depends only on the guesses at both ends, labels and counts,
    // so it is cached under that key.
    bool locally_consistent(std::size_t i) {
        std::vector<std::array<std::uint64_t, 3>> items;
        for (const auto& e : nodes_[i].out) items.push_back({e.label, nodes_[e.target].guess, e.count});
        std::sort(items.begin(), items.end());
        key_.assign(1, nodes_[i].guess);
        for (const auto& it : items) key_.insert(key_.end(), it.begin(), it.end());
        auto [it, fresh] = memo_.try_emplace(key_, false);
        if (!fresh) return it->second;
        bool ok = true;
        for (TypeId ty = 0; ty < h_.type_count() && ok; ++ty)
            ok = detail::satisfies(cs_, nodes_[i].out, typing_, ty, opts_) == types(i).test(ty);
        it->second = ok;
        return ok;
    }

    // Greatest fixpoint typing over the current nodes, as in max_typing.
    Typing refine(const detail::CompiledSchema& cs, const std::vector<std::vector<detail::CEdge>>& outs) const {
        const std::size_t types = cs.schema->type_count();
        Typing cur(outs.size(), types, true);
        for (bool changed = true; changed;) {
            changed = false;
            Typing next = cur;
            for (NodeId v = 0; v < outs.size(); ++v)
                cur.types(v).for_each([&](std::size_t ty) {
                    if (!detail::satisfies(cs, outs[v], cur, ty, opts_)) {
                        next.remove(v, ty);
                        changed = true;
                    }
                });
            cur = std::move(next);
        }
        return cur;
    }

    void complete() {
        ++candidates;
        std::vector<std::vector<detail::CEdge>> outs_h, outs_k;
        for (const auto& v : nodes_) {
            outs_h.push_back(v.out);
            outs_k.push_back(v.out);
            for (auto& e : outs_k.back()) e.label = to_k_[e.label];
        }
        // The guessed typing is a fixpoint; keep only graphs where it is the largest one.
        auto th = refine(cs_, outs_h);
        for (NodeId v = 0; v < nodes_.size(); ++v)
            if (!(th.types(v) == types(v))) return;
        if (refine(csk_, outs_k).types(0).any()) return;
        Graph g;
        for (NodeId v = 0; v < nodes_.size(); ++v) g.add_node("n" + std::to_string(v));
        std::uint64_t card = 0;
        for (NodeId v = 0; v < nodes_.size(); ++v)
            for (const auto& e : nodes_[v].out) {
                g.add_edge(v, by_id_[e.label], e.target, Interval::exactly(e.count));
                card += e.count;
            }
        if (best && best->card < card) return;
        Found f{card, canonical_form(g).code, g};
        if (!best || f.better_than(*best)) best = std::move(f);
    }

    const Schema& h_;
    const Schema& k_;
    const detail::CompiledSchema& cs_;
    detail::CompiledSchema csk_;
    std::vector<std::string> by_id_;
    std::vector<std::uint32_t> to_k_;
    const std::vector<Guess>& guesses_;
    SearchBudget b_;
    Clock::time_point deadline_;
    const std::atomic<bool>& stop_;
    unsigned part_, parts_;
    ValidationOptions opts_;
    std::size_t n_ = 0;
    std::uint64_t root_branch_ = 0;
    std::uint64_t polls_ = 0;
    std::vector<SNode> nodes_;
    Typing typing_;
    std::vector<std::uint64_t> key_;
    std::map<std::vector<std::uint64_t>, bool> memo_;
};

std::vector<Guess> make_guesses(const Schema& h, const detail::CompiledSchema& cs) {
    const std::size_t t = h.type_count();
    if (t > 16) throw PreconditionError("counter-example search supports at most 16 types in the first schema");
    const std::size_t labels = cs.atoms_by_label.size();
    std::vector<Guess> out;
    for (std::uint64_t mask = 1; mask < (1ULL << t); ++mask) {
        Guess g{TypeSet(t), std::vector<SymbolRange>(labels, SymbolRange{0, Interval::inf}),
                std::vector<bool>(labels, false)};
        bool ok = true;
        for (TypeId ty = 0; ty < t; ++ty) {
            if (!(mask >> ty & 1)) continue;
            g.types.set(ty);
            for (std::size_t l = 0; l < labels; ++l) {
                g.range[l].lo = std::max(g.range[l].lo, cs.label_ranges[ty][l].lo);
                g.range[l].hi = std::min(g.range[l].hi, cs.label_ranges[ty][l].hi);
                ok = ok && g.range[l].lo <= g.range[l].hi;
            }
        }
        if (!ok) continue;
        for (Symbol a = 0; a < h.atoms().size(); ++a)
            if (g.types.test(h.atoms()[a].type)) g.reachable_by[cs.atom_label[a]] = true;
        out.push_back(std::move(g));
    }
    return out;
}

} // namespace

ContainmentVerdict find_counterexample(const Schema& h, const Schema& k, const SearchBudget& budget) {
    if (budget.max_nodes == 0 || budget.max_card == 0)
        throw PreconditionError("search budget needs max_nodes and max_card of at least 1");
    const auto start = Clock::now();
    const auto deadline = start + std::chrono::duration_cast<Clock::duration>(
                                      std::chrono::duration<double>(std::max(0.0, budget.timeout_seconds)));
    auto cs = detail::compile(h);
    auto guesses = make_guesses(h, cs);
    const unsigned parts = std::max(1u, budget.jobs);

    ContainmentVerdict v;
    std::optional<Found> best;
    std::atomic<bool> stop{false};
    for (std::size_t n = 1; n <= budget.max_nodes && !best && !v.stats.timed_out; ++n) {
        std::vector<Enumerator> workers;
        for (unsigned p = 0; p < parts; ++p) workers.emplace_back(h, k, cs, guesses, budget, deadline, stop, p, parts);
        std::vector<std::exception_ptr> errors(parts);
        std::vector<char> timed(parts, 0);
        auto run = [&](unsigned p) {
            try {
                workers[p].level(n);
            } catch (const TimedOut&) {
                timed[p] = 1;
                stop = true;
            } catch (...) {
                errors[p] = std::current_exception();
                stop = true;
            }
        };
        if (parts == 1) {
            run(0);
        } else {
            std::vector<std::thread> pool;
            for (unsigned p = 0; p < parts; ++p) pool.emplace_back(run, p);
            for (auto& t : pool) t.join();
        }
        for (auto& e : errors)
            if (e) std::rethrow_exception(e);
        for (auto& w : workers) {
            v.stats.candidates += w.candidates;
            v.stats.expansions += w.expansions;
            if (w.best && (!best || w.best->better_than(*best))) best = w.best;
        }
        if (std::find(timed.begin(), timed.end(), 1) != timed.end())
            v.stats.timed_out = true;
        else
            v.stats.levels_completed = n;
    }
    v.stats.seconds = std::chrono::duration<double>(Clock::now() - start).count();
    if (best) {
        if (!validates(best->graph, h) || validates(best->graph, k))
            throw std::logic_error("counter-example search produced a graph that does not separate the schemas");
        v.verdict = ContainmentVerdict::Kind::not_contained;
        v.witness = canonical_graph(best->graph);
        v.stats.minimal = !v.stats.timed_out;
    } else if (!v.stats.timed_out && budget.assume_complete) {
        v.verdict = ContainmentVerdict::Kind::contained;
    }
    return v;
}

} // namespace shexc
