// Copyright (c) shexc contributors.
// SPDX-License-Identifier: Apache-2.0
#include "shexc/routing.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <tuple>
#include <stdexcept>

#include "shexc/error.hpp"

namespace shexc {

bool RoutingInstance::basic() const {
    auto b = [](const Interval& i) { return i.basic(); };
    return std::all_of(sources.begin(), sources.end(), b) && std::all_of(sinks.begin(), sinks.end(), b);
}

bool routing_valid(const RoutingInstance& inst, const Routing& r) {
    if (r.size() != inst.sources.size()) return false;
    std::vector<Interval::Bound> lo(inst.sinks.size(), 0), hi(inst.sinks.size(), 0);
    for (std::size_t v = 0; v < r.size(); ++v) {
        auto u = r[v];
        if (u >= inst.sinks.size() || !inst.allowed[v][u]) return false;
        lo[u] = lo[u] > Interval::inf - inst.sources[v].min() ? Interval::inf : lo[u] + inst.sources[v].min();
        hi[u] = hi[u] > Interval::inf - inst.sources[v].max() ? Interval::inf : hi[u] + inst.sources[v].max();
    }
    for (std::size_t u = 0; u < inst.sinks.size(); ++u) {
        const auto& s = inst.sinks[u];
        if (lo[u] < s.min()) return false;
        if (!s.unbounded() && hi[u] > s.max()) return false;
    }
    return true;
}

namespace {

constexpr std::size_t none = static_cast<std::size_t>(-1);

// Unit-capacity sinks (max 1) take at most one source; sinks with min 1 need
// one source with min 1. Sources of max ∞ never go to a max-1 sink.
class BasicRouter {
  public:
    explicit BasicRouter(const RoutingInstance& inst)
        : in_(inst), nv_(inst.sources.size()), nu_(inst.sinks.size()), adm_(nv_), lambda_(nv_, none),
          load_(nu_, 0), minload_(nu_, 0) {
        for (std::size_t v = 0; v < nv_; ++v)
            for (std::size_t u = 0; u < nu_; ++u)
                if (inst.allowed[v][u] && !(src(v).unbounded() && snk(u).max() == 1)) adm_[v].push_back(u);
    }

    std::optional<Routing> run() {
        for (std::size_t v = 0; v < nv_; ++v)
            if (adm_[v].empty()) return std::nullopt;
        // Capacity phase.
        for (std::size_t v = 0; v < nv_; ++v) {
            assign(v, adm_[v].front());
            auto u = lambda_[v];
            if (overflow(u) && !push_forth(u, false)) return std::nullopt;
        }
        // Deficit phase.
        std::size_t deficits = count_deficits();
        while (deficits > 0) {
            std::size_t u0 = 0;
            while (!deficit(u0)) ++u0;
            if (!pull_back(u0)) return std::nullopt;
            if (overflow(u0) && !push_forth(u0, true)) return std::nullopt;
            std::size_t now = count_deficits();
            if (now >= deficits) throw std::logic_error("routing: deficit count did not decrease");
            deficits = now;
        }
        Routing r(lambda_.begin(), lambda_.end());
        if (!routing_valid(in_, r)) throw std::logic_error("routing: produced an invalid routing");
        return r;
    }

  private:
    const Interval& src(std::size_t v) const { return in_.sources[v]; }
    const Interval& snk(std::size_t u) const { return in_.sinks[u]; }
    bool overflow(std::size_t u) const { return snk(u).max() == 1 && load_[u] > 1; }
    bool deficit(std::size_t u) const { return snk(u).min() == 1 && minload_[u] == 0; }
    std::size_t count_deficits() const {
        std::size_t c = 0;
        for (std::size_t u = 0; u < nu_; ++u) c += deficit(u) ? 1 : 0;
        return c;
    }
    bool admissible(std::size_t v, std::size_t u) const {
        return std::find(adm_[v].begin(), adm_[v].end(), u) != adm_[v].end();
    }
    void assign(std::size_t v, std::size_t u) {
        if (lambda_[v] != none) {
            --load_[lambda_[v]];
            if (src(v).min() == 1) --minload_[lambda_[v]];
        }
        lambda_[v] = u;
        ++load_[u];
        if (src(v).min() == 1) ++minload_[u];
    }

    // Moves one source out of the overflowing sink u0 along a shortest path
    // to a sink with spare capacity. With deficit_free set, a min-1 source is
    // never taken out of a min-1 sink.
    bool push_forth(std::size_t u0, bool deficit_free) {
        std::vector<std::size_t> via_src(nu_, none), via_snk(nv_, none);
        std::vector<bool> seen_u(nu_, false), seen_v(nv_, false);
        std::deque<std::size_t> q{u0};
        seen_u[u0] = true;
        while (!q.empty()) {
            auto u = q.front();
            q.pop_front();
            if (u != u0 && (snk(u).unbounded() || load_[u] == 0)) {
                // Unwind: u <- v <- u' <- ... <- u0.
                while (u != u0) {
                    auto v = via_src[u];
                    auto prev = via_snk[v];
                    assign(v, u);
                    u = prev;
                }
                return true;
            }
            // u -> v: only saturated unit sinks hand sources on.
            if (snk(u).max() != 1 || load_[u] == 0) continue;
            for (std::size_t v = 0; v < nv_; ++v) {
                if (lambda_[v] != u || seen_v[v]) continue;
                if (deficit_free && snk(u).min() == 1 && src(v).min() == 1) continue;
                seen_v[v] = true;
                via_snk[v] = u;
                for (auto w : adm_[v]) {
                    if (w == u || seen_u[w]) continue;
                    seen_u[w] = true;
                    via_src[w] = v;
                    q.push_back(w);
                }
            }
        }
        return false;
    }

    // Brings one min-1 source into the deficit sink u0, shifting a chain of
    // min-1 sources until one leaves a sink that can spare it.
    bool pull_back(std::size_t u0) {
        std::vector<std::size_t> into(nv_, none), from(nu_, none);
        std::vector<bool> seen_u(nu_, false), seen_v(nv_, false);
        std::deque<std::size_t> q{u0};
        seen_u[u0] = true;
        while (!q.empty()) {
            auto u = q.front();
            q.pop_front();
            for (std::size_t v = 0; v < nv_; ++v) {
                if (seen_v[v] || lambda_[v] == u || src(v).min() != 1 || !admissible(v, u)) continue;
                seen_v[v] = true;
                into[v] = u;
                auto home = lambda_[v];
                if (snk(home).min() == 0 || minload_[home] >= 2) {
                    // v -> fin. Each source on the path moves to the sink it was reached from.
                    for (std::size_t cur = v;;) {
                        auto target = into[cur];
                        assign(cur, target);
                        if (target == u0) break;
                        cur = from[target];
                    }
                    return true;
                }
                if (!seen_u[home]) {
                    seen_u[home] = true;
                    from[home] = v;
                    q.push_back(home);
                }
            }
        }
        return false;
    }

    const RoutingInstance& in_;
    std::size_t nv_, nu_;
    std::vector<std::vector<std::size_t>> adm_;
    std::vector<std::size_t> lambda_;
    std::vector<std::size_t> load_, minload_;
};

} // namespace

std::optional<Routing> witness_exists_basic(const RoutingInstance& inst) {
    if (!inst.basic()) throw PreconditionError("basic routing needs basic intervals");
    return BasicRouter(inst).run();
}

namespace {

class Backtracker {
  public:
    Backtracker(const RoutingInstance& inst, const RoutingLimits& limits)
        : in_(inst), limits_(limits), nv_(inst.sources.size()), nu_(inst.sinks.size()), adm_(nv_),
          lo_(nu_, 0), hi_(nu_, 0), pot_(nu_, 0), r_(nv_, none) {
        for (std::size_t v = 0; v < nv_; ++v)
            for (std::size_t u = 0; u < nu_; ++u)
                if (inst.allowed[v][u] && fits(inst.sources[v].max(), inst.sinks[u])) {
                    adm_[v].push_back(u);
                    pot_[u] = sat(pot_[u], inst.sources[v].min());
                }
        order_.resize(nv_);
        std::iota(order_.begin(), order_.end(), 0);
        // Sources with equal intervals and equal sink lists are interchangeable;
        // keep them adjacent and give them non-decreasing choices.
        auto key = [&](std::size_t v) {
            return std::tuple<std::size_t, const std::vector<std::size_t>&, Interval::Bound, Interval::Bound>(
                adm_[v].size(), adm_[v], inst.sources[v].min(), inst.sources[v].max());
        };
        std::stable_sort(order_.begin(), order_.end(), [&](std::size_t a, std::size_t b) { return key(a) < key(b); });
        twin_.assign(nv_, false);
        for (std::size_t i = 1; i < nv_; ++i) twin_[i] = key(order_[i]) == key(order_[i - 1]);
        pick_.assign(nv_, 0);
    }

    std::optional<Routing> run() {
        for (std::size_t v = 0; v < nv_; ++v)
            if (adm_[v].empty()) return std::nullopt;
        if (!residual_ok()) return std::nullopt;
        if (!rec(0)) return std::nullopt;
        return r_;
    }

  private:
    static Interval::Bound sat(Interval::Bound a, Interval::Bound b) {
        return a > Interval::inf - b ? Interval::inf : a + b;
    }
    static bool fits(Interval::Bound max, const Interval& u) { return u.unbounded() || max <= u.max(); }

    bool residual_ok() const {
        for (std::size_t u = 0; u < nu_; ++u)
            if (sat(lo_[u], pot_[u]) < in_.sinks[u].min()) return false;
        return true;
    }

    bool rec(std::size_t i) {
        if (++nodes_ > limits_.node_budget) throw BudgetExceeded("routing search exceeded its node budget");
        if (i == nv_) return true;  // pruning already enforced both bounds
        auto v = order_[i];
        const auto& s = in_.sources[v];
        for (auto u : adm_[v]) pot_[u] -= s.min();
        for (std::size_t j = twin_[i] ? pick_[i - 1] : 0; j < adm_[v].size(); ++j) {
            auto u = adm_[v][j];
            pick_[i] = j;
            auto nhi = sat(hi_[u], s.max());
            if (!fits(nhi, in_.sinks[u])) continue;
            auto old_lo = lo_[u], old_hi = hi_[u];
            lo_[u] = sat(lo_[u], s.min());
            hi_[u] = nhi;
            r_[v] = u;
            if (residual_ok() && rec(i + 1)) return true;
            lo_[u] = old_lo;
            hi_[u] = old_hi;
        }
        r_[v] = none;
        for (auto u : adm_[v]) pot_[u] += s.min();
        return false;
    }

    const RoutingInstance& in_;
    RoutingLimits limits_;
    std::size_t nv_, nu_;
    std::vector<std::vector<std::size_t>> adm_;
    std::vector<Interval::Bound> lo_, hi_, pot_;
    std::vector<std::size_t> order_, pick_;
    std::vector<bool> twin_;
    Routing r_;
    std::uint64_t nodes_ = 0;
};

} // namespace

std::optional<Routing> witness_exists_general(const RoutingInstance& inst, const RoutingLimits& limits) {
    return Backtracker(inst, limits).run();
}

std::optional<Routing> find_routing(const RoutingInstance& inst, const RoutingLimits& limits) {
    if (inst.basic()) return witness_exists_basic(inst);
    return witness_exists_general(inst, limits);
}

} // namespace shexc
