// Copyright (c) shexc contributors.
// SPDX-License-Identifier: Apache-2.0
#include "shexc/presburger.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <set>
#include <sstream>

#include "shexc/error.hpp"

namespace shexc {

// ---------------------------------------------------------------------------
// Linear terms

LinearTerm LinearTerm::var(Var v, std::int64_t coef) {
    LinearTerm t;
    if (coef != 0) t.coeffs.emplace_back(v, coef);
    return t;
}

LinearTerm LinearTerm::lit(std::int64_t c) {
    LinearTerm t;
    t.constant = c;
    return t;
}

LinearTerm& LinearTerm::operator+=(const LinearTerm& o) {
    std::vector<std::pair<Var, std::int64_t>> merged;
    std::size_t i = 0, j = 0;
    while (i < coeffs.size() || j < o.coeffs.size()) {
        if (j == o.coeffs.size() || (i < coeffs.size() && coeffs[i].first < o.coeffs[j].first)) {
            merged.push_back(coeffs[i++]);
        } else if (i == coeffs.size() || o.coeffs[j].first < coeffs[i].first) {
            merged.push_back(o.coeffs[j++]);
        } else {
            auto c = coeffs[i].second + o.coeffs[j].second;
            if (c != 0) merged.emplace_back(coeffs[i].first, c);
            ++i, ++j;
        }
    }
    coeffs = std::move(merged);
    constant += o.constant;
    return *this;
}

LinearTerm& LinearTerm::operator*=(std::int64_t k) {
    if (k == 0) {
        coeffs.clear();
        constant = 0;
        return *this;
    }
    for (auto& [v, c] : coeffs) c *= k;
    constant *= k;
    return *this;
}

// ---------------------------------------------------------------------------
// Formulas

struct PaFormula::Node {
    Kind kind;
    LinearTerm term;
    std::vector<PaFormula> children;
    std::vector<Var> bound;
};

PaFormula PaFormula::top() { return PaFormula(std::make_shared<const Node>(Node{Kind::top, {}, {}, {}})); }
PaFormula PaFormula::bottom() { return PaFormula(std::make_shared<const Node>(Node{Kind::bottom, {}, {}, {}})); }

PaFormula PaFormula::eq(const LinearTerm& lhs, const LinearTerm& rhs) {
    LinearTerm t = lhs - rhs;
    if (t.coeffs.empty()) return t.constant == 0 ? top() : bottom();
    return PaFormula(std::make_shared<const Node>(Node{Kind::eq, std::move(t), {}, {}}));
}

PaFormula PaFormula::le(const LinearTerm& lhs, const LinearTerm& rhs) {
    LinearTerm t = lhs - rhs;
    if (t.coeffs.empty()) return t.constant <= 0 ? top() : bottom();
    return PaFormula(std::make_shared<const Node>(Node{Kind::le, std::move(t), {}, {}}));
}

PaFormula PaFormula::conj(std::vector<PaFormula> xs) {
    std::vector<PaFormula> flat;
    for (auto& x : xs) {
        if (x.kind() == Kind::bottom) return bottom();
        if (x.kind() == Kind::top) continue;
        if (x.kind() == Kind::conj)
            for (const auto& c : x.children()) flat.push_back(c);
        else
            flat.push_back(std::move(x));
    }
    if (flat.empty()) return top();
    if (flat.size() == 1) return flat.front();
    return PaFormula(std::make_shared<const Node>(Node{Kind::conj, {}, std::move(flat), {}}));
}

PaFormula PaFormula::disj(std::vector<PaFormula> xs) {
    std::vector<PaFormula> flat;
    for (auto& x : xs) {
        if (x.kind() == Kind::top) return top();
        if (x.kind() == Kind::bottom) continue;
        if (x.kind() == Kind::disj)
            for (const auto& c : x.children()) flat.push_back(c);
        else
            flat.push_back(std::move(x));
    }
    if (flat.empty()) return bottom();
    if (flat.size() == 1) return flat.front();
    return PaFormula(std::make_shared<const Node>(Node{Kind::disj, {}, std::move(flat), {}}));
}

PaFormula PaFormula::neg(PaFormula x) {
    if (x.kind() == Kind::top) return bottom();
    if (x.kind() == Kind::bottom) return top();
    return PaFormula(std::make_shared<const Node>(Node{Kind::neg, {}, {std::move(x)}, {}}));
}

PaFormula PaFormula::exists(std::vector<Var> vars, PaFormula body) {
    if (vars.empty() || body.kind() == Kind::top || body.kind() == Kind::bottom) return body;
    return PaFormula(std::make_shared<const Node>(Node{Kind::exists, {}, {std::move(body)}, std::move(vars)}));
}

PaFormula::Kind PaFormula::kind() const { return node_->kind; }
const LinearTerm& PaFormula::term() const { return node_->term; }
const std::vector<PaFormula>& PaFormula::children() const { return node_->children; }
const std::vector<Var>& PaFormula::bound() const { return node_->bound; }

namespace {
void collect_free(const PaFormula& f, std::set<Var>& bound, std::set<Var>& out) {
    switch (f.kind()) {
    case PaFormula::Kind::eq:
    case PaFormula::Kind::le:
        for (auto [v, c] : f.term().coeffs)
            if (!bound.contains(v)) out.insert(v);
        return;
    case PaFormula::Kind::exists: {
        std::vector<Var> added;
        for (auto v : f.bound())
            if (bound.insert(v).second) added.push_back(v);
        collect_free(f.children().front(), bound, out);
        for (auto v : added) bound.erase(v);
        return;
    }
    default:
        for (const auto& c : f.children()) collect_free(c, bound, out);
    }
}

Var max_var(const PaFormula& f) {
    Var m = 0;
    for (auto [v, c] : f.term().coeffs) m = std::max(m, v);
    for (auto v : f.bound()) m = std::max(m, v);
    for (const auto& c : f.children()) m = std::max(m, max_var(c));
    return m;
}
} // namespace

std::vector<Var> PaFormula::free_variables() const {
    std::set<Var> bound, out;
    collect_free(*this, bound, out);
    return {out.begin(), out.end()};
}

std::size_t PaFormula::size() const {
    std::size_t n = 1;
    for (const auto& c : children()) n += c.size();
    return n;
}

Var VarPool::fresh(const std::string& base) {
    std::string clean = base.empty() ? std::string("v") : base;
    // '|' and '\' cannot appear inside a quoted SMT-LIB symbol.
    std::replace(clean.begin(), clean.end(), '|', '_');
    std::replace(clean.begin(), clean.end(), '\\', '_');
    std::string name = clean;
    auto it = std::find_if(used_.begin(), used_.end(), [&](const auto& p) { return p.first == clean; });
    if (it == used_.end()) {
        used_.emplace_back(clean, 0);
        it = used_.end() - 1;
    }
    auto taken = [&](const std::string& s) { return std::find(names_.begin(), names_.end(), s) != names_.end(); };
    while (taken(name)) name = clean + "_" + std::to_string(++it->second);
    names_.push_back(name);
    return static_cast<Var>(names_.size() - 1);
}

// ---------------------------------------------------------------------------
// ψ construction

namespace {

PaFormula all_zero(const std::vector<Var>& x) {
    std::vector<PaFormula> cs;
    for (auto v : x) cs.push_back(PaFormula::eq(LinearTerm::var(v), LinearTerm::lit(0)));
    return PaFormula::conj(std::move(cs));
}

std::int64_t checked_coef(Interval::Bound b) {
    if (b > static_cast<Interval::Bound>(std::numeric_limits<std::int64_t>::max() / 2))
        throw PreconditionError("interval bound too large for a Presburger coefficient");
    return static_cast<std::int64_t>(b);
}

std::vector<Var> fresh_like(VarPool& pool, const std::vector<Var>& x) {
    std::vector<Var> r;
    for (auto v : x) r.push_back(pool.fresh(pool.name(v)));
    return r;
}

PaFormula build(const Rbe& e, VarPool& pool, const std::vector<Var>& x, Var n, bool under_repeat) {
    using K = Rbe::Kind;
    switch (e.kind()) {
    case K::empty:
        // L(empty)^0 = {ε}; no other power contains anything.
        return PaFormula::conj({PaFormula::eq(LinearTerm::var(n), LinearTerm::lit(0)), all_zero(x)});
    case K::epsilon: return all_zero(x);
    case K::symbol: {
        if (e.sym() >= x.size()) throw PreconditionError("symbol outside the formula's alphabet");
        std::vector<PaFormula> cs;
        for (std::size_t a = 0; a < x.size(); ++a)
            cs.push_back(a == e.sym() ? PaFormula::eq(LinearTerm::var(x[a]), LinearTerm::var(n))
                                      : PaFormula::eq(LinearTerm::var(x[a]), LinearTerm::lit(0)));
        return PaFormula::conj(std::move(cs));
    }
    case K::disj: {
        auto x1 = fresh_like(pool, x), x2 = fresh_like(pool, x);
        Var n1 = pool.fresh(pool.name(n)), n2 = pool.fresh(pool.name(n));
        std::vector<PaFormula> cs;
        cs.push_back(PaFormula::eq(LinearTerm::var(n), LinearTerm::var(n1) + LinearTerm::var(n2)));
        for (std::size_t a = 0; a < x.size(); ++a)
            cs.push_back(PaFormula::eq(LinearTerm::var(x[a]), LinearTerm::var(x1[a]) + LinearTerm::var(x2[a])));
        cs.push_back(build(e.left(), pool, x1, n1, under_repeat));
        cs.push_back(build(e.right(), pool, x2, n2, under_repeat));
        std::vector<Var> vs = x1;
        vs.insert(vs.end(), x2.begin(), x2.end());
        vs.push_back(n1);
        vs.push_back(n2);
        return PaFormula::exists(std::move(vs), PaFormula::conj(std::move(cs)));
    }
    case K::concat: {
        auto x1 = fresh_like(pool, x), x2 = fresh_like(pool, x);
        std::vector<PaFormula> cs;
        for (std::size_t a = 0; a < x.size(); ++a)
            cs.push_back(PaFormula::eq(LinearTerm::var(x[a]), LinearTerm::var(x1[a]) + LinearTerm::var(x2[a])));
        cs.push_back(build(e.left(), pool, x1, n, under_repeat));
        cs.push_back(build(e.right(), pool, x2, n, under_repeat));
        std::vector<Var> vs = x1;
        vs.insert(vs.end(), x2.begin(), x2.end());
        return PaFormula::exists(std::move(vs), PaFormula::conj(std::move(cs)));
    }
    case K::intersect:
        if (under_repeat) throw PreconditionError("intersection under a repetition has no exact formula here");
        return PaFormula::conj({build(e.left(), pool, x, n, false), build(e.right(), pool, x, n, false)});
    case K::repeat: {
        const Interval& iv = e.interval();
        const Rbe& body = e.left();
        Var m = pool.fresh("m");
        std::vector<PaFormula> cs;
        cs.push_back(PaFormula::le(LinearTerm::lit(1), LinearTerm::var(n)));
        if (!body.nullable() && iv.min() > 0)
            cs.push_back(PaFormula::le(LinearTerm::var(n, checked_coef(iv.min())), LinearTerm::var(m)));
        if (!iv.unbounded())
            cs.push_back(PaFormula::le(LinearTerm::var(m), LinearTerm::var(n, checked_coef(iv.max()))));
        LinearTerm total;
        for (auto v : x) total += LinearTerm::var(v);
        cs.push_back(PaFormula::le(LinearTerm::var(m), total));
        cs.push_back(build(body, pool, x, m, true));
        PaFormula zero = PaFormula::conj({PaFormula::eq(LinearTerm::var(n), LinearTerm::lit(0)), all_zero(x)});
        return PaFormula::disj({zero, PaFormula::exists({m}, PaFormula::conj(std::move(cs)))});
    }
    }
    return PaFormula::bottom();
}

} // namespace

PaFormula presburger_of(const Rbe& e, VarPool& vars, const std::vector<Var>& x, Var n) {
    return build(e, vars, x, n, false);
}

PsiFormula presburger_of(const Rbe& e, const std::vector<std::string>& alphabet) {
    if (e.alphabet_bound() > alphabet.size()) throw PreconditionError("expression uses symbols outside the alphabet");
    PsiFormula psi;
    psi.vars = std::make_shared<VarPool>();
    for (const auto& a : alphabet) psi.x.push_back(psi.vars->fresh("x_" + a));
    psi.n = psi.vars->fresh("n");
    psi.formula = build(e, *psi.vars, psi.x, psi.n, false);
    return psi;
}

// ---------------------------------------------------------------------------
// Bounded evaluation

std::string_view to_string(Truth t) {
    switch (t) {
    case Truth::no: return "false";
    case Truth::yes: return "true";
    case Truth::unknown: return "unknown";
    }
    return "unknown";
}

namespace {

using Env = std::vector<std::optional<std::int64_t>>;

struct Partial {
    __int128 constant = 0;  // assigned part plus the term's constant
    std::vector<std::pair<Var, std::int64_t>> open;
};

Partial partial(const LinearTerm& t, const Env& env) {
    Partial p;
    p.constant = t.constant;
    for (auto [v, c] : t.coeffs) {
        if (env[v])
            p.constant += static_cast<__int128>(c) * *env[v];
        else
            p.open.emplace_back(v, c);
    }
    return p;
}

class Evaluator {
  public:
    explicit Evaluator(std::uint64_t cap) : cap_(static_cast<std::int64_t>(std::min<std::uint64_t>(cap, 1ULL << 40))) {}

    Truth eval(const PaFormula& f, Env& env) {
        using K = PaFormula::Kind;
        switch (f.kind()) {
        case K::top: return Truth::yes;
        case K::bottom: return Truth::no;
        case K::eq:
        case K::le: {
            auto p = partial(f.term(), env);
            if (!p.open.empty()) throw PreconditionError("unassigned variable during evaluation");
            bool ok = f.kind() == K::eq ? p.constant == 0 : p.constant <= 0;
            return ok ? Truth::yes : Truth::no;
        }
        case K::conj: {
            Truth r = Truth::yes;
            for (const auto& c : f.children()) {
                Truth t = eval(c, env);
                if (t == Truth::no) return Truth::no;
                if (t == Truth::unknown) r = Truth::unknown;
            }
            return r;
        }
        case K::disj: {
            Truth r = Truth::no;
            for (const auto& c : f.children()) {
                Truth t = eval(c, env);
                if (t == Truth::yes) return Truth::yes;
                if (t == Truth::unknown) r = Truth::unknown;
            }
            return r;
        }
        case K::neg: {
            Truth t = eval(f.children().front(), env);
            return t == Truth::yes ? Truth::no : t == Truth::no ? Truth::yes : Truth::unknown;
        }
        case K::exists: {
            std::vector<Var> vars = f.bound();
            std::vector<std::optional<std::int64_t>> saved;
            for (auto v : vars) {
                saved.push_back(env[v]);
                env[v].reset();
            }
            const PaFormula& body = f.children().front();
            std::vector<const LinearTerm*> eqs, les;
            auto take = [&](const PaFormula& c) {
                if (c.kind() == K::eq) eqs.push_back(&c.term());
                if (c.kind() == K::le) les.push_back(&c.term());
            };
            if (body.kind() == K::conj)
                for (const auto& c : body.children()) take(c);
            else
                take(body);
            Truth r = search(body, vars, eqs, les, env);
            for (std::size_t i = 0; i < vars.size(); ++i) env[vars[i]] = saved[i];
            return r;
        }
        }
        return Truth::unknown;
    }

  private:
    // Definitive "no" if a fully assigned atom fails or an equation forces an
    // impossible value. Forced values are written into env (and recorded).
    bool propagate(const std::vector<const LinearTerm*>& eqs, const std::vector<const LinearTerm*>& les, Env& env,
                   std::vector<Var>& forced) {
        bool changed = true;
        while (changed) {
            changed = false;
            for (auto t : eqs) {
                auto p = partial(*t, env);
                if (p.open.empty()) {
                    if (p.constant != 0) return false;
                    continue;
                }
                if (p.open.size() == 1) {
                    auto [v, c] = p.open.front();
                    if (-p.constant % c != 0) return false;
                    __int128 val = -p.constant / c;
                    if (val < 0 || val > std::numeric_limits<std::int64_t>::max()) return false;
                    env[v] = static_cast<std::int64_t>(val);
                    forced.push_back(v);
                    changed = true;
                    continue;
                }
                // A sign-uniform equation with a non-matching constant is unsatisfiable.
                bool pos = true, neg = true;
                for (auto [v, c] : p.open) (c > 0 ? neg : pos) = false;
                if ((pos && p.constant > 0) || (neg && p.constant < 0)) return false;
            }
            for (auto t : les) {
                auto p = partial(*t, env);
                bool pos = true;
                for (auto [v, c] : p.open)
                    if (c < 0) pos = false;
                if (pos && p.constant > 0) return false;
            }
        }
        return true;
    }

    // Upper bound on v implied by `t <= 0` when every open coefficient is >= 0.
    static std::optional<__int128> upper_from(const Partial& p, Var v) {
        std::int64_t cv = 0;
        for (auto [u, c] : p.open) {
            if (c < 0) return std::nullopt;
            if (u == v) cv = c;
        }
        if (cv <= 0) return std::nullopt;
        __int128 rhs = -p.constant;
        return rhs < 0 ? __int128(-1) : rhs / cv;
    }
    // Lower bound on v from `t <= 0` with a negative coefficient on v and all
    // other open coefficients >= 0.
    static std::optional<__int128> lower_from(const Partial& p, Var v) {
        std::int64_t cv = 0;
        for (auto [u, c] : p.open) {
            if (u == v)
                cv = c;
            else if (c < 0)
                return std::nullopt;
        }
        if (cv >= 0) return std::nullopt;
        __int128 need = p.constant;  // |cv| * v >= constant + (others >= 0)
        if (need <= 0) return __int128(0);
        __int128 k = -static_cast<__int128>(cv);
        return (need + k - 1) / k;
    }

    Truth search(const PaFormula& body, const std::vector<Var>& vars, const std::vector<const LinearTerm*>& eqs,
                 const std::vector<const LinearTerm*>& les, Env& env) {
        std::vector<Var> forced;
        auto undo = [&] {
            for (auto v : forced) env[v].reset();
        };
        if (!propagate(eqs, les, env, forced)) {
            undo();
            return Truth::no;
        }
        // Pick the open variable with the tightest known range.
        std::optional<Var> best;
        __int128 best_lo = 0, best_hi = 0;
        bool best_bounded = false;
        for (auto v : vars) {
            if (env[v]) continue;
            __int128 lo = 0, hi = std::numeric_limits<__int128>::max();
            bool bounded = false;
            auto consider = [&](const Partial& p) {
                if (auto u = upper_from(p, v)) {
                    hi = std::min(hi, *u);
                    bounded = true;
                }
                if (auto l = lower_from(p, v)) lo = std::max(lo, *l);
            };
            for (auto t : les) consider(partial(*t, env));
            for (auto t : eqs) {
                auto p = partial(*t, env);
                consider(p);
                Partial q = p;
                q.constant = -q.constant;
                for (auto& [u, c] : q.open) c = -c;
                consider(q);
            }
            bool better = !best || (bounded && !best_bounded) ||
                          (bounded == best_bounded && bounded && hi - lo < best_hi - best_lo);
            if (better) {
                best = v;
                best_lo = lo;
                best_hi = hi;
                best_bounded = bounded;
            }
        }
        if (!best) {
            Truth t = eval(body, env);
            undo();
            return t;
        }
        if (best_bounded && best_hi < best_lo) {
            undo();
            return Truth::no;
        }
        bool complete = best_bounded && best_hi <= cap_;
        __int128 hi = complete ? best_hi : __int128(cap_);
        Truth r = complete ? Truth::no : Truth::unknown;
        for (__int128 val = best_lo; val <= hi; ++val) {
            env[*best] = static_cast<std::int64_t>(val);
            Truth t = search(body, vars, eqs, les, env);
            if (t == Truth::yes) {
                r = Truth::yes;
                break;
            }
            if (t == Truth::unknown) r = Truth::unknown;
        }
        env[*best].reset();
        undo();
        return r;
    }

    std::int64_t cap_;
};

} // namespace

Truth pa_eval_bounded(const PaFormula& phi, const Assignment& values, std::uint64_t cap) {
    for (auto v : phi.free_variables())
        if (v >= values.size() || !values[v]) throw PreconditionError("free variable " + std::to_string(v) + " is unassigned");
    Env env(std::max<std::size_t>(values.size(), static_cast<std::size_t>(max_var(phi)) + 1));
    std::copy(values.begin(), values.end(), env.begin());
    for (auto& v : env)
        if (v && *v < 0) throw PreconditionError("variables range over natural numbers");
    Evaluator ev(cap);
    return ev.eval(phi, env);
}

Truth pa_eval_bounded(const PsiFormula& psi, const Bag& w, std::int64_t n, std::uint64_t cap) {
    Assignment values(psi.vars->size());
    for (std::size_t a = 0; a < psi.x.size(); ++a) values[psi.x[a]] = static_cast<std::int64_t>(w.count(static_cast<Symbol>(a)));
    for (Symbol a = static_cast<Symbol>(psi.x.size()); a < w.dimension(); ++a)
        if (w.count(a) != 0) throw PreconditionError("bag uses a symbol outside the formula's alphabet");
    values[psi.n] = n;
    return pa_eval_bounded(psi.formula, values, cap);
}

// ---------------------------------------------------------------------------
// Export

namespace {

bool simple_symbol(const std::string& s) {
    if (s.empty() || std::isdigit(static_cast<unsigned char>(s[0]))) return false;
    for (char c : s) {
        if (std::isalnum(static_cast<unsigned char>(c))) continue;
        if (std::string_view("~!@$%^&*_-+=<>.?/").find(c) == std::string_view::npos) return false;
    }
    return true;
}

std::string symbol(const VarPool& vars, Var v) {
    const auto& n = vars.name(v);
    return simple_symbol(n) ? n : "|" + n + "|";
}

std::string side(const std::vector<std::pair<Var, std::int64_t>>& cs, std::int64_t constant, const VarPool& vars) {
    std::vector<std::string> parts;
    for (auto [v, c] : cs)
        parts.push_back(c == 1 ? symbol(vars, v) : "(* " + std::to_string(c) + " " + symbol(vars, v) + ")");
    if (constant != 0 || parts.empty()) parts.push_back(std::to_string(constant));
    if (parts.size() == 1) return parts.front();
    std::string s = "(+";
    for (const auto& p : parts) s += " " + p;
    return s + ")";
}

void render(const PaFormula& f, const VarPool& vars, std::string& out) {
    using K = PaFormula::Kind;
    switch (f.kind()) {
    case K::top: out += "true"; return;
    case K::bottom: out += "false"; return;
    case K::eq:
    case K::le: {
        // Positive coefficients on the left, negated negatives on the right.
        std::vector<std::pair<Var, std::int64_t>> l, r;
        for (auto [v, c] : f.term().coeffs) (c > 0 ? l : r).emplace_back(v, c > 0 ? c : -c);
        std::int64_t lc = 0, rc = 0;
        (f.term().constant > 0 ? lc : rc) = f.term().constant > 0 ? f.term().constant : -f.term().constant;
        out += f.kind() == K::eq ? "(= " : "(<= ";
        out += side(l, lc, vars) + " " + side(r, rc, vars) + ")";
        return;
    }
    case K::conj:
    case K::disj:
        out += f.kind() == K::conj ? "(and" : "(or";
        for (const auto& c : f.children()) {
            out += ' ';
            render(c, vars, out);
        }
        out += ')';
        return;
    case K::neg:
        out += "(not ";
        render(f.children().front(), vars, out);
        out += ')';
        return;
    case K::exists:
        out += "(exists (";
        for (std::size_t i = 0; i < f.bound().size(); ++i) {
            if (i) out += ' ';
            out += "(" + symbol(vars, f.bound()[i]) + " Int)";
        }
        out += ") (and";
        for (auto v : f.bound()) out += " (<= 0 " + symbol(vars, v) + ")";
        out += ' ';
        render(f.children().front(), vars, out);
        out += "))";
        return;
    }
}

} // namespace

std::string to_sexpr(const PaFormula& phi, const VarPool& vars) {
    std::string out;
    render(phi, vars, out);
    return out;
}

std::string to_smtlib(const PaFormula& phi, const VarPool& vars) {
    std::ostringstream out;
    out << "(set-logic LIA)\n";
    auto free = phi.free_variables();
    for (auto v : free) out << "(declare-const " << symbol(vars, v) << " Int)\n";
    for (auto v : free) out << "(assert (<= 0 " << symbol(vars, v) << "))\n";
    out << "(assert " << to_sexpr(phi, vars) << ")\n";
    out << "(check-sat)\n";
    return out.str();
}

} // namespace shexc
