// Copyright (c) shexc contributors.
// SPDX-License-Identifier: Apache-2.0
#include "shexc/rbe.hpp"

#include <algorithm>
#include <set>
#include <unordered_map>

#include "shexc/error.hpp"

namespace shexc {

struct Rbe::Node {
    Kind kind = Kind::epsilon;
    Symbol sym = 0;
    // Null until set; a default Rbe would allocate another node.
    Rbe a{std::shared_ptr<const Node>()}, b{std::shared_ptr<const Node>()};  // a doubles as the repeat body
    Interval occur;
    std::size_t size = 1;
    bool nullable = true;
    bool has_intersect = false;
    std::size_t bound = 0;

    Node() = default;
    explicit Node(Kind k) : kind(k) {}
};

Rbe::Rbe() : node_(std::make_shared<const Node>(Kind::epsilon)) {}

Rbe Rbe::epsilon() { return Rbe(); }

Rbe Rbe::empty() {
    auto n = std::make_shared<Node>(Kind::empty);
    n->nullable = false;
    return Rbe(std::move(n));
}

Rbe Rbe::symbol(Symbol a) {
    auto n = std::make_shared<Node>(Kind::symbol);
    n->sym = a;
    n->nullable = false;
    n->bound = static_cast<std::size_t>(a) + 1;
    return Rbe(std::move(n));
}

std::shared_ptr<const Rbe::Node> Rbe::binary(Kind k, const Rbe& x, const Rbe& y, bool nullable) {
    auto n = std::make_shared<Node>(k);
    n->size = 1 + x.size() + y.size();
    n->nullable = nullable;
    n->has_intersect = k == Kind::intersect || x.has_intersect() || y.has_intersect();
    n->bound = std::max(x.alphabet_bound(), y.alphabet_bound());
    n->a = x;
    n->b = y;
    return n;
}

Rbe Rbe::disj(Rbe x, Rbe y) { return Rbe(binary(Kind::disj, x, y, x.nullable() || y.nullable())); }
Rbe Rbe::concat(Rbe x, Rbe y) { return Rbe(binary(Kind::concat, x, y, x.nullable() && y.nullable())); }
Rbe Rbe::intersect(Rbe x, Rbe y) { return Rbe(binary(Kind::intersect, x, y, x.nullable() && y.nullable())); }

Rbe Rbe::repeat(Rbe e, Interval i) {
    auto n = std::make_shared<Node>(Kind::repeat);
    n->size = 1 + e.size();
    n->nullable = i.min() == 0 || e.nullable();
    n->has_intersect = e.has_intersect();
    n->bound = e.alphabet_bound();
    n->occur = i;
    n->a = std::move(e);
    return Rbe(std::move(n));
}

Rbe Rbe::concat_all(const std::vector<Rbe>& xs) {
    if (xs.empty()) return epsilon();
    Rbe r = xs.front();
    for (std::size_t i = 1; i < xs.size(); ++i) r = concat(r, xs[i]);
    return r;
}

Rbe Rbe::disj_all(const std::vector<Rbe>& xs) {
    if (xs.empty()) return empty();
    Rbe r = xs.front();
    for (std::size_t i = 1; i < xs.size(); ++i) r = disj(r, xs[i]);
    return r;
}

Rbe::Kind Rbe::kind() const { return node_->kind; }
Symbol Rbe::sym() const { return node_->sym; }
const Rbe& Rbe::left() const { return node_->a; }
const Rbe& Rbe::right() const { return node_->b; }
const Interval& Rbe::interval() const { return node_->occur; }
std::size_t Rbe::size() const { return node_->size; }
bool Rbe::nullable() const { return node_->nullable; }
bool Rbe::has_intersect() const { return node_->has_intersect; }
std::size_t Rbe::alphabet_bound() const { return node_->bound; }

std::vector<Symbol> Rbe::symbols() const {
    std::set<Symbol> out;
    std::vector<const Rbe*> todo{this};
    while (!todo.empty()) {
        const Rbe* e = todo.back();
        todo.pop_back();
        switch (e->kind()) {
        case Kind::symbol: out.insert(e->sym()); break;
        case Kind::repeat: todo.push_back(&e->left()); break;
        case Kind::disj:
        case Kind::concat:
        case Kind::intersect:
            todo.push_back(&e->left());
            todo.push_back(&e->right());
            break;
        default: break;
        }
    }
    return {out.begin(), out.end()};
}

namespace {

// 0 = disj, 1 = intersect, 2 = concat, 3 = postfix/atom
int precedence(Rbe::Kind k) {
    switch (k) {
    case Rbe::Kind::disj: return 0;
    case Rbe::Kind::intersect: return 1;
    case Rbe::Kind::concat: return 2;
    default: return 3;
    }
}

void print(const Rbe& e, const Rbe::NameFn& name, int ctx, std::string& out) {
    int p = precedence(e.kind());
    bool paren = p < ctx;
    if (paren) out += '(';
    switch (e.kind()) {
    case Rbe::Kind::empty: out += "empty"; break;
    case Rbe::Kind::epsilon: out += "eps"; break;
    case Rbe::Kind::symbol: out += name(e.sym()); break;
    case Rbe::Kind::disj:
        print(e.left(), name, 0, out);
        out += " | ";
        print(e.right(), name, 1, out);
        break;
    case Rbe::Kind::intersect:
        print(e.left(), name, 1, out);
        out += " & ";
        print(e.right(), name, 2, out);
        break;
    case Rbe::Kind::concat:
        print(e.left(), name, 2, out);
        out += ", ";
        print(e.right(), name, 3, out);
        break;
    case Rbe::Kind::repeat: {
        // A repeated repeat gets parentheses; "a??" would parse but reads badly.
        const Rbe& body = e.left();
        bool wrap = body.kind() == Rbe::Kind::repeat;
        if (wrap) out += '(';
        print(body, name, 3, out);
        if (wrap) out += ')';
        const Interval& i = e.interval();
        if (i.basic() && i != Interval::one())
            out += i.str();
        else
            out += "^" + i.str();
        break;
    }
    }
    if (paren) out += ')';
}

} // namespace

std::string Rbe::str(const NameFn& name) const {
    std::string out;
    print(*this, name, 0, out);
    return out;
}

std::string Rbe::str(const std::vector<std::string>& names) const {
    return str([&](Symbol s) { return s < names.size() ? names[s] : "s" + std::to_string(s); });
}

// ---------------------------------------------------------------------------
// Membership

namespace {

class Matcher {
  public:
    Matcher(const Bag& w, const MatchLimits& limits) : limits_(limits) {
        for (Symbol a = 0; a < w.dimension(); ++a) {
            if (w.count(a) == 0) continue;
            sym_.push_back(a);
            cnt_.push_back(w.count(a));
        }
        stride_.resize(sym_.size());
        std::uint64_t s = 1;
        for (std::size_t i = 0; i < sym_.size(); ++i) {
            stride_[i] = s;
            if (cnt_[i] + 1 > (std::uint64_t{1} << 62) / s) throw BudgetExceeded("bag too large for exact matching");
            s *= cnt_[i] + 1;
        }
        top_ = s - 1;
        total_ = w.size();
    }

    std::uint64_t top() const { return top_; }

    bool match(const Rbe& e, std::uint64_t sub) {
        switch (e.kind()) {
        case Rbe::Kind::empty: return false;
        case Rbe::Kind::epsilon: return sub == 0;
        case Rbe::Kind::symbol: {
            for (std::size_t i = 0; i < sym_.size(); ++i)
                if (sym_[i] == e.sym()) return sub == stride_[i];
            return false;
        }
        default: break;
        }
        Key key{e.identity(), sub};
        if (auto it = memo_.find(key); it != memo_.end()) return it->second;
        tick();
        bool r = false;
        switch (e.kind()) {
        case Rbe::Kind::disj: r = match(e.left(), sub) || match(e.right(), sub); break;
        case Rbe::Kind::intersect: r = match(e.left(), sub) && match(e.right(), sub); break;
        case Rbe::Kind::concat: {
            auto c = decode(sub);
            std::vector<std::uint64_t> part(c.size(), 0);
            do {
                tick();
                auto s1 = encode(part);
                if (match(e.left(), s1) && match(e.right(), sub - s1)) {
                    r = true;
                    break;
                }
            } while (next(part, c));
            break;
        }
        case Rbe::Kind::repeat: {
            const Interval& iv = e.interval();
            const auto& s = counts(e.left(), sub);
            if (e.left().nullable()) {
                for (std::uint64_t i = 0; i < s.size() && !r; ++i)
                    if (s[i]) r = i <= iv.max();
            } else {
                for (std::uint64_t i = iv.min(); i < s.size() && i <= iv.max() && !r; ++i) r = s[i];
            }
            break;
        }
        default: break;
        }
        memo_.emplace(key, r);
        return r;
    }

  private:
    struct Key {
        const void* node;
        std::uint64_t sub;
        bool operator==(const Key&) const = default;
    };
    struct KeyHash {
        std::size_t operator()(const Key& k) const {
            return std::hash<const void*>()(k.node) * 1000003u ^ std::hash<std::uint64_t>()(k.sub);
        }
    };

    void tick() {
        if (++work_ > limits_.work_cap) throw BudgetExceeded("bag matching exceeded its work cap");
    }

    std::vector<std::uint64_t> decode(std::uint64_t sub) const {
        std::vector<std::uint64_t> c(sym_.size());
        for (std::size_t i = 0; i < sym_.size(); ++i) c[i] = (sub / stride_[i]) % (cnt_[i] + 1);
        return c;
    }
    std::uint64_t encode(const std::vector<std::uint64_t>& c) const {
        std::uint64_t s = 0;
        for (std::size_t i = 0; i < c.size(); ++i) s += c[i] * stride_[i];
        return s;
    }
    static bool next(std::vector<std::uint64_t>& part, const std::vector<std::uint64_t>& bound) {
        for (std::size_t i = 0; i < part.size(); ++i) {
            if (part[i] < bound[i]) {
                ++part[i];
                return true;
            }
            part[i] = 0;
        }
        return false;
    }

    // counts[i] set iff sub splits into exactly i non-empty factors of L(body).
    const std::vector<bool>& counts(const Rbe& body, std::uint64_t sub) {
        Key key{body.identity(), sub};
        if (auto it = split_.find(key); it != split_.end()) return it->second;
        auto c = decode(sub);
        std::uint64_t size = 0;
        for (auto x : c) size += x;
        std::vector<bool> s(size + 1, false);
        if (sub == 0) {
            s[0] = true;
        } else {
            // The factor holding one fixed occurrence of the first present
            // symbol is enumerated first; this removes permuted duplicates.
            std::size_t pivot = 0;
            while (c[pivot] == 0) ++pivot;
            std::vector<std::uint64_t> part(c.size(), 0);
            do {
                tick();
                if (part[pivot] == 0) continue;
                auto s1 = encode(part);
                if (!match(body, s1)) continue;
                const auto& rest = counts(body, sub - s1);
                for (std::size_t i = 0; i < rest.size(); ++i)
                    if (rest[i]) s[i + 1] = true;
            } while (next(part, c));
        }
        return split_.emplace(key, std::move(s)).first->second;
    }

    MatchLimits limits_;
    std::vector<Symbol> sym_;
    std::vector<std::uint64_t> cnt_, stride_;
    std::uint64_t top_ = 0, total_ = 0, work_ = 0;
    std::unordered_map<Key, bool, KeyHash> memo_;
    std::unordered_map<Key, std::vector<bool>, KeyHash> split_;
};

} // namespace

bool bag_matches(const Rbe& e, const Bag& w, const MatchLimits& limits) {
    if (e.alphabet_bound() > w.dimension() && w.dimension() != 0)
        throw PreconditionError("expression mentions symbol " + std::to_string(e.alphabet_bound() - 1) +
                                " outside the bag's alphabet of size " + std::to_string(w.dimension()));
    Matcher m(w, limits);
    return m.match(e, m.top());
}

// ---------------------------------------------------------------------------
// RBE₀

namespace {
bool flatten(const Rbe& e, Rbe0& out) {
    switch (e.kind()) {
    case Rbe::Kind::epsilon: return true;
    case Rbe::Kind::symbol: out.push_back({e.sym(), Interval::one()}); return true;
    case Rbe::Kind::concat: return flatten(e.left(), out) && flatten(e.right(), out);
    case Rbe::Kind::repeat:
        if (e.left().kind() != Rbe::Kind::symbol || !e.interval().basic()) return false;
        out.push_back({e.left().sym(), e.interval()});
        return true;
    default: return false;
    }
}
} // namespace

std::optional<Rbe0> to_rbe0(const Rbe& e) {
    Rbe0 out;
    if (!flatten(e, out)) return std::nullopt;
    return out;
}

Rbe from_rbe0(const Rbe0& e) {
    std::vector<Rbe> xs;
    for (const auto& a : e)
        xs.push_back(a.occur == Interval::one() ? Rbe::symbol(a.symbol) : Rbe::repeat(Rbe::symbol(a.symbol), a.occur));
    return Rbe::concat_all(xs);
}

bool rbe0_matches(const Rbe0& e, const Bag& w) {
    std::unordered_map<Symbol, Interval> sum;
    for (const auto& a : e) {
        auto [it, fresh] = sum.emplace(a.symbol, a.occur);
        if (!fresh) it->second = interval_add(it->second, a.occur);
    }
    for (Symbol a = 0; a < w.dimension(); ++a) {
        auto it = sum.find(a);
        Interval i = it == sum.end() ? Interval::zero() : it->second;
        if (!i.contains(w.count(a))) return false;
    }
    for (const auto& [a, i] : sum)
        if (a >= w.dimension() && i.min() > 0) return false;
    return true;
}

// ---------------------------------------------------------------------------
// Ranges

namespace {

Interval::Bound sat_add(Interval::Bound a, Interval::Bound b) {
    return a > Interval::inf - b ? Interval::inf : a + b;
}
Interval::Bound sat_mul(Interval::Bound a, Interval::Bound b) {
    if (a == 0 || b == 0) return 0;
    if (a == Interval::inf || b == Interval::inf || a > Interval::inf / b) return Interval::inf;
    return a * b;
}

std::vector<SymbolRange> ranges(const Rbe& e, const std::vector<Symbol>& project, std::size_t classes) {
    std::vector<SymbolRange> r(classes);
    switch (e.kind()) {
    case Rbe::Kind::empty:
    case Rbe::Kind::epsilon: return r;
    case Rbe::Kind::symbol: {
        if (e.sym() >= project.size()) throw PreconditionError("symbol outside the projection");
        auto c = project[e.sym()];
        r.at(c) = {1, 1};
        return r;
    }
    case Rbe::Kind::disj: {
        auto a = ranges(e.left(), project, classes), b = ranges(e.right(), project, classes);
        for (std::size_t i = 0; i < classes; ++i) r[i] = {std::min(a[i].lo, b[i].lo), std::max(a[i].hi, b[i].hi)};
        return r;
    }
    case Rbe::Kind::concat: {
        auto a = ranges(e.left(), project, classes), b = ranges(e.right(), project, classes);
        for (std::size_t i = 0; i < classes; ++i) r[i] = {sat_add(a[i].lo, b[i].lo), sat_add(a[i].hi, b[i].hi)};
        return r;
    }
    case Rbe::Kind::intersect: {
        auto a = ranges(e.left(), project, classes), b = ranges(e.right(), project, classes);
        for (std::size_t i = 0; i < classes; ++i) r[i] = {std::max(a[i].lo, b[i].lo), std::min(a[i].hi, b[i].hi)};
        return r;
    }
    case Rbe::Kind::repeat: {
        auto a = ranges(e.left(), project, classes);
        const auto& iv = e.interval();
        // With a nullable body, iterations beyond the lower bound can be empty.
        for (std::size_t i = 0; i < classes; ++i) r[i] = {sat_mul(a[i].lo, iv.min()), sat_mul(a[i].hi, iv.max())};
        return r;
    }
    }
    return r;
}

} // namespace

std::vector<SymbolRange> symbol_ranges(const Rbe& e, const std::vector<Symbol>& project, std::size_t classes) {
    return ranges(e, project, classes);
}

std::vector<SymbolRange> symbol_ranges(const Rbe& e, std::size_t dimension) {
    std::vector<Symbol> id(std::max(dimension, e.alphabet_bound()));
    for (std::size_t i = 0; i < id.size(); ++i) id[i] = static_cast<Symbol>(i);
    auto r = ranges(e, id, id.size());
    r.resize(dimension);
    return r;
}

} // namespace shexc
