// Copyright (c) shexc contributors.
// SPDX-License-Identifier: Apache-2.0
#include <algorithm>
#include <cctype>
#include <string>

#include "expr_parse.hpp"
#include "shexc/error.hpp"

namespace shexc {
namespace detail {

namespace {

bool is_special(char c) {
    return c == '(' || c == ')' || c == '|' || c == '&' || c == ',' || c == '?' || c == '*' || c == '+' ||
           c == '^' || c == '#';
}
bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; }

class Parser {
  public:
    Parser(std::string_view text, std::size_t line, std::size_t col0, const AtomFn& atom)
        : s_(text), line_(line), col0_(col0), atom_(atom) {}

    Rbe parse() {
        Rbe e = disj();
        skip();
        if (pos_ < s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
        return e;
    }

  private:
    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(line_, col0_ + pos_, msg); }

    void skip() {
        while (pos_ < s_.size() && is_space(s_[pos_])) ++pos_;
        if (pos_ < s_.size() && s_[pos_] == '#') pos_ = s_.size();
    }
    bool eat(char c) {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    Rbe disj() {
        Rbe e = inter();
        while (eat('|')) e = Rbe::disj(e, inter());
        return e;
    }
    Rbe inter() {
        Rbe e = conc();
        while (eat('&')) e = Rbe::intersect(e, conc());
        return e;
    }
    Rbe conc() {
        Rbe e = post();
        while (eat(',')) e = Rbe::concat(e, post());
        return e;
    }
    Rbe post() {
        Rbe e = prim();
        for (;;) {
            if (eat('?'))
                e = Rbe::repeat(e, Interval::opt());
            else if (eat('*'))
                e = Rbe::repeat(e, Interval::star());
            else if (eat('+'))
                e = Rbe::repeat(e, Interval::plus());
            else if (eat('^'))
                e = Rbe::repeat(e, occur());
            else
                return e;
        }
    }
    Interval occur() {
        skip();
        std::size_t start = pos_;
        if (pos_ < s_.size() && s_[pos_] == '[') {
            while (pos_ < s_.size() && s_[pos_] != ']') ++pos_;
            if (pos_ == s_.size()) fail("unterminated interval");
            ++pos_;
        } else {
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        }
        if (start == pos_) fail("expected an interval after '^'");
        try {
            return parse_interval(s_.substr(start, pos_ - start));
        } catch (const Error& ex) {
            pos_ = start;
            fail(ex.what());
        }
    }
    Rbe prim() {
        skip();
        if (pos_ >= s_.size()) fail("unexpected end of expression");
        if (eat('(')) {
            Rbe e = disj();
            if (!eat(')')) fail("expected ')'");
            return e;
        }
        std::size_t start = pos_;
        while (pos_ < s_.size() && !is_space(s_[pos_]) && !is_special(s_[pos_])) ++pos_;
        if (start == pos_) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
        auto tok = s_.substr(start, pos_ - start);
        if (tok == "eps") return Rbe::epsilon();
        if (tok == "empty") return Rbe::empty();
        return atom_(tok, col0_ + start);
    }

    std::string_view s_;
    std::size_t line_, col0_, pos_ = 0;
    const AtomFn& atom_;
};

} // namespace

Rbe parse_expression(std::string_view text, std::size_t line, std::size_t column0, const AtomFn& atom) {
    return Parser(text, line, column0, atom).parse();
}

} // namespace detail

Rbe parse_rbe(std::string_view text, std::vector<std::string>& alphabet) {
    return detail::parse_expression(text, 1, 1, [&](std::string_view tok, std::size_t) {
        auto it = std::find(alphabet.begin(), alphabet.end(), tok);
        if (it == alphabet.end()) {
            alphabet.emplace_back(tok);
            return Rbe::symbol(static_cast<Symbol>(alphabet.size() - 1));
        }
        return Rbe::symbol(static_cast<Symbol>(it - alphabet.begin()));
    });
}

} // namespace shexc
