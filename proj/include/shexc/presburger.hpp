// Copyright (c) shexc contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "shexc/rbe.hpp"

namespace shexc {

using Var = std::uint32_t;

// sum(coef * var) + constant, kept sorted by variable with no zero coefficients.
struct LinearTerm {
    std::vector<std::pair<Var, std::int64_t>> coeffs;
    std::int64_t constant = 0;

    static LinearTerm var(Var v, std::int64_t coef = 1);
    static LinearTerm lit(std::int64_t c);
    LinearTerm& operator+=(const LinearTerm& o);
    LinearTerm& operator*=(std::int64_t k);
    friend LinearTerm operator+(LinearTerm a, const LinearTerm& b) { return a += b; }
    friend LinearTerm operator-(LinearTerm a, LinearTerm b) { return a += (b *= -1); }
    friend bool operator==(const LinearTerm&, const LinearTerm&) = default;
};

// Presburger formula over natural-number variables. Atoms compare a linear
// term against zero.
class PaFormula {
  public:
    enum class Kind { top, bottom, eq, le, conj, disj, neg, exists };

    static PaFormula top();
    static PaFormula bottom();
    static PaFormula eq(const LinearTerm& lhs, const LinearTerm& rhs);
    static PaFormula le(const LinearTerm& lhs, const LinearTerm& rhs);
    static PaFormula conj(std::vector<PaFormula> xs);
    static PaFormula disj(std::vector<PaFormula> xs);
    static PaFormula neg(PaFormula x);
    static PaFormula exists(std::vector<Var> vars, PaFormula body);

    [[nodiscard]] Kind kind() const;
    [[nodiscard]] const LinearTerm& term() const;  // eq: term = 0, le: term <= 0
    [[nodiscard]] const std::vector<PaFormula>& children() const;
    [[nodiscard]] const std::vector<Var>& bound() const;

    [[nodiscard]] std::vector<Var> free_variables() const;
    [[nodiscard]] std::size_t size() const;

  private:
    struct Node;
    explicit PaFormula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    std::shared_ptr<const Node> node_;
};

class VarPool {
  public:
    Var fresh(const std::string& base);
    [[nodiscard]] const std::string& name(Var v) const { return names_.at(v); }
    [[nodiscard]] std::size_t size() const { return names_.size(); }

  private:
    std::vector<std::string> names_;
    std::vector<std::pair<std::string, std::size_t>> used_;
};

// ψ_e(x̄, n): x̄ has one variable per alphabet symbol.
struct PsiFormula {
    PaFormula formula = PaFormula::top();
    std::shared_ptr<VarPool> vars;
    std::vector<Var> x;
    Var n = 0;
};

// Throws PreconditionError when an Intersect occurs under a Repeat (the
// conjunction of the two formulas is only exact for counts up to one).
PsiFormula presburger_of(const Rbe& e, const std::vector<std::string>& alphabet);
// Builds into an existing pool with caller-chosen free variables.
PaFormula presburger_of(const Rbe& e, VarPool& vars, const std::vector<Var>& x, Var n);

enum class Truth { no, yes, unknown };
std::string_view to_string(Truth t);

// Values for free variables, indexed by Var; nullopt = unassigned.
using Assignment = std::vector<std::optional<std::int64_t>>;

Truth pa_eval_bounded(const PaFormula& phi, const Assignment& values, std::uint64_t cap);
// Convenience for ψ_e: x̄ := w, n := n.
Truth pa_eval_bounded(const PsiFormula& psi, const Bag& w, std::int64_t n, std::uint64_t cap);

// S-expression rendering of a formula ("(and (= x_a n) ...)").
std::string to_sexpr(const PaFormula& phi, const VarPool& vars);
// A complete SMT-LIB script: declarations, non-negativity, one assertion.
std::string to_smtlib(const PaFormula& phi, const VarPool& vars);

} // namespace shexc
