// ============================================================================
// tcmon/semantics.hpp — Finite-word and informative-model evaluators
// ============================================================================
//
// Both evaluators are dynamic programs over (subformula x position), linear
// in |trace| * |formula|.  Subformulas are processed children-first; past
// operators fill their row by a forward scan, future operators by a backward
// scan, so no fixpoint iteration is needed.
//
// eval_finite      : standard finite-word satisfaction.  Boundary cases:
//                    X false / wX true at the last position, Y false / wY
//                    true at position 0.
// eval_informative : the evidence-carrying variant.  Two clause overrides,
//                    applied at evaluation time at every level of the DP
//                    (never by rewriting the AST):
//                      - wX is evaluated as strong X;
//                      - l R r is evaluated as r U (l & r).
//                    All other clauses are identical to eval_finite.  Values
//                    only grow when the trace is extended, which is what
//                    makes decided monitor verdicts irrevocable.
//
// Both require a core-form formula and a nonempty trace.
//
// informative_by_labeling() is an independent check of informativeness for
// pure-future formulas: it searches for a closure-labeling of the trace
// positions (greatest fixpoint per position, computed backwards) instead of
// evaluating the satisfaction relation directly.  It is an oracle for tests,
// not a hot path.
//
// All functions here are pure; evaluation of immutable inputs is safe from
// multiple threads.
//
// ============================================================================

#ifndef TCMON_SEMANTICS_HPP
#define TCMON_SEMANTICS_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "tcmon/formula.hpp"
#include "tcmon/trace.hpp"

namespace tcmon {

class EmptyTraceError : public std::runtime_error {
public:
    EmptyTraceError() : std::runtime_error("evaluation requires a nonempty trace") {}
};

// ── Evaluation plan ─────────────────────────────────────────────────────────
// Distinct subformulas in children-first order with child links resolved to
// plan indices and atoms resolved against an alphabet.  An atom absent from
// the alphabet can never appear in a letter and is constantly false.

struct EvalPlan {
    struct Node {
        Kind kind;
        int atom = -1;   // alphabet bit for Atom/NegAtom, -1 if absent
        int left = -1;
        int right = -1;
    };
    std::vector<Node> nodes;           // root is nodes.back()
    std::vector<FormulaPtr> formulas;  // aligned with nodes
    Alphabet alphabet;

    std::size_t root() const { return nodes.size() - 1; }
};

// Throws std::invalid_argument when f is not in core form.
EvalPlan make_plan(const FormulaPtr& core, const Alphabet& ap);

// ── Evaluation tables ───────────────────────────────────────────────────────

class EvalTable {
public:
    EvalTable(const EvalPlan* plan, std::size_t len)
        : plan_(plan), len_(len), rows_(plan->nodes.size(), std::vector<std::uint8_t>(len)) {}

    bool value(std::size_t node, std::size_t pos) const { return rows_[node][pos] != 0; }
    bool at_first() const { return value(plan_->root(), 0); }
    bool at_last() const { return value(plan_->root(), len_ - 1); }

    // Row index of a subformula, by structure.
    std::optional<std::size_t> row_of(const FormulaPtr& f) const {
        for (std::size_t i = 0; i < plan_->formulas.size(); ++i)
            if (equal(plan_->formulas[i], f)) return i;
        return std::nullopt;
    }

    std::size_t length() const { return len_; }
    const EvalPlan& plan() const { return *plan_; }
    const std::vector<FormulaPtr>& subformulas() const { return plan_->formulas; }

    std::vector<std::uint8_t>& row(std::size_t node) { return rows_[node]; }
    const std::vector<std::uint8_t>& row(std::size_t node) const { return rows_[node]; }

private:
    const EvalPlan* plan_;
    std::size_t len_;
    std::vector<std::vector<std::uint8_t>> rows_;
};

// Full tables; the plan must outlive the table.
EvalTable eval_finite_table(const EvalPlan& plan, const Trace& t);
EvalTable eval_informative_table(const EvalPlan& plan, const Trace& t);

// Convenience entry points over the formula's own atoms joined with the
// trace alphabet.  For pure-past f, satisfaction at the last position is
// table.at_last().
bool eval_finite(const FormulaPtr& core, const Trace& t);
bool eval_informative(const FormulaPtr& core, const Trace& t);

// ── Incremental pure-past valuation ─────────────────────────────────────────
// Maintains the truth values of every subformula of a pure-past plan at the
// last position of a growing word, one letter at a time, in O(|plan|) per
// step.  This is the same recurrence the explicit DFA construction uses for
// its transition function.  Plans are limited to 64 nodes.

class PastStepper {
public:
    explicit PastStepper(EvalPlan plan);  // throws on future modalities

    // prev = std::nullopt means "no letter read yet".
    std::uint64_t step(std::optional<std::uint64_t> prev, Letter a) const;

    bool value(std::uint64_t vec, std::size_t node) const {
        return (vec >> node) & 1;
    }
    bool root_value(std::uint64_t vec) const { return value(vec, plan_.root()); }

    const EvalPlan& plan() const { return plan_; }

private:
    EvalPlan plan_;
};

// ── Labeling-based informativeness (independent oracle) ─────────────────────
// True iff there is a labeling L : {0..n} -> 2^closure(negate(f)) with
// negate(f) in L(0), L(n) empty, and every labeled formula locally consistent
// at its position.  Requires pure-future core-form f and a nonempty trace;
// equivalent to eval_informative(negate(f), t).

bool informative_by_labeling(const FormulaPtr& core, const Trace& t);

}  // namespace tcmon

#endif  // TCMON_SEMANTICS_HPP
