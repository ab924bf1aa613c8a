// ============================================================================
// tcmon/automata.hpp — Explicit DFAs for pure-past formulas and the
//                      intentional-(co)safety decision
// ============================================================================
//
// The alphabet of every automaton here is the full powerset of its atom set,
// with letters encoded as bitmasks; atom sets are capped at 8 (256 letters).
//
// build_pltl_dfa turns a pure-past formula into a DFA whose states are the
// reachable truth-valuation vectors of its subformulas, plus a distinguished
// initial state that has read no letter and has no incoming transitions.
// States are discovered breadth-first with letters in ascending bitmask
// order, so state numbering is deterministic across runs.
//
// For F(psi) with pure-past psi, the informative-model automaton is the
// pure-past DFA of O(psi): on finite words F(psi) and O(psi) have the same
// models, and for this shape models coincide with informative models.
//
// mark_good_prefix_states adds to the final set every reachable non-final
// state from which every infinite continuation eventually visits a final
// state; equivalently, every state that cannot reach a cycle inside the
// non-final subgraph.  The marked automaton accepts exactly the good
// prefixes of F(psi) under infinite-word semantics.
//
// F(psi) is intentionally cosafe iff marking adds no state that is reachable
// by a nonempty word.  The initial state is excluded from that test: it is
// only reached by the empty word, which is not a prefix in the formula's
// language domain.
//
// ============================================================================

#ifndef TCMON_AUTOMATA_HPP
#define TCMON_AUTOMATA_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tcmon/formula.hpp"
#include "tcmon/trace.hpp"

namespace tcmon {

using StateId = std::uint32_t;

// ── Dfa ─────────────────────────────────────────────────────────────────────
// Total deterministic automaton over the powerset alphabet of `atoms`.
// Immutable once built; safe to share across threads.

class Dfa {
public:
    explicit Dfa(Alphabet atoms);

    const Alphabet& atoms() const noexcept { return atoms_; }
    std::size_t num_letters() const noexcept { return num_letters_; }
    std::size_t num_states() const noexcept { return finals_.size(); }

    StateId add_state(bool final, std::string annotation = {});
    void set_transition(StateId from, Letter a, StateId to);
    void set_initial(StateId q) { initial_ = q; }
    void make_final(StateId q) { finals_[q] = true; }

    StateId initial() const noexcept { return initial_; }
    bool is_final(StateId q) const { return finals_[q]; }
    std::size_t num_finals() const;
    StateId next(StateId q, Letter a) const;
    const std::string& annotation(StateId q) const { return annotations_[q]; }

    // True when every (state, letter) pair has a successor.
    bool is_total() const;

private:
    Alphabet atoms_;
    std::size_t num_letters_;
    StateId initial_ = 0;
    std::vector<StateId> delta_;  // num_states x num_letters
    std::vector<bool> finals_;
    std::vector<std::string> annotations_;
};

struct RunResult {
    StateId state;
    bool accepted;
};

// Runs the automaton on a trace (letters remapped by atom name; throws
// TraceError when an event mentions an atom outside the automaton's atoms).
// On the empty trace: the initial state, accepted iff it is final.
RunResult run_dfa(const Dfa& a, const Trace& t);

// Deterministic DOT rendering: one node per state (double circle for
// finals), one edge per (source, target) with merged letter labels.
std::string to_dot(const Dfa& a);

// ── Constructions ───────────────────────────────────────────────────────────

// DFA accepting { w nonempty : w satisfies psi at its last position } for
// pure-past core-form psi.  Throws std::invalid_argument otherwise.
Dfa build_pltl_dfa(const FormulaPtr& psi, const Alphabet& atoms);

// Informative-model DFA of an F_PLTL core formula (the pure-past DFA of
// O(psi)).  Throws FragmentError on the wrong fragment.
Dfa build_informative_dfa(const FormulaPtr& f_pltl, const Alphabet& atoms);

struct MarkResult {
    Dfa automaton;                 // same states/transitions, enlarged finals
    std::vector<StateId> marked;   // newly-final states, ascending
};

// Condition-1 marking (see the header comment).  Decisions are made for
// reachable states only; marking is idempotent.
MarkResult mark_good_prefix_states(const Dfa& a);

// ── Intentionality decision ─────────────────────────────────────────────────

struct IntentReport {
    bool intentional = false;
    // A shortest nonempty word reaching a marked state: a good (resp. bad)
    // prefix that is not an informative model.  Present iff not intentional.
    std::optional<Trace> witness;
    std::vector<StateId> marked;
    std::size_t inf_states = 0;        // reachable states of the informative DFA
    std::size_t alphabet_letters = 0;  // 2^|atoms|
};

IntentReport decide_intentionally_cosafe(const FormulaPtr& f_pltl, const Alphabet& atoms);
IntentReport decide_intentionally_safe(const FormulaPtr& g_pltl, const Alphabet& atoms);

}  // namespace tcmon

#endif  // TCMON_AUTOMATA_HPP
