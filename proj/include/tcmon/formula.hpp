// ============================================================================
// tcmon/formula.hpp — Temporal-logic formula AST, parser, and normal forms
// ============================================================================
//
// Formulas are immutable trees shared through shared_ptr<const Formula>.
// Structural equality and hashing are supported so formulas can be used as
// set/map keys; every node caches its hash at construction time.
//
// The concrete grammar (whitespace-insensitive):
//
//   formula  :=  or
//   or       :=  and ('|' or)?
//   and      :=  temp ('&' and)?
//   temp     :=  unary (('U'|'R'|'S'|'T') temp)?      right-associative
//   unary    :=  ('!'|'X'|'wX'|'F'|'G'|'Y'|'wY'|'O'|'H') unary | primary
//   primary  :=  'true' | 'false' | atom | '(' or ')'
//   atom     :=  [a-zA-Z_][a-zA-Z0-9_]*   (not one of the reserved words)
//
// Unary operators bind tightest; binary temporal operators bind tighter
// than '&', which binds tighter than '|'.
//
// "Core form" is the normal form used by all evaluators and constructions:
// derived modalities (F, G, O, H) expanded into U/R/S/T, and negation pushed
// onto atoms, so the only remaining negations are NegAtom leaves.  True and
// False are kept as leaves.
//
// ============================================================================

#ifndef TCMON_FORMULA_HPP
#define TCMON_FORMULA_HPP

#include <cstddef>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace tcmon {

class Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

// ── Node kinds ──────────────────────────────────────────────────────────────

enum class Kind : std::uint8_t {
    True,
    False,
    Atom,
    NegAtom,
    Not,            // parser-level only; eliminated by to_core()
    And,
    Or,
    Next,           // X
    WeakNext,       // wX
    Until,          // U
    Release,        // R
    Yesterday,      // Y
    WeakYesterday,  // wY
    Since,          // S
    Triggers,       // T
    Eventually,     // F   (derived: true U phi)
    Globally,       // G   (derived: false R phi)
    Once,           // O   (derived: true S phi)
    Historically,   // H   (derived: false T phi)
};

const char* kind_name(Kind k) noexcept;

bool is_future_kind(Kind k) noexcept;  // X, wX, U, R, F, G
bool is_past_kind(Kind k) noexcept;    // Y, wY, S, T, O, H

// ── Formula ─────────────────────────────────────────────────────────────────

class Formula {
public:
    Kind kind() const noexcept { return kind_; }
    const std::string& atom_name() const { return atom_; }
    const FormulaPtr& left() const { return left_; }
    const FormulaPtr& right() const { return right_; }
    const FormulaPtr& child() const { return left_; }
    std::size_t hash() const noexcept { return hash_; }

    bool operator==(const Formula& o) const noexcept;

    // Leaves
    static FormulaPtr tt();
    static FormulaPtr ff();
    static FormulaPtr atom(std::string name);
    static FormulaPtr neg_atom(std::string name);

    // Connectives and modalities
    static FormulaPtr logical_not(FormulaPtr c);
    static FormulaPtr conj(FormulaPtr l, FormulaPtr r);
    static FormulaPtr disj(FormulaPtr l, FormulaPtr r);
    static FormulaPtr next(FormulaPtr c);
    static FormulaPtr weak_next(FormulaPtr c);
    static FormulaPtr until(FormulaPtr l, FormulaPtr r);
    static FormulaPtr release(FormulaPtr l, FormulaPtr r);
    static FormulaPtr yesterday(FormulaPtr c);
    static FormulaPtr weak_yesterday(FormulaPtr c);
    static FormulaPtr since(FormulaPtr l, FormulaPtr r);
    static FormulaPtr triggers(FormulaPtr l, FormulaPtr r);
    static FormulaPtr eventually(FormulaPtr c);
    static FormulaPtr globally(FormulaPtr c);
    static FormulaPtr once(FormulaPtr c);
    static FormulaPtr historically(FormulaPtr c);

protected:
    Formula(Kind k, std::string a, FormulaPtr l, FormulaPtr r);

private:
    Kind kind_;
    std::string atom_;
    FormulaPtr left_;
    FormulaPtr right_;
    std::size_t hash_;
};

bool equal(const FormulaPtr& a, const FormulaPtr& b);

struct FormulaPtrHash {
    std::size_t operator()(const FormulaPtr& f) const noexcept { return f->hash(); }
};
struct FormulaPtrEq {
    bool operator()(const FormulaPtr& a, const FormulaPtr& b) const { return equal(a, b); }
};

// ── Fragment classification ─────────────────────────────────────────────────
//
// PURE_PAST   : no future modality occurs
// F_PLTL      : Until(true, psi) with psi pure past
// G_PLTL      : Release(false, psi) with psi pure past
// PURE_FUTURE : no past modality occurs (and none of the above applies)
// FULL        : everything else; in particular an F/G-shaped formula whose
//               body mixes in future modalities is reported as FULL, since
//               the fragment test for its shape failed definitively.

enum class FragmentClass : std::uint8_t {
    PurePast,
    FPltl,
    GPltl,
    PureFuture,
    Full,
};

const char* fragment_name(FragmentClass c) noexcept;

// ── Errors ──────────────────────────────────────────────────────────────────

class ParseError : public std::runtime_error {
public:
    ParseError(std::string msg, std::size_t line, std::size_t column,
               std::vector<std::string> expected = {});
    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }
    const std::vector<std::string>& expected() const noexcept { return expected_; }

private:
    std::size_t line_;
    std::size_t column_;
    std::vector<std::string> expected_;
};

class FragmentError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// ── Operations ──────────────────────────────────────────────────────────────

// Parses the grammar above; throws ParseError with position and the set of
// tokens that would have been accepted.
FormulaPtr parse_formula(const std::string& text);

// Minimal-parenthesis rendering; parse_formula(to_string(f)) == f.
std::string to_string(const FormulaPtr& f);

// Expands F/G/O/H, eliminates Not by pushing negation onto atoms.
// Idempotent; total on well-formed ASTs.
FormulaPtr to_core(const FormulaPtr& f);

// nnf(not f) for core-form f; an involution: negate(negate(f)) == f.
FormulaPtr negate(const FormulaPtr& f);

bool is_core(const FormulaPtr& f);
bool is_pure_past(const FormulaPtr& f);
bool is_pure_future(const FormulaPtr& f);  // contains no past modality

FragmentClass classify(const FormulaPtr& core);

// Body psi of an F_PLTL / G_PLTL core formula; throws FragmentError otherwise.
FormulaPtr fragment_body(const FormulaPtr& core);

// All distinct subformulas, children before parents, the formula itself last.
std::vector<FormulaPtr> subformulas(const FormulaPtr& f);

// {psi, negate(psi) : psi subformula of f}, deduplicated, for pure-future
// core-form f.  Closed under negate.
std::vector<FormulaPtr> closure(const FormulaPtr& f);

// Symbol count of the core form of f (True/False count as one symbol,
// a negated atom as two).
std::size_t formula_size(const FormulaPtr& f);

// Sorted, deduplicated atom names occurring in f.
std::vector<std::string> collect_atoms(const FormulaPtr& f);

}  // namespace tcmon

#endif  // TCMON_FORMULA_HPP
