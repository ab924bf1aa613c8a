// ============================================================================
// tcmon/oracle.hpp — Brute-force oracles used as ground truth in tests
// ============================================================================
//
// Everything here favours directness over speed: the evaluators recurse on
// the raw satisfaction clauses (no tables, no memoization), and the prefix
// oracles enumerate extension words outright.  They are deliberately kept
// independent of the dynamic-programming evaluators and of the automata
// constructions they are used to check.
//
// The finite-extension oracles are exact for F(pLTL)/G(pLTL) at any bound
// (good prefixes of F(psi) coincide with its models on finite words); for
// other formulas they are bounded approximations, and reports should carry
// the bound used.
//
// ============================================================================

#ifndef TCMON_ORACLE_HPP
#define TCMON_ORACLE_HPP

#include <cstddef>
#include <memory>
#include <vector>

#include "tcmon/formula.hpp"
#include "tcmon/monitor.hpp"
#include "tcmon/trace.hpp"

namespace tcmon {

inline constexpr std::size_t kDefaultExtensionBound = 3;

// Plain recursive satisfaction at a position.  Accepts derived modalities
// and general negation directly, so it does not depend on to_core/negate.
bool eval_naive(const FormulaPtr& f, const Trace& t, std::size_t pos);

// Recursive informative-model relation (wX read as X, R as U of the
// conjunction).  General negation is rejected: the relation is defined on
// negation-normal formulas only.
bool eval_naive_informative(const FormulaPtr& f, const Trace& t, std::size_t pos);

// All nonempty words of length <= max_len in length-lexicographic order.
// Guarded to |ap| <= 3 and max_len <= 6.
std::vector<Trace> enumerate_words(const Alphabet& ap, std::size_t max_len);

// True iff every extension sigma' with |sigma'| <= ext_bound (including the
// empty one) keeps / makes the formula true (resp. false).  Nonempty sigma.
bool oracle_good_prefix_finite(const FormulaPtr& f, const Trace& sigma, std::size_t ext_bound);
bool oracle_bad_prefix_finite(const FormulaPtr& f, const Trace& sigma, std::size_t ext_bound);

// TOP if all bounded extensions satisfy, BOT if all violate, else UNKNOWN.
// sigma may be empty; only nonempty extended words are evaluated.
Verdict oracle_monitor_finite(const FormulaPtr& f, const Trace& sigma, std::size_t ext_bound);

// ── Infinite-word good prefixes of F(pLTL) ──────────────────────────────────
// Exact decision, independent of the automata module: a nonempty word is a
// good prefix iff the body already held at some prefix, or no infinite
// body-avoiding extension exists.  The search identifies extension frontiers
// by the body's subformula-valuation vector computed by direct evaluation of
// the extended word, and terminates by pigeonhole on vectors.
//
// The analyzer caches the (formula, alphabet)-level search so many words can
// be queried cheaply.

class InfiniteGoodPrefixOracle {
public:
    InfiniteGoodPrefixOracle(const FormulaPtr& f_pltl, const Alphabet& ap);
    ~InfiniteGoodPrefixOracle();
    InfiniteGoodPrefixOracle(InfiniteGoodPrefixOracle&&) noexcept;
    InfiniteGoodPrefixOracle& operator=(InfiniteGoodPrefixOracle&&) noexcept;

    bool good_prefix(const Trace& sigma) const;  // nonempty sigma

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

bool oracle_good_prefix_infinite_fpltl(const FormulaPtr& f_pltl, const Trace& sigma);

}  // namespace tcmon

#endif  // TCMON_ORACLE_HPP
