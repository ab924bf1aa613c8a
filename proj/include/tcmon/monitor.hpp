// ============================================================================
// tcmon/monitor.hpp — Three-valued monitors
// ============================================================================
//
// Verdict semantics: TOP when every continuation of the observed prefix
// satisfies the property, BOT when every continuation violates it, UNKNOWN
// otherwise.  Decided verdicts are irrevocable.
//
// Two engines:
//
//   monitor_trace_check  Evaluates the informative-model relation directly
//                        on the trace; no automaton is ever built.  Sound
//                        and complete for the decided verdicts exactly when
//                        the formula is intentionally cosafe (cosafe mode)
//                        or intentionally safe (safe mode).  On other
//                        formulas it stays sound for the verdicts it emits
//                        but may answer UNKNOWN on a decided prefix.  The
//                        engine does not verify intentionality itself;
//                        callers certify it (or accept the incompleteness).
//
//   monitor_automaton    Reference engine for F(pLTL)/G(pLTL): runs the
//                        good-prefix automaton (the marked informative-model
//                        DFA under infinite-word semantics, the plain
//                        informative-model DFA under finite-word semantics,
//                        where good prefixes and models coincide) plus the
//                        dual bad-prefix analysis.
//
// On the empty prefix both engines answer UNKNOWN unless the automaton's
// initial-state analysis proves a constant verdict (possible only for
// degenerate bodies, e.g. an unsatisfiable one).
//
// Batch monitors are pure functions.  An OnlineMonitor instance is mutable
// single-owner state; distinct instances are independent.
//
// ============================================================================

#ifndef TCMON_MONITOR_HPP
#define TCMON_MONITOR_HPP

#include <memory>
#include <optional>

#include "tcmon/automata.hpp"
#include "tcmon/formula.hpp"
#include "tcmon/semantics.hpp"
#include "tcmon/trace.hpp"

namespace tcmon {

struct AutomatonTables;  // internal: shared good-prefix/dead-state analysis

enum class Verdict : std::uint8_t { Top, Bot, Unknown };

const char* verdict_name(Verdict v) noexcept;  // "TOP" / "BOT" / "UNKNOWN"

enum class MonitorMode : std::uint8_t { Cosafe, Safe };
enum class Semantics : std::uint8_t { Finite, Infinite };
enum class MonitorEngine : std::uint8_t { TraceCheck, Automaton };

// Cosafe mode: TOP iff the trace is an informative model of the formula.
// Safe mode:   BOT iff the trace is an informative model of its negation.
// Empty traces yield UNKNOWN.  The formula must be in core form.
Verdict monitor_trace_check(const FormulaPtr& core, const Trace& t, MonitorMode mode);

// Reference automaton engine; requires classify(core) in {F_PLTL, G_PLTL}.
Verdict monitor_automaton(const FormulaPtr& core, const Trace& t, Semantics sem,
                          const Alphabet& atoms);

// ── Online monitor ──────────────────────────────────────────────────────────
// Feeds one event at a time and latches the first decided verdict.  The
// verdict after feeding a prefix equals the batch engine's verdict on it.
// Per-event work is O(|formula|) for the trace-check engine and O(1) table
// lookups for the automaton engine.
//
// Copying is cheap and shares the immutable per-formula analysis, so a
// freshly constructed instance works as a prototype when many traces are
// monitored against one formula.

class OnlineMonitor {
public:
    // Requires classify(core) in {F_PLTL, G_PLTL}; throws FragmentError.
    OnlineMonitor(const FormulaPtr& core, const Alphabet& atoms, MonitorEngine engine,
                  Semantics sem);

    // Feeding after a decided verdict is a no-op returning the latch.
    Verdict feed(Letter event);

    Verdict verdict() const noexcept { return verdict_; }
    bool decided() const noexcept { return verdict_ != Verdict::Unknown; }
    std::size_t events() const noexcept { return events_; }

private:
    Verdict oriented(Verdict raw) const;  // swaps TOP/BOT for the safe side

    bool cosafe_;
    MonitorEngine engine_;
    Semantics semantics_;
    Alphabet atoms_;
    Verdict verdict_ = Verdict::Unknown;
    std::size_t events_ = 0;

    // trace-check engine
    std::shared_ptr<const PastStepper> stepper_;
    std::optional<std::uint64_t> valuation_;

    // automaton engine
    std::shared_ptr<const AutomatonTables> tables_;
    StateId state_ = 0;
};

}  // namespace tcmon

#endif  // TCMON_MONITOR_HPP
