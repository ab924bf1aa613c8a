#include "tcmon/monitor.hpp"

#include <deque>

namespace tcmon {

const char* verdict_name(Verdict v) noexcept {
    switch (v) {
        case Verdict::Top: return "TOP";
        case Verdict::Bot: return "BOT";
        case Verdict::Unknown: return "UNKNOWN";
    }
    return "?";
}

Verdict monitor_trace_check(const FormulaPtr& core, const Trace& t, MonitorMode mode) {
    if (t.empty()) return Verdict::Unknown;
    if (mode == MonitorMode::Cosafe)
        return eval_informative(core, t) ? Verdict::Top : Verdict::Unknown;
    return eval_informative(negate(core), t) ? Verdict::Bot : Verdict::Unknown;
}

// ── Shared automaton tables ─────────────────────────────────────────────────

namespace {

// q can reach some final state along a path of length >= 1.
std::vector<bool> can_reach_final(const Dfa& a) {
    const std::size_t n = a.num_states();
    std::vector<std::vector<StateId>> preds(n);
    for (StateId q = 0; q < n; ++q)
        for (Letter l = 0; l < a.num_letters(); ++l) preds[a.next(q, l)].push_back(q);

    std::vector<bool> res(n, false);
    std::deque<StateId> queue;
    for (StateId q = 0; q < n; ++q)
        if (a.is_final(q)) queue.push_back(q);
    while (!queue.empty()) {
        StateId t = queue.front();
        queue.pop_front();
        for (StateId p : preds[t])
            if (!res[p]) {
                res[p] = true;
                queue.push_back(p);
            }
    }
    return res;
}

}  // namespace

struct AutomatonTables {
    Dfa inf;
    std::vector<bool> gp_final;  // informative finals plus Condition-1 marks
    std::vector<bool> dead;      // no final reachable in >= 1 steps
    bool initial_gp_final = false;

    explicit AutomatonTables(const FormulaPtr& f_pltl, const Alphabet& atoms)
        : inf(build_informative_dfa(f_pltl, atoms)) {
        MarkResult marks = mark_good_prefix_states(inf);
        gp_final.assign(inf.num_states(), false);
        for (StateId q = 0; q < inf.num_states(); ++q) gp_final[q] = marks.automaton.is_final(q);
        std::vector<bool> alive = can_reach_final(inf);
        dead.assign(inf.num_states(), false);
        for (StateId q = 0; q < inf.num_states(); ++q) dead[q] = !alive[q];
        initial_gp_final = gp_final[inf.initial()];
    }

    // Raw verdict for F(psi) at a state; `at_epsilon` marks the empty prefix.
    Verdict raw_verdict(StateId q, Semantics sem, bool at_epsilon) const {
        if (sem == Semantics::Infinite) {
            if (gp_final[q]) return Verdict::Top;
        } else if (!at_epsilon && inf.is_final(q)) {
            // finite semantics: good prefixes are exactly the models, and the
            // empty word is outside the language domain
            return Verdict::Top;
        }
        if (dead[q]) return Verdict::Bot;
        return Verdict::Unknown;
    }
};

// ── Batch automaton engine ──────────────────────────────────────────────────

Verdict monitor_automaton(const FormulaPtr& core, const Trace& t, Semantics sem,
                          const Alphabet& atoms) {
    FragmentClass cls = classify(core);
    if (cls == FragmentClass::GPltl) {
        // good (bad) prefixes of G(psi) are the bad (good) prefixes of F(!psi)
        FormulaPtr dual = Formula::until(Formula::tt(), negate(fragment_body(core)));
        Verdict v = monitor_automaton(dual, t, sem, atoms);
        if (v == Verdict::Top) return Verdict::Bot;
        if (v == Verdict::Bot) return Verdict::Top;
        return v;
    }
    if (cls != FragmentClass::FPltl)
        throw FragmentError("automaton monitor requires F(pLTL) or G(pLTL): " + to_string(core));

    AutomatonTables tables(core, atoms);
    StateId q = run_dfa(tables.inf, t).state;
    return tables.raw_verdict(q, sem, t.empty());
}

// ── Online monitor ──────────────────────────────────────────────────────────

OnlineMonitor::OnlineMonitor(const FormulaPtr& core, const Alphabet& atoms, MonitorEngine engine,
                             Semantics sem)
    : engine_(engine), semantics_(sem), atoms_(atoms) {
    FragmentClass cls = classify(core);
    if (cls != FragmentClass::FPltl && cls != FragmentClass::GPltl)
        throw FragmentError("online monitor requires F(pLTL) or G(pLTL): " + to_string(core));
    cosafe_ = cls == FragmentClass::FPltl;

    // The watched body: psi for F(psi), !psi for G(psi); its truth at the
    // newest position is exactly the evidence that decides the verdict.
    FormulaPtr watched = cosafe_ ? fragment_body(core) : negate(fragment_body(core));

    if (engine_ == MonitorEngine::TraceCheck) {
        stepper_ = std::make_shared<const PastStepper>(make_plan(watched, atoms_));
    } else {
        tables_ = std::make_shared<const AutomatonTables>(
            Formula::until(Formula::tt(), watched), atoms_);
        state_ = tables_->inf.initial();
        verdict_ = oriented(tables_->raw_verdict(state_, semantics_, /*at_epsilon=*/true));
    }
}

Verdict OnlineMonitor::oriented(Verdict raw) const {
    if (cosafe_) return raw;
    if (raw == Verdict::Top) return Verdict::Bot;
    if (raw == Verdict::Bot) return Verdict::Top;
    return raw;
}

Verdict OnlineMonitor::feed(Letter event) {
    if (atoms_.size() < 64 && (event >> atoms_.size()) != 0)
        throw TraceError("letter outside the monitor alphabet");
    if (decided()) return verdict_;
    ++events_;
    if (engine_ == MonitorEngine::TraceCheck) {
        valuation_ = stepper_->step(valuation_, event);
        if (stepper_->root_value(*valuation_))
            verdict_ = cosafe_ ? Verdict::Top : Verdict::Bot;
    } else {
        state_ = tables_->inf.next(state_, event);
        verdict_ = oriented(tables_->raw_verdict(state_, semantics_, /*at_epsilon=*/false));
    }
    return verdict_;
}

}  // namespace tcmon
