// Acceptance gate: every release-blocking property in one binary, one
// pass/fail line per criterion.  All frames, seeds, bounds and tolerances
// are frozen here, in code.
//
// Sampling frame: every unary/binary formula skeleton up to 8 nodes over
// AP = {p, q}, each instantiated kVariants times from a fixed-seed
// generator, plus kExtraRandom seeded random formulas of 9..12 nodes; all
// 340 nonempty words of length <= 4; extension bound 3.

#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#include "tcmon/automata.hpp"
#include "tcmon/formula.hpp"
#include "tcmon/monitor.hpp"
#include "tcmon/oracle.hpp"
#include "tcmon/semantics.hpp"
#include "tcmon/trace.hpp"
#include "test_support.hpp"

using namespace tcmon;
using namespace testgen;

namespace {

constexpr int kShapeNodes = 8;
constexpr int kVariants = 3;
constexpr int kExtraRandom = 200;
constexpr int kRandomMin = 9;
constexpr int kRandomMax = 12;
constexpr std::size_t kWordLen = 4;
constexpr std::size_t kExtBound = 3;

int g_failures = 0;

void report(int id, const char* name, bool pass, const std::string& detail = {}) {
    std::printf("criterion %d %-34s %s%s%s\n", id, name, pass ? "PASS" : "FAIL",
                detail.empty() ? "" : "  ", detail.c_str());
    std::fflush(stdout);
    if (!pass) ++g_failures;
}

std::string instances(std::size_t checked, std::size_t bad) {
    return "[" + std::to_string(checked - bad) + "/" + std::to_string(checked) + " ok]";
}

FormulaPtr core_of(const char* text) { return to_core(parse_formula(text)); }

Verdict top_or_unknown(Verdict v) { return v == Verdict::Top ? v : Verdict::Unknown; }

FormulaPtr deep_past(std::size_t n) {
    FormulaPtr inner = Formula::atom("q");
    for (std::size_t i = 0; i < n; ++i) inner = Formula::yesterday(std::move(inner));
    return Formula::until(Formula::tt(), Formula::conj(Formula::atom("p"), std::move(inner)));
}

// ── 1. golden informative-model values ──────────────────────────────────────

void criterion1() {
    Alphabet p({"p"});
    Alphabet pqr({"p", "q", "r"});
    Trace one_p = parse_trace("p\n", p);

    bool ok = true;
    ok &= eval_informative(core_of("F p"), one_p) == true;
    ok &= eval_informative(core_of("F(p & (X q | X !q))"), one_p) == false;
    ok &= eval_informative(core_of("F(G p)"), parse_trace("p\np\np\n", p)) == false;
    ok &= eval_informative(core_of("F(q) & F(r) & F((q | G F !p) & (r | G F p))"),
                           parse_trace("q\nr\n", pqr)) == false;
    ok &= eval_informative(core_of("F(Y p)"), one_p) == false;
    report(1, "golden-informative-models", ok, "[5 exact values]");
}

// ── 2. the F(Y p) construction end to end ───────────────────────────────────

void criterion2() {
    Alphabet p({"p"});
    Trace one_p = parse_trace("p\n", p);
    FormulaPtr fyp = core_of("F(Y p)");

    bool ok = true;

    Dfa inf = build_informative_dfa(fyp, p);
    ok &= !run_dfa(inf, one_p).accepted;

    EvalPlan plan = make_plan(fyp, p);
    std::size_t words = 0;
    for (const Trace& w : enumerate_words(p, 4)) {
        ++words;
        ok &= run_dfa(inf, w).accepted == eval_finite_table(plan, w).at_first();
    }
    ok &= words == 30;

    MarkResult marks = mark_good_prefix_states(inf);
    ok &= marks.marked.size() == 1;
    ok &= run_dfa(marks.automaton, one_p).accepted;

    IntentReport rep = decide_intentionally_cosafe(fyp, p);
    ok &= !rep.intentional;
    ok &= rep.witness.has_value() && *rep.witness == one_p;

    ok &= decide_intentionally_cosafe(core_of("F p"), p).intentional;

    report(2, "good-prefix-construction", ok, "[30 words, marking, decision]");
}

// ── 3. fragment formulas decide themselves on finite words ──────────────────

void criterion3(const std::vector<FormulaPtr>& bodies, const std::vector<Trace>& words) {
    std::size_t checked = 0, bad = 0;
    Alphabet ap = pq_alphabet();
    for (const FormulaPtr& psi : bodies) {
        FormulaPtr f = Formula::until(Formula::tt(), psi);
        FormulaPtr g = Formula::release(Formula::ff(), psi);
        FormulaPtr not_g = negate(g);
        EvalPlan fplan = make_plan(f, ap);
        EvalPlan gplan = make_plan(g, ap);
        EvalPlan nplan = make_plan(not_g, ap);
        for (const Trace& w : words) {
            ++checked;
            bool sat = eval_finite_table(fplan, w).at_first();
            bool good = oracle_good_prefix_finite(f, w, kExtBound);
            bool informative = eval_informative_table(fplan, w).at_first();
            if (!(sat == good && good == informative)) ++bad;

            bool gsat = eval_finite_table(gplan, w).at_first();
            bool bad_prefix = oracle_bad_prefix_finite(g, w, kExtBound);
            bool neg_informative = eval_informative_table(nplan, w).at_first();
            if (!(!gsat == bad_prefix && bad_prefix == neg_informative)) ++bad;
        }
    }
    report(3, "finite-words-models-are-prefixes", bad == 0, instances(checked, bad));
}

// ── 4. trace checking monitors exactly ──────────────────────────────────────

void criterion4(const std::vector<FormulaPtr>& bodies, const std::vector<Trace>& words) {
    Alphabet ap = pq_alphabet();

    std::size_t checked = 0, bad = 0;
    for (const FormulaPtr& psi : bodies) {
        FormulaPtr f = Formula::until(Formula::tt(), psi);
        for (const Trace& w : words) {
            ++checked;
            Verdict engine = monitor_trace_check(f, w, MonitorMode::Cosafe);
            Verdict oracle = top_or_unknown(oracle_monitor_finite(f, w, kExtBound));
            if (engine != oracle) ++bad;
        }
    }
    report(4, "monitor-equals-finite-oracle", bad == 0, instances(checked, bad));

    // infinite semantics: on certified formulas the automaton-free engine
    // agrees with the reference automaton engine on every prefix, over the
    // verdicts trace checking can emit
    std::size_t prefixes = 0, mismatches = 0, certified = 0;
    for (const FormulaPtr& psi : bodies) {
        FormulaPtr f = Formula::until(Formula::tt(), psi);
        if (!decide_intentionally_cosafe(f, ap).intentional) continue;
        ++certified;
        OnlineMonitor tc_proto(f, ap, MonitorEngine::TraceCheck, Semantics::Infinite);
        OnlineMonitor am_proto(f, ap, MonitorEngine::Automaton, Semantics::Infinite);
        for (const Trace& w : words) {
            OnlineMonitor tc = tc_proto;
            OnlineMonitor am = am_proto;
            for (std::size_t i = 0; i < w.size(); ++i) {
                ++prefixes;
                Verdict a = tc.feed(w[i]);
                Verdict b = top_or_unknown(am.feed(w[i]));
                if (a != b) ++mismatches;
            }
        }
    }
    report(4, "engine-agreement-when-certified", mismatches == 0 && certified > 0,
           instances(prefixes, mismatches) + " " + std::to_string(certified) + " certified");
}

// ── 5. the marked automaton recognizes the good prefixes ────────────────────

void criterion5(const std::vector<FormulaPtr>& bodies, const std::vector<Trace>& words) {
    Alphabet ap = pq_alphabet();
    std::size_t checked = 0, bad = 0;
    for (const FormulaPtr& psi : bodies) {
        FormulaPtr f = Formula::until(Formula::tt(), psi);
        MarkResult marks = mark_good_prefix_states(build_informative_dfa(f, ap));
        InfiniteGoodPrefixOracle oracle(f, ap);
        for (const Trace& w : words) {
            ++checked;
            if (run_dfa(marks.automaton, w).accepted != oracle.good_prefix(w)) ++bad;
        }
    }
    report(5, "marked-automaton-good-prefixes", bad == 0, instances(checked, bad));
}

// ── 6. labeling-based and direct informativeness coincide ───────────────────

void criterion6(const std::vector<FormulaPtr>& futures, const std::vector<Trace>& words) {
    Alphabet ap = pq_alphabet();
    std::size_t checked = 0, bad = 0;
    for (const FormulaPtr& f : futures) {
        FormulaPtr neg = negate(f);
        EvalPlan plan = make_plan(neg, ap);
        for (const Trace& w : words) {
            ++checked;
            if (informative_by_labeling(f, w) != eval_informative_table(plan, w).at_first())
                ++bad;
        }
    }
    report(6, "labeling-equals-direct", bad == 0, instances(checked, bad));
}

// ── 7. the complexity story measurably holds ────────────────────────────────

double time_eval_ms(const EvalPlan& plan, const Trace& t) {
    using Clock = std::chrono::steady_clock;
    double best = 1e100;
    for (int rep = 0; rep < 5; ++rep) {
        auto t0 = Clock::now();
        eval_informative_table(plan, t);
        auto t1 = Clock::now();
        best = std::min(best, std::chrono::duration<double, std::milli>(t1 - t0).count());
    }
    return best;
}

void criterion7() {
    Alphabet ap = pq_alphabet();

    // (a) trace checking scales about linearly over a decade of trace sizes
    FormulaPtr fixed = core_of("G(!p | O q) & F(p & Y q)");
    EvalPlan plan = make_plan(fixed, ap);
    Rng rng(kFrameSeed + 70);
    Trace small(ap), large(ap);
    for (std::size_t i = 0; i < 10000; ++i) small.push(rng.below(4));
    for (std::size_t i = 0; i < 100000; ++i) large.push(rng.below(4));
    time_eval_ms(plan, small);  // warmup
    double t_small = time_eval_ms(plan, small);
    double t_large = time_eval_ms(plan, large);
    double ratio = t_large / t_small;
    bool scaling_ok = ratio <= 15.0;

    // (b) the informative-model automaton blows up exponentially in n
    bool states_ok = true;
    std::string sizes;
    for (std::size_t n = 4; n <= 10; ++n) {
        std::size_t states = build_informative_dfa(deep_past(n), ap).num_states();
        states_ok &= states >= (std::size_t{1} << n);
        sizes += (sizes.empty() ? "" : ",") + std::to_string(states);
    }

    // (c) while trace checking the same family stays fast
    FormulaPtr dp14 = deep_past(14);
    EvalPlan plan14 = make_plan(dp14, ap);
    using Clock = std::chrono::steady_clock;
    auto t0 = Clock::now();
    eval_informative_table(plan14, large);
    auto t1 = Clock::now();
    double check_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    bool fast_ok = check_ms < 2000.0;

    char buf[160];
    std::snprintf(buf, sizeof buf, "[ratio %.1f at 10^4->10^5; states %s; deep-past(14) %.1f ms]",
                  ratio, sizes.c_str(), check_ms);
    report(7, "trace-check-vs-automaton-scaling", scaling_ok && states_ok && fast_ok, buf);
}

// ── 8. decided verdicts are irrevocable ─────────────────────────────────────

void criterion8() {
    Alphabet ap = pq_alphabet();
    auto words = words_up_to(ap, kWordLen);

    std::size_t checked = 0, violations = 0;

    // batch trace checking, both polarities, on a medium frame
    auto bodies = formula_frame(past_pool(), 6, 2, 60, 7, 10, kFrameSeed + 80);
    for (const FormulaPtr& psi : bodies) {
        for (bool safe_side : {false, true}) {
            FormulaPtr f = safe_side ? Formula::release(Formula::ff(), psi)
                                     : Formula::until(Formula::tt(), psi);
            MonitorMode mode = safe_side ? MonitorMode::Safe : MonitorMode::Cosafe;
            for (const Trace& w : words) {
                Verdict prev = Verdict::Unknown;
                for (std::size_t i = 0; i < w.size(); ++i) {
                    Verdict v = monitor_trace_check(f, w.prefix(i), mode);
                    ++checked;
                    if (prev != Verdict::Unknown && v != prev) ++violations;
                    prev = v;
                }
            }
        }
    }

    // batch automaton engine under both semantics, on a smaller frame (every
    // call rebuilds its automaton)
    auto small_bodies = formula_frame(past_pool(), 4, 2, 24, 5, 8, kFrameSeed + 81);
    for (const FormulaPtr& psi : small_bodies) {
        for (bool safe_side : {false, true}) {
            FormulaPtr f = safe_side ? Formula::release(Formula::ff(), psi)
                                     : Formula::until(Formula::tt(), psi);
            for (Semantics sem : {Semantics::Finite, Semantics::Infinite}) {
                for (const Trace& w : words) {
                    Verdict prev = Verdict::Unknown;
                    for (std::size_t i = 0; i < w.size(); ++i) {
                        Verdict v = monitor_automaton(f, w.prefix(i), sem, ap);
                        ++checked;
                        if (prev != Verdict::Unknown && v != prev) ++violations;
                        prev = v;
                    }
                }
            }
        }
    }

    // online engines: a decided verdict is also a fixed point of feed()
    for (const FormulaPtr& psi : small_bodies) {
        for (bool safe_side : {false, true}) {
            FormulaPtr f = safe_side ? Formula::release(Formula::ff(), psi)
                                     : Formula::until(Formula::tt(), psi);
            for (MonitorEngine eng : {MonitorEngine::TraceCheck, MonitorEngine::Automaton}) {
                for (Semantics sem : {Semantics::Finite, Semantics::Infinite}) {
                    OnlineMonitor proto(f, ap, eng, sem);
                    for (const Trace& w : words) {
                        OnlineMonitor m = proto;
                        Verdict prev = m.verdict();
                        for (std::size_t i = 0; i < w.size(); ++i) {
                            Verdict v = m.feed(w[i]);
                            ++checked;
                            if (prev != Verdict::Unknown && v != prev) ++violations;
                            prev = v;
                        }
                    }
                }
            }
        }
    }

    report(8, "verdict-irrevocability", violations == 0, instances(checked, violations));
}

}  // namespace

int main() {
    auto started = std::chrono::steady_clock::now();

    criterion1();
    criterion2();

    auto bodies = formula_frame(past_pool(), kShapeNodes, kVariants, kExtraRandom, kRandomMin,
                                kRandomMax, kFrameSeed);
    auto futures = formula_frame(future_pool(), kShapeNodes, kVariants, kExtraRandom, kRandomMin,
                                 kRandomMax, kFrameSeed + 1);
    auto words = words_up_to(pq_alphabet(), kWordLen);
    std::printf("# frame: %zu past bodies, %zu future formulas, %zu words\n", bodies.size(),
                futures.size(), words.size());

    criterion3(bodies, words);
    criterion4(bodies, words);
    criterion5(bodies, words);
    criterion6(futures, words);
    criterion7();
    criterion8();

    double total = std::chrono::duration<double>(std::chrono::steady_clock::now() - started)
                       .count();
    std::printf("# %s in %.1f s\n", g_failures ? "FAILED" : "all criteria passed", total);
    return g_failures ? 1 : 0;
}
