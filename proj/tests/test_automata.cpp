#include <doctest.h>

#include <set>

#include "tcmon/automata.hpp"
#include "tcmon/oracle.hpp"
#include "tcmon/semantics.hpp"
#include "test_support.hpp"

using namespace tcmon;
using namespace testgen;

namespace {
FormulaPtr core_of(const char* text) { return to_core(parse_formula(text)); }
}

TEST_CASE("build_pltl_dfa: single atom") {
    Alphabet p({"p"});
    Dfa dfa = build_pltl_dfa(core_of("p"), p);
    CHECK(dfa.num_states() == 3);
    CHECK(dfa.is_total());
    CHECK(!dfa.is_final(dfa.initial()));
    for (const Trace& w : words_up_to(p, 4))
        CHECK(run_dfa(dfa, w).accepted == ((w[w.size() - 1] & 1) != 0));
}

TEST_CASE("build_pltl_dfa: Y p looks one step back") {
    Alphabet p({"p"});
    Dfa dfa = build_pltl_dfa(core_of("Y p"), p);
    for (const Trace& w : words_up_to(p, 4)) {
        bool expect = w.size() >= 2 && (w[w.size() - 2] & 1);
        CHECK(run_dfa(dfa, w).accepted == expect);
    }
}

TEST_CASE("build_pltl_dfa: wY false accepts exactly the one-letter words") {
    Alphabet p({"p"});
    Dfa dfa = build_pltl_dfa(core_of("wY false"), p);
    for (const Trace& w : words_up_to(p, 4))
        CHECK(run_dfa(dfa, w).accepted == (w.size() == 1));
}

TEST_CASE("build_pltl_dfa acceptance equals last-position satisfaction") {
    Alphabet ap = pq_alphabet();
    auto frame = formula_frame(past_pool(), 5, 2, 40, 6, 9, kFrameSeed + 30);
    auto words = words_up_to(ap, 5);
    for (const FormulaPtr& psi : frame) {
        Dfa dfa = build_pltl_dfa(psi, ap);
        REQUIRE(dfa.is_total());
        REQUIRE(dfa.num_states() <= (std::size_t{1} << subformulas(psi).size()) + 1);
        EvalPlan plan = make_plan(psi, ap);
        for (const Trace& w : words) {
            bool expect = eval_finite_table(plan, w).at_last();
            REQUIRE(run_dfa(dfa, w).accepted == expect);
        }
    }
    CHECK_THROWS_AS(build_pltl_dfa(core_of("X p"), ap), std::invalid_argument);
}

TEST_CASE("informative-model automaton: worked examples") {
    Alphabet p({"p"});

    Dfa fyp = build_informative_dfa(core_of("F(Y p)"), p);
    CHECK(!run_dfa(fyp, parse_trace("p\n", p)).accepted);
    // accepts exactly words with p in some non-last position
    for (const Trace& w : words_up_to(p, 4)) {
        bool expect = false;
        for (std::size_t i = 0; i + 1 < w.size(); ++i) expect |= (w[i] & 1) != 0;
        CHECK(run_dfa(fyp, w).accepted == expect);
    }

    Dfa fp = build_informative_dfa(core_of("F p"), p);
    for (const Trace& w : words_up_to(p, 4)) {
        bool expect = false;
        for (std::size_t i = 0; i < w.size(); ++i) expect |= (w[i] & 1) != 0;
        CHECK(run_dfa(fp, w).accepted == expect);
    }

    Dfa fwy = build_informative_dfa(core_of("F(wY false)"), p);
    for (const Trace& w : words_up_to(p, 4)) CHECK(run_dfa(fwy, w).accepted);

    CHECK_THROWS_AS(build_informative_dfa(core_of("G p"), p), FragmentError);
}

TEST_CASE("informative automaton accepts informative models and models alike") {
    Alphabet ap = pq_alphabet();
    auto frame = formula_frame(past_pool(), 5, 2, 40, 6, 9, kFrameSeed + 31);
    auto words = words_up_to(ap, 5);
    for (const FormulaPtr& psi : frame) {
        FormulaPtr f = Formula::until(Formula::tt(), psi);
        Dfa inf = build_informative_dfa(f, ap);
        EvalPlan plan = make_plan(f, ap);
        for (const Trace& w : words) {
            bool accepted = run_dfa(inf, w).accepted;
            REQUIRE(accepted == eval_informative_table(plan, w).at_first());
            REQUIRE(accepted == eval_finite_table(plan, w).at_first());
        }
    }
}

TEST_CASE("marking: the F(Y p) automaton gains exactly one final state") {
    Alphabet p({"p"});
    Dfa inf = build_informative_dfa(core_of("F(Y p)"), p);
    MarkResult marks = mark_good_prefix_states(inf);
    CHECK(marks.marked.size() == 1);
    CHECK(run_dfa(marks.automaton, parse_trace("p\n", p)).accepted);
    CHECK(!run_dfa(inf, parse_trace("p\n", p)).accepted);

    // F(p): the empty-letter self-loop keeps every non-final state unmarked
    Dfa fp = build_informative_dfa(core_of("F p"), p);
    CHECK(mark_good_prefix_states(fp).marked.empty());
}

TEST_CASE("marking: finals grow, transitions stay, idempotent") {
    Alphabet ap = pq_alphabet();
    auto frame = formula_frame(past_pool(), 5, 2, 30, 6, 8, kFrameSeed + 32);
    for (const FormulaPtr& psi : frame) {
        Dfa inf = build_informative_dfa(Formula::until(Formula::tt(), psi), ap);
        MarkResult marks = mark_good_prefix_states(inf);
        const Dfa& gp = marks.automaton;
        REQUIRE(gp.num_states() == inf.num_states());
        for (StateId q = 0; q < inf.num_states(); ++q) {
            if (inf.is_final(q)) REQUIRE(gp.is_final(q));
            for (Letter l = 0; l < inf.num_letters(); ++l)
                REQUIRE(gp.next(q, l) == inf.next(q, l));
        }
        MarkResult again = mark_good_prefix_states(gp);
        REQUIRE(again.marked.empty());
    }
}

TEST_CASE("marking agrees with a path-counting characterization") {
    // A state can avoid final states forever iff some all-non-final path of
    // length |Q| leaves it (pigeonhole forces a revisit).  This reformulation
    // shares no machinery with the sink-removal implementation.
    Alphabet ap = pq_alphabet();
    auto frame = formula_frame(past_pool(), 5, 2, 30, 6, 8, kFrameSeed + 36);
    for (const FormulaPtr& psi : frame) {
        Dfa inf = build_informative_dfa(Formula::until(Formula::tt(), psi), ap);
        MarkResult marks = mark_good_prefix_states(inf);

        const std::size_t n = inf.num_states();
        std::vector<std::uint8_t> can_stay(n), next_can(n);
        for (StateId q = 0; q < n; ++q) can_stay[q] = !inf.is_final(q);
        for (std::size_t step = 0; step < n; ++step) {
            for (StateId q = 0; q < n; ++q) {
                bool v = false;
                if (!inf.is_final(q))
                    for (Letter l = 0; l < inf.num_letters() && !v; ++l)
                        v = can_stay[inf.next(q, l)];
                next_can[q] = v;
            }
            can_stay.swap(next_can);
        }
        for (StateId q = 0; q < n; ++q) {
            bool expect_marked = !inf.is_final(q) && !can_stay[q];
            REQUIRE(marks.automaton.is_final(q) == (inf.is_final(q) || expect_marked));
        }
    }
}

TEST_CASE("the decision matches the definition on bounded words") {
    // intentionally cosafe means every good prefix is informative; when the
    // decision says yes, no word up to length 5 may refute it, and when it
    // says no, its witness already refutes it (checked elsewhere).
    Alphabet ap = pq_alphabet();
    auto frame = formula_frame(past_pool(), 4, 2, 30, 5, 8, kFrameSeed + 37);
    auto words = words_up_to(ap, 5);
    for (const FormulaPtr& psi : frame) {
        FormulaPtr f = Formula::until(Formula::tt(), psi);
        if (!decide_intentionally_cosafe(f, ap).intentional) continue;
        InfiniteGoodPrefixOracle oracle(f, ap);
        for (const Trace& w : words)
            if (oracle.good_prefix(w)) REQUIRE(eval_informative(f, w));
    }
}

TEST_CASE("marking an all-final automaton changes nothing") {
    Alphabet p({"p"});
    Dfa dfa(p);
    StateId q0 = dfa.add_state(true);
    dfa.set_initial(q0);
    dfa.set_transition(q0, 0, q0);
    dfa.set_transition(q0, 1, q0);
    MarkResult marks = mark_good_prefix_states(dfa);
    CHECK(marks.marked.empty());
}

TEST_CASE("intentionality decisions: worked examples") {
    Alphabet p({"p"});

    IntentReport fyp = decide_intentionally_cosafe(core_of("F(Y p)"), p);
    CHECK(!fyp.intentional);
    REQUIRE(fyp.witness.has_value());
    CHECK(*fyp.witness == parse_trace("p\n", p));
    CHECK(fyp.marked.size() == 1);
    CHECK(fyp.alphabet_letters == 2);

    CHECK(decide_intentionally_cosafe(core_of("F p"), p).intentional);
    CHECK(decide_intentionally_cosafe(core_of("F(O p)"), p).intentional);

    IntentReport gyp = decide_intentionally_safe(core_of("G(!(Y p))"), p);
    CHECK(!gyp.intentional);
    REQUIRE(gyp.witness.has_value());
    CHECK(*gyp.witness == parse_trace("p\n", p));

    CHECK(decide_intentionally_safe(core_of("G p"), p).intentional);

    // "p never holds after the first position", decided through F of the
    // negation; cross-check against the oracles on all words up to length 4
    FormulaPtr g = core_of("G(wY false | !p)");
    FormulaPtr dual = Formula::until(Formula::tt(), negate(fragment_body(g)));
    InfiniteGoodPrefixOracle oracle(dual, p);
    bool brute_intentional = true;
    for (const Trace& w : words_up_to(p, 4))
        if (oracle.good_prefix(w) && !eval_informative(dual, w)) brute_intentional = false;
    CHECK(decide_intentionally_safe(g, p).intentional == brute_intentional);

    CHECK_THROWS_AS(decide_intentionally_cosafe(core_of("G p"), p), FragmentError);
    CHECK_THROWS_AS(decide_intentionally_safe(core_of("F p"), p), FragmentError);
}

TEST_CASE("a witness is a good prefix that is not informative") {
    Alphabet ap = pq_alphabet();
    auto frame = formula_frame(past_pool(), 5, 2, 40, 6, 8, kFrameSeed + 33);
    int witnessed = 0;
    for (const FormulaPtr& psi : frame) {
        FormulaPtr f = Formula::until(Formula::tt(), psi);
        IntentReport rep = decide_intentionally_cosafe(f, ap);
        if (rep.intentional) continue;
        ++witnessed;
        REQUIRE(rep.witness.has_value());
        CHECK(!eval_informative(f, *rep.witness));
        InfiniteGoodPrefixOracle oracle(f, ap);
        CHECK(oracle.good_prefix(*rep.witness));
    }
    CHECK(witnessed > 0);  // the frame must exercise the negative branch
}

TEST_CASE("good-prefix automaton equals the infinite-extension oracle") {
    Alphabet ap = pq_alphabet();
    auto frame = formula_frame(past_pool(), 4, 2, 30, 5, 8, kFrameSeed + 34);
    auto words = words_up_to(ap, 4);
    for (const FormulaPtr& psi : frame) {
        FormulaPtr f = Formula::until(Formula::tt(), psi);
        MarkResult marks = mark_good_prefix_states(build_informative_dfa(f, ap));
        InfiniteGoodPrefixOracle oracle(f, ap);
        for (const Trace& w : words)
            REQUIRE(run_dfa(marks.automaton, w).accepted == oracle.good_prefix(w));
    }
}

TEST_CASE("three-atom alphabets: construction, marking and oracle line up") {
    Alphabet ap({"p", "q", "r"});
    OpPool pool = past_pool();
    pool.leaves = {Formula::atom("p"), Formula::atom("q"),     Formula::atom("r"),
                   Formula::neg_atom("r"), Formula::tt(),      Formula::ff()};
    auto frame = formula_frame(pool, 4, 1, 15, 5, 7, kFrameSeed + 38);
    auto words = words_up_to(ap, 3);
    for (const FormulaPtr& psi : frame) {
        Dfa dfa = build_pltl_dfa(psi, ap);
        EvalPlan plan = make_plan(psi, ap);
        FormulaPtr f = Formula::until(Formula::tt(), psi);
        MarkResult marks = mark_good_prefix_states(build_informative_dfa(f, ap));
        InfiniteGoodPrefixOracle oracle(f, ap);
        for (const Trace& w : words) {
            REQUIRE(run_dfa(dfa, w).accepted == eval_finite_table(plan, w).at_last());
            REQUIRE(run_dfa(marks.automaton, w).accepted == oracle.good_prefix(w));
        }
    }
}

TEST_CASE("the powerset alphabet is capped with a clear error") {
    std::vector<std::string> atoms;
    for (char c = 'a'; c <= 'i'; ++c) atoms.emplace_back(1, c);  // 9 atoms
    CHECK_THROWS_AS(Dfa(Alphabet(atoms)), std::invalid_argument);
    CHECK_NOTHROW(Dfa(Alphabet(std::vector<std::string>(atoms.begin(), atoms.begin() + 8))));
}

TEST_CASE("run_dfa on the empty trace reports the initial state") {
    Alphabet p({"p"});
    Dfa inf = build_informative_dfa(core_of("F p"), p);
    RunResult r = run_dfa(inf, Trace(p));
    CHECK(r.state == inf.initial());
    CHECK(!r.accepted);
    CHECK_THROWS_AS(run_dfa(inf, parse_trace("q\n", Alphabet({"q"}))), TraceError);
}

TEST_CASE("DOT export is deterministic and structurally sane") {
    Alphabet p({"p"});
    Dfa inf = build_informative_dfa(core_of("F(Y p)"), p);
    std::string dot = to_dot(inf);
    CHECK(dot == to_dot(inf));
    CHECK(dot.find("digraph") != std::string::npos);
    std::size_t doubled = 0, pos = 0;
    while ((pos = dot.find("doublecircle", pos)) != std::string::npos) {
        ++doubled;
        pos += 1;
    }
    CHECK(doubled == inf.num_finals());

    Dfa single(p);
    StateId q0 = single.add_state(true);
    single.set_initial(q0);
    single.set_transition(q0, 0, q0);
    single.set_transition(q0, 1, q0);
    std::string sd = to_dot(single);
    CHECK(sd.find("q0 -> q0") != std::string::npos);
    CHECK(sd.find("{p}") != std::string::npos);
}
