#include "tcmon/automata.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <sstream>
#include <unordered_map>

#include "tcmon/semantics.hpp"

namespace tcmon {

namespace {

constexpr std::size_t kMaxDfaAtoms = 8;
constexpr StateId kNoState = static_cast<StateId>(-1);

}  // namespace

// ── Dfa ─────────────────────────────────────────────────────────────────────

Dfa::Dfa(Alphabet atoms) : atoms_(std::move(atoms)) {
    if (atoms_.size() > kMaxDfaAtoms)
        throw std::invalid_argument("automaton alphabet has " + std::to_string(atoms_.size()) +
                                    " atoms; the explicit powerset construction is capped at " +
                                    std::to_string(kMaxDfaAtoms));
    num_letters_ = std::size_t{1} << atoms_.size();
}

StateId Dfa::add_state(bool final, std::string annotation) {
    StateId id = static_cast<StateId>(finals_.size());
    finals_.push_back(final);
    annotations_.push_back(std::move(annotation));
    delta_.resize(delta_.size() + num_letters_, kNoState);
    return id;
}

void Dfa::set_transition(StateId from, Letter a, StateId to) {
    delta_[from * num_letters_ + a] = to;
}

StateId Dfa::next(StateId q, Letter a) const {
    if (a >= num_letters_) throw TraceError("letter outside the automaton alphabet");
    StateId to = delta_[q * num_letters_ + a];
    if (to == kNoState) throw std::logic_error("transition function is not total");
    return to;
}

std::size_t Dfa::num_finals() const {
    return static_cast<std::size_t>(std::count(finals_.begin(), finals_.end(), true));
}

bool Dfa::is_total() const {
    return std::find(delta_.begin(), delta_.end(), kNoState) == delta_.end();
}

RunResult run_dfa(const Dfa& a, const Trace& t) {
    StateId q = a.initial();
    for (Letter e : t.events()) q = a.next(q, remap_letter(e, t.alphabet(), a.atoms()));
    return {q, a.is_final(q)};
}

std::string to_dot(const Dfa& a) {
    std::ostringstream out;
    out << "digraph dfa {\n";
    out << "  rankdir=LR;\n";
    out << "  init [shape=point, style=invis];\n";
    for (StateId q = 0; q < a.num_states(); ++q) {
        out << "  q" << q << " [shape=" << (a.is_final(q) ? "doublecircle" : "circle") << "];\n";
    }
    out << "  init -> q" << a.initial() << ";\n";
    for (StateId q = 0; q < a.num_states(); ++q) {
        // merge letters per target, deterministic by target id then letter
        std::map<StateId, std::vector<Letter>> edges;
        for (Letter l = 0; l < a.num_letters(); ++l) edges[a.next(q, l)].push_back(l);
        for (const auto& [to, letters] : edges) {
            out << "  q" << q << " -> q" << to << " [label=\"";
            for (std::size_t i = 0; i < letters.size(); ++i) {
                if (i) out << ",";
                out << a.atoms().letter_to_string(letters[i]);
            }
            out << "\"];\n";
        }
    }
    out << "}\n";
    return out.str();
}

// ── build_pltl_dfa ──────────────────────────────────────────────────────────

namespace {

std::string vector_annotation(const PastStepper& stepper, std::uint64_t vec) {
    std::string out;
    for (std::size_t i = 0; i < stepper.plan().nodes.size(); ++i)
        out += stepper.value(vec, i) ? '1' : '0';
    return out;
}

}  // namespace

Dfa build_pltl_dfa(const FormulaPtr& psi, const Alphabet& atoms) {
    if (!is_core(psi) || !is_pure_past(psi))
        throw std::invalid_argument("build_pltl_dfa requires a pure-past core-form formula");

    PastStepper stepper(make_plan(psi, atoms));
    Dfa dfa(atoms);
    StateId bottom = dfa.add_state(false, "init");
    dfa.set_initial(bottom);

    std::unordered_map<std::uint64_t, StateId> interned;
    std::deque<std::pair<StateId, std::optional<std::uint64_t>>> queue;
    queue.emplace_back(bottom, std::nullopt);

    while (!queue.empty()) {
        auto [q, vec] = queue.front();
        queue.pop_front();
        for (Letter a = 0; a < dfa.num_letters(); ++a) {
            std::uint64_t succ = stepper.step(vec, a);
            auto it = interned.find(succ);
            StateId to;
            if (it == interned.end()) {
                to = dfa.add_state(stepper.root_value(succ), vector_annotation(stepper, succ));
                interned.emplace(succ, to);
                queue.emplace_back(to, succ);
            } else {
                to = it->second;
            }
            dfa.set_transition(q, a, to);
        }
    }
    return dfa;
}

Dfa build_informative_dfa(const FormulaPtr& f_pltl, const Alphabet& atoms) {
    if (classify(f_pltl) != FragmentClass::FPltl)
        throw FragmentError("informative-model automaton requires an F(pLTL) formula: " +
                            to_string(f_pltl));
    // On finite words F(psi) has the same models as the pure-past O(psi),
    // and those models are exactly the informative models of F(psi).
    return build_pltl_dfa(Formula::since(Formula::tt(), fragment_body(f_pltl)), atoms);
}

// ── Condition-1 marking ─────────────────────────────────────────────────────

namespace {

std::vector<bool> reachable_states(const Dfa& a) {
    std::vector<bool> seen(a.num_states(), false);
    std::deque<StateId> queue{a.initial()};
    seen[a.initial()] = true;
    while (!queue.empty()) {
        StateId q = queue.front();
        queue.pop_front();
        for (Letter l = 0; l < a.num_letters(); ++l) {
            StateId to = a.next(q, l);
            if (!seen[to]) {
                seen[to] = true;
                queue.push_back(to);
            }
        }
    }
    return seen;
}

// States of the non-final subgraph from which an infinite all-non-final path
// exists, computed by iterated removal of sink states.  A state survives iff
// it can keep moving inside the subgraph forever, i.e. it reaches a cycle.
std::vector<bool> nonfinal_lasso_states(const Dfa& a, const std::vector<bool>& reachable) {
    const std::size_t n = a.num_states();
    std::vector<bool> in_graph(n, false);
    for (StateId q = 0; q < n; ++q) in_graph[q] = reachable[q] && !a.is_final(q);

    std::vector<std::vector<StateId>> preds(n);
    std::vector<std::size_t> out_degree(n, 0);
    for (StateId q = 0; q < n; ++q) {
        if (!in_graph[q]) continue;
        for (Letter l = 0; l < a.num_letters(); ++l) {
            StateId to = a.next(q, l);
            if (in_graph[to]) {
                ++out_degree[q];
                preds[to].push_back(q);
            }
        }
    }

    std::deque<StateId> sinks;
    for (StateId q = 0; q < n; ++q)
        if (in_graph[q] && out_degree[q] == 0) sinks.push_back(q);
    std::vector<bool> removed(n, false);
    while (!sinks.empty()) {
        StateId q = sinks.front();
        sinks.pop_front();
        if (removed[q]) continue;
        removed[q] = true;
        for (StateId p : preds[q])
            if (!removed[p] && --out_degree[p] == 0) sinks.push_back(p);
    }

    std::vector<bool> lasso(n, false);
    for (StateId q = 0; q < n; ++q) lasso[q] = in_graph[q] && !removed[q];
    return lasso;
}

}  // namespace

MarkResult mark_good_prefix_states(const Dfa& a) {
    std::vector<bool> reachable = reachable_states(a);
    std::vector<bool> lasso = nonfinal_lasso_states(a, reachable);

    MarkResult result{a, {}};
    for (StateId q = 0; q < a.num_states(); ++q) {
        if (!reachable[q] || a.is_final(q)) continue;
        if (!lasso[q]) {
            result.automaton.make_final(q);
            result.marked.push_back(q);
        }
    }
    return result;
}

// ── Intentionality ──────────────────────────────────────────────────────────

namespace {

// Shortest nonempty word from the initial state into `targets`, exploring
// letters in ascending bitmask order so witnesses are reproducible.
std::optional<Trace> shortest_word_to(const Dfa& a, const std::vector<bool>& targets) {
    struct Item {
        StateId state;
        int parent;  // index into items
        Letter letter;
    };
    std::vector<Item> items{{a.initial(), -1, 0}};
    std::vector<bool> seen(a.num_states(), false);
    seen[a.initial()] = true;
    std::size_t head = 0;
    while (head < items.size()) {
        Item cur = items[head];
        for (Letter l = 0; l < a.num_letters(); ++l) {
            StateId to = a.next(cur.state, l);
            if (seen[to]) continue;
            seen[to] = true;
            items.push_back({to, static_cast<int>(head), l});
            if (targets[to]) {
                std::vector<Letter> rev;
                for (int i = static_cast<int>(items.size()) - 1; i != -1; i = items[i].parent)
                    rev.push_back(items[i].letter);
                rev.pop_back();  // drop the root marker
                Trace w(a.atoms());
                for (auto it = rev.rbegin(); it != rev.rend(); ++it) w.push(*it);
                return w;
            }
        }
        ++head;
    }
    return std::nullopt;
}

}  // namespace

IntentReport decide_intentionally_cosafe(const FormulaPtr& f_pltl, const Alphabet& atoms) {
    Dfa inf = build_informative_dfa(f_pltl, atoms);
    MarkResult marks = mark_good_prefix_states(inf);

    IntentReport report;
    report.marked = marks.marked;
    report.inf_states = inf.num_states();
    report.alphabet_letters = inf.num_letters();

    // The initial state is reached only by the empty word, which is outside
    // the language domain; its marked status does not refute inclusion.
    std::vector<bool> targets(inf.num_states(), false);
    bool any = false;
    for (StateId q : marks.marked)
        if (q != inf.initial()) {
            targets[q] = true;
            any = true;
        }
    report.intentional = !any;
    if (any) report.witness = shortest_word_to(inf, targets);
    return report;
}

IntentReport decide_intentionally_safe(const FormulaPtr& g_pltl, const Alphabet& atoms) {
    if (classify(g_pltl) != FragmentClass::GPltl)
        throw FragmentError("intentional safety is decided for G(pLTL) formulas: " +
                            to_string(g_pltl));
    // G(psi) is intentionally safe iff F(!psi) is intentionally cosafe; a
    // witness word is then a bad prefix of G(psi).
    FormulaPtr dual = Formula::until(Formula::tt(), negate(fragment_body(g_pltl)));
    return decide_intentionally_cosafe(dual, atoms);
}

}  // namespace tcmon
