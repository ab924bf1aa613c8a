// tcmon command-line tool: check / monitor / intentional / automaton / bench,
// plus a hidden `oracle` subcommand for debugging the brute-force oracles.
//
// Exit codes: 0 success, 1 internal/IO error, 2 formula or trace parse error,
// 3 empty trace where one event is required, 4 fragment mismatch.

#include <chrono>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "tcmon/automata.hpp"
#include "tcmon/formula.hpp"
#include "tcmon/monitor.hpp"
#include "tcmon/oracle.hpp"
#include "tcmon/semantics.hpp"
#include "tcmon/trace.hpp"

using namespace tcmon;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitParse = 2;
constexpr int kExitEmptyTrace = 3;
constexpr int kExitFragment = 4;

struct CommonArgs {
    std::string formula;
    std::string trace_file;
    std::string ap;  // comma-separated override
};

Alphabet resolve_alphabet(const FormulaPtr& f, const std::string& ap_flag) {
    if (ap_flag.empty()) return Alphabet(collect_atoms(f));
    std::vector<std::string> atoms;
    std::stringstream ss(ap_flag);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) atoms.push_back(item);
    }
    return Alphabet(std::move(atoms));
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string format_witness(const Trace& w) {
    std::string out;
    const Alphabet& ap = w.alphabet();
    for (std::size_t e = 0; e < w.size(); ++e) {
        if (e) out += ';';
        bool first = true;
        for (std::size_t i = 0; i < ap.size(); ++i) {
            if (w[e] & (Letter{1} << i)) {
                if (!first) out += ' ';
                out += ap.atoms()[i];
                first = false;
            }
        }
    }
    return out;
}

const char* bool_str(bool b) { return b ? "true" : "false"; }

// ── check ───────────────────────────────────────────────────────────────────

int cmd_check(const CommonArgs& args) {
    FormulaPtr core = to_core(parse_formula(args.formula));
    Alphabet ap = resolve_alphabet(core, args.ap);
    Trace t = parse_trace(read_file(args.trace_file), ap);
    if (t.empty()) {
        std::cerr << "error: trace is empty; satisfaction needs at least one event\n";
        return kExitEmptyTrace;
    }
    EvalPlan plan = make_plan(core, ap);
    bool sat = eval_finite_table(plan, t).at_first();
    bool informative = eval_informative_table(plan, t).at_first();
    std::cout << "sat=" << bool_str(sat) << " informative=" << bool_str(informative) << "\n";
    return kExitOk;
}

// ── monitor ─────────────────────────────────────────────────────────────────

struct MonitorArgs : CommonArgs {
    std::string engine = "trace";
    std::string semantics = "infinite";
    bool keep_going = false;
    bool assume_certified = false;
};

int cmd_monitor(const MonitorArgs& args) {
    FormulaPtr core = to_core(parse_formula(args.formula));
    Alphabet ap = resolve_alphabet(core, args.ap);
    Semantics sem = args.semantics == "finite" ? Semantics::Finite : Semantics::Infinite;
    FragmentClass cls = classify(core);
    bool in_fragment = cls == FragmentClass::FPltl || cls == FragmentClass::GPltl;

    bool use_automaton = args.engine == "automaton";
    if (use_automaton && !in_fragment) {
        std::cerr << "error: the automaton engine requires F(pLTL) or G(pLTL), got "
                  << fragment_name(cls) << "\n";
        return kExitFragment;
    }

    bool certified;
    if (use_automaton) {
        certified = true;  // the reference construction is exact on the fragment
    } else if (args.assume_certified) {
        certified = true;
    } else if (!in_fragment) {
        certified = false;
    } else if (sem == Semantics::Finite) {
        certified = true;  // on finite words the whole fragment is intentional
    } else {
        IntentReport rep = cls == FragmentClass::FPltl ? decide_intentionally_cosafe(core, ap)
                                                       : decide_intentionally_safe(core, ap);
        certified = rep.intentional;
    }
    bool safe_side = cls == FragmentClass::GPltl ||
                     (!in_fragment && core->kind() == Kind::Release);
    if (!use_automaton && !certified)
        std::cerr << "warning: formula is not certified intentionally "
                  << (safe_side ? "safe" : "cosafe")
                  << "; decided verdicts may be missed (never wrong)\n";

    std::ifstream in(args.trace_file);
    if (!in) {
        std::cerr << "error: cannot open file: " << args.trace_file << "\n";
        return kExitError;
    }
    TraceReader reader(in, ap);

    Verdict verdict = Verdict::Unknown;
    std::size_t index = 0;

    if (in_fragment) {
        OnlineMonitor monitor(core, ap,
                              use_automaton ? MonitorEngine::Automaton : MonitorEngine::TraceCheck,
                              sem);
        verdict = monitor.verdict();
        while (auto e = reader.next()) {
            verdict = monitor.feed(*e);
            std::cout << index++ << " " << verdict_name(verdict) << "\n";
            if (monitor.decided() && !args.keep_going) break;
        }
    } else {
        // outside the fragment only batch trace checking is available:
        // re-evaluate the growing prefix after each event
        MonitorMode mode = safe_side ? MonitorMode::Safe : MonitorMode::Cosafe;
        Trace t(ap);
        while (auto e = reader.next()) {
            t.push(*e);
            if (verdict == Verdict::Unknown) verdict = monitor_trace_check(core, t, mode);
            std::cout << index++ << " " << verdict_name(verdict) << "\n";
            if (verdict != Verdict::Unknown && !args.keep_going) break;
        }
    }

    std::cout << "verdict=" << verdict_name(verdict) << " events=" << index
              << " engine=" << (use_automaton ? "automaton" : "trace")
              << " certified=" << bool_str(certified) << "\n";
    return kExitOk;
}

// ── intentional ─────────────────────────────────────────────────────────────

int cmd_intentional(const CommonArgs& args, const std::string& semantics) {
    FormulaPtr core = to_core(parse_formula(args.formula));
    FragmentClass cls = classify(core);
    if (cls != FragmentClass::FPltl && cls != FragmentClass::GPltl) {
        std::cerr << "error: intentionality is decided for F(pLTL)/G(pLTL), got "
                  << fragment_name(cls) << "\n";
        return kExitFragment;
    }
    if (semantics == "finite") {
        // every formula of the fragment is intentionally (co)safe on finite
        // words; nothing to compute
        std::cout << "intentional=true reason=theorem-finite\n";
        return kExitOk;
    }
    Alphabet ap = resolve_alphabet(core, args.ap);
    IntentReport rep = cls == FragmentClass::FPltl ? decide_intentionally_cosafe(core, ap)
                                                   : decide_intentionally_safe(core, ap);
    std::cout << "intentional=" << bool_str(rep.intentional);
    if (rep.witness) std::cout << " witness=\"" << format_witness(*rep.witness) << "\"";
    std::cout << " states=" << rep.inf_states << " marked=" << rep.marked.size() << "\n";
    return kExitOk;
}

// ── automaton ───────────────────────────────────────────────────────────────

int cmd_automaton(const CommonArgs& args, const std::string& stage, bool stats,
                  const std::string& out_file) {
    FormulaPtr core = to_core(parse_formula(args.formula));
    FragmentClass cls = classify(core);
    if (cls != FragmentClass::FPltl && cls != FragmentClass::GPltl) {
        std::cerr << "error: automaton export requires F(pLTL)/G(pLTL), got "
                  << fragment_name(cls) << "\n";
        return kExitFragment;
    }
    // for G(psi) the automata of the dual F(!psi) carry the analysis
    FormulaPtr f_pltl = cls == FragmentClass::FPltl
                            ? core
                            : Formula::until(Formula::tt(), negate(fragment_body(core)));
    Alphabet ap = resolve_alphabet(core, args.ap);

    Dfa inf = build_informative_dfa(f_pltl, ap);
    std::size_t marked_count = 0;
    const Dfa* chosen = &inf;
    MarkResult marks{inf, {}};
    if (stage == "gp") {
        marks = mark_good_prefix_states(inf);
        marked_count = marks.marked.size();
        chosen = &marks.automaton;
    }

    if (stats) {
        std::cout << "states=" << chosen->num_states() << " finals=" << chosen->num_finals()
                  << " marked=" << marked_count << "\n";
        return kExitOk;
    }
    std::string dot = to_dot(*chosen);
    if (out_file.empty()) {
        std::cout << dot;
    } else {
        std::ofstream out(out_file);
        if (!out) {
            std::cerr << "error: cannot write file: " << out_file << "\n";
            return kExitError;
        }
        out << dot;
    }
    return kExitOk;
}

// ── bench ───────────────────────────────────────────────────────────────────

FormulaPtr deep_past(std::size_t n) {
    // F(p & Y^n q): the informative-model DFA has to remember the last n
    // letters, so its reachable state count is at least 2^n
    FormulaPtr inner = Formula::atom("q");
    for (std::size_t i = 0; i < n; ++i) inner = Formula::yesterday(std::move(inner));
    return Formula::until(Formula::tt(), Formula::conj(Formula::atom("p"), std::move(inner)));
}

int cmd_bench(std::size_t n_min, std::size_t n_max, std::size_t trace_len, std::uint64_t seed,
              std::size_t state_cap) {
    using Clock = std::chrono::steady_clock;
    Alphabet ap({"p", "q"});

    std::mt19937_64 rng(seed);
    Trace t(ap);
    for (std::size_t i = 0; i < trace_len; ++i) t.push(rng() & 3);

    std::cout << "# family=deep-past trace_len=" << trace_len << " seed=" << seed
              << " state_cap=" << state_cap << "\n";
    std::cout << "n\tcheck_us\tstates\tbuild_us\n";
    for (std::size_t n = n_min; n <= n_max; ++n) {
        FormulaPtr f = deep_past(n);

        auto t0 = Clock::now();
        EvalPlan plan = make_plan(f, ap);
        bool informative = eval_informative_table(plan, t).at_first();
        auto t1 = Clock::now();
        (void)informative;
        auto check_us = std::chrono::duration_cast<std::chrono::microseconds>(t1 - t0).count();

        std::cout << n << "\t" << check_us << "\t";
        if ((std::size_t{1} << n) >= state_cap) {
            std::cout << ">=" << (std::size_t{1} << n) << "\tskipped\n";
            continue;
        }
        auto t2 = Clock::now();
        Dfa inf = build_informative_dfa(f, ap);
        auto t3 = Clock::now();
        auto build_us = std::chrono::duration_cast<std::chrono::microseconds>(t3 - t2).count();
        std::cout << inf.num_states() << "\t" << build_us << "\n";
    }
    return kExitOk;
}

// ── oracle (hidden) ─────────────────────────────────────────────────────────

int cmd_oracle(const CommonArgs& args, const std::string& kind, std::size_t ext_bound) {
    FormulaPtr core = to_core(parse_formula(args.formula));
    Alphabet ap = resolve_alphabet(core, args.ap);
    Trace t = parse_trace(read_file(args.trace_file), ap);
    FragmentClass cls = classify(core);
    bool exact = cls == FragmentClass::FPltl || cls == FragmentClass::GPltl;

    if (kind == "monitor") {
        Verdict v = oracle_monitor_finite(core, t, ext_bound);
        std::cout << "verdict=" << verdict_name(v) << " ext_bound=" << ext_bound
                  << " exact=" << bool_str(exact) << "\n";
    } else if (kind == "good-prefix") {
        bool good = oracle_good_prefix_finite(core, t, ext_bound);
        std::cout << "good_prefix=" << bool_str(good) << " ext_bound=" << ext_bound
                  << " exact=" << bool_str(exact) << "\n";
    } else {
        bool good = oracle_good_prefix_infinite_fpltl(core, t);
        std::cout << "good_prefix=" << bool_str(good) << " semantics=infinite exact=true\n";
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"tcmon — monitoring of temporal properties by trace checking"};
    app.require_subcommand(1);

    CommonArgs check_args;
    auto* check = app.add_subcommand("check", "Evaluate satisfaction and informativeness");
    check->add_option("formula", check_args.formula, "Formula text")->required();
    check->add_option("trace", check_args.trace_file, "Trace file")->required();
    check->add_option("--ap", check_args.ap, "Comma-separated atom set override");

    MonitorArgs mon_args;
    auto* mon = app.add_subcommand("monitor", "Stream verdicts over a trace file");
    mon->add_option("formula", mon_args.formula, "Formula text")->required();
    mon->add_option("trace", mon_args.trace_file, "Trace file")->required();
    mon->add_option("--ap", mon_args.ap, "Comma-separated atom set override");
    mon->add_option("--engine", mon_args.engine, "Monitoring engine")
        ->check(CLI::IsMember({"trace", "automaton"}))
        ->capture_default_str();
    mon->add_option("--semantics", mon_args.semantics, "Word semantics")
        ->check(CLI::IsMember({"finite", "infinite"}))
        ->capture_default_str();
    mon->add_flag("--keep-going", mon_args.keep_going, "Do not stop at a decided verdict");
    mon->add_flag("--assume-certified", mon_args.assume_certified,
                  "Skip the intentionality certification step");

    CommonArgs intent_args;
    std::string intent_semantics = "infinite";
    auto* intent = app.add_subcommand("intentional", "Decide intentional (co)safety");
    intent->add_option("formula", intent_args.formula, "Formula text")->required();
    intent->add_option("--ap", intent_args.ap, "Comma-separated atom set override");
    intent->add_option("--semantics", intent_semantics, "Word semantics")
        ->check(CLI::IsMember({"finite", "infinite"}))
        ->capture_default_str();

    CommonArgs autom_args;
    std::string stage = "inf";
    std::string out_file;
    bool stats = false;
    auto* autom = app.add_subcommand("automaton", "Emit the informative-model or good-prefix DFA");
    autom->add_option("formula", autom_args.formula, "Formula text")->required();
    autom->add_option("--ap", autom_args.ap, "Comma-separated atom set override");
    autom->add_option("--stage", stage, "Which automaton: inf or gp")
        ->check(CLI::IsMember({"inf", "gp"}))
        ->capture_default_str();
    autom->add_flag("--stats", stats, "Print state counts instead of DOT");
    autom->add_option("--out", out_file, "Write DOT to a file instead of stdout");

    std::size_t n_min = 0, n_max = 14, trace_len = 1000, state_cap = 16384;
    std::uint64_t seed = 0;
    auto* bench = app.add_subcommand("bench", "Trace-check vs automaton-size scaling table");
    bench->add_option("--n-min", n_min, "Smallest family index")->capture_default_str();
    bench->add_option("--n-max", n_max, "Largest family index")->capture_default_str();
    bench->add_option("--trace-len", trace_len, "Events in the benchmark trace")
        ->capture_default_str();
    bench->add_option("--seed", seed, "Trace generator seed")->capture_default_str();
    bench->add_option("--state-cap", state_cap, "Skip construction above this state count")
        ->capture_default_str();

    CommonArgs oracle_args;
    std::string oracle_kind = "monitor";
    std::size_t ext_bound = kDefaultExtensionBound;
    auto* oracle = app.add_subcommand("oracle", "Brute-force oracles (debugging)");
    oracle->group("");  // hidden
    oracle->add_option("formula", oracle_args.formula, "Formula text")->required();
    oracle->add_option("trace", oracle_args.trace_file, "Trace file")->required();
    oracle->add_option("--ap", oracle_args.ap, "Comma-separated atom set override");
    oracle->add_option("--kind", oracle_kind, "monitor | good-prefix | good-prefix-inf")
        ->check(CLI::IsMember({"monitor", "good-prefix", "good-prefix-inf"}))
        ->capture_default_str();
    oracle->add_option("--ext-bound", ext_bound, "Extension length bound")->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    try {
        if (check->parsed()) return cmd_check(check_args);
        if (mon->parsed()) return cmd_monitor(mon_args);
        if (intent->parsed()) return cmd_intentional(intent_args, intent_semantics);
        if (autom->parsed()) return cmd_automaton(autom_args, stage, stats, out_file);
        if (bench->parsed()) return cmd_bench(n_min, n_max, trace_len, seed, state_cap);
        if (oracle->parsed()) return cmd_oracle(oracle_args, oracle_kind, ext_bound);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    } catch (const TraceError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    } catch (const EmptyTraceError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitEmptyTrace;
    } catch (const FragmentError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFragment;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    }
    return kExitOk;
}
