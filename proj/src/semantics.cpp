#include "tcmon/semantics.hpp"

#include <unordered_map>

namespace tcmon {

namespace {

constexpr std::size_t kMaxStepperNodes = 64;

void build_plan(const FormulaPtr& f, EvalPlan& plan,
                std::unordered_map<FormulaPtr, int, FormulaPtrHash, FormulaPtrEq>& index) {
    auto it = index.find(f);
    if (it != index.end()) return;
    switch (f->kind()) {
        case Kind::Not:
        case Kind::Eventually:
        case Kind::Globally:
        case Kind::Once:
        case Kind::Historically:
            throw std::invalid_argument(std::string("evaluation requires core form, found ") +
                                        kind_name(f->kind()));
        default:
            break;
    }
    if (f->left()) build_plan(f->left(), plan, index);
    if (f->right()) build_plan(f->right(), plan, index);
    EvalPlan::Node n;
    n.kind = f->kind();
    if (n.kind == Kind::Atom || n.kind == Kind::NegAtom) {
        auto idx = plan.alphabet.index_of(f->atom_name());
        n.atom = idx ? static_cast<int>(*idx) : -1;
    }
    if (f->left()) n.left = index.at(f->left());
    if (f->right()) n.right = index.at(f->right());
    index.emplace(f, static_cast<int>(plan.nodes.size()));
    plan.nodes.push_back(n);
    plan.formulas.push_back(f);
}

enum class EvalMode { Finite, Informative };

void fill_table(EvalTable& table, const EvalPlan& plan, const Trace& t, EvalMode mode) {
    const std::size_t n = t.size();
    const bool inf = mode == EvalMode::Informative;
    for (std::size_t k = 0; k < plan.nodes.size(); ++k) {
        const EvalPlan::Node& node = plan.nodes[k];
        auto& row = table.row(k);
        switch (node.kind) {
            case Kind::True:
                std::fill(row.begin(), row.end(), 1);
                break;
            case Kind::False:
                std::fill(row.begin(), row.end(), 0);
                break;
            case Kind::Atom:
                for (std::size_t i = 0; i < n; ++i)
                    row[i] = node.atom >= 0 && ((t[i] >> node.atom) & 1);
                break;
            case Kind::NegAtom:
                for (std::size_t i = 0; i < n; ++i)
                    row[i] = !(node.atom >= 0 && ((t[i] >> node.atom) & 1));
                break;
            case Kind::And: {
                const auto& l = table.row(node.left);
                const auto& r = table.row(node.right);
                for (std::size_t i = 0; i < n; ++i) row[i] = l[i] & r[i];
                break;
            }
            case Kind::Or: {
                const auto& l = table.row(node.left);
                const auto& r = table.row(node.right);
                for (std::size_t i = 0; i < n; ++i) row[i] = l[i] | r[i];
                break;
            }
            case Kind::Next: {
                const auto& c = table.row(node.left);
                row[n - 1] = 0;
                for (std::size_t i = 0; i + 1 < n; ++i) row[i] = c[i + 1];
                break;
            }
            case Kind::WeakNext: {
                const auto& c = table.row(node.left);
                row[n - 1] = inf ? 0 : 1;  // strengthened to X under the informative reading
                for (std::size_t i = 0; i + 1 < n; ++i) row[i] = c[i + 1];
                break;
            }
            case Kind::Until: {
                const auto& l = table.row(node.left);
                const auto& r = table.row(node.right);
                row[n - 1] = r[n - 1];
                for (std::size_t i = n - 1; i-- > 0;) row[i] = r[i] | (l[i] & row[i + 1]);
                break;
            }
            case Kind::Release: {
                const auto& l = table.row(node.left);
                const auto& r = table.row(node.right);
                if (inf) {
                    // l R r read as r U (l & r)
                    row[n - 1] = l[n - 1] & r[n - 1];
                    for (std::size_t i = n - 1; i-- > 0;)
                        row[i] = (l[i] & r[i]) | (r[i] & row[i + 1]);
                } else {
                    row[n - 1] = r[n - 1];
                    for (std::size_t i = n - 1; i-- > 0;) row[i] = r[i] & (l[i] | row[i + 1]);
                }
                break;
            }
            case Kind::Yesterday: {
                const auto& c = table.row(node.left);
                row[0] = 0;
                for (std::size_t i = 1; i < n; ++i) row[i] = c[i - 1];
                break;
            }
            case Kind::WeakYesterday: {
                const auto& c = table.row(node.left);
                row[0] = 1;
                for (std::size_t i = 1; i < n; ++i) row[i] = c[i - 1];
                break;
            }
            case Kind::Since: {
                const auto& l = table.row(node.left);
                const auto& r = table.row(node.right);
                row[0] = r[0];
                for (std::size_t i = 1; i < n; ++i) row[i] = r[i] | (l[i] & row[i - 1]);
                break;
            }
            case Kind::Triggers: {
                const auto& l = table.row(node.left);
                const auto& r = table.row(node.right);
                row[0] = r[0];
                for (std::size_t i = 1; i < n; ++i) row[i] = r[i] & (l[i] | row[i - 1]);
                break;
            }
            default:
                throw std::logic_error("fill_table: non-core node in plan");
        }
    }
}

Alphabet plan_alphabet(const FormulaPtr& f, const Trace& t) {
    std::vector<std::string> atoms = collect_atoms(f);
    const auto& trace_atoms = t.alphabet().atoms();
    atoms.insert(atoms.end(), trace_atoms.begin(), trace_atoms.end());
    return Alphabet(std::move(atoms));
}

}  // namespace

EvalPlan make_plan(const FormulaPtr& core, const Alphabet& ap) {
    EvalPlan plan;
    plan.alphabet = ap;
    std::unordered_map<FormulaPtr, int, FormulaPtrHash, FormulaPtrEq> index;
    build_plan(core, plan, index);
    return plan;
}

namespace {
EvalTable make_table(const EvalPlan& plan, const Trace& t, EvalMode mode) {
    if (t.empty()) throw EmptyTraceError();
    EvalTable table(&plan, t.size());
    if (t.alphabet() == plan.alphabet) {
        fill_table(table, plan, t, mode);
    } else {
        Trace remapped(plan.alphabet);
        for (Letter a : t.events()) remapped.push(remap_letter(a, t.alphabet(), plan.alphabet));
        fill_table(table, plan, remapped, mode);
    }
    return table;
}
}  // namespace

EvalTable eval_finite_table(const EvalPlan& plan, const Trace& t) {
    return make_table(plan, t, EvalMode::Finite);
}

EvalTable eval_informative_table(const EvalPlan& plan, const Trace& t) {
    return make_table(plan, t, EvalMode::Informative);
}

bool eval_finite(const FormulaPtr& core, const Trace& t) {
    EvalPlan plan = make_plan(core, plan_alphabet(core, t));
    return eval_finite_table(plan, t).at_first();
}

bool eval_informative(const FormulaPtr& core, const Trace& t) {
    EvalPlan plan = make_plan(core, plan_alphabet(core, t));
    return eval_informative_table(plan, t).at_first();
}

// ── PastStepper ─────────────────────────────────────────────────────────────

PastStepper::PastStepper(EvalPlan plan) : plan_(std::move(plan)) {
    if (plan_.nodes.size() > kMaxStepperNodes)
        throw std::invalid_argument("formula has too many distinct subformulas for the "
                                    "incremental evaluator (max 64)");
    for (const auto& n : plan_.nodes)
        if (is_future_kind(n.kind))
            throw std::invalid_argument("incremental valuation requires a pure-past formula");
}

std::uint64_t PastStepper::step(std::optional<std::uint64_t> prev, Letter a) const {
    std::uint64_t out = 0;
    auto bit = [](std::uint64_t vec, int i) -> bool { return (vec >> i) & 1; };
    for (std::size_t k = 0; k < plan_.nodes.size(); ++k) {
        const EvalPlan::Node& node = plan_.nodes[k];
        bool v = false;
        switch (node.kind) {
            case Kind::True: v = true; break;
            case Kind::False: v = false; break;
            case Kind::Atom: v = node.atom >= 0 && ((a >> node.atom) & 1); break;
            case Kind::NegAtom: v = !(node.atom >= 0 && ((a >> node.atom) & 1)); break;
            case Kind::And: v = bit(out, node.left) && bit(out, node.right); break;
            case Kind::Or: v = bit(out, node.left) || bit(out, node.right); break;
            case Kind::Yesterday: v = prev ? bit(*prev, node.left) : false; break;
            case Kind::WeakYesterday: v = prev ? bit(*prev, node.left) : true; break;
            case Kind::Since:
                v = bit(out, node.right) ||
                    (bit(out, node.left) && (prev ? bit(*prev, static_cast<int>(k)) : false));
                break;
            case Kind::Triggers:
                v = bit(out, node.right) &&
                    (bit(out, node.left) || (prev ? bit(*prev, static_cast<int>(k)) : true));
                break;
            default:
                throw std::logic_error("PastStepper: future node in plan");
        }
        if (v) out |= std::uint64_t{1} << k;
    }
    return out;
}

// ── Labeling-based informativeness ──────────────────────────────────────────

bool informative_by_labeling(const FormulaPtr& core, const Trace& t) {
    if (t.empty()) throw EmptyTraceError();
    if (!is_pure_future(core))
        throw std::invalid_argument("labeling-based informativeness is defined for "
                                    "pure-future formulas only");

    const FormulaPtr target = negate(core);
    const std::vector<FormulaPtr> cls = closure(target);
    if (cls.size() > 64)
        throw std::invalid_argument("closure too large for the labeling oracle (max 64)");

    std::unordered_map<FormulaPtr, int, FormulaPtrHash, FormulaPtrEq> index;
    for (std::size_t i = 0; i < cls.size(); ++i) index.emplace(cls[i], static_cast<int>(i));

    struct Entry {
        Kind kind;
        int atom = -1;  // into the trace alphabet
        int left = -1;  // closure indices (only for And/Or; children of
        int right = -1; // temporal operators live in the closure as well)
        int self = -1;
    };
    const Alphabet& ap = t.alphabet();
    std::vector<Entry> entries(cls.size());
    for (std::size_t i = 0; i < cls.size(); ++i) {
        const FormulaPtr& f = cls[i];
        Entry e;
        e.kind = f->kind();
        e.self = static_cast<int>(i);
        if (e.kind == Kind::Atom || e.kind == Kind::NegAtom) {
            auto idx = ap.index_of(f->atom_name());
            e.atom = idx ? static_cast<int>(*idx) : -1;
        }
        if (f->left() && f->kind() != Kind::True && f->kind() != Kind::False) {
            auto it = index.find(f->left());
            e.left = it == index.end() ? -1 : it->second;
        }
        if (f->right()) {
            auto it = index.find(f->right());
            e.right = it == index.end() ? -1 : it->second;
        }
        entries[i] = e;
    }

    const std::size_t n = t.size();
    auto has = [](std::uint64_t set, int i) -> bool { return i >= 0 && ((set >> i) & 1); };

    // Greatest fixpoint per position, from the back: a formula survives in
    // M(i) iff its local constraint holds w.r.t. M(i) itself and M(i+1).
    // Any valid labeling is pointwise contained in M, so membership of the
    // target in M(0) decides existence.
    std::uint64_t succ = 0;  // M(n) is empty
    std::uint64_t cur = 0;
    for (std::size_t pos = n; pos-- > 0;) {
        Letter a = t[pos];
        cur = (~std::uint64_t{0}) >> (64 - cls.size());
        bool changed = true;
        while (changed) {
            changed = false;
            for (std::size_t i = 0; i < cls.size(); ++i) {
                if (!has(cur, static_cast<int>(i))) continue;
                const Entry& e = entries[i];
                bool ok = true;
                switch (e.kind) {
                    case Kind::True: ok = true; break;
                    case Kind::False: ok = false; break;
                    case Kind::Atom: ok = e.atom >= 0 && ((a >> e.atom) & 1); break;
                    case Kind::NegAtom: ok = !(e.atom >= 0 && ((a >> e.atom) & 1)); break;
                    case Kind::Or: ok = has(cur, e.left) || has(cur, e.right); break;
                    case Kind::And: ok = has(cur, e.left) && has(cur, e.right); break;
                    case Kind::Next:
                    case Kind::WeakNext: ok = has(succ, e.left); break;
                    case Kind::Until:
                        ok = has(cur, e.right) || (has(cur, e.left) && has(succ, e.self));
                        break;
                    case Kind::Release:
                        ok = has(cur, e.right) && (has(cur, e.left) || has(succ, e.self));
                        break;
                    default:
                        throw std::logic_error("labeling oracle: unexpected closure member");
                }
                if (!ok) {
                    cur &= ~(std::uint64_t{1} << i);
                    changed = true;
                }
            }
        }
        succ = cur;
    }
    return has(cur, index.at(target));
}

}  // namespace tcmon
