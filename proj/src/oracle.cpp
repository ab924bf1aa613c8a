#include "tcmon/oracle.hpp"

#include <deque>
#include <unordered_map>

#include "tcmon/semantics.hpp"

namespace tcmon {

// ── Naive evaluators ────────────────────────────────────────────────────────

namespace {

bool atom_holds(const FormulaPtr& f, const Trace& t, std::size_t pos) {
    auto idx = t.alphabet().index_of(f->atom_name());
    return idx && ((t[pos] >> *idx) & 1);
}

}  // namespace

bool eval_naive(const FormulaPtr& f, const Trace& t, std::size_t pos) {
    const std::size_t n = t.size();
    switch (f->kind()) {
        case Kind::True: return true;
        case Kind::False: return false;
        case Kind::Atom: return atom_holds(f, t, pos);
        case Kind::NegAtom: return !atom_holds(f, t, pos);
        case Kind::Not: return !eval_naive(f->child(), t, pos);
        case Kind::Or:
            return eval_naive(f->left(), t, pos) || eval_naive(f->right(), t, pos);
        case Kind::And:
            return eval_naive(f->left(), t, pos) && eval_naive(f->right(), t, pos);
        case Kind::Next: return pos + 1 < n && eval_naive(f->child(), t, pos + 1);
        case Kind::WeakNext: return pos + 1 == n || eval_naive(f->child(), t, pos + 1);
        case Kind::Until:
            for (std::size_t j = pos; j < n; ++j) {
                if (eval_naive(f->right(), t, j)) {
                    bool all = true;
                    for (std::size_t k = pos; k < j && all; ++k)
                        all = eval_naive(f->left(), t, k);
                    if (all) return true;
                }
            }
            return false;
        case Kind::Release: {
            bool all = true;
            for (std::size_t j = pos; j < n && all; ++j) all = eval_naive(f->right(), t, j);
            if (all) return true;
            for (std::size_t k = pos; k < n; ++k) {
                if (eval_naive(f->left(), t, k)) {
                    bool held = true;
                    for (std::size_t j = pos; j <= k && held; ++j)
                        held = eval_naive(f->right(), t, j);
                    if (held) return true;
                }
            }
            return false;
        }
        case Kind::Yesterday: return pos > 0 && eval_naive(f->child(), t, pos - 1);
        case Kind::WeakYesterday: return pos == 0 || eval_naive(f->child(), t, pos - 1);
        case Kind::Since:
            for (std::size_t j = pos + 1; j-- > 0;) {
                if (eval_naive(f->right(), t, j)) {
                    bool all = true;
                    for (std::size_t k = j + 1; k <= pos && all; ++k)
                        all = eval_naive(f->left(), t, k);
                    if (all) return true;
                }
            }
            return false;
        case Kind::Triggers: {
            bool all = true;
            for (std::size_t j = 0; j <= pos && all; ++j) all = eval_naive(f->right(), t, j);
            if (all) return true;
            for (std::size_t k = pos + 1; k-- > 0;) {
                if (eval_naive(f->left(), t, k)) {
                    bool held = true;
                    for (std::size_t j = k; j <= pos && held; ++j)
                        held = eval_naive(f->right(), t, j);
                    if (held) return true;
                }
            }
            return false;
        }
        case Kind::Eventually:
            for (std::size_t j = pos; j < n; ++j)
                if (eval_naive(f->child(), t, j)) return true;
            return false;
        case Kind::Globally:
            for (std::size_t j = pos; j < n; ++j)
                if (!eval_naive(f->child(), t, j)) return false;
            return true;
        case Kind::Once:
            for (std::size_t j = pos + 1; j-- > 0;)
                if (eval_naive(f->child(), t, j)) return true;
            return false;
        case Kind::Historically:
            for (std::size_t j = 0; j <= pos; ++j)
                if (!eval_naive(f->child(), t, j)) return false;
            return true;
    }
    throw std::logic_error("eval_naive: unreachable");
}

bool eval_naive_informative(const FormulaPtr& f, const Trace& t, std::size_t pos) {
    const std::size_t n = t.size();
    switch (f->kind()) {
        case Kind::True: return true;
        case Kind::False: return false;
        case Kind::Atom: return atom_holds(f, t, pos);
        case Kind::NegAtom: return !atom_holds(f, t, pos);
        case Kind::Not:
            throw std::invalid_argument(
                "the informative-model relation is defined on negation-normal formulas");
        case Kind::Or:
            return eval_naive_informative(f->left(), t, pos) ||
                   eval_naive_informative(f->right(), t, pos);
        case Kind::And:
            return eval_naive_informative(f->left(), t, pos) &&
                   eval_naive_informative(f->right(), t, pos);
        case Kind::Next:
        case Kind::WeakNext:  // strengthened to X
            return pos + 1 < n && eval_naive_informative(f->child(), t, pos + 1);
        case Kind::Until:
            for (std::size_t j = pos; j < n; ++j) {
                if (eval_naive_informative(f->right(), t, j)) {
                    bool all = true;
                    for (std::size_t k = pos; k < j && all; ++k)
                        all = eval_naive_informative(f->left(), t, k);
                    if (all) return true;
                }
            }
            return false;
        case Kind::Release:
            // l R r read as r U (l & r)
            for (std::size_t j = pos; j < n; ++j) {
                if (eval_naive_informative(f->left(), t, j) &&
                    eval_naive_informative(f->right(), t, j)) {
                    bool all = true;
                    for (std::size_t k = pos; k < j && all; ++k)
                        all = eval_naive_informative(f->right(), t, k);
                    if (all) return true;
                }
            }
            return false;
        case Kind::Yesterday:
            return pos > 0 && eval_naive_informative(f->child(), t, pos - 1);
        case Kind::WeakYesterday:
            return pos == 0 || eval_naive_informative(f->child(), t, pos - 1);
        case Kind::Since:
            for (std::size_t j = pos + 1; j-- > 0;) {
                if (eval_naive_informative(f->right(), t, j)) {
                    bool all = true;
                    for (std::size_t k = j + 1; k <= pos && all; ++k)
                        all = eval_naive_informative(f->left(), t, k);
                    if (all) return true;
                }
            }
            return false;
        case Kind::Triggers: {
            bool all = true;
            for (std::size_t j = 0; j <= pos && all; ++j)
                all = eval_naive_informative(f->right(), t, j);
            if (all) return true;
            for (std::size_t k = pos + 1; k-- > 0;) {
                if (eval_naive_informative(f->left(), t, k)) {
                    bool held = true;
                    for (std::size_t j = k; j <= pos && held; ++j)
                        held = eval_naive_informative(f->right(), t, j);
                    if (held) return true;
                }
            }
            return false;
        }
        case Kind::Eventually:  // true U child
            for (std::size_t j = pos; j < n; ++j)
                if (eval_naive_informative(f->child(), t, j)) return true;
            return false;
        case Kind::Globally:
            // false R child reads as child U (false & child): unsatisfiable
            return false;
        case Kind::Once:
            for (std::size_t j = pos + 1; j-- > 0;)
                if (eval_naive_informative(f->child(), t, j)) return true;
            return false;
        case Kind::Historically:
            for (std::size_t j = 0; j <= pos; ++j)
                if (!eval_naive_informative(f->child(), t, j)) return false;
            return true;
    }
    throw std::logic_error("eval_naive_informative: unreachable");
}

// ── Word enumeration ────────────────────────────────────────────────────────

std::vector<Trace> enumerate_words(const Alphabet& ap, std::size_t max_len) {
    if (ap.size() > 3 || max_len > 6)
        throw std::invalid_argument("enumerate_words is guarded to |ap| <= 3 and length <= 6");
    const std::size_t letters = std::size_t{1} << ap.size();
    std::vector<Trace> out;
    for (std::size_t len = 1; len <= max_len; ++len) {
        std::vector<Letter> word(len, 0);
        while (true) {
            out.emplace_back(ap, word);
            // increment, most-significant position first for lexicographic order
            std::size_t i = len;
            while (i-- > 0) {
                if (++word[i] < letters) break;
                word[i] = 0;
                if (i == 0) goto next_length;
            }
        }
    next_length:;
    }
    return out;
}

// ── Bounded-extension oracles ───────────────────────────────────────────────

namespace {

// Applies `check` to sigma extended by every word of length <= bound
// (including the empty extension when sigma is nonempty); stops early when
// check fails.
template <typename Check>
bool for_all_extensions(const Trace& sigma, std::size_t bound, Check check) {
    const std::size_t letters = std::size_t{1} << sigma.alphabet().size();
    Trace word = sigma;
    auto rec = [&](auto&& self, std::size_t remaining) -> bool {
        if (!word.empty() && !check(word)) return false;
        if (remaining == 0) return true;
        for (Letter a = 0; a < letters; ++a) {
            word.push(a);
            bool ok = self(self, remaining - 1);
            word.pop();
            if (!ok) return false;
        }
        return true;
    };
    return rec(rec, bound);
}

}  // namespace

bool oracle_good_prefix_finite(const FormulaPtr& f, const Trace& sigma, std::size_t ext_bound) {
    if (sigma.empty()) throw std::invalid_argument("good-prefix oracle requires a nonempty word");
    return for_all_extensions(sigma, ext_bound,
                              [&](const Trace& w) { return eval_naive(f, w, 0); });
}

bool oracle_bad_prefix_finite(const FormulaPtr& f, const Trace& sigma, std::size_t ext_bound) {
    if (sigma.empty()) throw std::invalid_argument("bad-prefix oracle requires a nonempty word");
    return for_all_extensions(sigma, ext_bound,
                              [&](const Trace& w) { return !eval_naive(f, w, 0); });
}

Verdict oracle_monitor_finite(const FormulaPtr& f, const Trace& sigma, std::size_t ext_bound) {
    bool all_sat = for_all_extensions(sigma, ext_bound,
                                      [&](const Trace& w) { return eval_naive(f, w, 0); });
    if (all_sat) return Verdict::Top;
    bool all_bad = for_all_extensions(sigma, ext_bound,
                                      [&](const Trace& w) { return !eval_naive(f, w, 0); });
    if (all_bad) return Verdict::Bot;
    return Verdict::Unknown;
}

// ── Infinite-word good prefixes for F(pLTL) ─────────────────────────────────

struct InfiniteGoodPrefixOracle::Impl {
    EvalPlan plan;
    Alphabet ap;
    std::unordered_map<std::uint64_t, std::size_t> node_of;  // vector -> node id
    std::vector<bool> can_avoid_forever;                     // per node id

    // Last-column valuation vector of all plan nodes, plus whether the root
    // held at any position.
    std::pair<std::uint64_t, bool> evaluate(const Trace& w) const {
        EvalTable tab = eval_finite_table(plan, w);
        std::uint64_t vec = 0;
        for (std::size_t k = 0; k < plan.nodes.size(); ++k)
            if (tab.value(k, w.size() - 1)) vec |= std::uint64_t{1} << k;
        const auto& root_row = tab.row(plan.root());
        bool root_anywhere = false;
        for (std::uint8_t v : root_row) root_anywhere |= v != 0;
        return {vec, root_anywhere};
    }
};

InfiniteGoodPrefixOracle::InfiniteGoodPrefixOracle(const FormulaPtr& f_pltl, const Alphabet& ap)
    : impl_(std::make_unique<Impl>()) {
    if (classify(f_pltl) != FragmentClass::FPltl)
        throw FragmentError("the infinite good-prefix oracle requires F(pLTL): " +
                            to_string(f_pltl));
    FormulaPtr body = fragment_body(f_pltl);
    impl_->plan = make_plan(body, ap);
    impl_->ap = ap;
    if (impl_->plan.nodes.size() > 64)
        throw std::invalid_argument("body has too many distinct subformulas (max 64)");

    const std::size_t letters = std::size_t{1} << ap.size();

    // Explore the graph of body-false valuation vectors reachable by nonempty
    // words; successors are computed by re-evaluating a representative word
    // extended by one letter.
    std::vector<std::vector<std::size_t>> succs;
    std::vector<Trace> reps;
    std::deque<std::size_t> queue;

    auto intern = [&](std::uint64_t vec, const Trace& rep) -> std::size_t {
        auto it = impl_->node_of.find(vec);
        if (it != impl_->node_of.end()) return it->second;
        std::size_t id = succs.size();
        impl_->node_of.emplace(vec, id);
        succs.emplace_back();
        reps.push_back(rep);
        queue.push_back(id);
        return id;
    };

    for (Letter a = 0; a < letters; ++a) {
        Trace w(ap);
        w.push(a);
        auto [vec, sat] = impl_->evaluate(w);
        if (!sat) intern(vec, w);
    }
    while (!queue.empty()) {
        std::size_t id = queue.front();
        queue.pop_front();
        Trace rep = reps[id];
        for (Letter a = 0; a < letters; ++a) {
            Trace ext = rep;
            ext.push(a);
            auto [vec, sat] = impl_->evaluate(ext);
            if (sat) continue;  // this continuation discharges the body
            std::size_t to = intern(vec, ext);
            succs[id].push_back(to);
        }
    }

    // A vector allows avoiding the body forever iff it survives iterated
    // removal of sink nodes, i.e. it reaches a cycle of body-false vectors.
    const std::size_t n = succs.size();
    std::vector<std::vector<std::size_t>> preds(n);
    std::vector<std::size_t> out_degree(n);
    for (std::size_t q = 0; q < n; ++q) {
        out_degree[q] = succs[q].size();
        for (std::size_t to : succs[q]) preds[to].push_back(q);
    }
    std::vector<bool> removed(n, false);
    std::deque<std::size_t> sinks;
    for (std::size_t q = 0; q < n; ++q)
        if (out_degree[q] == 0) sinks.push_back(q);
    while (!sinks.empty()) {
        std::size_t q = sinks.front();
        sinks.pop_front();
        if (removed[q]) continue;
        removed[q] = true;
        for (std::size_t p : preds[q])
            if (!removed[p] && --out_degree[p] == 0) sinks.push_back(p);
    }
    impl_->can_avoid_forever.assign(n, false);
    for (std::size_t q = 0; q < n; ++q) impl_->can_avoid_forever[q] = !removed[q];
}

InfiniteGoodPrefixOracle::~InfiniteGoodPrefixOracle() = default;
InfiniteGoodPrefixOracle::InfiniteGoodPrefixOracle(InfiniteGoodPrefixOracle&&) noexcept = default;
InfiniteGoodPrefixOracle& InfiniteGoodPrefixOracle::operator=(InfiniteGoodPrefixOracle&&) noexcept =
    default;

bool InfiniteGoodPrefixOracle::good_prefix(const Trace& sigma) const {
    if (sigma.empty()) throw std::invalid_argument("good-prefix oracle requires a nonempty word");
    Trace local(impl_->ap);
    for (Letter a : sigma.events()) local.push(remap_letter(a, sigma.alphabet(), impl_->ap));
    auto [vec, sat] = impl_->evaluate(local);
    if (sat) return true;  // the body already held inside sigma
    auto it = impl_->node_of.find(vec);
    if (it == impl_->node_of.end())
        throw std::logic_error("valuation vector missing from the exploration graph");
    return !impl_->can_avoid_forever[it->second];
}

bool oracle_good_prefix_infinite_fpltl(const FormulaPtr& f_pltl, const Trace& sigma) {
    std::vector<std::string> atoms = collect_atoms(f_pltl);
    const auto& extra = sigma.alphabet().atoms();
    atoms.insert(atoms.end(), extra.begin(), extra.end());
    InfiniteGoodPrefixOracle oracle(f_pltl, Alphabet(std::move(atoms)));
    return oracle.good_prefix(sigma);
}

}  // namespace tcmon
