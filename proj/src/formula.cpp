#include "tcmon/formula.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <unordered_set>

namespace tcmon {

namespace {

std::size_t mix(std::size_t h, std::size_t v) {
    // splitmix-style combine
    h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
}

}  // namespace

const char* kind_name(Kind k) noexcept {
    switch (k) {
        case Kind::True: return "true";
        case Kind::False: return "false";
        case Kind::Atom: return "atom";
        case Kind::NegAtom: return "negatom";
        case Kind::Not: return "!";
        case Kind::And: return "&";
        case Kind::Or: return "|";
        case Kind::Next: return "X";
        case Kind::WeakNext: return "wX";
        case Kind::Until: return "U";
        case Kind::Release: return "R";
        case Kind::Yesterday: return "Y";
        case Kind::WeakYesterday: return "wY";
        case Kind::Since: return "S";
        case Kind::Triggers: return "T";
        case Kind::Eventually: return "F";
        case Kind::Globally: return "G";
        case Kind::Once: return "O";
        case Kind::Historically: return "H";
    }
    return "?";
}

bool is_future_kind(Kind k) noexcept {
    switch (k) {
        case Kind::Next:
        case Kind::WeakNext:
        case Kind::Until:
        case Kind::Release:
        case Kind::Eventually:
        case Kind::Globally:
            return true;
        default:
            return false;
    }
}

bool is_past_kind(Kind k) noexcept {
    switch (k) {
        case Kind::Yesterday:
        case Kind::WeakYesterday:
        case Kind::Since:
        case Kind::Triggers:
        case Kind::Once:
        case Kind::Historically:
            return true;
        default:
            return false;
    }
}

const char* fragment_name(FragmentClass c) noexcept {
    switch (c) {
        case FragmentClass::PurePast: return "PURE_PAST";
        case FragmentClass::FPltl: return "F_PLTL";
        case FragmentClass::GPltl: return "G_PLTL";
        case FragmentClass::PureFuture: return "PURE_FUTURE";
        case FragmentClass::Full: return "FULL";
    }
    return "?";
}

// ── Formula nodes ───────────────────────────────────────────────────────────

Formula::Formula(Kind k, std::string a, FormulaPtr l, FormulaPtr r)
    : kind_(k), atom_(std::move(a)), left_(std::move(l)), right_(std::move(r)) {
    std::size_t h = static_cast<std::size_t>(kind_) * 0x100000001b3ULL;
    h = mix(h, std::hash<std::string>{}(atom_));
    if (left_) h = mix(h, left_->hash());
    if (right_) h = mix(h, right_->hash());
    hash_ = h;
}

bool Formula::operator==(const Formula& o) const noexcept {
    if (this == &o) return true;
    if (kind_ != o.kind_ || hash_ != o.hash_ || atom_ != o.atom_) return false;
    if (static_cast<bool>(left_) != static_cast<bool>(o.left_)) return false;
    if (static_cast<bool>(right_) != static_cast<bool>(o.right_)) return false;
    if (left_ && !(*left_ == *o.left_)) return false;
    if (right_ && !(*right_ == *o.right_)) return false;
    return true;
}

bool equal(const FormulaPtr& a, const FormulaPtr& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    return *a == *b;
}

namespace {
FormulaPtr make(Kind k, std::string a, FormulaPtr l, FormulaPtr r) {
    struct Access : Formula {
        Access(Kind k, std::string a, FormulaPtr l, FormulaPtr r)
            : Formula(k, std::move(a), std::move(l), std::move(r)) {}
    };
    return std::make_shared<Access>(k, std::move(a), std::move(l), std::move(r));
}
}  // namespace

FormulaPtr Formula::tt() { return make(Kind::True, {}, nullptr, nullptr); }
FormulaPtr Formula::ff() { return make(Kind::False, {}, nullptr, nullptr); }
FormulaPtr Formula::atom(std::string n) { return make(Kind::Atom, std::move(n), nullptr, nullptr); }
FormulaPtr Formula::neg_atom(std::string n) { return make(Kind::NegAtom, std::move(n), nullptr, nullptr); }
FormulaPtr Formula::logical_not(FormulaPtr c) { return make(Kind::Not, {}, std::move(c), nullptr); }
FormulaPtr Formula::conj(FormulaPtr l, FormulaPtr r) { return make(Kind::And, {}, std::move(l), std::move(r)); }
FormulaPtr Formula::disj(FormulaPtr l, FormulaPtr r) { return make(Kind::Or, {}, std::move(l), std::move(r)); }
FormulaPtr Formula::next(FormulaPtr c) { return make(Kind::Next, {}, std::move(c), nullptr); }
FormulaPtr Formula::weak_next(FormulaPtr c) { return make(Kind::WeakNext, {}, std::move(c), nullptr); }
FormulaPtr Formula::until(FormulaPtr l, FormulaPtr r) { return make(Kind::Until, {}, std::move(l), std::move(r)); }
FormulaPtr Formula::release(FormulaPtr l, FormulaPtr r) { return make(Kind::Release, {}, std::move(l), std::move(r)); }
FormulaPtr Formula::yesterday(FormulaPtr c) { return make(Kind::Yesterday, {}, std::move(c), nullptr); }
FormulaPtr Formula::weak_yesterday(FormulaPtr c) { return make(Kind::WeakYesterday, {}, std::move(c), nullptr); }
FormulaPtr Formula::since(FormulaPtr l, FormulaPtr r) { return make(Kind::Since, {}, std::move(l), std::move(r)); }
FormulaPtr Formula::triggers(FormulaPtr l, FormulaPtr r) { return make(Kind::Triggers, {}, std::move(l), std::move(r)); }
FormulaPtr Formula::eventually(FormulaPtr c) { return make(Kind::Eventually, {}, std::move(c), nullptr); }
FormulaPtr Formula::globally(FormulaPtr c) { return make(Kind::Globally, {}, std::move(c), nullptr); }
FormulaPtr Formula::once(FormulaPtr c) { return make(Kind::Once, {}, std::move(c), nullptr); }
FormulaPtr Formula::historically(FormulaPtr c) { return make(Kind::Historically, {}, std::move(c), nullptr); }

// ── Parser ──────────────────────────────────────────────────────────────────

namespace {

enum class Tok : std::uint8_t {
    Atom, True, False,
    Bang, Amp, Pipe, LParen, RParen,
    X, WX, F, G, Y, WY, O, H, U, R, S, T,
    End,
};

struct Token {
    Tok kind;
    std::string text;
    std::size_t line;
    std::size_t column;
};

const char* tok_name(Tok t) {
    switch (t) {
        case Tok::Atom: return "atom";
        case Tok::True: return "true";
        case Tok::False: return "false";
        case Tok::Bang: return "!";
        case Tok::Amp: return "&";
        case Tok::Pipe: return "|";
        case Tok::LParen: return "(";
        case Tok::RParen: return ")";
        case Tok::X: return "X";
        case Tok::WX: return "wX";
        case Tok::F: return "F";
        case Tok::G: return "G";
        case Tok::Y: return "Y";
        case Tok::WY: return "wY";
        case Tok::O: return "O";
        case Tok::H: return "H";
        case Tok::U: return "U";
        case Tok::R: return "R";
        case Tok::S: return "S";
        case Tok::T: return "T";
        case Tok::End: return "end of input";
    }
    return "?";
}

class Lexer {
public:
    explicit Lexer(const std::string& text) : text_(text) {}

    std::vector<Token> run() {
        std::vector<Token> out;
        while (pos_ < text_.size()) {
            char c = text_[pos_];
            if (c == '\n') { ++line_; col_ = 1; ++pos_; continue; }
            if (std::isspace(static_cast<unsigned char>(c))) { ++col_; ++pos_; continue; }
            std::size_t tl = line_, tc = col_;
            if (c == '!') { out.push_back({Tok::Bang, "!", tl, tc}); advance(1); continue; }
            if (c == '&') { out.push_back({Tok::Amp, "&", tl, tc}); advance(1); continue; }
            if (c == '|') { out.push_back({Tok::Pipe, "|", tl, tc}); advance(1); continue; }
            if (c == '(') { out.push_back({Tok::LParen, "(", tl, tc}); advance(1); continue; }
            if (c == ')') { out.push_back({Tok::RParen, ")", tl, tc}); advance(1); continue; }
            if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
                std::size_t start = pos_;
                while (pos_ < text_.size() &&
                       (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
                    ++pos_; ++col_;
                }
                std::string word = text_.substr(start, pos_ - start);
                out.push_back({keyword(word), word, tl, tc});
                continue;
            }
            throw ParseError("unknown operator token '" + std::string(1, c) + "'", tl, tc);
        }
        out.push_back({Tok::End, "", line_, col_});
        return out;
    }

private:
    void advance(std::size_t n) { pos_ += n; col_ += n; }

    static Tok keyword(const std::string& w) {
        if (w == "true") return Tok::True;
        if (w == "false") return Tok::False;
        if (w == "X") return Tok::X;
        if (w == "wX") return Tok::WX;
        if (w == "F") return Tok::F;
        if (w == "G") return Tok::G;
        if (w == "Y") return Tok::Y;
        if (w == "wY") return Tok::WY;
        if (w == "O") return Tok::O;
        if (w == "H") return Tok::H;
        if (w == "U") return Tok::U;
        if (w == "R") return Tok::R;
        if (w == "S") return Tok::S;
        if (w == "T") return Tok::T;
        return Tok::Atom;
    }

    const std::string& text_;
    std::size_t pos_ = 0;
    std::size_t line_ = 1;
    std::size_t col_ = 1;
};

class Parser {
public:
    explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

    FormulaPtr run() {
        FormulaPtr f = parse_or();
        if (peek().kind != Tok::End) {
            fail("unexpected token '" + peek().text + "'",
                 {"&", "|", "U", "R", "S", "T", "end of input"});
        }
        return f;
    }

private:
    const Token& peek() const { return toks_[i_]; }
    Token eat() { return toks_[i_++]; }

    [[noreturn]] void fail(const std::string& msg, std::vector<std::string> expected) {
        throw ParseError(msg, peek().line, peek().column, std::move(expected));
    }

    FormulaPtr parse_or() {
        FormulaPtr l = parse_and();
        if (peek().kind == Tok::Pipe) {
            eat();
            return Formula::disj(std::move(l), parse_or());
        }
        return l;
    }

    FormulaPtr parse_and() {
        FormulaPtr l = parse_temporal();
        if (peek().kind == Tok::Amp) {
            eat();
            return Formula::conj(std::move(l), parse_and());
        }
        return l;
    }

    FormulaPtr parse_temporal() {
        FormulaPtr l = parse_unary();
        switch (peek().kind) {
            case Tok::U: eat(); return Formula::until(std::move(l), parse_temporal());
            case Tok::R: eat(); return Formula::release(std::move(l), parse_temporal());
            case Tok::S: eat(); return Formula::since(std::move(l), parse_temporal());
            case Tok::T: eat(); return Formula::triggers(std::move(l), parse_temporal());
            default: return l;
        }
    }

    FormulaPtr parse_unary() {
        switch (peek().kind) {
            case Tok::Bang: {
                eat();
                FormulaPtr c = parse_unary();
                if (c->kind() == Kind::Atom) return Formula::neg_atom(c->atom_name());
                return Formula::logical_not(std::move(c));
            }
            case Tok::X: eat(); return Formula::next(parse_unary());
            case Tok::WX: eat(); return Formula::weak_next(parse_unary());
            case Tok::F: eat(); return Formula::eventually(parse_unary());
            case Tok::G: eat(); return Formula::globally(parse_unary());
            case Tok::Y: eat(); return Formula::yesterday(parse_unary());
            case Tok::WY: eat(); return Formula::weak_yesterday(parse_unary());
            case Tok::O: eat(); return Formula::once(parse_unary());
            case Tok::H: eat(); return Formula::historically(parse_unary());
            default: return parse_primary();
        }
    }

    FormulaPtr parse_primary() {
        switch (peek().kind) {
            case Tok::True: eat(); return Formula::tt();
            case Tok::False: eat(); return Formula::ff();
            case Tok::Atom: return Formula::atom(eat().text);
            case Tok::LParen: {
                eat();
                FormulaPtr f = parse_or();
                if (peek().kind != Tok::RParen) fail("expected ')'", {")"});
                eat();
                return f;
            }
            default:
                fail("expected a formula, found '" + std::string(tok_name(peek().kind)) + "'",
                     {"atom", "true", "false", "!", "(", "X", "wX", "F", "G", "Y", "wY", "O", "H"});
        }
    }

    std::vector<Token> toks_;
    std::size_t i_ = 0;
};

}  // namespace

ParseError::ParseError(std::string msg, std::size_t line, std::size_t column,
                       std::vector<std::string> expected)
    : std::runtime_error([&] {
          std::ostringstream s;
          s << "parse error at " << line << ":" << column << ": " << msg;
          if (!expected.empty()) {
              s << " (expected ";
              for (std::size_t i = 0; i < expected.size(); ++i)
                  s << (i ? ", " : "") << expected[i];
              s << ")";
          }
          return s.str();
      }()),
      line_(line), column_(column), expected_(std::move(expected)) {}

FormulaPtr parse_formula(const std::string& text) {
    return Parser(Lexer(text).run()).run();
}

// ── Printer ─────────────────────────────────────────────────────────────────

namespace {

// Precedence levels: | = 1, & = 2, U/R/S/T = 3, unary = 4, leaf = 5.
int prec(const Formula& f) {
    switch (f.kind()) {
        case Kind::Or: return 1;
        case Kind::And: return 2;
        case Kind::Until:
        case Kind::Release:
        case Kind::Since:
        case Kind::Triggers: return 3;
        case Kind::Not:
        case Kind::Next:
        case Kind::WeakNext:
        case Kind::Eventually:
        case Kind::Globally:
        case Kind::Yesterday:
        case Kind::WeakYesterday:
        case Kind::Once:
        case Kind::Historically: return 4;
        default: return 5;
    }
}

void print_rec(const Formula& f, int need, std::string& out) {
    bool paren = prec(f) < need;
    if (paren) out += '(';
    switch (f.kind()) {
        case Kind::True: out += "true"; break;
        case Kind::False: out += "false"; break;
        case Kind::Atom: out += f.atom_name(); break;
        case Kind::NegAtom: out += '!'; out += f.atom_name(); break;
        case Kind::Not:
            out += '!';
            print_rec(*f.child(), 4, out);
            break;
        case Kind::Next:
        case Kind::WeakNext:
        case Kind::Eventually:
        case Kind::Globally:
        case Kind::Yesterday:
        case Kind::WeakYesterday:
        case Kind::Once:
        case Kind::Historically: {
            out += kind_name(f.kind());
            // parenthesised operand needs no separating space
            if (prec(*f.child()) < 4) {
                print_rec(*f.child(), 4, out);
            } else {
                out += ' ';
                print_rec(*f.child(), 4, out);
            }
            break;
        }
        case Kind::And:
            print_rec(*f.left(), 3, out);
            out += " & ";
            print_rec(*f.right(), 2, out);
            break;
        case Kind::Or:
            print_rec(*f.left(), 2, out);
            out += " | ";
            print_rec(*f.right(), 1, out);
            break;
        case Kind::Until:
        case Kind::Release:
        case Kind::Since:
        case Kind::Triggers:
            print_rec(*f.left(), 4, out);
            out += ' ';
            out += kind_name(f.kind());
            out += ' ';
            print_rec(*f.right(), 3, out);
            break;
    }
    if (paren) out += ')';
}

}  // namespace

std::string to_string(const FormulaPtr& f) {
    std::string out;
    print_rec(*f, 0, out);
    return out;
}

// ── Normal forms ────────────────────────────────────────────────────────────

FormulaPtr negate(const FormulaPtr& f) {
    switch (f->kind()) {
        case Kind::True: return Formula::ff();
        case Kind::False: return Formula::tt();
        case Kind::Atom: return Formula::neg_atom(f->atom_name());
        case Kind::NegAtom: return Formula::atom(f->atom_name());
        case Kind::And: return Formula::disj(negate(f->left()), negate(f->right()));
        case Kind::Or: return Formula::conj(negate(f->left()), negate(f->right()));
        case Kind::Next: return Formula::weak_next(negate(f->child()));
        case Kind::WeakNext: return Formula::next(negate(f->child()));
        case Kind::Until: return Formula::release(negate(f->left()), negate(f->right()));
        case Kind::Release: return Formula::until(negate(f->left()), negate(f->right()));
        case Kind::Yesterday: return Formula::weak_yesterday(negate(f->child()));
        case Kind::WeakYesterday: return Formula::yesterday(negate(f->child()));
        case Kind::Since: return Formula::triggers(negate(f->left()), negate(f->right()));
        case Kind::Triggers: return Formula::since(negate(f->left()), negate(f->right()));
        default:
            throw std::invalid_argument(std::string("negate: formula not in core form (") +
                                        kind_name(f->kind()) + ")");
    }
}

FormulaPtr to_core(const FormulaPtr& f) {
    switch (f->kind()) {
        case Kind::True:
        case Kind::False:
        case Kind::Atom:
        case Kind::NegAtom:
            return f;
        case Kind::Not: return negate(to_core(f->child()));
        case Kind::And: return Formula::conj(to_core(f->left()), to_core(f->right()));
        case Kind::Or: return Formula::disj(to_core(f->left()), to_core(f->right()));
        case Kind::Next: return Formula::next(to_core(f->child()));
        case Kind::WeakNext: return Formula::weak_next(to_core(f->child()));
        case Kind::Until: return Formula::until(to_core(f->left()), to_core(f->right()));
        case Kind::Release: return Formula::release(to_core(f->left()), to_core(f->right()));
        case Kind::Yesterday: return Formula::yesterday(to_core(f->child()));
        case Kind::WeakYesterday: return Formula::weak_yesterday(to_core(f->child()));
        case Kind::Since: return Formula::since(to_core(f->left()), to_core(f->right()));
        case Kind::Triggers: return Formula::triggers(to_core(f->left()), to_core(f->right()));
        case Kind::Eventually: return Formula::until(Formula::tt(), to_core(f->child()));
        case Kind::Globally: return Formula::release(Formula::ff(), to_core(f->child()));
        case Kind::Once: return Formula::since(Formula::tt(), to_core(f->child()));
        case Kind::Historically: return Formula::triggers(Formula::ff(), to_core(f->child()));
    }
    throw std::logic_error("to_core: unreachable");
}

bool is_core(const FormulaPtr& f) {
    switch (f->kind()) {
        case Kind::Not:
        case Kind::Eventually:
        case Kind::Globally:
        case Kind::Once:
        case Kind::Historically:
            return false;
        default:
            if (f->left() && !is_core(f->left())) return false;
            if (f->right() && !is_core(f->right())) return false;
            return true;
    }
}

namespace {
bool contains_kind(const FormulaPtr& f, bool (*pred)(Kind) noexcept) {
    if (pred(f->kind())) return true;
    if (f->left() && contains_kind(f->left(), pred)) return true;
    if (f->right() && contains_kind(f->right(), pred)) return true;
    return false;
}
}  // namespace

bool is_pure_past(const FormulaPtr& f) { return !contains_kind(f, is_future_kind); }
bool is_pure_future(const FormulaPtr& f) { return !contains_kind(f, is_past_kind); }

FragmentClass classify(const FormulaPtr& core) {
    if (is_pure_past(core)) return FragmentClass::PurePast;
    if (core->kind() == Kind::Until && core->left()->kind() == Kind::True)
        return is_pure_past(core->right()) ? FragmentClass::FPltl : FragmentClass::Full;
    if (core->kind() == Kind::Release && core->left()->kind() == Kind::False)
        return is_pure_past(core->right()) ? FragmentClass::GPltl : FragmentClass::Full;
    if (is_pure_future(core)) return FragmentClass::PureFuture;
    return FragmentClass::Full;
}

FormulaPtr fragment_body(const FormulaPtr& core) {
    FragmentClass c = classify(core);
    if (c != FragmentClass::FPltl && c != FragmentClass::GPltl)
        throw FragmentError("formula is not in F(pLTL) or G(pLTL): " + to_string(core));
    return core->right();
}

// ── Subformulas, closure, size, atoms ───────────────────────────────────────

namespace {
void collect_subformulas(const FormulaPtr& f,
                         std::vector<FormulaPtr>& out,
                         std::unordered_set<FormulaPtr, FormulaPtrHash, FormulaPtrEq>& seen) {
    if (seen.count(f)) return;
    if (f->left()) collect_subformulas(f->left(), out, seen);
    if (f->right()) collect_subformulas(f->right(), out, seen);
    if (seen.insert(f).second) out.push_back(f);
}
}  // namespace

std::vector<FormulaPtr> subformulas(const FormulaPtr& f) {
    std::vector<FormulaPtr> out;
    std::unordered_set<FormulaPtr, FormulaPtrHash, FormulaPtrEq> seen;
    collect_subformulas(f, out, seen);
    return out;
}

std::vector<FormulaPtr> closure(const FormulaPtr& f) {
    std::vector<FormulaPtr> out;
    std::unordered_set<FormulaPtr, FormulaPtrHash, FormulaPtrEq> seen;
    for (const FormulaPtr& s : subformulas(f)) {
        if (seen.insert(s).second) out.push_back(s);
        FormulaPtr n = negate(s);
        if (seen.insert(n).second) out.push_back(n);
    }
    return out;
}

namespace {
std::size_t symbol_count(const FormulaPtr& f) {
    switch (f->kind()) {
        case Kind::True:
        case Kind::False:
        case Kind::Atom:
            return 1;
        case Kind::NegAtom:
            return 2;
        default: {
            std::size_t n = 1;
            if (f->left()) n += symbol_count(f->left());
            if (f->right()) n += symbol_count(f->right());
            return n;
        }
    }
}
}  // namespace

std::size_t formula_size(const FormulaPtr& f) { return symbol_count(to_core(f)); }

namespace {
void collect_atoms_rec(const FormulaPtr& f, std::vector<std::string>& out) {
    if (f->kind() == Kind::Atom || f->kind() == Kind::NegAtom) out.push_back(f->atom_name());
    if (f->left()) collect_atoms_rec(f->left(), out);
    if (f->right()) collect_atoms_rec(f->right(), out);
}
}  // namespace

std::vector<std::string> collect_atoms(const FormulaPtr& f) {
    std::vector<std::string> out;
    collect_atoms_rec(f, out);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace tcmon
