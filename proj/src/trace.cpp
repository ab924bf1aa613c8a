#include "tcmon/trace.hpp"

#include <algorithm>
#include <cctype>
#include <istream>
#include <sstream>

namespace tcmon {

namespace {

constexpr std::size_t kMaxAlphabetAtoms = 64;

bool is_ident(std::string_view s) {
    if (s.empty()) return false;
    if (!std::isalpha(static_cast<unsigned char>(s[0])) && s[0] != '_') return false;
    for (char c : s)
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
    return true;
}

// Parses one event line into a letter; `where` goes into error messages.
Letter parse_event_line(std::string_view line, const Alphabet& ap, const std::string& where) {
    Letter a = 0;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        if (i >= line.size()) break;
        std::size_t start = i;
        while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        std::string_view tok = line.substr(start, i - start);
        if (!is_ident(tok))
            throw TraceError(where + ": malformed event token '" + std::string(tok) + "'");
        auto idx = ap.index_of(tok);
        if (!idx)
            throw TraceError(where + ": unknown atom '" + std::string(tok) +
                             "' (not in the declared alphabet)");
        a |= Letter{1} << *idx;
    }
    return a;
}

// Strips comments and returns nullopt for lines that carry no event at all
// (comment-only lines).  A line that is blank after trimming IS an event: {}.
std::optional<std::string_view> event_payload(std::string_view raw) {
    auto hash = raw.find('#');
    bool had_comment = hash != std::string_view::npos;
    std::string_view body = had_comment ? raw.substr(0, hash) : raw;
    bool blank = body.find_first_not_of(" \t\r") == std::string_view::npos;
    if (blank && had_comment) return std::nullopt;  // pure comment line
    return body;
}

}  // namespace

Alphabet::Alphabet(std::vector<std::string> atoms) : atoms_(std::move(atoms)) {
    std::sort(atoms_.begin(), atoms_.end());
    atoms_.erase(std::unique(atoms_.begin(), atoms_.end()), atoms_.end());
    if (atoms_.size() > kMaxAlphabetAtoms)
        throw TraceError("alphabet too large: " + std::to_string(atoms_.size()) +
                         " atoms (max " + std::to_string(kMaxAlphabetAtoms) + ")");
    for (const std::string& a : atoms_)
        if (!is_ident(a)) throw TraceError("invalid atom name '" + a + "'");
}

std::optional<std::size_t> Alphabet::index_of(std::string_view name) const {
    auto it = std::lower_bound(atoms_.begin(), atoms_.end(), name);
    if (it == atoms_.end() || *it != name) return std::nullopt;
    return static_cast<std::size_t>(it - atoms_.begin());
}

std::string Alphabet::letter_to_string(Letter a) const {
    std::string out = "{";
    bool first = true;
    for (std::size_t i = 0; i < atoms_.size(); ++i) {
        if (a & (Letter{1} << i)) {
            if (!first) out += ',';
            out += atoms_[i];
            first = false;
        }
    }
    out += '}';
    return out;
}

Letter remap_letter(Letter a, const Alphabet& from, const Alphabet& to) {
    if (from == to) return a;
    Letter out = 0;
    for (std::size_t i = 0; i < from.size(); ++i) {
        if (!(a & (Letter{1} << i))) continue;
        auto idx = to.index_of(from.atoms()[i]);
        if (!idx)
            throw TraceError("letter outside alphabet: atom '" + from.atoms()[i] + "'");
        out |= Letter{1} << *idx;
    }
    return out;
}

Trace Trace::prefix(std::size_t i) const {
    if (i >= events_.size())
        throw std::out_of_range("prefix index " + std::to_string(i) + " out of range (size " +
                                std::to_string(events_.size()) + ")");
    return Trace(ap_, std::vector<Letter>(events_.begin(), events_.begin() + i + 1));
}

Trace Trace::concat(const Trace& tail) const {
    Trace out(ap_, events_);
    for (Letter a : tail.events_) out.push(remap_letter(a, tail.ap_, ap_));
    return out;
}

Trace parse_trace(const std::string& text, const Alphabet& ap) {
    Trace out(ap);
    std::istringstream in(text);
    TraceReader reader(in, ap);
    while (auto e = reader.next()) out.push(*e);
    return out;
}

std::string print_trace(const Trace& t) {
    std::string out;
    const Alphabet& ap = t.alphabet();
    for (Letter a : t.events()) {
        bool first = true;
        for (std::size_t i = 0; i < ap.size(); ++i) {
            if (a & (Letter{1} << i)) {
                if (!first) out += ' ';
                out += ap.atoms()[i];
                first = false;
            }
        }
        out += '\n';
    }
    return out;
}

std::optional<Letter> TraceReader::next() {
    std::string raw;
    while (std::getline(in_, raw)) {
        ++line_;
        auto payload = event_payload(raw);
        if (!payload) continue;
        return parse_event_line(*payload, ap_, "line " + std::to_string(line_));
    }
    return std::nullopt;
}

}  // namespace tcmon
