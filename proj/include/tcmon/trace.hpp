// ============================================================================
// tcmon/trace.hpp — Traces over 2^AP and the line-based trace format
// ============================================================================
//
// A Letter is a bitmask over the atoms of an Alphabet (bit i set means
// alphabet.atoms()[i] is present in the event).  Alphabets hold at most 64
// atoms.  Traces are immutable after parsing; copy and share freely.
//
// Trace file format, one event per line:
//   - an event is a whitespace-separated list of atom names;
//   - a blank line (after trimming) is the empty event;
//   - '#' starts a comment line.
//
// ============================================================================

#ifndef TCMON_TRACE_HPP
#define TCMON_TRACE_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace tcmon {

using Letter = std::uint64_t;

class TraceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// ── Alphabet ────────────────────────────────────────────────────────────────

class Alphabet {
public:
    Alphabet() = default;
    explicit Alphabet(std::vector<std::string> atoms);  // sorted and deduplicated

    std::size_t size() const noexcept { return atoms_.size(); }
    const std::vector<std::string>& atoms() const noexcept { return atoms_; }
    std::optional<std::size_t> index_of(std::string_view name) const;
    bool contains(std::string_view name) const { return index_of(name).has_value(); }

    bool operator==(const Alphabet& o) const noexcept { return atoms_ == o.atoms_; }

    // "{p,q}" or "{}"
    std::string letter_to_string(Letter a) const;

private:
    std::vector<std::string> atoms_;
};

// Translates a letter between alphabets by atom name; throws TraceError when
// the letter mentions an atom absent from `to`.
Letter remap_letter(Letter a, const Alphabet& from, const Alphabet& to);

// ── Trace ───────────────────────────────────────────────────────────────────

class Trace {
public:
    Trace() = default;
    explicit Trace(Alphabet ap) : ap_(std::move(ap)) {}
    Trace(Alphabet ap, std::vector<Letter> events)
        : ap_(std::move(ap)), events_(std::move(events)) {}

    const Alphabet& alphabet() const noexcept { return ap_; }
    std::size_t size() const noexcept { return events_.size(); }
    bool empty() const noexcept { return events_.empty(); }
    Letter operator[](std::size_t i) const { return events_[i]; }
    const std::vector<Letter>& events() const noexcept { return events_; }

    void push(Letter a) { events_.push_back(a); }
    void pop() { events_.pop_back(); }

    // First i+1 events; throws std::out_of_range unless 0 <= i < size().
    Trace prefix(std::size_t i) const;

    Trace concat(const Trace& tail) const;

    bool operator==(const Trace& o) const noexcept {
        return ap_ == o.ap_ && events_ == o.events_;
    }

private:
    Alphabet ap_;
    std::vector<Letter> events_;
};

Trace parse_trace(const std::string& text, const Alphabet& ap);
std::string print_trace(const Trace& t);

// ── Streaming reader ────────────────────────────────────────────────────────
// Pulls one event at a time from a stream without buffering the whole input.
// Single consumer.

class TraceReader {
public:
    TraceReader(std::istream& in, const Alphabet& ap) : in_(in), ap_(ap) {}

    // Next event, or nullopt at end of input.  Throws TraceError on unknown
    // atoms or malformed lines, with the line number in the message.
    std::optional<Letter> next();

    std::size_t line() const noexcept { return line_; }

private:
    std::istream& in_;
    const Alphabet& ap_;
    std::size_t line_ = 0;
};

}  // namespace tcmon

#endif  // TCMON_TRACE_HPP
