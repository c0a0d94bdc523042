#pragma once

#include "pmenc/attribute.hpp"

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace pmenc {

// An event is a bag of named attribute values plus its identity. "activity"
// and "timestamp" keys are always materialized by the ingest layer; activity
// may hold absent, timestamp never does in a well-formed log.
struct Event {
    std::string id;
    std::string case_id;
    std::map<std::string, AttributeValue> attributes;

    // Returns the stored value, or absent when the key is missing.
    const AttributeValue& attribute(std::string_view name) const;
    Timestamp timestamp() const;
    // Pointer to the activity label, or nullptr when unlabeled.
    const std::string* activity() const;
};

// One end-to-end process execution: events in non-decreasing timestamp order,
// ties kept in ingestion order.
struct Case {
    std::string id;
    std::vector<Event> events;

    // Activity labels of the labeled events, in order.
    std::vector<std::string> trace() const;
    // True when every event carries an activity label.
    bool fully_labeled() const;
};

// 1-based inclusive slice of a case's event sequence.
// Throws std::out_of_range unless 1 <= i <= j <= |events|.
std::vector<Event> subsequence(const Case& c, std::size_t i, std::size_t j);

// Immutable after construction. Cases keep their first-seen order; the
// activity alphabet is the sorted set of labels observed in the data.
class EventLog {
public:
    EventLog() = default;

    // Assembles a log from already-ordered cases (no re-sorting).
    static EventLog from_cases(std::vector<Case> cases);

    const std::vector<Case>& cases() const { return cases_; }
    const Case* find_case(std::string_view case_id) const;
    std::size_t case_count() const { return cases_.size(); }
    std::size_t event_count() const;
    bool empty() const { return cases_.empty(); }

    const std::vector<std::string>& activity_alphabet() const { return alphabet_; }

private:
    std::vector<Case> cases_;
    std::unordered_map<std::string, std::size_t> index_;
    std::vector<std::string> alphabet_;

    friend class LogBuilder;
};

// Accumulates events in arrival order, then sorts each case by timestamp
// (stable) and derives the alphabet. Does not reject invariant violations
// such as duplicate event ids; `validate` reports those.
class LogBuilder {
public:
    void add_event(Event e);
    EventLog build();

    // Events whose timestamp was behind the running maximum of their case,
    // i.e. how many arrivals the stable sort had to move backwards.
    std::size_t reordered_events() const { return reordered_; }

private:
    std::vector<Case> cases_;
    std::unordered_map<std::string, std::size_t> index_;
    std::unordered_map<std::string, std::int64_t> running_max_;
    std::size_t reordered_ = 0;
};

// Equivalence class of cases sharing one activity sequence.
struct Variant {
    std::vector<std::string> trace;
    std::size_t count = 0;                // == case_ids.size()
    std::vector<std::string> case_ids;    // first-seen order
};

// Variants sorted by count descending, ties by lexicographic trace order.
struct VariantTable {
    std::vector<Variant> variants;
    std::size_t total_cases = 0;      // sum of counts
    std::size_t skipped_events = 0;   // events without an activity label
    std::size_t skipped_cases = 0;    // cases with no labeled event at all

    bool empty() const { return variants.empty(); }
};

// Groups cases by identical activity sequence. Events without an activity
// label do not contribute to the trace; cases left with an empty trace are
// dropped from the table. Both exclusions are reported in the skip counters.
VariantTable extract_variants(const EventLog& log);

} // namespace pmenc
