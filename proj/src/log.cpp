#include "pmenc/log.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace pmenc {

const AttributeValue& Event::attribute(std::string_view name) const {
    auto it = attributes.find(std::string(name));
    if (it == attributes.end()) return AttributeValue::absent();
    return it->second;
}

Timestamp Event::timestamp() const {
    const AttributeValue& v = attribute("timestamp");
    if (!v.is_timestamp()) throw DataError("event " + id + " has no timestamp");
    return v.timestamp();
}

const std::string* Event::activity() const {
    const AttributeValue& v = attribute("activity");
    if (!v.is_text()) return nullptr;
    return &v.text();
}

std::vector<std::string> Case::trace() const {
    std::vector<std::string> t;
    t.reserve(events.size());
    for (const Event& e : events) {
        if (const std::string* a = e.activity()) t.push_back(*a);
    }
    return t;
}

bool Case::fully_labeled() const {
    return std::all_of(events.begin(), events.end(),
                       [](const Event& e) { return e.activity() != nullptr; });
}

std::vector<Event> subsequence(const Case& c, std::size_t i, std::size_t j) {
    if (i < 1 || j < i || j > c.events.size())
        throw std::out_of_range("subsequence [" + std::to_string(i) + "," + std::to_string(j) +
                                "] out of range for case of length " +
                                std::to_string(c.events.size()));
    return std::vector<Event>(c.events.begin() + static_cast<std::ptrdiff_t>(i - 1),
                              c.events.begin() + static_cast<std::ptrdiff_t>(j));
}

namespace {

std::vector<std::string> derive_alphabet(const std::vector<Case>& cases) {
    std::set<std::string> labels;
    for (const Case& c : cases)
        for (const Event& e : c.events)
            if (const std::string* a = e.activity()) labels.insert(*a);
    return std::vector<std::string>(labels.begin(), labels.end());
}

} // namespace

EventLog EventLog::from_cases(std::vector<Case> cases) {
    EventLog log;
    log.cases_ = std::move(cases);
    log.index_.reserve(log.cases_.size());
    for (std::size_t i = 0; i < log.cases_.size(); ++i) log.index_.emplace(log.cases_[i].id, i);
    log.alphabet_ = derive_alphabet(log.cases_);
    return log;
}

const Case* EventLog::find_case(std::string_view case_id) const {
    auto it = index_.find(std::string(case_id));
    if (it == index_.end()) return nullptr;
    return &cases_[it->second];
}

std::size_t EventLog::event_count() const {
    std::size_t n = 0;
    for (const Case& c : cases_) n += c.events.size();
    return n;
}

void LogBuilder::add_event(Event e) {
    auto [it, inserted] = index_.emplace(e.case_id, cases_.size());
    if (inserted) cases_.push_back(Case{e.case_id, {}});

    const AttributeValue& ts = e.attribute("timestamp");
    if (ts.is_timestamp()) {
        auto [mx, fresh] = running_max_.emplace(e.case_id, ts.timestamp().millis);
        if (!fresh) {
            if (ts.timestamp().millis < mx->second)
                ++reordered_;
            else
                mx->second = ts.timestamp().millis;
        }
    }
    cases_[it->second].events.push_back(std::move(e));
}

EventLog LogBuilder::build() {
    for (Case& c : cases_) {
        std::stable_sort(c.events.begin(), c.events.end(), [](const Event& a, const Event& b) {
            const AttributeValue& ta = a.attribute("timestamp");
            const AttributeValue& tb = b.attribute("timestamp");
            if (!ta.is_timestamp() || !tb.is_timestamp()) return false; // keep arrival order
            return ta.timestamp() < tb.timestamp();
        });
    }
    EventLog log;
    log.cases_ = std::move(cases_);
    log.index_ = std::move(index_);
    log.alphabet_ = derive_alphabet(log.cases_);
    cases_ = {};
    index_ = {};
    running_max_ = {};
    return log;
}

VariantTable extract_variants(const EventLog& log) {
    VariantTable table;
    std::map<std::vector<std::string>, Variant> groups;
    for (const Case& c : log.cases()) {
        std::vector<std::string> t = c.trace();
        table.skipped_events += c.events.size() - t.size();
        if (t.empty()) {
            if (!c.events.empty()) ++table.skipped_cases;
            continue;
        }
        Variant& v = groups[t];
        if (v.case_ids.empty()) v.trace = std::move(t);
        v.case_ids.push_back(c.id);
        ++v.count;
    }
    table.variants.reserve(groups.size());
    for (auto& [trace, v] : groups) {
        table.total_cases += v.count;
        table.variants.push_back(std::move(v));
    }
    std::sort(table.variants.begin(), table.variants.end(), [](const Variant& a, const Variant& b) {
        if (a.count != b.count) return a.count > b.count;
        return a.trace < b.trace;
    });
    return table;
}

} // namespace pmenc
