#pragma once

#include "pmenc/log.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace pmenc {

enum class CmpOp { eq, neq, lt, leq, gt, geq, present, absent, in_range };

struct PredicateTerm {
    std::string attribute;
    CmpOp op = CmpOp::present;
    AttributeValue literal;      // unused for present/absent
    AttributeValue literal_hi;   // upper bound for in_range
    std::string source;          // original text, for error messages
};

// Conjunction of terms; no terms means "keep everything".
struct FilterPredicate {
    std::vector<PredicateTerm> terms;

    bool always_true() const { return terms.empty(); }
};

// Grammar:
//   predicate := term { "and" term }
//   term      := name op literal | name "!=" "null" | name "==" "null"
//              | name "in" "[" literal "," literal "]"
//   op        := "==" | "!=" | "<" | "<=" | ">" | ">="
//   literal   := quoted text | decimal number | ISO date
// Throws PredicateError with the offending position.
FilterPredicate parse_predicate(std::string_view text);

// True when the event satisfies every term. Ordered operators demand a
// numeric or timestamp value; hitting text there throws PredicateError
// naming the term. Comparisons never match an absent value; use "== null" /
// "!= null" to test presence.
bool matches(const Event& e, const FilterPredicate& p);
bool matches(const Event& e, const PredicateTerm& t);

std::string to_string(const FilterPredicate& p);

} // namespace pmenc
