#pragma once

/*
 * Verdict: the outcome of a single feasibility or identity test. Failures
 * always carry witness values; inapplicable verdicts carry a one-line reason
 * in the note field. The citation field holds the rule being tested, written
 * out so reports are self-documenting.
 */

#include <string>
#include <vector>

#include "rational.hpp"

namespace schemelab {

enum class Status { pass, fail, inapplicable };

struct Verdict {
    std::string test_id;
    Status status = Status::pass;
    std::vector<Rational> witness;
    std::string citation;  // the rule checked, e.g. "all q^k_ij >= 0"
    std::string note;      // reason for inapplicable, or failure detail

    bool passed() const { return status == Status::pass; }
    bool failed() const { return status == Status::fail; }
};

inline const char* status_name(Status s) {
    switch (s) {
        case Status::pass: return "pass";
        case Status::fail: return "fail";
        default: return "inapplicable";
    }
}

}  // namespace schemelab
