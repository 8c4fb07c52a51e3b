#pragma once

#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "cardguard/controller.hpp"

namespace cardguard {

class JsonlError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// One JSON object per line, fixed key order: card_id, seq_no, action, cap
// (LimitAmount only), reasons, score_total, interval_lo, interval_hi, mean,
// mode_after. Currency fields are decimal strings with 2 places.
std::string decision_to_jsonl(const Decision& d);
Decision decision_from_jsonl(const std::string& line);  // throws JsonlError

void write_decisions(std::ostream& out, const std::vector<Decision>& decisions);
std::vector<Decision> read_decisions(std::istream& in);  // throws JsonlError with line number

}  // namespace cardguard
