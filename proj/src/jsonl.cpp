#include "cardguard/jsonl.hpp"

#include <json.hpp>

namespace cardguard {

using ordered_json = nlohmann::ordered_json;

std::string decision_to_jsonl(const Decision& d) {
    ordered_json j;
    j["card_id"] = d.card_id;
    j["seq_no"] = d.seq_no;
    j["action"] = std::string(to_string(d.action));
    if (d.cap) j["cap"] = format_money(*d.cap);
    ordered_json reasons = ordered_json::array();
    for (Reason r : d.reasons) reasons.push_back(std::string(to_string(r)));
    j["reasons"] = std::move(reasons);
    j["score_total"] = d.score_total;
    j["interval_lo"] = format_money(d.interval.lo);
    j["interval_hi"] = format_money(d.interval.hi);
    j["mean"] = format_money(d.mean);
    j["mode_after"] = std::string(to_string(d.mode_after));
    return j.dump();
}

Decision decision_from_jsonl(const std::string& line) {
    ordered_json j;
    try {
        j = ordered_json::parse(line);
    } catch (const ordered_json::exception& e) {
        throw JsonlError(std::string("bad decision record: ") + e.what());
    }
    try {
        Decision d;
        d.card_id = j.at("card_id").get<std::string>();
        d.seq_no = j.at("seq_no").get<std::int64_t>();
        auto action = action_from_string(j.at("action").get<std::string>());
        if (!action) throw JsonlError("unknown action " + j.at("action").dump());
        d.action = *action;
        if (j.contains("cap")) {
            auto cap = parse_money(j.at("cap").get<std::string>());
            if (!cap) throw JsonlError("bad cap " + j.at("cap").dump());
            d.cap = *cap;
        }
        for (const auto& r : j.at("reasons")) {
            auto reason = reason_from_string(r.get<std::string>());
            if (!reason) throw JsonlError("unknown reason " + r.dump());
            d.reasons.push_back(*reason);
        }
        d.score_total = j.at("score_total").get<int>();
        d.interval.lo = std::stod(j.at("interval_lo").get<std::string>());
        d.interval.hi = std::stod(j.at("interval_hi").get<std::string>());
        d.mean = std::stod(j.at("mean").get<std::string>());
        auto mode = control_mode_from_string(j.at("mode_after").get<std::string>());
        if (!mode) throw JsonlError("unknown mode " + j.at("mode_after").dump());
        d.mode_after = *mode;
        return d;
    } catch (const JsonlError&) {
        throw;
    } catch (const std::exception& e) {
        throw JsonlError(std::string("bad decision record: ") + e.what());
    }
}

void write_decisions(std::ostream& out, const std::vector<Decision>& decisions) {
    for (const auto& d : decisions) out << decision_to_jsonl(d) << '\n';
}

std::vector<Decision> read_decisions(std::istream& in) {
    std::vector<Decision> out;
    std::string line;
    std::int64_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        try {
            out.push_back(decision_from_jsonl(line));
        } catch (const JsonlError& e) {
            throw JsonlError("line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    return out;
}

}  // namespace cardguard
