#include "cardguard/csv_io.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <sstream>
#include <unordered_map>

namespace cardguard {

namespace {

constexpr std::array<std::string_view, 15> kColumns{
    "User",          "Card",           "Year", "Month",   "Day",
    "Time",          "Amount",         "Use Chip", "Merchant Name", "Merchant City",
    "Merchant State", "Zip",           "MCC",  "Errors?", "Is Fraud?",
};
constexpr std::size_t kFraudColumn = 14;  // optional

// RFC 4180 field splitting, single-line records.
std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    field += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                field += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(std::move(field));
            field.clear();
        } else {
            field += c;
        }
    }
    fields.push_back(std::move(field));
    return fields;
}

std::string csv_quote(const std::string& field) {
    if (field.find_first_of(",\"\n") == std::string::npos) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

bool parse_int(const std::string& s, std::int64_t& out) {
    const char* begin = s.data();
    const char* end = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(begin, end, out);
    return ec == std::errc() && ptr == end && !s.empty();
}

struct RowError {
    std::string message;
};

Transaction parse_row(const std::vector<std::string>& fields, bool has_fraud,
                      std::vector<std::string>* warnings, std::int64_t line_no) {
    auto fail = [line_no](const std::string& what) -> RowError {
        return RowError{"line " + std::to_string(line_no) + ": " + what};
    };

    Transaction txn;
    std::int64_t user = 0, card = 0, year = 0, month = 0, day = 0, mcc = 0;
    if (!parse_int(fields[0], user) || user < 0) throw fail("bad User '" + fields[0] + "'");
    if (!parse_int(fields[1], card) || card < 0) throw fail("bad Card '" + fields[1] + "'");
    txn.card_id = "u" + std::to_string(user) + "c" + std::to_string(card);

    if (!parse_int(fields[2], year)) throw fail("bad Year '" + fields[2] + "'");
    if (!parse_int(fields[3], month) || month < 1 || month > 12)
        throw fail("bad Month '" + fields[3] + "'");
    if (!parse_int(fields[4], day) || day < 1 || day > 31)
        throw fail("bad Day '" + fields[4] + "'");
    int hh = 0, mm = 0;
    if (std::sscanf(fields[5].c_str(), "%2d:%2d", &hh, &mm) != 2 || hh < 0 || hh > 23 ||
        mm < 0 || mm > 59)
        throw fail("bad Time '" + fields[5] + "'");
    txn.timestamp = make_timestamp(static_cast<int>(year), static_cast<int>(month),
                                   static_cast<int>(day), hh, mm);

    auto amount = parse_money(fields[6]);
    if (!amount) throw fail("bad Amount '" + fields[6] + "'");
    txn.amount = *amount;

    auto channel = channel_from_csv(fields[7]);
    if (!channel) throw fail("bad Use Chip '" + fields[7] + "'");
    txn.channel = *channel;

    txn.merchant_name = fields[8];
    txn.merchant_city = fields[9];
    txn.merchant_state = fields[10];
    txn.zip = fields[11];

    if (!parse_int(fields[12], mcc) || mcc < 0 || mcc > 9999)
        throw fail("bad MCC '" + fields[12] + "'");
    txn.mcc = static_cast<int>(mcc);

    const std::string& errors = fields[13];
    if (!errors.empty()) {
        std::size_t start = 0;
        while (start <= errors.size()) {
            std::size_t comma = errors.find(',', start);
            std::string name = trim(errors.substr(
                start, comma == std::string::npos ? std::string::npos : comma - start));
            if (!name.empty()) {
                if (auto flag = error_flag_from_csv(name)) {
                    txn.errors.add(*flag);
                } else {
                    txn.errors.add(ErrorFlag::UnknownError);
                    if (warnings)
                        warnings->push_back("line " + std::to_string(line_no) +
                                            ": unknown error text '" + name + "'");
                }
            }
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
    }

    if (has_fraud) {
        const std::string& fraud = fields[kFraudColumn];
        if (fraud == "Yes")
            txn.fraud_label = true;
        else if (fraud == "No")
            txn.fraud_label = false;
        else if (fraud.empty())
            txn.fraud_label = std::nullopt;
        else
            throw fail("bad Is Fraud? '" + fraud + "'");
    }
    return txn;
}

}  // namespace

std::vector<Transaction> read_transactions_csv(std::istream& in, const CsvReadOptions& options,
                                               CsvReadStats* stats) {
    CsvReadStats local;
    CsvReadStats& st = stats ? *stats : local;

    std::string line;
    if (!std::getline(in, line)) throw CsvError("empty input: missing header row");
    if (!line.empty() && line.back() == '\r') line.pop_back();

    std::vector<std::string> header = split_csv(line);
    for (auto& name : header) {
        auto it = options.header_remap.find(name);
        if (it != options.header_remap.end()) name = it->second;
    }

    bool has_fraud = header.size() == kColumns.size();
    std::size_t expected = has_fraud ? kColumns.size() : kColumns.size() - 1;
    if (header.size() != expected)
        throw CsvError("header has " + std::to_string(header.size()) + " columns, expected " +
                       std::to_string(kColumns.size() - 1) + " or " +
                       std::to_string(kColumns.size()));
    for (std::size_t i = 0; i < header.size(); ++i)
        if (header[i] != kColumns[i])
            throw CsvError("header column " + std::to_string(i + 1) + " is '" + header[i] +
                           "', expected '" + std::string(kColumns[i]) + "'");
    st.has_fraud_column = has_fraud;

    std::vector<Transaction> txns;
    std::unordered_map<std::string, std::int64_t> next_seq;
    std::int64_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<std::string> fields = split_csv(line);
        try {
            if (fields.size() != header.size())
                throw RowError{"line " + std::to_string(line_no) + ": " +
                               std::to_string(fields.size()) + " fields, expected " +
                               std::to_string(header.size())};
            Transaction txn = parse_row(fields, has_fraud, &st.warnings, line_no);
            txn.seq_no = next_seq[txn.card_id]++;
            txns.push_back(std::move(txn));
            st.rows_accepted += 1;
        } catch (const RowError& e) {
            if (options.strict) throw CsvError(e.message);
            st.rows_skipped += 1;
            st.warnings.push_back(e.message);
        }
    }
    return txns;
}

void write_transactions_csv(std::ostream& out, const std::vector<Transaction>& txns,
                            bool include_fraud) {
    for (std::size_t i = 0; i + 1 < kColumns.size(); ++i) {
        if (i) out << ',';
        out << kColumns[i];
    }
    if (include_fraud) out << ',' << kColumns[kFraudColumn];
    out << '\n';

    for (const auto& txn : txns) {
        std::int64_t user = 0, card = 0;
        {
            const std::string& id = txn.card_id;
            std::size_t c_pos = id.find('c', 1);
            bool ok = id.size() >= 4 && id[0] == 'u' && c_pos != std::string::npos;
            if (ok) {
                ok = parse_int(id.substr(1, c_pos - 1), user) &&
                     parse_int(id.substr(c_pos + 1), card);
            }
            if (!ok)
                throw CsvError("card_id '" + id + "' does not split into User/Card");
        }
        CivilTime ct = civil_from(txn.timestamp);
        char time_buf[8];
        std::snprintf(time_buf, sizeof(time_buf), "%02d:%02d", ct.hour, ct.minute);

        std::string errors;
        txn.errors.for_each([&](ErrorFlag f) {
            if (!errors.empty()) errors += ',';
            errors += csv_name(f);
        });

        out << user << ',' << card << ',' << ct.year << ',' << ct.month << ',' << ct.day
            << ',' << time_buf << ',' << '$' << format_money(txn.amount) << ','
            << csv_name(txn.channel) << ',' << csv_quote(txn.merchant_name) << ','
            << csv_quote(txn.merchant_city) << ',' << csv_quote(txn.merchant_state) << ','
            << csv_quote(txn.zip) << ',' << txn.mcc << ',' << csv_quote(errors);
        if (include_fraud) {
            out << ',';
            if (txn.fraud_label) out << (*txn.fraud_label ? "Yes" : "No");
        }
        out << '\n';
    }
}

}  // namespace cardguard
