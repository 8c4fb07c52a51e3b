#pragma once

#include <cstdint>
#include <istream>
#include <map>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "cardguard/types.hpp"

namespace cardguard {

class CsvError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct CsvReadOptions {
    bool strict = true;  // strict aborts on the first bad row; lenient skips and counts
    // Input header name -> canonical column name, for dataset variants.
    std::map<std::string, std::string> header_remap;
};

struct CsvReadStats {
    std::int64_t rows_accepted = 0;
    std::int64_t rows_skipped = 0;
    bool has_fraud_column = false;
    std::vector<std::string> warnings;  // per-row messages in lenient mode, unknown error text
};

// Columns: User, Card, Year, Month, Day, Time, Amount, Use Chip,
// Merchant Name, Merchant City, Merchant State, Zip, MCC, Errors?, Is Fraud?
// The header must match exactly after remapping; "Is Fraud?" is optional.
// card_id is rendered "u{User}c{Card}"; seq_no is the per-card row order.
std::vector<Transaction> read_transactions_csv(std::istream& in,
                                               const CsvReadOptions& options = {},
                                               CsvReadStats* stats = nullptr);

// include_fraud: write the "Is Fraud?" column (empty cell for an unlabeled
// transaction). Throws CsvError when a card_id does not split back into
// User/Card.
void write_transactions_csv(std::ostream& out, const std::vector<Transaction>& txns,
                            bool include_fraud = true);

}  // namespace cardguard
