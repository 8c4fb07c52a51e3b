#include "cardguard/config.hpp"

#include <stdexcept>

namespace cardguard {

void EngineConfig::validate() const {
    if (window_size < 1) throw std::invalid_argument("window_size must be >= 1");
    if (!(forgetting_factor > 0.0 && forgetting_factor <= 1.0))
        throw std::invalid_argument("forgetting_factor must be in (0, 1]");
    if (!(interval_multiplier > 0.0))
        throw std::invalid_argument("interval_multiplier must be > 0");
    if (std_floor_rel < 0.0) throw std::invalid_argument("std_floor_rel must be >= 0");
    if (std_floor_abs < 0) throw std::invalid_argument("std_floor_abs must be >= 0");
    if (!(hard_threshold > soft_threshold && soft_threshold > 0))
        throw std::invalid_argument("thresholds must satisfy hard > soft > 0");
    if (recovery_minutes < 0 || recovery_txns < 0)
        throw std::invalid_argument("recovery horizon must be nonnegative");
    if (small_amount_cap < 0) throw std::invalid_argument("small_amount_cap must be >= 0");
    if (familiar_mcc_min < 1) throw std::invalid_argument("familiar_mcc_min must be >= 1");
}

}  // namespace cardguard
