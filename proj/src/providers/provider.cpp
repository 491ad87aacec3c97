#include "tourplanner/providers/provider.hpp"

#include <stdexcept>

namespace tourplanner::providers {

void ProviderConfig::validate() const {
    if (timeout_seconds <= 0) throw std::invalid_argument("provider config: timeout must be positive");
    if (max_retries < 0) throw std::invalid_argument("provider config: max_retries must be >= 0");
    if (parallelism_limit < 1)
        throw std::invalid_argument("provider config: parallelism_limit must be >= 1");
}

} // namespace tourplanner::providers
