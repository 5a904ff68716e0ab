#pragma once

#include <stdexcept>
#include <string>

namespace rowmix {

// Thrown when a solver would exceed its configured work budget. Callers can
// catch this and fall back to another solver or report a refusal.
struct BudgetExceeded : std::runtime_error {
    explicit BudgetExceeded(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace rowmix
