#pragma once

#include <cstdint>

namespace fairdiv {

inline constexpr std::uint64_t kDefaultStateBudget = std::uint64_t{1} << 22;

// What an exhaustive search does when it would need more than max_states states.
enum class OnExceed { error, unknown };

struct SearchBudget {
    std::uint64_t max_states = kDefaultStateBudget;
    OnExceed on_exceed = OnExceed::error;
};

}  // namespace fairdiv
