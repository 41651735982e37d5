#pragma once

#include <cctype>
#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <string_view>
#include <thread>

namespace carrystat {

inline constexpr const char* kMemoryBudgetEnv = "CARRYSTAT_MEMORY_BUDGET";
inline constexpr std::size_t kDefaultMemoryBudget = std::size_t{4} << 30;

/// Parses "4096", "512M", "4G", "1.5G" (binary multiples).
inline std::size_t parse_byte_size(std::string_view text) {
    std::string s(text);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
    if (s.empty()) throw std::invalid_argument("empty byte size");
    double scale = 1;
    switch (std::toupper(static_cast<unsigned char>(s.back()))) {
        case 'K': scale = 1024.0; break;
        case 'M': scale = 1024.0 * 1024; break;
        case 'G': scale = 1024.0 * 1024 * 1024; break;
        case 'T': scale = 1024.0 * 1024 * 1024 * 1024; break;
        default: break;
    }
    if (scale != 1) s.pop_back();
    std::size_t used = 0;
    const double value = std::stod(s, &used);
    if (used != s.size() || value < 0) throw std::invalid_argument("bad byte size: " + std::string(text));
    return static_cast<std::size_t>(value * scale);
}

/// Budget from the environment if set, the built-in default otherwise.
inline std::size_t default_memory_budget() {
    if (const char* env = std::getenv(kMemoryBudgetEnv); env != nullptr && *env != '\0') return parse_byte_size(env);
    return kDefaultMemoryBudget;
}

struct RunOptions {
    std::size_t memory_budget = default_memory_budget();
    unsigned threads = 1;
};

inline unsigned resolve_threads(unsigned requested) {
    if (requested != 0) return requested;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

}  // namespace carrystat
