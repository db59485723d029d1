#ifndef ARCKIT_RUNNER_HPP
#define ARCKIT_RUNNER_HPP

#include <cstdint>
#include <optional>
#include <string>

namespace arckit {

struct RunOptions {
    std::uint32_t search_bound = 16;
    std::optional<std::uint32_t> max_steps;
    bool quiet = false;
};

// exit codes: 0 success, 1 mathematical failure, 2 input error
struct RunResult {
    int exit_code = 0;
    std::string report;                    // human-readable outcome
    std::optional<std::string> document;   // certificate, when one is produced
};

RunResult run_script_text(const std::string& text, const RunOptions& options);

}  // namespace arckit

#endif
