#ifndef MBPLAN_CLI_HPP
#define MBPLAN_CLI_HPP

#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "mbplan/scenario.hpp"

namespace mbplan::cli {

/// Exit codes: 0 success, 1 internal error, 2 invalid input or usage.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInternal = 1;
inline constexpr int kExitInvalid = 2;

/// `field=start:stop:step`, field one of a4_gbps, eta, h4, fanout_m.
struct SweepSpec {
    std::string field;
    double start = 0.0;
    double stop = 0.0;
    double step = 1.0;
};

SweepSpec parse_sweep_spec(std::string_view text);

/// start, start + step, ... up to stop (inclusive, with a small tolerance).
std::vector<double> sweep_values(const SweepSpec& spec);

/// Returns `base` with the swept field set to `value`, validated.
NetworkScenario apply_sweep_value(const NetworkScenario& base, const std::string& field, double value);

/// Runs one command line (without the program name). Output goes to `out`,
/// diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mbplan::cli

#endif  // MBPLAN_CLI_HPP
