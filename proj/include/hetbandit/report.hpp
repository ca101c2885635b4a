#pragma once

#include <filesystem>
#include <ostream>
#include <string>
#include <string_view>

#include "hetbandit/simulator.hpp"

namespace hetbandit {

/// step,policy,mean_cumulative_regret,standard_error; steps ascending, one
/// row per (step, policy).
void write_curves_csv(const AggregateResult& result, std::ostream& out);

/// policy,final_mean_regret,final_se,trials,horizon,seed.
void write_summary_csv(const AggregateResult& result, std::ostream& out);

/// Lowercase hex SHA-256 of a byte string.
std::string sha256_hex(std::string_view bytes);

}  // namespace hetbandit
