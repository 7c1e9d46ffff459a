#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>

#include <json.hpp>

#include "vpack/core.hpp"
#include "vpack/pack.hpp"
#include "vpack/threedim.hpp"

namespace vpack {

using ordered_json = nlohmann::ordered_json;

// A parsed instance file. dims is 2 or 3; the matching instance is filled.
struct LoadedInstance {
  int dims = 2;
  Instance inst2;
  Instance3 inst3;
};

// CSV headers: "s,l" (normalized 2-D), "s,l,t" (normalized 3-D), or
// "size,load" (raw 2-D, requires capacities). Values must parse as finite
// decimals; normalized weights must lie in [0, 1].
LoadedInstance load_instance_csv(std::istream& in,
                                 std::optional<double> cap_s = std::nullopt,
                                 std::optional<double> cap_l = std::nullopt,
                                 std::optional<double> rho_override = std::nullopt);
LoadedInstance load_instance_file(const std::string& path,
                                  std::optional<double> cap_s = std::nullopt,
                                  std::optional<double> cap_l = std::nullopt,
                                  std::optional<double> rho_override = std::nullopt);

// Shortest round-trip decimal formatting, LF line endings.
void write_instance_csv(std::ostream& out, std::span<const Item> items);
void write_instance_csv(std::ostream& out, std::span<const Item3> items);

std::string format_double(double value);

struct RunConfig {
  std::string input;
  std::string algorithm = "linear";
  std::optional<double> rho_override;
  bool debug_assertions = false;
  std::optional<double> cap_s;
  std::optional<double> cap_l;
};

// Deterministic key order throughout; positions and indices are 1-based in
// the JSON so reports read like the boundary notation.
ordered_json make_run_report(const RunConfig& config, const Instance& instance,
                             const Packing& packing, const Metrics& metrics,
                             const VerificationReport& verification,
                             std::uint64_t wall_time_nanos);
ordered_json make_run_report3(const RunConfig& config, const Instance3& instance,
                              const Packing& packing, const Metrics& metrics,
                              const TriReport& verification,
                              std::uint64_t wall_time_nanos);

ordered_json verification_to_json(const VerificationReport& report);

// Reads `order` (identity if absent) and `boundaries` from a report or a
// bare boundaries object and converts back to 0-based.
Packing packing_from_report(const ordered_json& report, std::size_t n);

}  // namespace vpack
