#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace fedcarbon {

// Training architectures covered by the cost models.
//   CL  — centralized: devices upload raw data once, a data center trains.
//   FL  — federated with a parameter server: devices train locally and
//         exchange model parameters over UL/DL.
//   CFL — consensus-driven federated: no server, devices average with
//         mesh/D2D neighbors before training.
enum class Scheme { CL, FL, CFL };

std::string_view to_string(Scheme scheme);
std::optional<Scheme> scheme_from_string(std::string_view name);

// Who owns a cost: the data center / parameter server, or an edge device.
enum class Role : std::uint8_t { Center, Device };

// Cost categories shared by energy ledgers and simulation event logs.
enum class CostKind : std::uint8_t { Compute, Uplink, Downlink, Mesh };

std::string_view to_string(Role role);
std::string_view to_string(CostKind kind);

// Invalid experiment description (bad file, schema violation, bad value).
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// Event-billed and closed-form cost totals disagree for a simulated run.
struct OracleError : std::runtime_error {
  explicit OracleError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace fedcarbon
