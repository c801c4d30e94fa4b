#include "fedcarbon/common.hpp"

namespace fedcarbon {

std::string_view to_string(Scheme scheme) {
  switch (scheme) {
    case Scheme::CL: return "cl";
    case Scheme::FL: return "fl";
    case Scheme::CFL: return "cfl";
  }
  return "?";
}

std::optional<Scheme> scheme_from_string(std::string_view name) {
  if (name == "cl" || name == "CL") return Scheme::CL;
  if (name == "fl" || name == "FL") return Scheme::FL;
  if (name == "cfl" || name == "CFL") return Scheme::CFL;
  return std::nullopt;
}

std::string_view to_string(Role role) {
  return role == Role::Center ? "center" : "device";
}

std::string_view to_string(CostKind kind) {
  switch (kind) {
    case CostKind::Compute: return "compute";
    case CostKind::Uplink: return "ul";
    case CostKind::Downlink: return "dl";
    case CostKind::Mesh: return "mesh";
  }
  return "?";
}

}  // namespace fedcarbon
