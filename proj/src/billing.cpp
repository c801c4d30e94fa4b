#include "fedcarbon/billing.hpp"

#include <cmath>
#include <map>
#include <sstream>
#include <tuple>

namespace fedcarbon {

ActivityCounts count_activity(const TrainingTrace& trace, int devices) {
  ActivityCounts counts;
  counts.active_rounds.assign(static_cast<size_t>(devices), 0.0);
  counts.mesh_sends.assign(static_cast<size_t>(devices), 0.0);
  for (const RoundRecord& record : trace.rounds)
    for (int k : record.active)
      if (k >= 0 && k < devices) counts.active_rounds[static_cast<size_t>(k)] += 1.0;
  for (const CostEvent& event : trace.events)
    if (event.kind == CostKind::Mesh && event.src_role == Role::Device &&
        event.src >= 0 && event.src < devices)
      counts.mesh_sends[static_cast<size_t>(event.src)] += 1.0;
  return counts;
}

EnergyBreakdown bill_events(const std::vector<CostEvent>& events, const FleetSpec& fleet,
                            const LinkEfficiencies& links) {
  fleet.validate();
  links.validate();
  const double gamma = fleet.center_profile.pue;
  const double e_center = fleet.center_round_energy_j();
  const double e_device = fleet.device_round_energy_j();
  const double mesh_ee = links.effective_mesh_ee();

  EnergyBreakdown out;
  std::map<std::tuple<int, int, int>, double> ledger;  // (role, node, kind) -> J

  for (const CostEvent& event : events) {
    double joules = 0.0;
    Role owner = event.src_role;
    int node = event.src;
    switch (event.kind) {
      case CostKind::Compute:
        if (event.src_role == Role::Center) {
          joules = gamma * (event.work * e_center);
        } else {
          joules = event.work * e_device;  // device PUE is 1
        }
        if (event.src_role == Role::Center)
          out.compute_center_j += joules;
        else
          out.compute_device_j += joules;
        break;
      case CostKind::Uplink:
        joules = transfer_energy(event.bits, links.ee_up);
        out.comm_up_j += joules;
        break;
      case CostKind::Downlink:
        joules = gamma * transfer_energy(event.bits, links.ee_down);
        out.comm_down_j += joules;
        owner = Role::Center;  // the center transmits the downlink
        node = -1;
        break;
      case CostKind::Mesh:
        joules = transfer_energy(event.bits, mesh_ee);
        out.comm_mesh_j += joules;
        break;
    }
    if (owner == Role::Center) node = -1;
    if (joules != 0.0)
      ledger[{owner == Role::Center ? 0 : 1, node, static_cast<int>(event.kind)}] += joules;
  }

  out.per_node.reserve(ledger.size());
  for (const auto& [key, joules] : ledger) {
    const auto& [role, node, kind] = key;
    out.per_node.push_back({role == 0 ? Role::Center : Role::Device, node,
                            static_cast<CostKind>(kind), joules});
  }
  return out;
}

namespace {

bool close(double a, double b, double rel_tol) {
  const double scale = std::max({1e-12, std::fabs(a), std::fabs(b)});
  return std::fabs(a - b) <= rel_tol * scale || std::fabs(a - b) <= 1e-12;
}

}  // namespace

std::string compare_breakdowns(const EnergyBreakdown& a, const EnergyBreakdown& b,
                               double rel_tol) {
  const auto mismatch = [&](const char* what, double va, double vb) {
    std::ostringstream os;
    os << what << " differ: " << va << " vs " << vb;
    return os.str();
  };
  if (!close(a.compute_device_j, b.compute_device_j, rel_tol))
    return mismatch("device compute joules", a.compute_device_j, b.compute_device_j);
  if (!close(a.compute_center_j, b.compute_center_j, rel_tol))
    return mismatch("center compute joules", a.compute_center_j, b.compute_center_j);
  if (!close(a.comm_up_j, b.comm_up_j, rel_tol))
    return mismatch("uplink joules", a.comm_up_j, b.comm_up_j);
  if (!close(a.comm_down_j, b.comm_down_j, rel_tol))
    return mismatch("downlink joules", a.comm_down_j, b.comm_down_j);
  if (!close(a.comm_mesh_j, b.comm_mesh_j, rel_tol))
    return mismatch("mesh joules", a.comm_mesh_j, b.comm_mesh_j);
  if (!close(a.total_j(), b.total_j(), rel_tol))
    return mismatch("total joules", a.total_j(), b.total_j());

  std::map<std::tuple<int, int, int>, double> la, lb;
  for (const EnergyEntry& e : a.per_node)
    la[{e.role == Role::Center ? 0 : 1, e.node, static_cast<int>(e.kind)}] += e.joules;
  for (const EnergyEntry& e : b.per_node)
    lb[{e.role == Role::Center ? 0 : 1, e.node, static_cast<int>(e.kind)}] += e.joules;
  for (const auto& [key, va] : la) {
    const auto it = lb.find(key);
    const double vb = it == lb.end() ? 0.0 : it->second;
    if (!close(va, vb, rel_tol)) {
      std::ostringstream os;
      os << "ledger entry (role=" << std::get<0>(key) << ", node=" << std::get<1>(key)
         << ", kind=" << std::get<2>(key) << ") differs: " << va << " vs " << vb;
      return os.str();
    }
  }
  for (const auto& [key, vb] : lb)
    if (la.find(key) == la.end() && !close(0.0, vb, rel_tol)) {
      std::ostringstream os;
      os << "ledger entry (role=" << std::get<0>(key) << ", node=" << std::get<1>(key)
         << ", kind=" << std::get<2>(key) << ") present only on one side: " << vb;
      return os.str();
    }
  return {};
}

}  // namespace fedcarbon
