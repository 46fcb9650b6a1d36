#include "itfkit/capacity.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace itfkit {

std::string_view verdict_name(Verdict verdict) {
  switch (verdict) {
    case Verdict::kOk: return "ok";
    case Verdict::kOver: return "over";
    case Verdict::kUnspecifiedCapacity: return "unspecified_capacity";
    case Verdict::kUnspecifiedDemand: return "unspecified_demand";
  }
  return "?";
}

bool CapacityReport::any_over() const {
  return std::any_of(entries.begin(), entries.end(),
                     [](const CapacityEntry& e) { return e.verdict == Verdict::kOver; });
}

namespace {

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b, const std::string& what) {
  std::uint64_t out;
  if (__builtin_mul_overflow(a, b, &out)) {
    throw Error(Code::kOverflow, "rate x payload overflows 64 bits for " + what);
  }
  return out;
}

std::uint64_t checked_add(std::uint64_t a, std::uint64_t b, const std::string& what) {
  std::uint64_t out;
  if (__builtin_add_overflow(a, b, &out)) {
    throw Error(Code::kOverflow, "demand sum overflows 64 bits at " + what);
  }
  return out;
}

bool on_path(const Transaction& t, std::string_view component) {
  return std::find(t.path.begin(), t.path.end(), component) != t.path.end();
}

Demand sum_demand(const ValidPlatform& p, const ComponentId& component) {
  Demand d;
  d.component = component;
  for (const auto& t : p.transactions()) {
    if (!on_path(t, component)) continue;
    if (t.rate == 0 || t.payload == 0) {
      d.unspecified.push_back(t.key());
      continue;
    }
    std::uint64_t bps = checked_mul(t.rate, t.payload, t.key());
    d.bytes_per_second = checked_add(d.bytes_per_second, bps, component);
    d.contributors.push_back(Contribution{t.key(), bps});
  }
  return d;
}

}  // namespace

Demand component_demand(const ValidPlatform& p, std::string_view component) {
  const Atom& atom = p.flat().at(component);
  if (atom.role == Role::kInitiator) {
    throw Error(Code::kRole, "demand is only defined for targets and transporters, '" +
                                 atom.id + "' is an initiator");
  }
  return sum_demand(p, atom.id);
}

CapacityReport check_capacity(const ValidPlatform& p) {
  std::set<ComponentId> crossed;
  for (const auto& t : p.transactions()) {
    for (std::size_t i = 1; i < t.path.size(); ++i) crossed.insert(t.path[i]);
  }
  CapacityReport report;
  for (const auto& id : crossed) {
    const Atom& atom = p.flat().at(id);
    CapacityEntry entry{sum_demand(p, id), atom.capacity, Verdict::kOk};
    if (!entry.capacity) {
      entry.verdict = Verdict::kUnspecifiedCapacity;
    } else if (entry.demand.bytes_per_second > *entry.capacity) {
      entry.verdict = Verdict::kOver;
    } else if (!entry.demand.unspecified.empty()) {
      entry.verdict = Verdict::kUnspecifiedDemand;
    }
    report.entries.push_back(std::move(entry));
  }
  return report;
}

}  // namespace itfkit
