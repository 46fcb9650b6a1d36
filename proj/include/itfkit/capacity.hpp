#ifndef ITFKIT_CAPACITY_HPP
#define ITFKIT_CAPACITY_HPP

// Average-demand capacity check: every transaction with a known rate and
// payload contributes rate * payload bytes/second to each component on its
// path. All arithmetic is exact unsigned 64-bit; overflow raises E_OVERFLOW.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "itfkit/platform.hpp"

namespace itfkit {

struct Contribution {
  std::string transaction;  // key "app.name"
  std::uint64_t bytes_per_second = 0;

  friend bool operator==(const Contribution&, const Contribution&) = default;
};

struct Demand {
  ComponentId component;
  std::uint64_t bytes_per_second = 0;
  std::vector<Contribution> contributors;
  // Transactions crossing the component with rate or payload unset.
  std::vector<std::string> unspecified;
};

enum class Verdict { kOk, kOver, kUnspecifiedCapacity, kUnspecifiedDemand };
std::string_view verdict_name(Verdict verdict);

struct CapacityEntry {
  Demand demand;
  std::optional<std::uint64_t> capacity;
  Verdict verdict = Verdict::kOk;
};

struct CapacityReport {
  std::vector<CapacityEntry> entries;  // ordered by component id

  bool any_over() const;
};

// Throws Error(E_UNKNOWN_COMPONENT), Error(E_ROLE) for an initiator, or
// Error(E_OVERFLOW).
Demand component_demand(const ValidPlatform& p, std::string_view component);

// One entry per target or transporter crossed by at least one transaction.
// Verdicts:
//   over                  capacity declared and demand > capacity
//   unspecified_capacity  no capacity declared
//   unspecified_demand    within capacity, but some contributor is unquantified
//   ok                    otherwise
CapacityReport check_capacity(const ValidPlatform& p);

}  // namespace itfkit

#endif  // ITFKIT_CAPACITY_HPP
