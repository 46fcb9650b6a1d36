#ifndef ITFKIT_INTERFERENCE_HPP
#define ITFKIT_INTERFERENCE_HPP

// Interference calculus over resolved transactions.
//
// A scenario is a set of transactions that may be in flight concurrently:
// at most one per initiator and, unless disabled, at most one per
// application. A scenario is
//   itf     when all member paths share at least one component (the channel),
//   free    when member paths are pairwise disjoint,
//   partial otherwise.
// For pairs, itf and free are the only outcomes.

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "itfkit/diagnostic.hpp"
#include "itfkit/platform.hpp"

namespace itfkit {

struct ScenarioOptions {
  // Transactions of the same application never interfere with each other.
  bool exclude_same_app = true;
};

// Indices into ValidPlatform::transactions(), strictly increasing.
struct Scenario {
  std::vector<std::size_t> members;

  friend bool operator==(const Scenario&, const Scenario&) = default;
  friend auto operator<=>(const Scenario&, const Scenario&) = default;
};

enum class Kind { kItf, kFree, kPartial };
std::string_view kind_name(Kind kind);

struct Classification {
  Kind kind = Kind::kFree;
  std::vector<ComponentId> channel;  // sorted; non-empty iff kind == kItf

  friend bool operator==(const Classification&, const Classification&) = default;
};

struct Orbit {
  Scenario representative;  // least member in scenario order
  std::vector<Scenario> members;
  std::size_t size() const { return members.size(); }
};

// Transaction keys ("app.name") of a scenario's members.
std::vector<std::string> scenario_keys(const ValidPlatform& p, const Scenario& s);

// All size-n scenarios in lexicographic order of member indices. Returns an
// empty list when fewer than n initiators carry transactions.
// Throws Error(E_BAD_N) when n < 2.
std::vector<Scenario> scenarios(const ValidPlatform& p, std::size_t n,
                                const ScenarioOptions& options = {});

Classification classify(const ValidPlatform& p, const Scenario& s);

// Component -> every itf scenario of size 2..n_max whose channel contains
// it, ordered by size then members. Throws Error(E_BAD_N) when n_max < 2.
using ChannelMap = std::map<ComponentId, std::vector<Scenario>>;
ChannelMap channels(const ValidPlatform& p, std::size_t n_max,
                    const ScenarioOptions& options = {});

// Checks that swapping any two members of the class is a graph automorphism
// that leaves every other component in place: both members carry identical
// role, services, capacity, classification and accelerator attributes, and
// the link set is invariant under the swap. Empty result means valid; the
// first violation is reported with a witness.
std::vector<Diagnostic> validate_symmetry(const FlatPlatform& p, const SymmetryClass& sc);

// Group generated by the platform's validated symmetry classes.
class SymmetryGroup {
 public:
  static SymmetryGroup trivial() { return SymmetryGroup({}); }
  // Validates every declared class. Throws Error(E_UNVALIDATED_SYMMETRY)
  // carrying the E_NOT_SYMMETRIC diagnostics if any class fails.
  static SymmetryGroup from_platform(const FlatPlatform& p);

  std::span<const SymmetryClass> classes() const { return classes_; }
  bool empty() const { return classes_.empty(); }

 private:
  explicit SymmetryGroup(std::vector<SymmetryClass> classes) : classes_(std::move(classes)) {}
  std::vector<SymmetryClass> classes_;
};

// Partitions `scs` into orbits under the symmetry group. A member swap maps
// each transaction to the one whose path is the swapped path (same service,
// rate and payload); two scenarios share an orbit when a sequence of such
// swaps carries one onto the other within `scs`. Orbits are ordered by
// representative.
std::vector<Orbit> quotient(const ValidPlatform& p, std::span<const Scenario> scs,
                            const SymmetryGroup& group);
// Uses the platform's declared classes; throws Error(E_UNVALIDATED_SYMMETRY).
std::vector<Orbit> quotient(const ValidPlatform& p, std::span<const Scenario> scs);

}  // namespace itfkit

#endif  // ITFKIT_INTERFERENCE_HPP
