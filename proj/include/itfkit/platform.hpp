#ifndef ITFKIT_PLATFORM_HPP
#define ITFKIT_PLATFORM_HPP

// Platform model: components with initiator/target/transporter roles,
// hierarchical composites, directed links, declared symmetry classes and the
// applications whose transactions describe how software uses the platform.

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "itfkit/diagnostic.hpp"

namespace itfkit {

using ComponentId = std::string;

enum class Role { kInitiator, kTarget, kTransporter, kComposite };
std::string_view role_name(Role role);

enum class Origin { kCotsDevice, kCotsSoftIp, kCotsHardIp, kCustom };
enum class Complexity { kSimple, kComplex };
std::string_view origin_name(Origin origin);
std::string_view complexity_name(Complexity complexity);

// AMC20-152A style device classification. Reported, never used to gate
// analyses.
struct DeviceClassification {
  Origin origin = Origin::kCotsDevice;
  Complexity complexity = Complexity::kComplex;
  std::string notes;

  friend bool operator==(const DeviceClassification&,
                         const DeviceClassification&) = default;
};

enum class Coupling { kTightlyCoupled, kPassive, kSemiActive, kActive };
std::string_view coupling_name(Coupling coupling);

// Unitary when parallelism == 1, parallel(k) otherwise.
struct Access {
  int parallelism = 1;

  bool unitary() const { return parallelism == 1; }
  friend bool operator==(const Access&, const Access&) = default;
};

// Marks a component as (part of) an accelerator of the given integration
// case. Drives report annotations: abstraction warnings for passive targets,
// unitary-use checks, and recorded parallel(k) assumptions.
struct AcceleratorInfo {
  Coupling coupling = Coupling::kActive;
  Access access;

  friend bool operator==(const AcceleratorInfo&, const AcceleratorInfo&) = default;
};

struct Component {
  std::string name;  // local name; qualified by enclosing composites
  Role role = Role::kTarget;
  std::set<std::string> services;
  std::optional<std::uint64_t> capacity;  // bytes per second
  std::optional<DeviceClassification> classification;
  std::optional<AcceleratorInfo> accelerator;
  std::vector<Component> children;  // non-empty iff role == kComposite
  SourceSpan span;

  friend bool operator==(const Component&, const Component&) = default;
};

struct Link {
  ComponentId from;
  ComponentId to;
  SourceSpan span;

  friend bool operator==(const Link&, const Link&) = default;
};

struct SymmetryClass {
  std::string name;
  std::vector<ComponentId> members;
  SourceSpan span;

  friend bool operator==(const SymmetryClass&, const SymmetryClass&) = default;
};

struct Transaction {
  std::string name;
  std::vector<ComponentId> path;
  std::string service;
  std::uint64_t rate = 0;     // transactions per second, 0 = unspecified
  std::uint64_t payload = 0;  // bytes per transaction, 0 = unspecified
  std::string app;            // owning application
  SourceSpan span;

  // "app.name"; unique within a platform.
  std::string key() const { return app + "." + name; }
  const ComponentId& initiator() const { return path.front(); }
  const ComponentId& target() const { return path.back(); }

  friend bool operator==(const Transaction&, const Transaction&) = default;
};

// Application hosting reserved for microcode transactions.
inline constexpr std::string_view kMicrocodeApp = "__microcode__";

struct Application {
  std::string name;
  std::vector<Transaction> transactions;
  SourceSpan span;

  friend bool operator==(const Application&, const Application&) = default;
};

struct Platform {
  std::string name;
  std::vector<Component> components;  // top level
  std::vector<Link> links;            // endpoints are qualified atomic ids
  std::vector<SymmetryClass> symmetries;
  std::vector<Application> applications;
  SourceSpan span;

  friend bool operator==(const Platform&, const Platform&) = default;
};

bool is_identifier(std::string_view text);
// Dotted path of identifiers.
bool is_qualified_id(std::string_view text);
std::string qualify(std::string_view scope, std::string_view name);

// Declarations sorted by name at every level, links by endpoints, and each
// transaction's app set to its owner. Two platforms are structurally equal
// iff their canonical forms compare equal.
Platform canonical(Platform p);
bool structurally_equal(const Platform& a, const Platform& b);

// All violations of the model invariants. Empty means valid. Transaction
// paths are only checked for resolvable references here; hop-by-hop
// semantics belong to resolve_transactions.
std::vector<Diagnostic> validate_platform(const Platform& p);

// Flattened atomic component.
struct Atom {
  ComponentId id;
  Role role = Role::kTarget;
  std::set<std::string> services;
  std::optional<std::uint64_t> capacity;
  std::optional<DeviceClassification> classification;
  std::optional<AcceleratorInfo> accelerator;

  friend bool operator==(const Atom&, const Atom&) = default;
};

// Atomic components and links only, composites folded into qualified ids.
// Construct through flatten(); immutable afterwards.
class FlatPlatform {
 public:
  const std::string& name() const { return name_; }
  std::span<const Atom> atoms() const { return atoms_; }
  std::span<const Link> links() const { return links_; }
  std::span<const SymmetryClass> symmetries() const { return symmetries_; }
  std::span<const Application> applications() const { return applications_; }

  const Atom* find(std::string_view id) const;
  // Throws Error(E_UNKNOWN_COMPONENT).
  const Atom& at(std::string_view id) const;
  bool has_link(std::string_view from, std::string_view to) const;
  // Link targets of `id`, sorted. Throws Error(E_UNKNOWN_COMPONENT).
  const std::vector<ComponentId>& successors(std::string_view id) const;
  std::size_t count(Role role) const;

  friend bool operator==(const FlatPlatform& a, const FlatPlatform& b) {
    return a.name_ == b.name_ && a.atoms_ == b.atoms_ && a.links_ == b.links_ &&
           a.symmetries_ == b.symmetries_ && a.applications_ == b.applications_;
  }

 private:
  friend FlatPlatform flatten(const Platform& p);

  std::string name_;
  std::vector<Atom> atoms_;  // sorted by id
  std::vector<Link> links_;  // sorted by (from, to)
  std::vector<SymmetryClass> symmetries_;
  std::vector<Application> applications_;
  std::map<ComponentId, std::size_t, std::less<>> index_;
  std::map<ComponentId, std::vector<ComponentId>, std::less<>> successors_;
};

// Throws Error(E_NOT_VALIDATED) carrying the diagnostics when `p` is invalid.
FlatPlatform flatten(const Platform& p);
inline FlatPlatform flatten(const FlatPlatform& p) { return p; }

std::vector<ComponentId> successors(const FlatPlatform& p, std::string_view id);

// A platform that passed structural validation and whose transactions all
// resolve to valid paths. Cheap to copy; shares immutable state.
class ValidPlatform {
 public:
  // Runs validate_platform, flatten and resolve_transactions. Warnings from
  // transaction resolution are kept in warnings().
  static Result<ValidPlatform> check(Platform p);
  // Same, but throws Error(E_NOT_VALIDATED) on failure.
  static ValidPlatform from(Platform p);

  const Platform& source() const { return state_->source; }
  const FlatPlatform& flat() const { return state_->flat; }
  // Resolved transactions ordered by (initiator, app, name).
  std::span<const Transaction> transactions() const { return state_->transactions; }
  const std::vector<Diagnostic>& warnings() const { return state_->warnings; }

 private:
  struct State {
    Platform source;
    FlatPlatform flat;
    std::vector<Transaction> transactions;
    std::vector<Diagnostic> warnings;
  };
  explicit ValidPlatform(std::shared_ptr<const State> state) : state_(std::move(state)) {}

  std::shared_ptr<const State> state_;
};

}  // namespace itfkit

#endif  // ITFKIT_PLATFORM_HPP
