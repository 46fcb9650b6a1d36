#ifndef ITFKIT_TEMPLATES_HPP
#define ITFKIT_TEMPLATES_HPP

// Model fragments for accelerator integration cases, and grafting them onto
// a host platform.
//
//   tightly_coupled  no component; the host core stays the sole initiator and
//                    its transactions are split per an ExpansionRule.
//   passive          one target hanging off the attachment transporter.
//   semi_active      one initiator (DMA-like) on the attachment transporter,
//                    configured by a host controller.
//   active           one initiator, or k initiators for parallel(k), with an
//                    optional symmetry class over them.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "itfkit/platform.hpp"
#include "itfkit/transactions.hpp"

namespace itfkit {

// One kind of request issued repeatedly (rate per second, payload bytes).
struct RequestProfile {
  std::string service;
  std::uint64_t rate = 0;
  std::uint64_t payload = 0;
};

struct HostBinding {
  ComponentId controller;                  // host initiator issuing configuration
  ComponentId attach;                      // host transporter (initiator for tightly_coupled)
  std::vector<ComponentId> shared_targets; // host targets reached by the accelerator
};

struct TemplateSpec {
  Coupling coupling = Coupling::kActive;
  Access access;
  std::string name;
  HostBinding host;
  std::optional<ExpansionRule> expansion;       // tightly_coupled only
  std::vector<RequestProfile> config_profile;   // issued by the controller
  std::vector<RequestProfile> work_profile;     // issued by each accelerator initiator
  bool symmetric = false;                       // parallel only
  // Parallel initiators are named unit_names[i] when given, otherwise
  // unit_prefix + i.
  std::string unit_prefix = "U";
  std::vector<std::string> unit_names;
  // Model the controlling microcontroller inside the fragment as one more
  // initiator ("<name>.MCU" or "<name>_MCU") instead of using host.controller.
  bool own_controller = false;
};

// A transaction whose path is resolved at merge time as the shortest route
// (lexicographically least among equals) from `from` to `to`. `app` is a
// placeholder bound by merge: "controller", "accelerator" or a unit name.
struct TransactionTemplate {
  std::string name;
  ComponentId from;
  ComponentId to;
  std::string service;
  std::uint64_t rate = 0;
  std::uint64_t payload = 0;
  std::string app;
};

struct Expansion {
  ComponentId initiator;
  ExpansionRule rule;
};

struct Fragment {
  std::vector<Component> components;
  std::vector<Link> links;
  std::vector<SymmetryClass> symmetries;
  std::vector<TransactionTemplate> transactions_to_add;
  std::vector<Expansion> expansions;

  bool empty() const {
    return components.empty() && links.empty() && symmetries.empty() &&
           transactions_to_add.empty() && expansions.empty();
  }
};

// Throws Error(E_BAD_SPEC).
Fragment instantiate(const TemplateSpec& spec);

// Placeholder -> application name. Missing applications are created.
using AppBindings = std::map<std::string, std::string>;

// Grafts the fragment onto p and returns the merged platform, which is
// guaranteed to validate. Host transactions of initiators named in the
// fragment's expansions are replaced by their expand_access split.
// Throws Error(E_ID_COLLISION), Error(E_DANGLING_BINDING), Error(E_BAD_PATH)
// when a template transaction has no route, or Error(E_NOT_VALIDATED).
Platform merge(const Platform& p, const Fragment& f, const AppBindings& bindings = {});

// Concatenation of two fragments with disjoint ids.
Fragment join(const Fragment& a, const Fragment& b);

// Fragment as reviewable .pml items (no enclosing platform block).
std::string render_fragment(const Fragment& f);

struct InducedRequest {
  std::string name;
  std::string service = "enqueue";
  std::uint64_t rate = 0;
  std::uint64_t payload = 0;
};

// Accelerator runtime layer whose scheduling queue is shared between the
// applications using the accelerator.
struct Runtime {
  std::string name;
  ComponentId accelerator;      // component or composite; users touch it or its children
  ComponentId queue_component;  // created as a target when absent
  ComponentId attach;           // transporter the created queue hangs off
  std::vector<InducedRequest> induced;
};

// Adds the queue target (if new) and, for every application with a
// transaction touching the accelerator, one transaction per induced request
// from each initiator of those transactions to the queue.
// Throws Error(E_BAD_SPEC), Error(E_UNKNOWN_COMPONENT), Error(E_ROLE),
// Error(E_BAD_PATH) or Error(E_ID_COLLISION).
Platform software_overlay(const Platform& p, const Runtime& runtime);

}  // namespace itfkit

#endif  // ITFKIT_TEMPLATES_HPP
