#include "itfkit/templates.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "itfkit/pml.hpp"

namespace itfkit {

namespace {

[[noreturn]] void bad_spec(const std::string& message) { throw Error(Code::kBadSpec, message); }

Component atomic(std::string name, Role role) {
  Component c;
  c.name = std::move(name);
  c.role = role;
  return c;
}

std::string underscored(std::string id) {
  std::replace(id.begin(), id.end(), '.', '_');
  return id;
}

void check_spec(const TemplateSpec& spec) {
  if (!is_identifier(spec.name)) bad_spec("template name '" + spec.name + "' is not an identifier");
  if (spec.access.parallelism < 1) bad_spec("parallelism must be at least 1");
  if (!is_qualified_id(spec.host.attach)) bad_spec("template needs a host attachment point");
  const bool parallel = !spec.access.unitary();
  switch (spec.coupling) {
    case Coupling::kTightlyCoupled:
      if (parallel) bad_spec("a tightly coupled accelerator has no parallel units");
      if (!spec.expansion) bad_spec("tightly coupled template needs an expansion rule");
      if (!spec.config_profile.empty() || !spec.work_profile.empty() || spec.own_controller) {
        bad_spec("a tightly coupled accelerator issues no transactions of its own");
      }
      break;
    case Coupling::kPassive:
      if (parallel) bad_spec("a passive accelerator has no parallel units");
      if (spec.own_controller) bad_spec("a passive accelerator cannot carry its own controller");
      if (!spec.work_profile.empty()) bad_spec("a passive accelerator issues no transactions");
      break;
    case Coupling::kSemiActive:
    case Coupling::kActive:
      break;
  }
  if (spec.coupling != Coupling::kTightlyCoupled && spec.expansion) {
    bad_spec("expansion rules apply to tightly coupled accelerators only");
  }
  if (!spec.config_profile.empty() && spec.host.controller.empty() && !spec.own_controller) {
    bad_spec("configuration profile given but no controller");
  }
  if (!spec.unit_names.empty() &&
      spec.unit_names.size() != static_cast<std::size_t>(spec.access.parallelism)) {
    bad_spec("expected " + std::to_string(spec.access.parallelism) + " unit names, got " +
             std::to_string(spec.unit_names.size()));
  }
  if (spec.symmetric && !parallel) bad_spec("symmetry needs parallel units");
  if (!parallel && !spec.work_profile.empty() && spec.host.shared_targets.empty()) {
    bad_spec("work profile given but no shared targets");
  }
  for (const auto& t : spec.host.shared_targets) {
    if (!is_qualified_id(t)) bad_spec("bad shared target id '" + t + "'");
  }
}

void add_work(Fragment& f, const TemplateSpec& spec, const ComponentId& unit_id,
              const std::string& unit_name, const std::string& placeholder) {
  std::set<std::string> names;
  for (const auto& t : f.transactions_to_add) names.insert(t.name);
  for (const auto& target : spec.host.shared_targets) {
    for (const auto& req : spec.work_profile) {
      TransactionTemplate t{unit_name + "_" + req.service + "_" + underscored(target),
                            unit_id, target, req.service, req.rate, req.payload, placeholder};
      if (!names.insert(t.name).second) bad_spec("work profile repeats '" + t.name + "'");
      f.transactions_to_add.push_back(std::move(t));
    }
  }
}

void add_config(Fragment& f, const TemplateSpec& spec, const ComponentId& controller,
                const ComponentId& csb) {
  for (std::size_t i = 0; i < spec.config_profile.size(); ++i) {
    const auto& req = spec.config_profile[i];
    f.transactions_to_add.push_back(TransactionTemplate{
        "cfg_" + spec.name + "_" + std::to_string(i), controller, csb, req.service, req.rate,
        req.payload, "controller"});
  }
}

Component accelerator_component(std::string name, Role role, const TemplateSpec& spec) {
  Component c = atomic(std::move(name), role);
  c.accelerator = AcceleratorInfo{spec.coupling, spec.access};
  return c;
}

std::set<std::string> config_services(const TemplateSpec& spec) {
  std::set<std::string> out{"config"};
  for (const auto& req : spec.config_profile) out.insert(req.service);
  return out;
}

void collect_ids(const std::vector<Component>& components, const std::string& scope,
                 std::set<ComponentId>& out) {
  for (const auto& c : components) {
    std::string id = qualify(scope, c.name);
    collect_ids(c.children, id, out);
    out.insert(std::move(id));
  }
}

Component* find_component(std::vector<Component>& components, std::string_view id) {
  auto dot = id.find('.');
  std::string_view head = id.substr(0, dot);
  for (auto& c : components) {
    if (c.name != head) continue;
    if (dot == std::string_view::npos) return &c;
    return find_component(c.children, id.substr(dot + 1));
  }
  return nullptr;
}

// Fewest hops first, then lexicographically least.
std::optional<Path> shortest_route(const FlatPlatform& flat, const ComponentId& from,
                                   const ComponentId& to) {
  auto routes = enumerate_paths(flat, from, to);
  if (routes.empty()) return std::nullopt;
  return *std::min_element(routes.begin(), routes.end(), [](const Path& a, const Path& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
}

Application& app_named(Platform& p, const std::string& name) {
  for (auto& app : p.applications) {
    if (app.name == name) return app;
  }
  p.applications.push_back(Application{name, {}, {}});
  return p.applications.back();
}

void require_valid(const Platform& p, const std::string& what) {
  auto diagnostics = validate_platform(p);
  if (!diagnostics.empty()) {
    throw Error(Code::kNotValidated, what + " is not a valid platform", std::move(diagnostics));
  }
}

}  // namespace

Fragment instantiate(const TemplateSpec& spec) {
  check_spec(spec);
  Fragment f;
  const std::string& name = spec.name;
  const ComponentId& attach = spec.host.attach;

  switch (spec.coupling) {
    case Coupling::kTightlyCoupled:
      f.expansions.push_back(Expansion{attach, *spec.expansion});
      return f;

    case Coupling::kPassive: {
      Component c = accelerator_component(name, Role::kTarget, spec);
      c.services = {"config", "load", "store"};
      for (const auto& req : spec.config_profile) c.services.insert(req.service);
      f.components.push_back(std::move(c));
      f.links.push_back(Link{attach, name, {}});
      add_config(f, spec, spec.host.controller, name);
      return f;
    }

    case Coupling::kSemiActive:
    case Coupling::kActive:
      break;
  }

  const bool has_csb = !spec.config_profile.empty();
  if (spec.access.unitary()) {
    f.components.push_back(accelerator_component(name, Role::kInitiator, spec));
    f.links.push_back(Link{name, attach, {}});
    const ComponentId csb = name + "_CSB";
    if (has_csb) {
      Component c = atomic(csb, Role::kTarget);
      c.services = config_services(spec);
      f.components.push_back(std::move(c));
      f.links.push_back(Link{attach, csb, {}});
    }
    ComponentId controller = spec.host.controller;
    if (spec.own_controller) {
      controller = name + "_MCU";
      f.components.push_back(atomic(controller, Role::kInitiator));
      f.links.push_back(Link{controller, has_csb ? csb : attach, {}});
    }
    add_work(f, spec, name, name, "accelerator");
    if (has_csb) add_config(f, spec, controller, csb);
    return f;
  }

  Component group = atomic(name, Role::kComposite);
  SymmetryClass units{name + "_units", {}, {}};
  std::vector<std::pair<ComponentId, std::string>> unit_ids;
  for (int i = 0; i < spec.access.parallelism; ++i) {
    std::string unit = spec.unit_names.empty() ? spec.unit_prefix + std::to_string(i)
                                               : spec.unit_names[static_cast<std::size_t>(i)];
    if (!is_identifier(unit)) bad_spec("unit name '" + unit + "' is not an identifier");
    group.children.push_back(accelerator_component(unit, Role::kInitiator, spec));
    ComponentId id = qualify(name, unit);
    f.links.push_back(Link{id, attach, {}});
    units.members.push_back(id);
    unit_ids.emplace_back(id, unit);
  }
  const ComponentId csb = qualify(name, "CSB");
  if (has_csb) {
    Component c = atomic("CSB", Role::kTarget);
    c.services = config_services(spec);
    group.children.push_back(std::move(c));
    f.links.push_back(Link{attach, csb, {}});
  }
  ComponentId controller = spec.host.controller;
  if (spec.own_controller) {
    controller = qualify(name, "MCU");
    group.children.push_back(atomic("MCU", Role::kInitiator));
    f.links.push_back(Link{controller, has_csb ? csb : attach, {}});
  }
  std::set<std::string> local;
  for (const auto& child : group.children) {
    if (!local.insert(child.name).second) bad_spec("unit name '" + child.name + "' is reserved or repeated");
  }
  f.components.push_back(std::move(group));
  if (spec.symmetric) f.symmetries.push_back(std::move(units));
  for (const auto& [id, unit] : unit_ids) add_work(f, spec, id, unit, unit);
  if (has_csb) add_config(f, spec, controller, csb);
  return f;
}

Platform merge(const Platform& p, const Fragment& f, const AppBindings& bindings) {
  require_valid(p, "host '" + p.name + "'");

  std::set<ComponentId> host_ids;
  collect_ids(p.components, "", host_ids);
  std::set<ComponentId> fragment_ids;
  collect_ids(f.components, "", fragment_ids);
  for (const auto& id : fragment_ids) {
    if (host_ids.count(id)) {
      throw Error(Code::kIdCollision, "fragment component '" + id + "' already exists in '" +
                                          p.name + "'");
    }
  }

  std::set<std::string> placeholders;
  for (const auto& t : f.transactions_to_add) placeholders.insert(t.app);
  for (const auto& ph : placeholders) {
    if (!bindings.count(ph)) {
      throw Error(Code::kDanglingBinding, "placeholder '" + ph + "' is not bound to an application");
    }
  }
  for (const auto& [ph, app] : bindings) {
    if (!placeholders.count(ph)) {
      throw Error(Code::kDanglingBinding, "binding '" + ph + "' matches no fragment transaction");
    }
    if (!is_identifier(app)) {
      throw Error(Code::kDanglingBinding, "binding '" + ph + "' names bad application '" + app + "'");
    }
  }

  Platform out = p;
  out.components.insert(out.components.end(), f.components.begin(), f.components.end());
  out.links.insert(out.links.end(), f.links.begin(), f.links.end());
  out.symmetries.insert(out.symmetries.end(), f.symmetries.begin(), f.symmetries.end());
  require_valid(out, "merge of '" + p.name + "' and fragment");
  const FlatPlatform flat = flatten(out);

  for (const auto& e : f.expansions) {
    const Atom& atom = flat.at(e.initiator);
    if (atom.role != Role::kInitiator) {
      throw Error(Code::kRole, "expansion host '" + e.initiator + "' is not an initiator");
    }
    for (auto& app : out.applications) {
      std::vector<Transaction> split;
      for (const auto& t : app.transactions) {
        if (t.path.empty() || t.path.front() != e.initiator || t.payload == 0) {
          split.push_back(t);
          continue;
        }
        auto parts = expand_access(t, e.rule);
        split.insert(split.end(), parts.begin(), parts.end());
      }
      app.transactions = std::move(split);
    }
  }

  for (const auto& tt : f.transactions_to_add) {
    auto route = shortest_route(flat, tt.from, tt.to);
    if (!route) {
      throw Error(Code::kBadPath, "no route from '" + tt.from + "' to '" + tt.to + "' for '" +
                                      tt.name + "'");
    }
    Application& app = app_named(out, bindings.at(tt.app));
    Transaction t;
    t.name = tt.name;
    t.path = std::move(*route);
    t.service = tt.service;
    t.rate = tt.rate;
    t.payload = tt.payload;
    t.app = app.name;
    app.transactions.push_back(std::move(t));
  }

  auto checked = ValidPlatform::check(out);
  if (!checked.ok()) {
    throw Error(Code::kNotValidated, "merged platform does not validate", checked.diagnostics());
  }
  return out;
}

Fragment join(const Fragment& a, const Fragment& b) {
  std::set<ComponentId> ids;
  collect_ids(a.components, "", ids);
  std::set<ComponentId> other;
  collect_ids(b.components, "", other);
  for (const auto& id : other) {
    if (ids.count(id)) throw Error(Code::kIdCollision, "both fragments declare '" + id + "'");
  }
  Fragment out = a;
  out.components.insert(out.components.end(), b.components.begin(), b.components.end());
  out.links.insert(out.links.end(), b.links.begin(), b.links.end());
  out.symmetries.insert(out.symmetries.end(), b.symmetries.begin(), b.symmetries.end());
  out.transactions_to_add.insert(out.transactions_to_add.end(), b.transactions_to_add.begin(),
                                 b.transactions_to_add.end());
  out.expansions.insert(out.expansions.end(), b.expansions.begin(), b.expansions.end());
  return out;
}

std::string render_fragment(const Fragment& f) {
  std::ostringstream out;
  for (const auto& c : f.components) out << render_component(c, 0);
  if (!f.links.empty()) {
    out << '\n';
    for (const auto& link : f.links) out << render_link(link) << '\n';
  }
  if (!f.symmetries.empty()) {
    out << '\n';
    for (const auto& sc : f.symmetries) out << render_symmetry(sc) << '\n';
  }
  for (const auto& e : f.expansions) {
    out << "\n// " << e.initiator << ": split accesses, width " << e.rule.width << " B, alignment "
        << e.rule.alignment << " B, line " << e.rule.line << " B\n";
  }
  // Endpoint-only transactions, grouped by the placeholder to bind.
  std::vector<std::string> placeholders;
  for (const auto& t : f.transactions_to_add) {
    if (std::find(placeholders.begin(), placeholders.end(), t.app) == placeholders.end()) {
      placeholders.push_back(t.app);
    }
  }
  for (const auto& ph : placeholders) {
    out << "\n// route resolved at merge\napplication " << ph << " {\n";
    for (const auto& tt : f.transactions_to_add) {
      if (tt.app != ph) continue;
      Transaction t;
      t.name = tt.name;
      t.path = {tt.from, tt.to};
      t.service = tt.service;
      t.rate = tt.rate;
      t.payload = tt.payload;
      out << "  " << render_transaction(t) << '\n';
    }
    out << "}\n";
  }
  return out.str();
}

Platform software_overlay(const Platform& p, const Runtime& runtime) {
  if (!is_identifier(runtime.name)) {
    throw Error(Code::kBadSpec, "runtime name '" + runtime.name + "' is not an identifier");
  }
  require_valid(p, "platform '" + p.name + "'");
  std::set<ComponentId> ids;
  collect_ids(p.components, "", ids);
  if (!ids.count(runtime.accelerator)) {
    throw Error(Code::kUnknownComponent, "unknown accelerator '" + runtime.accelerator + "'");
  }

  std::set<std::string> services;
  for (const auto& req : runtime.induced) services.insert(req.service);

  Platform out = p;
  if (Component* queue = find_component(out.components, runtime.queue_component)) {
    if (queue->role != Role::kTarget) {
      throw Error(Code::kRole, "queue '" + runtime.queue_component + "' is not a target");
    }
    queue->services.insert(services.begin(), services.end());
  } else {
    if (!is_identifier(runtime.queue_component)) {
      throw Error(Code::kUnknownComponent,
                  "queue '" + runtime.queue_component + "' is absent and cannot be created here");
    }
    const Component* attach = find_component(out.components, runtime.attach);
    if (!attach) throw Error(Code::kUnknownComponent, "unknown attachment '" + runtime.attach + "'");
    if (attach->role != Role::kTransporter) {
      throw Error(Code::kRole, "attachment '" + runtime.attach + "' is not a transporter");
    }
    Component created = atomic(runtime.queue_component, Role::kTarget);
    created.services = services;
    created.services.insert("enqueue");
    out.components.push_back(std::move(created));
    out.links.push_back(Link{runtime.attach, runtime.queue_component, {}});
  }
  require_valid(out, "overlay of '" + p.name + "'");
  const FlatPlatform flat = flatten(out);

  const std::string prefix = runtime.accelerator + ".";
  auto touches = [&](const Transaction& t) {
    return std::any_of(t.path.begin(), t.path.end(), [&](const ComponentId& c) {
      return c == runtime.accelerator || c.rfind(prefix, 0) == 0;
    });
  };

  for (auto& app : out.applications) {
    std::set<ComponentId> initiators;
    for (const auto& t : app.transactions) {
      if (touches(t)) initiators.insert(t.initiator());
    }
    if (initiators.empty()) continue;
    std::set<std::string> names;
    for (const auto& t : app.transactions) names.insert(t.name);
    std::vector<Transaction> added;
    for (const auto& req : runtime.induced) {
      std::size_t index = 0;
      for (const auto& initiator : initiators) {
        Transaction t;
        t.name = runtime.name + "_" + req.name;
        if (initiators.size() > 1) t.name += "_" + std::to_string(index);
        ++index;
        if (!names.insert(t.name).second) {
          throw Error(Code::kIdCollision,
                      "application '" + app.name + "' already has transaction '" + t.name + "'");
        }
        auto route = shortest_route(flat, initiator, flat.at(runtime.queue_component).id);
        if (!route) {
          throw Error(Code::kBadPath, "no route from '" + initiator + "' to queue '" +
                                          runtime.queue_component + "'");
        }
        t.path = std::move(*route);
        t.service = req.service;
        t.rate = req.rate;
        t.payload = req.payload;
        t.app = app.name;
        added.push_back(std::move(t));
      }
    }
    app.transactions.insert(app.transactions.end(), added.begin(), added.end());
  }
  return out;
}

}  // namespace itfkit
