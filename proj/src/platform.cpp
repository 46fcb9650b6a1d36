#include "itfkit/platform.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

#include "itfkit/transactions.hpp"

namespace itfkit {

std::string_view role_name(Role role) {
  switch (role) {
    case Role::kInitiator: return "initiator";
    case Role::kTarget: return "target";
    case Role::kTransporter: return "transporter";
    case Role::kComposite: return "composite";
  }
  return "?";
}

std::string_view origin_name(Origin origin) {
  switch (origin) {
    case Origin::kCotsDevice: return "cots";
    case Origin::kCotsSoftIp: return "cots_soft_ip";
    case Origin::kCotsHardIp: return "cots_hard_ip";
    case Origin::kCustom: return "custom";
  }
  return "?";
}

std::string_view complexity_name(Complexity complexity) {
  return complexity == Complexity::kSimple ? "simple" : "complex";
}

std::string_view coupling_name(Coupling coupling) {
  switch (coupling) {
    case Coupling::kTightlyCoupled: return "tightly_coupled";
    case Coupling::kPassive: return "passive";
    case Coupling::kSemiActive: return "semi_active";
    case Coupling::kActive: return "active";
  }
  return "?";
}

bool is_identifier(std::string_view text) {
  if (text.empty()) return false;
  auto head = static_cast<unsigned char>(text.front());
  if (!(std::isalpha(head) || head == '_')) return false;
  return std::all_of(text.begin() + 1, text.end(), [](char c) {
    auto u = static_cast<unsigned char>(c);
    return std::isalnum(u) || u == '_';
  });
}

bool is_qualified_id(std::string_view text) {
  while (true) {
    auto dot = text.find('.');
    if (!is_identifier(text.substr(0, dot))) return false;
    if (dot == std::string_view::npos) return true;
    text.remove_prefix(dot + 1);
  }
}

std::string qualify(std::string_view scope, std::string_view name) {
  if (scope.empty()) return std::string(name);
  std::string out(scope);
  out += '.';
  out += name;
  return out;
}

namespace {

void canonicalize_component(Component& c) {
  for (auto& child : c.children) canonicalize_component(child);
  std::sort(c.children.begin(), c.children.end(),
            [](const Component& a, const Component& b) { return a.name < b.name; });
}

bool link_less(const Link& a, const Link& b) {
  return std::tie(a.from, a.to) < std::tie(b.from, b.to);
}

}  // namespace

Platform canonical(Platform p) {
  for (auto& c : p.components) canonicalize_component(c);
  std::sort(p.components.begin(), p.components.end(),
            [](const Component& a, const Component& b) { return a.name < b.name; });
  std::sort(p.links.begin(), p.links.end(), link_less);
  std::sort(p.symmetries.begin(), p.symmetries.end(),
            [](const SymmetryClass& a, const SymmetryClass& b) { return a.name < b.name; });
  for (auto& app : p.applications) {
    for (auto& t : app.transactions) t.app = app.name;
    std::sort(app.transactions.begin(), app.transactions.end(),
              [](const Transaction& a, const Transaction& b) { return a.name < b.name; });
  }
  std::sort(p.applications.begin(), p.applications.end(),
            [](const Application& a, const Application& b) { return a.name < b.name; });
  return p;
}

bool structurally_equal(const Platform& a, const Platform& b) {
  return canonical(a) == canonical(b);
}

// ---------------------------------------------------------------------------
// Validation

namespace {

struct Declared {
  Role role;
  SourceSpan span;
};

class Validator {
 public:
  explicit Validator(const Platform& p) : p_(p) {}

  std::vector<Diagnostic> run() {
    if (!is_identifier(p_.name)) {
      error(Code::kBadId, "platform name '" + p_.name + "' is not an identifier", p_.span);
    }
    walk(p_.components, "");
    check_links();
    check_roles_present();
    check_symmetries();
    check_applications();
    return std::move(out_);
  }

 private:
  void error(Code code, std::string message, const SourceSpan& span) {
    out_.push_back(make_error(code, std::move(message), span));
  }

  void walk(const std::vector<Component>& components, const std::string& scope) {
    std::set<std::string> local;
    for (const auto& c : components) {
      const std::string id = qualify(scope, c.name);
      if (!is_identifier(c.name)) {
        error(Code::kBadId, "component name '" + c.name + "' is not an identifier", c.span);
      }
      if (!local.insert(c.name).second || declared_.count(id)) {
        error(Code::kDupId, "duplicate component '" + id + "'", c.span);
      } else {
        declared_.emplace(id, Declared{c.role, c.span});
      }
      check_component(c, id);
      if (c.role == Role::kComposite) walk(c.children, id);
    }
  }

  void check_component(const Component& c, const std::string& id) {
    if (c.role == Role::kComposite) {
      if (c.children.empty()) {
        error(Code::kEmptyComposite, "composite '" + id + "' has no children", c.span);
      }
      if (!c.services.empty() || c.capacity || c.classification || c.accelerator) {
        error(Code::kBadAttr, "composite '" + id + "' cannot carry attributes", c.span);
      }
      return;
    }
    if (!c.children.empty()) {
      error(Code::kBadAttr, "atomic component '" + id + "' cannot have children", c.span);
    }
    for (const auto& s : c.services) {
      if (!is_identifier(s)) {
        error(Code::kBadId, "service '" + s + "' on '" + id + "' is not an identifier", c.span);
      }
    }
    if (c.role == Role::kTarget && c.services.empty()) {
      error(Code::kTargetNoService, "target '" + id + "' exposes no service", c.span);
    }
    if (c.capacity && c.role == Role::kInitiator) {
      error(Code::kBadAttr, "capacity on initiator '" + id + "'", c.span);
    }
    if (c.classification && c.classification->complexity == Complexity::kSimple) {
      const auto& notes = c.classification->notes;
      bool blank = std::all_of(notes.begin(), notes.end(),
                               [](char ch) { return std::isspace(static_cast<unsigned char>(ch)); });
      if (blank) {
        error(Code::kClassJustification,
              "'" + id + "' is classified simple without a justification", c.span);
      }
    }
    if (c.accelerator) {
      const auto& acc = *c.accelerator;
      if (acc.access.parallelism < 1) {
        error(Code::kBadAttr, "accelerator parallelism on '" + id + "' must be positive", c.span);
      }
      Role expected = acc.coupling == Coupling::kPassive ? Role::kTarget : Role::kInitiator;
      if (c.role != expected) {
        error(Code::kBadAttr,
              std::string(coupling_name(acc.coupling)) + " accelerator '" + id + "' must be a" +
                  (expected == Role::kTarget ? " target" : "n initiator"),
              c.span);
      }
      if (!acc.access.unitary() &&
          (acc.coupling == Coupling::kTightlyCoupled || acc.coupling == Coupling::kPassive)) {
        error(Code::kBadAttr,
              std::string(coupling_name(acc.coupling)) + " accelerator '" + id +
                  "' can only be unitary",
              c.span);
      }
    }
  }

  const Declared* lookup(const std::string& id) const {
    auto it = declared_.find(id);
    return it == declared_.end() ? nullptr : &it->second;
  }

  void check_links() {
    std::set<std::pair<std::string, std::string>> seen;
    for (const auto& link : p_.links) {
      bool endpoints_ok = true;
      for (const auto* end : {&link.from, &link.to}) {
        const Declared* d = lookup(*end);
        if (!d) {
          error(Code::kUnknownComponent, "link endpoint '" + *end + "' does not exist", link.span);
          endpoints_ok = false;
        } else if (d->role == Role::kComposite) {
          error(Code::kLinkComposite, "link endpoint '" + *end + "' is a composite", link.span);
          endpoints_ok = false;
        }
      }
      if (link.from == link.to) {
        error(Code::kSelfLink, "self-link at '" + link.from + "'", link.span);
        continue;
      }
      if (endpoints_ok && !seen.emplace(link.from, link.to).second) {
        error(Code::kDupLink, "duplicate link '" + link.from + " -> " + link.to + "'", link.span);
      }
    }
  }

  void check_roles_present() {
    bool initiator = false, target = false;
    for (const auto& [id, d] : declared_) {
      initiator |= d.role == Role::kInitiator;
      target |= d.role == Role::kTarget;
    }
    if (!initiator) error(Code::kNoInitiator, "platform has no initiator", p_.span);
    if (!target) error(Code::kNoTarget, "platform has no target", p_.span);
  }

  void check_symmetries() {
    std::set<std::string> names;
    for (const auto& sc : p_.symmetries) {
      if (!is_identifier(sc.name)) {
        error(Code::kBadId, "symmetry name '" + sc.name + "' is not an identifier", sc.span);
      }
      if (!names.insert(sc.name).second) {
        error(Code::kDupId, "duplicate symmetry class '" + sc.name + "'", sc.span);
      }
      if (sc.members.size() < 2) {
        error(Code::kSymmetry, "symmetry class '" + sc.name + "' needs at least 2 members",
              sc.span);
      }
      std::set<std::string> members;
      std::optional<Role> role;
      for (const auto& m : sc.members) {
        if (!members.insert(m).second) {
          error(Code::kSymmetry, "symmetry class '" + sc.name + "' repeats '" + m + "'", sc.span);
          continue;
        }
        const Declared* d = lookup(m);
        if (!d) {
          error(Code::kUnknownComponent,
                "symmetry member '" + m + "' does not exist", sc.span);
          continue;
        }
        if (d->role == Role::kComposite) {
          error(Code::kSymmetry, "symmetry member '" + m + "' is a composite", sc.span);
          continue;
        }
        if (role && *role != d->role) {
          error(Code::kSymmetry, "symmetry class '" + sc.name + "' mixes roles", sc.span);
        }
        role = d->role;
      }
    }
  }

  void check_applications() {
    std::set<std::string> apps;
    for (const auto& app : p_.applications) {
      if (!is_identifier(app.name)) {
        error(Code::kBadId, "application name '" + app.name + "' is not an identifier", app.span);
      }
      if (!apps.insert(app.name).second) {
        error(Code::kDupId, "duplicate application '" + app.name + "'", app.span);
      }
      std::set<std::string> names;
      for (const auto& t : app.transactions) {
        if (!is_identifier(t.name)) {
          error(Code::kBadId, "transaction name '" + t.name + "' is not an identifier", t.span);
        }
        if (!names.insert(t.name).second) {
          error(Code::kDupId,
                "duplicate transaction '" + t.name + "' in application '" + app.name + "'",
                t.span);
        }
        if (!is_identifier(t.service)) {
          error(Code::kBadId, "service '" + t.service + "' is not an identifier", t.span);
        }
        if (t.path.empty()) {
          error(Code::kBadPath, "transaction '" + t.name + "' has an empty path", t.span);
        }
        for (const auto& hop : t.path) {
          const Declared* d = lookup(hop);
          if (!d) {
            error(Code::kUnknownComponent,
                  "transaction '" + t.name + "' references unknown component '" + hop + "'",
                  t.span);
          } else if (d->role == Role::kComposite) {
            error(Code::kRole,
                  "transaction '" + t.name + "' traverses composite '" + hop + "'", t.span);
          }
        }
      }
    }
  }

  const Platform& p_;
  std::map<std::string, Declared> declared_;
  std::vector<Diagnostic> out_;
};

void collect_atoms(const std::vector<Component>& components, const std::string& scope,
                   std::vector<Atom>& out) {
  for (const auto& c : components) {
    std::string id = qualify(scope, c.name);
    if (c.role == Role::kComposite) {
      collect_atoms(c.children, id, out);
    } else {
      out.push_back(Atom{std::move(id), c.role, c.services, c.capacity, c.classification,
                         c.accelerator});
    }
  }
}

}  // namespace

std::vector<Diagnostic> validate_platform(const Platform& p) {
  return Validator(p).run();
}

// ---------------------------------------------------------------------------
// Flat view

const Atom* FlatPlatform::find(std::string_view id) const {
  auto it = index_.find(id);
  return it == index_.end() ? nullptr : &atoms_[it->second];
}

const Atom& FlatPlatform::at(std::string_view id) const {
  const Atom* a = find(id);
  if (!a) throw Error(Code::kUnknownComponent, "unknown component '" + std::string(id) + "'");
  return *a;
}

bool FlatPlatform::has_link(std::string_view from, std::string_view to) const {
  auto it = successors_.find(from);
  if (it == successors_.end()) return false;
  return std::binary_search(it->second.begin(), it->second.end(), to,
                            [](const auto& a, const auto& b) {
                              return std::string_view(a) < std::string_view(b);
                            });
}

const std::vector<ComponentId>& FlatPlatform::successors(std::string_view id) const {
  at(id);
  static const std::vector<ComponentId> kNone;
  auto it = successors_.find(id);
  return it == successors_.end() ? kNone : it->second;
}

std::size_t FlatPlatform::count(Role role) const {
  return static_cast<std::size_t>(std::count_if(
      atoms_.begin(), atoms_.end(), [role](const Atom& a) { return a.role == role; }));
}

FlatPlatform flatten(const Platform& p) {
  auto diagnostics = validate_platform(p);
  if (!diagnostics.empty()) {
    throw Error(Code::kNotValidated, "platform '" + p.name + "' is not valid",
                std::move(diagnostics));
  }
  FlatPlatform flat;
  flat.name_ = p.name;
  collect_atoms(p.components, "", flat.atoms_);
  std::sort(flat.atoms_.begin(), flat.atoms_.end(),
            [](const Atom& a, const Atom& b) { return a.id < b.id; });
  for (std::size_t i = 0; i < flat.atoms_.size(); ++i) flat.index_.emplace(flat.atoms_[i].id, i);
  flat.links_ = p.links;
  std::sort(flat.links_.begin(), flat.links_.end(), link_less);
  for (const auto& link : flat.links_) flat.successors_[link.from].push_back(link.to);
  flat.symmetries_ = p.symmetries;
  flat.applications_ = canonical(Platform{"", {}, {}, {}, p.applications, {}}).applications;
  return flat;
}

std::vector<ComponentId> successors(const FlatPlatform& p, std::string_view id) {
  return p.successors(id);
}

// ---------------------------------------------------------------------------

Result<ValidPlatform> ValidPlatform::check(Platform p) {
  auto diagnostics = validate_platform(p);
  if (!diagnostics.empty()) return Result<ValidPlatform>::failure(std::move(diagnostics));
  FlatPlatform flat = flatten(p);
  auto resolved = resolve_transactions(flat);
  if (!resolved.ok()) return Result<ValidPlatform>::failure(resolved.diagnostics());

  std::vector<Transaction> transactions = resolved.value();
  std::sort(transactions.begin(), transactions.end(),
            [](const Transaction& a, const Transaction& b) {
              return std::tie(a.path.front(), a.app, a.name) <
                     std::tie(b.path.front(), b.app, b.name);
            });
  auto state = std::make_shared<State>(State{std::move(p), std::move(flat),
                                             std::move(transactions), resolved.diagnostics()});
  return Result<ValidPlatform>::success(ValidPlatform(std::move(state)),
                                        resolved.diagnostics());
}

ValidPlatform ValidPlatform::from(Platform p) {
  std::string name = p.name;
  auto result = check(std::move(p));
  if (!result.ok()) {
    throw Error(Code::kNotValidated, "platform '" + name + "' is not valid",
                result.diagnostics());
  }
  return std::move(result).value();
}

}  // namespace itfkit
