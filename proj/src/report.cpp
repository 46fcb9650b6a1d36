#include "itfkit/report.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <map>
#include <set>
#include <sstream>

#include "itfkit/capacity.hpp"
#include "itfkit/interference.hpp"

namespace itfkit {

std::string_view finding_kind_name(FindingKind kind) {
  switch (kind) {
    case FindingKind::kItfChannel: return "itf_channel";
    case FindingKind::kFreePair: return "free_pair";
    case FindingKind::kPartial: return "partial";
    case FindingKind::kCapacity: return "capacity";
    case FindingKind::kAbstractionWarning: return "abstraction_warning";
    case FindingKind::kUnitaryViolation: return "unitary_violation";
    case FindingKind::kClassificationNote: return "classification_note";
  }
  return "?";
}

std::string_view amc_tag_name(AmcTag tag) {
  switch (tag) {
    case AmcTag::kResourceId: return "RESOURCE_ID";
    case AmcTag::kChannelId: return "CHANNEL_ID";
    case AmcTag::kCapacity: return "CAPACITY";
    case AmcTag::kSoftwareId: return "SOFTWARE_ID";
    case AmcTag::kUsageDomain: return "USAGE_DOMAIN";
    case AmcTag::kMicrocode: return "MICROCODE";
  }
  return "?";
}

std::string_view finding_severity_name(FindingSeverity severity) {
  switch (severity) {
    case FindingSeverity::kInfo: return "info";
    case FindingSeverity::kWarning: return "warning";
    case FindingSeverity::kError: return "error";
  }
  return "?";
}

bool Report::has_errors() const {
  return std::any_of(findings.begin(), findings.end(),
                     [](const Finding& f) { return f.severity == FindingSeverity::kError; });
}

const Finding* Report::find(std::string_view id) const {
  for (const auto& f : findings) {
    if (f.id == id) return &f;
  }
  return nullptr;
}

namespace {

using nlohmann::json;

// FNV-1a, 64 bit.
std::uint64_t fnv1a(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

class Builder {
 public:
  Builder(const ValidPlatform& p, const ReportOptions& options) : p_(p), options_(options) {
    report_.platform = p.flat().name();
    report_.options = options;
  }

  Report run() {
    interference();
    capacity();
    accelerators();
    classifications();
    assumptions();
    return std::move(report_);
  }

 private:
  void add(FindingKind kind, FindingSeverity severity, std::string subject,
           std::vector<ComponentId> components, std::vector<AmcTag> tags, json details) {
    Finding f;
    f.kind = kind;
    f.severity = severity;
    f.subject = std::move(subject);
    f.components = std::move(components);
    f.amc_tags = std::move(tags);
    f.details = std::move(details);
    const std::string content = std::string(finding_kind_name(kind)) + '\n' + f.subject + '\n' +
                                json(f.components).dump() + '\n' + f.details.dump();
    char buffer[24];
    std::snprintf(buffer, sizeof buffer, "F-%016llx",
                  static_cast<unsigned long long>(fnv1a(content)));
    f.id = buffer;
    report_.findings.push_back(std::move(f));
  }

  std::string subject_of(const Scenario& s) const {
    std::string out;
    for (const auto& key : scenario_keys(p_, s)) {
      if (!out.empty()) out += " | ";
      out += key;
    }
    return out;
  }

  SymmetryGroup group() {
    if (!options_.quotient || p_.flat().symmetries().empty()) return SymmetryGroup::trivial();
    try {
      return SymmetryGroup::from_platform(p_.flat());
    } catch (const Error& e) {
      std::string names;
      for (const auto& d : e.diagnostics()) names += "; " + d.message;
      notes_.push_back("declared symmetry classes did not validate, scenarios are reported "
                       "without quotienting" + names);
      return SymmetryGroup::trivial();
    }
  }

  void interference() {
    const ScenarioOptions so{options_.exclude_same_app};
    const SymmetryGroup g = group();
    for (std::size_t n = 2; n <= std::max<std::size_t>(options_.n_max, 2); ++n) {
      auto scs = scenarios(p_, n, so);
      if (scs.empty()) break;
      std::vector<Scenario> itf;
      for (const auto& s : scs) {
        auto c = classify(p_, s);
        if (c.kind == Kind::kItf) {
          itf.push_back(s);
        } else if (c.kind == Kind::kPartial) {
          partial(s);
        } else if (n == 2) {
          add(FindingKind::kFreePair, FindingSeverity::kInfo, subject_of(s), {},
              {AmcTag::kChannelId}, json{{"n", n}, {"transactions", scenario_keys(p_, s)}});
        }
      }
      for (const auto& orbit : quotient(p_, itf, g)) channel(n, orbit);
    }
  }

  void channel(std::size_t n, const Orbit& orbit) {
    const auto c = classify(p_, orbit.representative);
    json members = json::array();
    for (const auto& s : orbit.members) members.push_back(scenario_keys(p_, s));
    json details{{"n", n},
                 {"transactions", scenario_keys(p_, orbit.representative)},
                 {"channel", c.channel},
                 {"orbit_size", orbit.size()},
                 {"orbit_members", std::move(members)}};
    add(FindingKind::kItfChannel, FindingSeverity::kWarning, subject_of(orbit.representative),
        c.channel, {AmcTag::kChannelId, AmcTag::kResourceId}, std::move(details));
  }

  void partial(const Scenario& s) {
    std::set<ComponentId> shared;
    const auto txns = p_.transactions();
    for (std::size_t i = 0; i < s.members.size(); ++i) {
      for (std::size_t j = i + 1; j < s.members.size(); ++j) {
        for (const auto& c : txns[s.members[i]].path) {
          const auto& other = txns[s.members[j]].path;
          if (std::find(other.begin(), other.end(), c) != other.end()) shared.insert(c);
        }
      }
    }
    std::vector<ComponentId> components(shared.begin(), shared.end());
    add(FindingKind::kPartial, FindingSeverity::kInfo, subject_of(s), components,
        {AmcTag::kChannelId},
        json{{"n", s.members.size()},
             {"transactions", scenario_keys(p_, s)},
             {"pairwise_shared", components}});
  }

  void capacity() {
    for (const auto& entry : check_capacity(p_).entries) {
      FindingSeverity severity = entry.verdict == Verdict::kOk     ? FindingSeverity::kInfo
                                 : entry.verdict == Verdict::kOver ? FindingSeverity::kError
                                                                   : FindingSeverity::kWarning;
      json contributors = json::array();
      for (const auto& c : entry.demand.contributors) {
        contributors.push_back(json{{"transaction", c.transaction}, {"bytes_per_second", c.bytes_per_second}});
      }
      json details{{"check", "average-demand"},
                   {"verdict", verdict_name(entry.verdict)},
                   {"demand_bytes_per_second", entry.demand.bytes_per_second},
                   {"contributors", std::move(contributors)},
                   {"unspecified", entry.demand.unspecified}};
      details["capacity_bytes_per_second"] =
          entry.capacity ? json(*entry.capacity) : json(nullptr);
      add(FindingKind::kCapacity, severity, entry.demand.component, {entry.demand.component},
          {AmcTag::kCapacity, AmcTag::kResourceId}, std::move(details));
    }
  }

  void accelerators() {
    for (const auto& atom : p_.flat().atoms()) {
      if (!atom.accelerator) continue;
      const auto& acc = *atom.accelerator;
      if (acc.coupling == Coupling::kPassive) {
        add(FindingKind::kAbstractionWarning, FindingSeverity::kWarning, atom.id, {atom.id},
            {AmcTag::kResourceId},
            json{{"code", code_name(Code::kAbstraction)},
                 {"message", "passive accelerator '" + atom.id +
                                 "' is modelled as a target; traffic it causes internally "
                                 "is not represented"}});
        notes_.push_back("passive accelerator " + atom.id +
                         " is abstracted as a target with no initiated transactions");
        continue;
      }
      if (atom.role != Role::kInitiator) continue;
      if (acc.access.unitary()) {
        unitary_checked_ = true;
        std::set<std::string> apps;
        for (const auto& t : p_.transactions()) {
          if (t.initiator() == atom.id && t.app != kMicrocodeApp) apps.insert(t.app);
        }
        if (apps.size() > 1) {
          add(FindingKind::kUnitaryViolation, FindingSeverity::kError, atom.id, {atom.id},
              {AmcTag::kSoftwareId, AmcTag::kUsageDomain},
              json{{"code", code_name(Code::kUnitaryViolation)},
                   {"applications", std::vector<std::string>(apps.begin(), apps.end())}});
        }
      } else {
        auto dot = atom.id.rfind('.');
        std::string group = dot == std::string::npos ? atom.id : atom.id.substr(0, dot);
        parallel_groups_[{group, acc.access.parallelism}].push_back(atom.id);
      }
    }
  }

  void classifications() {
    std::set<ComponentId> microcode_heads;
    for (const auto& t : p_.transactions()) {
      if (t.app == kMicrocodeApp) microcode_heads.insert(t.initiator());
    }
    for (const auto& atom : p_.flat().atoms()) {
      const bool heads = microcode_heads.count(atom.id) > 0;
      if (!atom.classification && !heads) continue;
      std::vector<AmcTag> tags;
      json details = json::object();
      if (atom.classification) {
        const auto& dc = *atom.classification;
        tags.push_back(AmcTag::kUsageDomain);
        details["origin"] = origin_name(dc.origin);
        details["complexity"] = complexity_name(dc.complexity);
        details["notes"] = dc.notes;
      }
      std::string lower = atom.classification ? atom.classification->notes : "";
      std::transform(lower.begin(), lower.end(), lower.begin(),
                     [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
      if (heads || lower.find("microcode") != std::string::npos) {
        tags.push_back(AmcTag::kMicrocode);
        details["microcode"] = true;
      }
      add(FindingKind::kClassificationNote, FindingSeverity::kInfo, atom.id, {atom.id}, tags,
          std::move(details));
    }
  }

  void assumptions() {
    auto& out = report_.assumptions;
    out.push_back("capacity verdicts compare sustained average demand (rate x payload) with "
                  "declared bandwidth; bursts and latency are not modelled");
    out.push_back("interference is assessed at component granularity: any component shared by "
                  "all transactions of a scenario is a potential channel");
    out.push_back("scenarios contain at most " + std::to_string(std::max<std::size_t>(options_.n_max, 2)) +
                  " transactions from distinct initiators");
    out.push_back(options_.exclude_same_app
                      ? "transactions of the same application are not combined in a scenario"
                      : "transactions of the same application may be combined in a scenario");
    if (!options_.quotient) out.push_back("symmetry quotienting disabled; every scenario is listed");
    for (const auto& [key, ids] : parallel_groups_) {
      out.push_back(key.first + ": parallel accelerator modelled as " + std::to_string(key.second) +
                    " initiators (" + std::to_string(ids.size()) + " declared)");
    }
    if (unitary_checked_) {
      out.push_back("unitary accelerators are checked: transactions they initiate must belong "
                    "to a single application");
    }
    out.insert(out.end(), notes_.begin(), notes_.end());
  }

  const ValidPlatform& p_;
  ReportOptions options_;
  Report report_;
  std::vector<std::string> notes_;
  std::map<std::pair<std::string, int>, std::vector<ComponentId>> parallel_groups_;
  bool unitary_checked_ = false;
};

}  // namespace

Report build_report(const ValidPlatform& p, const ReportOptions& options) {
  return Builder(p, options).run();
}

nlohmann::json to_json(const Report& report) {
  using nlohmann::json;
  json findings = json::array();
  std::map<std::string, std::size_t> counts;
  for (const auto& f : report.findings) {
    std::vector<std::string> tags;
    for (auto t : f.amc_tags) tags.emplace_back(amc_tag_name(t));
    findings.push_back(json{{"id", f.id},
                            {"kind", finding_kind_name(f.kind)},
                            {"severity", finding_severity_name(f.severity)},
                            {"subject", f.subject},
                            {"components", f.components},
                            {"amc_tags", tags},
                            {"details", f.details}});
    ++counts[std::string(finding_kind_name(f.kind))];
  }
  return json{{"schema", kReportSchema},
              {"platform", report.platform},
              {"options",
               {{"n_max", report.options.n_max},
                {"exclude_same_app", report.options.exclude_same_app},
                {"quotient", report.options.quotient}}},
              {"summary", counts},
              {"findings", std::move(findings)},
              {"assumptions", report.assumptions}};
}

std::string render_json(const Report& report) { return to_json(report).dump(2) + "\n"; }

namespace {

std::string dot_id(std::string_view id) {
  std::string out = "\"";
  for (char c : id) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

std::string_view shape_of(Role role) {
  switch (role) {
    case Role::kInitiator: return "box";
    case Role::kTarget: return "ellipse";
    case Role::kTransporter: return "hexagon";
    case Role::kComposite: return "folder";
  }
  return "box";
}

void emit_nodes(std::ostringstream& out, const std::vector<Component>& components,
                const std::string& scope, int depth, const std::set<ComponentId>& highlight) {
  const std::string pad(static_cast<std::size_t>(depth) * 2, ' ');
  for (const auto& c : components) {
    const std::string id = qualify(scope, c.name);
    if (c.role == Role::kComposite) {
      std::string cluster = id;
      std::replace(cluster.begin(), cluster.end(), '.', '_');
      out << pad << "subgraph " << dot_id("cluster_" + cluster) << " {\n";
      out << pad << "  label=" << dot_id(c.name) << ";\n";
      emit_nodes(out, c.children, id, depth + 1, highlight);
      out << pad << "}\n";
      continue;
    }
    out << pad << dot_id(id) << " [label=" << dot_id(c.name) << ", shape=" << shape_of(c.role);
    if (highlight.count(id)) out << ", color=\"red\", penwidth=2.5, style=bold";
    out << "];\n";
  }
}

}  // namespace

std::string export_dot(const ValidPlatform& p, const Finding* highlight) {
  std::set<ComponentId> marked;
  if (highlight) marked.insert(highlight->components.begin(), highlight->components.end());
  const Platform source = canonical(p.source());
  std::ostringstream out;
  out << "digraph " << dot_id(source.name) << " {\n";
  out << "  rankdir=LR;\n";
  emit_nodes(out, source.components, "", 1, marked);
  for (const auto& link : p.flat().links()) {
    out << "  " << dot_id(link.from) << " -> " << dot_id(link.to) << ";\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace itfkit
