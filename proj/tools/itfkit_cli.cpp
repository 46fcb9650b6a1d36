// itfkit command-line front end.
//
// Exit codes: 0 success, 1 usage/parse/model error, 2 analysis findings of
// error severity (capacity exceeded, unitary violation).

#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "itfkit/capacity.hpp"
#include "itfkit/interference.hpp"
#include "itfkit/pml.hpp"
#include "itfkit/report.hpp"
#include "itfkit/templates.hpp"
#include "itfkit/transactions.hpp"

namespace {

using namespace itfkit;

constexpr int kOk = 0;
constexpr int kFailure = 1;
constexpr int kFindings = 2;

void print_diagnostics(const std::vector<Diagnostic>& diagnostics) {
  for (const auto& d : diagnostics) std::cerr << format_diagnostic(d) << '\n';
}

ValidPlatform load(const std::string& file) {
  auto parsed = parse_file(file);
  if (!parsed.ok()) {
    throw Error(parsed.diagnostics().front().code, "cannot load '" + file + "'",
                parsed.diagnostics());
  }
  auto checked = ValidPlatform::check(parsed.value());
  if (!checked.ok()) {
    throw Error(Code::kNotValidated, "'" + file + "' has invalid transactions",
                checked.diagnostics());
  }
  print_diagnostics(checked.value().warnings());
  return checked.value();
}

void write_output(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) throw Error(Code::kIo, "cannot write '" + path + "'");
}

std::string join_path(const std::vector<ComponentId>& path, std::string_view sep) {
  std::string out;
  for (const auto& c : path) {
    if (!out.empty()) out += sep;
    out += c;
  }
  return out;
}

int cmd_validate(const std::string& file) {
  ValidPlatform p = load(file);
  const auto& flat = p.flat();
  std::cout << "ok: " << flat.name() << ": " << flat.count(Role::kInitiator) << " initiators, "
            << flat.count(Role::kTransporter) << " transporters, " << flat.count(Role::kTarget)
            << " targets, " << flat.links().size() << " links, " << p.transactions().size()
            << " transactions\n";
  return kOk;
}

int cmd_paths(const std::string& file, const std::string& from, const std::string& to) {
  ValidPlatform p = load(file);
  auto routes = enumerate_paths(p.flat(), from, to);
  for (const auto& r : routes) std::cout << join_path(r, " -> ") << '\n';
  if (routes.empty()) std::cerr << "no path from " << from << " to " << to << '\n';
  return kOk;
}

int cmd_interfere(const std::string& file, std::size_t n, bool include_same_app, bool no_quotient,
                  const std::string& json_out) {
  if (n < 2) throw Error(Code::kBadN, "--n must be at least 2");
  ValidPlatform p = load(file);
  // Keep stdout clean for JSON written to '-'.
  std::ostream& text = json_out == "-" ? std::cerr : std::cout;
  ReportOptions options{n, !include_same_app, !no_quotient};
  Report report = build_report(p, options);
  std::size_t itf = 0;
  std::size_t partial = 0;
  for (const auto& f : report.findings) {
    if (f.kind == FindingKind::kItfChannel) {
      ++itf;
      text << "itf     " << f.subject << "  channel: " << join_path(f.components, ", ");
      std::size_t orbit = f.details["orbit_size"].get<std::size_t>();
      if (orbit > 1) text << "  (orbit of " << orbit << ")";
      text << '\n';
    } else if (f.kind == FindingKind::kPartial) {
      ++partial;
      text << "partial " << f.subject << '\n';
    }
  }
  text << itf << " itf finding(s), " << partial << " partial scenario(s)\n";
  if (!json_out.empty()) {
    report.findings.erase(std::remove_if(report.findings.begin(), report.findings.end(),
                                         [](const Finding& f) {
                                           return f.kind != FindingKind::kItfChannel &&
                                                  f.kind != FindingKind::kPartial &&
                                                  f.kind != FindingKind::kFreePair;
                                         }),
                          report.findings.end());
    write_output(json_out, render_json(report));
  }
  return kOk;
}

int cmd_capacity(const std::string& file, const std::string& json_out) {
  ValidPlatform p = load(file);
  std::ostream& text = json_out == "-" ? std::cerr : std::cout;
  CapacityReport cr = check_capacity(p);
  nlohmann::json entries = nlohmann::json::array();
  for (const auto& e : cr.entries) {
    text << e.demand.component << ": demand " << e.demand.bytes_per_second << " B/s, capacity ";
    if (e.capacity) text << *e.capacity << " B/s"; else text << "unspecified";
    text << ", " << verdict_name(e.verdict) << '\n';
    entries.push_back({{"component", e.demand.component},
                       {"demand_bytes_per_second", e.demand.bytes_per_second},
                       {"capacity_bytes_per_second",
                        e.capacity ? nlohmann::json(*e.capacity) : nlohmann::json(nullptr)},
                       {"verdict", verdict_name(e.verdict)},
                       {"unspecified", e.demand.unspecified}});
  }
  if (!json_out.empty()) {
    nlohmann::json doc{{"schema", kReportSchema},
                       {"platform", p.flat().name()},
                       {"check", "average-demand"},
                       {"entries", std::move(entries)}};
    write_output(json_out, doc.dump(2) + "\n");
  }
  return cr.any_over() ? kFindings : kOk;
}

struct TemplateArgs {
  std::string kind;
  int parallel = 1;
  bool symmetric = false;
  std::string name;
  std::string attach;
  std::vector<std::string> targets;
  std::string controller;
  std::string unit_prefix = "U";
  std::uint64_t width = 8;
  std::uint64_t alignment = 8;
  std::uint64_t line = 64;
};

int cmd_template(const TemplateArgs& args) {
  TemplateSpec spec;
  spec.coupling = args.kind == "tightly"   ? Coupling::kTightlyCoupled
                  : args.kind == "passive" ? Coupling::kPassive
                  : args.kind == "semi"    ? Coupling::kSemiActive
                                           : Coupling::kActive;
  spec.access.parallelism = args.parallel;
  spec.symmetric = args.symmetric;
  spec.name = args.name;
  spec.unit_prefix = args.unit_prefix;
  spec.host = HostBinding{args.controller, args.attach, args.targets};
  if (spec.coupling == Coupling::kTightlyCoupled) {
    spec.expansion = ExpansionRule{args.width, args.alignment, args.line};
  } else {
    if (!args.controller.empty()) spec.config_profile.push_back(RequestProfile{"config", 0, 0});
    if (spec.coupling != Coupling::kPassive && !args.targets.empty()) {
      spec.work_profile = {RequestProfile{"load", 0, 0}, RequestProfile{"store", 0, 0}};
    }
  }
  std::cout << render_fragment(instantiate(spec));
  return kOk;
}

int cmd_export_dot(const std::string& file, const std::string& highlight) {
  ValidPlatform p = load(file);
  if (highlight.empty()) {
    std::cout << export_dot(p);
    return kOk;
  }
  Report report = build_report(p);
  const Finding* f = report.find(highlight);
  if (!f) throw Error(Code::kUnknownComponent, "no finding with id '" + highlight + "'");
  std::cout << export_dot(p, f);
  return kOk;
}

int cmd_report(const std::string& file, const std::string& json_out, std::size_t n) {
  ValidPlatform p = load(file);
  Report report = build_report(p, ReportOptions{n, true, true});
  write_output(json_out, render_json(report));
  std::map<std::string, std::size_t> counts;
  for (const auto& f : report.findings) ++counts[std::string(finding_kind_name(f.kind))];
  std::cerr << report.platform << ":";
  for (const auto& [kind, count] : counts) std::cerr << ' ' << kind << '=' << count;
  std::cerr << '\n';
  return report.has_errors() ? kFindings : kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"itfkit: interference channel and capacity analysis of platform models"};
  app.require_subcommand(1);

  std::string file;
  auto add_file = [&](CLI::App* sub) {
    sub->add_option("file", file, "platform model (.pml)")->required();
  };

  auto* validate = app.add_subcommand("validate", "parse and validate a model");
  add_file(validate);

  std::string from, to;
  auto* paths = app.add_subcommand("paths", "list simple paths between two components");
  add_file(paths);
  paths->add_option("--from", from, "initiator id")->required();
  paths->add_option("--to", to, "target id")->required();

  std::size_t n = 2;
  bool include_same_app = false;
  bool no_quotient = false;
  std::string json_out;
  auto* interfere = app.add_subcommand("interfere", "classify concurrent transaction scenarios");
  add_file(interfere);
  interfere->add_option("--n", n, "largest scenario size")->capture_default_str();
  interfere->add_flag("--include-same-app", include_same_app,
                      "combine transactions of the same application");
  interfere->add_flag("--no-quotient", no_quotient, "list every scenario of a symmetry orbit");
  interfere->add_option("--json", json_out, "write findings as JSON ('-' for stdout)");

  auto* capacity = app.add_subcommand("capacity", "average-demand check against capacities");
  add_file(capacity);
  capacity->add_option("--json", json_out, "write verdicts as JSON ('-' for stdout)");

  TemplateArgs targs;
  auto* tmpl = app.add_subcommand("template", "print an accelerator model fragment");
  tmpl->add_option("--case", targs.kind, "integration case")
      ->required()
      ->check(CLI::IsMember({"tightly", "passive", "semi", "active"}));
  tmpl->add_option("--parallel", targs.parallel, "number of parallel units")
      ->check(CLI::PositiveNumber);
  tmpl->add_flag("--symmetric", targs.symmetric, "declare the units as a symmetry class");
  tmpl->add_option("--name", targs.name, "accelerator name")->required();
  tmpl->add_option("--attach", targs.attach, "host transporter (host core for tightly)")
      ->required();
  tmpl->add_option("--targets", targs.targets, "shared host targets")->delimiter(',');
  tmpl->add_option("--controller", targs.controller, "host initiator issuing configuration");
  tmpl->add_option("--unit-prefix", targs.unit_prefix, "parallel unit name prefix")
      ->capture_default_str();
  tmpl->add_option("--width", targs.width, "access width in bytes (tightly)")->capture_default_str();
  tmpl->add_option("--alignment", targs.alignment, "alignment in bytes (tightly)")
      ->capture_default_str();
  tmpl->add_option("--line", targs.line, "cache line in bytes (tightly)")->capture_default_str();

  std::string highlight;
  auto* dot = app.add_subcommand("export-dot", "Graphviz rendering of the model");
  add_file(dot);
  dot->add_option("--highlight", highlight, "finding id whose components are highlighted");

  auto* report = app.add_subcommand("report", "full JSON report");
  add_file(report);
  report->add_option("--json", json_out, "output file ('-' for stdout)")->required();
  report->add_option("--n", n, "largest scenario size")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kFailure;
  }

  try {
    if (*validate) return cmd_validate(file);
    if (*paths) return cmd_paths(file, from, to);
    if (*interfere) return cmd_interfere(file, n, include_same_app, no_quotient, json_out);
    if (*capacity) return cmd_capacity(file, json_out);
    if (*tmpl) return cmd_template(targs);
    if (*dot) return cmd_export_dot(file, highlight);
    if (*report) return cmd_report(file, json_out, n);
  } catch (const Error& e) {
    if (e.diagnostics().empty()) {
      std::cerr << "error[" << code_name(e.code()) << "]: " << e.what() << '\n';
    } else {
      print_diagnostics(e.diagnostics());
    }
    return kFailure;
  }
  return kFailure;
}
