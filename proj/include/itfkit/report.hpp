#ifndef ITFKIT_REPORT_HPP
#define ITFKIT_REPORT_HPP

#include <cstddef>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "itfkit/platform.hpp"

namespace itfkit {

inline constexpr const char* kReportSchema = "itfkit/1";

enum class FindingKind {
  kItfChannel,
  kFreePair,
  kPartial,
  kCapacity,
  kAbstractionWarning,
  kUnitaryViolation,
  kClassificationNote,
};
std::string_view finding_kind_name(FindingKind kind);

// Closed tag vocabulary relating findings to certification planning
// objectives.
enum class AmcTag { kResourceId, kChannelId, kCapacity, kSoftwareId, kUsageDomain, kMicrocode };
std::string_view amc_tag_name(AmcTag tag);

enum class FindingSeverity { kInfo, kWarning, kError };
std::string_view finding_severity_name(FindingSeverity severity);

struct Finding {
  std::string id;  // content hash, stable across regenerations
  FindingKind kind = FindingKind::kItfChannel;
  FindingSeverity severity = FindingSeverity::kInfo;
  std::string subject;                  // component id or scenario "a.t1 | b.t2"
  std::vector<ComponentId> components;  // channel or subject components
  std::vector<AmcTag> amc_tags;         // non-empty
  nlohmann::json details;
};

struct ReportOptions {
  std::size_t n_max = 2;
  bool exclude_same_app = true;
  bool quotient = true;
};

struct Report {
  std::string platform;
  ReportOptions options;
  std::vector<Finding> findings;
  std::vector<std::string> assumptions;

  bool has_errors() const;
  const Finding* find(std::string_view id) const;
};

Report build_report(const ValidPlatform& p, const ReportOptions& options = {});

// Pretty-printed, keys sorted, byte-identical for identical inputs.
nlohmann::json to_json(const Report& report);
std::string render_json(const Report& report);

// Graphviz digraph. Initiators are boxes, targets ellipses, transporters
// hexagons; composites become clusters. Components of `highlight` are drawn
// red and bold.
std::string export_dot(const ValidPlatform& p, const Finding* highlight = nullptr);

}  // namespace itfkit

#endif  // ITFKIT_REPORT_HPP
