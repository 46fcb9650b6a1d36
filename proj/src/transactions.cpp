#include "itfkit/transactions.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace itfkit {

namespace {

void require_role(const Atom& atom, Role role, std::string_view what) {
  if (atom.role != role) {
    throw Error(Code::kRole, std::string(what) + " '" + atom.id + "' is a " +
                                 std::string(role_name(atom.role)) + ", expected " +
                                 std::string(role_name(role)));
  }
}

// Depth-first walk through transporters. Successors are visited in sorted
// order and no path is a prefix of another (all end at the sink), so paths
// come out lexicographically ordered.
void walk(const FlatPlatform& p, const ComponentId& node, std::string_view target,
          Path& current, std::set<ComponentId>& on_path, std::vector<Path>& out) {
  for (const auto& next : p.successors(node)) {
    if (on_path.count(next)) continue;
    const Atom& atom = p.at(next);
    if (next == target) {
      current.push_back(next);
      out.push_back(current);
      current.pop_back();
    } else if (atom.role == Role::kTransporter) {
      current.push_back(next);
      on_path.insert(next);
      walk(p, next, target, current, on_path, out);
      on_path.erase(next);
      current.pop_back();
    }
  }
}

}  // namespace

std::vector<Path> enumerate_paths(const FlatPlatform& p, std::string_view from,
                                  std::string_view to) {
  const Atom& source = p.at(from);
  const Atom& sink = p.at(to);
  require_role(source, Role::kInitiator, "path source");
  require_role(sink, Role::kTarget, "path sink");

  std::vector<Path> out;
  Path current{source.id};
  std::set<ComponentId> on_path{source.id};
  walk(p, source.id, sink.id, current, on_path, out);
  return out;
}

std::vector<Diagnostic> check_transaction_path(const FlatPlatform& p, const Transaction& t) {
  auto fail = [&](Code code, std::string message) {
    return std::vector<Diagnostic>{
        make_error(code, "transaction '" + t.key() + "': " + message, t.span)};
  };
  if (t.path.empty()) return fail(Code::kBadPath, "empty path");
  if (t.path.size() < 2) return fail(Code::kRole, "path needs an initiator and a target");

  std::set<ComponentId> seen;
  for (std::size_t i = 0; i < t.path.size(); ++i) {
    const ComponentId& hop = t.path[i];
    const Atom* atom = p.find(hop);
    if (!atom) return fail(Code::kUnknownComponent, "unknown component '" + hop + "'");
    if (!seen.insert(hop).second) {
      return fail(Code::kBadPath, "path revisits '" + hop + "'");
    }
    if (i > 0 && !p.has_link(t.path[i - 1], hop)) {
      return fail(Code::kBadPath, "no link for hop " + t.path[i - 1] + " -> " + hop);
    }
    Role expected = i == 0                     ? Role::kInitiator
                    : i + 1 == t.path.size()   ? Role::kTarget
                                               : Role::kTransporter;
    if (atom->role != expected) {
      return fail(Code::kRole, "'" + hop + "' is a " + std::string(role_name(atom->role)) +
                                   ", expected " + std::string(role_name(expected)));
    }
  }
  const Atom& target = p.at(t.path.back());
  if (!target.services.count(t.service)) {
    return fail(Code::kNoService,
                "target '" + target.id + "' does not expose service '" + t.service + "'");
  }
  return {};
}

Result<std::vector<Transaction>> resolve_transactions(const FlatPlatform& p) {
  std::vector<Diagnostic> diagnostics;
  std::vector<Transaction> out;
  for (const auto& app : p.applications()) {
    for (Transaction t : app.transactions) {
      t.app = app.name;
      auto errors = check_transaction_path(p, t);
      if (!errors.empty()) {
        diagnostics.insert(diagnostics.end(), errors.begin(), errors.end());
        continue;
      }
      auto routes = enumerate_paths(p, t.initiator(), t.target());
      if (routes.size() > 1) {
        diagnostics.push_back(make_warning(
            Code::kUndeclaredRoute,
            "transaction '" + t.key() + "': " + std::to_string(routes.size() - 1) +
                " other route(s) from " + t.initiator() + " to " + t.target() +
                " are not declared",
            t.span));
      }
      out.push_back(std::move(t));
    }
  }
  if (has_errors(diagnostics)) {
    return Result<std::vector<Transaction>>::failure(std::move(diagnostics));
  }
  return Result<std::vector<Transaction>>::success(std::move(out), std::move(diagnostics));
}

namespace {

void check_rule(const ExpansionRule& rule) {
  if (rule.width == 0 || rule.alignment == 0 || rule.line == 0) {
    throw Error(Code::kBadRule, "expansion rule fields must be positive");
  }
}

}  // namespace

std::uint64_t worst_offset(const ExpansionRule& rule) {
  check_rule(rule);
  return rule.line - std::gcd(rule.alignment, rule.line);
}

std::uint64_t expansion_count(std::uint64_t payload, const ExpansionRule& rule) {
  std::uint64_t offset = worst_offset(rule);
  if (payload == 0) throw Error(Code::kBadRule, "payload must be positive");
  std::uint64_t span = payload + offset;
  if (span < payload) throw Error(Code::kOverflow, "payload too large to expand");
  return span / rule.line + (span % rule.line != 0 ? 1 : 0);
}

std::vector<Transaction> expand_access(const Transaction& t, const ExpansionRule& rule) {
  const std::uint64_t count = expansion_count(t.payload, rule);
  const std::uint64_t offset = worst_offset(rule);

  std::vector<Transaction> out;
  out.reserve(count);
  std::uint64_t remaining = t.payload;
  std::uint64_t room = rule.line - offset;  // bytes left in the first window
  for (std::uint64_t i = 0; i < count; ++i) {
    Transaction sub = t;
    sub.name = t.name + "_" + std::to_string(i);
    sub.payload = std::min(remaining, room);
    remaining -= sub.payload;
    room = rule.line;
    out.push_back(std::move(sub));
  }
  return out;
}

}  // namespace itfkit
