#include "itfkit/interference.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <tuple>

namespace itfkit {

std::string_view kind_name(Kind kind) {
  switch (kind) {
    case Kind::kItf: return "itf";
    case Kind::kFree: return "free";
    case Kind::kPartial: return "partial";
  }
  return "?";
}

std::vector<std::string> scenario_keys(const ValidPlatform& p, const Scenario& s) {
  std::vector<std::string> keys;
  keys.reserve(s.members.size());
  for (auto i : s.members) keys.push_back(p.transactions()[i].key());
  return keys;
}

namespace {

void require_n(std::size_t n) {
  if (n < 2) throw Error(Code::kBadN, "scenario size must be at least 2, got " + std::to_string(n));
}

struct Enumerator {
  std::span<const Transaction> txns;
  std::size_t n;
  bool exclude_same_app;
  std::vector<std::size_t> current;
  std::vector<Scenario> out;

  bool compatible(std::size_t candidate) const {
    const Transaction& t = txns[candidate];
    for (auto i : current) {
      if (txns[i].initiator() == t.initiator()) return false;
      if (exclude_same_app && txns[i].app == t.app) return false;
    }
    return true;
  }

  void run(std::size_t start) {
    if (current.size() == n) {
      out.push_back(Scenario{current});
      return;
    }
    for (std::size_t i = start; i + (n - current.size()) <= txns.size(); ++i) {
      if (!compatible(i)) continue;
      current.push_back(i);
      run(i + 1);
      current.pop_back();
    }
  }
};

std::vector<ComponentId> sorted_path(const Transaction& t) {
  std::vector<ComponentId> v = t.path;
  std::sort(v.begin(), v.end());
  return v;
}

std::vector<ComponentId> intersect(const std::vector<ComponentId>& a,
                                   const std::vector<ComponentId>& b) {
  std::vector<ComponentId> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

bool disjoint(const std::vector<ComponentId>& a, const std::vector<ComponentId>& b) {
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i == *j) return false;
    if (*i < *j) ++i; else ++j;
  }
  return true;
}

}  // namespace

std::vector<Scenario> scenarios(const ValidPlatform& p, std::size_t n,
                                const ScenarioOptions& options) {
  require_n(n);
  Enumerator e{p.transactions(), n, options.exclude_same_app, {}, {}};
  e.current.reserve(n);
  e.run(0);
  return std::move(e.out);
}

Classification classify(const ValidPlatform& p, const Scenario& s) {
  std::vector<std::vector<ComponentId>> sets;
  sets.reserve(s.members.size());
  for (auto i : s.members) sets.push_back(sorted_path(p.transactions()[i]));

  Classification c;
  if (sets.empty()) return c;
  std::vector<ComponentId> common = sets.front();
  for (std::size_t i = 1; i < sets.size() && !common.empty(); ++i) {
    common = intersect(common, sets[i]);
  }
  if (!common.empty()) {
    c.kind = Kind::kItf;
    c.channel = std::move(common);
    return c;
  }
  for (std::size_t i = 0; i < sets.size(); ++i) {
    for (std::size_t j = i + 1; j < sets.size(); ++j) {
      if (!disjoint(sets[i], sets[j])) {
        c.kind = Kind::kPartial;
        return c;
      }
    }
  }
  c.kind = Kind::kFree;
  return c;
}

ChannelMap channels(const ValidPlatform& p, std::size_t n_max, const ScenarioOptions& options) {
  require_n(n_max);
  ChannelMap out;
  for (std::size_t n = 2; n <= n_max; ++n) {
    auto scs = scenarios(p, n, options);
    if (scs.empty()) break;
    for (auto& s : scs) {
      auto c = classify(p, s);
      if (c.kind != Kind::kItf) continue;
      for (const auto& component : c.channel) out[component].push_back(s);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Symmetry

std::vector<Diagnostic> validate_symmetry(const FlatPlatform& p, const SymmetryClass& sc) {
  auto fail = [&](std::string witness) {
    return std::vector<Diagnostic>{make_error(
        Code::kNotSymmetric, "symmetry class '" + sc.name + "': " + witness, sc.span)};
  };
  for (const auto& m : sc.members) {
    if (!p.find(m)) {
      return {make_error(Code::kUnknownComponent,
                         "symmetry class '" + sc.name + "': unknown member '" + m + "'",
                         sc.span)};
    }
  }
  for (std::size_t i = 0; i < sc.members.size(); ++i) {
    for (std::size_t j = i + 1; j < sc.members.size(); ++j) {
      const Atom& a = p.at(sc.members[i]);
      const Atom& b = p.at(sc.members[j]);
      auto differs = [&](std::string_view attribute) {
        return fail(std::string(attribute) + " of '" + a.id + "' and '" + b.id + "' differ");
      };
      if (a.role != b.role) return differs("role");
      if (a.services != b.services) return differs("services");
      if (a.capacity != b.capacity) return differs("capacity");
      if (a.classification != b.classification) return differs("classification");
      if (a.accelerator != b.accelerator) return differs("accelerator");

      auto swap = [&](const ComponentId& c) -> const ComponentId& {
        if (c == a.id) return b.id;
        if (c == b.id) return a.id;
        return c;
      };
      for (const auto& link : p.links()) {
        const ComponentId& from = swap(link.from);
        const ComponentId& to = swap(link.to);
        if (!p.has_link(from, to)) {
          return fail("link " + link.from + " -> " + link.to + " has no image " + from +
                      " -> " + to + " when swapping '" + a.id + "' and '" + b.id + "'");
        }
      }
    }
  }
  return {};
}

SymmetryGroup SymmetryGroup::from_platform(const FlatPlatform& p) {
  std::vector<Diagnostic> failures;
  for (const auto& sc : p.symmetries()) {
    auto d = validate_symmetry(p, sc);
    failures.insert(failures.end(), d.begin(), d.end());
  }
  if (!failures.empty()) {
    throw Error(Code::kUnvalidatedSymmetry, "declared symmetry classes do not validate",
                std::move(failures));
  }
  auto classes = std::vector<SymmetryClass>(p.symmetries().begin(), p.symmetries().end());
  return SymmetryGroup(std::move(classes));
}

namespace {

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

 private:
  std::vector<std::size_t> parent_;
};

using Signature = std::tuple<std::vector<ComponentId>, std::string, std::uint64_t, std::uint64_t>;

Signature signature_of(const Transaction& t, std::vector<ComponentId> path) {
  return {std::move(path), t.service, t.rate, t.payload};
}

}  // namespace

std::vector<Orbit> quotient(const ValidPlatform& p, std::span<const Scenario> scs,
                            const SymmetryGroup& group) {
  const auto txns = p.transactions();
  std::map<Scenario, std::size_t> position;
  for (std::size_t i = 0; i < scs.size(); ++i) position.emplace(scs[i], i);

  std::map<Signature, std::vector<std::size_t>> by_signature;
  for (std::size_t i = 0; i < txns.size(); ++i) {
    by_signature[signature_of(txns[i], txns[i].path)].push_back(i);
  }

  // Image of transaction i under the swap (a b), or nullopt if no
  // transaction follows the swapped path.
  auto image = [&](std::size_t i, const ComponentId& a,
                   const ComponentId& b) -> std::optional<std::size_t> {
    const Transaction& t = txns[i];
    std::vector<ComponentId> path = t.path;
    bool moved = false;
    for (auto& c : path) {
      if (c == a) { c = b; moved = true; }
      else if (c == b) { c = a; moved = true; }
    }
    if (!moved) return i;
    auto it = by_signature.find(signature_of(t, std::move(path)));
    if (it == by_signature.end()) return std::nullopt;
    for (auto j : it->second) {
      if (txns[j].app == t.app) return j;
    }
    return it->second.front();
  };

  UnionFind uf(scs.size());
  for (const auto& sc : group.classes()) {
    for (std::size_t x = 0; x < sc.members.size(); ++x) {
      for (std::size_t y = x + 1; y < sc.members.size(); ++y) {
        for (std::size_t k = 0; k < scs.size(); ++k) {
          Scenario mapped;
          bool complete = true;
          for (auto i : scs[k].members) {
            auto j = image(i, sc.members[x], sc.members[y]);
            if (!j) { complete = false; break; }
            mapped.members.push_back(*j);
          }
          if (!complete) continue;
          std::sort(mapped.members.begin(), mapped.members.end());
          auto it = position.find(mapped);
          if (it != position.end()) uf.unite(k, it->second);
        }
      }
    }
  }

  std::map<std::size_t, Orbit> by_root;
  for (std::size_t k = 0; k < scs.size(); ++k) by_root[uf.find(k)].members.push_back(scs[k]);
  std::vector<Orbit> orbits;
  orbits.reserve(by_root.size());
  for (auto& [root, orbit] : by_root) {
    std::sort(orbit.members.begin(), orbit.members.end());
    orbit.representative = orbit.members.front();
    orbits.push_back(std::move(orbit));
  }
  std::sort(orbits.begin(), orbits.end(), [](const Orbit& a, const Orbit& b) {
    return a.representative < b.representative;
  });
  return orbits;
}

std::vector<Orbit> quotient(const ValidPlatform& p, std::span<const Scenario> scs) {
  return quotient(p, scs, SymmetryGroup::from_platform(p.flat()));
}

}  // namespace itfkit
