#ifndef ITFKIT_TESTS_GENERATORS_HPP
#define ITFKIT_TESTS_GENERATORS_HPP

// Random valid platforms for property tests.

#include <algorithm>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "itfkit/platform.hpp"
#include "itfkit/transactions.hpp"

namespace itfkit::testing {

struct GenOptions {
  int max_initiators = 6;
  int max_transactions = 10;
  int max_components = 12;
  bool composites = true;
  bool attributes = true;
  bool symmetries = true;
};

class Generator {
 public:
  explicit Generator(std::uint64_t seed) : rng_(seed) {}

  int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(rng_); }
  template <typename T>
  const T& pick(const std::vector<T>& v) {
    return v[static_cast<std::size_t>(uniform(0, static_cast<int>(v.size()) - 1))];
  }
  std::mt19937_64& rng() { return rng_; }

  Platform platform(const GenOptions& o = {}) {
    const int ni = uniform(1, std::min(o.max_initiators, o.max_components - 1));
    const int ntg = uniform(1, std::min(3, o.max_components - ni));
    const int ntr = uniform(0, o.max_components - ni - ntg);

    struct Node {
      std::string local;
      Role role;
      int group;  // 0 top level, 1 inside G0, 2 inside G0.H0
    };
    std::vector<Node> nodes;
    const bool grouped = o.composites && coin(0.6);
    auto group = [&] { return grouped ? uniform(0, 2) : 0; };
    for (int i = 0; i < ni; ++i) nodes.push_back({"I" + std::to_string(i), Role::kInitiator, group()});
    for (int i = 0; i < ntr; ++i) nodes.push_back({"X" + std::to_string(i), Role::kTransporter, group()});
    for (int i = 0; i < ntg; ++i) nodes.push_back({"T" + std::to_string(i), Role::kTarget, group()});
    // A composite must not end up empty: G0 always holds H0 when H0 is used.
    bool has_inner = std::any_of(nodes.begin(), nodes.end(), [](const Node& n) { return n.group == 2; });
    bool has_outer = has_inner ||
                     std::any_of(nodes.begin(), nodes.end(), [](const Node& n) { return n.group == 1; });

    auto id_of = [](const Node& n) {
      return n.group == 0 ? n.local : n.group == 1 ? "G0." + n.local : "G0.H0." + n.local;
    };

    Platform p;
    p.name = "Gen" + std::to_string(uniform(0, 999));
    Component g0{"G0", Role::kComposite, {}, {}, {}, {}, {}, {}};
    Component h0{"H0", Role::kComposite, {}, {}, {}, {}, {}, {}};
    std::vector<std::string> initiators, transporters, targets;
    for (const auto& n : nodes) {
      Component c;
      c.name = n.local;
      c.role = n.role;
      if (n.role == Role::kTarget) {
        static const std::vector<std::string> services{"config", "load", "store"};
        c.services.insert(pick(services));
        if (coin()) c.services.insert(pick(services));
      }
      if (o.attributes) decorate(c);
      (n.group == 0 ? p.components : n.group == 1 ? g0.children : h0.children).push_back(c);
      (n.role == Role::kInitiator     ? initiators
       : n.role == Role::kTransporter ? transporters
                                      : targets)
          .push_back(id_of(n));
    }
    if (has_inner) g0.children.push_back(h0);
    if (has_outer) p.components.push_back(g0);

    std::set<std::pair<std::string, std::string>> links;
    std::vector<std::string> sinks = transporters;
    sinks.insert(sinks.end(), targets.begin(), targets.end());
    for (const auto& i : initiators) {
      for (int k = uniform(1, 2); k > 0; --k) links.emplace(i, pick(sinks));
    }
    for (const auto& x : transporters) {
      for (int k = uniform(1, 3); k > 0; --k) {
        const auto& to = pick(sinks);
        if (to != x) links.emplace(x, to);
      }
    }
    for (const auto& [from, to] : links) p.links.push_back(Link{from, to, {}});

    if (o.symmetries && initiators.size() >= 2 && coin(0.3)) {
      std::vector<std::string> shuffled = initiators;
      std::shuffle(shuffled.begin(), shuffled.end(), rng_);
      p.symmetries.push_back(SymmetryClass{"S0", {shuffled[0], shuffled[1]}, {}});
    }

    add_transactions(p, initiators, targets, o);
    return p;
  }

 private:
  void decorate(Component& c) {
    if (c.role != Role::kInitiator && coin(0.3)) {
      c.capacity = static_cast<std::uint64_t>(uniform(1, 2000000));
    }
    if (coin(0.2)) {
      static const std::vector<std::string> notes{"", "plain", "has \"quotes\"", "back\\slash",
                                                  "two\nlines", "tab\there"};
      DeviceClassification dc;
      dc.origin = static_cast<Origin>(uniform(0, 3));
      dc.complexity = coin() ? Complexity::kSimple : Complexity::kComplex;
      dc.notes = pick(notes);
      if (dc.complexity == Complexity::kSimple && dc.notes.empty()) dc.notes = "justified";
      c.classification = dc;
    }
    if (coin(0.15)) {
      if (c.role == Role::kTarget) {
        c.accelerator = AcceleratorInfo{Coupling::kPassive, Access{1}};
      } else if (c.role == Role::kInitiator) {
        Coupling coupling = coin() ? Coupling::kActive : Coupling::kSemiActive;
        c.accelerator = AcceleratorInfo{coupling, Access{coin() ? 1 : uniform(2, 4)}};
      }
    }
  }

  void add_transactions(Platform& p, const std::vector<std::string>& initiators,
                        const std::vector<std::string>& targets, const GenOptions& o) {
    FlatPlatform flat = flatten(p);
    std::vector<std::pair<Path, std::string>> candidates;  // path, target
    for (const auto& i : initiators) {
      for (const auto& t : targets) {
        for (auto& path : enumerate_paths(flat, i, t)) candidates.emplace_back(std::move(path), t);
      }
    }
    if (candidates.empty()) return;
    const int nt = uniform(0, o.max_transactions);
    for (int k = 0; k < nt; ++k) {
      const auto& [path, target] = pick(candidates);
      const Atom& sink = flat.at(target);
      std::vector<std::string> services(sink.services.begin(), sink.services.end());
      Transaction t;
      t.name = "t" + std::to_string(k);
      t.path = path;
      t.service = pick(services);
      t.rate = coin(0.85) ? static_cast<std::uint64_t>(uniform(1, 5000)) : 0;
      t.payload = coin(0.85) ? static_cast<std::uint64_t>(uniform(1, 256)) : 0;
      std::string app = "A" + std::to_string(uniform(0, 3));
      auto it = std::find_if(p.applications.begin(), p.applications.end(),
                             [&](const Application& a) { return a.name == app; });
      if (it == p.applications.end()) {
        p.applications.push_back(Application{app, {}, {}});
        it = std::prev(p.applications.end());
      }
      t.app = app;
      it->transactions.push_back(std::move(t));
    }
  }

  std::mt19937_64 rng_;
};

}  // namespace itfkit::testing

#endif  // ITFKIT_TESTS_GENERATORS_HPP
