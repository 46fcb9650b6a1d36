// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on failure.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <string>

#include "itfkit/capacity.hpp"
#include "itfkit/interference.hpp"
#include "itfkit/pml.hpp"
#include "itfkit/report.hpp"
#include "itfkit/templates.hpp"
#include "itfkit/transactions.hpp"
#include "support/fixtures.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace itfkit;
namespace t = itfkit::testing;

namespace {

// Collects the first failed expectation of a criterion.
struct Check {
  std::string failure;
  void expect(bool ok, const std::string& what) {
    if (!ok && failure.empty()) failure = what;
  }
};

int failures = 0;

void run(int number, const char* title, double budget_seconds,
         const std::function<void(Check&)>& body) {
  Check c;
  const auto start = std::chrono::steady_clock::now();
  try {
    body(c);
  } catch (const std::exception& e) {
    c.expect(false, std::string("exception: ") + e.what());
  }
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (budget_seconds > 0 && seconds >= budget_seconds) {
    c.expect(false, "took " + std::to_string(seconds) + " s, budget " +
                        std::to_string(budget_seconds) + " s");
  }
  const bool ok = c.failure.empty();
  failures += !ok;
  std::printf("%s [%d] %s (%.3f s)%s%s\n", ok ? "PASS" : "FAIL", number, title, seconds,
              ok ? "" : ": ", c.failure.c_str());
}

std::size_t initiators(const Platform& p) { return flatten(p).count(Role::kInitiator); }

const Application* find_app(const Platform& p, std::string_view name) {
  for (const auto& a : p.applications) {
    if (a.name == name) return &a;
  }
  return nullptr;
}

void keystone(Check& c) {
  FlatPlatform f = flatten(t::load_model("keystone.pml"));
  std::size_t dsp = 0, a15 = 0;
  for (const auto& a : f.atoms()) {
    if (a.role != Role::kInitiator) continue;
    dsp += a.id.rfind("DSPPack.DSP", 0) == 0;
    a15 += a.id.rfind("ARMPack.A15_", 0) == 0;
  }
  c.expect(f.count(Role::kInitiator) == 6, "expected 6 initiators");
  c.expect(dsp == 4 && a15 == 2, "expected 4 DSP and 2 A15 initiators");
  for (const char* id : {"TeraNet", "MSMC"}) {
    c.expect(f.find(id) && f.find(id)->role == Role::kTransporter, std::string(id) + " transporter");
  }
  for (const char* id : {"DDR", "SRAM"}) {
    c.expect(f.find(id) && f.find(id)->role == Role::kTarget, std::string(id) + " target");
  }
  c.expect(ValidPlatform::check(t::load_model("keystone.pml")).ok(), "transactions validate");
}

void xavier(Check& c) {
  Platform raw = t::load_model("xavier.pml");
  FlatPlatform f = flatten(raw);
  const Atom* sm0 = f.find("GPU.SM0");
  c.expect(sm0 && sm0->accelerator && sm0->accelerator->coupling == Coupling::kActive &&
               sm0->accelerator->access.parallelism == 8,
           "GPU.SM0 is active parallel(8)");
  c.expect(f.symmetries().size() == 1 && f.symmetries()[0].members.size() == 8,
           "one symmetry class of 8");
  for (const auto& sc : f.symmetries()) {
    c.expect(validate_symmetry(f, sc).empty(), "symmetry class validates");
    for (const auto& m : sc.members) {
      c.expect(f.find(m) && f.find(m)->role == Role::kInitiator, m + " is an initiator");
    }
  }
  // Keep only the per-SM DRAM workloads.
  std::vector<Application> gpu;
  for (const auto& a : raw.applications) {
    if (a.name.rfind("gpu", 0) == 0) gpu.push_back(a);
  }
  raw.applications = gpu;
  ValidPlatform p = ValidPlatform::from(raw);
  c.expect(p.transactions().size() == 8, "one transaction per SM");
  auto pairs = scenarios(p, 2);
  c.expect(pairs.size() == 28, "28 pair scenarios, got " + std::to_string(pairs.size()));
  auto orbits = quotient(p, pairs);
  c.expect(orbits.size() == 1 && orbits[0].size() == 28, "one orbit of size 28");
  auto brute = t::brute_orbits(p, pairs, std::vector<SymmetryClass>(f.symmetries().begin(), f.symmetries().end()));
  c.expect(brute.size() == 1 && brute[0].size() == 28, "brute-force orbit enumeration agrees");
}

void nvdla(Check& c) {
  ValidPlatform passive = t::load_valid("nvdla_passive.pml");
  for (const auto& tx : passive.transactions()) {
    const Atom& head = passive.flat().at(tx.initiator());
    c.expect(!head.accelerator, "passive model has an accelerator-initiated transaction");
  }
  Report r = build_report(passive);
  std::size_t abstraction = 0;
  for (const auto& f : r.findings) abstraction += f.kind == FindingKind::kAbstractionWarning;
  c.expect(abstraction == 1, "exactly one W_ABSTRACTION finding");

  ValidPlatform small = t::load_valid("nvdla_small.pml");
  std::size_t acc_initiators = 0;
  for (const auto& a : small.flat().atoms()) {
    acc_initiators += a.role == Role::kInitiator && a.accelerator.has_value();
  }
  c.expect(acc_initiators == 1, "small model has one accelerator initiator");

  ValidPlatform large = t::load_valid("nvdla_large.pml");
  std::size_t blocks = 0;
  for (const auto& a : large.flat().atoms()) {
    blocks += a.role == Role::kInitiator && a.accelerator && !a.accelerator->access.unitary();
  }
  c.expect(blocks == 3, "large model has 3 functional-block initiators");
  ChannelMap cm = channels(large, 2);
  c.expect(cm.count("NVDLA.DBBIF") && cm["NVDLA.DBBIF"].size() == 3, "3 pair channels on DBBIF");
  auto brute = t::brute_channels(large, 2);
  c.expect(brute["NVDLA.DBBIF"].size() == 3, "brute force finds 3 pairs on DBBIF");
}

void oracle(Check& c) {
  t::Generator gen(2024);
  t::GenOptions o;
  o.max_initiators = 6;
  o.max_transactions = 10;
  o.max_components = 12;
  for (int i = 0; i < 200 && c.failure.empty(); ++i) {
    ValidPlatform p = ValidPlatform::from(gen.platform(o));
    for (bool same : {true, false}) {
      const std::size_t n_max = std::max<std::size_t>(2, p.flat().count(Role::kInitiator));
      ScenarioOptions so{same};
      c.expect(t::as_brute(channels(p, n_max, so)) == t::brute_channels(p, n_max, same),
               "channels disagree on platform " + std::to_string(i));
      for (const auto& m : t::brute_scenarios(p, 2, n_max, same)) {
        c.expect(classify(p, Scenario{m}).kind == t::brute_classify(p, m),
                 "classify disagrees on platform " + std::to_string(i));
      }
    }
  }
}

void closure(Check& c) {
  t::Generator gen(500);
  std::size_t checked = 0;
  while (checked < 500) {
    ValidPlatform p = ValidPlatform::from(gen.platform());
    for (std::size_t n = 2; n <= 4 && checked < 500; ++n) {
      for (const auto& s : scenarios(p, n)) {
        if (checked++ == 500) break;
        const Kind k = classify(p, s).kind;
        c.expect(k == t::brute_classify(p, s.members), "partition disagrees with definition");
        c.expect(n > 2 || k != Kind::kPartial, "pair classified partial");
        if (k == Kind::kPartial) continue;
        for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
          Scenario sub;
          for (std::size_t b = 0; b < n; ++b) {
            if (mask >> b & 1) sub.members.push_back(s.members[b]);
          }
          if (sub.members.size() >= 2) {
            c.expect(classify(p, sub).kind == k, std::string(kind_name(k)) + " not downward closed");
          }
        }
      }
    }
  }
}

const Demand& demand(const CapacityReport& r, std::string_view id) {
  for (const auto& e : r.entries) {
    if (e.demand.component == id) return e.demand;
  }
  throw std::runtime_error("no entry for " + std::string(id));
}

void capacity(Check& c) {
  CapacityReport bus = check_capacity(ValidPlatform::from(t::parse_ok(R"(
platform P {
  initiator C0; initiator C1;
  transporter BUS { capacity 100000 Bps; };
  target DDR { service load; };
  link C0 -> BUS; link C1 -> BUS; link BUS -> DDR;
  application a { transaction t: C0 -> BUS -> DDR uses load rate 1000/s size 64 B; }
  application b { transaction t: C1 -> BUS -> DDR uses load rate 500/s size 128 B; }
}
)")));
  c.expect(demand(bus, "BUS").bytes_per_second == 128000, "BUS demand 128000");
  CapacityReport keystone = check_capacity(t::load_valid("keystone.pml"));
  c.expect(demand(keystone, "MSMC").bytes_per_second == 1536000000, "keystone MSMC demand");
  c.expect(demand(keystone, "TeraNet").bytes_per_second == 1024000000, "keystone TeraNet demand");
  CapacityReport large = check_capacity(t::load_valid("nvdla_large.pml"));
  c.expect(demand(large, "SystemBus").bytes_per_second == 5120000000, "nvdla_large SystemBus demand");
  c.expect(demand(large, "NVDLA.DBBIF").bytes_per_second == 3840000000, "nvdla_large DBBIF demand");
  for (const CapacityReport* r : {&bus, &keystone, &large}) {
    for (const auto& e : r->entries) {
      if (!e.capacity || !e.demand.unspecified.empty()) continue;
      c.expect((e.verdict == Verdict::kOver) == (e.demand.bytes_per_second > *e.capacity),
               "verdict over iff demand > capacity at " + e.demand.component);
    }
  }
  c.expect(bus.entries[0].verdict == Verdict::kOver, "BUS is over capacity");
}

void round_trip(Check& c) {
  auto fixed_point = [&](const Platform& p, const std::string& what) {
    const std::string once = render(p);
    auto again = parse(once);
    c.expect(again.ok(), what + " re-parses");
    if (!again.ok()) return;
    c.expect(render(again.value()) == once, what + " renders byte-identically");
    c.expect(structurally_equal(again.value(), p), what + " is structurally equal");
  };
  for (const char* m : {"keystone.pml", "xavier_cpu.pml", "xavier.pml", "nvdla_passive.pml",
                        "nvdla_small.pml", "nvdla_large.pml", "zynq.pml"}) {
    fixed_point(t::load_model(m), m);
  }
  t::Generator gen(77);
  for (int i = 0; i < 500; ++i) fixed_point(gen.platform(), "generated " + std::to_string(i));
}

constexpr std::string_view kHost = R"(
platform Host {
  initiator C0;
  transporter BUS;
  target DDR { service load, store; };
  link C0 -> BUS;
  link BUS -> DDR;
  application host { transaction t: C0 -> BUS -> DDR uses load rate 1000/s size 128 B; }
}
)";

void templates(Check& c) {
  const Platform host = t::parse_ok(kHost);

  TemplateSpec tight;
  tight.coupling = Coupling::kTightlyCoupled;
  tight.name = "VPU";
  tight.host.attach = "C0";
  tight.expansion = ExpansionRule{8, 8, 64};
  c.expect(initiators(merge(host, instantiate(tight))) == initiators(host),
           "tightly coupled preserves initiator count");

  TemplateSpec passive;
  passive.coupling = Coupling::kPassive;
  passive.name = "NVDLA";
  passive.host = {"C0", "BUS", {}};
  passive.config_profile = {{"config", 100, 64}};
  ValidPlatform pv = ValidPlatform::from(merge(host, instantiate(passive), {{"controller", "host"}}));
  for (const auto& tx : pv.transactions()) c.expect(tx.initiator() != "NVDLA", "passive heads a path");
  for (const auto& link : pv.flat().links()) c.expect(link.from != "NVDLA", "passive has an outgoing link");

  TemplateSpec semi;
  semi.coupling = Coupling::kSemiActive;
  semi.name = "DMA";
  semi.host = {"C0", "BUS", {"DDR"}};
  semi.config_profile = {{"config", 1000, 64}, {"start", 10, 4}};
  semi.work_profile = {{"load", 5000, 256}};
  Platform sm = merge(host, instantiate(semi), {{"controller", "host"}, {"accelerator", "dma"}});
  c.expect(find_app(sm, "host")->transactions.size() ==
               find_app(host, "host")->transactions.size() + semi.config_profile.size(),
           "semi-active grows controller transactions by the config profile");

  for (int k : {1, 2, 5, 8}) {
    TemplateSpec par;
    par.coupling = Coupling::kActive;
    par.access.parallelism = k;
    par.symmetric = k > 1;
    par.name = "ACC";
    par.host = {"C0", "BUS", {"DDR"}};
    par.work_profile = {{"load", 10, 64}};
    AppBindings b;
    if (k == 1) b["accelerator"] = "acc";
    for (int i = 0; k > 1 && i < k; ++i) b["U" + std::to_string(i)] = "u" + std::to_string(i);
    Platform merged = merge(host, instantiate(par), b);
    c.expect(initiators(merged) == initiators(host) + static_cast<std::size_t>(k),
             "parallel(" + std::to_string(k) + ") adds k initiators");
    FlatPlatform f = flatten(merged);
    for (const auto& sc : f.symmetries()) c.expect(validate_symmetry(f, sc).empty(), "unit class validates");
  }
}

void expansion(Check& c) {
  std::mt19937_64 rng(9);
  for (int i = 0; i < 1000; ++i) {
    std::uint64_t line = std::uniform_int_distribution<std::uint64_t>(1, 512)(rng);
    std::uint64_t alignment = std::uniform_int_distribution<std::uint64_t>(1, 1024)(rng);
    std::uint64_t payload = std::uniform_int_distribution<std::uint64_t>(1, 4096)(rng);
    Transaction tx{"t", {"C0", "BUS", "DDR"}, "load", 1, payload, "a", {}};
    auto parts = expand_access(tx, ExpansionRule{8, alignment, line});
    c.expect(parts.size() == t::brute_expansion_count(payload, alignment, line),
             "count mismatch for payload " + std::to_string(payload) + ", alignment " +
                 std::to_string(alignment) + ", line " + std::to_string(line));
  }
}

}  // namespace

int main() {
  run(1, "keystone model fidelity", 1.0, keystone);
  run(2, "xavier GPU symmetry and orbit", 1.0, xavier);
  run(3, "NVDLA passive, small and large", 1.0, nvdla);
  run(4, "channels and classify match brute force on 200 platforms", 30.0, oracle);
  run(5, "downward closure and partition on 500 scenarios", 0, closure);
  run(6, "capacity demand sums and verdicts", 0, capacity);
  run(7, "render/parse fixed point", 0, round_trip);
  run(8, "template contracts", 0, templates);
  run(9, "access expansion matches brute force on 1000 triples", 0, expansion);
  return failures == 0 ? 0 : 1;
}
