#include <gtest/gtest.h>

#include <algorithm>

#include "itfkit/platform.hpp"
#include "support/fixtures.hpp"
#include "support/generators.hpp"

namespace itfkit {
namespace {

using testing::kChain;
using testing::load_model;
using testing::parse_ok;

std::vector<Code> codes(const std::vector<Diagnostic>& diagnostics) {
  std::vector<Code> out;
  for (const auto& d : diagnostics) out.push_back(d.code);
  return out;
}

bool has_code(const std::vector<Diagnostic>& diagnostics, Code code) {
  return std::any_of(diagnostics.begin(), diagnostics.end(),
                     [&](const Diagnostic& d) { return d.code == code; });
}

Component make(std::string name, Role role, std::set<std::string> services = {}) {
  Component c;
  c.name = std::move(name);
  c.role = role;
  c.services = std::move(services);
  return c;
}

Platform chain() { return parse_ok(kChain); }

TEST(ValidatePlatform, KeystoneIsValid) {
  EXPECT_TRUE(validate_platform(load_model("keystone.pml")).empty());
}

TEST(ValidatePlatform, NoTarget) {
  Platform p;
  p.name = "P";
  p.components.push_back(make("C0", Role::kInitiator));
  EXPECT_EQ(codes(validate_platform(p)), std::vector<Code>{Code::kNoTarget});
}

TEST(ValidatePlatform, NoInitiator) {
  Platform p;
  p.name = "P";
  p.components.push_back(make("M", Role::kTarget, {"load"}));
  EXPECT_EQ(codes(validate_platform(p)), std::vector<Code>{Code::kNoInitiator});
}

TEST(ValidatePlatform, SelfLinkReportedAtComponent) {
  Platform p = chain();
  p.links.push_back(Link{"BUS", "BUS", SourceSpan{"x.pml", 7, 3}});
  auto d = validate_platform(p);
  ASSERT_EQ(codes(d), std::vector<Code>{Code::kSelfLink});
  EXPECT_NE(d[0].message.find("BUS"), std::string::npos);
  EXPECT_EQ(d[0].span.line, 7);
}

TEST(ValidatePlatform, StructuralErrors) {
  Platform p = chain();
  p.links.push_back(Link{"C0", "BUS", {}});
  EXPECT_TRUE(has_code(validate_platform(p), Code::kDupLink));

  p = chain();
  p.links.push_back(Link{"C0", "NOPE", {}});
  EXPECT_TRUE(has_code(validate_platform(p), Code::kUnknownComponent));

  p = chain();
  p.components.push_back(make("BUS", Role::kTransporter));
  EXPECT_TRUE(has_code(validate_platform(p), Code::kDupId));

  p = chain();
  p.components.push_back(make("M2", Role::kTarget));
  EXPECT_TRUE(has_code(validate_platform(p), Code::kTargetNoService));

  p = chain();
  p.components.push_back(make("9bad", Role::kTransporter));
  EXPECT_TRUE(has_code(validate_platform(p), Code::kBadId));

  p = chain();
  p.components.push_back(make("G", Role::kComposite));
  EXPECT_TRUE(has_code(validate_platform(p), Code::kEmptyComposite));

  p = chain();
  p.components[0].capacity = 10;  // C0 is the initiator
  EXPECT_TRUE(has_code(validate_platform(p), Code::kBadAttr));
}

TEST(ValidatePlatform, LinkToCompositeIsRejected) {
  Platform p = chain();
  Component g = make("G", Role::kComposite);
  g.children.push_back(make("X", Role::kTransporter));
  p.components.push_back(g);
  p.links.push_back(Link{"BUS", "G", {}});
  EXPECT_TRUE(has_code(validate_platform(p), Code::kLinkComposite));
}

TEST(ValidatePlatform, SimpleClassificationNeedsJustification) {
  Platform p = chain();
  p.components[1].classification = DeviceClassification{Origin::kCotsDevice, Complexity::kSimple, "  "};
  EXPECT_TRUE(has_code(validate_platform(p), Code::kClassJustification));
  p.components[1].classification->notes = "no shared state, fixed-latency";
  EXPECT_TRUE(validate_platform(p).empty());
  p.components[1].classification = DeviceClassification{Origin::kCustom, Complexity::kComplex, ""};
  EXPECT_TRUE(validate_platform(p).empty());
}

TEST(ValidatePlatform, AcceleratorRoleRules) {
  Platform p = chain();
  auto& ddr = p.components[1].name == "DDR" ? p.components[1] : p.components[2];
  ddr.accelerator = AcceleratorInfo{Coupling::kActive, Access{1}};
  EXPECT_TRUE(has_code(validate_platform(p), Code::kBadAttr));
  ddr.accelerator = AcceleratorInfo{Coupling::kPassive, Access{1}};
  EXPECT_TRUE(validate_platform(p).empty());
  ddr.accelerator = AcceleratorInfo{Coupling::kPassive, Access{2}};
  EXPECT_TRUE(has_code(validate_platform(p), Code::kBadAttr));
}

TEST(ValidatePlatform, SymmetryDeclarationRules) {
  Platform p = chain();
  p.symmetries.push_back(SymmetryClass{"S", {"C0"}, {}});
  EXPECT_TRUE(has_code(validate_platform(p), Code::kSymmetry));
  p.symmetries[0].members = {"C0", "BUS"};
  EXPECT_TRUE(has_code(validate_platform(p), Code::kSymmetry));
  p.symmetries[0].members = {"C0", "GHOST"};
  EXPECT_TRUE(has_code(validate_platform(p), Code::kUnknownComponent));
}

TEST(ValidatePlatform, ValidImpliesResolvedLinksAndServedTargets) {
  testing::Generator gen(11);
  for (int i = 0; i < 100; ++i) {
    Platform p = gen.platform();
    ASSERT_TRUE(validate_platform(p).empty());
    FlatPlatform f = flatten(p);
    for (const auto& link : f.links()) {
      ASSERT_NE(f.find(link.from), nullptr);
      ASSERT_NE(f.find(link.to), nullptr);
    }
    for (const auto& a : f.atoms()) {
      if (a.role == Role::kTarget) ASSERT_FALSE(a.services.empty());
    }
  }
}

TEST(Flatten, QualifiesCompositeChildren) {
  FlatPlatform f = flatten(load_model("keystone.pml"));
  EXPECT_NE(f.find("ARMPack.A15_0"), nullptr);
  EXPECT_NE(f.find("ARMPack.A15_1"), nullptr);
  EXPECT_EQ(f.find("A15_0"), nullptr);
  EXPECT_EQ(f.find("ARMPack"), nullptr);
}

TEST(Flatten, KeystoneRoleCounts) {
  FlatPlatform f = flatten(load_model("keystone.pml"));
  EXPECT_EQ(f.count(Role::kInitiator), 6u);
  EXPECT_GE(f.count(Role::kTarget), 3u);
  EXPECT_GE(f.count(Role::kTransporter), 2u);
}

TEST(Flatten, NoCompositesIsIdentity) {
  Platform p = chain();
  FlatPlatform f = flatten(p);
  ASSERT_EQ(f.atoms().size(), p.components.size());
  for (const auto& c : p.components) {
    const Atom* a = f.find(c.name);
    ASSERT_NE(a, nullptr);
    EXPECT_EQ(a->role, c.role);
    EXPECT_EQ(a->services, c.services);
  }
  EXPECT_EQ(f.links().size(), p.links.size());
}

TEST(Flatten, RejectsInvalidPlatform) {
  Platform p = chain();
  p.links.push_back(Link{"BUS", "BUS", {}});
  try {
    flatten(p);
    FAIL() << "expected E_NOT_VALIDATED";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Code::kNotValidated);
    EXPECT_EQ(e.diagnostics().front().code, Code::kSelfLink);
  }
}

std::size_t count_atoms(const std::vector<Component>& cs) {
  std::size_t n = 0;
  for (const auto& c : cs) n += c.role == Role::kComposite ? count_atoms(c.children) : 1;
  return n;
}

TEST(Flatten, PreservesCountsAndIsIdempotent) {
  testing::Generator gen(3);
  for (int i = 0; i < 200; ++i) {
    Platform p = gen.platform();
    FlatPlatform f = flatten(p);
    ASSERT_EQ(f.atoms().size(), count_atoms(p.components));
    ASSERT_EQ(f.links().size(), p.links.size());
    ASSERT_TRUE(flatten(f) == f);
  }
}

TEST(Successors, ChainAndSink) {
  FlatPlatform f = flatten(chain());
  EXPECT_EQ(successors(f, "C0"), std::vector<ComponentId>{"BUS"});
  EXPECT_TRUE(successors(f, "DDR").empty());
  EXPECT_THROW(successors(f, "NOPE"), Error);
  try {
    successors(f, "NOPE");
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Code::kUnknownComponent);
  }
}

TEST(Successors, KeystoneMsmcReachesMemories) {
  auto s = successors(flatten(load_model("keystone.pml")), "MSMC");
  EXPECT_NE(std::find(s.begin(), s.end(), "DDR"), s.end());
  EXPECT_NE(std::find(s.begin(), s.end(), "SRAM"), s.end());
}

TEST(StructuralEquality, IgnoresDeclarationOrderAndSpans) {
  Platform a = chain();
  Platform b = a;
  std::reverse(b.components.begin(), b.components.end());
  std::reverse(b.links.begin(), b.links.end());
  b.links[0].span = SourceSpan{"other.pml", 99, 9};
  EXPECT_TRUE(structurally_equal(a, b));
  b.links.pop_back();
  EXPECT_FALSE(structurally_equal(a, b));
}

TEST(ValidPlatform, OrdersTransactionsByInitiatorAppName) {
  Platform p = parse_ok(R"(
platform P {
  initiator B; initiator A;
  target M { service load; };
  link A -> M; link B -> M;
  application z { transaction t2: A -> M uses load; transaction t1: A -> M uses load; }
  application a { transaction x: B -> M uses load; transaction y: A -> M uses load; }
}
)");
  ValidPlatform v = ValidPlatform::from(p);
  std::vector<std::string> keys;
  for (const auto& t : v.transactions()) keys.push_back(t.key());
  EXPECT_EQ(keys, (std::vector<std::string>{"a.y", "z.t1", "z.t2", "a.x"}));
}

TEST(ValidPlatform, RejectsBadTransactions) {
  Platform p = chain();
  p.applications.push_back(Application{"app", {Transaction{"t", {"C0", "DDR"}, "load", 0, 0, "app", {}}}, {}});
  auto r = ValidPlatform::check(p);
  ASSERT_FALSE(r.ok());
  EXPECT_EQ(r.diagnostics().front().code, Code::kBadPath);
  EXPECT_THROW(ValidPlatform::from(p), Error);
}

TEST(Names, IdentifiersAndQualifiedIds) {
  EXPECT_TRUE(is_identifier("A15_0"));
  EXPECT_TRUE(is_identifier("_x"));
  EXPECT_FALSE(is_identifier("0A"));
  EXPECT_FALSE(is_identifier(""));
  EXPECT_FALSE(is_identifier("a.b"));
  EXPECT_TRUE(is_qualified_id("a.b.c"));
  EXPECT_FALSE(is_qualified_id("a..b"));
  EXPECT_FALSE(is_qualified_id("a."));
  EXPECT_EQ(qualify("", "x"), "x");
  EXPECT_EQ(qualify("a.b", "x"), "a.b.x");
}

TEST(Diagnostics, FormatAndCodes) {
  Diagnostic d = make_error(Code::kSelfLink, "self-link at 'A'", SourceSpan{"m.pml", 3, 5});
  EXPECT_EQ(format_diagnostic(d), "m.pml:3:5: error[E_SELF_LINK]: self-link at 'A'");
  Diagnostic w = make_warning(Code::kAbstraction, "abstracted");
  EXPECT_FALSE(w.is_error());
  EXPECT_NE(format_diagnostic(w).find("warning[W_ABSTRACTION]"), std::string::npos);
}

}  // namespace
}  // namespace itfkit
