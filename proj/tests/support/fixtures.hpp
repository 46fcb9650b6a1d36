#ifndef ITFKIT_TESTS_FIXTURES_HPP
#define ITFKIT_TESTS_FIXTURES_HPP

#include <fstream>
#include <sstream>
#include <string>

#include "itfkit/pml.hpp"

namespace itfkit::testing {

inline std::string model_path(const std::string& name) {
  return std::string(ITFKIT_MODELS_DIR) + "/" + name;
}

inline std::string golden_path(const std::string& name) {
  return std::string(ITFKIT_GOLDEN_DIR) + "/" + name;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

// Throws on parse or validation failure.
inline Platform load_model(const std::string& name) { return parse_file(model_path(name)).value(); }

inline ValidPlatform load_valid(const std::string& name) {
  return ValidPlatform::from(load_model(name));
}

inline Platform parse_ok(std::string_view text) { return parse(text).value(); }

// Minimal chain C0 -> BUS -> DDR.
inline constexpr std::string_view kChain = R"(
platform Chain {
  initiator C0;
  transporter BUS;
  target DDR { service load, store; };
  link C0 -> BUS;
  link BUS -> DDR;
}
)";

}  // namespace itfkit::testing

#endif  // ITFKIT_TESTS_FIXTURES_HPP
