#ifndef ITFKIT_TRANSACTIONS_HPP
#define ITFKIT_TRANSACTIONS_HPP

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "itfkit/diagnostic.hpp"
#include "itfkit/platform.hpp"

namespace itfkit {

using Path = std::vector<ComponentId>;

// All simple directed paths from an initiator to a target whose interior
// components are transporters, sorted lexicographically.
// Throws Error(E_UNKNOWN_COMPONENT) or Error(E_ROLE).
std::vector<Path> enumerate_paths(const FlatPlatform& p, std::string_view from,
                                  std::string_view to);

// Checks every declared transaction against the path invariant, in
// declaration order. Reports at most one error per transaction (the first
// invalid hop) and warns with W_UNDECLARED_ROUTE when other routes exist
// between the same endpoints.
Result<std::vector<Transaction>> resolve_transactions(const FlatPlatform& p);

// Single-transaction form of the same check; empty when valid.
std::vector<Diagnostic> check_transaction_path(const FlatPlatform& p,
                                               const Transaction& t);

// How an instruction-level access maps onto line-sized memory transactions
// (tightly coupled accelerators such as SIMD units).
struct ExpansionRule {
  std::uint64_t width = 0;      // access width of one instruction, bytes
  std::uint64_t alignment = 0;  // guaranteed address alignment, bytes
  std::uint64_t line = 0;       // line/window size, bytes

  friend bool operator==(const ExpansionRule&, const ExpansionRule&) = default;
};

// Largest start offset within a line reachable by an address that is a
// multiple of `alignment`: line - gcd(alignment, line).
std::uint64_t worst_offset(const ExpansionRule& rule);

// Number of line windows touched by `payload` bytes starting at the worst
// offset. Throws Error(E_BAD_RULE).
std::uint64_t expansion_count(std::uint64_t payload, const ExpansionRule& rule);

// Splits t into sub-transactions, one per line window touched at the worst
// offset. Sub-transactions are named "<name>_<i>", share t's path, service,
// rate and app, and their payloads sum to t.payload.
// Throws Error(E_BAD_RULE) on a non-positive rule field or zero payload.
std::vector<Transaction> expand_access(const Transaction& t, const ExpansionRule& rule);

}  // namespace itfkit

#endif  // ITFKIT_TRANSACTIONS_HPP
