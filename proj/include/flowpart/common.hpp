// Shared scalar types, error types and seed derivation.
#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace flowpart {

using VertexId = std::int32_t;
using NetId = std::int32_t;
using BlockId = std::int32_t;
using NodeId = std::int32_t;
using Weight = std::int64_t;

// Sentinel for unbounded arc capacity. Never fed into capacity sums; the
// solver substitutes a per-problem finite bound before pushing flow.
constexpr Weight kInfiniteCapacity = std::numeric_limits<Weight>::max();

constexpr VertexId kInvalidVertex = -1;
constexpr NetId kInvalidNet = -1;
constexpr NodeId kInvalidNode = -1;
constexpr BlockId kInvalidBlock = -1;

// Malformed external input (files, CLI arguments, inconsistent dimensions).
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A broken internal invariant. Reaching this is a bug, not a user error.
struct ContractViolation : std::logic_error {
  using std::logic_error::logic_error;
};

inline void require(bool condition, const std::string& message) {
  if (!condition) throw ContractViolation(message);
}

inline void require_input(bool condition, const std::string& message) {
  if (!condition) throw InputError(message);
}

// splitmix64; used to derive independent per-stage seeds from one run seed.
inline std::uint64_t hash_seed(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t salt) {
  return hash_seed(base ^ hash_seed(salt));
}

}  // namespace flowpart
