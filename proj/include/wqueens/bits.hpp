#pragma once

#include <cstddef>
#include <cstdint>
#include <string>

namespace wq {

// Basis states are keyed by a 128-bit word with qubit 0 in the least
// significant bit. 128 bits covers every circuit this project builds
// (an 8x8 board plus all pipeline ancillas needs 99 qubits).
using BasisKey = unsigned __int128;

constexpr BasisKey key_bit(int index) { return BasisKey{1} << index; }

constexpr bool key_test(BasisKey key, int index) {
  return ((key >> index) & 1) != 0;
}

constexpr BasisKey key_with(BasisKey key, int index, bool value) {
  return value ? (key | key_bit(index)) : (key & ~key_bit(index));
}

constexpr BasisKey key_flip(BasisKey key, int index) {
  return key ^ key_bit(index);
}

struct BasisKeyHash {
  std::size_t operator()(BasisKey key) const noexcept {
    auto mix = [](std::uint64_t x) {
      x += 0x9e3779b97f4a7c15ULL;
      x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
      x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
      return x ^ (x >> 31);
    };
    const auto lo = static_cast<std::uint64_t>(key);
    const auto hi = static_cast<std::uint64_t>(key >> 64);
    return static_cast<std::size_t>(mix(lo ^ mix(hi)));
  }
};

// "q0=1 q1=0 ..." rendering; used in diagnostics so bit order is explicit.
std::string key_to_string(BasisKey key, int num_bits);

}  // namespace wq
