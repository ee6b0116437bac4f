#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace evinet {

/// Product term over m receptivity variables. Variable j (r_{j+1}) lives at
/// bit (m - 1 - j), the same layout as Receptivity::code(), so a full
/// assignment is a cube with every variable cared for.
struct Cube {
  std::uint64_t care = 0;
  std::uint64_t value = 0;

  static Cube minterm(std::uint64_t code, std::size_t variables);
  static Cube tautology() { return {}; }

  bool matches(std::uint64_t code) const noexcept {
    return (code & care) == value;
  }
  std::size_t literal_count() const noexcept;
  bool is_tautology() const noexcept { return care == 0; }

  /// Literals joined by '*', e.g. "!r1*r3"; "1" for the empty product.
  std::string to_string(std::size_t variables) const;

  bool operator==(const Cube&) const = default;
  /// Fewer literals first, then by care/value bits.
  bool operator<(const Cube& other) const noexcept;
};

/// Two-level sum-of-products cover of the on-set (codes in [0, 2^variables)),
/// built from prime implicants (Quine-McCluskey) with essential primes taken
/// first and the rest chosen greedily. The cover is exact on every
/// assignment but not guaranteed minimum.
std::vector<Cube> minimize_sop(std::vector<std::uint64_t> on_set,
                               std::size_t variables);

/// True when some cube of the cover matches `code`.
bool cover_matches(const std::vector<Cube>& cover, std::uint64_t code);

}  // namespace evinet
