#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

namespace evinet {

/// Nonempty set of place indices (an element of 2^Omega), stored as a bitmask;
/// index i is bit i, so at most 64 places.
///
/// operator< is the canonical order: ascending cardinality, then
/// lexicographic on the sorted indices. For three places this yields
/// {0} {1} {2} {0,1} {0,2} {1,2} {0,1,2}.
class PlaceSet {
 public:
  static constexpr std::size_t kMaxPlaces = 64;

  /// Throws InvalidMassError on an empty list, IndexError on an index >= 64.
  PlaceSet(std::initializer_list<std::size_t> places);
  explicit PlaceSet(const std::vector<std::size_t>& places);
  /// Throws InvalidMassError when bits == 0.
  static PlaceSet from_bits(std::uint64_t bits);
  static PlaceSet singleton(std::size_t place);
  /// {0, ..., place_count - 1}.
  static PlaceSet full(std::size_t place_count);

  std::uint64_t bits() const noexcept { return bits_; }
  std::size_t size() const noexcept {
    return static_cast<std::size_t>(std::popcount(bits_));
  }
  bool contains(std::size_t place) const noexcept {
    return place < kMaxPlaces && ((bits_ >> place) & 1U) != 0;
  }
  /// Largest member index.
  std::size_t max_index() const noexcept {
    return static_cast<std::size_t>(63 - std::countl_zero(bits_));
  }
  std::vector<std::size_t> indices() const;

  PlaceSet operator|(const PlaceSet& other) const noexcept {
    return PlaceSet(bits_ | other.bits_, Unchecked{});
  }

  bool operator==(const PlaceSet&) const = default;
  bool operator<(const PlaceSet& other) const noexcept;

  /// "{P1,P3}" using the given place names.
  std::string to_string(const std::vector<std::string>& place_names) const;
  /// "{1,3}" using one-based indices.
  std::string index_label() const;

 private:
  struct Unchecked {};
  PlaceSet(std::uint64_t bits, Unchecked) noexcept : bits_(bits) {}

  std::uint64_t bits_ = 0;
};

/// All 2^n - 1 nonempty subsets of n places in canonical order. Requires
/// n <= 30.
std::vector<PlaceSet> canonical_subsets(std::size_t place_count);

/// Position of `set` in canonical_subsets(place_count).
std::size_t canonical_rank(const PlaceSet& set, std::size_t place_count);

}  // namespace evinet
