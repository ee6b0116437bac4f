#pragma once

#include <cstddef>
#include <initializer_list>
#include <map>
#include <utility>
#include <vector>

#include "evinet/place_set.hpp"

namespace evinet {

/// Masses must sum to 1 within this bound; inputs outside are rejected.
inline constexpr double kMassTolerance = 1e-9;

/// Normalized mass function over nonempty place sets (the generalized
/// marking). Only focal elements (nonzero mass) are stored, keyed in
/// canonical order.
class MassVector {
 public:
  using Map = std::map<PlaceSet, double>;

  /// Throws InvalidMassError unless every mass is in [0,1] and the total is 1
  /// within kMassTolerance. Zero entries are dropped; duplicate keys add up.
  explicit MassVector(const std::vector<std::pair<PlaceSet, double>>& entries);
  explicit MassVector(Map masses);
  MassVector(std::initializer_list<std::pair<PlaceSet, double>> entries)
      : MassVector(std::vector<std::pair<PlaceSet, double>>(entries)) {}

  /// Mass 1 on the given set.
  static MassVector categorical(const PlaceSet& focal);
  /// Mass 1 on the set of all `place_count` places.
  static MassVector ignorance(std::size_t place_count);

  double mass(const PlaceSet& set) const;
  const Map& focal_elements() const noexcept { return masses_; }
  std::size_t focal_count() const noexcept { return masses_.size(); }
  double total() const noexcept;
  /// Largest place index used by any focal element.
  std::size_t max_place_index() const noexcept;
  /// True when every mass is exactly 0 or 1.
  bool is_categorical() const noexcept;

  /// Dense vector in canonical subset order (length 2^n - 1).
  std::vector<double> dense(std::size_t place_count) const;

  bool operator==(const MassVector&) const = default;

 private:
  Map masses_;
};

/// Same focal elements with masses equal within `tolerance`.
bool approx_equal(const MassVector& a, const MassVector& b,
                  double tolerance = kMassTolerance);

}  // namespace evinet
