#include "evinet/mass.hpp"

#include <cmath>
#include <set>
#include <sstream>

#include "evinet/error.hpp"

namespace evinet {

namespace {

MassVector::Map checked(MassVector::Map masses) {
  double total = 0.0;
  for (auto it = masses.begin(); it != masses.end();) {
    const double v = it->second;
    if (!std::isfinite(v) || v < 0.0 || v > 1.0 + kMassTolerance) {
      std::ostringstream msg;
      msg << "mass " << v << " outside [0,1]";
      throw InvalidMassError(msg.str());
    }
    total += v;
    it = v == 0.0 ? masses.erase(it) : std::next(it);
  }
  if (std::abs(total - 1.0) > kMassTolerance) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "masses sum to " << total << ", expected 1";
    throw InvalidMassError(msg.str());
  }
  return masses;
}

}  // namespace

MassVector::MassVector(const std::vector<std::pair<PlaceSet, double>>& entries) {
  Map masses;
  for (const auto& [set, value] : entries) masses[set] += value;
  masses_ = checked(std::move(masses));
}

MassVector::MassVector(Map masses) : masses_(checked(std::move(masses))) {}

MassVector MassVector::categorical(const PlaceSet& focal) {
  return MassVector(Map{{focal, 1.0}});
}

MassVector MassVector::ignorance(std::size_t place_count) {
  return categorical(PlaceSet::full(place_count));
}

double MassVector::mass(const PlaceSet& set) const {
  auto it = masses_.find(set);
  return it == masses_.end() ? 0.0 : it->second;
}

double MassVector::total() const noexcept {
  double total = 0.0;
  for (const auto& [set, value] : masses_) total += value;
  return total;
}

std::size_t MassVector::max_place_index() const noexcept {
  std::size_t max = 0;
  for (const auto& [set, value] : masses_) {
    if (set.max_index() > max) max = set.max_index();
  }
  return max;
}

bool MassVector::is_categorical() const noexcept {
  for (const auto& [set, value] : masses_) {
    if (value != 0.0 && value != 1.0) return false;
  }
  return true;
}

std::vector<double> MassVector::dense(std::size_t place_count) const {
  if (place_count == 0 || place_count > 30) {
    throw DimensionError("dense mass vectors support 1..30 places");
  }
  std::vector<double> out((std::size_t{1} << place_count) - 1, 0.0);
  for (const auto& [set, value] : masses_) {
    out[canonical_rank(set, place_count)] = value;
  }
  return out;
}

bool approx_equal(const MassVector& a, const MassVector& b, double tolerance) {
  std::set<PlaceSet> keys;
  for (const auto& [set, v] : a.focal_elements()) keys.insert(set);
  for (const auto& [set, v] : b.focal_elements()) keys.insert(set);
  for (const auto& set : keys) {
    if (std::abs(a.mass(set) - b.mass(set)) > tolerance) return false;
  }
  return true;
}

}  // namespace evinet
