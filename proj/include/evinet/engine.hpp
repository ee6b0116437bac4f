#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "evinet/mass.hpp"
#include "evinet/net.hpp"
#include "evinet/place_set.hpp"

namespace evinet {

/// Where each place's token goes under one receptivity: the output place of
/// its enabled transition, or the place itself when none is enabled.
class SuccessorMap {
 public:
  /// Validates the net, the receptivity length and the conflict constraint.
  SuccessorMap(const PetriNet& net, const Receptivity& r);

  std::size_t place_count() const noexcept { return successor_.size(); }
  std::size_t operator[](std::size_t place) const { return successor_[place]; }

  /// Union of the successors of every member of `x`.
  PlaceSet image(const PlaceSet& x) const;

 private:
  std::vector<std::size_t> successor_;
};

struct TrajectoryStep {
  Receptivity receptivity;
  MassVector mass;
};

struct Trajectory {
  MassVector initial;
  std::vector<TrajectoryStep> steps;

  const MassVector& final_mass() const {
    return steps.empty() ? initial : steps.back().mass;
  }
};

/// Mass 1 on the full frame of places: the unknown-initial-state belief.
MassVector ignorance_mass(const PetriNet& net);

/// Transformation of `x` by the combination `r`: every place of `x` is taken
/// as possible, fired classically, and the reachable places are unioned.
PlaceSet transform(const PetriNet& net, const PlaceSet& x, const Receptivity& r);

/// Transfers the mass of every focal element X to transform(X, r) and sums
/// the contributions landing on the same set.
MassVector step(const PetriNet& net, const MassVector& mass, const Receptivity& r);

/// Iterates step over `inputs`. A failing input throws RunError carrying its
/// zero-based index.
Trajectory run(const PetriNet& net, const MassVector& initial,
               std::span<const Receptivity> inputs);

/// Closed-form update for nets that form one simple cycle, with focal
/// elements restricted to singletons and adjacent pairs {P(i-1), P(i)}:
///   M{i}(k+1)    = !r(i)*M{i} + r(i-1)*M{i-1} + r(i-1)*!r(i)*M{i-1,i}
///   M{i-1,i}(k+1) += !r(i-1)*!r(i)*M{i-1,i}
///   M{i,i+1}(k+1) += r(i-1)*r(i)*M{i-1,i}
///   M{i-1,i+1}(k+1) += !r(i-1)*r(i)*M{i-1,i}     (n >= 3)
/// where r(i) is the receptivity of the output transition of P(i). Intended
/// as an independent cross-check of step() on sequential nets.
MassVector sequential_step_check(const PetriNet& net, const MassVector& mass,
                                 const Receptivity& r);

/// True when every place has exactly one input and one output transition and
/// the places form a single cycle.
bool is_simple_cycle(const PetriNet& net);

/// Throws when a focal element names a place the net does not have.
void require_mass_fits(const PetriNet& net, const MassVector& mass);

}  // namespace evinet
