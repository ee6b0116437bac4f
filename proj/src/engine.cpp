#include "evinet/engine.hpp"

#include <string>

#include "evinet/error.hpp"

namespace evinet {

SuccessorMap::SuccessorMap(const PetriNet& net, const Receptivity& r) {
  require_admissible(net, r);
  if (net.place_count() > PlaceSet::kMaxPlaces) {
    throw DimensionError("evidential estimation supports at most 64 places");
  }
  successor_.resize(net.place_count());
  for (std::size_t p = 0; p < net.place_count(); ++p) {
    successor_[p] = p;
    // Admissibility leaves at most one enabled output per place.
    for (std::size_t t : net.output_transitions(p)) {
      if (r[t]) successor_[p] = net.output_place(t);
    }
  }
}

PlaceSet SuccessorMap::image(const PlaceSet& x) const {
  if (x.max_index() >= successor_.size()) {
    throw IndexError("place set " + x.index_label() + " exceeds " +
                     std::to_string(successor_.size()) + " places");
  }
  std::uint64_t bits = 0;
  for (std::uint64_t b = x.bits(); b != 0; b &= b - 1) {
    bits |= std::uint64_t{1} << successor_[std::countr_zero(b)];
  }
  return PlaceSet::from_bits(bits);
}

MassVector ignorance_mass(const PetriNet& net) {
  // Only the frame of places matters here, so a structurally invalid net
  // (e.g. a lone place with a self-loop) still has a well-defined ignorance.
  if (net.place_count() == 0) throw InvalidNetError("net has no places");
  return MassVector::ignorance(net.place_count());
}

PlaceSet transform(const PetriNet& net, const PlaceSet& x,
                   const Receptivity& r) {
  return SuccessorMap(net, r).image(x);
}

void require_mass_fits(const PetriNet& net, const MassVector& mass) {
  if (mass.max_place_index() >= net.place_count()) {
    throw IndexError("mass names place index " +
                     std::to_string(mass.max_place_index()) + " but net has " +
                     std::to_string(net.place_count()) + " places");
  }
}

MassVector step(const PetriNet& net, const MassVector& mass,
                const Receptivity& r) {
  const SuccessorMap successors(net, r);
  require_mass_fits(net, mass);
  MassVector::Map next;
  for (const auto& [focal, value] : mass.focal_elements()) {
    next[successors.image(focal)] += value;
  }
  return MassVector(std::move(next));
}

Trajectory run(const PetriNet& net, const MassVector& initial,
               std::span<const Receptivity> inputs) {
  require_valid_net(net);
  require_mass_fits(net, initial);
  Trajectory trajectory{initial, {}};
  trajectory.steps.reserve(inputs.size());
  for (std::size_t k = 0; k < inputs.size(); ++k) {
    try {
      MassVector next = step(net, trajectory.final_mass(), inputs[k]);
      trajectory.steps.push_back({inputs[k], std::move(next)});
    } catch (const Error& e) {
      throw RunError(k, e.kind(), e.what());
    }
  }
  return trajectory;
}

bool is_simple_cycle(const PetriNet& net) {
  if (!net.valid()) return false;
  const std::size_t n = net.place_count();
  if (net.transition_count() != n) return false;
  for (std::size_t p = 0; p < n; ++p) {
    if (net.output_transitions(p).size() != 1 ||
        net.input_transitions(p).size() != 1) {
      return false;
    }
  }
  std::size_t p = 0;
  for (std::size_t hops = 1; hops <= n; ++hops) {
    p = net.output_place(net.output_transitions(p).front());
    if (p == 0) return hops == n;
  }
  return false;
}

MassVector sequential_step_check(const PetriNet& net, const MassVector& mass,
                                 const Receptivity& r) {
  require_admissible(net, r);
  if (!is_simple_cycle(net)) {
    throw PreconditionError("net '" + net.name() + "' is not a simple cycle");
  }
  require_mass_fits(net, mass);
  const std::size_t n = net.place_count();

  auto pred = [&](std::size_t i) {
    return net.input_place(net.input_transitions(i).front());
  };
  auto succ = [&](std::size_t i) {
    return net.output_place(net.output_transitions(i).front());
  };
  auto fires = [&](std::size_t i) { return r[net.output_transitions(i).front()]; };

  for (const auto& [focal, value] : mass.focal_elements()) {
    if (focal.size() == 1) continue;
    const auto idx = focal.indices();
    const bool adjacent =
        focal.size() == 2 && (pred(idx[1]) == idx[0] || pred(idx[0]) == idx[1]);
    if (!adjacent) {
      throw PreconditionError("focal element " + focal.index_label() +
                              " is neither a singleton nor an adjacent pair");
    }
  }

  MassVector::Map next;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t prev = pred(i);
    const double m_i = mass.mass(PlaceSet::singleton(i));
    const double m_prev = mass.mass(PlaceSet::singleton(prev));
    const double m_pair = mass.mass(PlaceSet{prev, i});
    const bool ri = fires(i);
    const bool rprev = fires(prev);
    next[PlaceSet::singleton(i)] += (!ri ? m_i : 0.0) + (rprev ? m_prev : 0.0) +
                                    (rprev && !ri ? m_pair : 0.0);
  }

  // Pair-sourced mass that stays a pair. Each pair is visited once, oriented
  // so that `a` feeds `b`; on a 2-cycle both orientations name the same set.
  for (const auto& [focal, value] : mass.focal_elements()) {
    if (focal.size() != 2) continue;
    const auto idx = focal.indices();
    const std::size_t a = pred(idx[1]) == idx[0] ? idx[0] : idx[1];
    const std::size_t b = a == idx[0] ? idx[1] : idx[0];
    const bool ra = fires(a);
    const bool rb = fires(b);
    if (!ra && !rb) {
      next[focal] += value;
    } else if (ra && rb) {
      next[PlaceSet{b, succ(b)}] += value;
    } else if (!ra && rb && n >= 3) {
      next[PlaceSet{a, succ(b)}] += value;
    }
  }
  return MassVector(std::move(next));
}

}  // namespace evinet
