#pragma once

// Shared fixtures, random generators and the brute-force oracle. The oracle
// reads the raw Pre/Post matrices and fires each hypothesis token by hand; it
// deliberately avoids SuccessorMap, transform and step.

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "evinet/mass.hpp"
#include "evinet/net.hpp"

namespace evinet::testing {

inline PetriNet fig1() {
  return PetriNet::from_matrices({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}},
                                 {{0, 0, 1}, {1, 0, 0}, {0, 1, 0}}, "fig1");
}

inline PetriNet fig2() {
  return PetriNet::from_matrices({{1, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}},
                                 {{0, 0, 1, 1}, {1, 0, 0, 0}, {0, 1, 0, 0}},
                                 "fig2");
}

/// Two places feeding each other: the smallest valid net.
inline PetriNet cycle2() {
  return PetriNet::from_matrices({{1, 0}, {0, 1}}, {{0, 1}, {1, 0}}, "cycle2");
}

/// Random valid single-token net: every transition moves the token from a
/// random place to a different random place.
inline PetriNet random_net(std::mt19937_64& rng, std::size_t max_places = 8,
                           std::size_t max_transitions = 12) {
  std::uniform_int_distribution<std::size_t> n_dist(2, max_places);
  const std::size_t n = n_dist(rng);
  std::uniform_int_distribution<std::size_t> m_dist(1, max_transitions);
  const std::size_t m = m_dist(rng);
  IncidenceMatrix pre(n, m);
  IncidenceMatrix post(n, m);
  std::uniform_int_distribution<std::size_t> place(0, n - 1);
  std::uniform_int_distribution<std::size_t> other(0, n - 2);
  for (std::size_t t = 0; t < m; ++t) {
    const std::size_t from = place(rng);
    std::size_t to = other(rng);
    if (to >= from) ++to;
    pre(from, t) = 1;
    post(to, t) = 1;
  }
  return PetriNet::from_matrices(std::move(pre), std::move(post), "random");
}

/// Random single cycle over a shuffled place order; transition k leaves the
/// k-th place of the cycle.
inline PetriNet random_cycle(std::mt19937_64& rng, std::size_t max_places = 8) {
  std::uniform_int_distribution<std::size_t> n_dist(2, max_places);
  const std::size_t n = n_dist(rng);
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  IncidenceMatrix pre(n, n);
  IncidenceMatrix post(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    pre(order[k], k) = 1;
    post(order[(k + 1) % n], k) = 1;
  }
  return PetriNet::from_matrices(std::move(pre), std::move(post), "cycle");
}

/// Random bits, then each conflict place keeps at most one true output.
inline Receptivity random_admissible(std::mt19937_64& rng, const PetriNet& net) {
  std::bernoulli_distribution coin(0.5);
  std::vector<bool> bits(net.transition_count());
  for (std::size_t j = 0; j < bits.size(); ++j) bits[j] = coin(rng);
  for (std::size_t p = 0; p < net.place_count(); ++p) {
    std::vector<std::size_t> on;
    for (std::size_t j = 0; j < bits.size(); ++j) {
      if (net.pre()(p, j) == 1 && bits[j]) on.push_back(j);
    }
    if (on.size() < 2) continue;
    std::uniform_int_distribution<std::size_t> pick(0, on.size() - 1);
    const std::size_t keep = on[pick(rng)];
    for (std::size_t j : on) bits[j] = j == keep;
  }
  return Receptivity(std::move(bits));
}

/// Random normalized mass with 1..max_focal focal elements over n places.
inline MassVector random_mass(std::mt19937_64& rng, std::size_t n,
                              std::size_t max_focal = 4) {
  std::uniform_int_distribution<std::size_t> count_dist(1, max_focal);
  std::uniform_int_distribution<std::uint64_t> set_dist(1, (std::uint64_t{1} << n) - 1);
  std::uniform_real_distribution<double> weight(0.05, 1.0);
  const std::size_t count = count_dist(rng);
  std::map<std::uint64_t, double> raw;
  double total = 0.0;
  for (std::size_t k = 0; k < count; ++k) {
    const double w = weight(rng);
    raw[set_dist(rng)] += w;
    total += w;
  }
  std::vector<std::pair<PlaceSet, double>> entries;
  double assigned = 0.0;
  std::size_t k = 0;
  for (const auto& [bits, w] : raw) {
    const double value = ++k == raw.size() ? 1.0 - assigned : w / total;
    assigned += value;
    entries.emplace_back(PlaceSet::from_bits(bits), value);
  }
  return MassVector(entries);
}

/// Where a lone token at `place` ends up after firing every enabled
/// transition, computed as e_place - Pre.F + Post.F on the raw matrices.
/// nullopt when two transitions compete for the token.
inline std::optional<std::size_t> oracle_successor(const PetriNet& net,
                                                   std::size_t place,
                                                   const std::vector<bool>& r) {
  const std::size_t n = net.place_count();
  std::vector<int> marks(n, 0);
  marks[place] = 1;
  int fired = 0;
  for (std::size_t j = 0; j < r.size(); ++j) {
    if (!r[j] || net.pre()(place, j) != 1) continue;
    ++fired;
    for (std::size_t i = 0; i < n; ++i) {
      marks[i] += net.post()(i, j) - net.pre()(i, j);
    }
  }
  if (fired > 1) return std::nullopt;
  for (std::size_t i = 0; i < n; ++i) {
    if (marks[i] == 1) return i;
  }
  return std::nullopt;
}

/// Focal sets as raw bitmasks.
using RawMass = std::map<std::uint64_t, double>;

/// Brute-force evidential step: every place of every focal element is fired
/// independently, successors are unioned, masses move to the union.
inline std::optional<RawMass> oracle_step(const PetriNet& net, const RawMass& mass,
                                          const std::vector<bool>& r) {
  RawMass next;
  for (const auto& [bits, value] : mass) {
    std::uint64_t image = 0;
    for (std::size_t i = 0; i < net.place_count(); ++i) {
      if (((bits >> i) & 1U) == 0) continue;
      const auto succ = oracle_successor(net, i, r);
      if (!succ) return std::nullopt;
      image |= std::uint64_t{1} << *succ;
    }
    next[image] += value;
  }
  return next;
}

inline RawMass to_raw(const MassVector& mass) {
  RawMass raw;
  for (const auto& [set, value] : mass.focal_elements()) raw[set.bits()] = value;
  return raw;
}

}  // namespace evinet::testing
