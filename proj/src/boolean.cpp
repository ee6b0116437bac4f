#include "evinet/boolean.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <set>

#include "evinet/error.hpp"

namespace evinet {

Cube Cube::minterm(std::uint64_t code, std::size_t variables) {
  const std::uint64_t all =
      variables >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << variables) - 1;
  return {all, code & all};
}

std::size_t Cube::literal_count() const noexcept {
  return static_cast<std::size_t>(std::popcount(care));
}

std::string Cube::to_string(std::size_t variables) const {
  if (care == 0) return "1";
  std::string s;
  for (std::size_t j = 0; j < variables; ++j) {
    const std::uint64_t bit = std::uint64_t{1} << (variables - 1 - j);
    if ((care & bit) == 0) continue;
    if (!s.empty()) s += "*";
    if ((value & bit) == 0) s += "!";
    s += "r" + std::to_string(j + 1);
  }
  return s;
}

bool Cube::operator<(const Cube& other) const noexcept {
  const auto a = literal_count();
  const auto b = other.literal_count();
  if (a != b) return a < b;
  if (care != other.care) return care > other.care;
  return value < other.value;
}

std::vector<Cube> minimize_sop(std::vector<std::uint64_t> on_set,
                               std::size_t variables) {
  if (variables > 63) throw DimensionError("minimizer supports at most 63 variables");
  std::sort(on_set.begin(), on_set.end());
  on_set.erase(std::unique(on_set.begin(), on_set.end()), on_set.end());
  if (on_set.empty()) return {};
  if (on_set.size() == (std::size_t{1} << variables)) return {Cube::tautology()};

  // Prime implicant generation: repeatedly merge cubes differing in one
  // cared-for bit; cubes that never merge are prime.
  std::set<std::pair<std::uint64_t, std::uint64_t>> current;
  for (std::uint64_t code : on_set) {
    const Cube c = Cube::minterm(code, variables);
    current.insert({c.care, c.value});
  }
  std::vector<Cube> primes;
  while (!current.empty()) {
    std::set<std::pair<std::uint64_t, std::uint64_t>> next;
    std::set<std::pair<std::uint64_t, std::uint64_t>> merged;
    // Group by care mask; only cubes with the same mask can merge.
    std::map<std::uint64_t, std::vector<std::uint64_t>> by_care;
    for (const auto& [care, value] : current) by_care[care].push_back(value);
    for (const auto& [care, values] : by_care) {
      const std::set<std::uint64_t> lookup(values.begin(), values.end());
      for (std::uint64_t value : values) {
        for (std::uint64_t rest = care; rest != 0; rest &= rest - 1) {
          const std::uint64_t bit = rest & (~rest + 1);
          if ((value & bit) != 0) continue;
          if (lookup.count(value | bit) == 0) continue;
          next.insert({care & ~bit, value});
          merged.insert({care, value});
          merged.insert({care, value | bit});
        }
      }
    }
    for (const auto& cv : current) {
      if (merged.count(cv) == 0) primes.push_back({cv.first, cv.second});
    }
    current = std::move(next);
  }
  std::sort(primes.begin(), primes.end());

  // Cover: essential primes first, then the prime covering the most
  // still-uncovered minterms (ties broken by prime order).
  std::vector<Cube> cover;
  std::set<std::uint64_t> uncovered(on_set.begin(), on_set.end());
  std::vector<bool> used(primes.size(), false);
  for (std::uint64_t code : on_set) {
    std::size_t hits = 0;
    std::size_t which = 0;
    for (std::size_t k = 0; k < primes.size(); ++k) {
      if (primes[k].matches(code)) {
        ++hits;
        which = k;
      }
    }
    if (hits == 1 && !used[which]) {
      used[which] = true;
      cover.push_back(primes[which]);
    }
  }
  for (const Cube& c : cover) {
    for (auto it = uncovered.begin(); it != uncovered.end();) {
      it = c.matches(*it) ? uncovered.erase(it) : std::next(it);
    }
  }
  while (!uncovered.empty()) {
    std::size_t best = primes.size();
    std::size_t best_count = 0;
    for (std::size_t k = 0; k < primes.size(); ++k) {
      if (used[k]) continue;
      std::size_t count = 0;
      for (std::uint64_t code : uncovered) count += primes[k].matches(code);
      if (count > best_count) {
        best_count = count;
        best = k;
      }
    }
    used[best] = true;
    cover.push_back(primes[best]);
    for (auto it = uncovered.begin(); it != uncovered.end();) {
      it = primes[best].matches(*it) ? uncovered.erase(it) : std::next(it);
    }
  }
  std::sort(cover.begin(), cover.end());
  return cover;
}

bool cover_matches(const std::vector<Cube>& cover, std::uint64_t code) {
  return std::any_of(cover.begin(), cover.end(),
                     [code](const Cube& c) { return c.matches(code); });
}

}  // namespace evinet
