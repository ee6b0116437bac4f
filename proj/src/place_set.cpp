#include "evinet/place_set.hpp"

#include <algorithm>

#include "evinet/error.hpp"

namespace evinet {

namespace {

std::uint64_t bit_for(std::size_t place) {
  if (place >= PlaceSet::kMaxPlaces) {
    throw IndexError("place index " + std::to_string(place) +
                     " exceeds the 64-place limit of PlaceSet");
  }
  return std::uint64_t{1} << place;
}

}  // namespace

PlaceSet::PlaceSet(std::initializer_list<std::size_t> places)
    : PlaceSet(std::vector<std::size_t>(places)) {}

PlaceSet::PlaceSet(const std::vector<std::size_t>& places) {
  for (std::size_t p : places) bits_ |= bit_for(p);
  if (bits_ == 0) throw InvalidMassError("place set must be nonempty");
}

PlaceSet PlaceSet::from_bits(std::uint64_t bits) {
  if (bits == 0) throw InvalidMassError("place set must be nonempty");
  return PlaceSet(bits, Unchecked{});
}

PlaceSet PlaceSet::singleton(std::size_t place) {
  return PlaceSet(bit_for(place), Unchecked{});
}

PlaceSet PlaceSet::full(std::size_t place_count) {
  if (place_count == 0) throw InvalidMassError("place set must be nonempty");
  if (place_count > kMaxPlaces) {
    throw IndexError("PlaceSet supports at most 64 places");
  }
  const std::uint64_t bits =
      place_count == 64 ? ~std::uint64_t{0}
                        : (std::uint64_t{1} << place_count) - 1;
  return PlaceSet(bits, Unchecked{});
}

std::vector<std::size_t> PlaceSet::indices() const {
  std::vector<std::size_t> out;
  out.reserve(size());
  for (std::uint64_t b = bits_; b != 0; b &= b - 1) {
    out.push_back(static_cast<std::size_t>(std::countr_zero(b)));
  }
  return out;
}

bool PlaceSet::operator<(const PlaceSet& other) const noexcept {
  const auto a = size();
  const auto b = other.size();
  if (a != b) return a < b;
  // Equal cardinality: the sorted index lists first differ at the lowest
  // differing bit, and the set holding it sorts first.
  const std::uint64_t diff = bits_ ^ other.bits_;
  if (diff == 0) return false;
  return (bits_ & (diff & (~diff + 1))) != 0;
}

std::string PlaceSet::to_string(
    const std::vector<std::string>& place_names) const {
  std::string s = "{";
  bool first = true;
  for (std::size_t i : indices()) {
    if (!first) s += ",";
    first = false;
    s += i < place_names.size() ? place_names[i] : "#" + std::to_string(i);
  }
  return s + "}";
}

std::string PlaceSet::index_label() const {
  std::string s = "{";
  bool first = true;
  for (std::size_t i : indices()) {
    if (!first) s += ",";
    first = false;
    s += std::to_string(i + 1);
  }
  return s + "}";
}

std::vector<PlaceSet> canonical_subsets(std::size_t place_count) {
  if (place_count == 0 || place_count > 30) {
    throw DimensionError("canonical_subsets supports 1..30 places");
  }
  std::vector<PlaceSet> sets;
  const std::uint64_t limit = std::uint64_t{1} << place_count;
  sets.reserve(limit - 1);
  for (std::uint64_t bits = 1; bits < limit; ++bits) {
    sets.push_back(PlaceSet::from_bits(bits));
  }
  std::sort(sets.begin(), sets.end());
  return sets;
}

std::size_t canonical_rank(const PlaceSet& set, std::size_t place_count) {
  if (set.max_index() >= place_count) {
    throw IndexError("place set " + set.index_label() + " exceeds " +
                     std::to_string(place_count) + " places");
  }
  // Count subsets of smaller cardinality, then same-size subsets that sort
  // earlier (colexicographic walk over the sorted indices).
  const std::size_t k = set.size();
  auto choose = [](std::size_t n, std::size_t r) -> std::size_t {
    if (r > n) return 0;
    std::size_t c = 1;
    for (std::size_t i = 1; i <= r; ++i) c = c * (n - r + i) / i;
    return c;
  };
  std::size_t rank = 0;
  for (std::size_t c = 1; c < k; ++c) rank += choose(place_count, c);
  // Lexicographic rank of a k-combination of {0..n-1}.
  const auto idx = set.indices();
  std::size_t prev = 0;
  for (std::size_t pos = 0; pos < k; ++pos) {
    const std::size_t start = pos == 0 ? 0 : prev + 1;
    for (std::size_t v = start; v < idx[pos]; ++v) {
      rank += choose(place_count - v - 1, k - pos - 1);
    }
    prev = idx[pos];
  }
  return rank;
}

}  // namespace evinet
