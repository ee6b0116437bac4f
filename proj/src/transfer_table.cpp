#include <climits>
#include <ostream>

#include "evinet/engine.hpp"
#include "evinet/error.hpp"
#include "evinet/symbolic.hpp"

namespace evinet {

namespace {

std::string csv_quote(const std::string& field) {
  if (field.find_first_of(",\"\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

unsigned long long required_table_cells(std::size_t places,
                                        std::size_t transitions) {
  if (places >= 64 || transitions >= 64 || places + transitions > 63) {
    return ULLONG_MAX;
  }
  return ((1ULL << places) - 1) << transitions;
}

bool TransferTable::admissible(const Receptivity& r) const {
  if (r.size() != transition_count()) {
    throw DimensionError("receptivity has " + std::to_string(r.size()) +
                         " bits, net has " +
                         std::to_string(transition_count()) + " transitions");
  }
  return admissible(r.code());
}

std::size_t TransferTable::defined_cell_count() const noexcept {
  return ((std::size_t{1} << place_count()) - 1) * admissible_codes_.size();
}

std::optional<PlaceSet> TransferTable::cell(const PlaceSet& x,
                                            std::uint64_t code) const {
  if (x.max_index() >= place_count()) {
    throw IndexError("place set " + x.index_label() + " exceeds " +
                     std::to_string(place_count()) + " places");
  }
  if (code >= combinations()) {
    throw IndexError("receptivity code " + std::to_string(code) +
                     " out of range");
  }
  const std::uint32_t bits = cells_[(x.bits() - 1) * combinations() + code];
  if (bits == 0) return std::nullopt;
  return PlaceSet::from_bits(bits);
}

std::optional<PlaceSet> TransferTable::cell(const PlaceSet& x,
                                            const Receptivity& r) const {
  if (r.size() != transition_count()) {
    throw DimensionError("receptivity has " + std::to_string(r.size()) +
                         " bits, net has " +
                         std::to_string(transition_count()) + " transitions");
  }
  return cell(x, r.code());
}

TransferTable build_transfer_table(const PetriNet& net, TableLimits limits) {
  require_valid_net(net);
  const std::size_t n = net.place_count();
  const std::size_t m = net.transition_count();
  if (n > limits.max_places || m > limits.max_transitions || n > 32 || m > 32) {
    const auto required = required_table_cells(n, m);
    throw CapError("net has " + std::to_string(n) + " places and " +
                       std::to_string(m) + " transitions; the table needs " +
                       std::to_string(required) + " cells but the cap is " +
                       std::to_string(limits.max_places) + " places, " +
                       std::to_string(limits.max_transitions) + " transitions",
                   required);
  }

  TransferTable table(net);
  const std::uint64_t combos = std::uint64_t{1} << m;
  const std::uint64_t subsets = (std::uint64_t{1} << n) - 1;
  table.admissible_.assign(combos, false);
  table.cells_.assign(subsets * combos, 0);
  for (std::uint64_t code = 0; code < combos; ++code) {
    const Receptivity r = Receptivity::from_code(code, m);
    if (!check_receptivity(net, r).ok()) continue;
    table.admissible_[code] = true;
    table.admissible_codes_.push_back(code);
    const SuccessorMap successors(net, r);
    for (std::uint64_t bits = 1; bits <= subsets; ++bits) {
      table.cells_[(bits - 1) * combos + code] = static_cast<std::uint32_t>(
          successors.image(PlaceSet::from_bits(bits)).bits());
    }
  }
  return table;
}

std::vector<std::pair<PlaceSet, Receptivity>> invert_table(
    const TransferTable& table, const PlaceSet& y) {
  std::vector<std::pair<PlaceSet, Receptivity>> out;
  if (y.max_index() >= table.place_count()) return out;
  for (const PlaceSet& x : canonical_subsets(table.place_count())) {
    for (std::uint64_t code : table.admissible_codes()) {
      if (table.cell(x, code) == y) {
        out.emplace_back(x, Receptivity::from_code(code, table.transition_count()));
      }
    }
  }
  return out;
}

MassVector table_step(const TransferTable& table, const MassVector& mass,
                      const Receptivity& r) {
  if (!table.admissible(r)) {
    throw RejectedCombinationError("receptivity " + r.to_string() +
                                   " is a rejected (conflicting) combination");
  }
  require_mass_fits(table.net(), mass);
  const std::uint64_t code = r.code();
  MassVector::Map next;
  for (const auto& [focal, value] : mass.focal_elements()) {
    next[*table.cell(focal, code)] += value;
  }
  return MassVector(std::move(next));
}

std::size_t write_table_csv(std::ostream& out, const TransferTable& table) {
  const auto& names = table.net().place_names();
  std::size_t rows = 0;
  out << "subset,receptivity,result\n";
  for (const PlaceSet& x : canonical_subsets(table.place_count())) {
    const std::string source = csv_quote(x.to_string(names));
    for (std::uint64_t code : table.admissible_codes()) {
      out << source << ','
          << Receptivity::from_code(code, table.transition_count()).to_string()
          << ',' << csv_quote(table.cell(x, code)->to_string(names)) << '\n';
      ++rows;
    }
  }
  return rows;
}

}  // namespace evinet
