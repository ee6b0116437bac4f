#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "evinet/boolean.hpp"
#include "evinet/mass.hpp"
#include "evinet/net.hpp"
#include "evinet/place_set.hpp"

namespace evinet {

inline constexpr const char* kEquationFormatHeader = "# format: evinet-equations v1";

struct TableLimits {
  std::size_t max_places = 16;
  std::size_t max_transitions = 16;
};

/// Precomputed transform(X, r) for every nonempty subset X and every
/// conflict-admissible receptivity combination r. Combinations violating a
/// conflict constraint are recorded as rejected and have no cells.
class TransferTable {
 public:
  const PetriNet& net() const noexcept { return net_; }
  std::size_t place_count() const noexcept { return net_.place_count(); }
  std::size_t transition_count() const noexcept {
    return net_.transition_count();
  }

  bool admissible(std::uint64_t code) const { return admissible_.at(code); }
  bool admissible(const Receptivity& r) const;
  /// Admissible combination codes, ascending.
  const std::vector<std::uint64_t>& admissible_codes() const noexcept {
    return admissible_codes_;
  }
  std::size_t rejected_count() const noexcept {
    return admissible_.size() - admissible_codes_.size();
  }
  std::size_t defined_cell_count() const noexcept;

  /// nullopt for a rejected combination.
  std::optional<PlaceSet> cell(const PlaceSet& x, std::uint64_t code) const;
  std::optional<PlaceSet> cell(const PlaceSet& x, const Receptivity& r) const;

 private:
  friend TransferTable build_transfer_table(const PetriNet&, TableLimits);
  explicit TransferTable(PetriNet net) : net_(std::move(net)) {}

  std::size_t combinations() const noexcept { return admissible_.size(); }

  PetriNet net_;
  std::vector<bool> admissible_;
  std::vector<std::uint64_t> admissible_codes_;
  // Row (x.bits() - 1), column code; 0 marks a rejected combination.
  std::vector<std::uint32_t> cells_;
};

/// Required cell count (2^n - 1) * 2^m, saturating at ULLONG_MAX.
unsigned long long required_table_cells(std::size_t places,
                                        std::size_t transitions);

/// Throws CapError (with required_table_cells) when the net exceeds `limits`.
TransferTable build_transfer_table(const PetriNet& net, TableLimits limits = {});

/// Cells mapping to `y`, ordered by source set (canonical) then by
/// receptivity code.
std::vector<std::pair<PlaceSet, Receptivity>> invert_table(
    const TransferTable& table, const PlaceSet& y);

MassVector table_step(const TransferTable& table, const MassVector& mass,
                      const Receptivity& r);

struct EquationTerm {
  Cube cube;
  PlaceSet source;
};

/// M_target(k+1) = sum over terms of cube(r) * M_source(k), where the
/// coefficient of a source is the OR of its cubes.
struct MassEquation {
  PlaceSet target;
  std::size_t variable_count = 0;
  std::vector<EquationTerm> terms;

  /// Sources in canonical order, without duplicates.
  std::vector<PlaceSet> sources() const;
  bool coefficient(const PlaceSet& source, std::uint64_t code) const;
  double evaluate(const MassVector& mass, const Receptivity& r) const;
};

/// One equation per reachable target in canonical order. Raw equations carry
/// one minterm per defined cell; minimized ones reduce each source's
/// coefficient to a sum of prime implicants.
std::vector<MassEquation> emit_equations(const TransferTable& table,
                                         bool minimize);

/// Compares the per-source coefficients over all 2^m assignments. Different
/// targets compare unequal; different variable counts throw DimensionError.
bool equations_semantically_equal(const MassEquation& a, const MassEquation& b);

/// "M{1}(k+1) = !r1*M{1} + r3*M{3} + !r1*r3*M{1,3}"
std::string render_equation(const MassEquation& equation);

/// Header line followed by one equation per line.
void write_equations(std::ostream& out, const std::vector<MassEquation>& eqs);

/// Parses the rendering grammar, extended with parenthesised sums that
/// distribute over products, e.g. "!r3*r1*(M{1,3} + M{1,2,3})". Place labels
/// are one-based indices; `variables` is the receptivity count m.
/// Throws ParseError.
MassEquation parse_equation(std::string_view text, std::size_t variables);

/// CSV with header "subset,receptivity,result", one row per defined cell in
/// canonical subset order then receptivity code. Returns the row count.
std::size_t write_table_csv(std::ostream& out, const TransferTable& table);

}  // namespace evinet
