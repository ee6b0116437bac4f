#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

namespace evinet {

/// Dense places x transitions matrix of arc weights.
class IncidenceMatrix {
 public:
  IncidenceMatrix() = default;
  IncidenceMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, 0) {}
  /// Row-major literal; every row must have the same length.
  IncidenceMatrix(std::initializer_list<std::initializer_list<int>> rows);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  int operator()(std::size_t row, std::size_t col) const {
    return data_[row * cols_ + col];
  }
  int& operator()(std::size_t row, std::size_t col) {
    return data_[row * cols_ + col];
  }

  bool operator==(const IncidenceMatrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<int> data_;
};

/// Boolean observation vector R(k); bit j is the receptivity of transition j.
class Receptivity {
 public:
  Receptivity() = default;
  explicit Receptivity(std::vector<bool> bits) : bits_(std::move(bits)) {}
  Receptivity(std::initializer_list<int> bits);

  /// Builds the receptivity whose bit string r1 r2 ... rm, read as a binary
  /// number with r1 most significant, equals `code`.
  static Receptivity from_code(std::uint64_t code, std::size_t size);
  static Receptivity all_false(std::size_t size) {
    return Receptivity(std::vector<bool>(size, false));
  }

  std::size_t size() const noexcept { return bits_.size(); }
  bool operator[](std::size_t j) const { return bits_[j]; }
  const std::vector<bool>& bits() const noexcept { return bits_; }

  /// Inverse of from_code. Requires size() <= 64.
  std::uint64_t code() const;
  /// "010" style rendering, r1 first.
  std::string to_string() const;

  bool operator==(const Receptivity&) const = default;
  std::strong_ordering operator<=>(const Receptivity& other) const;

 private:
  std::vector<bool> bits_;
};

/// Single-token marking: exactly one entry is 1.
class ClassicMarking {
 public:
  /// Throws InvalidMarkingError unless entries are 0/1 and sum to 1.
  explicit ClassicMarking(std::vector<int> marks);
  static ClassicMarking token_at(std::size_t place, std::size_t place_count);

  std::size_t size() const noexcept { return marks_.size(); }
  int operator[](std::size_t i) const { return marks_[i]; }
  const std::vector<int>& marks() const noexcept { return marks_; }
  std::size_t marked_place() const;

  bool operator==(const ClassicMarking&) const = default;

 private:
  std::vector<int> marks_;
};

enum class ViolationKind {
  kNoPlaces,
  kNoTransitions,
  kShapeMismatch,
  kNonBinaryEntry,
  kColumnSumNonZero,
  kPreArcCount,
  kPostArcCount,
  kSelfLoop,
  kDuplicatePlaceName,
  kDuplicateTransitionName,
};

struct Violation {
  ViolationKind kind;
  std::optional<std::size_t> row;
  std::optional<std::size_t> column;
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool ok() const noexcept { return violations.empty(); }
};

/// Place/transition structure <P, T, Pre, Post>. Any candidate matrices can be
/// stored; validity against the single-token state-machine assumptions is
/// computed once at construction and queried through validate_net().
class PetriNet {
 public:
  PetriNet(std::vector<std::string> place_names,
           std::vector<std::string> transition_names, IncidenceMatrix pre,
           IncidenceMatrix post, std::string name = "net");

  /// Names P1..Pn and t1..tm.
  static PetriNet from_matrices(IncidenceMatrix pre, IncidenceMatrix post,
                                std::string name = "net");

  const std::string& name() const noexcept { return name_; }
  const std::vector<std::string>& place_names() const noexcept {
    return place_names_;
  }
  const std::vector<std::string>& transition_names() const noexcept {
    return transition_names_;
  }
  std::size_t place_count() const noexcept { return place_names_.size(); }
  std::size_t transition_count() const noexcept {
    return transition_names_.size();
  }
  const IncidenceMatrix& pre() const noexcept { return pre_; }
  const IncidenceMatrix& post() const noexcept { return post_; }

  const ValidationReport& report() const noexcept { return report_; }
  bool valid() const noexcept { return report_.ok(); }

  // Arc lookups below require valid().
  std::size_t input_place(std::size_t transition) const;
  std::size_t output_place(std::size_t transition) const;
  /// Transitions t with pre(place, t) = 1, ascending.
  const std::vector<std::size_t>& output_transitions(std::size_t place) const;
  /// Transitions t with post(place, t) = 1, ascending.
  const std::vector<std::size_t>& input_transitions(std::size_t place) const;

  std::optional<std::size_t> find_place(const std::string& name) const;
  std::optional<std::size_t> find_transition(const std::string& name) const;

  /// Structural equality: names and matrices; the net name is ignored.
  bool same_structure(const PetriNet& other) const;

 private:
  void require_valid() const;

  std::string name_;
  std::vector<std::string> place_names_;
  std::vector<std::string> transition_names_;
  IncidenceMatrix pre_;
  IncidenceMatrix post_;
  ValidationReport report_;
  std::vector<std::size_t> input_place_;
  std::vector<std::size_t> output_place_;
  std::vector<std::vector<std::size_t>> outputs_of_;
  std::vector<std::vector<std::size_t>> inputs_of_;
};

struct ConflictSet {
  std::size_t place;
  std::vector<std::size_t> transitions;

  bool operator==(const ConflictSet&) const = default;
};

struct ConflictViolation {
  ConflictSet conflict;
  /// Members of the conflict set that are simultaneously true.
  std::vector<std::size_t> true_transitions;
};

struct ReceptivityCheck {
  std::vector<ConflictViolation> violations;

  bool ok() const noexcept { return violations.empty(); }
};

ValidationReport validate_net(const PetriNet& net);

/// Throws InvalidNetError listing the violations when the net is not valid.
void require_valid_net(const PetriNet& net);

std::vector<ConflictSet> detect_conflicts(const PetriNet& net);

/// Throws DimensionError when r.size() differs from the transition count.
ReceptivityCheck check_receptivity(const PetriNet& net, const Receptivity& r);

/// check_receptivity, throwing ConflictError on the first violated set.
void require_admissible(const PetriNet& net, const Receptivity& r);

std::vector<std::size_t> enabled_transitions(const PetriNet& net,
                                             std::size_t place,
                                             const Receptivity& r);

/// Fires the enabled transitions (r_j = 1 and input place marked); a marked
/// place without an enabled output keeps its token.
ClassicMarking classic_step(const PetriNet& net, const ClassicMarking& marking,
                            const Receptivity& r);

std::string describe(const ConflictSet& conflict, const PetriNet& net);
std::string describe(const ConflictViolation& violation, const PetriNet& net);

}  // namespace evinet
