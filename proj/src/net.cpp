#include "evinet/net.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

#include "evinet/error.hpp"

namespace evinet {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kDimension: return "dimension mismatch";
    case ErrorKind::kConflict: return "conflict violation";
    case ErrorKind::kInvalidNet: return "invalid net";
    case ErrorKind::kInvalidMass: return "invalid mass";
    case ErrorKind::kInvalidMarking: return "invalid marking";
    case ErrorKind::kIndexOutOfRange: return "index out of range";
    case ErrorKind::kPrecondition: return "precondition violation";
    case ErrorKind::kCapExceeded: return "size cap exceeded";
    case ErrorKind::kRejectedCombination: return "rejected combination";
    case ErrorKind::kParse: return "parse error";
  }
  return "error";
}

std::string Diagnostic::to_string() const {
  std::string s = "line " + std::to_string(line);
  if (column > 0) s += ", column " + std::to_string(column);
  return s + ": " + message;
}

namespace {

std::string join_diagnostics(const std::vector<Diagnostic>& diagnostics) {
  std::string s;
  for (const auto& d : diagnostics) {
    if (!s.empty()) s += "\n";
    s += d.to_string();
  }
  return s;
}

}  // namespace

ParseError::ParseError(std::vector<Diagnostic> diagnostics)
    : Error(ErrorKind::kParse, join_diagnostics(diagnostics)),
      diagnostics_(std::move(diagnostics)) {}

IncidenceMatrix::IncidenceMatrix(
    std::initializer_list<std::initializer_list<int>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& row : rows) {
    if (row.size() != cols_) {
      throw DimensionError("ragged matrix literal");
    }
    data_.insert(data_.end(), row.begin(), row.end());
  }
}

// --- Receptivity ------------------------------------------------------------

Receptivity::Receptivity(std::initializer_list<int> bits) {
  bits_.reserve(bits.size());
  for (int b : bits) {
    if (b != 0 && b != 1) {
      throw DimensionError("receptivity bits must be 0 or 1");
    }
    bits_.push_back(b == 1);
  }
}

Receptivity Receptivity::from_code(std::uint64_t code, std::size_t size) {
  if (size > 64) {
    throw DimensionError("receptivity code limited to 64 transitions");
  }
  std::vector<bool> bits(size);
  for (std::size_t j = 0; j < size; ++j) {
    bits[j] = (code >> (size - 1 - j)) & 1U;
  }
  return Receptivity(std::move(bits));
}

std::uint64_t Receptivity::code() const {
  if (bits_.size() > 64) {
    throw DimensionError("receptivity code limited to 64 transitions");
  }
  std::uint64_t code = 0;
  for (bool b : bits_) code = (code << 1) | (b ? 1U : 0U);
  return code;
}

std::string Receptivity::to_string() const {
  std::string s;
  s.reserve(bits_.size());
  for (bool b : bits_) s.push_back(b ? '1' : '0');
  return s;
}

std::strong_ordering Receptivity::operator<=>(const Receptivity& other) const {
  if (auto c = bits_.size() <=> other.bits_.size(); c != 0) return c;
  for (std::size_t j = 0; j < bits_.size(); ++j) {
    if (bits_[j] != other.bits_[j]) {
      return bits_[j] ? std::strong_ordering::greater
                      : std::strong_ordering::less;
    }
  }
  return std::strong_ordering::equal;
}

// --- ClassicMarking ---------------------------------------------------------

ClassicMarking::ClassicMarking(std::vector<int> marks) : marks_(std::move(marks)) {
  int total = 0;
  for (int v : marks_) {
    if (v != 0 && v != 1) {
      throw InvalidMarkingError("marking entries must be 0 or 1");
    }
    total += v;
  }
  if (total != 1) {
    throw InvalidMarkingError("marking must hold exactly one token, found " +
                              std::to_string(total));
  }
}

ClassicMarking ClassicMarking::token_at(std::size_t place,
                                        std::size_t place_count) {
  if (place >= place_count) {
    throw IndexError("place " + std::to_string(place) + " out of range");
  }
  std::vector<int> marks(place_count, 0);
  marks[place] = 1;
  return ClassicMarking(std::move(marks));
}

std::size_t ClassicMarking::marked_place() const {
  return static_cast<std::size_t>(
      std::find(marks_.begin(), marks_.end(), 1) - marks_.begin());
}

// --- PetriNet ---------------------------------------------------------------

namespace {

ValidationReport compute_report(const std::vector<std::string>& places,
                                const std::vector<std::string>& transitions,
                                const IncidenceMatrix& pre,
                                const IncidenceMatrix& post) {
  ValidationReport report;
  auto add = [&](ViolationKind kind, std::optional<std::size_t> row,
                 std::optional<std::size_t> col, std::string message) {
    report.violations.push_back({kind, row, col, std::move(message)});
  };

  const std::size_t n = places.size();
  const std::size_t m = transitions.size();
  if (n == 0) add(ViolationKind::kNoPlaces, {}, {}, "net has no places");
  if (m == 0) add(ViolationKind::kNoTransitions, {}, {}, "net has no transitions");

  std::set<std::string> seen;
  for (std::size_t i = 0; i < n; ++i) {
    if (!seen.insert(places[i]).second) {
      add(ViolationKind::kDuplicatePlaceName, i, {},
          "duplicate place name '" + places[i] + "'");
    }
  }
  seen.clear();
  for (std::size_t j = 0; j < m; ++j) {
    if (!seen.insert(transitions[j]).second) {
      add(ViolationKind::kDuplicateTransitionName, {}, j,
          "duplicate transition name '" + transitions[j] + "'");
    }
  }

  auto shape_ok = [&](const IncidenceMatrix& mat, const char* label) {
    if (mat.rows() != n || mat.cols() != m) {
      std::ostringstream msg;
      msg << label << " is " << mat.rows() << "x" << mat.cols() << ", expected "
          << n << "x" << m;
      add(ViolationKind::kShapeMismatch, {}, {}, msg.str());
      return false;
    }
    return true;
  };
  const bool pre_ok = shape_ok(pre, "Pre");
  const bool post_ok = shape_ok(post, "Post");
  if (!pre_ok || !post_ok) return report;

  for (const auto* mat : {&pre, &post}) {
    const char* label = mat == &pre ? "Pre" : "Post";
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < m; ++j) {
        const int v = (*mat)(i, j);
        if (v != 0 && v != 1) {
          add(ViolationKind::kNonBinaryEntry, i, j,
              std::string(label) + "(" + std::to_string(i) + ", " +
                  std::to_string(j) + ") = " + std::to_string(v) +
                  " is not 0 or 1");
        }
      }
    }
  }

  for (std::size_t j = 0; j < m; ++j) {
    int sum = 0;
    int pre_arcs = 0;
    int post_arcs = 0;
    for (std::size_t i = 0; i < n; ++i) {
      sum += post(i, j) - pre(i, j);
      pre_arcs += pre(i, j) != 0;
      post_arcs += post(i, j) != 0;
    }
    if (sum != 0) {
      add(ViolationKind::kColumnSumNonZero, {}, j,
          "column " + std::to_string(j) + " of Post - Pre sums to " +
              std::to_string(sum));
    }
    if (pre_arcs != 1) {
      add(ViolationKind::kPreArcCount, {}, j,
          "transition column " + std::to_string(j) + " has " +
              std::to_string(pre_arcs) + " input arcs, expected 1");
    }
    if (post_arcs != 1) {
      add(ViolationKind::kPostArcCount, {}, j,
          "transition column " + std::to_string(j) + " has " +
              std::to_string(post_arcs) + " output arcs, expected 1");
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (pre(i, j) != 0 && post(i, j) != 0) {
        add(ViolationKind::kSelfLoop, i, j,
            "transition column " + std::to_string(j) +
                " is a self-loop on place row " + std::to_string(i));
      }
    }
  }
  return report;
}

}  // namespace

PetriNet::PetriNet(std::vector<std::string> place_names,
                   std::vector<std::string> transition_names,
                   IncidenceMatrix pre, IncidenceMatrix post, std::string name)
    : name_(std::move(name)),
      place_names_(std::move(place_names)),
      transition_names_(std::move(transition_names)),
      pre_(std::move(pre)),
      post_(std::move(post)) {
  report_ = compute_report(place_names_, transition_names_, pre_, post_);
  if (!report_.ok()) return;

  const std::size_t n = place_count();
  const std::size_t m = transition_count();
  input_place_.resize(m);
  output_place_.resize(m);
  outputs_of_.resize(n);
  inputs_of_.resize(n);
  for (std::size_t j = 0; j < m; ++j) {
    for (std::size_t i = 0; i < n; ++i) {
      if (pre_(i, j) == 1) {
        input_place_[j] = i;
        outputs_of_[i].push_back(j);
      }
      if (post_(i, j) == 1) {
        output_place_[j] = i;
        inputs_of_[i].push_back(j);
      }
    }
  }
}

PetriNet PetriNet::from_matrices(IncidenceMatrix pre, IncidenceMatrix post,
                                 std::string name) {
  std::vector<std::string> places(pre.rows());
  std::vector<std::string> transitions(pre.cols());
  for (std::size_t i = 0; i < places.size(); ++i) {
    places[i] = "P" + std::to_string(i + 1);
  }
  for (std::size_t j = 0; j < transitions.size(); ++j) {
    transitions[j] = "t" + std::to_string(j + 1);
  }
  return PetriNet(std::move(places), std::move(transitions), std::move(pre),
                  std::move(post), std::move(name));
}

void PetriNet::require_valid() const {
  if (!valid()) require_valid_net(*this);
}

std::size_t PetriNet::input_place(std::size_t transition) const {
  require_valid();
  if (transition >= transition_count()) {
    throw IndexError("transition " + std::to_string(transition) +
                     " out of range");
  }
  return input_place_[transition];
}

std::size_t PetriNet::output_place(std::size_t transition) const {
  require_valid();
  if (transition >= transition_count()) {
    throw IndexError("transition " + std::to_string(transition) +
                     " out of range");
  }
  return output_place_[transition];
}

const std::vector<std::size_t>& PetriNet::output_transitions(
    std::size_t place) const {
  require_valid();
  if (place >= place_count()) {
    throw IndexError("place " + std::to_string(place) + " out of range");
  }
  return outputs_of_[place];
}

const std::vector<std::size_t>& PetriNet::input_transitions(
    std::size_t place) const {
  require_valid();
  if (place >= place_count()) {
    throw IndexError("place " + std::to_string(place) + " out of range");
  }
  return inputs_of_[place];
}

std::optional<std::size_t> PetriNet::find_place(const std::string& name) const {
  auto it = std::find(place_names_.begin(), place_names_.end(), name);
  if (it == place_names_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - place_names_.begin());
}

std::optional<std::size_t> PetriNet::find_transition(
    const std::string& name) const {
  auto it = std::find(transition_names_.begin(), transition_names_.end(), name);
  if (it == transition_names_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - transition_names_.begin());
}

bool PetriNet::same_structure(const PetriNet& other) const {
  return place_names_ == other.place_names_ &&
         transition_names_ == other.transition_names_ && pre_ == other.pre_ &&
         post_ == other.post_;
}

// --- operations -------------------------------------------------------------

ValidationReport validate_net(const PetriNet& net) { return net.report(); }

void require_valid_net(const PetriNet& net) {
  if (net.valid()) return;
  std::string message = "net '" + net.name() + "' is invalid:";
  for (const auto& v : net.report().violations) message += "\n  " + v.message;
  throw InvalidNetError(message);
}

std::vector<ConflictSet> detect_conflicts(const PetriNet& net) {
  require_valid_net(net);
  std::vector<ConflictSet> conflicts;
  for (std::size_t p = 0; p < net.place_count(); ++p) {
    const auto& outs = net.output_transitions(p);
    if (outs.size() >= 2) conflicts.push_back({p, outs});
  }
  return conflicts;
}

ReceptivityCheck check_receptivity(const PetriNet& net, const Receptivity& r) {
  require_valid_net(net);
  if (r.size() != net.transition_count()) {
    throw DimensionError("receptivity has " + std::to_string(r.size()) +
                         " bits, net has " +
                         std::to_string(net.transition_count()) +
                         " transitions");
  }
  ReceptivityCheck check;
  for (auto& conflict : detect_conflicts(net)) {
    std::vector<std::size_t> on;
    for (std::size_t t : conflict.transitions) {
      if (r[t]) on.push_back(t);
    }
    if (on.size() >= 2) {
      check.violations.push_back({std::move(conflict), std::move(on)});
    }
  }
  return check;
}

void require_admissible(const PetriNet& net, const Receptivity& r) {
  const auto check = check_receptivity(net, r);
  if (check.ok()) return;
  std::string message = "receptivity " + r.to_string() + " violates";
  for (std::size_t k = 0; k < check.violations.size(); ++k) {
    message += (k == 0 ? " " : "; ") + describe(check.violations[k], net);
  }
  throw ConflictError(message);
}

std::vector<std::size_t> enabled_transitions(const PetriNet& net,
                                             std::size_t place,
                                             const Receptivity& r) {
  require_valid_net(net);
  if (place >= net.place_count()) {
    throw IndexError("place " + std::to_string(place) + " out of range");
  }
  if (r.size() != net.transition_count()) {
    throw DimensionError("receptivity has " + std::to_string(r.size()) +
                         " bits, net has " +
                         std::to_string(net.transition_count()) +
                         " transitions");
  }
  std::vector<std::size_t> enabled;
  for (std::size_t t : net.output_transitions(place)) {
    if (r[t]) enabled.push_back(t);
  }
  return enabled;
}

ClassicMarking classic_step(const PetriNet& net, const ClassicMarking& marking,
                            const Receptivity& r) {
  require_admissible(net, r);
  if (marking.size() != net.place_count()) {
    throw DimensionError("marking has " + std::to_string(marking.size()) +
                         " entries, net has " +
                         std::to_string(net.place_count()) + " places");
  }
  // M' = M - Pre.F + Post.F where F selects the enabled transitions.
  std::vector<int> next = marking.marks();
  for (std::size_t p = 0; p < net.place_count(); ++p) {
    if (marking[p] != 1) continue;
    for (std::size_t t : enabled_transitions(net, p, r)) {
      for (std::size_t i = 0; i < net.place_count(); ++i) {
        next[i] += net.post()(i, t) - net.pre()(i, t);
      }
    }
  }
  return ClassicMarking(std::move(next));
}

std::string describe(const ConflictSet& conflict, const PetriNet& net) {
  std::string s = net.place_names()[conflict.place] + " (";
  for (std::size_t k = 0; k < conflict.transitions.size(); ++k) {
    if (k > 0) s += ",";
    s += net.transition_names()[conflict.transitions[k]];
  }
  return s + ")";
}

std::string describe(const ConflictViolation& violation, const PetriNet& net) {
  std::string s = "conflict at " + net.place_names()[violation.conflict.place] +
                  ": ";
  for (std::size_t k = 0; k < violation.true_transitions.size(); ++k) {
    if (k > 0) s += ",";
    s += net.transition_names()[violation.true_transitions[k]];
  }
  return s + " simultaneously true";
}

}  // namespace evinet
