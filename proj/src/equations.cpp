#include <algorithm>
#include <cctype>
#include <map>
#include <ostream>
#include <set>

#include "evinet/error.hpp"
#include "evinet/symbolic.hpp"

namespace evinet {

// --- MassEquation -----------------------------------------------------------

std::vector<PlaceSet> MassEquation::sources() const {
  std::set<PlaceSet> unique;
  for (const auto& term : terms) unique.insert(term.source);
  return {unique.begin(), unique.end()};
}

bool MassEquation::coefficient(const PlaceSet& source,
                               std::uint64_t code) const {
  return std::any_of(terms.begin(), terms.end(), [&](const EquationTerm& t) {
    return t.source == source && t.cube.matches(code);
  });
}

double MassEquation::evaluate(const MassVector& mass,
                              const Receptivity& r) const {
  if (r.size() != variable_count) {
    throw DimensionError("receptivity has " + std::to_string(r.size()) +
                         " bits, equation has " +
                         std::to_string(variable_count) + " variables");
  }
  const std::uint64_t code = r.code();
  double total = 0.0;
  for (const PlaceSet& source : sources()) {
    if (coefficient(source, code)) total += mass.mass(source);
  }
  return total;
}

std::vector<MassEquation> emit_equations(const TransferTable& table,
                                         bool minimize) {
  const std::size_t m = table.transition_count();
  const auto subsets = canonical_subsets(table.place_count());

  // target -> source -> on-set codes
  std::map<PlaceSet, std::map<PlaceSet, std::vector<std::uint64_t>>> grouped;
  for (const PlaceSet& x : subsets) {
    for (std::uint64_t code : table.admissible_codes()) {
      grouped[*table.cell(x, code)][x].push_back(code);
    }
  }

  std::vector<MassEquation> equations;
  equations.reserve(grouped.size());
  for (const auto& [target, by_source] : grouped) {
    MassEquation eq{target, m, {}};
    for (const auto& [source, codes] : by_source) {
      if (minimize) {
        for (const Cube& cube : minimize_sop(codes, m)) {
          eq.terms.push_back({cube, source});
        }
      } else {
        for (std::uint64_t code : codes) {
          eq.terms.push_back({Cube::minterm(code, m), source});
        }
      }
    }
    equations.push_back(std::move(eq));
  }
  return equations;
}

bool equations_semantically_equal(const MassEquation& a, const MassEquation& b) {
  if (a.variable_count != b.variable_count) {
    throw DimensionError("equations range over " +
                         std::to_string(a.variable_count) + " and " +
                         std::to_string(b.variable_count) + " variables");
  }
  if (!(a.target == b.target)) return false;
  std::set<PlaceSet> sources;
  for (const auto& s : a.sources()) sources.insert(s);
  for (const auto& s : b.sources()) sources.insert(s);
  const std::uint64_t assignments = std::uint64_t{1} << a.variable_count;
  for (const PlaceSet& source : sources) {
    for (std::uint64_t code = 0; code < assignments; ++code) {
      if (a.coefficient(source, code) != b.coefficient(source, code)) {
        return false;
      }
    }
  }
  return true;
}

// --- rendering --------------------------------------------------------------

std::string render_equation(const MassEquation& equation) {
  std::string out = "M" + equation.target.index_label() + "(k+1) =";
  bool first_source = true;
  for (const PlaceSet& source : equation.sources()) {
    std::vector<Cube> cubes;
    for (const auto& term : equation.terms) {
      if (term.source == source) cubes.push_back(term.cube);
    }
    out += first_source ? " " : " + ";
    first_source = false;
    const std::string label = "M" + source.index_label();
    if (cubes.size() == 1) {
      out += cubes.front().is_tautology()
                 ? label
                 : cubes.front().to_string(equation.variable_count) + "*" + label;
      continue;
    }
    out += "(";
    for (std::size_t k = 0; k < cubes.size(); ++k) {
      if (k > 0) out += " + ";
      out += cubes[k].to_string(equation.variable_count);
    }
    out += ")*" + label;
  }
  if (first_source) out += " 0";
  return out;
}

void write_equations(std::ostream& out, const std::vector<MassEquation>& eqs) {
  out << kEquationFormatHeader << '\n';
  for (const auto& eq : eqs) out << render_equation(eq) << '\n';
}

// --- parsing ----------------------------------------------------------------

namespace {

/// One expanded product: a cube and at most one mass atom.
struct Product {
  Cube cube;
  std::optional<PlaceSet> source;
};

class EquationParser {
 public:
  EquationParser(std::string_view text, std::size_t variables)
      : text_(text), variables_(variables) {}

  MassEquation parse() {
    skip_space();
    expect('M');
    const PlaceSet target = parse_label();
    skip_space();
    expect_word("(k+1)");
    skip_space();
    expect('=');
    std::vector<Product> sum = parse_sum();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected trailing input");

    MassEquation eq{target, variables_, {}};
    for (auto& product : sum) {
      if (!product.source) fail("term without a mass factor");
      eq.terms.push_back({product.cube, *product.source});
    }
    return eq;
  }

 private:
  std::vector<Product> parse_sum() {
    std::vector<Product> out = parse_product();
    for (;;) {
      skip_space();
      if (!peek('+')) return out;
      ++pos_;
      auto more = parse_product();
      out.insert(out.end(), more.begin(), more.end());
    }
  }

  std::vector<Product> parse_product() {
    std::vector<Product> acc = parse_factor();
    for (;;) {
      skip_space();
      if (!peek('*') && !peek('.')) return acc;
      ++pos_;
      acc = multiply(acc, parse_factor());
    }
  }

  std::vector<Product> multiply(const std::vector<Product>& lhs,
                                const std::vector<Product>& rhs) {
    std::vector<Product> out;
    for (const auto& a : lhs) {
      for (const auto& b : rhs) {
        const std::uint64_t shared = a.cube.care & b.cube.care;
        if ((a.cube.value & shared) != (b.cube.value & shared)) continue;
        if (a.source && b.source) fail("product of two mass factors");
        out.push_back({{a.cube.care | b.cube.care, a.cube.value | b.cube.value},
                       a.source ? a.source : b.source});
      }
    }
    return out;
  }

  std::vector<Product> parse_factor() {
    skip_space();
    if (peek('(')) {
      ++pos_;
      auto inner = parse_sum();
      skip_space();
      expect(')');
      return inner;
    }
    if (peek('1')) {
      ++pos_;
      return {Product{}};
    }
    bool negated = false;
    if (peek('!')) {
      negated = true;
      ++pos_;
      skip_space();
    }
    if (peek('r')) {
      ++pos_;
      const std::size_t index = parse_number();
      if (index == 0 || index > variables_) {
        fail("receptivity r" + std::to_string(index) + " out of range");
      }
      const std::uint64_t bit = std::uint64_t{1} << (variables_ - index);
      return {Product{{bit, negated ? 0 : bit}, std::nullopt}};
    }
    if (negated) fail("'!' must precede a receptivity");
    if (peek('M')) {
      ++pos_;
      const PlaceSet source = parse_label();
      skip_space();
      if (text_.substr(pos_).starts_with("(k)")) pos_ += 3;
      return {Product{Cube::tautology(), source}};
    }
    fail("expected a receptivity, a mass M{...} or '('");
  }

  PlaceSet parse_label() {
    expect('{');
    std::vector<std::size_t> places;
    for (;;) {
      skip_space();
      const std::size_t index = parse_number();
      if (index == 0) fail("place labels are one-based");
      places.push_back(index - 1);
      skip_space();
      if (peek(',')) {
        ++pos_;
        continue;
      }
      expect('}');
      return PlaceSet(places);
    }
  }

  std::size_t parse_number() {
    const std::size_t start = pos_;
    std::size_t value = 0;
    while (pos_ < text_.size() &&
           std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      value = value * 10 + static_cast<std::size_t>(text_[pos_] - '0');
      ++pos_;
      if (value > 1000000) fail("number too large");
    }
    if (pos_ == start) fail("expected a number");
    return value;
  }

  void skip_space() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
  }
  bool peek(char c) const { return pos_ < text_.size() && text_[pos_] == c; }
  void expect(char c) {
    if (!peek(c)) fail(std::string("expected '") + c + "'");
    ++pos_;
  }
  void expect_word(std::string_view word) {
    if (!text_.substr(pos_).starts_with(word)) {
      fail("expected '" + std::string(word) + "'");
    }
    pos_ += word.size();
  }
  [[noreturn]] void fail(const std::string& message) const {
    throw ParseError(1, pos_ + 1, message);
  }

  std::string_view text_;
  std::size_t variables_;
  std::size_t pos_ = 0;
};

}  // namespace

MassEquation parse_equation(std::string_view text, std::size_t variables) {
  if (variables == 0 || variables > 63) {
    throw DimensionError("equations support 1..63 receptivity variables");
  }
  return EquationParser(text, variables).parse();
}

}  // namespace evinet
