#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "evinet/mass.hpp"
#include "evinet/net.hpp"

namespace evinet {

/// Header comment written by every serializer and skipped by the parsers.
inline constexpr const char* kFormatHeader = "# format: evinet v1";

/// Dense mass output is limited to this many places (2^10 - 1 columns).
inline constexpr std::size_t kMaxDensePlaces = 10;

struct ArcDecl {
  std::string source;
  std::string target;
  std::size_t line = 0;
  std::size_t column = 0;         // of the source identifier
  std::size_t target_column = 0;  // of the target identifier
};

/// Syntactic content of a net document:
///
///   # format: evinet v1
///   net fig1
///   places: P1, P2, P3
///   transitions: t1, t2, t3
///   arc: P1 -> t1
///   arc: t1 -> P2
///
/// `#` starts a comment anywhere on a line.
struct NetDocument {
  std::string name;
  std::vector<std::string> places;
  std::vector<std::string> transitions;
  std::vector<ArcDecl> arcs;
  std::size_t places_line = 0;
  std::size_t transitions_line = 0;
};

/// Syntax, declarations, undeclared identifiers and duplicate arcs. Does not
/// check the net structure. Throws ParseError.
NetDocument parse_document(std::string_view text);

/// Builds the (possibly invalid) net described by a document.
PetriNet to_net(const NetDocument& document);

/// parse_document + to_net, then rejects structural violations with the
/// source line of the offending transition. The result is always valid.
PetriNet parse_net(std::string_view text);

/// Canonical document: declaration order kept, arcs grouped per transition
/// with the input arc before the output arc.
std::string serialize_net(const PetriNet& net);

/// One receptivity per non-blank, non-comment line; tokens are 0/1 separated
/// by spaces or commas. Throws ParseError on wrong arity or a non-binary token.
std::vector<Receptivity> parse_receptivity_stream(std::string_view text,
                                                  std::size_t transitions);

/// Single line of a receptivity stream; nullopt for blank and comment lines.
std::optional<Receptivity> parse_receptivity_line(std::string_view line,
                                                  std::size_t transitions,
                                                  std::size_t line_number);

/// Shortest decimal text that reads back to the same double ("1", "0.5").
std::string format_mass_value(double value);

struct MassRecord {
  /// "{P1}:0.5 {P2}:0.5", focal sets in canonical order.
  std::string sparse;
  /// "[0,0,0,0,1,0,0]" in canonical subset order; only for n <= 10.
  std::optional<std::string> dense;
};

MassRecord serialize_mass(const MassVector& mass,
                          const std::vector<std::string>& place_names);

/// Dense form only; throws DimensionError above kMaxDensePlaces.
std::string serialize_mass_dense(const MassVector& mass, std::size_t place_count);

/// Reads a sparse record ("{P1,P3}:1") or a dense vector ("[0,...,1]")
/// against the net's place names. Throws ParseError / InvalidMassError.
MassVector parse_mass(std::string_view text, const PetriNet& net);

}  // namespace evinet
