#include "evinet/dsl.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <map>
#include <set>
#include <system_error>

#include "evinet/error.hpp"

namespace evinet {

namespace {

struct Line {
  std::size_t number;
  std::string_view text;  // comment stripped, not trimmed
};

std::vector<Line> split_lines(std::string_view text) {
  std::vector<Line> lines;
  std::size_t number = 1;
  while (true) {
    const auto end = text.find('\n');
    std::string_view line = text.substr(0, end);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    lines.push_back({number++, line});
    if (end == std::string_view::npos) break;
    text.remove_prefix(end + 1);
  }
  return lines;
}

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

bool blank(std::string_view s) {
  return std::all_of(s.begin(), s.end(), is_space);
}

bool is_identifier(std::string_view s) {
  if (s.empty()) return false;
  if (!std::isalpha(static_cast<unsigned char>(s[0])) && s[0] != '_') return false;
  return std::all_of(s.begin() + 1, s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  });
}

/// Token with its one-based column in the original line.
struct Token {
  std::string_view text;
  std::size_t column;
};

/// Splits `s` (starting at `offset` within the line) on whitespace and
/// commas.
std::vector<Token> tokenize(std::string_view s, std::size_t offset) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (is_space(s[i]) || s[i] == ',')) ++i;
    const std::size_t start = i;
    while (i < s.size() && !is_space(s[i]) && s[i] != ',') ++i;
    if (i > start) tokens.push_back({s.substr(start, i - start), offset + start + 1});
  }
  return tokens;
}

std::size_t first_non_space(std::string_view s) {
  std::size_t i = 0;
  while (i < s.size() && is_space(s[i])) ++i;
  return i;
}

}  // namespace

// --- net documents ----------------------------------------------------------

NetDocument parse_document(std::string_view text) {
  NetDocument doc;
  std::vector<Diagnostic> errors;
  bool have_name = false;
  std::map<std::string, std::pair<std::size_t, std::size_t>> declared;  // name -> line, col
  std::set<std::string> place_names;
  std::set<std::string> transition_names;

  auto declare = [&](const std::vector<Token>& tokens, std::size_t line,
                     std::vector<std::string>& into, std::set<std::string>& kind) {
    for (const auto& tok : tokens) {
      const std::string name(tok.text);
      if (!is_identifier(name)) {
        errors.push_back({line, tok.column, "invalid identifier '" + name + "'"});
        continue;
      }
      if (auto it = declared.find(name); it != declared.end()) {
        errors.push_back({line, tok.column,
                          "'" + name + "' already declared at line " +
                              std::to_string(it->second.first)});
        continue;
      }
      declared[name] = {line, tok.column};
      kind.insert(name);
      into.push_back(name);
    }
  };

  for (const auto& [number, raw] : split_lines(text)) {
    if (blank(raw)) continue;
    const std::size_t indent = first_non_space(raw);
    std::string_view body = raw.substr(indent);
    const auto colon = body.find(':');
    const std::string_view keyword =
        colon == std::string_view::npos ? std::string_view{} : body.substr(0, colon);

    if (body.starts_with("net") && (body.size() == 3 || is_space(body[3]))) {
      const auto tokens = tokenize(body.substr(3), indent + 3);
      if (have_name) {
        errors.push_back({number, indent + 1, "duplicate 'net' header"});
      } else if (tokens.size() != 1 || !is_identifier(tokens[0].text)) {
        errors.push_back({number, indent + 1, "expected 'net <name>'"});
      } else {
        doc.name = std::string(tokens[0].text);
        have_name = true;
      }
    } else if (keyword == "places" || keyword == "transitions") {
      const bool places = keyword == "places";
      std::size_t& seen_line = places ? doc.places_line : doc.transitions_line;
      if (seen_line != 0) {
        errors.push_back({number, indent + 1,
                          "duplicate '" + std::string(keyword) + ":' section"});
        continue;
      }
      seen_line = number;
      const auto tokens = tokenize(body.substr(colon + 1), indent + colon + 1);
      if (places) {
        declare(tokens, number, doc.places, place_names);
      } else {
        declare(tokens, number, doc.transitions, transition_names);
      }
    } else if (keyword == "arc") {
      const std::string_view rest = body.substr(colon + 1);
      const auto arrow = rest.find("->");
      if (arrow == std::string_view::npos) {
        errors.push_back({number, indent + colon + 2, "expected 'arc: A -> B'"});
        continue;
      }
      const auto lhs = tokenize(rest.substr(0, arrow), indent + colon + 1);
      const auto rhs = tokenize(rest.substr(arrow + 2), indent + colon + 1 + arrow + 2);
      if (lhs.size() != 1 || rhs.size() != 1) {
        errors.push_back({number, indent + colon + 2, "expected 'arc: A -> B'"});
        continue;
      }
      doc.arcs.push_back({std::string(lhs[0].text), std::string(rhs[0].text),
                          number, lhs[0].column, rhs[0].column});
    } else {
      const auto tokens = tokenize(body, indent);
      const std::string word = tokens.empty() ? std::string(body) : std::string(tokens.front().text);
      errors.push_back({number, indent + 1, "unknown directive '" + word + "'"});
    }
  }

  if (!have_name) errors.push_back({1, 0, "missing 'net <name>' header"});
  if (doc.places_line == 0) errors.push_back({1, 0, "missing 'places:' section"});
  if (doc.transitions_line == 0) {
    errors.push_back({1, 0, "missing 'transitions:' section"});
  }

  std::set<std::pair<std::string, std::string>> seen_arcs;
  for (const auto& arc : doc.arcs) {
    bool ok = true;
    if (!declared.count(arc.source)) {
      errors.push_back({arc.line, arc.column,
                        "undeclared identifier '" + arc.source + "'"});
      ok = false;
    }
    if (!declared.count(arc.target)) {
      errors.push_back({arc.line, arc.target_column,
                        "undeclared identifier '" + arc.target + "'"});
      ok = false;
    }
    if (!ok) continue;
    const bool p2t = place_names.count(arc.source) && transition_names.count(arc.target);
    const bool t2p = transition_names.count(arc.source) && place_names.count(arc.target);
    if (!p2t && !t2p) {
      errors.push_back({arc.line, arc.column,
                        "arc '" + arc.source + " -> " + arc.target +
                            "' must connect a place and a transition"});
      continue;
    }
    if (!seen_arcs.insert({arc.source, arc.target}).second) {
      errors.push_back({arc.line, arc.column,
                        "duplicate arc '" + arc.source + " -> " + arc.target + "'"});
    }
  }

  if (!errors.empty()) {
    std::stable_sort(errors.begin(), errors.end(),
                     [](const Diagnostic& a, const Diagnostic& b) {
                       return a.line < b.line;
                     });
    throw ParseError(std::move(errors));
  }
  return doc;
}

PetriNet to_net(const NetDocument& doc) {
  IncidenceMatrix pre(doc.places.size(), doc.transitions.size());
  IncidenceMatrix post(doc.places.size(), doc.transitions.size());
  auto index_of = [](const std::vector<std::string>& names, const std::string& n) {
    return static_cast<std::size_t>(std::find(names.begin(), names.end(), n) -
                                    names.begin());
  };
  for (const auto& arc : doc.arcs) {
    const std::size_t sp = index_of(doc.places, arc.source);
    if (sp < doc.places.size()) {
      pre(sp, index_of(doc.transitions, arc.target)) = 1;
    } else {
      post(index_of(doc.places, arc.target), index_of(doc.transitions, arc.source)) = 1;
    }
  }
  return PetriNet(doc.places, doc.transitions, std::move(pre), std::move(post),
                  doc.name);
}

PetriNet parse_net(std::string_view text) {
  const NetDocument doc = parse_document(text);
  PetriNet net = to_net(doc);
  if (net.valid()) return net;

  // Point each structural violation at the first arc touching its
  // transition, falling back to the section that declares it.
  std::vector<Diagnostic> errors;
  for (const auto& v : net.report().violations) {
    std::size_t line = v.kind == ViolationKind::kNoPlaces ? doc.places_line
                                                          : doc.transitions_line;
    std::size_t column = 0;
    if (v.column) {
      const std::string& t = doc.transitions[*v.column];
      for (const auto& arc : doc.arcs) {
        if (arc.source == t || arc.target == t) {
          line = arc.line;
          column = arc.column;
          break;
        }
      }
    }
    errors.push_back({line, column, v.message});
  }
  throw ParseError(std::move(errors));
}

std::string serialize_net(const PetriNet& net) {
  require_valid_net(net);
  std::string out = std::string(kFormatHeader) + "\n";
  out += "net " + net.name() + "\n";
  auto list = [](const std::vector<std::string>& names) {
    std::string s;
    for (std::size_t k = 0; k < names.size(); ++k) {
      if (k > 0) s += ", ";
      s += names[k];
    }
    return s;
  };
  out += "places: " + list(net.place_names()) + "\n";
  out += "transitions: " + list(net.transition_names()) + "\n";
  for (std::size_t t = 0; t < net.transition_count(); ++t) {
    const auto& name = net.transition_names()[t];
    out += "arc: " + net.place_names()[net.input_place(t)] + " -> " + name + "\n";
    out += "arc: " + name + " -> " + net.place_names()[net.output_place(t)] + "\n";
  }
  return out;
}

// --- receptivity streams ----------------------------------------------------

std::optional<Receptivity> parse_receptivity_line(std::string_view line,
                                                  std::size_t transitions,
                                                  std::size_t line_number) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  if (auto hash = line.find('#'); hash != std::string_view::npos) {
    line = line.substr(0, hash);
  }
  if (blank(line)) return std::nullopt;
  const auto tokens = tokenize(line, 0);
  std::vector<bool> bits;
  bits.reserve(tokens.size());
  for (const auto& tok : tokens) {
    if (tok.text != "0" && tok.text != "1") {
      throw ParseError(line_number, tok.column,
                       "non-binary token '" + std::string(tok.text) + "'");
    }
    bits.push_back(tok.text == "1");
  }
  if (bits.size() != transitions) {
    throw ParseError(line_number, 0,
                     "expected " + std::to_string(transitions) +
                         " receptivity bits, found " + std::to_string(bits.size()));
  }
  return Receptivity(std::move(bits));
}

std::vector<Receptivity> parse_receptivity_stream(std::string_view text,
                                                  std::size_t transitions) {
  std::vector<Receptivity> out;
  std::size_t number = 1;
  while (!text.empty()) {
    const auto end = text.find('\n');
    if (auto r = parse_receptivity_line(text.substr(0, end), transitions, number)) {
      out.push_back(std::move(*r));
    }
    if (end == std::string_view::npos) break;
    text.remove_prefix(end + 1);
    ++number;
  }
  return out;
}

// --- mass records -----------------------------------------------------------

std::string format_mass_value(double value) {
  char buf[64];
  const auto result = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, result.ptr);
}

std::string serialize_mass_dense(const MassVector& mass, std::size_t place_count) {
  if (place_count > kMaxDensePlaces) {
    throw DimensionError("dense output is limited to " +
                         std::to_string(kMaxDensePlaces) + " places, net has " +
                         std::to_string(place_count));
  }
  std::string out = "[";
  const auto values = mass.dense(place_count);
  for (std::size_t k = 0; k < values.size(); ++k) {
    if (k > 0) out += ",";
    out += format_mass_value(values[k]);
  }
  return out + "]";
}

MassRecord serialize_mass(const MassVector& mass,
                          const std::vector<std::string>& place_names) {
  MassRecord record;
  for (const auto& [set, value] : mass.focal_elements()) {
    if (!record.sparse.empty()) record.sparse += " ";
    record.sparse += set.to_string(place_names) + ":" + format_mass_value(value);
  }
  if (!place_names.empty() && place_names.size() <= kMaxDensePlaces) {
    record.dense = serialize_mass_dense(mass, place_names.size());
  }
  return record;
}

MassVector parse_mass(std::string_view text, const PetriNet& net) {
  const std::size_t n = net.place_count();
  std::size_t pos = 0;
  auto skip = [&] {
    while (pos < text.size() && is_space(text[pos])) ++pos;
  };
  auto fail = [&](const std::string& message) -> ParseError {
    return ParseError(1, pos + 1, message);
  };
  auto number = [&]() {
    skip();
    double value = 0.0;
    const auto* begin = text.data() + pos;
    const auto result = std::from_chars(begin, text.data() + text.size(), value);
    if (result.ec != std::errc{}) throw fail("expected a number");
    pos += static_cast<std::size_t>(result.ptr - begin);
    return value;
  };

  skip();
  if (pos < text.size() && text[pos] == '[') {
    if (n > 30) throw DimensionError("dense mass input limited to 30 places");
    ++pos;
    const auto subsets = canonical_subsets(n);
    std::vector<std::pair<PlaceSet, double>> entries;
    for (std::size_t k = 0; k < subsets.size(); ++k) {
      if (k > 0) {
        skip();
        if (pos >= text.size() || text[pos] != ',') throw fail("expected ','");
        ++pos;
      }
      entries.emplace_back(subsets[k], number());
    }
    skip();
    if (pos >= text.size() || text[pos] != ']') {
      throw fail("expected ']' after " + std::to_string(subsets.size()) + " values");
    }
    ++pos;
    skip();
    if (pos != text.size()) throw fail("unexpected trailing input");
    return MassVector(entries);
  }

  std::vector<std::pair<PlaceSet, double>> entries;
  std::set<PlaceSet> seen;
  skip();
  while (pos < text.size()) {
    if (text[pos] != '{') throw fail("expected '{'");
    const std::size_t open = pos;
    const auto close = text.find('}', pos);
    if (close == std::string_view::npos) throw fail("unterminated '{'");
    std::vector<std::size_t> members;
    for (const auto& tok : tokenize(text.substr(open + 1, close - open - 1), open + 1)) {
      const auto place = net.find_place(std::string(tok.text));
      if (!place) {
        throw ParseError(1, tok.column,
                         "unknown place '" + std::string(tok.text) + "'");
      }
      members.push_back(*place);
    }
    if (members.empty()) throw fail("empty place set");
    const PlaceSet set(members);
    if (!seen.insert(set).second) {
      throw fail("place set " + set.to_string(net.place_names()) + " listed twice");
    }
    pos = close + 1;
    skip();
    if (pos >= text.size() || text[pos] != ':') throw fail("expected ':'");
    ++pos;
    entries.emplace_back(set, number());
    skip();
  }
  if (entries.empty()) throw fail("empty mass record");
  return MassVector(entries);
}

}  // namespace evinet
