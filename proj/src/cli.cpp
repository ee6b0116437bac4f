#include "evinet/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

#include "evinet/dsl.hpp"
#include "evinet/engine.hpp"
#include "evinet/error.hpp"
#include "evinet/symbolic.hpp"

namespace evinet::cli {

namespace {

constexpr std::size_t kDefaultMaxPlaces = 16;

/// Thrown after a diagnostic has been written; unwinds to the exit status.
struct Failed {};

std::string read_file(const std::string& path, std::ostream& err) {
  std::ifstream file(path, std::ios::binary);
  if (!file) {
    err << "error: cannot read '" << path << "'\n";
    throw Failed{};
  }
  std::ostringstream buffer;
  buffer << file.rdbuf();
  return buffer.str();
}

void report_parse_error(const std::string& path, const ParseError& e,
                        std::ostream& err) {
  for (const auto& d : e.diagnostics()) {
    err << "error: " << path << ":" << d.line;
    if (d.column > 0) err << ":" << d.column;
    err << ": " << d.message << "\n";
  }
}

PetriNet load_net(const std::string& path, std::ostream& err) {
  const std::string text = read_file(path, err);
  try {
    return parse_net(text);
  } catch (const ParseError& e) {
    report_parse_error(path, e, err);
    throw Failed{};
  }
}

std::string format_conflict(const ConflictSet& c, const PetriNet& net) {
  std::string s = net.place_names()[c.place] + ": ";
  for (std::size_t k = 0; k < c.transitions.size(); ++k) {
    if (k > 0) s += ",";
    s += net.transition_names()[c.transitions[k]];
  }
  return s;
}

void print_conflicts(const PetriNet& net, std::ostream& out) {
  const auto conflicts = detect_conflicts(net);
  if (conflicts.empty()) {
    out << "no conflicts\n";
    return;
  }
  for (const auto& c : conflicts) out << "conflict " << format_conflict(c, net) << "\n";
}

std::size_t resolve_max_places(std::optional<std::size_t> flag,
                               const Environment& env, std::ostream& err) {
  if (flag) return *flag;
  if (env.max_places) {
    try {
      std::size_t used = 0;
      const unsigned long value = std::stoul(*env.max_places, &used);
      if (used == env.max_places->size()) return value;
    } catch (const std::exception&) {
    }
    err << "error: EVINET_MAX_PLACES must be a non-negative integer, got '"
        << *env.max_places << "'\n";
    throw Failed{};
  }
  return kDefaultMaxPlaces;
}

TableLimits limits_for(std::size_t max_places) {
  return {max_places, std::max(kDefaultMaxPlaces, max_places)};
}

class RecordWriter {
 public:
  RecordWriter(const PetriNet& net, OutputFormat format, std::ostream& out)
      : net_(net), format_(format), out_(out) {}

  void write(std::size_t step, const Receptivity* r, const MassVector& mass) {
    if (format_ == OutputFormat::kLog) {
      nlohmann::ordered_json record;
      record["step"] = step;
      record["r"] = r ? nlohmann::ordered_json(r->to_string()) : nullptr;
      nlohmann::ordered_json masses = nlohmann::ordered_json::object();
      for (const auto& [set, value] : mass.focal_elements()) {
        masses[set.to_string(net_.place_names())] = value;
      }
      record["mass"] = std::move(masses);
      out_ << record.dump() << '\n';
    } else {
      out_ << step << '\t' << (r ? r->to_string() : "-") << '\t';
      if (format_ == OutputFormat::kDense) {
        out_ << serialize_mass_dense(mass, net_.place_count());
      } else {
        out_ << serialize_mass(mass, net_.place_names()).sparse;
      }
      out_ << '\n';
    }
    out_.flush();
  }

 private:
  const PetriNet& net_;
  OutputFormat format_;
  std::ostream& out_;
};

}  // namespace

int cmd_validate(const std::string& net_path, std::ostream& out,
                 std::ostream& err) {
  try {
    const std::string text = read_file(net_path, err);
    NetDocument doc;
    try {
      doc = parse_document(text);
    } catch (const ParseError& e) {
      report_parse_error(net_path, e, err);
      return 1;
    }
    const PetriNet net = to_net(doc);
    out << "net " << net.name() << ": " << net.place_count() << " places, "
        << net.transition_count() << " transitions\n";
    const auto report = validate_net(net);
    if (!report.ok()) {
      out << "invalid\n";
      for (const auto& v : report.violations) out << "  " << v.message << "\n";
      err << "error: " << net_path << ": net violates "
          << report.violations.size() << " structural constraint(s)\n";
      return 1;
    }
    out << "ok\n";
    print_conflicts(net, out);
    return 0;
  } catch (const Failed&) {
    return 1;
  }
}

int cmd_conflicts(const std::string& net_path, std::ostream& out,
                  std::ostream& err) {
  try {
    print_conflicts(load_net(net_path, err), out);
    return 0;
  } catch (const Failed&) {
    return 1;
  }
}

int cmd_run(const RunConfig& config, std::istream& in, std::ostream& out,
            std::ostream& err) {
  try {
    const PetriNet net = load_net(config.net_path, err);
    if (config.format == OutputFormat::kDense &&
        net.place_count() > kMaxDensePlaces) {
      err << "error: dense output needs at most " << kMaxDensePlaces
          << " places, net has " << net.place_count() << "\n";
      return 1;
    }

    std::optional<MassVector> mass;
    try {
      mass = config.initial == "ignorance" ? ignorance_mass(net)
                                           : parse_mass(config.initial, net);
    } catch (const ParseError& e) {
      for (const auto& d : e.diagnostics()) {
        err << "error: --initial column " << d.column << ": " << d.message << "\n";
      }
      return 1;
    } catch (const Error& e) {
      err << "error: --initial: " << e.what() << "\n";
      return 1;
    }

    std::ifstream file;
    std::istream* input = &in;
    if (config.input != "-") {
      file.open(config.input, std::ios::binary);
      if (!file) {
        err << "error: cannot read '" << config.input << "'\n";
        return 1;
      }
      input = &file;
    }
    const std::string source = config.input == "-" ? "<stdin>" : config.input;

    RecordWriter writer(net, config.format, out);
    writer.write(0, nullptr, *mass);
    std::string line;
    std::size_t line_number = 0;
    std::size_t step_index = 0;
    while (std::getline(*input, line)) {
      ++line_number;
      try {
        const auto r =
            parse_receptivity_line(line, net.transition_count(), line_number);
        if (!r) continue;
        mass = step(net, *mass, *r);
        writer.write(++step_index, &*r, *mass);
      } catch (const ParseError& e) {
        report_parse_error(source, e, err);
        return 1;
      } catch (const Error& e) {
        err << "error: " << source << ":" << line_number << ": " << e.what()
            << "\n";
        return 1;
      }
    }
    return 0;
  } catch (const Failed&) {
    return 1;
  }
}

int cmd_table(const std::string& net_path, const std::string& output_path,
              std::size_t max_places, std::ostream& out, std::ostream& err) {
  try {
    const PetriNet net = load_net(net_path, err);
    const TransferTable table = build_transfer_table(net, limits_for(max_places));
    std::size_t rows = 0;
    if (output_path == "-") {
      // stdout carries the CSV itself; the row count is only reported when
      // writing to a file.
      write_table_csv(out, table);
      return 0;
    }
    std::ofstream file(output_path, std::ios::binary);
    if (!file) {
      err << "error: cannot write '" << output_path << "'\n";
      return 1;
    }
    rows = write_table_csv(file, table);
    file.close();
    if (!file) {
      err << "error: failed writing '" << output_path << "'\n";
      return 1;
    }
    out << rows << " rows\n";
    return 0;
  } catch (const CapError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const Failed&) {
    return 1;
  }
}

int cmd_equations(const std::string& net_path, bool minimize,
                  std::size_t max_places, std::ostream& out, std::ostream& err) {
  try {
    const PetriNet net = load_net(net_path, err);
    const TransferTable table = build_transfer_table(net, limits_for(max_places));
    write_equations(out, emit_equations(table, minimize));
    return 0;
  } catch (const CapError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const Failed&) {
    return 1;
  }
}

int main(const std::vector<std::string>& args, std::istream& in,
         std::ostream& out, std::ostream& err, const Environment& env) {
  CLI::App app{"Evidential state estimation for single-token Petri nets",
               "evinet"};
  app.require_subcommand(1);

  std::string net_path;
  std::string output_path = "-";
  bool minimize = false;
  std::optional<std::size_t> max_places;
  RunConfig run_config;

  auto add_net = [&](CLI::App* sub) {
    sub->add_option("--net", net_path, "Net document")->required();
  };
  auto add_cap = [&](CLI::App* sub) {
    sub->add_option("--max-places", max_places,
                    "Largest place count for table building (default 16, "
                    "or EVINET_MAX_PLACES)");
  };

  auto* validate = app.add_subcommand("validate", "Check the net structure");
  add_net(validate);
  auto* conflicts = app.add_subcommand("conflicts", "List conflict sets");
  add_net(conflicts);

  auto* run = app.add_subcommand("run", "Estimate the state from a receptivity stream");
  add_net(run);
  run->add_option("--initial", run_config.initial,
                  "'ignorance' or a mass record such as '{P1,P2}:1'");
  run->add_option("--input", run_config.input, "Receptivity stream path, '-' for stdin");
  run->add_option("--format", run_config.format, "sparse, dense or log")
      ->transform(CLI::CheckedTransformer(
          std::map<std::string, OutputFormat>{{"sparse", OutputFormat::kSparse},
                                              {"dense", OutputFormat::kDense},
                                              {"log", OutputFormat::kLog}}));

  auto* table = app.add_subcommand("table", "Export the transfer table as CSV");
  add_net(table);
  table->add_option("--output", output_path, "CSV path, '-' for stdout");
  add_cap(table);

  auto* equations = app.add_subcommand("equations", "Print the mass update equations");
  add_net(equations);
  equations->add_flag("--minimize", minimize, "Reduce coefficients to prime implicants");
  add_cap(equations);

  std::vector<std::string> argv_storage{"evinet"};
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_storage) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    // --help and --version surface as "errors" with a zero exit code.
    return app.exit(e, out, err);
  }

  try {
    if (validate->parsed()) return cmd_validate(net_path, out, err);
    if (conflicts->parsed()) return cmd_conflicts(net_path, out, err);
    if (run->parsed()) {
      run_config.net_path = net_path;
      return cmd_run(run_config, in, out, err);
    }
    if (table->parsed()) {
      return cmd_table(net_path, output_path, resolve_max_places(max_places, env, err),
                       out, err);
    }
    if (equations->parsed()) {
      return cmd_equations(net_path, minimize,
                           resolve_max_places(max_places, env, err), out, err);
    }
  } catch (const Failed&) {
    return 1;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}

}  // namespace evinet::cli
