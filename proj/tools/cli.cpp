#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <numeric>
#include <ostream>
#include <sstream>
#include <string_view>

#include "CLI11.hpp"
#include "json.hpp"
#include "tempo_katz/errors.hpp"
#include "tempo_katz/matfun.hpp"
#include "tempo_katz/spectral.hpp"
#include "tempo_katz/temporal_graph.hpp"

namespace tempo_katz::cli {

namespace {

struct Metadata {
  std::vector<std::pair<std::string, std::string>> strings;
  std::vector<std::pair<std::string, double>> numbers;
  std::vector<std::pair<std::string, bool>> flags;
};

TemporalNetwork load_network(const std::string& path, ValidationReport* report = nullptr) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open input '" + path + "'");
  ParsedNetwork parsed = read_temporal_edgelist(in);
  if (report) *report = parsed.report;
  return std::move(parsed.network);
}

CoefficientFunction load_function(const std::string& spec) {
  if (spec == "katz") return CoefficientFunction::resolvent(1.0, 1.0);
  if (spec == "exponential") return CoefficientFunction::exponential();
  constexpr std::string_view prefix = "coeffs:";
  if (spec.starts_with(prefix)) {
    const std::string path = spec.substr(prefix.size());
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open coefficient file '" + path + "'");
    return read_coefficient_file(in, spec);
  }
  throw ValidationError("unknown function '" + spec +
                        "' (expected katz, exponential or coeffs:<path>)");
}

std::string json_number(double value) {
  return std::isfinite(value) ? format_real(value) : "null";
}

void write_csv(std::ostream& out, const Metadata& meta, const std::vector<RankedNode>& ranked) {
  for (const auto& [k, v] : meta.strings) out << "# " << k << '=' << v << '\n';
  for (const auto& [k, v] : meta.numbers) out << "# " << k << '=' << format_real(v) << '\n';
  for (const auto& [k, v] : meta.flags) out << "# " << k << '=' << (v ? "true" : "false") << '\n';
  out << "node,value,rank\n";
  for (const RankedNode& r : ranked) {
    out << r.node << ',' << format_real(r.value) << ',' << r.rank << '\n';
  }
}

// Values are written with the same formatter as CSV rather than through the
// JSON library's own double printer.
void write_json(std::ostream& out, const Metadata& meta, const std::vector<RankedNode>& ranked) {
  out << "{\n  \"metadata\": {";
  bool first = true;
  auto sep = [&] {
    out << (first ? "\n" : ",\n") << "    ";
    first = false;
  };
  for (const auto& [k, v] : meta.strings) {
    sep();
    out << nlohmann::json(k).dump() << ": " << nlohmann::json(v).dump();
  }
  for (const auto& [k, v] : meta.numbers) {
    sep();
    out << nlohmann::json(k).dump() << ": " << json_number(v);
  }
  for (const auto& [k, v] : meta.flags) {
    sep();
    out << nlohmann::json(k).dump() << ": " << (v ? "true" : "false");
  }
  out << "\n  },\n  \"nodes\": [";
  for (std::size_t i = 0; i < ranked.size(); ++i) {
    out << (i == 0 ? "\n" : ",\n") << "    {\"node\": " << ranked[i].node
        << ", \"value\": " << json_number(ranked[i].value) << ", \"rank\": " << ranked[i].rank
        << '}';
  }
  out << "\n  ]\n}\n";
}

// Writes to path.tmp and renames, so a failed run never leaves a partial file.
void emit(const RunConfig& config, std::ostream& out, const std::string& text) {
  if (!config.output) {
    out << text;
    return;
  }
  const std::filesystem::path target(*config.output);
  std::filesystem::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream file(tmp, std::ios::binary | std::ios::trunc);
    if (!file) throw ValidationError("cannot write '" + tmp.string() + "'");
    file << text;
    file.flush();
    if (!file) throw ValidationError("write to '" + tmp.string() + "' failed");
  }
  std::filesystem::rename(tmp, target);
}

int run_rank(const RunConfig& config, std::ostream& out, std::ostream& err) {
  const TemporalNetwork net = load_network(config.input);
  const CoefficientFunction f = load_function(config.function);
  if (!(config.alpha > 0.0) || !std::isfinite(config.alpha)) {
    throw ValidationError("--alpha must be a positive finite number");
  }
  if (!(config.tol > 0.0)) throw ValidationError("--tol must be positive");

  CentralityOptions options;
  options.force = config.force;
  options.series.tol = config.tol;

  const AlphaBound bound = alpha_bound(net, config.mode, options.power);
  const double limit = std::isinf(f.radius()) || std::isinf(bound.ell)
                           ? std::numeric_limits<double>::infinity()
                           : f.radius() * bound.ell;
  if (!bound.converged && !config.force) {
    err << "error: spectral radius estimate did not converge; rerun with --force to skip "
           "the check\n";
    return kNumericalFailure;
  }
  if (!(config.alpha < limit) && !config.force) {
    err << "error: alpha = " << format_real(config.alpha)
        << " is outside the admissible interval (0, " << format_real(limit) << ") for mode "
        << to_string(config.mode) << " and function " << f.name()
        << "; use --force to compute anyway\n";
    return kAlphaOutOfRange;
  }

  CentralityVector result;
  std::string path = "edge-level";
  const auto& resolvent = f.resolvent_params();
  const bool fast_mode = config.mode == Mode::kStandard || config.mode == Mode::kNbtSpace;
  const double scaled_alpha = resolvent ? config.alpha * resolvent->delta : 0.0;
  if (config.measure == Measure::kTotalCommunicability && resolvent && fast_mode &&
      !config.no_fastpath && !(config.mode == Mode::kNbtSpace && scaled_alpha == 1.0)) {
    // gamma / (1 - delta z) weighs a length-r walk by gamma (alpha delta)^r.
    result = config.mode == Mode::kStandard
                 ? dynamic_katz_node_level(net, scaled_alpha, options)
                 : nbt_space_katz_node_level(net, scaled_alpha, options);
    result.values *= resolvent->gamma;
    result.alpha = config.alpha;
    result.function = f.name();
    path = "node-level";
  } else if (config.measure == Measure::kTotalCommunicability) {
    result = temporal_f_total_communicability(net, config.alpha, f, config.mode, options);
  } else {
    result = temporal_f_subgraph_centrality(net, config.alpha, f, config.mode, options);
  }
  if (!result.values.allFinite()) {
    err << "error: centrality values are not finite (series diverged)\n";
    return kNumericalFailure;
  }

  Metadata meta;
  meta.strings = {{"mode", std::string(to_string(config.mode))},
                  {"function", f.name()},
                  {"measure", std::string(to_string(config.measure))},
                  {"path", path}};
  meta.numbers = {{"alpha", config.alpha},
                  {"ell", bound.ell},
                  {"alpha_limit", limit},
                  {"nodes", static_cast<double>(net.num_nodes())},
                  {"snapshots", static_cast<double>(net.num_snapshots())},
                  {"edges", static_cast<double>(net.num_edges())}};
  meta.flags = {{"truncated", result.truncated},
                {"forced", config.force},
                {"bound_converged", bound.converged}};

  std::ostringstream text;
  const auto ranked = dense_ranking(result.values);
  if (config.format == OutputFormat::kCsv) {
    write_csv(text, meta, ranked);
  } else {
    write_json(text, meta, ranked);
  }
  emit(config, out, text.str());
  if (result.truncated) err << "warning: series truncated before reaching tolerance\n";
  return kOk;
}

int run_check_alpha(const RunConfig& config, std::ostream& out, std::ostream& err) {
  const TemporalNetwork net = load_network(config.input);
  const AlphaBound bound = alpha_bound(net, config.mode);
  std::ostringstream text;
  text << "mode=" << to_string(config.mode) << '\n';
  text << "ell=" << format_real(bound.ell) << '\n';
  text << "converged=" << (bound.converged ? "true" : "false") << '\n';
  text << "snapshot,timestamp,rho,lambda\n";
  for (std::size_t tau = 0; tau < bound.per_snapshot.size(); ++tau) {
    const SnapshotRadii& r = bound.per_snapshot[tau];
    text << tau << ',' << net.timestamps()[tau] << ',' << format_real(r.rho) << ','
         << format_real(r.lambda) << '\n';
  }
  emit(config, out, text.str());
  if (!bound.converged) {
    err << "error: spectral radius estimate did not converge\n";
    return kNumericalFailure;
  }
  return kOk;
}

int run_validate(const RunConfig& config, std::ostream& out) {
  ValidationReport report;
  const TemporalNetwork net = load_network(config.input, &report);
  std::ostringstream text;
  text << "nodes=" << net.num_nodes() << '\n'
       << "snapshots=" << net.num_snapshots() << '\n'
       << "edges=" << net.num_edges() << '\n'
       << "duplicates_collapsed=" << report.duplicates_collapsed << '\n'
       << "snapshot,timestamp,edges\n";
  for (std::size_t tau = 0; tau < net.num_snapshots(); ++tau) {
    text << tau << ',' << net.timestamps()[tau] << ',' << net.snapshot(tau).size() << '\n';
  }
  emit(config, out, text.str());
  return kOk;
}

int run_dump(const RunConfig& config, std::ostream& out) {
  const TemporalNetwork net = load_network(config.input);
  const std::string& which = config.matrix;
  auto need_tau = [&]() -> std::size_t {
    if (!config.tau) throw ValidationError("matrix '" + which + "' needs --tau");
    if (*config.tau >= net.num_snapshots()) {
      throw ValidationError("--tau " + std::to_string(*config.tau) + " out of range [0, " +
                            std::to_string(net.num_snapshots()) + ")");
    }
    return *config.tau;
  };
  auto need_tau2 = [&]() -> std::size_t {
    if (!config.tau2) throw ValidationError("matrix '" + which + "' needs --tau2");
    if (*config.tau2 >= net.num_snapshots()) throw ValidationError("--tau2 out of range");
    return *config.tau2;
  };

  SparseMatrix m;
  if (which == "A") {
    m = adjacency_matrix(net, need_tau());
  } else if (which == "L" || which == "R") {
    const auto st = config.tau
                        ? source_target_matrices(net.snapshot(need_tau()), net.num_nodes())
                        : global_source_target(net);
    m = which == "L" ? st.source : st.target;
  } else if (which == "W") {
    m = line_graph_matrix(net.snapshot(need_tau()), net.num_nodes());
  } else if (which == "B") {
    m = hashimoto_matrix(net.snapshot(need_tau()), net.num_nodes());
  } else if (which == "W-cross" || which == "B-cross") {
    const std::size_t t1 = need_tau();
    const std::size_t t2 = need_tau2();
    if (t1 >= t2) throw ValidationError("cross blocks need --tau < --tau2");
    m = which == "W-cross" ? cross_transition(net, t1, t2) : cross_hashimoto(net, t1, t2);
  } else if (which == "M") {
    m = global_transition(net, config.mode);
  } else {
    throw ValidationError("unknown matrix '" + which +
                          "' (A, L, R, W, B, W-cross, B-cross, M)");
  }
  std::ostringstream text;
  write_coordinate(text, m);
  emit(config, out, text.str());
  return kOk;
}

}  // namespace

std::vector<RankedNode> dense_ranking(const Vector& values) {
  std::vector<RankedNode> ranked(static_cast<std::size_t>(values.size()));
  for (int i = 0; i < values.size(); ++i) {
    ranked[static_cast<std::size_t>(i)] = {static_cast<NodeId>(i), values[i], 0};
  }
  std::stable_sort(ranked.begin(), ranked.end(), [](const RankedNode& a, const RankedNode& b) {
    return a.value > b.value;
  });
  std::size_t rank = 0;
  for (std::size_t k = 0; k < ranked.size(); ++k) {
    if (k == 0 || ranked[k].value != ranked[k - 1].value) ++rank;
    ranked[k].rank = rank;
  }
  return ranked;
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    switch (config.command) {
      case Command::kRank: return run_rank(config, out, err);
      case Command::kCheckAlpha: return run_check_alpha(config, out, err);
      case Command::kValidate: return run_validate(config, out);
      case Command::kDumpMatrix: return run_dump(config, out);
    }
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return kInvalidInput;
  } catch (const ValidationError& e) {
    err << "validation error: " << e.what() << '\n';
    return kInvalidInput;
  } catch (const ParameterError& e) {
    err << "error: " << e.what() << '\n';
    return kAlphaOutOfRange;
  } catch (const SolveError& e) {
    err << "numerical error: " << e.what() << '\n';
    return kNumericalFailure;
  } catch (const ConvergenceError& e) {
    err << "numerical error: " << e.what() << '\n';
    return kNumericalFailure;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return kInvalidInput;
  }
  return kInvalidInput;
}

int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Walk-based centrality for temporal networks", "tempo-katz"};
  app.require_subcommand(1, 1);

  RunConfig config;
  std::string mode = "standard";
  std::string measure = "tc";
  std::string format = "csv";
  std::size_t tau = 0;
  std::size_t tau2 = 0;

  auto add_mode = [&](CLI::App* sub) {
    sub->add_option("--mode", mode, "standard | nbt-space | nbt-time | nbt-both")
        ->check(CLI::IsMember({"standard", "nbt-space", "nbt-time", "nbt-both"}));
  };
  auto add_input = [&](CLI::App* sub) {
    sub->add_option("input", config.input, "Temporal edge list (u v t per line)")->required();
    sub->add_option("-o,--output", config.output, "Output file (default: stdout)");
  };

  CLI::App* rank = app.add_subcommand("rank", "Compute and rank node centralities");
  add_input(rank);
  add_mode(rank);
  rank->add_option("--function", config.function, "katz | exponential | coeffs:<path>");
  rank->add_option("--alpha", config.alpha, "Downweighting parameter (> 0)")->required();
  rank->add_option("--measure", measure, "tc (total communicability) | sc (subgraph)")
      ->check(CLI::IsMember({"tc", "sc"}));
  rank->add_option("--format", format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
  rank->add_option("--tol", config.tol, "Series / solve tolerance");
  rank->add_flag("--force", config.force, "Compute even when alpha >= ell");
  rank->add_flag("--no-fastpath", config.no_fastpath, "Always use the edge-level formulation");

  CLI::App* check = app.add_subcommand("check-alpha", "Print the admissible alpha bound");
  add_input(check);
  add_mode(check);

  CLI::App* validate = app.add_subcommand("validate", "Parse and summarize an edge list");
  add_input(validate);

  CLI::App* dump = app.add_subcommand("dump-matrix", "Dump a matrix in coordinate format");
  dump->add_option("which", config.matrix, "A | L | R | W | B | W-cross | B-cross | M")
      ->required();
  add_input(dump);
  add_mode(dump);
  auto* tau_opt = dump->add_option("--tau", tau, "Snapshot index (0-based)");
  auto* tau2_opt = dump->add_option("--tau2", tau2, "Second snapshot index for cross blocks");

  std::vector<std::string> argv_storage(args);
  const bool has_subcommand =
      argv_storage.size() > 1 &&
      (argv_storage[1] == "rank" || argv_storage[1] == "check-alpha" ||
       argv_storage[1] == "validate" || argv_storage[1] == "dump-matrix" ||
       argv_storage[1] == "-h" || argv_storage[1] == "--help");
  if (!has_subcommand) argv_storage.insert(argv_storage.begin() + 1, "rank");
  std::vector<char*> argv;
  for (auto& a : argv_storage) argv.push_back(a.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n' << app.help();
    return kInvalidInput;
  }

  config.mode = parse_mode(mode);
  config.measure = measure == "sc" ? Measure::kSubgraph : Measure::kTotalCommunicability;
  config.format = format == "json" ? OutputFormat::kJson : OutputFormat::kCsv;
  if (*tau_opt) config.tau = tau;
  if (*tau2_opt) config.tau2 = tau2;

  if (rank->parsed()) {
    config.command = Command::kRank;
  } else if (check->parsed()) {
    config.command = Command::kCheckAlpha;
  } else if (validate->parsed()) {
    config.command = Command::kValidate;
  } else {
    config.command = Command::kDumpMatrix;
  }
  return run(config, out, err);
}

}  // namespace tempo_katz::cli
