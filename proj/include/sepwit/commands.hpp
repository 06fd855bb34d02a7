#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "sepwit/io.hpp"
#include "sepwit/partition.hpp"
#include "sepwit/space.hpp"
#include "sepwit/witness.hpp"

namespace sepwit {

enum class OutputFormat { Json, Csv };

struct RunConfig {
  std::uint64_t seed = 0;
  int starts = 64;
  double tol = 1e-9;
  OutputFormat format = OutputFormat::Json;
  std::string out;
  bool verify = false;
};

using Cell = std::variant<std::monostate, long long, double, std::string, bool>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

/// JSON document for --format json and a flat table for --format csv.
struct Report {
  json document;
  Table table;
};

std::string render(const Report& report, OutputFormat format);
std::string render_csv(const Table& table);
json table_json(const Table& table);

/// Columns: d, panel, p_star, G, D, detectable, bound_source, tail, and with
/// --verify also G_numeric, p_grid.
Report cmd_fig1(int d_min, int d_max, const RunConfig& run);

struct Fig2Args {
  int particles = 5;
  double r = 0.57735026918962576;
  int k_max = 0;  // 0 means N
  int delta_steps = 32;
  int n_max = 8;
  Statistics stats = Statistics::Boson;
};

/// Columns: delta, L, bound_source, tail, [L_numeric with --verify], then
/// K<k> verdicts and delta_star_K<k> for k = 2..K_max.
Report cmd_fig2(const Fig2Args& args, const RunConfig& run);

struct SevalueArgs {
  std::string observable_path;
  std::optional<Statistics> stats;
  std::optional<Partition> partition;
  std::optional<int> parties;
  std::size_t oracle_samples = 10000;
};

Report cmd_sevalue(const SevalueArgs& args, const RunConfig& run);

struct WitnessArgs {
  std::string state_path;
  std::string observable_path;
  std::optional<Statistics> stats;
  std::optional<Partition> partition;
  std::optional<int> parties;
  std::optional<BoundSource> source;
  std::optional<double> mix;
  std::size_t oracle_samples = 100000;
};

Report cmd_witness(const WitnessArgs& args, const RunConfig& run);

/// Smallest p on the grid k * step at which detect() reports entanglement
/// of noisy_state(psi, p); 1 + step when none does.
double scan_threshold(const StateVector& psi, const Witness& witness, double step);

}  // namespace sepwit
