#include "sepwit/commands.hpp"

#include <cmath>
#include <sstream>

#include "sepwit/analytic.hpp"
#include "sepwit/oracle.hpp"
#include "sepwit/states.hpp"

namespace sepwit {

namespace {

std::string cell_text(const Cell& c) {
  struct Visitor {
    std::string operator()(std::monostate) const { return ""; }
    std::string operator()(long long v) const { return std::to_string(v); }
    std::string operator()(double v) const { return format_double(v); }
    std::string operator()(const std::string& v) const {
      if (v.find_first_of(",\"\n") == std::string::npos) return v;
      std::string out = "\"";
      for (char ch : v) out += ch == '"' ? std::string("\"\"") : std::string(1, ch);
      return out + "\"";
    }
    std::string operator()(bool v) const { return v ? "true" : "false"; }
  };
  return std::visit(Visitor{}, c);
}

json cell_json(const Cell& c) {
  struct Visitor {
    json operator()(std::monostate) const { return nullptr; }
    json operator()(long long v) const { return v; }
    json operator()(double v) const {
      if (!std::isfinite(v)) return nullptr;
      return std::stod(format_double(v));
    }
    json operator()(const std::string& v) const { return v; }
    json operator()(bool v) const { return v; }
  };
  return std::visit(Visitor{}, c);
}

double rounded(double x) { return std::isfinite(x) ? std::stod(format_double(x)) : x; }

json vector_json(const Eigen::VectorXcd& v) {
  json arr = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back({rounded(v[i].real()), rounded(v[i].imag())});
  return arr;
}

SolverOptions solver_options(const RunConfig& run) {
  SolverOptions o;
  o.tol_residual = run.tol;
  return o;
}

const char* verdict_text(bool entangled) { return entangled ? "entangled" : "inconclusive"; }

}  // namespace

std::string render_csv(const Table& table) {
  std::ostringstream out;
  for (std::size_t i = 0; i < table.columns.size(); ++i) out << (i ? "," : "") << table.columns[i];
  out << "\n";
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << cell_text(row[i]);
    out << "\n";
  }
  return out.str();
}

json table_json(const Table& table) {
  json rows = json::array();
  for (const auto& row : table.rows) {
    json obj = json::object();
    for (std::size_t i = 0; i < row.size(); ++i) obj[table.columns[i]] = cell_json(row[i]);
    rows.push_back(std::move(obj));
  }
  return rows;
}

std::string render(const Report& report, OutputFormat format) {
  if (format == OutputFormat::Csv) return render_csv(report.table);
  return report.document.dump(2) + "\n";
}

double scan_threshold(const StateVector& psi, const Witness& witness, double step) {
  if (!(step > 0.0 && step <= 1.0)) throw InputError("grid step must lie in (0, 1]");
  const auto n = static_cast<long long>(std::llround(1.0 / step));
  for (long long k = 0; k <= n; ++k) {
    const double p = std::min(1.0, static_cast<double>(k) * step);
    if (detect(noisy_state(psi, witness.stats, p), witness).entangled) return p;
  }
  return 1.0 + step;
}

Report cmd_fig1(int d_min, int d_max, const RunConfig& run) {
  if (!(2 <= d_min && d_min <= d_max && d_max <= 8)) throw InputError("need 2 <= d_min <= d_max <= 8");
  Table t;
  t.columns = {"d", "panel", "p_star", "G", "D", "detectable", "bound_source", "tail"};
  if (run.verify) {
    t.columns.push_back("G_numeric");
    t.columns.push_back("p_grid");
  }
  for (int d = d_min; d <= d_max; ++d) {
    for (Fig1Panel panel : {Fig1Panel::SchmidtRank1, Fig1Panel::SchmidtRank2, Fig1Panel::Boson, Fig1Panel::Fermion}) {
      const Threshold th = detection_threshold(d, panel);
      std::vector<Cell> row{static_cast<long long>(d), std::string(to_string(panel)), th.p_star, th.bound,
                            static_cast<long long>(th.sector_dim), th.detectable, std::string("analytic"),
                            std::monostate{}};
      if (run.verify) {
        const Statistics stats = panel_statistics(panel);
        const StateVector psi = fig1_state_family(d, stats);
        const SEProblem problem = rank_one_problem(psi, stats);
        if (panel == Fig1Panel::SchmidtRank2)
          row.emplace_back(std::monostate{});
        else
          row.emplace_back(solve_sup_g(problem, run.starts, run.seed, solver_options(run)).g);
        const Witness w{problem.observable(), stats, problem.partition(), th.bound, WitnessForm::Upper,
                        BoundSource::Analytic};
        row.emplace_back(scan_threshold(psi, w, 1e-3));
      }
      t.rows.push_back(std::move(row));
    }
  }
  Report r;
  r.document = {{"command", "fig1"}, {"d_min", d_min}, {"d_max", d_max}, {"rows", table_json(t)}};
  r.table = std::move(t);
  return r;
}

Report cmd_fig2(const Fig2Args& args, const RunConfig& run) {
  const int n = args.particles;
  if (n < 1 || n > 6) throw InputError("need 1 <= N <= 6");
  if (!(args.r >= 0.0 && args.r < 1.0)) throw InputError("r must lie in [0, 1)");
  const int k_max = args.k_max == 0 ? n : args.k_max;
  if (k_max < 1 || k_max > n) throw InputError("need 1 <= K_max <= N");
  if (args.delta_steps < 1) throw InputError("delta_steps must be positive");
  if (run.verify && n > 3) throw InputError("numeric verification needs N <= 3");
  if (args.stats == Statistics::Fermion && n >= 4)
    throw InputError("fermion bounds (1/2)^(K-1) are not valid for N >= 4 (use the witness command)");

  std::optional<GhzFamily> family;
  std::optional<Observable> l;
  if (run.verify) {
    family = ghz_family(n, args.r, args.stats, args.n_max);
    l = Observable::interference(family->space(), args.stats);
  }
  std::vector<double> crossing;
  for (int k = 2; k <= k_max; ++k) {
    const double bound = std::pow(0.5, k - 1);
    if (ghz_expectation(args.r, 0.0) <= bound) {
      crossing.push_back(std::nan(""));
      continue;
    }
    double lo = 0.0;
    double hi = M_PI;
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (lo + hi);
      (ghz_expectation(args.r, mid) > bound ? lo : hi) = mid;
    }
    crossing.push_back(lo);
  }

  Table t;
  t.columns = {"delta", "L", "bound_source", "tail"};
  if (run.verify) t.columns.push_back("L_numeric");
  for (int k = 2; k <= k_max; ++k) t.columns.push_back("K" + std::to_string(k));
  for (int k = 2; k <= k_max; ++k) t.columns.push_back("delta_star_K" + std::to_string(k));
  for (int i = 0; i <= args.delta_steps; ++i) {
    const double delta = M_PI * i / args.delta_steps;
    const double value = ghz_expectation(args.r, delta);
    std::vector<Cell> row{delta, value, std::string("analytic")};
    if (run.verify) {
      row.emplace_back(family->tail_bound);
      row.emplace_back(expectation(dephased_ghz(*family, delta), *l));
    } else {
      row.emplace_back(std::monostate{});
    }
    for (int k = 2; k <= k_max; ++k)
      row.emplace_back(std::string(verdict_text(value > std::pow(0.5, k - 1) + kDefaultMargin)));
    for (double c : crossing) row.emplace_back(std::isnan(c) ? Cell{std::monostate{}} : Cell{c});
    t.rows.push_back(std::move(row));
  }
  Report r;
  r.document = {{"command", "fig2"}, {"N", n}, {"r", rounded(args.r)}, {"K_max", k_max},
                {"statistics", std::string(to_string(args.stats))}, {"rows", table_json(t)}};
  if (family) {
    r.document["n_max"] = args.n_max;
    r.document["tail"] = rounded(family->tail_bound);
  }
  r.table = std::move(t);
  return r;
}

namespace {

Statistics pick_stats(std::initializer_list<std::optional<Statistics>> options) {
  for (const auto& o : options)
    if (o) return *o;
  throw InputError("statistics not given (use --stats or a 'statistics' field)");
}

std::vector<Partition> pick_partitions(const std::optional<Partition>& partition, const std::optional<int>& parties,
                                       int particles) {
  if (partition) {
    if (partition->particles() != particles) throw InputError("partition does not sum to N");
    return {*partition};
  }
  if (parties) return partitions_of(particles, *parties);
  throw InputError("give --partition or --parties");
}

}  // namespace

Report cmd_sevalue(const SevalueArgs& args, const RunConfig& run) {
  const LoadedObservable lo = load_observable(args.observable_path);
  const Statistics stats = pick_stats({args.stats, lo.stats});
  const SpaceConfig& space = lo.observable.space();
  const auto partitions = pick_partitions(args.partition, args.parties, space.particles());

  Table t;
  t.columns = {"partition", "G", "fraction_at_G", "converged", "starts", "oracle_bound", "second_form_overlap",
               "bound_source"};
  json parts = json::array();
  double best_g = 0.0;
  std::string best_partition;
  for (std::size_t i = 0; i < partitions.size(); ++i) {
    const SEProblem problem(lo.observable, stats, partitions[i]);
    const SupResult res = solve_sup_g(problem, run.starts, run.seed, solver_options(run));
    const SecondFormCheck check = verify_second_form(res.best, problem);
    std::optional<double> oracle;
    if (args.oracle_samples > 0) oracle = brute_force_bound(problem, args.oracle_samples, run.seed);
    if (i == 0 || res.g > best_g) {
      best_g = res.g;
      best_partition = partitions[i].to_string();
    }
    json sols = json::array();
    for (const SESolution& s : res.all)
      sols.push_back({{"g", rounded(s.g)}, {"residual", rounded(s.residual)}, {"chi_norm", rounded(s.chi_norm)},
                      {"converged", s.converged}, {"sweeps", s.sweeps}});
    json vectors = json::array();
    for (const auto& b : res.best.party_vectors) vectors.push_back(vector_json(b));
    parts.push_back({{"partition", partitions[i].to_string()},
                     {"G", rounded(res.g)},
                     {"fraction_at_G", rounded(res.fraction_at_extremum)},
                     {"converged", res.converged},
                     {"starts", run.starts},
                     {"oracle_bound", oracle ? json(rounded(*oracle)) : json(nullptr)},
                     {"second_form_overlap", rounded(check.max_overlap)},
                     {"best", {{"g", rounded(res.best.g)}, {"residual", rounded(res.best.residual)},
                               {"party_vectors", vectors}}},
                     {"solutions", sols}});
    t.rows.push_back({partitions[i].to_string(), res.g, res.fraction_at_extremum,
                      static_cast<long long>(res.converged), static_cast<long long>(run.starts),
                      oracle ? Cell{*oracle} : Cell{std::monostate{}}, check.max_overlap, std::string("numeric")});
  }
  Report r;
  r.document = {{"command", "sevalue"},
                {"d", space.dim()},
                {"N", space.particles()},
                {"statistics", std::string(to_string(stats))},
                {"seed", run.seed},
                {"G", rounded(best_g)},
                {"partition", best_partition},
                {"bound_source", "numeric"},
                {"partitions", parts}};
  r.table = std::move(t);
  return r;
}

Report cmd_witness(const WitnessArgs& args, const RunConfig& run) {
  const LoadedObservable lo = load_observable(args.observable_path);
  LoadedState ls = load_state(args.state_path);
  const Statistics stats = pick_stats({args.stats, lo.stats, ls.stats});
  const SpaceConfig& space = lo.observable.space();
  if (!(ls.rho.space() == space)) throw InputError("state and observable dimensions differ");
  DensityOperator rho = ls.rho;
  if (args.mix) {
    if (!rho.is_mixture() || rho.mixture().size() != 1) throw InputError("--mix needs a pure state file");
    rho = noisy_state(rho.mixture().front().state, stats, *args.mix);
  }

  WitnessOptions wo;
  wo.starts = run.starts;
  wo.seed = run.seed;
  wo.oracle_samples = args.oracle_samples;
  wo.solver = solver_options(run);
  auto build = [&](BoundSource source) {
    if (args.partition) {
      if (args.partition->particles() != space.particles()) throw InputError("partition does not sum to N");
      return build_witness(SEProblem(lo.observable, stats, *args.partition), source, WitnessForm::Upper, wo);
    }
    if (!args.parties) throw InputError("give --partition or --parties");
    return build_witness(lo.observable, stats, *args.parties, source, WitnessForm::Upper, wo);
  };
  std::optional<Witness> witness;
  if (args.source) {
    witness = build(*args.source);
  } else {
    try {
      witness = build(BoundSource::Analytic);
    } catch (const InputError&) {
      witness = build(BoundSource::Numeric);
    }
  }
  const Verdict v = detect(rho, *witness);
  const double w_value = witness_value(rho, *witness);

  Table t;
  t.columns = {"expectation", "G", "verdict", "margin", "witness_value", "trace", "partition", "bound_source"};
  t.rows.push_back({v.value, v.bound, std::string(verdict_text(v.entangled)), v.margin, w_value, rho.trace(),
                    witness->partition.to_string(), std::string(to_string(witness->source))});
  Report r;
  r.document = {{"command", "witness"},
                {"d", space.dim()},
                {"N", space.particles()},
                {"statistics", std::string(to_string(stats))},
                {"K", witness->parties()},
                {"partition", witness->partition.to_string()},
                {"expectation", rounded(v.value)},
                {"G", rounded(v.bound)},
                {"verdict", verdict_text(v.entangled)},
                {"margin", v.margin},
                {"witness_value", rounded(w_value)},
                {"trace", rounded(rho.trace())},
                {"bound_source", std::string(to_string(witness->source))}};
  if (args.mix) r.document["p"] = *args.mix;
  r.table = std::move(t);
  return r;
}

}  // namespace sepwit
