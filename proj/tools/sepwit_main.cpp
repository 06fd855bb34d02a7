#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "sepwit/commands.hpp"
#include "sepwit/error.hpp"

namespace {

constexpr const char* kColumns = R"(CSV columns:
  fig1:    d,panel,p_star,G,D,detectable,bound_source,tail[,G_numeric,p_grid]
  fig2:    delta,L,bound_source,tail[,L_numeric],K2..K<Kmax>,delta_star_K2..delta_star_K<Kmax>
  sevalue: partition,G,fraction_at_G,converged,starts,oracle_bound,second_form_overlap,bound_source
  witness: expectation,G,verdict,margin,witness_value,trace,partition,bound_source
Floats use 12 significant digits.  SEVALUE_THREADS caps solver threads.
Exit codes: 0 success, 2 input error, 3 numerical failure.)";

void emit(const sepwit::Report& report, const sepwit::RunConfig& run) {
  const std::string text = sepwit::render(report, run.format);
  if (run.out.empty())
    std::cout << text;
  else
    sepwit::write_text(run.out, text);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Separability-eigenvalue witnesses for distinguishable and indistinguishable particles"};
  app.footer(kColumns);
  app.require_subcommand(1);

  sepwit::RunConfig run;
  std::string format = "json";
  app.add_option("--seed", run.seed, "Seed for every stochastic step")->capture_default_str();
  app.add_option("--starts", run.starts, "Solver starts per partition")->capture_default_str()->check(CLI::PositiveNumber);
  app.add_option("--tol", run.tol, "Residual tolerance of the solver")->capture_default_str()->check(CLI::PositiveNumber);
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
  app.add_option("--out", run.out, "Write output to PATH instead of stdout");
  app.add_flag("--verify", run.verify, "Cross-check closed forms numerically");

  auto* fig1 = app.add_subcommand("fig1", "Noise thresholds p* of the balanced two-particle states");
  int d_min = 2;
  int d_max = 8;
  fig1->add_option("--d-min", d_min)->capture_default_str();
  fig1->add_option("--d-max", d_max)->capture_default_str();

  auto* fig2 = app.add_subcommand("fig2", "Interference expectation of dephased GHZ-type states");
  sepwit::Fig2Args f2;
  std::string f2_stats = "boson";
  fig2->add_option("-N,--particles", f2.particles)->capture_default_str();
  fig2->add_option("-r,--amplitude", f2.r, "|q|")->capture_default_str();
  fig2->add_option("--k-max", f2.k_max, "Largest K (default N)");
  fig2->add_option("--delta-steps", f2.delta_steps)->capture_default_str();
  fig2->add_option("--n-max", f2.n_max, "Truncation of the numeric check")->capture_default_str();
  fig2->add_option("--stats", f2_stats, "Statistics of the numeric check")->capture_default_str();

  auto* sev = app.add_subcommand("sevalue", "Solve for sup{g} of an observable");
  sepwit::SevalueArgs sa;
  std::optional<std::string> sev_stats;
  std::optional<std::string> sev_partition;
  sev->add_option("observable", sa.observable_path, "Observable JSON file")->required();
  sev->add_option("--stats", sev_stats, "distinguishable, boson or fermion");
  sev->add_option("--partition", sev_partition, "Block sizes, e.g. 1,2");
  sev->add_option("-K,--parties", sa.parties, "Maximize over all partitions into K blocks");
  sev->add_option("--oracle-samples", sa.oracle_samples, "Random product vectors for the oracle (0 = off)")
      ->capture_default_str();

  auto* wit = app.add_subcommand("witness", "Test a state against a witness");
  sepwit::WitnessArgs wa;
  std::optional<std::string> wit_stats;
  std::optional<std::string> wit_partition;
  std::optional<std::string> wit_source;
  wit->add_option("state", wa.state_path, "State JSON file")->required();
  wit->add_option("observable", wa.observable_path, "Observable JSON file")->required();
  wit->add_option("--stats", wit_stats, "distinguishable, boson or fermion");
  wit->add_option("--partition", wit_partition, "Block sizes, e.g. 1,2");
  wit->add_option("-K,--parties", wa.parties, "Maximize the bound over all partitions into K blocks");
  wit->add_option("--bound", wit_source, "analytic, numeric or oracle (default: analytic when known)");
  wit->add_option("--mix", wa.mix, "Mix the pure state with white noise at weight 1-p")->check(CLI::Range(0.0, 1.0));
  wit->add_option("--oracle-samples", wa.oracle_samples)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    run.format = format == "csv" ? sepwit::OutputFormat::Csv : sepwit::OutputFormat::Json;
    if (*fig1) {
      emit(sepwit::cmd_fig1(d_min, d_max, run), run);
    } else if (*fig2) {
      f2.stats = sepwit::parse_statistics(f2_stats);
      emit(sepwit::cmd_fig2(f2, run), run);
    } else if (*sev) {
      if (sev_stats) sa.stats = sepwit::parse_statistics(*sev_stats);
      if (sev_partition) sa.partition = sepwit::Partition::parse(*sev_partition);
      emit(sepwit::cmd_sevalue(sa, run), run);
    } else if (*wit) {
      if (wit_stats) wa.stats = sepwit::parse_statistics(*wit_stats);
      if (wit_partition) wa.partition = sepwit::Partition::parse(*wit_partition);
      if (wit_source) wa.source = sepwit::parse_bound_source(*wit_source);
      emit(sepwit::cmd_witness(wa, run), run);
    }
  } catch (const sepwit::InputError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const sepwit::NumericalError& e) {
    std::fprintf(stderr, "numerical failure: %s\n", e.what());
    return 3;
  }
  return 0;
}
