#include "sepwit/witness.hpp"

#include <algorithm>
#include <cmath>

#include "sepwit/analytic.hpp"
#include "sepwit/decompositions.hpp"
#include "sepwit/oracle.hpp"

namespace sepwit {

std::string_view to_string(BoundSource source) {
  switch (source) {
    case BoundSource::Analytic:
      return "analytic";
    case BoundSource::Numeric:
      return "numeric";
    case BoundSource::Oracle:
      return "oracle";
  }
  return "numeric";
}

BoundSource parse_bound_source(std::string_view name) {
  if (name == "analytic") return BoundSource::Analytic;
  if (name == "numeric") return BoundSource::Numeric;
  if (name == "oracle") return BoundSource::Oracle;
  throw InputError("unknown bound source '" + std::string(name) + "'");
}

namespace {

// Two fermion blocks of equal even size can be exchanged by an even permutation,
// which lifts G above (1/2)^(K-1) (G = 1 for N = 4, blocks (2, 2)).
bool paired_even_fermion_blocks(const SEProblem& problem) {
  if (problem.statistics() != Statistics::Fermion) return false;
  const Partition& p = problem.partition();
  for (int a = 0; a < p.parties(); ++a)
    for (int b = a + 1; b < p.parties(); ++b)
      if (p.size(a) == p.size(b) && p.size(a) % 2 == 0) return true;
  return false;
}

double analytic_bound(const SEProblem& problem) {
  const Observable& l = problem.observable();
  if (l.family() == Observable::Family::Interference && l.interference_statistics() == problem.statistics()) {
    if (paired_even_fermion_blocks(problem))
      throw InputError("no closed-form bound for fermion partitions with two equal even blocks");
    return std::pow(0.5, problem.partition().parties() - 1);
  }
  if (l.family() == Observable::Family::RankOne && problem.space().particles() == 2 &&
      problem.partition().parties() == 2)
    return analytic_rank_one(*l.rank_one_source(), problem.statistics()).g;
  throw InputError("no closed-form bound for this observable");
}

}  // namespace

Witness build_witness(const SEProblem& problem, BoundSource source, WitnessForm form, const WitnessOptions& options) {
  double bound = 0.0;
  if (form == WitnessForm::Lower && source != BoundSource::Numeric)
    throw InputError("lower-form witnesses need a numeric bound");
  switch (source) {
    case BoundSource::Analytic:
      bound = analytic_bound(problem);
      break;
    case BoundSource::Numeric: {
      SolverOptions solver = options.solver;
      solver.mode = form == WitnessForm::Upper ? Extremum::Max : Extremum::Min;
      bound = solve_sup_g(problem, options.starts, options.seed, solver).g;
      break;
    }
    case BoundSource::Oracle:
      bound = brute_force_bound(problem, options.oracle_samples, options.seed);
      break;
  }
  return {problem.observable(), problem.statistics(), problem.partition(), bound, form, source};
}

Witness build_witness(const Observable& observable, Statistics stats, int parties, BoundSource source,
                      WitnessForm form, const WitnessOptions& options) {
  std::optional<Witness> best;
  for (const Partition& p : partitions_of(observable.space().particles(), parties)) {
    Witness w = build_witness(SEProblem(observable, stats, p), source, form, options);
    const bool wider = !best || (form == WitnessForm::Upper ? w.bound > best->bound : w.bound < best->bound);
    if (wider) best = std::move(w);
  }
  return *best;
}

double expectation(const DensityOperator& rho, const Observable& x) {
  if (!(rho.space() == x.space())) throw InputError("state and observable dimensions differ");
  double sum = 0.0;
  if (rho.is_mixture()) {
    for (const auto& c : rho.mixture()) sum += c.weight * x.expectation(c.state.amplitudes());
    return sum;
  }
  const Eigen::MatrixXcd& m = rho.matrix();
  cplx acc(0.0);
  for (const MatrixEntry& e : x.entries())
    acc += m(static_cast<Eigen::Index>(e.col), static_cast<Eigen::Index>(e.row)) * e.value;
  return acc.real();
}

double expectation(const DensityOperator& rho, const Eigen::MatrixXcd& x) {
  if (static_cast<std::size_t>(x.rows()) != rho.space().total_dim() || x.cols() != x.rows())
    throw InputError("state and operator dimensions differ");
  if (rho.is_mixture()) {
    double sum = 0.0;
    for (const auto& c : rho.mixture()) {
      const Eigen::VectorXcd& v = c.state.amplitudes();
      sum += c.weight * v.dot(x * v).real();
    }
    return sum;
  }
  return (rho.matrix() * x).trace().real();
}

namespace {

double form_value(const Witness& w, double l_value, double sector_weight) {
  return w.form == WitnessForm::Upper ? w.bound * sector_weight - l_value : l_value - w.bound * sector_weight;
}

}  // namespace

double witness_value(const StateVector& s, const Witness& witness) {
  if (!(s.space() == witness.observable.space())) throw InputError("state and witness dimensions differ");
  const StateVector p = witness.stats == Statistics::Distinguishable ? s : project(witness.stats, s);
  return form_value(witness, witness.observable.expectation(p.amplitudes()), p.amplitudes().squaredNorm());
}

double witness_value(const DensityOperator& rho, const Witness& witness) {
  if (!(rho.space() == witness.observable.space())) throw InputError("state and witness dimensions differ");
  if (rho.is_mixture()) {
    const PermutationTable table(rho.space());
    double sum = 0.0;
    for (const auto& c : rho.mixture()) {
      const StateVector p =
          witness.stats == Statistics::Distinguishable ? c.state : project(witness.stats, c.state, table);
      sum += c.weight * form_value(witness, witness.observable.expectation(p.amplitudes()),
                                   p.amplitudes().squaredNorm());
    }
    return sum;
  }
  const Eigen::MatrixXcd proj = projector_matrix(witness.stats, rho.space());
  const DensityOperator inner(rho.space(), Eigen::MatrixXcd(proj * rho.matrix() * proj));
  return form_value(witness, expectation(inner, witness.observable), inner.trace());
}

Verdict detect(const DensityOperator& rho, const Witness& witness, double margin) {
  if (!(rho.space() == witness.observable.space())) throw InputError("state and witness dimensions differ");
  if (!rho.in_sector(witness.stats, kSectorTolerance))
    throw InputError("state is not supported on the " + std::string(to_string(witness.stats)) + " sector");
  Verdict v;
  v.value = expectation(rho, witness.observable);
  v.bound = witness.bound;
  v.margin = margin;
  v.entangled = witness.form == WitnessForm::Upper ? v.value > v.bound + margin : v.value < v.bound - margin;
  return v;
}

double schmidt_number_bound(const StateVector& psi, int r) {
  if (psi.space().particles() != 2) throw InputError("Schmidt-number bounds need N = 2");
  if (r < 1 || r > psi.space().dim()) throw InputError("r must lie in [1, d]");
  const Eigen::VectorXd lam = schmidt(psi).coefficients;
  double sum = 0.0;
  for (int n = 0; n < r; ++n) sum += lam[n] * lam[n];
  return sum;
}

}  // namespace sepwit
