#include "sepwit/analytic.hpp"

#include <cmath>

#include "sepwit/decompositions.hpp"

namespace sepwit {

namespace {

void require_pair(const StateVector& psi) {
  if (psi.space().particles() != 2) throw InputError("rank-one analytic solutions need N = 2");
}

SESolution solution(const SEProblem& problem, Eigen::VectorXcd a, Eigen::VectorXcd b, double g) {
  return evaluate_solution(problem, {std::move(a), std::move(b)}, g);
}

}  // namespace

SEProblem rank_one_problem(const StateVector& psi, Statistics stats) {
  require_pair(psi);
  const StateVector p = stats == Statistics::Distinguishable ? psi : project(stats, psi);
  if (!(p.norm() > 0.0)) throw InputError("projection of psi vanishes");
  return SEProblem(Observable::rank_one(p), stats, Partition({1, 1}));
}

AnalyticSolutions analytic_rank_one(const StateVector& psi, Statistics stats) {
  const SEProblem problem = rank_one_problem(psi, stats);
  const StateVector& p = *problem.observable().rank_one_source();
  const Eigen::Index d = psi.space().dim();
  AnalyticSolutions out;
  auto add = [&](Eigen::VectorXcd a, Eigen::VectorXcd b, double g) {
    out.g = out.solutions.empty() ? g : std::max(out.g, g);
    out.solutions.push_back(solution(problem, std::move(a), std::move(b), g));
  };
  switch (stats) {
    case Statistics::Distinguishable: {
      const SchmidtDecomposition s = schmidt(p);
      for (Eigen::Index n = 0; n < d; ++n) {
        const double l = s.coefficients[n];
        add(s.left_basis.col(n), s.right_basis.col(n), l * l);
      }
      break;
    }
    case Statistics::Fermion: {
      const FermionSlater s = slater_fermion(p);
      for (Eigen::Index n = 0; n < s.coefficients.size(); ++n) {
        const double k = s.coefficients[n];
        add(s.basis.col(2 * n), s.basis.col(2 * n + 1), 2.0 * k * k);
      }
      break;
    }
    case Statistics::Boson: {
      const BosonSlater s = slater_boson(p);
      const Eigen::VectorXd& kap = s.coefficients;
      for (Eigen::Index n = 0; n < d; ++n) add(s.basis.col(n), s.basis.col(n), kap[n] * kap[n]);
      const cplx i(0.0, 1.0);
      for (Eigen::Index k = 0; k < d; ++k) {
        if (!(kap[k] > 0.0)) continue;
        for (Eigen::Index l = k + 1; l < d; ++l) {
          const Eigen::VectorXcd wk = std::sqrt(kap[k]) * s.basis.col(k);
          const Eigen::VectorXcd wl = i * std::sqrt(kap[l]) * s.basis.col(l);
          add(wk + wl, wk - wl, kap[k] * kap[k] + kap[l] * kap[l]);
        }
      }
      break;
    }
  }
  return out;
}

AnalyticSolutions analytic_interference(const SpaceConfig& space, Statistics stats, const Partition& partition) {
  const SEProblem problem(Observable::interference(space, stats), stats, partition);
  const int n = space.particles();
  std::vector<Eigen::VectorXcd> top;
  std::vector<Eigen::VectorXcd> trivial;
  for (int j = 0; j < partition.parties(); ++j) {
    std::vector<int> v_labels;
    std::vector<int> w_labels;
    for (int i = 0; i < partition.size(j); ++i) {
      v_labels.push_back(partition.offset(j) + i);
      w_labels.push_back(n + partition.offset(j) + i);
    }
    const SpaceConfig local(space.dim(), partition.size(j));
    const auto m = static_cast<Eigen::Index>(local.total_dim());
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(m);
    Eigen::VectorXcd w = Eigen::VectorXcd::Zero(m);
    v[static_cast<Eigen::Index>(local.flatten(v_labels))] = 1.0;
    w[static_cast<Eigen::Index>(local.flatten(w_labels))] = 1.0;
    top.push_back((v + w) / std::sqrt(2.0));
    trivial.push_back(v);
  }
  AnalyticSolutions out;
  out.g = std::pow(0.5, partition.parties() - 1);
  out.solutions.push_back(evaluate_solution(problem, std::move(top), out.g));
  out.solutions.push_back(evaluate_solution(problem, std::move(trivial), 0.0));
  return out;
}

}  // namespace sepwit
