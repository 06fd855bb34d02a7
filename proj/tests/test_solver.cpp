#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <random>

#include "reference.hpp"
#include "sepwit/decompositions.hpp"
#include "sepwit/analytic.hpp"
#include "sepwit/covariance.hpp"
#include "sepwit/oracle.hpp"
#include "sepwit/partition.hpp"
#include "sepwit/solver.hpp"

using namespace sepwit;

namespace {

const Statistics kAll[] = {Statistics::Distinguishable, Statistics::Boson, Statistics::Fermion};

Eigen::VectorXcd unit(Eigen::Index d, Eigen::Index i) {
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(d);
  v[i] = 1.0;
  return v;
}

StateVector two_particle(const Eigen::MatrixXcd& m) {
  const auto d = static_cast<int>(m.rows());
  Eigen::VectorXcd v(d * d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) v[i * d + j] = m(i, j);
  return StateVector(SpaceConfig(d, 2), v);
}

StateVector random_fermion(int d, std::mt19937_64& rng) {
  const Eigen::MatrixXcd g = ref::gaussian_matrix(d, rng);
  return two_particle(g - g.transpose()).normalized();
}

StateVector random_boson(int d, std::mt19937_64& rng) {
  const Eigen::MatrixXcd g = ref::gaussian_matrix(d, rng);
  return two_particle(g + g.transpose()).normalized();
}

// Brute-force <x|X_j|y> from explicit product vectors.
Eigen::MatrixXcd reference_contraction(const Eigen::MatrixXcd& x, std::vector<Eigen::VectorXcd> parties, int j) {
  const Eigen::Index m = parties[static_cast<std::size_t>(j)].size();
  Eigen::MatrixXcd out(m, m);
  auto product = [&](Eigen::Index slot) {
    parties[static_cast<std::size_t>(j)] = unit(m, slot);
    Eigen::VectorXcd v = parties.front();
    for (std::size_t k = 1; k < parties.size(); ++k) v = ref::kron(v, parties[k]);
    return v;
  };
  for (Eigen::Index a = 0; a < m; ++a)
    for (Eigen::Index b = 0; b < m; ++b) out(a, b) = product(a).dot(x * product(b));
  return out;
}

}  // namespace

TEST(Partition, ParseAndCompare) {
  const Partition p = Partition::parse("(2,3,1)");
  EXPECT_EQ(p.parties(), 3);
  EXPECT_EQ(p.particles(), 6);
  EXPECT_EQ(p.offset(2), 5);
  EXPECT_EQ(p.to_string(), "(2,3,1)");
  EXPECT_TRUE(p.same_partitioning(Partition::parse("1,2,3")));
  EXPECT_FALSE(p == Partition::parse("1,2,3"));
  EXPECT_FALSE(p.same_partitioning(Partition::parse("2,2,2")));
  EXPECT_EQ(Partition::full(3), Partition({1, 1, 1}));
  EXPECT_THROW(Partition::parse("1,x"), InputError);
  EXPECT_THROW(Partition({2, 0}), InputError);
  EXPECT_THROW(Partition({}), InputError);
}

TEST(Partition, Enumeration) {
  const auto p42 = partitions_of(4, 2);
  ASSERT_EQ(p42.size(), 2u);
  EXPECT_EQ(p42[0], Partition({3, 1}));
  EXPECT_EQ(p42[1], Partition({2, 2}));
  EXPECT_EQ(partitions_of(6, 3).size(), 3u);
  EXPECT_EQ(partitions_of(5, 1).size(), 1u);
  EXPECT_EQ(partitions_of(5, 5).size(), 1u);
  EXPECT_THROW(partitions_of(3, 4), InputError);
}

TEST(Problem, RejectsMismatchedPartition) {
  const SpaceConfig space(4, 2);
  EXPECT_THROW(SEProblem(Observable::identity(space), Statistics::Boson, Partition({1, 2})), InputError);
}

TEST(Contraction, ProductOperator) {
  std::mt19937_64 rng(20);
  const Eigen::MatrixXcd a = ref::hermitian(3, rng);
  const Eigen::MatrixXcd b = ref::hermitian(3, rng);
  const std::vector<Eigen::VectorXcd> parties{ref::gaussian(3, rng), ref::gaussian(3, rng)};
  const Eigen::MatrixXcd c = contracted_operator(ref::kron(a, b), SpaceConfig(3, 2), Partition({1, 1}), parties, 0);
  EXPECT_LT((c - parties[1].dot(b * parties[1]) * a).norm(), 1e-12);
}

TEST(Contraction, Symmetrizer) {
  const SpaceConfig space(2, 2);
  const std::vector<Eigen::VectorXcd> parties{unit(2, 1), unit(2, 0)};
  const Eigen::MatrixXcd c = contracted_operator(projector_matrix(Statistics::Boson, space), space, Partition({1, 1}), parties, 0);
  Eigen::MatrixXcd expect = 0.5 * Eigen::MatrixXcd::Identity(2, 2);
  expect(0, 0) += 0.5;
  EXPECT_LT((c - expect).norm(), 1e-15);
}

TEST(Contraction, IdentityAndReference) {
  std::mt19937_64 rng(21);
  const SpaceConfig space(2, 4);
  const Partition part({1, 2, 1});
  const std::vector<Eigen::VectorXcd> parties{ref::gaussian(2, rng), ref::gaussian(4, rng), ref::gaussian(2, rng)};
  const Eigen::MatrixXcd id = contracted_operator(Observable::identity(space), part, parties, 1);
  EXPECT_LT((id - parties[0].squaredNorm() * parties[2].squaredNorm() * Eigen::MatrixXcd::Identity(4, 4)).norm(), 1e-12);

  const Eigen::MatrixXcd x = ref::hermitian(16, rng);
  for (int j = 0; j < 3; ++j) {
    const Eigen::MatrixXcd c = contracted_operator(x, space, part, parties, j);
    EXPECT_LT((c - reference_contraction(x, parties, j)).norm(), 1e-11);
    EXPECT_LT((c - c.adjoint()).norm(), 1e-12);
  }
  EXPECT_THROW(contracted_operator(x, space, part, parties, 3), InputError);
}

TEST(Sweep, FermionRankOneAnyStart) {
  // a single Slater block: every valid start reaches the analytic value
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(4, 4);
  m(0, 1) = 0.6;
  m(1, 0) = -0.6;
  const StateVector f = two_particle(m);
  const SEProblem problem = rank_one_problem(f, Statistics::Fermion);
  const double g_expect = analytic_rank_one(f, Statistics::Fermion).g;
  std::mt19937_64 rng(22);
  for (int rep = 0; rep < 5; ++rep) {
    const auto sol = sweep_solve(problem, random_party_vectors(problem.space(), problem.partition(), rng));
    EXPECT_TRUE(sol.converged);
    EXPECT_NEAR(sol.g, g_expect, 1e-10);
    EXPECT_LE(sol.residual, 1e-9);
  }
}

TEST(Sweep, IdentityIsFixedPoint) {
  std::mt19937_64 rng(23);
  for (Statistics st : kAll) {
    const SpaceConfig space(3, 3);
    const SEProblem problem(Observable::projector(st, space), st, Partition({2, 1}));
    const auto init = random_party_vectors(space, problem.partition(), rng);
    EXPECT_NEAR(rayleigh_quotient(problem, init), 1.0, 1e-12);
    const auto sol = sweep_solve(problem, init);
    EXPECT_NEAR(sol.g, 1.0, 1e-12);
    EXPECT_LE(sol.sweeps, 2);
  }
}

TEST(Sweep, BosonRankOneLandsOnAnalyticSet) {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(3, 3);
  m(0, 0) = m(1, 1) = 1.0 / std::sqrt(2.0);
  const StateVector b = two_particle(m);
  const SEProblem problem = rank_one_problem(b, Statistics::Boson);
  std::mt19937_64 rng(24);
  for (int rep = 0; rep < 8; ++rep) {
    const auto sol = sweep_solve(problem, random_party_vectors(problem.space(), problem.partition(), rng));
    ASSERT_TRUE(sol.converged);
    const bool hit = std::abs(sol.g - 0.5) < 1e-8 || std::abs(sol.g - 1.0) < 1e-8 || std::abs(sol.g) < 1e-8;
    EXPECT_TRUE(hit) << sol.g;
  }
  EXPECT_NEAR(solve_sup_g(problem, 16, 1).g, 1.0, 1e-9);
}

TEST(Sweep, ZeroProjectionIsReported) {
  const SpaceConfig space(3, 2);
  const SEProblem problem(Observable::projector(Statistics::Fermion, space), Statistics::Fermion, Partition({1, 1}));
  const std::vector<Eigen::VectorXcd> init{unit(3, 0), unit(3, 0)};
  EXPECT_THROW(sweep_solve(problem, init), ZeroProjection);
}

TEST(SupG, RankOneMatchesAnalytic) {
  std::mt19937_64 rng(25);
  for (int d = 3; d <= 5; ++d) {
    const StateVector f = random_fermion(d, rng);
    const StateVector b = random_boson(d, rng);
    const StateVector psi(SpaceConfig(d, 2), ref::gaussian(d * d, rng));
    for (const auto& [state, st] : {std::pair{f, Statistics::Fermion}, std::pair{b, Statistics::Boson},
                                    std::pair{psi.normalized(), Statistics::Distinguishable}}) {
      const auto analytic = analytic_rank_one(state, st);
      const auto numeric = solve_sup_g(rank_one_problem(state, st), 32, 7);
      EXPECT_NEAR(numeric.g, analytic.g, 1e-8) << to_string(st) << " d=" << d;
      EXPECT_GT(numeric.fraction_at_extremum, 0.0);
    }
  }
}

TEST(SupG, DeterministicAcrossThreadCounts) {
  std::mt19937_64 rng(26);
  const SEProblem problem = rank_one_problem(random_boson(4, rng), Statistics::Boson);
  ::setenv("SEVALUE_THREADS", "1", 1);
  const auto one = solve_sup_g(problem, 12, 99);
  ::setenv("SEVALUE_THREADS", "3", 1);
  const auto three = solve_sup_g(problem, 12, 99);
  ::unsetenv("SEVALUE_THREADS");
  ASSERT_EQ(one.all.size(), three.all.size());
  for (std::size_t i = 0; i < one.all.size(); ++i) EXPECT_EQ(one.all[i].g, three.all[i].g);
  EXPECT_EQ(one.g, three.g);
  const auto other = solve_sup_g(problem, 12, 100);
  EXPECT_NE(one.all.front().g, other.all.front().g);
}

TEST(SupG, MinimumMode) {
  const SpaceConfig space(4, 2);
  const SEProblem problem(Observable::interference(space, Statistics::Distinguishable), Statistics::Distinguishable,
                          Partition({1, 1}));
  SolverOptions options;
  options.mode = Extremum::Min;
  EXPECT_NEAR(solve_sup_g(problem, 16, 3, options).g, -0.5, 1e-9);
}

TEST(SupG, InterferenceSmall) {
  for (Statistics st : kAll) {
    const SpaceConfig space(4, 2);
    const Observable l = Observable::interference(space, st);
    EXPECT_NEAR(solve_k_separable(l, st, 1, 8, 1).g, 1.0, 1e-8) << to_string(st);
    EXPECT_NEAR(solve_k_separable(l, st, 2, 16, 1).g, 0.5, 1e-8) << to_string(st);
  }
  const SpaceConfig s3(6, 3);
  for (Statistics st : kAll) {
    const auto res = solve_k_separable(Observable::interference(s3, st), st, 3, 16, 2);
    EXPECT_NEAR(res.g, 0.25, 1e-8) << to_string(st);
  }
}

TEST(Analytic, RankOneExamples) {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(5, 5);
  m(1, 2) = m(3, 4) = 0.5;
  m(2, 1) = m(4, 3) = -0.5;
  EXPECT_NEAR(analytic_rank_one(two_particle(m), Statistics::Fermion).g, 0.5, 1e-14);

  const Eigen::MatrixXcd id3 = Eigen::MatrixXcd::Identity(3, 3) / std::sqrt(3.0);
  EXPECT_NEAR(analytic_rank_one(two_particle(id3), Statistics::Boson).g, 2.0 / 3.0, 1e-14);

  const Eigen::MatrixXcd id2 = Eigen::MatrixXcd::Identity(2, 2) / std::sqrt(2.0);
  EXPECT_NEAR(analytic_rank_one(two_particle(id2), Statistics::Distinguishable).g, 0.5, 1e-14);

  EXPECT_THROW(analytic_rank_one(StateVector::zero(SpaceConfig(2, 3)), Statistics::Boson), InputError);
  EXPECT_THROW(analytic_rank_one(two_particle(id2), Statistics::Fermion), InputError);
}

TEST(Analytic, SolutionsSatisfyEquations) {
  std::mt19937_64 rng(27);
  for (int d = 2; d <= 5; ++d) {
    for (const auto& [state, st] : {std::pair{random_fermion(d, rng), Statistics::Fermion},
                                    std::pair{random_boson(d, rng), Statistics::Boson}}) {
      const auto a = analytic_rank_one(state, st);
      const SEProblem problem = rank_one_problem(state, st);
      double best = -1.0;
      for (const SESolution& s : a.solutions) {
        EXPECT_LT(s.residual, 1e-9) << to_string(st) << " d=" << d << " g=" << s.g;
        EXPECT_NEAR(rayleigh_quotient(problem, s.party_vectors), s.g, 1e-10);
        best = std::max(best, s.g);
      }
      EXPECT_NEAR(best, a.g, 1e-12);
    }
  }
}

TEST(Analytic, DistinguishableReducesToSchmidt) {
  std::mt19937_64 rng(28);
  const StateVector psi = StateVector(SpaceConfig(4, 2), ref::gaussian(16, rng)).normalized();
  const auto a = analytic_rank_one(psi, Statistics::Distinguishable);
  const auto s = schmidt(psi);
  EXPECT_NEAR(a.g, s.coefficients[0] * s.coefficients[0], 1e-12);
  EXPECT_NEAR(solve_sup_g(rank_one_problem(psi, Statistics::Distinguishable), 16, 4).g, a.g, 1e-9);
}

TEST(Analytic, Interference) {
  for (Statistics st : kAll) {
    EXPECT_NEAR(analytic_interference(SpaceConfig(4, 2), st, Partition({2})).g, 1.0, 1e-14);
    EXPECT_NEAR(analytic_interference(SpaceConfig(4, 2), st, Partition({1, 1})).g, 0.5, 1e-14);
    for (const Partition& p : {Partition({2, 1}), Partition({1, 2})}) {
      const auto a = analytic_interference(SpaceConfig(6, 3), st, p);
      EXPECT_NEAR(a.g, 0.5, 1e-14);
      for (const SESolution& s : a.solutions) EXPECT_LT(s.residual, 1e-12) << to_string(st) << p.to_string();
    }
    EXPECT_NEAR(analytic_interference(SpaceConfig(6, 3), st, Partition::full(3)).g, 0.25, 1e-14);
  }
  EXPECT_THROW(analytic_interference(SpaceConfig(5, 3), Statistics::Boson, Partition::full(3)), InputError);
}

TEST(Oracle, IdentityGivesOne) {
  for (Statistics st : kAll) {
    const SpaceConfig space(3, 3);
    const SEProblem problem(Observable::projector(st, space), st, Partition({1, 1, 1}));
    EXPECT_NEAR(brute_force_bound(problem, 500, 1), 1.0, 1e-12);
  }
}

TEST(Oracle, QuotientMatchesDirectEvaluation) {
  std::mt19937_64 rng(29);
  const SpaceConfig space(3, 4);
  for (Statistics st : kAll) {
    const Eigen::MatrixXcd x = ref::hermitian(81, rng);
    const SEProblem problem(Observable::from_dense(space, x), st, Partition({2, 1, 1}));
    const ProductSampler sampler(problem);
    const Eigen::MatrixXcd p = ref::projector(st == Statistics::Fermion ? -1 : 1, 3, 4);
    for (int rep = 0; rep < 5; ++rep) {
      const auto parties = sample_party_vectors(space, problem.partition(), rng);
      Eigen::VectorXcd b = parties[0];
      for (std::size_t k = 1; k < parties.size(); ++k) b = ref::kron(b, parties[k]);
      if (st != Statistics::Distinguishable) b = p * b;
      const auto [num, den] = sampler.quotient(parties);
      EXPECT_NEAR(num, b.dot(x * b).real(), 1e-10 * std::max(1.0, std::abs(num)));
      EXPECT_NEAR(den, b.squaredNorm(), 1e-10 * std::max(1.0, den));
    }
  }
}

TEST(Oracle, BelowAnalyticBound) {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(4, 4);
  m(0, 1) = 0.8;
  m(1, 0) = -0.8;
  m(2, 3) = 0.6;
  m(3, 2) = -0.6;
  const StateVector f = two_particle(m).normalized();
  const double g = analytic_rank_one(f, Statistics::Fermion).g;
  const double o = brute_force_bound(rank_one_problem(f, Statistics::Fermion), 20000, 5);
  EXPECT_LE(o, g + 1e-12);
  EXPECT_GE(o, g - 0.05);

  const SpaceConfig space(4, 2);
  for (Statistics st : kAll) {
    const SEProblem problem(Observable::interference(space, st), st, Partition({1, 1}));
    const double v = brute_force_bound(problem, 20000, 6);
    EXPECT_LE(v, 0.5 + 1e-12) << to_string(st);
    EXPECT_GE(v, 0.45) << to_string(st);
  }
}

TEST(Covariance, IdentityTransform) {
  std::mt19937_64 rng(30);
  const SEProblem problem = rank_one_problem(random_fermion(4, rng), Statistics::Fermion);
  const auto sol = solve_sup_g(problem, 8, 1).best;
  const auto same = transform_solution(sol, 1.0, 0.0, Eigen::MatrixXcd::Identity(4, 4));
  EXPECT_EQ(same.g, sol.g);
  for (std::size_t k = 0; k < sol.party_vectors.size(); ++k)
    EXPECT_LT((same.party_vectors[k] - sol.party_vectors[k]).norm(), 1e-15);
  EXPECT_THROW(transform_solution(sol, 0.0, 1.0, Eigen::MatrixXcd::Identity(4, 4)), InputError);
  EXPECT_THROW(transform_solution(sol, 1.0, 0.0, 2.0 * Eigen::MatrixXcd::Identity(4, 4)), InputError);
}

TEST(Covariance, AffineAndUnitary) {
  std::mt19937_64 rng(31);
  for (Statistics st : kAll) {
    const StateVector psi = st == Statistics::Fermion ? random_fermion(3, rng)
                            : st == Statistics::Boson ? random_boson(3, rng)
                                                      : StateVector(SpaceConfig(3, 2), ref::gaussian(9, rng)).normalized();
    const SEProblem problem = rank_one_problem(psi, st);
    const auto sol = solve_sup_g(problem, 16, 2).best;

    const auto shifted = transform_solution(sol, 2.0, -1.0, Eigen::MatrixXcd::Identity(3, 3));
    EXPECT_NEAR(shifted.g, 2.0 * sol.g - 1.0, 1e-14);
    EXPECT_LT((shifted.party_vectors[0] - sol.party_vectors[0]).norm(), 1e-15);

    const Eigen::MatrixXcd u = ref::unitary(3, rng);
    for (const auto& [l1, l2] : {std::pair{1.0, 0.0}, std::pair{-0.7, 0.3}}) {
      const SEProblem moved(transform_observable(problem.observable(), st, l1, l2, u), st, problem.partition());
      const auto t = transform_solution(sol, l1, l2, u);
      const auto check = evaluate_solution(moved, t.party_vectors);
      EXPECT_NEAR(check.g, t.g, 1e-10);
      EXPECT_LT(check.residual, 1e-8);
      if (l1 > 0) EXPECT_NEAR(solve_sup_g(moved, 16, 2).g, t.g, 1e-8) << to_string(st);
    }
  }
}

TEST(Covariance, LocalOperatorMatchesKron) {
  std::mt19937_64 rng(32);
  const Eigen::MatrixXcd u = ref::unitary(3, rng);
  const Eigen::VectorXcd v = ref::gaussian(27, rng);
  EXPECT_LT((apply_local_operator(u, v) - ref::kron(ref::kron(u, u), u) * v).norm(), 1e-12);
}

TEST(SecondForm, ConvergedSolutions) {
  std::mt19937_64 rng(33);
  for (Statistics st : kAll) {
    const SEProblem problem(Observable::interference(SpaceConfig(6, 3), st), st, Partition({2, 1}));
    const auto res = solve_sup_g(problem, 8, 3);
    for (const SESolution& s : res.all) {
      if (!s.converged) continue;
      const auto check = verify_second_form(s, problem);
      EXPECT_LE(check.max_overlap, 1e-8) << to_string(st);
      EXPECT_LE(check.sector_error, 1e-10);
    }
  }
}

TEST(SecondForm, AnalyticFermionAndPerturbation) {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(4, 4);
  m(0, 1) = 0.8;
  m(1, 0) = -0.8;
  m(2, 3) = 0.6;
  m(3, 2) = -0.6;
  const StateVector f = two_particle(m).normalized();
  const SEProblem problem = rank_one_problem(f, Statistics::Fermion);
  const auto a = analytic_rank_one(f, Statistics::Fermion);
  for (const SESolution& s : a.solutions) {
    if (s.g == 0.0) continue;
    EXPECT_LE(verify_second_form(s, problem).max_overlap, 1e-12);
    SESolution off = s;
    off.g += 0.1;
    EXPECT_GT(verify_second_form(off, problem).max_overlap, 1e-3);
  }
}
