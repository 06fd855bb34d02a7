#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "reference.hpp"
#include "sepwit/analytic.hpp"
#include "sepwit/oracle.hpp"
#include "sepwit/states.hpp"
#include "sepwit/witness.hpp"

using namespace sepwit;

namespace {

StateVector two_particle(const Eigen::MatrixXcd& m) {
  const auto d = static_cast<int>(m.rows());
  Eigen::VectorXcd v(d * d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) v[i * d + j] = m(i, j);
  return StateVector(SpaceConfig(d, 2), v);
}

StateVector balanced_boson() { return two_particle(Eigen::MatrixXcd::Identity(3, 3) / std::sqrt(3.0)); }

DensityOperator maximally_mixed(Statistics st, const SpaceConfig& space) {
  const auto basis = sector_basis(st, space);
  std::vector<WeightedState> mix;
  for (const auto& b : basis) mix.push_back({1.0 / static_cast<double>(basis.size()), b});
  return DensityOperator(space, mix);
}

}  // namespace

TEST(BuildWitness, FermionSingleBlockIsZeroOperator) {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(2, 2);
  m(0, 1) = 1.0 / std::sqrt(2.0);
  m(1, 0) = -1.0 / std::sqrt(2.0);
  const StateVector f = two_particle(m);
  const Witness w = build_witness(rank_one_problem(f, Statistics::Fermion), BoundSource::Analytic);
  EXPECT_NEAR(w.bound, 1.0, 1e-14);
  EXPECT_EQ(subspace_dimension(Statistics::Fermion, f.space()), 1u);
  std::mt19937_64 rng(40);
  for (int rep = 0; rep < 10; ++rep)
    EXPECT_NEAR(witness_value(StateVector(f.space(), ref::gaussian(4, rng)), w), 0.0, 1e-14);
}

TEST(BuildWitness, Bounds) {
  const SpaceConfig space(4, 2);
  for (Statistics st : {Statistics::Distinguishable, Statistics::Boson, Statistics::Fermion}) {
    const Witness w = build_witness(Observable::interference(space, st), st, 2, BoundSource::Analytic);
    EXPECT_NEAR(w.bound, 0.5, 1e-14);
    EXPECT_EQ(w.source, BoundSource::Analytic);
  }
  const Witness b = build_witness(rank_one_problem(balanced_boson(), Statistics::Boson), BoundSource::Analytic);
  EXPECT_NEAR(b.bound, 2.0 / 3.0, 1e-14);
  const Witness n = build_witness(rank_one_problem(balanced_boson(), Statistics::Boson), BoundSource::Numeric);
  EXPECT_NEAR(n.bound, 2.0 / 3.0, 1e-9);
  const Witness o = build_witness(rank_one_problem(balanced_boson(), Statistics::Boson), BoundSource::Oracle,
                                  WitnessForm::Upper, {.oracle_samples = 2000});
  EXPECT_LE(o.bound, 2.0 / 3.0 + 1e-12);

  const Observable generic = Observable::identity(space);
  EXPECT_THROW(build_witness(SEProblem(generic, Statistics::Boson, Partition({1, 1})), BoundSource::Analytic),
               InputError);
  EXPECT_THROW(build_witness(SEProblem(generic, Statistics::Boson, Partition({1, 1})), BoundSource::Analytic,
                             WitnessForm::Lower),
               InputError);
  const SpaceConfig four(8, 4);
  const Observable lf = Observable::interference(four, Statistics::Fermion);
  EXPECT_THROW(build_witness(SEProblem(lf, Statistics::Fermion, Partition({2, 2})), BoundSource::Analytic),
               InputError);
  EXPECT_NEAR(build_witness(SEProblem(lf, Statistics::Fermion, Partition({3, 1})), BoundSource::Analytic).bound, 0.5,
              1e-14);
  EXPECT_EQ(parse_bound_source("oracle"), BoundSource::Oracle);
  EXPECT_THROW(parse_bound_source("guess"), InputError);
}

TEST(BuildWitness, LowerForm) {
  const SpaceConfig space(4, 2);
  const Witness w = build_witness(SEProblem(Observable::interference(space, Statistics::Boson), Statistics::Boson,
                                            Partition({1, 1})),
                                  BoundSource::Numeric, WitnessForm::Lower, {.starts = 16});
  EXPECT_NEAR(w.bound, -0.5, 1e-9);
  std::mt19937_64 rng(41);
  for (int rep = 0; rep < 200; ++rep) {
    const auto parties = sample_party_vectors(space, w.partition, rng);
    EXPECT_GE(witness_value(StateVector::product(space, parties), w), -1e-9);
  }
}

TEST(Expectation, Examples) {
  const StateVector psi = balanced_boson();
  EXPECT_NEAR(expectation(DensityOperator::pure(psi), Observable::rank_one(psi)), 1.0, 1e-14);

  const DensityOperator mixed = maximally_mixed(Statistics::Boson, psi.space());
  EXPECT_NEAR(expectation(mixed, Observable::rank_one(psi)), 1.0 / 6.0, 1e-14);
  EXPECT_NEAR(expectation(DensityOperator(psi.space(), mixed.to_dense()), Observable::rank_one(psi)), 1.0 / 6.0, 1e-14);
  EXPECT_NEAR(expectation(mixed, Observable::rank_one(psi).dense()), 1.0 / 6.0, 1e-14);

  EXPECT_THROW(expectation(mixed, Observable::identity(SpaceConfig(2, 2))), InputError);
}

TEST(Expectation, GhzClosedForm) {
  const double r = 1.0 / std::sqrt(3.0);
  const auto fam = ghz_family(2, r, Statistics::Boson);
  const double value = expectation(DensityOperator::pure(ghz_state(fam)),
                                   Observable::interference(fam.space(), Statistics::Boson));
  EXPECT_NEAR(value * (1.0 - fam.tail_bound), ghz_expectation(r, 0.0), 2.0 * fam.tail_bound);
}

TEST(Detect, Examples) {
  const StateVector psi = balanced_boson();
  const Witness w = build_witness(rank_one_problem(psi, Statistics::Boson), BoundSource::Analytic);
  auto v = detect(DensityOperator::pure(psi), w);
  EXPECT_TRUE(v.entangled);
  EXPECT_NEAR(v.value, 1.0, 1e-14);
  EXPECT_NEAR(v.bound, 2.0 / 3.0, 1e-14);
  EXPECT_EQ(v.margin, kDefaultMargin);

  v = detect(maximally_mixed(Statistics::Boson, psi.space()), w);
  EXPECT_FALSE(v.entangled);

  const SpaceConfig space(6, 3);
  const Witness k1 = build_witness(Observable::interference(space, Statistics::Fermion), Statistics::Fermion, 1,
                                   BoundSource::Analytic);
  std::mt19937_64 rng(42);
  for (int rep = 0; rep < 5; ++rep) {
    const StateVector s = project(Statistics::Fermion, StateVector(space, ref::gaussian(216, rng))).normalized();
    EXPECT_FALSE(detect(DensityOperator::pure(s), k1).entangled);
  }
}

TEST(Detect, WrongSector) {
  const StateVector psi = balanced_boson();
  const Witness w = build_witness(rank_one_problem(psi, Statistics::Boson), BoundSource::Analytic);
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(9);
  v[1] = 1.0;
  EXPECT_THROW(detect(DensityOperator::pure(StateVector(psi.space(), v)), w), InputError);
}

TEST(Detect, AgreesWithWitnessSign) {
  std::mt19937_64 rng(43);
  const StateVector psi = balanced_boson();
  const Witness w = build_witness(rank_one_problem(psi, Statistics::Boson), BoundSource::Analytic);
  for (double p : {0.0, 0.2, 0.55, 0.6, 0.65, 0.9, 1.0}) {
    const DensityOperator rho = noisy_state(psi, Statistics::Boson, p);
    const bool by_value = detect(rho, w).entangled;
    const bool by_sign = witness_value(rho, w) < -kDefaultMargin;
    EXPECT_EQ(by_value, by_sign) << p;
    const DensityOperator dense(rho.space(), rho.to_dense());
    EXPECT_NEAR(witness_value(dense, w), witness_value(rho, w), 1e-12);
  }
  for (int rep = 0; rep < 10; ++rep) {
    const StateVector s = project(Statistics::Boson, StateVector(psi.space(), ref::gaussian(9, rng))).normalized();
    const DensityOperator rho = DensityOperator::pure(s);
    EXPECT_EQ(detect(rho, w).entangled, witness_value(rho, w) < -kDefaultMargin);
  }
}

TEST(Witness, NonnegativeOnSeparableStates) {
  std::mt19937_64 rng(44);
  const SpaceConfig space(6, 3);
  for (Statistics st : {Statistics::Distinguishable, Statistics::Boson, Statistics::Fermion}) {
    for (int k = 1; k <= 3; ++k) {
      const Witness w = build_witness(Observable::interference(space, st), st, k, BoundSource::Analytic);
      for (const Partition& p : partitions_of(3, k))
        for (int rep = 0; rep < 300; ++rep) {
          const StateVector s = StateVector::product(space, sample_party_vectors(space, p, rng));
          EXPECT_GE(witness_value(s, w), -1e-9 * s.amplitudes().squaredNorm());
        }
    }
  }
}

TEST(SchmidtNumber, Examples) {
  for (int d = 2; d <= 5; ++d) {
    const StateVector psi = two_particle(Eigen::MatrixXcd::Identity(d, d) / std::sqrt(static_cast<double>(d)));
    EXPECT_NEAR(schmidt_number_bound(psi, 1), 1.0 / d, 1e-14);
    EXPECT_NEAR(schmidt_number_bound(psi, d), 1.0, 1e-14);
    for (int r = 2; r <= d; ++r) EXPECT_GE(schmidt_number_bound(psi, r), schmidt_number_bound(psi, r - 1));
    EXPECT_THROW(schmidt_number_bound(psi, d + 1), InputError);
    EXPECT_THROW(schmidt_number_bound(psi, 0), InputError);
  }
  const StateVector four = two_particle(Eigen::MatrixXcd::Identity(4, 4) / 2.0);
  EXPECT_NEAR(schmidt_number_bound(four, 2), 0.5, 1e-14);

  // r = 1 agrees with a brute-force search over product vectors
  const double oracle = brute_force_bound(rank_one_problem(four, Statistics::Distinguishable), 20000, 9);
  EXPECT_LE(oracle, 0.25 + 1e-12);
  EXPECT_GE(oracle, 0.24);
}

TEST(SchmidtNumber, MatchesAnalyticDistinguishable) {
  std::mt19937_64 rng(45);
  const StateVector psi = StateVector(SpaceConfig(4, 2), ref::gaussian(16, rng)).normalized();
  EXPECT_NEAR(schmidt_number_bound(psi, 1), analytic_rank_one(psi, Statistics::Distinguishable).g, 1e-12);
}
