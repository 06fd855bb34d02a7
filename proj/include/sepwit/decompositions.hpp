#pragma once

#include <Eigen/Dense>

#include "sepwit/density.hpp"
#include "sepwit/tensor.hpp"

namespace sepwit {

/// psi = sum_n lambda_n |u_n, v_n> with nonincreasing lambda_n >= 0.
/// All d columns are returned; trailing coefficients may vanish.
struct SchmidtDecomposition {
  Eigen::VectorXd coefficients;
  Eigen::MatrixXcd left_basis;
  Eigen::MatrixXcd right_basis;

  Eigen::VectorXcd reconstruct() const;
};

SchmidtDecomposition schmidt(const StateVector& psi);

/// M = U D U^T with U unitary.  For symmetric input D = diag(kappas); for
/// skew input D is block diagonal with blocks kappa_j [[0, 1], [-1, 0]]
/// (and a trailing zero when d is odd).  kappas are nonincreasing.
struct TakagiFactorization {
  Eigen::MatrixXcd unitary;
  Eigen::VectorXd kappas;
};

TakagiFactorization takagi_symmetric(const Eigen::MatrixXcd& m);
TakagiFactorization takagi_skew(const Eigen::MatrixXcd& m);

/// The D matrix of a skew factorization.
Eigen::MatrixXcd skew_block_matrix(const Eigen::VectorXd& kappas, Eigen::Index dim);

/// f = sum_n kappa_n (|w_{2n-1}, w_{2n}> - |w_{2n}, w_{2n-1}>).
struct FermionSlater {
  Eigen::VectorXd coefficients;
  Eigen::MatrixXcd basis;

  Eigen::VectorXcd reconstruct() const;
};

/// b = sum_n kappa'_n |w'_n, w'_n>.
struct BosonSlater {
  Eigen::VectorXd coefficients;
  Eigen::MatrixXcd basis;

  Eigen::VectorXcd reconstruct() const;
};

FermionSlater slater_fermion(const StateVector& f);
BosonSlater slater_boson(const StateVector& b);

/// Pi+|a1, a2> = U' (x) U' (lambda1 |1,1> + lambda2 |2,2>), realised by the
/// canonical pair U'[sqrt(lambda1)|1> +- i sqrt(lambda2)|2>].
struct BosonProductDecomposition {
  Eigen::MatrixXcd basis;
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  Eigen::VectorXcd party1;
  Eigen::VectorXcd party2;
};

BosonProductDecomposition boson_product_decompose(const Eigen::VectorXcd& a1, const Eigen::VectorXcd& a2);

/// Number of eigenvalues above rel_cutoff times the largest one.
int numerical_rank(const DensityOperator& rho, double rel_cutoff = 1e-10);

/// Coefficient matrix psi_{ij} of a two-particle vector.
Eigen::MatrixXcd coefficient_matrix(const StateVector& psi);

}  // namespace sepwit
