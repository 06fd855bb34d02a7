#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "sepwit/solver.hpp"

namespace sepwit::detail {

/// Local coordinates of one party.  For indistinguishable particles these
/// are the sector basis of the party's own block; for distinguishable
/// particles they are the local indices reached by the support of L, the
/// rest of the local space being an eigenspace of eigenvalue 0.
struct LocalCoordinates {
  bool sector = true;
  int count = 0;
  std::vector<int> column;
  std::vector<double> coeff;
};

/// A_j and B_j in local coordinates.  When `scale` is set, B_j = scale * 1
/// on the whole local space and `b` is left empty.
struct LocalProblem {
  Eigen::MatrixXcd a;
  Eigen::MatrixXcd b;
  double scale = 0.0;
  bool scaled_identity = false;
};

class PartySystem {
 public:
  explicit PartySystem(const SEProblem& problem);

  const SEProblem& problem() const { return problem_; }
  int parties() const { return problem_.partition().parties(); }
  std::size_t local_dim(int j) const { return local_dim_[static_cast<std::size_t>(j)]; }
  const LocalCoordinates& coordinates(int j) const { return coords_[static_cast<std::size_t>(j)]; }

  LocalProblem build(std::span<const Eigen::VectorXcd> blocks, int j) const;

  Eigen::VectorXcd compress(int j, const Eigen::VectorXcd& v) const;
  Eigen::VectorXcd expand(int j, const Eigen::VectorXcd& x) const;
  /// Squared norm of the part of v invisible to compress() that B_j still sees.
  double hidden_norm2(int j, const Eigen::VectorXcd& v) const;

  /// Numerator and denominator of the Rayleigh quotient seen from party j.
  std::pair<double, double> quotient(const LocalProblem& local, int j, const Eigen::VectorXcd& v) const;
  /// ||(A - gB) v|| / ||B v|| in the full local space.
  double relative_residual(const LocalProblem& local, int j, const Eigen::VectorXcd& v, double g) const;

  Eigen::VectorXcd product(std::span<const Eigen::VectorXcd> blocks) const;
  StateVector projected(std::span<const Eigen::VectorXcd> blocks) const;
  StateVector apply_projector(const Eigen::VectorXcd& v) const;
  /// sum_s conj(w(s)) v[s] |loc_j(s)>, i.e. <b_1..x..b_K|v> for every x.
  Eigen::VectorXcd contract(std::span<const Eigen::VectorXcd> blocks, int j, const Eigen::VectorXcd& v) const;

 private:
  std::size_t local_index(std::size_t s, int k) const {
    return (s / stride_[static_cast<std::size_t>(k)]) % local_dim_[static_cast<std::size_t>(k)];
  }
  /// prod_{k != j} b_k[loc_k(s)].
  cplx weight(std::span<const Eigen::VectorXcd> blocks, std::size_t s, int j) const;

  const SEProblem& problem_;
  PermutationTable table_;
  std::vector<MatrixEntry> entries_;
  std::vector<std::size_t> support_;
  std::vector<std::size_t> local_dim_;
  std::vector<std::size_t> stride_;
  std::vector<LocalCoordinates> coords_;
};

}  // namespace sepwit::detail
