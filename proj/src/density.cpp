#include "sepwit/density.hpp"

#include <cmath>

#include "sepwit/error.hpp"

namespace sepwit {

DensityOperator::DensityOperator(SpaceConfig space, Eigen::MatrixXcd matrix) : space_(std::move(space)) {
  const auto n = static_cast<Eigen::Index>(space_.total_dim());
  if (matrix.rows() != n || matrix.cols() != n) throw InputError("density matrix dimension does not match d^N");
  if ((matrix - matrix.adjoint()).cwiseAbs().maxCoeff() > kTolHerm) throw InputError("density matrix is not Hermitian");
  rep_ = std::move(matrix);
}

DensityOperator::DensityOperator(SpaceConfig space, std::vector<WeightedState> mixture) : space_(std::move(space)) {
  for (const auto& component : mixture) {
    if (!(component.weight >= 0.0)) throw InputError("mixture weights must be nonnegative");
    if (!(component.state.space() == space_)) throw InputError("mixture component lives on a different space");
  }
  rep_ = std::move(mixture);
}

DensityOperator DensityOperator::pure(const StateVector& psi) {
  return DensityOperator(psi.space(), std::vector<WeightedState>{{1.0, psi}});
}

double DensityOperator::trace() const {
  if (is_mixture()) {
    double t = 0.0;
    for (const auto& c : mixture()) t += c.weight * c.state.amplitudes().squaredNorm();
    return t;
  }
  return matrix().trace().real();
}

Eigen::MatrixXcd DensityOperator::to_dense() const {
  if (!is_mixture()) return matrix();
  if (!space_.allows_dense_matrix()) throw InputError("densifying a mixture above the dense matrix cap");
  const auto n = static_cast<Eigen::Index>(space_.total_dim());
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(n, n);
  for (const auto& c : mixture()) out.noalias() += c.weight * c.state.amplitudes() * c.state.amplitudes().adjoint();
  return out;
}

bool DensityOperator::in_sector(Statistics stats, double tol) const {
  if (stats == Statistics::Distinguishable) return true;
  if (is_mixture()) {
    PermutationTable table(space_);
    double bound = 0.0;
    for (const auto& c : mixture()) {
      if (c.weight == 0.0) continue;
      const StateVector p = project(stats, c.state, table);
      bound += 2.0 * c.weight * c.state.norm() * (c.state.amplitudes() - p.amplitudes()).norm();
    }
    return bound <= tol;
  }
  const Eigen::MatrixXcd pi = projector_matrix(stats, space_);
  return (pi * matrix() * pi - matrix()).norm() <= tol;
}

DensityOperator partial_trace_first(const DensityOperator& rho) {
  const SpaceConfig& space = rho.space();
  if (space.particles() < 2) throw InputError("partial trace needs N >= 2");
  const SpaceConfig reduced(space.dim(), space.particles() - 1);
  const auto d = static_cast<Eigen::Index>(space.dim());
  const auto rest = static_cast<Eigen::Index>(reduced.total_dim());
  if (rest > static_cast<Eigen::Index>(kDenseMatrixCap)) throw InputError("reduced operator above the dense matrix cap");
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(rest, rest);
  if (rho.is_mixture()) {
    for (const auto& c : rho.mixture()) {
      // Row-major reshape: row i holds the amplitudes with first digit i.
      const Eigen::Map<const Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> v(
          c.state.amplitudes().data(), d, rest);
      out.noalias() += c.weight * (v.transpose() * v.conjugate());
    }
  } else {
    const Eigen::MatrixXcd& m = rho.matrix();
    for (Eigen::Index i = 0; i < d; ++i) out += m.block(i * rest, i * rest, rest, rest);
  }
  out = 0.5 * (out + out.adjoint()).eval();
  return DensityOperator(reduced, std::move(out));
}

}  // namespace sepwit
