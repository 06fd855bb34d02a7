#include "sepwit/covariance.hpp"

#include <cmath>

namespace sepwit {

namespace {

int slots_of(Eigen::Index size, Eigen::Index d) {
  int n = 0;
  Eigen::Index m = 1;
  while (m < size) {
    m *= d;
    ++n;
  }
  if (m != size) throw InputError("vector length is not a power of the local dimension");
  return n;
}

void require_unitary(const Eigen::MatrixXcd& u) {
  if (u.rows() != u.cols()) throw InputError("U must be square");
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(u.rows(), u.cols());
  if ((u.adjoint() * u - id).cwiseAbs().maxCoeff() > 1e-10) throw InputError("U is not unitary");
}

}  // namespace

Eigen::VectorXcd apply_local_operator(const Eigen::MatrixXcd& op, const Eigen::VectorXcd& v) {
  const Eigen::Index d = op.rows();
  if (op.cols() != d) throw InputError("local operator must be square");
  const int n = slots_of(v.size(), d);
  Eigen::VectorXcd cur = v;
  Eigen::VectorXcd buf(d);
  Eigen::Index stride = v.size();
  for (int slot = 0; slot < n; ++slot) {
    stride /= d;
    const Eigen::Index block = stride * d;
    for (Eigen::Index outer = 0; outer < v.size(); outer += block) {
      for (Eigen::Index inner = 0; inner < stride; ++inner) {
        for (Eigen::Index a = 0; a < d; ++a) buf[a] = cur[outer + a * stride + inner];
        const Eigen::VectorXcd res = op * buf;
        for (Eigen::Index a = 0; a < d; ++a) cur[outer + a * stride + inner] = res[a];
      }
    }
  }
  return cur;
}

Observable transform_observable(const Observable& observable, Statistics stats, double lambda1, double lambda2,
                                const Eigen::MatrixXcd& u) {
  const SpaceConfig& space = observable.space();
  if (u.rows() != space.dim()) throw InputError("U does not match the single-particle dimension");
  require_unitary(u);
  if (!space.allows_dense_matrix()) throw InputError("space too large for a dense transformation");
  Eigen::MatrixXcd m = lambda1 * observable.dense();
  if (lambda2 != 0.0) m += lambda2 * projector_matrix(stats, space);
  // Right factor: rows of M W are W^T applied to rows of M.
  const Eigen::MatrixXcd ut = u.transpose();
  for (Eigen::Index i = 0; i < m.rows(); ++i) m.row(i) = apply_local_operator(ut, m.row(i).transpose()).transpose();
  const Eigen::MatrixXcd ud = u.adjoint();
  for (Eigen::Index c = 0; c < m.cols(); ++c) m.col(c) = apply_local_operator(ud, m.col(c));
  m = 0.5 * (m + m.adjoint()).eval();
  return Observable::from_dense(space, m);
}

SESolution transform_solution(const SESolution& solution, double lambda1, double lambda2,
                              const Eigen::MatrixXcd& u) {
  if (lambda1 == 0.0) throw InputError("lambda1 must be nonzero");
  require_unitary(u);
  if (u.rows() != solution.projected.space().dim()) throw InputError("U does not match the single-particle dimension");
  const Eigen::MatrixXcd ud = u.adjoint();
  SESolution out = solution;
  out.g = lambda1 * solution.g + lambda2;
  for (auto& b : out.party_vectors) b = apply_local_operator(ud, b);
  out.projected = StateVector(solution.projected.space(), apply_local_operator(ud, solution.projected.amplitudes()));
  out.residual = std::abs(lambda1) * solution.residual;
  out.chi_norm = std::abs(lambda1) * solution.chi_norm;
  return out;
}

}  // namespace sepwit
