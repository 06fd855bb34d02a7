#include "sepwit/decompositions.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "sepwit/error.hpp"

namespace sepwit {

namespace {

double drop_threshold(const Eigen::MatrixXcd& m) {
  const double scale = m.cwiseAbs().maxCoeff();
  return 64.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, scale) * static_cast<double>(m.rows());
}

// Extends orthonormal columns to a unitary.
Eigen::MatrixXcd complete_unitary(const Eigen::MatrixXcd& columns, Eigen::Index dim) {
  Eigen::MatrixXcd out(dim, dim);
  const Eigen::Index p = columns.cols();
  out.leftCols(p) = columns;
  if (p == dim) return out;
  Eigen::MatrixXcd q;
  if (p == 0) {
    q = Eigen::MatrixXcd::Identity(dim, dim);
  } else {
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(columns);
    q = qr.householderQ() * Eigen::MatrixXcd::Identity(dim, dim);
  }
  out.rightCols(dim - p) = q.rightCols(dim - p);
  return out;
}

Eigen::VectorXcd reshape_to_vector(const Eigen::MatrixXcd& m) {
  Eigen::VectorXcd v(m.size());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) v[i * m.cols() + j] = m(i, j);
  return v;
}

void require_two_particles(const StateVector& psi) {
  if (psi.space().particles() != 2) throw InputError("decomposition requires a two-particle vector (N = 2)");
}

}  // namespace

Eigen::MatrixXcd coefficient_matrix(const StateVector& psi) {
  require_two_particles(psi);
  const Eigen::Index d = psi.space().dim();
  Eigen::MatrixXcd m(d, d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) m(i, j) = psi.amplitudes()[i * d + j];
  return m;
}

Eigen::VectorXcd SchmidtDecomposition::reconstruct() const {
  Eigen::MatrixXcd m = left_basis * coefficients.cast<cplx>().asDiagonal() * right_basis.transpose();
  return reshape_to_vector(m);
}

SchmidtDecomposition schmidt(const StateVector& psi) {
  const Eigen::MatrixXcd m = coefficient_matrix(psi);
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  // psi = U S V^dagger, so the right Schmidt vectors are the conjugated V columns.
  return {svd.singularValues(), svd.matrixU(), svd.matrixV().conjugate()};
}

TakagiFactorization takagi_symmetric(const Eigen::MatrixXcd& m) {
  if (m.rows() != m.cols()) throw InputError("Takagi factorization needs a square matrix");
  if ((m - m.transpose()).cwiseAbs().maxCoeff() > kTolHerm) throw InputError("matrix is not symmetric");
  const Eigen::Index d = m.rows();
  const Eigen::MatrixXcd sym = 0.5 * (m + m.transpose());
  // For M = A + iB the real symmetric [[A, B], [B, -A]] has eigenpairs
  // (+-sigma, [x; y]); u = x + iy then satisfies M conj(u) = sigma u.
  Eigen::MatrixXd h(2 * d, 2 * d);
  h.topLeftCorner(d, d) = sym.real();
  h.topRightCorner(d, d) = sym.imag();
  h.bottomLeftCorner(d, d) = sym.imag();
  h.bottomRightCorner(d, d) = -sym.real();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(h);
  const double thr = drop_threshold(m);
  std::vector<Eigen::Index> picked;
  for (Eigen::Index k = 2 * d - 1; k >= 0 && static_cast<Eigen::Index>(picked.size()) < d; --k) {
    if (eig.eigenvalues()[k] <= thr) break;
    picked.push_back(k);
  }
  Eigen::MatrixXcd cols(d, static_cast<Eigen::Index>(picked.size()));
  Eigen::VectorXd kappas = Eigen::VectorXd::Zero(d);
  for (std::size_t c = 0; c < picked.size(); ++c) {
    const auto vec = eig.eigenvectors().col(picked[c]);
    cols.col(static_cast<Eigen::Index>(c)) = vec.head(d).cast<cplx>() + cplx(0.0, 1.0) * vec.tail(d).cast<cplx>();
    kappas[static_cast<Eigen::Index>(c)] = eig.eigenvalues()[picked[c]];
  }
  return {complete_unitary(cols, d), kappas};
}

Eigen::MatrixXcd skew_block_matrix(const Eigen::VectorXd& kappas, Eigen::Index dim) {
  Eigen::MatrixXcd dmat = Eigen::MatrixXcd::Zero(dim, dim);
  for (Eigen::Index j = 0; j < kappas.size(); ++j) {
    dmat(2 * j, 2 * j + 1) = kappas[j];
    dmat(2 * j + 1, 2 * j) = -kappas[j];
  }
  return dmat;
}

TakagiFactorization takagi_skew(const Eigen::MatrixXcd& m) {
  if (m.rows() != m.cols()) throw InputError("Takagi factorization needs a square matrix");
  if ((m + m.transpose()).cwiseAbs().maxCoeff() > kTolHerm) throw InputError("matrix is not skew-symmetric");
  const Eigen::Index d = m.rows();
  const Eigen::Index pairs = d / 2;
  const Eigen::MatrixXcd skew = 0.5 * (m - m.transpose());
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(skew, Eigen::ComputeFullU);
  const double thr = drop_threshold(m);
  Eigen::MatrixXcd cols(d, 2 * pairs);
  Eigen::VectorXd kappas = Eigen::VectorXd::Zero(pairs);
  Eigen::Index used = 0;
  auto orthogonalize = [&](Eigen::VectorXcd v) {
    for (int pass = 0; pass < 2; ++pass)
      for (Eigen::Index c = 0; c < used; ++c) v -= cols.col(c).dot(v) * cols.col(c);
    return v;
  };
  for (Eigen::Index k = 0; k < d && used / 2 < pairs; ++k) {
    const double kappa = svd.singularValues()[k];
    if (kappa <= thr) break;
    Eigen::VectorXcd u1 = orthogonalize(svd.matrixU().col(k));
    if (u1.norm() < 0.5) continue;
    u1.normalize();
    // For a unit left singular vector u1, u2 = -M conj(u1) / kappa is a unit
    // partner with M = kappa (u1 u2^T - u2 u1^T) + rest.
    cols.col(used++) = u1;
    Eigen::VectorXcd u2 = orthogonalize(-(skew * u1.conjugate()) / kappa);
    u2.normalize();
    cols.col(used++) = u2;
    kappas[used / 2 - 1] = kappa;
  }
  return {complete_unitary(cols.leftCols(used), d), kappas};
}

Eigen::VectorXcd FermionSlater::reconstruct() const {
  return reshape_to_vector(basis * skew_block_matrix(coefficients, basis.rows()) * basis.transpose());
}

Eigen::VectorXcd BosonSlater::reconstruct() const {
  return reshape_to_vector(basis * coefficients.cast<cplx>().asDiagonal() * basis.transpose());
}

FermionSlater slater_fermion(const StateVector& f) {
  require_two_particles(f);
  const StateVector p = project(Statistics::Fermion, f);
  if ((p.amplitudes() - f.amplitudes()).norm() > kTolHerm * std::max(1.0, f.norm()))
    throw InputError("vector is not antisymmetric");
  const TakagiFactorization t = takagi_skew(coefficient_matrix(f));
  return {t.kappas, t.unitary};
}

BosonSlater slater_boson(const StateVector& b) {
  require_two_particles(b);
  const StateVector p = project(Statistics::Boson, b);
  if ((p.amplitudes() - b.amplitudes()).norm() > kTolHerm * std::max(1.0, b.norm()))
    throw InputError("vector is not symmetric");
  const TakagiFactorization t = takagi_symmetric(coefficient_matrix(b));
  return {t.kappas, t.unitary};
}

BosonProductDecomposition boson_product_decompose(const Eigen::VectorXcd& a1, const Eigen::VectorXcd& a2) {
  if (a1.size() != a2.size()) throw InputError("party vectors differ in dimension");
  if (a1.norm() == 0.0 || a2.norm() == 0.0) throw InputError("party vector is zero");
  const Eigen::Index d = a1.size();
  BosonProductDecomposition out;
  const Eigen::MatrixXcd m = 0.5 * (a1 * a2.transpose() + a2 * a1.transpose());
  const TakagiFactorization t = takagi_symmetric(m);
  out.basis = t.unitary;
  out.lambda1 = t.kappas[0];
  out.party1 = std::sqrt(out.lambda1) * t.unitary.col(0);
  out.party2 = out.party1;
  if (d > 1) {
    out.lambda2 = t.kappas[1];
    const cplx i(0.0, 1.0);
    out.party1 += i * std::sqrt(out.lambda2) * t.unitary.col(1);
    out.party2 -= i * std::sqrt(out.lambda2) * t.unitary.col(1);
  }
  return out;
}

int numerical_rank(const DensityOperator& rho, double rel_cutoff) {
  const Eigen::MatrixXcd m = rho.to_dense();
  if ((m - m.adjoint()).cwiseAbs().maxCoeff() > kTolHerm) throw InputError("operator is not Hermitian");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(m, Eigen::EigenvaluesOnly);
  const double largest = eig.eigenvalues().cwiseAbs().maxCoeff();
  if (largest == 0.0) return 0;
  int rank = 0;
  for (Eigen::Index k = 0; k < eig.eigenvalues().size(); ++k)
    if (eig.eigenvalues()[k] > rel_cutoff * largest) ++rank;
  return rank;
}

}  // namespace sepwit
