#include "sepwit/observable.hpp"

#include <algorithm>

#include "sepwit/error.hpp"

namespace sepwit {

double max_asymmetry(const Observable::Matrix& matrix) {
  const Observable::Matrix diff = matrix - Observable::Matrix(matrix.adjoint());
  double worst = 0.0;
  for (Eigen::Index r = 0; r < diff.outerSize(); ++r)
    for (Observable::Matrix::InnerIterator it(diff, r); it; ++it) worst = std::max(worst, std::abs(it.value()));
  return worst;
}

double max_asymmetry(const Eigen::MatrixXcd& matrix) {
  if (matrix.rows() != matrix.cols()) throw InputError("matrix is not square");
  return (matrix - matrix.adjoint()).cwiseAbs().maxCoeff();
}

Observable::Observable(SpaceConfig space, Matrix matrix) : space_(std::move(space)), matrix_(std::move(matrix)) {
  const auto n = static_cast<Eigen::Index>(space_.total_dim());
  if (matrix_.rows() != n || matrix_.cols() != n) throw InputError("observable dimension does not match d^N");
  matrix_.makeCompressed();
  const double asym = max_asymmetry(matrix_);
  if (asym > kTolHerm) throw InputError("observable is not Hermitian (max asymmetry " + std::to_string(asym) + ")");
}

Observable Observable::from_entries(const SpaceConfig& space, std::span<const MatrixEntry> entries) {
  const auto n = static_cast<Eigen::Index>(space.total_dim());
  std::vector<Eigen::Triplet<cplx>> triplets;
  triplets.reserve(entries.size());
  for (const auto& e : entries) {
    if (e.row >= space.total_dim() || e.col >= space.total_dim()) throw InputError("matrix entry index out of range");
    triplets.emplace_back(static_cast<Eigen::Index>(e.row), static_cast<Eigen::Index>(e.col), e.value);
  }
  Matrix m(n, n);
  m.setFromTriplets(triplets.begin(), triplets.end());
  m.prune(cplx{0.0, 0.0}, 0.0);
  return Observable(space, std::move(m));
}

Observable Observable::from_dense(const SpaceConfig& space, const Eigen::MatrixXcd& dense) {
  const auto n = static_cast<Eigen::Index>(space.total_dim());
  if (dense.rows() != n || dense.cols() != n) throw InputError("observable dimension does not match d^N");
  Matrix m = dense.sparseView(cplx{0.0, 0.0}, 0.0);
  return Observable(space, std::move(m));
}

Observable Observable::rank_one(const StateVector& psi) {
  const Eigen::VectorXcd& a = psi.amplitudes();
  std::vector<Eigen::Index> nz;
  for (Eigen::Index i = 0; i < a.size(); ++i)
    if (a[i] != cplx{}) nz.push_back(i);
  std::vector<Eigen::Triplet<cplx>> triplets;
  triplets.reserve(nz.size() * nz.size());
  for (Eigen::Index r : nz)
    for (Eigen::Index c : nz) triplets.emplace_back(r, c, a[r] * std::conj(a[c]));
  Matrix m(a.size(), a.size());
  m.setFromTriplets(triplets.begin(), triplets.end());
  Observable out(psi.space(), std::move(m));
  out.family_ = Family::RankOne;
  out.source_ = psi;
  return out;
}

Observable Observable::identity(const SpaceConfig& space) {
  const auto n = static_cast<Eigen::Index>(space.total_dim());
  Matrix m(n, n);
  m.setIdentity();
  return Observable(space, std::move(m));
}

Observable Observable::projector(Statistics stats, const SpaceConfig& space) {
  if (stats == Statistics::Distinguishable) return identity(space);
  PermutationTable table(space);
  const std::size_t total = space.total_dim();
  const double scale = 1.0 / static_cast<double>(table.size());
  std::vector<Eigen::Triplet<cplx>> triplets;
  triplets.reserve(total * table.size());
  for (std::size_t k = 0; k < table.size(); ++k) {
    const double w = (stats == Statistics::Fermion ? table.sign(k) : 1) * scale;
    for (std::size_t s = 0; s < total; ++s)
      triplets.emplace_back(static_cast<Eigen::Index>(table.image(k, s)), static_cast<Eigen::Index>(s), w);
  }
  Matrix m(static_cast<Eigen::Index>(total), static_cast<Eigen::Index>(total));
  m.setFromTriplets(triplets.begin(), triplets.end());
  m.prune(cplx{0.0, 0.0}, 1e-15);
  return Observable(space, std::move(m));
}

Observable Observable::interference(const SpaceConfig& space, Statistics stats) {
  const int n = space.particles();
  if (space.dim() < 2 * n) throw InputError("interference observable needs d >= 2N");
  std::vector<int> low(static_cast<std::size_t>(n));
  std::vector<int> high(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    low[static_cast<std::size_t>(j)] = j;
    high[static_cast<std::size_t>(j)] = n + j;
  }
  const double nu = norm_factor(stats, n);
  const MatrixEntry entries[] = {{space.flatten(low), space.flatten(high), nu}, {space.flatten(high), space.flatten(low), nu}};
  Observable out = from_entries(space, entries);
  out.family_ = Family::Interference;
  out.interference_stats_ = stats;
  return out;
}

std::vector<MatrixEntry> Observable::entries() const {
  std::vector<MatrixEntry> out;
  out.reserve(nonzeros());
  for (Eigen::Index r = 0; r < matrix_.outerSize(); ++r)
    for (Matrix::InnerIterator it(matrix_, r); it; ++it)
      out.push_back({static_cast<std::size_t>(it.row()), static_cast<std::size_t>(it.col()), it.value()});
  return out;
}

std::vector<std::size_t> Observable::support() const {
  std::vector<std::size_t> out;
  for (Eigen::Index r = 0; r < matrix_.outerSize(); ++r)
    for (Matrix::InnerIterator it(matrix_, r); it; ++it) {
      out.push_back(static_cast<std::size_t>(it.row()));
      out.push_back(static_cast<std::size_t>(it.col()));
    }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Eigen::VectorXcd Observable::apply(const Eigen::VectorXcd& v) const {
  if (v.size() != matrix_.cols()) throw InputError("vector length does not match the observable");
  return matrix_ * v;
}

cplx Observable::matrix_element(const Eigen::VectorXcd& u, const Eigen::VectorXcd& v) const {
  if (u.size() != matrix_.rows() || v.size() != matrix_.cols()) throw InputError("vector length does not match the observable");
  cplx acc{};
  for (Eigen::Index r = 0; r < matrix_.outerSize(); ++r) {
    const cplx ur = std::conj(u[r]);
    if (ur == cplx{}) continue;
    cplx row{};
    for (Matrix::InnerIterator it(matrix_, r); it; ++it) row += it.value() * v[it.col()];
    acc += ur * row;
  }
  return acc;
}

double Observable::expectation(const Eigen::VectorXcd& v) const { return matrix_element(v, v).real(); }

Eigen::MatrixXcd Observable::dense() const {
  if (!space_.allows_dense_matrix()) throw InputError("dense observable requested above the dense matrix cap");
  return Eigen::MatrixXcd(matrix_);
}

}  // namespace sepwit
