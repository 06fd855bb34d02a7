#pragma once

// Straightforward reference implementations used as test oracles.  They
// avoid the library's permutation tables and sector coordinates.

#include <algorithm>
#include <complex>
#include <random>
#include <vector>

#include <Eigen/Dense>

namespace ref {

using cplx = std::complex<double>;

inline std::vector<int> digits(std::size_t s, int d, int n) {
  std::vector<int> a(static_cast<std::size_t>(n));
  for (int i = n - 1; i >= 0; --i) {
    a[static_cast<std::size_t>(i)] = static_cast<int>(s % static_cast<std::size_t>(d));
    s /= static_cast<std::size_t>(d);
  }
  return a;
}

inline std::size_t index(const std::vector<int>& a, int d) {
  std::size_t s = 0;
  for (int x : a) s = s * static_cast<std::size_t>(d) + static_cast<std::size_t>(x);
  return s;
}

inline std::size_t ipow(int d, int n) {
  std::size_t p = 1;
  for (int i = 0; i < n; ++i) p *= static_cast<std::size_t>(d);
  return p;
}

inline int inversion_sign(const std::vector<int>& p) {
  int inv = 0;
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = i + 1; j < p.size(); ++j)
      if (p[i] > p[j]) ++inv;
  return inv % 2 ? -1 : 1;
}

/// P_sigma |a_0..a_{N-1}> = |a_sigma(0)..a_sigma(N-1)> (0-based sigma).
inline Eigen::MatrixXcd permutation_matrix(const std::vector<int>& sigma, int d) {
  const int n = static_cast<int>(sigma.size());
  const auto dim = static_cast<Eigen::Index>(ipow(d, n));
  Eigen::MatrixXcd p = Eigen::MatrixXcd::Zero(dim, dim);
  for (Eigen::Index s = 0; s < dim; ++s) {
    const auto a = digits(static_cast<std::size_t>(s), d, n);
    std::vector<int> b(a.size());
    for (int i = 0; i < n; ++i) b[static_cast<std::size_t>(i)] = a[static_cast<std::size_t>(sigma[static_cast<std::size_t>(i)])];
    p(static_cast<Eigen::Index>(index(b, d)), s) = 1.0;
  }
  return p;
}

/// sign = +1 gives the symmetrizer, -1 the antisymmetrizer.
inline Eigen::MatrixXcd projector(int sign, int d, int n) {
  std::vector<int> sigma(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) sigma[static_cast<std::size_t>(i)] = i;
  const auto dim = static_cast<Eigen::Index>(ipow(d, n));
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dim, dim);
  int count = 0;
  do {
    const double w = sign < 0 ? inversion_sign(sigma) : 1.0;
    out += w * permutation_matrix(sigma, d);
    ++count;
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  return out / static_cast<double>(count);
}

inline Eigen::VectorXcd gaussian(Eigen::Index n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Eigen::VectorXcd v(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double re = g(rng);
    v[i] = cplx(re, g(rng));
  }
  return v;
}

inline Eigen::MatrixXcd gaussian_matrix(Eigen::Index n, std::mt19937_64& rng) {
  Eigen::MatrixXcd m(n, n);
  for (Eigen::Index c = 0; c < n; ++c) m.col(c) = gaussian(n, rng);
  return m;
}

inline Eigen::MatrixXcd hermitian(Eigen::Index n, std::mt19937_64& rng) {
  const Eigen::MatrixXcd m = gaussian_matrix(n, rng);
  return 0.5 * (m + m.adjoint());
}

inline Eigen::MatrixXcd unitary(Eigen::Index n, std::mt19937_64& rng) {
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(gaussian_matrix(n, rng));
  return qr.householderQ() * Eigen::MatrixXcd::Identity(n, n);
}

inline Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

inline Eigen::VectorXcd kron(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b) {
  Eigen::VectorXcd out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a[i] * b;
  return out;
}

}  // namespace ref
