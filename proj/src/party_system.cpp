#include "party_system.hpp"

#include <algorithm>

#include "sepwit/error.hpp"

namespace sepwit::detail {

namespace {

constexpr int kLocalCap = 4096;

}  // namespace

PartySystem::PartySystem(const SEProblem& problem)
    : problem_(problem), table_(problem.space()), entries_(problem.observable().entries()),
      support_(problem.observable().support()) {
  const SpaceConfig& space = problem.space();
  const Partition& part = problem.partition();
  const int n = space.particles();
  for (int k = 0; k < part.parties(); ++k) {
    local_dim_.push_back(space.power(part.size(k)));
    stride_.push_back(space.power(n - part.offset(k) - part.size(k)));
  }
  for (int k = 0; k < part.parties(); ++k) {
    LocalCoordinates c;
    if (problem.statistics() == Statistics::Distinguishable) {
      c.sector = false;
      const std::size_t m = local_dim_[static_cast<std::size_t>(k)];
      std::vector<char> hit(m, 0);
      for (std::size_t r : support_) hit[local_index(r, k)] = 1;
      c.column.assign(m, -1);
      c.coeff.assign(m, 1.0);
      for (std::size_t x = 0; x < m; ++x)
        if (hit[x]) c.column[x] = c.count++;
    } else {
      SectorCoordinates sc = sector_coordinates(problem.statistics(), space.dim(), part.size(k));
      c.count = sc.count;
      c.column = std::move(sc.column);
      c.coeff = std::move(sc.coeff);
    }
    if (c.count > kLocalCap) throw InputError("local eigenproblem too large for party " + std::to_string(k));
    coords_.push_back(std::move(c));
  }
}

cplx PartySystem::weight(std::span<const Eigen::VectorXcd> blocks, std::size_t s, int j) const {
  cplx w(1.0, 0.0);
  for (int k = 0; k < this->parties(); ++k)
    if (k != j) w *= blocks[static_cast<std::size_t>(k)][static_cast<Eigen::Index>(local_index(s, k))];
  return w;
}

LocalProblem PartySystem::build(std::span<const Eigen::VectorXcd> blocks, int j) const {
  if (static_cast<int>(blocks.size()) != this->parties()) throw InputError("wrong number of party vectors");
  const LocalCoordinates& c = coords_[static_cast<std::size_t>(j)];
  LocalProblem out;
  out.a = Eigen::MatrixXcd::Zero(c.count, c.count);

  if (!c.sector) {
    double scale = 1.0;
    for (int k = 0; k < this->parties(); ++k)
      if (k != j) scale *= blocks[static_cast<std::size_t>(k)].squaredNorm();
    out.scale = scale;
    out.scaled_identity = true;
    for (const MatrixEntry& e : entries_) {
      const cplx wr = weight(blocks, e.row, j);
      const cplx wc = weight(blocks, e.col, j);
      const int alpha = c.column[local_index(e.row, j)];
      const int beta = c.column[local_index(e.col, j)];
      out.a(alpha, beta) += std::conj(wr) * e.value * wc;
    }
    out.a = 0.5 * (out.a + out.a.adjoint()).eval();
    return out;
  }

  const std::size_t total = problem_.space().total_dim();
  const double inv = 1.0 / static_cast<double>(table_.size());
  std::vector<cplx> w(total);
  for (std::size_t s = 0; s < total; ++s) w[s] = weight(blocks, s, j);

  out.b = Eigen::MatrixXcd::Zero(c.count, c.count);
  for (std::size_t s = 0; s < total; ++s) {
    if (w[s] == cplx(0.0)) continue;
    const std::size_t y = local_index(s, j);
    const int beta = c.column[y];
    if (beta < 0) continue;
    const cplx ws = w[s] * c.coeff[y];
    for (std::size_t k = 0; k < table_.size(); ++k) {
      const std::size_t t = table_.image(k, s);
      if (w[t] == cplx(0.0)) continue;
      const std::size_t x = local_index(t, j);
      const int alpha = c.column[x];
      if (alpha < 0) continue;
      out.b(alpha, beta) += (table_.sign(k, problem_.statistics()) * inv) * std::conj(w[t] * c.coeff[x]) * ws;
    }
  }
  out.b = 0.5 * (out.b + out.b.adjoint()).eval();

  // phi_r[alpha] = <e_r| I |..x_alpha..> on the support rows of L.
  struct Term {
    int alpha;
    cplx value;
  };
  std::vector<std::vector<Term>> phi(support_.size());
  for (std::size_t p = 0; p < support_.size(); ++p) {
    const std::size_t r = support_[p];
    for (std::size_t k = 0; k < table_.size(); ++k) {
      const std::size_t t = table_.image(k, r);
      if (w[t] == cplx(0.0)) continue;
      const std::size_t x = local_index(t, j);
      const int alpha = c.column[x];
      if (alpha < 0) continue;
      const cplx v = (table_.sign(k, problem_.statistics()) * inv * c.coeff[x]) * w[t];
      auto it = std::find_if(phi[p].begin(), phi[p].end(), [&](const Term& term) { return term.alpha == alpha; });
      if (it == phi[p].end())
        phi[p].push_back({alpha, v});
      else
        it->value += v;
    }
  }
  auto position = [&](std::size_t idx) {
    return static_cast<std::size_t>(std::lower_bound(support_.begin(), support_.end(), idx) - support_.begin());
  };
  for (const MatrixEntry& e : entries_) {
    const auto& pr = phi[position(e.row)];
    const auto& pc = phi[position(e.col)];
    for (const Term& a : pr)
      for (const Term& b : pc) out.a(a.alpha, b.alpha) += std::conj(a.value) * e.value * b.value;
  }
  out.a = 0.5 * (out.a + out.a.adjoint()).eval();
  return out;
}

Eigen::VectorXcd PartySystem::compress(int j, const Eigen::VectorXcd& v) const {
  const LocalCoordinates& c = coords_[static_cast<std::size_t>(j)];
  Eigen::VectorXcd x = Eigen::VectorXcd::Zero(c.count);
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const int col = c.column[static_cast<std::size_t>(i)];
    if (col >= 0) x[col] += c.coeff[static_cast<std::size_t>(i)] * v[i];
  }
  return x;
}

Eigen::VectorXcd PartySystem::expand(int j, const Eigen::VectorXcd& x) const {
  const LocalCoordinates& c = coords_[static_cast<std::size_t>(j)];
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(local_dim(j)));
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const int col = c.column[static_cast<std::size_t>(i)];
    if (col >= 0) v[i] = c.coeff[static_cast<std::size_t>(i)] * x[col];
  }
  return v;
}

double PartySystem::hidden_norm2(int j, const Eigen::VectorXcd& v) const {
  const LocalCoordinates& c = coords_[static_cast<std::size_t>(j)];
  if (c.sector) return 0.0;
  double sum = 0.0;
  for (Eigen::Index i = 0; i < v.size(); ++i)
    if (c.column[static_cast<std::size_t>(i)] < 0) sum += std::norm(v[i]);
  return sum;
}

std::pair<double, double> PartySystem::quotient(const LocalProblem& local, int j, const Eigen::VectorXcd& v) const {
  const Eigen::VectorXcd x = compress(j, v);
  const double num = x.dot(local.a * x).real();
  const double den = local.scaled_identity ? local.scale * (x.squaredNorm() + hidden_norm2(j, v))
                                           : x.dot(local.b * x).real();
  return {num, den};
}

double PartySystem::relative_residual(const LocalProblem& local, int j, const Eigen::VectorXcd& v,
                                      double g) const {
  const Eigen::VectorXcd x = compress(j, v);
  if (local.scaled_identity) {
    const double hidden = hidden_norm2(j, v);
    const double r2 = (local.a * x - g * local.scale * x).squaredNorm() + g * g * local.scale * local.scale * hidden;
    const double bn = local.scale * std::sqrt(x.squaredNorm() + hidden);
    return std::sqrt(r2) / bn;
  }
  const Eigen::VectorXcd bx = local.b * x;
  return (local.a * x - g * bx).norm() / bx.norm();
}

Eigen::VectorXcd PartySystem::product(std::span<const Eigen::VectorXcd> blocks) const {
  const std::size_t total = problem_.space().total_dim();
  Eigen::VectorXcd out(static_cast<Eigen::Index>(total));
  for (std::size_t s = 0; s < total; ++s) out[static_cast<Eigen::Index>(s)] = weight(blocks, s, -1);
  return out;
}

StateVector PartySystem::projected(std::span<const Eigen::VectorXcd> blocks) const {
  StateVector v(problem_.space(), product(blocks));
  if (problem_.statistics() == Statistics::Distinguishable) return v;
  return project(problem_.statistics(), v, table_);
}

StateVector PartySystem::apply_projector(const Eigen::VectorXcd& v) const {
  StateVector sv(problem_.space(), v);
  if (problem_.statistics() == Statistics::Distinguishable) return sv;
  return project(problem_.statistics(), sv, table_);
}

Eigen::VectorXcd PartySystem::contract(std::span<const Eigen::VectorXcd> blocks, int j,
                                       const Eigen::VectorXcd& v) const {
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(local_dim(j)));
  for (std::size_t s = 0; s < problem_.space().total_dim(); ++s) {
    const cplx a = v[static_cast<Eigen::Index>(s)];
    if (a == cplx(0.0)) continue;
    out[static_cast<Eigen::Index>(local_index(s, j))] += std::conj(weight(blocks, s, j)) * a;
  }
  return out;
}

}  // namespace sepwit::detail
