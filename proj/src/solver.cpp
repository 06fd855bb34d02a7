#include "sepwit/solver.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>

#include "party_system.hpp"

namespace sepwit {

using detail::LocalProblem;
using detail::PartySystem;

SEProblem::SEProblem(Observable observable, Statistics stats, Partition partition)
    : observable_(std::move(observable)), stats_(stats), partition_(std::move(partition)) {
  if (partition_.particles() != observable_.space().particles())
    throw InputError("partition " + partition_.to_string() + " does not sum to N = " +
                     std::to_string(observable_.space().particles()));
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

namespace {

void check_blocks(const SpaceConfig& space, const Partition& partition, std::span<const Eigen::VectorXcd> parties) {
  if (partition.particles() != space.particles()) throw InputError("partition does not match the space");
  if (static_cast<int>(parties.size()) != partition.parties()) throw InputError("wrong number of party vectors");
  for (int k = 0; k < partition.parties(); ++k)
    if (static_cast<std::size_t>(parties[static_cast<std::size_t>(k)].size()) != space.power(partition.size(k)))
      throw InputError("party vector " + std::to_string(k) + " has the wrong length");
}

/// Columns x of E_j: E_j[s, x] = prod_{k != j} b_k[loc_k(s)] when loc_j(s) = x.
Eigen::MatrixXcd embedding(const SpaceConfig& space, const Partition& partition,
                           std::span<const Eigen::VectorXcd> parties, int j) {
  check_blocks(space, partition, parties);
  if (j < 0 || j >= partition.parties()) throw InputError("party index out of range");
  const int n = space.particles();
  const std::size_t total = space.total_dim();
  const std::size_t m = space.power(partition.size(j));
  Eigen::MatrixXcd e = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(total), static_cast<Eigen::Index>(m));
  for (std::size_t s = 0; s < total; ++s) {
    cplx w(1.0, 0.0);
    std::size_t x = 0;
    for (int k = 0; k < partition.parties(); ++k) {
      const std::size_t stride = space.power(n - partition.offset(k) - partition.size(k));
      const std::size_t loc = (s / stride) % space.power(partition.size(k));
      if (k == j)
        x = loc;
      else
        w *= parties[static_cast<std::size_t>(k)][static_cast<Eigen::Index>(loc)];
    }
    e(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(x)) = w;
  }
  return e;
}

struct Update {
  Eigen::VectorXcd x;
  double g = 0.0;
};

bool better(double a, double b, Extremum mode) { return mode == Extremum::Max ? a > b : a < b; }

/// Extremal eigenpair of A x = g B x on range(B).  Among (near-)degenerate
/// eigenvectors the one closest to the previous iterate is taken.
Update local_extremum(const LocalProblem& lp, const Eigen::VectorXcd& prev, Extremum mode) {
  const Eigen::Index m = lp.a.rows();
  Eigen::MatrixXcd r;
  Eigen::MatrixXcd r_inv;
  if (lp.scaled_identity) {
    if (!(lp.scale > 0.0)) throw ZeroProjection("projected product vector vanished");
    r = Eigen::MatrixXcd::Identity(m, m) / std::sqrt(lp.scale);
    r_inv = Eigen::MatrixXcd::Identity(m, m) * std::sqrt(lp.scale);
  } else {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eb(lp.b);
    const Eigen::VectorXd& c = eb.eigenvalues();
    const double cmax = c.size() ? c.maxCoeff() : 0.0;
    if (!(cmax > 1e-300)) throw ZeroProjection("projected product vector vanished");
    std::vector<Eigen::Index> keep;
    for (Eigen::Index i = 0; i < c.size(); ++i)
      if (c[i] > 1e-12 * cmax) keep.push_back(i);
    const auto rank = static_cast<Eigen::Index>(keep.size());
    r.resize(m, rank);
    r_inv.resize(rank, m);
    for (Eigen::Index q = 0; q < rank; ++q) {
      const Eigen::Index i = keep[static_cast<std::size_t>(q)];
      r.col(q) = eb.eigenvectors().col(i) / std::sqrt(c[i]);
      r_inv.row(q) = eb.eigenvectors().col(i).adjoint() * std::sqrt(c[i]);
    }
  }
  if (r.cols() == 0) throw ZeroProjection("projected product vector vanished");
  Eigen::MatrixXcd h = r.adjoint() * lp.a * r;
  h = 0.5 * (h + h.adjoint()).eval();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eh(h);
  const Eigen::VectorXd& lam = eh.eigenvalues();
  const Eigen::Index ext = mode == Extremum::Max ? lam.size() - 1 : 0;
  const double g = lam[ext];
  const double tie = 1e-10 * std::max(1.0, std::abs(g));
  std::vector<Eigen::Index> set;
  for (Eigen::Index i = 0; i < lam.size(); ++i)
    if (std::abs(lam[i] - g) <= tie) set.push_back(i);
  Eigen::MatrixXcd v(h.rows(), static_cast<Eigen::Index>(set.size()));
  for (std::size_t q = 0; q < set.size(); ++q) v.col(static_cast<Eigen::Index>(q)) = eh.eigenvectors().col(set[q]);
  Eigen::VectorXcd u = v.col(mode == Extremum::Max ? v.cols() - 1 : 0);
  if (set.size() > 1 && prev.size() == m) {
    const Eigen::VectorXcd u_prev = r_inv * prev;
    const Eigen::VectorXcd proj = v * (v.adjoint() * u_prev);
    if (proj.norm() > 1e-8 * u_prev.norm()) u = proj.normalized();
  }
  return {r * u, g};
}

double residual_of(const PartySystem& sys, std::span<const Eigen::VectorXcd> parties, double g) {
  double worst = 0.0;
  for (int j = 0; j < sys.parties(); ++j) {
    const LocalProblem lp = sys.build(parties, j);
    worst = std::max(worst, sys.relative_residual(lp, j, parties[static_cast<std::size_t>(j)], g));
  }
  return worst;
}

SESolution finish(const PartySystem& sys, std::vector<Eigen::VectorXcd> parties, std::optional<double> g_opt) {
  const SEProblem& problem = sys.problem();
  double scale = 1.0;
  for (const auto& b : parties) scale *= b.norm();
  StateVector y = sys.projected(parties);
  if (!(y.norm() > 1e-8 * scale)) throw ZeroProjection("projected product vector vanished");
  const double norm2 = y.amplitudes().squaredNorm();
  const double g = g_opt ? *g_opt : problem.observable().expectation(y.amplitudes()) / norm2;
  const Eigen::VectorXcd chi =
      sys.apply_projector(problem.observable().apply(y.amplitudes())).amplitudes() - g * y.amplitudes();
  SESolution sol{g, {}, y, 0.0, chi.norm(), true, 0};
  sol.residual = residual_of(sys, parties, g);
  sol.party_vectors = std::move(parties);
  return sol;
}

SESolution sweep_impl(const PartySystem& sys, std::vector<Eigen::VectorXcd> parties, const SolverOptions& options) {
  const SEProblem& problem = sys.problem();
  check_blocks(problem.space(), problem.partition(), parties);
  if (options.max_sweeps < 1) throw InputError("max_sweeps must be positive");
  for (auto& b : parties) {
    const double n = b.norm();
    if (!(n > 0.0)) throw ZeroProjection("zero party vector");
    b /= n;
  }
  const LocalProblem lp0 = sys.build(parties, 0);
  const auto [num0, den0] = sys.quotient(lp0, 0, parties[0]);
  if (!(den0 > 1e-16)) throw ZeroProjection("initial product vector has vanishing projection");
  double g_prev = num0 / den0;
  double g = g_prev;
  bool converged = false;
  int sweep = 0;
  while (sweep < options.max_sweeps) {
    ++sweep;
    for (int j = 0; j < sys.parties(); ++j) {
      const auto ju = static_cast<std::size_t>(j);
      const LocalProblem lp = sys.build(parties, j);
      Update up = local_extremum(lp, sys.compress(j, parties[ju]), options.mode);
      Eigen::VectorXcd next = sys.expand(j, up.x);
      // Distinguishable parties: directions outside the support of L carry g = 0.
      const auto& coords = sys.coordinates(j);
      if (!coords.sector && static_cast<std::size_t>(coords.count) < sys.local_dim(j) && better(0.0, up.g, options.mode)) {
        next.setZero();
        const auto it = std::find(coords.column.begin(), coords.column.end(), -1);
        next[it - coords.column.begin()] = 1.0;
        up.g = 0.0;
      }
      parties[ju] = next.normalized();
      g = up.g;
    }
    if (std::abs(g - g_prev) <= options.tol_g && residual_of(sys, parties, g) <= options.tol_residual) {
      converged = true;
      break;
    }
    g_prev = g;
  }
  SESolution sol = finish(sys, std::move(parties), g);
  sol.converged = converged;
  sol.sweeps = sweep;
  return sol;
}

int thread_count(int work) {
  int n = static_cast<int>(std::thread::hardware_concurrency());
  if (const char* env = std::getenv("SEVALUE_THREADS")) {
    try {
      n = std::stoi(env);
    } catch (const std::exception&) {
      throw InputError(std::string("SEVALUE_THREADS is not an integer: ") + env);
    }
  }
  return std::clamp(n, 1, std::max(1, work));
}

}  // namespace

Eigen::MatrixXcd contracted_operator(const Eigen::MatrixXcd& x, const SpaceConfig& space, const Partition& partition,
                                     std::span<const Eigen::VectorXcd> parties, int j) {
  if (static_cast<std::size_t>(x.rows()) != space.total_dim() || x.cols() != x.rows())
    throw InputError("operator does not match the space");
  const Eigen::MatrixXcd e = embedding(space, partition, parties, j);
  return e.adjoint() * x * e;
}

Eigen::MatrixXcd contracted_operator(const Observable& x, const Partition& partition,
                                     std::span<const Eigen::VectorXcd> parties, int j) {
  const Eigen::MatrixXcd e = embedding(x.space(), partition, parties, j);
  const Eigen::MatrixXcd xe = x.matrix() * e;
  return e.adjoint() * xe;
}

SESolution evaluate_solution(const SEProblem& problem, std::vector<Eigen::VectorXcd> parties, std::optional<double> g) {
  check_blocks(problem.space(), problem.partition(), parties);
  const PartySystem sys(problem);
  return finish(sys, std::move(parties), g);
}

double rayleigh_quotient(const SEProblem& problem, std::span<const Eigen::VectorXcd> parties) {
  check_blocks(problem.space(), problem.partition(), parties);
  const PartySystem sys(problem);
  const StateVector y = sys.projected(parties);
  const double den = y.amplitudes().squaredNorm();
  if (!(den > 0.0)) throw ZeroProjection("projected product vector vanished");
  return problem.observable().expectation(y.amplitudes()) / den;
}

SESolution sweep_solve(const SEProblem& problem, std::vector<Eigen::VectorXcd> init, const SolverOptions& options) {
  const PartySystem sys(problem);
  return sweep_impl(sys, std::move(init), options);
}

std::vector<Eigen::VectorXcd> random_party_vectors(const SpaceConfig& space, const Partition& partition,
                                                   std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  std::vector<Eigen::VectorXcd> out;
  for (int k = 0; k < partition.parties(); ++k) {
    Eigen::VectorXcd b(static_cast<Eigen::Index>(space.power(partition.size(k))));
    for (Eigen::Index i = 0; i < b.size(); ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      b[i] = cplx(re, im);
    }
    out.push_back(std::move(b));
  }
  return out;
}

SupResult solve_sup_g(const SEProblem& problem, int starts, std::uint64_t seed, const SolverOptions& options) {
  if (starts < 1) throw InputError("starts must be at least 1");
  const PartySystem sys(problem);
  std::vector<std::optional<SESolution>> results(static_cast<std::size_t>(starts));
  std::atomic<int> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto worker = [&] {
    for (int k = next++; k < starts; k = next++) {
      try {
        std::mt19937_64 rng(splitmix64(seed + static_cast<std::uint64_t>(k)));
        for (int attempt = 0; attempt < 32; ++attempt) {
          auto init = random_party_vectors(problem.space(), problem.partition(), rng);
          try {
            results[static_cast<std::size_t>(k)] = sweep_impl(sys, std::move(init), options);
            break;
          } catch (const ZeroProjection&) {
          }
        }
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  const int threads = thread_count(starts);
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);

  SupResult out;
  std::optional<std::size_t> best;
  for (std::size_t k = 0; k < results.size(); ++k) {
    if (!results[k] || !results[k]->converged) continue;
    ++out.converged;
    if (!best || better(results[k]->g, results[*best]->g, options.mode)) best = k;
  }
  if (!best) {
    const auto attempted = std::count_if(results.begin(), results.end(), [](const auto& r) { return r.has_value(); });
    throw NumericalError(attempted == 0 ? "every start had a vanishing projection"
                                        : "no start converged within the sweep limit");
  }
  out.g = results[*best]->g;
  out.best = *results[*best];
  int hits = 0;
  const double tol = 1e-8 * std::max(1.0, std::abs(out.g));
  for (auto& r : results) {
    if (!r) continue;
    if (r->converged && std::abs(r->g - out.g) <= tol) ++hits;
    out.all.push_back(std::move(*r));
  }
  out.fraction_at_extremum = static_cast<double>(hits) / starts;
  return out;
}

KSeparableResult solve_k_separable(const Observable& observable, Statistics stats, int parties, int starts,
                                   std::uint64_t seed, const SolverOptions& options) {
  const auto partitions = partitions_of(observable.space().particles(), parties);
  KSeparableResult out{0.0, partitions.front(), {}};
  bool first = true;
  for (const Partition& p : partitions) {
    SupResult r = solve_sup_g(SEProblem(observable, stats, p), starts, seed, options);
    if (first || better(r.g, out.g, options.mode)) {
      out.g = r.g;
      out.partition = p;
      first = false;
    }
    out.per_partition.emplace_back(p, std::move(r));
  }
  return out;
}

SecondFormCheck verify_second_form(const SESolution& solution, const SEProblem& problem) {
  check_blocks(problem.space(), problem.partition(), solution.party_vectors);
  const PartySystem sys(problem);
  std::vector<Eigen::VectorXcd> unit;
  for (const auto& b : solution.party_vectors) {
    if (!(b.norm() > 0.0)) throw InputError("zero party vector");
    unit.push_back(b.normalized());
  }
  const StateVector y = sys.projected(unit);
  const Eigen::VectorXcd chi =
      sys.apply_projector(problem.observable().apply(y.amplitudes())).amplitudes() - solution.g * y.amplitudes();
  SecondFormCheck out{StateVector(problem.space(), chi), 0.0, 0.0};
  for (int j = 0; j < sys.parties(); ++j)
    out.max_overlap = std::max(out.max_overlap, sys.contract(unit, j, chi).cwiseAbs().maxCoeff());
  out.sector_error = (sys.apply_projector(chi).amplitudes() - chi).norm();
  return out;
}

}  // namespace sepwit
