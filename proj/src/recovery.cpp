#include "pbdcs/recovery.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <thread>

#include "pbdcs/error.hpp"

namespace pbdcs {

namespace {

constexpr const char* kModule = "recovery";

double relative_residual(const Eigen::MatrixXcd& phi, const Eigen::VectorXcd& x,
                         const Eigen::VectorXcd& y) {
  const double ny = y.norm();
  return (phi * x - y).norm() / (ny > 0.0 ? ny : 1.0);
}

Eigen::MatrixXcd columns(const Eigen::MatrixXcd& phi, const std::vector<int>& support) {
  Eigen::MatrixXcd sub(phi.rows(), static_cast<Eigen::Index>(support.size()));
  for (std::size_t i = 0; i < support.size(); ++i) sub.col(static_cast<Eigen::Index>(i)) = phi.col(support[i]);
  return sub;
}

Eigen::VectorXcd scatter(Eigen::Index N, const std::vector<int>& support, const Eigen::VectorXcd& values) {
  Eigen::VectorXcd x = Eigen::VectorXcd::Zero(N);
  for (std::size_t i = 0; i < support.size(); ++i) x(support[i]) = values(static_cast<Eigen::Index>(i));
  return x;
}

void check_measurement(const Eigen::MatrixXcd& phi, const Eigen::VectorXcd& y) {
  if (y.size() != phi.rows())
    throw Error(ErrorCode::InvalidArgument, kModule, "measurement length differs from frame rows");
  if (!y.allFinite()) throw Error(ErrorCode::InvalidArgument, kModule, "measurement is not finite");
}

std::int64_t binomial_capped(std::int64_t n, std::int64_t k, std::int64_t cap) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  long double c = 1;
  for (std::int64_t i = 0; i < k; ++i) {
    c = c * static_cast<long double>(n - i) / static_cast<long double>(i + 1);
    if (c > static_cast<long double>(cap)) return cap + 1;
  }
  return static_cast<std::int64_t>(std::llround(c));
}

// Dense tableau simplex for min c^T w, A w = b, w >= 0 (b >= 0 assumed).
class Simplex {
 public:
  Simplex(const Eigen::MatrixXd& a, const Eigen::VectorXd& b, const Eigen::VectorXd& c)
      : m_(a.rows()), p_(a.cols()), c_(c) {
    width_ = p_ + m_ + 1;
    tab_.assign(m_, std::vector<double>(width_, 0.0));
    for (int i = 0; i < m_; ++i) {
      for (int j = 0; j < p_; ++j) tab_[i][j] = a(i, j);
      tab_[i][p_ + i] = 1.0;
      tab_[i][width_ - 1] = b(i);
    }
    basis_.resize(m_);
    for (int i = 0; i < m_; ++i) basis_[i] = p_ + i;
  }

  // Returns nullopt if infeasible or unbounded.
  std::optional<Eigen::VectorXd> solve(int& pivots) {
    // Phase 1: minimise the artificial sum.
    std::vector<double> cost(width_ - 1, 0.0);
    for (int i = 0; i < m_; ++i) cost[p_ + i] = 1.0;
    if (!optimise(cost, width_ - 1, pivots)) return std::nullopt;
    if (objective(cost) > 1e-9 * std::max(1.0, rhs_scale())) return std::nullopt;
    // Pivot out artificials still basic at level zero where possible.
    for (int i = 0; i < m_; ++i) {
      if (basis_[i] < p_) continue;
      for (int j = 0; j < p_; ++j)
        if (std::abs(tab_[i][j]) > kEps) {
          pivot(i, j);
          ++pivots;
          break;
        }
    }
    std::vector<double> cost2(width_ - 1, 0.0);
    for (int j = 0; j < p_; ++j) cost2[j] = c_(j);
    if (!optimise(cost2, p_, pivots)) return std::nullopt;
    Eigen::VectorXd w = Eigen::VectorXd::Zero(p_);
    for (int i = 0; i < m_; ++i)
      if (basis_[i] < p_) w(basis_[i]) = tab_[i][width_ - 1];
    return w;
  }

 private:
  static constexpr double kEps = 1e-11;

  double rhs_scale() const {
    double s = 0.0;
    for (int i = 0; i < m_; ++i) s = std::max(s, std::abs(tab_[i][width_ - 1]));
    return s;
  }

  double objective(const std::vector<double>& cost) const {
    double z = 0.0;
    for (int i = 0; i < m_; ++i) z += cost[basis_[i]] * tab_[i][width_ - 1];
    return z;
  }

  void pivot(int row, int col) {
    const double pv = tab_[row][col];
    for (auto& e : tab_[row]) e /= pv;
    for (int i = 0; i < m_; ++i) {
      if (i == row) continue;
      const double f = tab_[i][col];
      if (f == 0.0) continue;
      for (int j = 0; j < width_; ++j) tab_[i][j] -= f * tab_[row][j];
    }
    basis_[row] = col;
  }

  // Bland's rule over columns [0, allowed).
  bool optimise(const std::vector<double>& cost, int allowed, int& pivots) {
    for (int guard = 0; guard < 100000; ++guard) {
      int enter = -1;
      for (int j = 0; j < allowed && enter < 0; ++j) {
        double reduced = cost[j];
        for (int i = 0; i < m_; ++i) reduced -= cost[basis_[i]] * tab_[i][j];
        if (reduced < -1e-10) enter = j;
      }
      if (enter < 0) return true;
      int leave = -1;
      double best = std::numeric_limits<double>::infinity();
      for (int i = 0; i < m_; ++i) {
        if (tab_[i][enter] <= kEps) continue;
        const double ratio = tab_[i][width_ - 1] / tab_[i][enter];
        if (ratio < best - 1e-14 || (std::abs(ratio - best) <= 1e-14 && basis_[i] < basis_[leave])) {
          best = ratio;
          leave = i;
        }
      }
      if (leave < 0) return false;  // unbounded
      pivot(leave, enter);
      ++pivots;
    }
    return false;
  }

  int m_, p_, width_;
  Eigen::VectorXd c_;
  std::vector<std::vector<double>> tab_;
  std::vector<int> basis_;
};

}  // namespace

Eigen::MatrixXcd to_eigen(const FrameMatrix& frame) {
  const auto& m = frame.entries();
  Eigen::MatrixXcd out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = m(i, j);
  return out;
}

Eigen::VectorXcd SparseSignal::dense() const {
  Eigen::VectorXcd x = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(N));
  for (std::size_t i = 0; i < support.size(); ++i) x(support[i]) = values[i];
  return x;
}

std::mt19937_64 trial_rng(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  return std::mt19937_64(seq);
}

SparseSignal random_sparse_signal(std::size_t N, int t, bool real, std::mt19937_64& rng,
                                  double min_magnitude) {
  if (t < 1 || static_cast<std::size_t>(t) > N)
    throw Error(ErrorCode::InvalidArgument, kModule, "sparsity must lie in [1, N]");
  std::vector<int> idx(N);
  for (std::size_t i = 0; i < N; ++i) idx[i] = static_cast<int>(i);
  for (int i = 0; i < t; ++i) {
    std::uniform_int_distribution<std::size_t> pick(i, N - 1);
    std::swap(idx[i], idx[pick(rng)]);
  }
  SparseSignal s;
  s.N = N;
  s.support.assign(idx.begin(), idx.begin() + t);
  std::sort(s.support.begin(), s.support.end());
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int i = 0; i < t; ++i) {
    cplx value;
    do {
      value = real ? cplx{gauss(rng), 0.0} : cplx{gauss(rng), gauss(rng)} / std::sqrt(2.0);
    } while (std::abs(value) < min_magnitude);
    s.values.push_back(value);
  }
  return s;
}

BasisPursuit::BasisPursuit(const FrameMatrix& frame, BpParams params)
    : phi_(to_eigen(frame)), phi_adj_(phi_.adjoint()), params_(params) {
  if (!(params_.rho > 0.0)) throw Error(ErrorCode::InvalidArgument, kModule, "rho must be positive");
  const Eigen::MatrixXcd gram = phi_ * phi_adj_;
  gram_.compute(gram);
  const double scale = gram.diagonal().real().maxCoeff();
  const double min_pivot = gram_.info() == Eigen::Success
                               ? gram_.matrixL().toDenseMatrix().diagonal().real().minCoeff()
                               : 0.0;
  if (gram_.info() != Eigen::Success || !(scale > 0.0) || min_pivot * min_pivot < 1e-12 * scale)
    throw Error(ErrorCode::RankDeficient, kModule, "frame rows are not linearly independent");
}

Eigen::VectorXcd BasisPursuit::project(const Eigen::VectorXcd& w, const Eigen::VectorXcd& y) const {
  return w - phi_adj_ * gram_.solve(phi_ * w - y);
}

SolveResult BasisPursuit::solve(const Eigen::VectorXcd& y) const {
  check_measurement(phi_, y);
  const Eigen::Index N = phi_.cols();
  const double kappa = 1.0 / params_.rho;
  Eigen::VectorXcd z = Eigen::VectorXcd::Zero(N);
  Eigen::VectorXcd u = Eigen::VectorXcd::Zero(N);
  Eigen::VectorXcd x = project(z, y);
  SolveResult out;
  out.converged = false;
  for (int it = 1; it <= params_.max_iters; ++it) {
    x = project(z - u, y);
    Eigen::VectorXcd w = x + u;
    Eigen::VectorXcd z_next(N);
    for (Eigen::Index i = 0; i < N; ++i) {
      const double mag = std::abs(w(i));
      z_next(i) = mag > kappa ? w(i) * ((mag - kappa) / mag) : cplx{};
    }
    u += x - z_next;
    const double step = (z_next - z).norm();
    const double gap = (x - z_next).norm();
    z = std::move(z_next);
    out.iterations = it;
    const double scale = std::max(1.0, z.norm());
    if (step <= params_.opt_tol * scale && gap <= params_.opt_tol * scale) {
      out.converged = true;
      break;
    }
  }
  out.x = x;
  out.residual = relative_residual(phi_, x, y);
  if (out.residual > params_.feas_tol) out.converged = false;
  return out;
}

SolveResult bp_solve(const FrameMatrix& frame, const Eigen::VectorXcd& y, const BpParams& params) {
  return BasisPursuit(frame, params).solve(y);
}

SolveResult omp_solve(const FrameMatrix& frame, const Eigen::VectorXcd& y, int t) {
  if (t < 1) throw Error(ErrorCode::InvalidArgument, kModule, "OMP needs t >= 1");
  const Eigen::MatrixXcd phi = to_eigen(frame);
  check_measurement(phi, y);
  const Eigen::VectorXd col_norms = phi.colwise().norm().transpose();
  const double ny = y.norm();
  std::vector<int> support;
  Eigen::VectorXcd coef;
  Eigen::VectorXcd r = y;
  SolveResult out;
  for (int step = 0; step < t && r.norm() > 1e-12 * std::max(ny, 1e-300); ++step) {
    const Eigen::VectorXcd corr = phi.adjoint() * r;
    int best = -1;
    double best_val = -1.0;
    for (Eigen::Index j = 0; j < phi.cols(); ++j) {
      if (std::find(support.begin(), support.end(), static_cast<int>(j)) != support.end()) continue;
      const double val = std::abs(corr(j)) / col_norms(j);
      if (val > best_val) {
        best_val = val;
        best = static_cast<int>(j);
      }
    }
    if (best < 0) break;
    support.push_back(best);
    const Eigen::MatrixXcd sub = columns(phi, support);
    coef = sub.colPivHouseholderQr().solve(y);
    r = y - sub * coef;
    out.iterations = step + 1;
  }
  out.x = support.empty() ? Eigen::VectorXcd::Zero(phi.cols()) : scatter(phi.cols(), support, coef);
  out.residual = relative_residual(phi, out.x, y);
  return out;
}

std::optional<SolveResult> l0_oracle(const FrameMatrix& frame, const Eigen::VectorXcd& y, int t_max) {
  if (t_max < 0) throw Error(ErrorCode::InvalidArgument, kModule, "t_max must be >= 0");
  const Eigen::MatrixXcd phi = to_eigen(frame);
  check_measurement(phi, y);
  const int N = static_cast<int>(phi.cols());
  if (binomial_capped(N, t_max, kL0SubsetGuard) > kL0SubsetGuard)
    throw Error(ErrorCode::Guard, kModule, "C(N, t_max) exceeds 10^6 supports");
  const double tol = 1e-8 * y.norm();
  SolveResult out;
  if (y.norm() == 0.0) {
    out.x = Eigen::VectorXcd::Zero(N);
    return out;
  }
  int examined = 0;
  for (int size = 1; size <= std::min(t_max, N); ++size) {
    std::vector<int> support(size);
    for (int i = 0; i < size; ++i) support[i] = i;
    while (true) {
      ++examined;
      const Eigen::MatrixXcd sub = columns(phi, support);
      const Eigen::VectorXcd coef = sub.colPivHouseholderQr().solve(y);
      if ((sub * coef - y).norm() <= tol) {
        out.x = scatter(N, support, coef);
        out.iterations = examined;
        out.residual = relative_residual(phi, out.x, y);
        return out;
      }
      int i = size - 1;
      while (i >= 0 && support[i] == N - size + i) --i;
      if (i < 0) break;
      ++support[i];
      for (int j = i + 1; j < size; ++j) support[j] = support[j - 1] + 1;
    }
  }
  return std::nullopt;
}

SolveResult lp_solve_real(const FrameMatrix& frame, const Eigen::VectorXd& y) {
  if (!frame.is_real()) throw Error(ErrorCode::InvalidArgument, kModule, "LP cross-check needs a real frame");
  const Eigen::MatrixXd phi = to_eigen(frame).real();
  if (y.size() != phi.rows())
    throw Error(ErrorCode::InvalidArgument, kModule, "measurement length differs from frame rows");
  const Eigen::Index n = phi.rows();
  const Eigen::Index N = phi.cols();
  Eigen::MatrixXd a(n, 2 * N);
  a << phi, -phi;
  Eigen::VectorXd b = y;
  for (Eigen::Index i = 0; i < n; ++i)
    if (b(i) < 0) {
      b(i) = -b(i);
      a.row(i) *= -1.0;
    }
  Simplex lp(a, b, Eigen::VectorXd::Ones(2 * N));
  SolveResult out;
  const auto w = lp.solve(out.iterations);
  if (!w) throw Error(ErrorCode::RankDeficient, kModule, "LP infeasible: y outside the column span");
  out.x = (w->head(N) - w->tail(N)).cast<cplx>();
  out.residual = relative_residual(phi.cast<cplx>(), out.x, y.cast<cplx>());
  return out;
}

std::string to_string(Solver solver) {
  switch (solver) {
    case Solver::Bp: return "bp";
    case Solver::Omp: return "omp";
    case Solver::L0: return "l0";
    case Solver::Lp: return "lp";
  }
  return "bp";
}

Solver parse_solver(const std::string& text) {
  if (text == "bp") return Solver::Bp;
  if (text == "omp") return Solver::Omp;
  if (text == "l0") return Solver::L0;
  if (text == "lp") return Solver::Lp;
  throw Error(ErrorCode::InvalidArgument, kModule, "unknown solver '" + text + "'");
}

RecoveryTrialStats run_trials(const FrameMatrix& frame, int t, int trials, std::uint64_t seed,
                              Solver solver, const TrialOptions& options) {
  if (t < 1) throw Error(ErrorCode::InvalidArgument, kModule, "sparsity t must be >= 1");
  if (trials < 0) throw Error(ErrorCode::InvalidArgument, kModule, "trial count must be >= 0");
  if (static_cast<std::size_t>(t) > frame.N())
    throw Error(ErrorCode::InvalidArgument, kModule, "sparsity exceeds the number of columns");
  const bool real = frame.is_real();
  if (solver == Solver::Lp && !real)
    throw Error(ErrorCode::InvalidArgument, kModule, "LP solver needs a real frame");
  if (solver == Solver::L0 && binomial_capped(frame.N(), t, kL0SubsetGuard) > kL0SubsetGuard)
    throw Error(ErrorCode::Guard, kModule, "C(N, t) exceeds 10^6 supports");

  const Eigen::MatrixXcd phi = to_eigen(frame);
  std::optional<BasisPursuit> bp;
  if (solver == Solver::Bp) bp.emplace(frame, options.bp);

  RecoveryTrialStats stats;
  stats.trials = trials;
  stats.solver = solver;
  stats.seed = seed;
  stats.t = t;
  stats.success_tol = options.success_tol;
  stats.records.resize(trials);

  auto run_one = [&](int index) {
    auto rng = trial_rng(seed, static_cast<std::uint64_t>(index));
    const auto signal = random_sparse_signal(frame.N(), t, real, rng);
    const Eigen::VectorXcd x = signal.dense();
    const Eigen::VectorXcd y = phi * x;
    SolveResult r;
    switch (solver) {
      case Solver::Bp: r = bp->solve(y); break;
      case Solver::Omp: r = omp_solve(frame, y, t); break;
      case Solver::L0: {
        auto found = l0_oracle(frame, y, t);
        if (found) r = *found;
        else r.x = Eigen::VectorXcd::Zero(phi.cols());
        break;
      }
      case Solver::Lp: r = lp_solve_real(frame, y.real()); break;
    }
    TrialRecord rec;
    rec.trial = index;
    rec.rel_error = (r.x - x).norm() / x.norm();
    rec.iters = r.iterations;
    rec.success = rec.rel_error <= options.success_tol;
    stats.records[index] = rec;
  };

  const unsigned workers = std::max(1u, std::min<unsigned>(options.threads, static_cast<unsigned>(trials)));
  if (workers <= 1) {
    for (int i = 0; i < trials; ++i) run_one(i);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w)
      pool.emplace_back([&, w] {
        for (int i = static_cast<int>(w); i < trials; i += static_cast<int>(workers)) run_one(i);
      });
  }

  std::vector<double> errors;
  errors.reserve(trials);
  for (const auto& rec : stats.records) {
    stats.successes += rec.success;
    stats.max_rel_error = std::max(stats.max_rel_error, rec.rel_error);
    errors.push_back(rec.rel_error);
  }
  if (!errors.empty()) {
    std::sort(errors.begin(), errors.end());
    const std::size_t mid = errors.size() / 2;
    stats.median_rel_error = errors.size() % 2 ? errors[mid] : 0.5 * (errors[mid - 1] + errors[mid]);
  }
  return stats;
}

nlohmann::ordered_json to_json(const RecoveryTrialStats& s) {
  return {{"trials", s.trials},
          {"successes", s.successes},
          {"max_rel_error", s.max_rel_error},
          {"median_rel_error", s.median_rel_error},
          {"solver", to_string(s.solver)},
          {"seed", s.seed},
          {"t", s.t},
          {"success_tol", s.success_tol}};
}

void write_trials_csv(const RecoveryTrialStats& s, std::ostream& out) {
  out << "trial,t,solver,rel_error,iters,success\n";
  const auto old = out.precision(17);
  for (const auto& r : s.records)
    out << r.trial << ',' << s.t << ',' << to_string(s.solver) << ',' << r.rel_error << ','
        << r.iters << ',' << (r.success ? 1 : 0) << '\n';
  out.precision(old);
}

}  // namespace pbdcs
