#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "pbdcs/frame.hpp"

namespace pbdcs {

Eigen::MatrixXcd to_eigen(const FrameMatrix& frame);

struct SparseSignal {
  std::size_t N = 0;
  std::vector<int> support;  // sorted
  std::vector<cplx> values;  // one per support index, all non-zero

  Eigen::VectorXcd dense() const;
};

// Uniform size-t support, Gaussian values (complex unless `real`), each
// |value| >= min_magnitude (resampled otherwise).
SparseSignal random_sparse_signal(std::size_t N, int t, bool real, std::mt19937_64& rng,
                                  double min_magnitude = 0.1);

// Generator for trial `index` under `seed`, independent of evaluation order.
std::mt19937_64 trial_rng(std::uint64_t seed, std::uint64_t index);

struct BpParams {
  double rho = 1.0;
  double opt_tol = 1e-9;   // successive-iterate change, relative to max(1, |z|)
  double feas_tol = 1e-8;  // |Phi x - y| <= feas_tol |y|
  int max_iters = 50000;
};

struct SolveResult {
  Eigen::VectorXcd x;
  int iterations = 0;
  bool converged = true;  // false: MAX_ITERS_EXCEEDED, x is the last iterate
  double residual = 0.0;  // |Phi x - y| / max(|y|, tiny)
};

// Minimum-l1 solution of Phi x = y by alternating projection onto
// {x : Phi x = y} and complex soft-thresholding (ADMM). The projection uses a
// Cholesky factorisation of Phi Phi^dagger computed once per solver.
class BasisPursuit {
 public:
  explicit BasisPursuit(const FrameMatrix& frame, BpParams params = {});
  SolveResult solve(const Eigen::VectorXcd& y) const;

 private:
  Eigen::VectorXcd project(const Eigen::VectorXcd& w, const Eigen::VectorXcd& y) const;

  Eigen::MatrixXcd phi_;
  Eigen::MatrixXcd phi_adj_;
  Eigen::LLT<Eigen::MatrixXcd> gram_;
  BpParams params_;
};

SolveResult bp_solve(const FrameMatrix& frame, const Eigen::VectorXcd& y, const BpParams& params = {});

// Orthogonal matching pursuit with t greedy steps (fewer if y is matched exactly).
SolveResult omp_solve(const FrameMatrix& frame, const Eigen::VectorXcd& y, int t);

inline constexpr std::int64_t kL0SubsetGuard = 1'000'000;

// Sparsest exact fit among supports of size <= t_max (least squares per
// support, residual <= 1e-8 |y|). Throws Error(Guard) when C(N, t_max) > 10^6.
std::optional<SolveResult> l0_oracle(const FrameMatrix& frame, const Eigen::VectorXcd& y, int t_max);

// Real frames only: min sum(x+ + x-) s.t. Phi (x+ - x-) = y, x+- >= 0, by a
// dense two-phase simplex with Bland's rule.
SolveResult lp_solve_real(const FrameMatrix& frame, const Eigen::VectorXd& y);

enum class Solver { Bp, Omp, L0, Lp };

std::string to_string(Solver solver);
Solver parse_solver(const std::string& text);

struct TrialRecord {
  int trial = 0;
  double rel_error = 0.0;
  int iters = 0;
  bool success = false;
};

struct RecoveryTrialStats {
  int trials = 0;
  int successes = 0;
  double max_rel_error = 0.0;
  double median_rel_error = 0.0;
  Solver solver = Solver::Bp;
  std::uint64_t seed = 0;
  int t = 0;
  double success_tol = 1e-4;
  std::vector<TrialRecord> records;  // index order
};

struct TrialOptions {
  double success_tol = 1e-4;
  BpParams bp;
  unsigned threads = 1;  // results do not depend on this
};

RecoveryTrialStats run_trials(const FrameMatrix& frame, int t, int trials, std::uint64_t seed,
                              Solver solver, const TrialOptions& options = {});

nlohmann::ordered_json to_json(const RecoveryTrialStats& stats);
void write_trials_csv(const RecoveryTrialStats& stats, std::ostream& out);

}  // namespace pbdcs
