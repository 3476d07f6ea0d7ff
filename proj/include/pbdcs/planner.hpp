#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace pbdcs {

// Block sizes k_i with block counts alpha_i.
struct BlockType {
  std::vector<int> k;
  std::vector<std::int64_t> alpha;

  friend bool operator==(const BlockType&, const BlockType&) = default;
};

// Throws Error(InvalidArgument) on length mismatch, negative counts or sizes < 2.
void check_block_type(const BlockType& type);
// Also requires exactly three consecutive sizes (k-1, k, k+1).
void check_consecutive_triple(const BlockType& type);

// F(alpha) = sum alpha_i C(k_i, 2), exact (overflow throws).
std::int64_t pair_count(const BlockType& type);
std::int64_t block_count(const BlockType& type);   // n = sum alpha_i
std::int64_t column_count(const BlockType& type);  // N = sum k_i alpha_i

// (a, b, c) -> (a + t, b - 2t, c + t). F grows by exactly t; n and N are
// unchanged. Throws Error(InfeasibleSwap) if a count would go negative.
BlockType binom_swap(const BlockType& type, std::int64_t t);

// F(alpha) == C(v, 2).
bool feasible(std::int64_t v, const BlockType& type);

struct InequalityCheck {
  std::string name;
  bool holds = false;
};

struct InequalityReport {
  bool ok = true;
  std::vector<InequalityCheck> checks;
  std::vector<std::string> violated() const;
};

// alpha_k >= alpha_{k-1}, alpha_k >= alpha_{k+1}, alpha_{k+1} + alpha_{k-1} >= alpha_k,
// and F(alpha) = C(v, 2).
InequalityReport designexistence_check(const BlockType& type, std::int64_t v);

using IntMatrix = std::vector<std::vector<std::int64_t>>;

// Row-index gcd hypothesis: for every column, the gcd of the row indices
// (k_i - 1) at its non-zero entries is 1.
bool column_gcd_hypothesis(const IntMatrix& m, const std::vector<std::int64_t>& row_indices);

struct MxSolution {
  std::optional<std::vector<std::int64_t>> x;  // non-negative integer solution, if any
  bool hypothesis_ok = false;                  // column-gcd condition
  bool exact_inverse = false;                  // solved by exact inversion
};

// Non-negative integer X with M X = alpha. Square non-singular M is solved
// exactly (fraction-free Cramer); otherwise bounded enumeration, guarded at
// 10^7 nodes (Error(Guard)).
MxSolution solve_mx(const IntMatrix& m, const std::vector<std::int64_t>& alpha,
                    const std::vector<std::int64_t>& row_indices);

// The two matrices used by the planner, rows ordered (k-1, k, k+1).
IntMatrix designexistence_matrix();
IntMatrix alternate_matrix();

struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  // Accepts "5", "4.5", "-0.25", "9/2".
  static Rational parse(const std::string& text);
  std::int64_t floor_times(std::int64_t n) const;  // floor(num * n / den)
  std::string str() const;
};

struct PlanCertificates {
  bool feasible = false;
  InequalityReport inequalities;
  std::vector<std::int64_t> mx_solution;
  bool gcd_hypothesis = false;
};

struct PlanResult {
  std::int64_t v = 0;
  BlockType type;
  std::int64_t n = 0;
  std::int64_t N = 0;
  std::int64_t tau = 0;
  std::int64_t sigma = 0;  // signed: N - k n
  std::string regime;      // "designexistence", "alternate"; "-mirrored" suffix for sigma < 0
  PlanCertificates certificates;
};

struct PlanOutcome {
  std::optional<PlanResult> result;
  std::string reason;  // why nothing was found
};

// Types (a, n - 2a, a) with ceil(n/4) <= a <= floor(n/3); tau = a - ceil(n/4)
// ascending, first triangular F wins. Requires k > 3 and n >= 1.
PlanOutcome plan_integer(std::int64_t n, int k);

// k = nearest integer to h (ties go down), N = floor(h n), sigma = N - k n.
// sigma > 0: (tau, n - sigma - 2tau, sigma + tau); sigma < 0 mirrors the
// roles of k-1 and k+1. The regime matrix is the designexistence one when
// 4|sigma| <= n and the alternate one otherwise. Requires h > 3.
PlanOutcome plan_rational(std::int64_t n, const Rational& h);

// steps > 0 swaps (2k-1) blocks of size k for k of size k-1 and k-1 of size
// k+1 (N drops by one per step); steps < 0 runs the inverse. nullopt when the
// counts do not allow it.
std::optional<BlockType> column_swap_plan(const BlockType& type, std::int64_t steps);

nlohmann::ordered_json to_json(const PlanResult& plan);
nlohmann::ordered_json to_json(const PlanOutcome& outcome);

}  // namespace pbdcs
