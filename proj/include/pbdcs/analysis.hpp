#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "pbdcs/design.hpp"
#include "pbdcs/frame.hpp"

namespace pbdcs {

inline constexpr double kGramTol = 1e-10;
inline constexpr double kExactTol = 1e-12;

// sqrt((N - n) / ((N - 1) n)); requires N >= n >= 1 and N >= 2.
double welch_bound(std::size_t n, std::size_t N);

struct InnerProductExtremes {
  double min_inner = 0.0;
  double max_inner = 0.0;
  // Extremes over pairs whose normalised |inner product| exceeds kExactTol;
  // both zero when every pair is orthogonal.
  double min_nonzero = 0.0;
  double max_nonzero = 0.0;
};

// Exhaustive scan over distinct column pairs, normalised by column norms.
// Throws Error(DegenerateFrame) for N < 2 or a zero column.
InnerProductExtremes inner_product_extremes(const FrameMatrix& frame);
double mip(const FrameMatrix& frame);

// Smallest eps with (1-eps) mu <= min_inner and max_inner <= (1+eps) mu.
double epsilon_from_extremes(double min_inner, double max_inner, double welch);
double epsilon_equiangular(const FrameMatrix& frame);

// Largest integer t < 1/(2 mu) + 1/2, evaluated with a 1e-12 guard band so
// exact rationals such as 1/3 land on the strict side. 0 when mu >= 1;
// INT_MAX when mu <= 0.
int recoverability_t(double mu);

// floor(sqrt(n) / (2 (1 + eps))).
int recoverability_t_eps(std::size_t n, double epsilon);

ComplexMatrix row_gram(const FrameMatrix& frame);
// Row Gram equal to c^2 I with c^2 the mean diagonal; tolerance relative to c^2.
bool is_tight(const FrameMatrix& frame, double tol = kGramTol);
bool is_etf(const FrameMatrix& frame, double tol = kGramTol);

struct CoherenceReport {
  std::size_t n = 0;
  std::size_t N = 0;
  double mip = 0.0;
  double welch = 0.0;
  double epsilon = 0.0;
  int t_mip = 0;
  int t_eps = 0;
  bool tight = false;
  bool etf = false;
  double min_inner = 0.0;
  double max_inner = 0.0;
  // A column pair with normalised |inner product| 1 (not a frame in the
  // useful sense; epsilon is still reported).
  bool repeated_column = false;
};

CoherenceReport analyze(const FrameMatrix& frame, double tol = kGramTol);

// Bound chain for the base construction (Con0) or the r+1 construction (Con1).
struct TheoreticalBounds {
  ConstructionTag construction = ConstructionTag::Con0;
  int v = 0;
  int k_min = 0;
  int k_max = 0;
  double r_lower = 0.0;  // (v-1)/(K_max-1)
  double r_upper = 0.0;  // (v-1)/(K_min-1)
  double n_lower = 0.0;  // v(v-1)/(K_max(K_max-1))
  double n_upper = 0.0;  // v(v-1)/(K_min(K_min-1))
  std::size_t n = 0;
  std::size_t N = 0;
  double welch = 0.0;
  // Upper bound on the normalised MIP: K_max/(v-1) for Con0, (K_max-1)/(v-1)
  // for Con1 (normalised products there are 1/sqrt(r_x r_y) or 1/r_x).
  double mip_upper = 0.0;
  // Con1 only: bounds on the raw (unnormalised) |<c_i, c_j>| over pairs,
  // (K_min-1)/(v+K_min-2) <= |<c_i,c_j>| <= (K_max-1)/(v+K_min-2).
  double raw_inner_lower = 0.0;
  double raw_inner_upper = 0.0;
  // Literal hypotheses: 2 <= K_min, K_max <= sqrt(2)(K_min-1), 2n-1 <= N (Con0);
  // 2 <= K_min (Con1).
  bool hypotheses_met = false;
  // Con0 only: the chain's own requirement K_max/(v-1) <= 2 mu_{n,N}, which
  // is what 1-equiangularity needs once MIP <= K_max/(v-1) is known.
  bool chain_holds = false;
  std::optional<double> certified_epsilon;
  std::string certification;  // "hypotheses", "bound_chain" or "withheld"
};

TheoreticalBounds theoretical_bounds(const Design& design, ConstructionTag construction);

struct PackingBound {
  double tau_min = 0.0;  // (v-1) / ((K_min-1) min_x r_x)
  double tau = 0.0;      // tau used for t
  bool hypothesis_holds = true;
  int t = 0;             // floor(sqrt(n) / (4 tau))
};

// Throws Error(ZeroReplication) if a point lies in no block. With `tau`
// given, hypothesis_holds reports whether tau >= tau_min.
PackingBound packing_bound(const Design& design, std::optional<double> tau = std::nullopt);

nlohmann::ordered_json to_json(const CoherenceReport& report);
nlohmann::ordered_json to_json(const TheoreticalBounds& bounds);
nlohmann::ordered_json to_json(const PackingBound& bound);

}  // namespace pbdcs
