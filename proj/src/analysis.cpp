#include "pbdcs/analysis.hpp"

#include <algorithm>
#include <climits>
#include <cmath>
#include <limits>

#include "pbdcs/error.hpp"

namespace pbdcs {

namespace {

constexpr const char* kModule = "analysis";

// Column-major copy, each column scaled to unit norm.
std::vector<std::vector<cplx>> unit_columns(const FrameMatrix& frame) {
  const auto& m = frame.entries();
  std::vector<std::vector<cplx>> cols(m.cols(), std::vector<cplx>(m.rows()));
  for (std::size_t j = 0; j < m.cols(); ++j) {
    double norm2 = 0.0;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      cols[j][i] = m(i, j);
      norm2 += std::norm(m(i, j));
    }
    if (norm2 == 0.0)
      throw Error(ErrorCode::DegenerateFrame, kModule, "column " + std::to_string(j) + " is zero");
    const double inv = 1.0 / std::sqrt(norm2);
    for (auto& z : cols[j]) z *= inv;
  }
  return cols;
}

}  // namespace

double welch_bound(std::size_t n, std::size_t N) {
  if (n < 1 || N < 2 || N < n)
    throw Error(ErrorCode::InvalidArgument, kModule, "Welch bound needs N >= n >= 1 and N >= 2");
  const double nn = static_cast<double>(n);
  const double NN = static_cast<double>(N);
  return std::sqrt((NN - nn) / ((NN - 1.0) * nn));
}

InnerProductExtremes inner_product_extremes(const FrameMatrix& frame) {
  if (frame.N() < 2) throw Error(ErrorCode::DegenerateFrame, kModule, "frame needs at least two columns");
  const auto cols = unit_columns(frame);
  InnerProductExtremes out;
  out.min_inner = std::numeric_limits<double>::infinity();
  out.min_nonzero = std::numeric_limits<double>::infinity();
  bool any_nonzero = false;
  for (std::size_t a = 0; a < cols.size(); ++a)
    for (std::size_t b = a + 1; b < cols.size(); ++b) {
      cplx dot{};
      for (std::size_t i = 0; i < cols[a].size(); ++i) dot += std::conj(cols[a][i]) * cols[b][i];
      const double mag = std::abs(dot);
      out.min_inner = std::min(out.min_inner, mag);
      out.max_inner = std::max(out.max_inner, mag);
      if (mag > kExactTol) {
        any_nonzero = true;
        out.min_nonzero = std::min(out.min_nonzero, mag);
        out.max_nonzero = std::max(out.max_nonzero, mag);
      }
    }
  if (!any_nonzero) out.min_nonzero = 0.0;
  return out;
}

double mip(const FrameMatrix& frame) { return inner_product_extremes(frame).max_inner; }

double epsilon_from_extremes(double min_inner, double max_inner, double welch) {
  if (welch <= 0.0) return max_inner > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
  return std::max({0.0, 1.0 - min_inner / welch, max_inner / welch - 1.0});
}

double epsilon_equiangular(const FrameMatrix& frame) {
  const auto ext = inner_product_extremes(frame);
  return epsilon_from_extremes(ext.min_inner, ext.max_inner, welch_bound(frame.n(), frame.N()));
}

int recoverability_t(double mu) {
  if (mu >= 1.0) return 0;
  if (mu <= 0.0) return INT_MAX;
  const double bound = 1.0 / (2.0 * mu) + 0.5 - 1e-12;
  const double t = std::ceil(bound) - 1.0;
  return t >= static_cast<double>(INT_MAX) ? INT_MAX : static_cast<int>(t);
}

int recoverability_t_eps(std::size_t n, double epsilon) {
  if (!std::isfinite(epsilon)) return 0;
  return static_cast<int>(std::floor(std::sqrt(static_cast<double>(n)) / (2.0 * (1.0 + epsilon))));
}

ComplexMatrix row_gram(const FrameMatrix& frame) {
  return frame.entries() * frame.entries().adjoint();
}

bool is_tight(const FrameMatrix& frame, double tol) {
  const auto gram = row_gram(frame);
  const std::size_t n = gram.rows();
  if (n == 0) return false;
  double c2 = 0.0;
  for (std::size_t i = 0; i < n; ++i) c2 += gram(i, i).real();
  c2 /= static_cast<double>(n);
  if (c2 <= 0.0) return false;
  return max_abs_diff(gram, ComplexMatrix::identity(n).scaled(c2)) <= tol * c2;
}

bool is_etf(const FrameMatrix& frame, double tol) {
  return is_tight(frame, tol) && epsilon_equiangular(frame) <= tol;
}

CoherenceReport analyze(const FrameMatrix& frame, double tol) {
  CoherenceReport r;
  r.n = frame.n();
  r.N = frame.N();
  const auto ext = inner_product_extremes(frame);
  r.mip = ext.max_inner;
  r.min_inner = ext.min_inner;
  r.max_inner = ext.max_inner;
  r.welch = welch_bound(r.n, r.N);
  r.epsilon = epsilon_from_extremes(ext.min_inner, ext.max_inner, r.welch);
  r.t_mip = std::min<long long>(recoverability_t(r.mip), static_cast<long long>(r.N));
  r.t_eps = recoverability_t_eps(r.n, r.epsilon);
  r.tight = is_tight(frame, tol);
  r.etf = r.tight && r.epsilon <= tol;
  r.repeated_column = ext.max_inner >= 1.0 - kExactTol;
  return r;
}

TheoreticalBounds theoretical_bounds(const Design& design, ConstructionTag construction) {
  if (design.kind() != DesignKind::PBD)
    throw Error(ErrorCode::InvalidDesign, kModule, "bound chain applies to PBDs");
  if (construction != ConstructionTag::Con0 && construction != ConstructionTag::Con1)
    throw Error(ErrorCode::InvalidArgument, kModule, "bound chain exists for CON0 and CON1 only");
  require_valid(design, kModule);
  const auto s = stats(design);

  TheoreticalBounds b;
  b.construction = construction;
  b.v = design.v();
  b.k_min = s.k_min();
  b.k_max = s.k_max();
  const double v = b.v;
  const double kmin = b.k_min;
  const double kmax = b.k_max;
  b.r_lower = (v - 1.0) / (kmax - 1.0);
  b.r_upper = (v - 1.0) / (kmin - 1.0);
  b.n_lower = v * (v - 1.0) / (kmax * (kmax - 1.0));
  b.n_upper = v * (v - 1.0) / (kmin * (kmin - 1.0));
  b.n = s.n_blocks;

  if (construction == ConstructionTag::Con0) {
    b.N = static_cast<std::size_t>(s.sum_block_sizes);
    b.welch = b.N >= 2 && b.N >= b.n ? welch_bound(b.n, b.N) : 0.0;
    b.mip_upper = kmax / (v - 1.0);
    b.hypotheses_met = b.k_min >= 2 && kmax <= std::sqrt(2.0) * (kmin - 1.0) &&
                       2 * b.n - 1 <= b.N;
    b.chain_holds = b.k_min >= 2 && b.mip_upper <= 2.0 * b.welch;
    if (b.hypotheses_met || b.chain_holds) {
      b.certified_epsilon = 1.0;
      b.certification = b.hypotheses_met ? "hypotheses" : "bound_chain";
    } else {
      b.certification = "withheld";
    }
  } else {
    b.N = static_cast<std::size_t>(s.sum_block_sizes) + static_cast<std::size_t>(design.v());
    b.welch = welch_bound(b.n, b.N);
    b.mip_upper = (kmax - 1.0) / (v - 1.0);
    b.raw_inner_lower = (kmin - 1.0) / (v + kmin - 2.0);
    b.raw_inner_upper = (kmax - 1.0) / (v + kmin - 2.0);
    b.hypotheses_met = b.k_min >= 2;
    b.chain_holds = b.hypotheses_met;
    if (b.hypotheses_met) {
      b.certified_epsilon = (kmax - kmin) / (kmin - 1.0);
      b.certification = "hypotheses";
    } else {
      b.certification = "withheld";
    }
  }
  return b;
}

PackingBound packing_bound(const Design& design, std::optional<double> tau) {
  require_valid(design, kModule);
  const auto s = stats(design);
  if (s.n_blocks == 0 || s.r_min() == 0)
    throw Error(ErrorCode::ZeroReplication, kModule, "a point lies in no block");
  PackingBound out;
  out.tau_min = static_cast<double>(design.v() - 1) /
                (static_cast<double>(s.k_min() - 1) * static_cast<double>(s.r_min()));
  out.tau = tau.value_or(out.tau_min);
  if (!(out.tau > 0.0)) throw Error(ErrorCode::InvalidArgument, kModule, "tau must be positive");
  out.hypothesis_holds = out.tau >= out.tau_min * (1.0 - kExactTol);
  out.t = static_cast<int>(std::floor(std::sqrt(static_cast<double>(s.n_blocks)) / (4.0 * out.tau)));
  return out;
}

nlohmann::ordered_json to_json(const CoherenceReport& r) {
  return {{"n", r.n},
          {"N", r.N},
          {"mip", r.mip},
          {"welch", r.welch},
          {"epsilon", r.epsilon},
          {"t_mip", r.t_mip},
          {"t_eps", r.t_eps},
          {"tight", r.tight},
          {"etf", r.etf},
          {"min_inner", r.min_inner},
          {"max_inner", r.max_inner},
          {"repeated_column", r.repeated_column}};
}

nlohmann::ordered_json to_json(const TheoreticalBounds& b) {
  nlohmann::ordered_json j{{"construction", to_string(b.construction)},
                           {"v", b.v},
                           {"k_min", b.k_min},
                           {"k_max", b.k_max},
                           {"r_lower", b.r_lower},
                           {"r_upper", b.r_upper},
                           {"n_lower", b.n_lower},
                           {"n_upper", b.n_upper},
                           {"n", b.n},
                           {"N", b.N},
                           {"welch", b.welch},
                           {"mip_upper", b.mip_upper},
                           {"raw_inner_lower", b.raw_inner_lower},
                           {"raw_inner_upper", b.raw_inner_upper},
                           {"hypotheses_met", b.hypotheses_met},
                           {"chain_holds", b.chain_holds},
                           {"certification", b.certification}};
  j["certified_epsilon"] = b.certified_epsilon ? nlohmann::ordered_json(*b.certified_epsilon)
                                               : nlohmann::ordered_json(nullptr);
  return j;
}

nlohmann::ordered_json to_json(const PackingBound& p) {
  return {{"tau_min", p.tau_min}, {"tau", p.tau}, {"hypothesis_holds", p.hypothesis_holds}, {"t", p.t}};
}

}  // namespace pbdcs
