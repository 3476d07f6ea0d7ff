#include "pbdcs/frame.hpp"

#include <cmath>

#include "pbdcs/error.hpp"
#include "pbdcs/number_theory.hpp"
#include "pbdcs/unitary.hpp"

namespace pbdcs {

namespace {

constexpr const char* kModule = "frame";

// Blocks containing each point, in design order.
std::vector<std::vector<int>> point_rows(const Design& design) {
  std::vector<std::vector<int>> rows(design.v());
  for (std::size_t b = 0; b < design.size(); ++b)
    for (int x : design.blocks()[b]) rows[x].push_back(static_cast<int>(b));
  return rows;
}

void require_replication(const std::vector<std::vector<int>>& rows) {
  for (std::size_t x = 0; x < rows.size(); ++x)
    if (rows[x].empty())
      throw Error(ErrorCode::ZeroReplication, kModule,
                  "point " + std::to_string(x) + " lies in no block");
}

// Places `h` rows [first_row, first_row + r) scaled by `scale` onto the blocks of x.
void place_point(ComplexMatrix& out, std::vector<ColumnLabel>& labels, std::size_t& col,
                 const std::vector<int>& blocks, const ComplexMatrix& h, int first_row,
                 double scale, int point, int basis) {
  for (std::size_t c = 0; c < h.cols(); ++c) {
    for (std::size_t i = 0; i < blocks.size(); ++i)
      out(blocks[i], col) = h(first_row + i, c) * scale;
    labels.push_back({point, basis, static_cast<int>(c)});
    ++col;
  }
}

}  // namespace

std::string to_string(ConstructionTag tag) {
  switch (tag) {
    case ConstructionTag::Con0: return "CON0";
    case ConstructionTag::Con1: return "CON1";
    case ConstructionTag::MubExt: return "MUB_EXT";
    case ConstructionTag::Custom: return "CUSTOM";
  }
  return "CUSTOM";
}

ConstructionTag parse_construction_tag(const std::string& text) {
  if (text == "CON0" || text == "con0") return ConstructionTag::Con0;
  if (text == "CON1" || text == "con1") return ConstructionTag::Con1;
  if (text == "MUB_EXT" || text == "mub") return ConstructionTag::MubExt;
  if (text == "CUSTOM") return ConstructionTag::Custom;
  throw Error(ErrorCode::Malformed, kModule, "unknown construction tag '" + text + "'");
}

std::string to_string(HadamardPolicy policy) {
  switch (policy) {
    case HadamardPolicy::Dft: return "dft";
    case HadamardPolicy::Sylvester: return "sylvester";
    case HadamardPolicy::Auto: return "auto";
  }
  return "auto";
}

HadamardPolicy parse_hadamard_policy(const std::string& text) {
  if (text == "dft") return HadamardPolicy::Dft;
  if (text == "sylvester") return HadamardPolicy::Sylvester;
  if (text == "auto") return HadamardPolicy::Auto;
  throw Error(ErrorCode::InvalidArgument, kModule, "unknown Hadamard policy '" + text + "'");
}

FrameMatrix::FrameMatrix(ComplexMatrix entries, std::vector<ColumnLabel> labels, ConstructionTag tag)
    : entries_(std::move(entries)), labels_(std::move(labels)), tag_(tag) {
  if (labels_.size() != entries_.cols())
    throw Error(ErrorCode::InvalidArgument, kModule, "one label per column required");
}

ComplexMatrix hadamard_for(int order, HadamardPolicy policy) {
  switch (policy) {
    case HadamardPolicy::Dft: return dft_matrix(order);
    case HadamardPolicy::Sylvester: return sylvester(order);
    case HadamardPolicy::Auto: return is_power_of_two(order) ? sylvester(order) : dft_matrix(order);
  }
  return dft_matrix(order);
}

FrameMatrix build_con0(const Design& design, HadamardPolicy policy) {
  require_valid(design, kModule);
  const auto rows = point_rows(design);
  require_replication(rows);
  const auto s = stats(design);
  ComplexMatrix out(design.size(), static_cast<std::size_t>(s.sum_block_sizes));
  std::vector<ColumnLabel> labels;
  labels.reserve(out.cols());
  std::size_t col = 0;
  for (int x = 0; x < design.v(); ++x) {
    const int r = static_cast<int>(rows[x].size());
    const auto h = hadamard_for(r, policy);
    place_point(out, labels, col, rows[x], h, 0, 1.0 / std::sqrt(static_cast<double>(r)), x, 0);
  }
  return FrameMatrix(std::move(out), std::move(labels), ConstructionTag::Con0);
}

FrameMatrix build_con1(const Design& design, HadamardPolicy policy) {
  if (design.kind() != DesignKind::PBD)
    throw Error(ErrorCode::InvalidDesign, kModule, "second construction needs a PBD");
  require_valid(design, kModule);
  const auto rows = point_rows(design);
  require_replication(rows);
  std::size_t total = 0;
  for (const auto& r : rows) total += r.size() + 1;
  ComplexMatrix out(design.size(), total);
  std::vector<ColumnLabel> labels;
  labels.reserve(total);
  std::size_t col = 0;
  for (int x = 0; x < design.v(); ++x) {
    const int r = static_cast<int>(rows[x].size());
    const auto h = hadamard_for(r + 1, policy);
    for (std::size_t c = 0; c < h.cols(); ++c)
      if (h(0, c) != h(0, 0))
        throw Error(ErrorCode::UnsupportedOrder, kModule, "Hadamard row 0 is not constant");
    // Skip the constant row 0.
    place_point(out, labels, col, rows[x], h, 1, 1.0 / std::sqrt(static_cast<double>(r + 1)), x, 0);
  }
  return FrameMatrix(std::move(out), std::move(labels), ConstructionTag::Con1);
}

FrameMatrix build_mub_extended(const Design& design, int e) {
  if (design.kind() != DesignKind::PBD)
    throw Error(ErrorCode::InvalidDesign, kModule, "MUB extension needs a PBD");
  require_valid(design, kModule);
  const auto rows = point_rows(design);
  require_replication(rows);
  const int r = static_cast<int>(rows.front().size());
  for (const auto& pr : rows)
    if (static_cast<int>(pr.size()) != r)
      throw Error(ErrorCode::NonconstantReplication, kModule, "replication numbers differ");
  if (!is_prime(r))
    throw Error(ErrorCode::NonprimeReplication, kModule,
                "replication number " + std::to_string(r) + " is not prime");
  const auto bases = mub_family(r);
  const int available = static_cast<int>(bases.size()) - 1;
  if (e < 1 || e > available)
    throw Error(ErrorCode::OutOfRange, kModule,
                "e must lie in [1, " + std::to_string(available) + "], got " + std::to_string(e));

  // sqrt(r) M_i has unimodular entries; the 1/sqrt(r) of the base construction
  // then reproduces M_i itself.
  ComplexMatrix out(design.size(), static_cast<std::size_t>(e) * r * design.v());
  std::vector<ColumnLabel> labels;
  labels.reserve(out.cols());
  std::size_t col = 0;
  for (int x = 0; x < design.v(); ++x)
    for (int i = 1; i <= e; ++i) place_point(out, labels, col, rows[x], bases[i], 0, 1.0, x, i);
  return FrameMatrix(std::move(out), std::move(labels), ConstructionTag::MubExt);
}

FrameMatrix normalize_rows(const FrameMatrix& frame, double c) {
  if (!(c > 0.0) || !std::isfinite(c))
    throw Error(ErrorCode::InvalidArgument, kModule, "row norm must be a positive real");
  ComplexMatrix out = frame.entries();
  for (std::size_t i = 0; i < out.rows(); ++i) {
    double norm2 = 0.0;
    for (std::size_t j = 0; j < out.cols(); ++j) norm2 += std::norm(out(i, j));
    if (norm2 == 0.0)
      throw Error(ErrorCode::DegenerateFrame, kModule, "row " + std::to_string(i) + " is zero");
    const double factor = c / std::sqrt(norm2);
    for (std::size_t j = 0; j < out.cols(); ++j) out(i, j) *= factor;
  }
  return FrameMatrix(std::move(out), frame.labels(), frame.tag());
}

}  // namespace pbdcs
