#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "pbdcs/complex_matrix.hpp"
#include "pbdcs/design.hpp"

namespace pbdcs {

enum class ConstructionTag { Con0, Con1, MubExt, Custom };

std::string to_string(ConstructionTag tag);
ConstructionTag parse_construction_tag(const std::string& text);

struct ColumnLabel {
  int point = 0;
  int basis = 0;
  int sub = 0;
  friend bool operator==(const ColumnLabel&, const ColumnLabel&) = default;
};

// n x N measurement matrix. Rows follow the design's block order; columns
// are grouped by point ascending, then basis index, then Hadamard column.
class FrameMatrix {
 public:
  FrameMatrix(ComplexMatrix entries, std::vector<ColumnLabel> labels, ConstructionTag tag);

  std::size_t n() const noexcept { return entries_.rows(); }
  std::size_t N() const noexcept { return entries_.cols(); }
  const ComplexMatrix& entries() const noexcept { return entries_; }
  const std::vector<ColumnLabel>& labels() const noexcept { return labels_; }
  ConstructionTag tag() const noexcept { return tag_; }
  bool is_real() const { return entries_.is_real(); }

  friend bool operator==(const FrameMatrix&, const FrameMatrix&) = default;

 private:
  ComplexMatrix entries_;
  std::vector<ColumnLabel> labels_;
  ConstructionTag tag_;
};

// Dft: character table of Z_r for every order. Sylvester: real Sylvester
// matrices only; orders that are not powers of two are rejected. Auto:
// Sylvester where the order is a power of two, DFT elsewhere.
enum class HadamardPolicy { Dft, Sylvester, Auto };

std::string to_string(HadamardPolicy policy);
HadamardPolicy parse_hadamard_policy(const std::string& text);

// Hadamard matrix of the given order under `policy`; row 0 is all ones.
ComplexMatrix hadamard_for(int order, HadamardPolicy policy);

FrameMatrix build_con0(const Design& design, HadamardPolicy policy);
FrameMatrix build_con1(const Design& design, HadamardPolicy policy);
FrameMatrix build_mub_extended(const Design& design, int e);
FrameMatrix normalize_rows(const FrameMatrix& frame, double c);

// ---- FMF (JSON) ------------------------------------------------------------

void write_frame_json(const FrameMatrix& frame, std::ostream& out);
FrameMatrix read_frame_json(std::istream& in);
void write_frame(const FrameMatrix& frame, const std::string& path);
FrameMatrix read_frame(const std::string& path);

}  // namespace pbdcs
