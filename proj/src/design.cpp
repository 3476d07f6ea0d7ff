#include "pbdcs/design.hpp"

#include <algorithm>
#include <sstream>

#include "pbdcs/error.hpp"

namespace pbdcs {

std::string to_string(DesignKind kind) { return kind == DesignKind::PBD ? "PBD" : "PACKING"; }

Design::Design(int v, std::vector<Block> blocks, DesignKind kind)
    : v_(v), blocks_(std::move(blocks)), kind_(kind) {
  if (v < 1) throw Error(ErrorCode::InvalidArgument, "design", "v must be positive");
  for (auto& block : blocks_) {
    if (block.size() < 2)
      throw Error(ErrorCode::Malformed, "design", "block with fewer than two points");
    std::sort(block.begin(), block.end());
    if (block.front() < 0 || block.back() >= v)
      throw Error(ErrorCode::OutOfRange, "design",
                  "point index " + std::to_string(block.front() < 0 ? block.front() : block.back()) +
                      " outside 0.." + std::to_string(v - 1));
    if (std::adjacent_find(block.begin(), block.end()) != block.end())
      throw Error(ErrorCode::DuplicatePoint, "design", "block repeats a point");
  }
}

bool operator==(const Design& a, const Design& b) {
  if (a.v_ != b.v_ || a.kind_ != b.kind_ || a.blocks_.size() != b.blocks_.size()) return false;
  auto lhs = a.blocks_;
  auto rhs = b.blocks_;
  std::sort(lhs.begin(), lhs.end());
  std::sort(rhs.begin(), rhs.end());
  return lhs == rhs;
}

int DesignStats::r_min() const {
  return replication.empty() ? 0 : *std::min_element(replication.begin(), replication.end());
}

int DesignStats::r_max() const {
  return replication.empty() ? 0 : *std::max_element(replication.begin(), replication.end());
}

ValidationReport validate(const Design& design) {
  const int v = design.v();
  std::vector<int> count(static_cast<std::size_t>(v) * v, 0);
  for (const auto& block : design.blocks())
    for (std::size_t i = 0; i < block.size(); ++i)
      for (std::size_t j = i + 1; j < block.size(); ++j) ++count[block[i] * v + block[j]];

  ValidationReport report;
  const bool exact = design.kind() == DesignKind::PBD;
  for (int x = 0; x < v; ++x) {
    for (int y = x + 1; y < v; ++y) {
      const int c = count[x * v + y];
      if (c >= 2 || (exact && c == 0)) report.violations.push_back({x, y, c});
    }
  }
  report.ok = report.violations.empty();
  return report;
}

DesignStats stats(const Design& design) {
  DesignStats s;
  s.n_blocks = design.size();
  s.replication.assign(design.v(), 0);
  for (const auto& block : design.blocks()) {
    ++s.block_sizes[static_cast<int>(block.size())];
    s.sum_block_sizes += static_cast<std::int64_t>(block.size());
    for (int x : block) ++s.replication[x];
  }
  return s;
}

void require_valid(const Design& design, const char* module) {
  const auto report = validate(design);
  if (report.ok) return;
  std::ostringstream msg;
  msg << to_string(design.kind()) << " condition fails on " << report.violations.size()
      << " pair(s)";
  for (std::size_t i = 0; i < std::min<std::size_t>(report.violations.size(), 3); ++i) {
    const auto& p = report.violations[i];
    msg << (i == 0 ? ": " : ", ") << '{' << p.x << ',' << p.y << "}x" << p.count;
  }
  throw Error(ErrorCode::InvalidDesign, module, msg.str());
}

}  // namespace pbdcs
