#include <algorithm>
#include <fstream>
#include <sstream>

#include "pbdcs/design.hpp"
#include "pbdcs/error.hpp"

namespace pbdcs {

namespace {

constexpr const char* kModule = "design_io";

[[noreturn]] void malformed(int line_no, const std::string& why) {
  throw Error(ErrorCode::Malformed, kModule, "line " + std::to_string(line_no) + ": " + why);
}

long parse_index(const std::string& token, int line_no) {
  std::size_t used = 0;
  long value = 0;
  try {
    value = std::stol(token, &used);
  } catch (const std::exception&) {
    malformed(line_no, "not an integer: '" + token + "'");
  }
  if (used != token.size()) malformed(line_no, "not an integer: '" + token + "'");
  return value;
}

}  // namespace

// Zero-length lines and comment-only lines are skipped. A line holding only
// whitespace counts as an empty block.
Design parse_design(std::istream& in) {
  std::string line;
  int line_no = 0;
  std::optional<int> v;
  DesignKind kind = DesignKind::PBD;
  std::vector<Block> blocks;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const bool had_comment = line.find('#') != std::string::npos;
    if (had_comment) line.erase(line.find('#'));
    if (line.empty()) continue;
    std::istringstream tokens(line);
    std::vector<std::string> parts;
    for (std::string t; tokens >> t;) parts.push_back(t);
    if (parts.empty()) {
      if (had_comment) continue;
      malformed(line_no, "empty block line");
    }
    if (!v) {
      if (parts.size() != 3 || parts[0] != "v") malformed(line_no, "expected header 'v <int> <PBD|PACKING>'");
      const long value = parse_index(parts[1], line_no);
      if (value < 1) malformed(line_no, "v must be positive");
      v = static_cast<int>(value);
      if (parts[2] == "PBD") kind = DesignKind::PBD;
      else if (parts[2] == "PACKING") kind = DesignKind::Packing;
      else malformed(line_no, "unknown design kind '" + parts[2] + "'");
      continue;
    }
    Block block;
    for (const auto& t : parts) {
      const long value = parse_index(t, line_no);
      if (value < 0 || value >= *v)
        throw Error(ErrorCode::OutOfRange, kModule,
                    "line " + std::to_string(line_no) + ": point " + t + " outside 0.." +
                        std::to_string(*v - 1));
      block.push_back(static_cast<int>(value));
    }
    if (block.size() < 2) malformed(line_no, "block needs at least two points");
    Block sorted = block;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw Error(ErrorCode::DuplicatePoint, kModule,
                  "line " + std::to_string(line_no) + ": block repeats a point");
    blocks.push_back(std::move(block));
  }
  if (!v) throw Error(ErrorCode::Malformed, kModule, "missing header line");
  return Design(*v, std::move(blocks), kind);
}

void format_design(const Design& design, std::ostream& out) {
  auto blocks = design.blocks();
  std::sort(blocks.begin(), blocks.end());
  out << "v " << design.v() << ' ' << to_string(design.kind()) << '\n';
  for (const auto& block : blocks) {
    for (std::size_t i = 0; i < block.size(); ++i) out << (i ? " " : "") << block[i];
    out << '\n';
  }
}

Design read_design(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, kModule, "cannot open " + path);
  return parse_design(in);
}

void write_design(const Design& design, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::Io, kModule, "cannot write " + path);
  format_design(design, out);
  if (!out) throw Error(ErrorCode::Io, kModule, "write failed for " + path);
}

}  // namespace pbdcs
