#include <fstream>

#include <json.hpp>

#include "pbdcs/error.hpp"
#include "pbdcs/frame.hpp"

namespace pbdcs {

namespace {

constexpr const char* kModule = "frame_io";

[[noreturn]] void bad(const std::string& why) { throw Error(ErrorCode::Malformed, kModule, why); }

}  // namespace

void write_frame_json(const FrameMatrix& frame, std::ostream& out) {
  nlohmann::ordered_json j;
  j["n"] = frame.n();
  j["N"] = frame.N();
  j["tag"] = to_string(frame.tag());
  auto labels = nlohmann::ordered_json::array();
  for (const auto& l : frame.labels()) labels.push_back({l.point, l.basis, l.sub});
  j["labels"] = std::move(labels);
  std::vector<double> re, im;
  re.reserve(frame.entries().data().size());
  im.reserve(frame.entries().data().size());
  for (const auto& z : frame.entries().data()) {
    re.push_back(z.real());
    im.push_back(z.imag());
  }
  j["re"] = std::move(re);
  j["im"] = std::move(im);
  out << j.dump() << '\n';
}

FrameMatrix read_frame_json(std::istream& in) {
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    bad(std::string("invalid JSON: ") + e.what());
  }
  try {
    const auto n = j.at("n").get<std::size_t>();
    const auto N = j.at("N").get<std::size_t>();
    const auto tag = parse_construction_tag(j.at("tag").get<std::string>());
    const auto re = j.at("re").get<std::vector<double>>();
    const auto im = j.at("im").get<std::vector<double>>();
    if (re.size() != n * N || im.size() != n * N) bad("re/im length differs from n*N");
    std::vector<ColumnLabel> labels;
    for (const auto& l : j.at("labels")) {
      if (!l.is_array() || l.size() != 3) bad("label must be [point, basis, sub]");
      labels.push_back({l[0].get<int>(), l[1].get<int>(), l[2].get<int>()});
    }
    if (labels.size() != N) bad("label count differs from N");
    std::vector<cplx> data(n * N);
    for (std::size_t i = 0; i < data.size(); ++i) data[i] = {re[i], im[i]};
    return FrameMatrix(ComplexMatrix(n, N, std::move(data)), std::move(labels), tag);
  } catch (const nlohmann::json::exception& e) {
    bad(std::string("bad frame field: ") + e.what());
  }
}

void write_frame(const FrameMatrix& frame, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::Io, kModule, "cannot write " + path);
  write_frame_json(frame, out);
  if (!out) throw Error(ErrorCode::Io, kModule, "write failed for " + path);
}

FrameMatrix read_frame(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, kModule, "cannot open " + path);
  return read_frame_json(in);
}

}  // namespace pbdcs
