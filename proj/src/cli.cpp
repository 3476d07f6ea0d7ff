#include "pbdcs/cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "pbdcs/analysis.hpp"
#include "pbdcs/design.hpp"
#include "pbdcs/error.hpp"
#include "pbdcs/frame.hpp"
#include "pbdcs/planner.hpp"
#include "pbdcs/recovery.hpp"

namespace pbdcs::cli {

namespace {

using json = nlohmann::ordered_json;

struct CommandResult {
  bool ok = true;
  json payload = json::object();
  std::vector<std::string> diagnostics;
  int exit_code = kOk;
};

std::set<int> parse_int_set(const std::string& text) {
  std::set<int> out;
  std::stringstream ss(text);
  for (std::string part; std::getline(ss, part, ',');) {
    if (part.empty()) continue;
    try {
      std::size_t used = 0;
      const int value = std::stoi(part, &used);
      if (used != part.size()) throw std::invalid_argument(part);
      out.insert(value);
    } catch (const std::exception&) {
      throw Error(ErrorCode::InvalidArgument, "cli", "bad integer list '" + text + "'");
    }
  }
  if (out.empty()) throw Error(ErrorCode::InvalidArgument, "cli", "empty integer list");
  return out;
}

// "0,1,2,3,4;5,6,7" -> blocks
std::vector<Block> parse_blocks(const std::string& text) {
  std::vector<Block> blocks;
  std::stringstream ss(text);
  for (std::string part; std::getline(ss, part, ';');) {
    if (part.empty()) continue;
    const auto points = parse_int_set(part);
    blocks.emplace_back(points.begin(), points.end());
  }
  return blocks;
}

// "5:1,3:15" -> {5:1, 3:15}
std::map<int, int> parse_counts(const std::string& text) {
  std::map<int, int> out;
  std::stringstream ss(text);
  for (std::string part; std::getline(ss, part, ',');) {
    const auto colon = part.find(':');
    if (colon == std::string::npos)
      throw Error(ErrorCode::InvalidArgument, "cli", "expected size:count in '" + text + "'");
    try {
      out[std::stoi(part.substr(0, colon))] = std::stoi(part.substr(colon + 1));
    } catch (const std::exception&) {
      throw Error(ErrorCode::InvalidArgument, "cli", "bad size:count in '" + text + "'");
    }
  }
  return out;
}

json stats_json(const Design& d) {
  const auto s = stats(d);
  json sizes = json::object();
  for (const auto& [k, c] : s.block_sizes) sizes[std::to_string(k)] = c;
  return {{"v", d.v()},
          {"kind", to_string(d.kind())},
          {"n_blocks", s.n_blocks},
          {"block_sizes", sizes},
          {"replication", s.replication},
          {"sum_block_sizes", s.sum_block_sizes}};
}

struct DesignFlags {
  std::string family;
  int v = 0;
  int q = 0;
  std::string k_set;
  std::string force;
  std::string exact_counts;
  std::uint64_t seed = 0;
};

void add_design_flags(CLI::App* cmd, DesignFlags& f) {
  cmd->add_option("--family", f.family, "sts | pg2 | ag2 | search | packing")
      ->required()
      ->check(CLI::IsMember({"sts", "pg2", "ag2", "search", "packing"}));
  cmd->add_option("--v", f.v, "number of points (sts, search, packing)");
  cmd->add_option("--q", f.q, "prime order (pg2, ag2)");
  cmd->add_option("--k-set", f.k_set, "block sizes, comma separated (search, packing)");
  cmd->add_option("--force", f.force, "forced blocks for search, e.g. 0,1,2,3,4;5,6,7");
  cmd->add_option("--exact-counts", f.exact_counts, "exact block counts for search, e.g. 5:1");
  cmd->add_option("--seed", f.seed, "seed (greedy packer, recovery trials)");
}

// Returns nullopt (with diagnostics filled) when a search finds nothing.
std::optional<Design> generate(const DesignFlags& f, CommandResult& res) {
  auto need = [](bool present, const char* flag) {
    if (!present) throw Error(ErrorCode::InvalidArgument, "cli", std::string(flag) + " is required for this family");
  };
  if (f.family == "sts") {
    need(f.v > 0, "--v");
    return gen_sts_bose(f.v);
  }
  if (f.family == "pg2") {
    need(f.q > 0, "--q");
    return gen_projective_plane(f.q);
  }
  if (f.family == "ag2") {
    need(f.q > 0, "--q");
    return gen_affine_plane(f.q);
  }
  need(f.v > 0, "--v");
  need(!f.k_set.empty(), "--k-set");
  const auto sizes = parse_int_set(f.k_set);
  if (f.family == "packing") return greedy_packing(f.v, sizes, f.seed);
  PbdSearchOptions opts;
  if (!f.force.empty()) opts.force_blocks = parse_blocks(f.force);
  if (!f.exact_counts.empty()) opts.exact_counts = parse_counts(f.exact_counts);
  auto found = gen_pbd_exact_cover(f.v, sizes, opts);
  res.payload["search"] = {{"status", to_string(found.status)}, {"reason", found.reason}, {"nodes", found.nodes}};
  if (!found.design) {
    res.diagnostics.push_back("search: " + to_string(found.status) + " (" + found.reason + ")");
    return std::nullopt;
  }
  return found.design;
}

struct FrameFlags {
  std::string construction = "con0";
  std::string hadamard = "auto";
  int mub_e = 1;
  double normalize = 0.0;
};

void add_frame_flags(CLI::App* cmd, FrameFlags& f) {
  cmd->add_option("--construction", f.construction, "con0 | con1 | mub")
      ->check(CLI::IsMember({"con0", "con1", "mub"}));
  cmd->add_option("--hadamard", f.hadamard, "dft | sylvester | auto")
      ->check(CLI::IsMember({"dft", "sylvester", "auto"}));
  cmd->add_option("--mub-e", f.mub_e, "number of non-identity MUBs (mub)");
  cmd->add_option("--normalize", f.normalize, "rescale every row to this l2 norm");
}

FrameMatrix build(const Design& d, const FrameFlags& f) {
  const auto policy = parse_hadamard_policy(f.hadamard);
  FrameMatrix frame = f.construction == "con0"   ? build_con0(d, policy)
                      : f.construction == "con1" ? build_con1(d, policy)
                                                 : build_mub_extended(d, f.mub_e);
  if (f.normalize > 0.0) frame = normalize_rows(frame, f.normalize);
  return frame;
}

json analysis_json(const FrameMatrix& frame, const std::optional<Design>& design) {
  json j = to_json(analyze(frame));
  if (!design) return j;
  if (design->kind() == DesignKind::PBD &&
      (frame.tag() == ConstructionTag::Con0 || frame.tag() == ConstructionTag::Con1))
    j["bounds"] = to_json(theoretical_bounds(*design, frame.tag()));
  if (design->kind() == DesignKind::Packing) j["packing_bound"] = to_json(packing_bound(*design));
  return j;
}

void print_text(const json& j, std::ostream& out, const std::string& prefix = "") {
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (it->is_object()) {
      print_text(*it, out, prefix + it.key() + ".");
    } else {
      out << prefix << it.key() << ": " << it->dump() << '\n';
    }
  }
}

void emit(const CommandResult& res, bool as_json, std::ostream& out, std::ostream& err) {
  if (as_json) {
    json j{{"status", res.ok ? "OK" : "ERROR"}, {"payload", res.payload}, {"diagnostics", res.diagnostics}};
    out << j.dump(2) << '\n';
    return;
  }
  out << "status: " << (res.ok ? "OK" : "ERROR") << '\n';
  print_text(res.payload, out);
  for (const auto& d : res.diagnostics) err << d << '\n';
}

int exit_code_for(const Error& e) {
  switch (e.code()) {
    case ErrorCode::InvalidArgument: return kUsage;
    case ErrorCode::Malformed:
    case ErrorCode::OutOfRange:
    case ErrorCode::DuplicatePoint:
    case ErrorCode::InvalidDesign: return kValidation;
    default: return kComputation;
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Deterministic compressed-sensing matrices from pairwise balanced designs", "pbdcs"};
  app.require_subcommand(1);
  bool as_json = false;
  CommandResult res;
  std::function<void()> action;

  // designs gen | validate
  auto* designs = app.add_subcommand("designs", "generate or validate block designs");
  designs->require_subcommand(1);
  DesignFlags gen_flags;
  std::string gen_out;
  auto* gen = designs->add_subcommand("gen", "generate a design");
  add_design_flags(gen, gen_flags);
  gen->add_option("-o,--output", gen_out, "output .pbd path")->required();
  gen->add_flag("--json", as_json);
  gen->callback([&] {
    action = [&] {
      const auto d = generate(gen_flags, res);
      if (!d) {
        res.payload["result"] = "NOT_FOUND";
        return;
      }
      write_design(*d, gen_out);
      const auto report = validate(*d);
      res.payload["path"] = gen_out;
      res.payload["valid"] = report.ok;
      res.payload["stats"] = stats_json(*d);
    };
  });

  std::string validate_path;
  auto* val = designs->add_subcommand("validate", "check the pair-coverage condition of a .pbd file");
  val->add_option("path", validate_path)->required();
  val->add_flag("--json", as_json);
  val->callback([&] {
    action = [&] {
      const auto d = read_design(validate_path);
      const auto report = validate(d);
      res.payload["ok"] = report.ok;
      json bad = json::array();
      for (const auto& p : report.violations) bad.push_back({p.x, p.y, p.count});
      res.payload["violations"] = bad;
      res.payload["stats"] = stats_json(d);
      if (!report.ok) {
        res.ok = false;
        res.exit_code = kValidation;
        res.diagnostics.push_back(std::to_string(report.violations.size()) + " pair(s) violate the " +
                                  to_string(d.kind()) + " condition");
      }
    };
  });

  // frame build | analyze
  auto* frame_cmd = app.add_subcommand("frame", "build or analyse measurement frames");
  frame_cmd->require_subcommand(1);
  FrameFlags build_flags;
  std::string build_design, build_out;
  auto* build_cmd = frame_cmd->add_subcommand("build", "build a frame from a design");
  build_cmd->add_option("--design", build_design)->required();
  add_frame_flags(build_cmd, build_flags);
  build_cmd->add_option("-o,--output", build_out, "output .fmf path")->required();
  build_cmd->add_flag("--json", as_json);
  build_cmd->callback([&] {
    action = [&] {
      const auto frame = build(read_design(build_design), build_flags);
      write_frame(frame, build_out);
      res.payload = {{"path", build_out}, {"n", frame.n()}, {"N", frame.N()}, {"tag", to_string(frame.tag())}};
    };
  });

  std::string analyze_path, analyze_design;
  auto* analyze_cmd = frame_cmd->add_subcommand("analyze", "coherence report for a frame");
  analyze_cmd->add_option("path", analyze_path)->required();
  analyze_cmd->add_option("--design", analyze_design, "source design, enables the bound chain");
  analyze_cmd->add_flag("--json", as_json);
  analyze_cmd->callback([&] {
    action = [&] {
      const auto frame = read_frame(analyze_path);
      std::optional<Design> d;
      if (!analyze_design.empty()) d = read_design(analyze_design);
      res.payload = analysis_json(frame, d);
    };
  });

  // plan
  std::int64_t plan_n = 0;
  int plan_k = 0;
  std::string plan_h;
  auto* plan = app.add_subcommand("plan", "block-type arithmetic for an n x N target");
  plan->set_help_flag("--help", "Print this help message and exit");
  plan->add_option("--n", plan_n)->required();
  auto* k_opt = plan->add_option("--k", plan_k, "integer ratio N/n (k > 3)");
  auto* h_opt = plan->add_option("--h", plan_h, "rational ratio N/n (h > 3), e.g. 4.5 or 9/2");
  k_opt->excludes(h_opt);
  plan->add_flag("--json", as_json);
  plan->callback([&] {
    if (k_opt->count() + h_opt->count() != 1) throw CLI::ValidationError("plan", "exactly one of --k, --h is required");
    action = [&] {
      const auto outcome = k_opt->count() ? plan_integer(plan_n, plan_k) : plan_rational(plan_n, Rational::parse(plan_h));
      res.payload = to_json(outcome);
    };
  });

  // recover
  std::string recover_frame, recover_solver = "bp", recover_csv;
  int recover_t = 0, recover_trials = 0;
  std::uint64_t recover_seed = 0;
  double success_tol = 1e-4;
  unsigned threads = 1;
  auto* recover = app.add_subcommand("recover", "synthetic sparse-recovery trials");
  recover->add_option("--frame", recover_frame)->required();
  recover->add_option("--sparsity", recover_t)->required();
  recover->add_option("--trials", recover_trials)->required();
  recover->add_option("--seed", recover_seed)->required();
  recover->add_option("--solver", recover_solver)->check(CLI::IsMember({"bp", "omp", "l0", "lp"}));
  recover->add_option("--success-tol", success_tol);
  recover->add_option("--csv", recover_csv, "per-trial CSV output path");
  recover->add_option("--threads", threads);
  recover->add_flag("--json", as_json);
  recover->callback([&] {
    action = [&] {
      const auto frame = read_frame(recover_frame);
      TrialOptions opts;
      opts.success_tol = success_tol;
      opts.threads = threads;
      const auto stats = run_trials(frame, recover_t, recover_trials, recover_seed, parse_solver(recover_solver), opts);
      res.payload = to_json(stats);
      if (!recover_csv.empty()) {
        std::ofstream csv(recover_csv);
        if (!csv) throw Error(ErrorCode::Io, "cli", "cannot write " + recover_csv);
        write_trials_csv(stats, csv);
      }
    };
  });

  // pipeline
  DesignFlags pipe_design;
  FrameFlags pipe_frame;
  int pipe_t = 1, pipe_trials = 0;
  std::string pipe_solver = "bp";
  auto* pipeline = app.add_subcommand("pipeline", "design -> frame -> analyze -> recover");
  add_design_flags(pipeline, pipe_design);
  add_frame_flags(pipeline, pipe_frame);
  pipeline->add_option("--sparsity", pipe_t);
  pipeline->add_option("--trials", pipe_trials);
  pipeline->add_option("--solver", pipe_solver)->check(CLI::IsMember({"bp", "omp", "l0", "lp"}));
  pipeline->add_option("--success-tol", success_tol);
  pipeline->add_flag("--json", as_json);
  pipeline->callback([&] {
    action = [&] {
      const std::uint64_t pipe_seed = pipe_design.seed;
      const auto d = generate(pipe_design, res);
      if (!d) {
        res.ok = false;
        res.exit_code = kComputation;
        return;
      }
      res.payload["design"] = stats_json(*d);
      res.payload["design_valid"] = validate(*d).ok;
      const auto frame = build(*d, pipe_frame);
      res.payload["frame"] = {{"n", frame.n()}, {"N", frame.N()}, {"tag", to_string(frame.tag())}};
      res.payload["analyze"] = analysis_json(frame, d);
      if (pipe_trials > 0) {
        TrialOptions opts;
        opts.success_tol = success_tol;
        res.payload["recover"] = to_json(run_trials(frame, pipe_t, pipe_trials, pipe_seed, parse_solver(pipe_solver), opts));
      }
    };
  });

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kOk;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsage;
  } catch (const Error& e) {
    err << "error " << e.qualified_code() << ": " << e.what() << '\n';
    return kUsage;
  }

  try {
    if (action) action();
  } catch (const Error& e) {
    res.ok = false;
    res.exit_code = exit_code_for(e);
    res.payload = json::object();
    res.diagnostics.push_back(e.qualified_code() + ": " + e.what());
  } catch (const std::exception& e) {
    res.ok = false;
    res.exit_code = kComputation;
    res.payload = json::object();
    res.diagnostics.push_back(std::string("internal: ") + e.what());
  }
  if (!res.ok && res.exit_code == kOk) res.exit_code = kComputation;
  emit(res, as_json, out, err);
  return res.exit_code;
}

}  // namespace pbdcs::cli
