#include <algorithm>
#include <array>
#include <numeric>
#include <random>

#include "pbdcs/design.hpp"
#include "pbdcs/error.hpp"
#include "pbdcs/exact_cover.hpp"
#include "pbdcs/number_theory.hpp"

namespace pbdcs {

namespace {

constexpr const char* kModule = "design";

template <typename Fn>
void for_each_subset(int v, int k, Fn&& fn) {
  if (k > v || k < 0) return;
  std::vector<int> subset(k);
  std::iota(subset.begin(), subset.end(), 0);
  while (true) {
    fn(subset);
    int i = k - 1;
    while (i >= 0 && subset[i] == v - k + i) --i;
    if (i < 0) return;
    ++subset[i];
    for (int j = i + 1; j < k; ++j) subset[j] = subset[j - 1] + 1;
  }
}

std::int64_t count_subsets(int v, int k) {
  std::int64_t c = 1;
  for (int i = 0; i < k; ++i) c = c * (v - i) / (i + 1);
  return c;
}

// Whether `target` is a non-negative integer combination of `parts`.
bool representable(std::int64_t target, const std::vector<std::int64_t>& parts) {
  if (target < 0) return false;
  std::vector<char> reach(static_cast<std::size_t>(target) + 1, 0);
  reach[0] = 1;
  for (std::int64_t t = 1; t <= target; ++t)
    for (auto p : parts)
      if (p > 0 && p <= t && reach[t - p]) {
        reach[t] = 1;
        break;
      }
  return reach[target] != 0;
}

void require_prime(int q, const char* what) {
  if (!is_prime(q))
    throw Error(ErrorCode::InvalidArgument, kModule,
                std::string(what) + " requires prime q, got " + std::to_string(q));
}

}  // namespace

std::string to_string(SearchStatus status) {
  switch (status) {
    case SearchStatus::Found: return "FOUND";
    case SearchStatus::NotFound: return "NOT_FOUND";
    case SearchStatus::Infeasible: return "INFEASIBLE";
    case SearchStatus::BudgetExceeded: return "BUDGET_EXCEEDED";
  }
  return "UNKNOWN";
}

Design gen_sts_bose(int v) {
  if (v < 3 || v % 6 != 3)
    throw Error(ErrorCode::InvalidArgument, kModule,
                "Bose construction needs v = 3 (mod 6), got " + std::to_string(v));
  const int n = v / 3;  // odd
  const int half = (n + 1) / 2;  // inverse of 2 mod n
  auto point = [n](int x, int layer) { return x + n * layer; };
  // Idempotent commutative quasigroup x o y = (x + y) / 2 mod n.
  auto op = [n, half](int x, int y) { return static_cast<int>((static_cast<long>(x + y) * half) % n); };

  std::vector<Block> blocks;
  blocks.reserve(static_cast<std::size_t>(v) * (v - 1) / 6);
  for (int x = 0; x < n; ++x) blocks.push_back({point(x, 0), point(x, 1), point(x, 2)});
  for (int layer = 0; layer < 3; ++layer)
    for (int x = 0; x < n; ++x)
      for (int y = x + 1; y < n; ++y)
        blocks.push_back({point(x, layer), point(y, layer), point(op(x, y), (layer + 1) % 3)});
  return Design(v, std::move(blocks), DesignKind::PBD);
}

Design gen_projective_plane(int q) {
  require_prime(q, "PG(2,q)");
  // Normalised representatives: (1,a,b), (0,1,b), (0,0,1).
  std::vector<std::array<int, 3>> reps;
  for (int a = 0; a < q; ++a)
    for (int b = 0; b < q; ++b) reps.push_back({1, a, b});
  for (int b = 0; b < q; ++b) reps.push_back({0, 1, b});
  reps.push_back({0, 0, 1});

  const int v = static_cast<int>(reps.size());
  std::vector<Block> blocks;
  blocks.reserve(v);
  for (const auto& line : reps) {
    Block block;
    for (int p = 0; p < v; ++p) {
      const auto& pt = reps[p];
      if ((line[0] * pt[0] + line[1] * pt[1] + line[2] * pt[2]) % q == 0) block.push_back(p);
    }
    blocks.push_back(std::move(block));
  }
  return Design(v, std::move(blocks), DesignKind::PBD);
}

Design gen_affine_plane(int q) {
  require_prime(q, "AG(2,q)");
  auto point = [q](int x, int y) { return x * q + y; };
  std::vector<Block> blocks;
  for (int m = 0; m < q; ++m)
    for (int b = 0; b < q; ++b) {
      Block block;
      for (int x = 0; x < q; ++x) block.push_back(point(x, (m * x + b) % q));
      blocks.push_back(std::move(block));
    }
  for (int c = 0; c < q; ++c) {
    Block block;
    for (int y = 0; y < q; ++y) block.push_back(point(c, y));
    blocks.push_back(std::move(block));
  }
  return Design(q * q, std::move(blocks), DesignKind::PBD);
}

Design greedy_packing(int v, const std::set<int>& block_sizes, std::uint64_t seed, int passes) {
  if (block_sizes.empty() || *block_sizes.begin() < 2)
    throw Error(ErrorCode::InvalidArgument, kModule, "block sizes must be >= 2");
  if (v < *block_sizes.rbegin())
    throw Error(ErrorCode::InvalidArgument, kModule, "v must be at least max(K)");
  if (passes < 1) throw Error(ErrorCode::InvalidArgument, kModule, "need at least one greedy pass");
  std::int64_t total = 0;
  for (int k : block_sizes) total += count_subsets(v, k);
  if (total * passes > 20'000'000)
    throw Error(ErrorCode::Guard, kModule, "too many candidate blocks for greedy packing");

  std::vector<std::vector<Block>> groups;
  for (auto it = block_sizes.rbegin(); it != block_sizes.rend(); ++it) {
    groups.emplace_back();
    for_each_subset(v, *it, [&](const std::vector<int>& s) { groups.back().push_back(s); });
  }

  std::mt19937_64 rng(seed);
  std::vector<Block> best;
  std::vector<char> covered(static_cast<std::size_t>(v) * v);
  for (int pass = 0; pass < passes; ++pass) {
    std::fill(covered.begin(), covered.end(), 0);
    std::vector<Block> chosen;
    for (auto& candidates : groups) {
      std::shuffle(candidates.begin(), candidates.end(), rng);
      for (const auto& block : candidates) {
        bool clash = false;
        for (std::size_t i = 0; i < block.size() && !clash; ++i)
          for (std::size_t j = i + 1; j < block.size(); ++j)
            if (covered[block[i] * v + block[j]]) {
              clash = true;
              break;
            }
        if (clash) continue;
        for (std::size_t i = 0; i < block.size(); ++i)
          for (std::size_t j = i + 1; j < block.size(); ++j) covered[block[i] * v + block[j]] = 1;
        chosen.push_back(block);
      }
    }
    if (chosen.size() > best.size()) best = std::move(chosen);
  }
  return Design(v, std::move(best), DesignKind::Packing);
}

PbdSearchResult gen_pbd_exact_cover(int v, const std::set<int>& block_sizes,
                                    const PbdSearchOptions& options) {
  if (v < 2 || v > kExactCoverMaxV)
    throw Error(ErrorCode::Guard, kModule,
                "exact-cover search limited to 2 <= v <= " + std::to_string(kExactCoverMaxV));
  if (block_sizes.empty() || *block_sizes.begin() < 2 || *block_sizes.rbegin() > v)
    throw Error(ErrorCode::InvalidArgument, kModule, "block sizes must lie in [2, v]");
  for (const auto& [k, count] : options.exact_counts)
    if (!block_sizes.count(k) || count < 0)
      throw Error(ErrorCode::InvalidArgument, kModule, "exact count for a size outside K");

  PbdSearchResult result;
  auto infeasible = [&](std::string reason) {
    result.status = SearchStatus::Infeasible;
    result.reason = std::move(reason);
    return result;
  };

  // Forced blocks: structural check via Design, then pair-disjointness.
  const Design forced(v, options.force_blocks, DesignKind::Packing);
  std::map<int, int> used;
  for (const auto& block : forced.blocks()) {
    if (!block_sizes.count(static_cast<int>(block.size())))
      throw Error(ErrorCode::InvalidArgument, kModule, "forced block size not in K");
    ++used[static_cast<int>(block.size())];
  }
  if (!validate(forced).ok) return infeasible("forced blocks share a pair");

  // Global pair-count arithmetic: sum_i alpha_i C(k_i,2) = C(v,2).
  std::int64_t remaining_pairs = binom2(v);
  for (const auto& block : forced.blocks()) remaining_pairs -= binom2(block.size());
  std::vector<std::int64_t> free_parts;
  for (int k : block_sizes) {
    auto it = options.exact_counts.find(k);
    if (it == options.exact_counts.end()) {
      free_parts.push_back(binom2(k));
      continue;
    }
    const int left = it->second - used[k];
    if (left < 0) return infeasible("forced blocks exceed the exact count for size " + std::to_string(k));
    remaining_pairs -= static_cast<std::int64_t>(left) * binom2(k);
  }
  if (!representable(remaining_pairs, free_parts))
    return infeasible("pair count C(v,2) is not a combination of C(k,2), k in K");

  // Local arithmetic: each point needs sum (|B|-1) = v-1 over its blocks.
  std::vector<std::int64_t> degree_parts;
  for (int k : block_sizes) degree_parts.push_back(k - 1);
  std::vector<int> degree_left(v, v - 1);
  for (const auto& block : forced.blocks())
    for (int x : block) degree_left[x] -= static_cast<int>(block.size()) - 1;
  for (int x = 0; x < v; ++x)
    if (!representable(degree_left[x], degree_parts))
      return infeasible("point " + std::to_string(x) + " cannot reach replication degree v-1");

  // Items: uncovered pairs.
  std::vector<int> pair_item(static_cast<std::size_t>(v) * v, -1);
  std::vector<char> covered(static_cast<std::size_t>(v) * v, 0);
  for (const auto& block : forced.blocks())
    for (std::size_t i = 0; i < block.size(); ++i)
      for (std::size_t j = i + 1; j < block.size(); ++j) covered[block[i] * v + block[j]] = 1;
  int n_items = 0;
  for (int x = 0; x < v; ++x)
    for (int y = x + 1; y < v; ++y)
      if (!covered[x * v + y]) pair_item[x * v + y] = n_items++;

  ExactCover ec(n_items);
  std::vector<Block> option_blocks;
  for (int k : block_sizes) {
    auto it = options.exact_counts.find(k);
    if (it != options.exact_counts.end() && it->second - used[k] == 0) continue;
    for_each_subset(v, k, [&](const std::vector<int>& s) {
      std::vector<int> items;
      items.reserve(s.size() * (s.size() - 1) / 2);
      for (std::size_t i = 0; i < s.size(); ++i)
        for (std::size_t j = i + 1; j < s.size(); ++j) {
          const int id = pair_item[s[i] * v + s[j]];
          if (id < 0) return;
          items.push_back(id);
        }
      ec.add_option(items);
      option_blocks.push_back(s);
    });
  }

  auto size_of = [&](int option) { return static_cast<int>(option_blocks[option].size()); };
  ExactCover::Admit admit;
  ExactCover::Accept accept;
  if (!options.exact_counts.empty()) {
    admit = [&](int option, std::span<const int> chosen) {
      const int k = size_of(option);
      auto it = options.exact_counts.find(k);
      if (it == options.exact_counts.end()) return true;
      int c = used[k];
      for (int o : chosen) c += size_of(o) == k;
      return c < it->second;
    };
    accept = [&](std::span<const int> chosen) {
      for (const auto& [k, want] : options.exact_counts) {
        int c = used[k];
        for (int o : chosen) c += size_of(o) == k;
        if (c != want) return false;
      }
      return true;
    };
  }

  const auto found = ec.solve_first(admit, accept, options.node_limit);
  result.nodes = found.nodes;
  if (!found.solution) {
    result.status = found.budget_exceeded ? SearchStatus::BudgetExceeded : SearchStatus::NotFound;
    result.reason = found.budget_exceeded ? "node limit reached" : "search space exhausted";
    return result;
  }
  std::vector<Block> blocks = forced.blocks();
  for (int o : *found.solution) blocks.push_back(option_blocks[o]);
  result.status = SearchStatus::Found;
  result.design = Design(v, std::move(blocks), DesignKind::PBD);
  return result;
}

}  // namespace pbdcs
