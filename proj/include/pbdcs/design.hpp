#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace pbdcs {

enum class DesignKind { PBD, Packing };

std::string to_string(DesignKind kind);

using Block = std::vector<int>;

// A block system on points 0..v-1. Blocks are stored sorted; the block order
// given at construction is kept because it fixes the row order of frames.
class Design {
 public:
  // Throws Error(OutOfRange | DuplicatePoint | Malformed) if a block breaks
  // the structural invariants. The pair-coverage (lambda) condition is not
  // enforced here; use validate().
  Design(int v, std::vector<Block> blocks, DesignKind kind);

  int v() const noexcept { return v_; }
  DesignKind kind() const noexcept { return kind_; }
  const std::vector<Block>& blocks() const noexcept { return blocks_; }
  std::size_t size() const noexcept { return blocks_.size(); }

  Design with_kind(DesignKind kind) const { return Design(v_, blocks_, kind); }

  // Equality of v, kind and the sorted block multiset.
  friend bool operator==(const Design& a, const Design& b);

 private:
  int v_;
  std::vector<Block> blocks_;
  DesignKind kind_;
};

struct PairViolation {
  int x;
  int y;
  int count;  // number of blocks containing {x, y}
};

struct ValidationReport {
  bool ok = true;
  std::vector<PairViolation> violations;
};

struct DesignStats {
  std::size_t n_blocks = 0;
  std::map<int, int> block_sizes;  // size -> multiplicity
  std::vector<int> replication;    // r_x indexed by point
  std::int64_t sum_block_sizes = 0;

  int k_min() const { return block_sizes.empty() ? 0 : block_sizes.begin()->first; }
  int k_max() const { return block_sizes.empty() ? 0 : block_sizes.rbegin()->first; }
  int r_min() const;
  int r_max() const;
};

// Lists every pair covered 0 or >= 2 times (PBD) or >= 2 times (packing).
ValidationReport validate(const Design& design);

DesignStats stats(const Design& design);

// Throws Error(InvalidDesign) listing the first few violations when !validate(d).ok.
void require_valid(const Design& design, const char* module);

// ---- generators ------------------------------------------------------------

// Bose construction of a Steiner triple system, v = 3 (mod 6).
Design gen_sts_bose(int v);

// PG(2,q) and AG(2,q) over GF(q), q prime.
Design gen_projective_plane(int q);
Design gen_affine_plane(int q);

// One greedy pass shuffles every candidate block (larger sizes first, each
// size group shuffled) and keeps a block whenever none of its pairs is
// covered yet. The largest packing over `passes` passes, all driven by one
// generator seeded with `seed`, is returned (first one wins ties).
Design greedy_packing(int v, const std::set<int>& block_sizes, std::uint64_t seed, int passes = 64);

struct PbdSearchOptions {
  std::vector<Block> force_blocks;
  // Optional exact block counts per size (forced blocks included).
  std::map<int, int> exact_counts;
  std::uint64_t node_limit = 50'000'000;
};

enum class SearchStatus { Found, NotFound, Infeasible, BudgetExceeded };

std::string to_string(SearchStatus status);

struct PbdSearchResult {
  SearchStatus status = SearchStatus::NotFound;
  std::optional<Design> design;
  std::string reason;
  std::uint64_t nodes = 0;
};

inline constexpr int kExactCoverMaxV = 30;

// Exact-cover search for a PBD(v, K, 1) over the pair set. Arithmetic
// infeasibility is reported (status Infeasible) before any search happens.
PbdSearchResult gen_pbd_exact_cover(int v, const std::set<int>& block_sizes,
                                    const PbdSearchOptions& options = {});

// ---- text format (.pbd) ------------------------------------------------------

Design parse_design(std::istream& in);
void format_design(const Design& design, std::ostream& out);
Design read_design(const std::string& path);
void write_design(const Design& design, const std::string& path);

}  // namespace pbdcs
