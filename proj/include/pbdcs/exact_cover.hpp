#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace pbdcs {

// Algorithm X over dancing links. Column choice is fewest-candidates-first
// with ties broken by lowest item index, so the search order is fully
// determined by the order items and options were added.
class ExactCover {
 public:
  explicit ExactCover(int n_items);

  // Returns the option id (consecutive from 0).
  int add_option(std::span<const int> items);

  int n_items() const noexcept { return n_items_; }
  int n_options() const noexcept { return static_cast<int>(option_items_.size()); }
  const std::vector<int>& option_items(int option) const { return option_items_[option]; }

  // Vetoes an option given the options already chosen on the current branch.
  using Admit = std::function<bool(int option, std::span<const int> chosen)>;
  // Final check on a complete cover.
  using Accept = std::function<bool(std::span<const int> chosen)>;

  struct Result {
    std::optional<std::vector<int>> solution;
    std::uint64_t nodes = 0;
    bool budget_exceeded = false;
  };

  Result solve_first(const Admit& admit = {}, const Accept& accept = {},
                     std::uint64_t node_limit = UINT64_MAX);

 private:
  struct Node {
    int left, right, up, down, column, option;
  };

  void cover(int column);
  void uncover(int column);
  bool search(const Admit& admit, const Accept& accept, std::uint64_t limit, Result& out);

  int n_items_;
  std::vector<Node> nodes_;
  std::vector<int> column_size_;
  std::vector<std::vector<int>> option_items_;
  std::vector<int> chosen_;
};

}  // namespace pbdcs
