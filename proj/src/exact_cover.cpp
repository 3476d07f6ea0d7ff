#include "pbdcs/exact_cover.hpp"

#include "pbdcs/error.hpp"

namespace pbdcs {

// Node 0 is the root header, nodes 1..n_items are column headers.
ExactCover::ExactCover(int n_items) : n_items_(n_items), column_size_(n_items + 1, 0) {
  if (n_items < 0) throw Error(ErrorCode::InvalidArgument, "exact_cover", "negative item count");
  nodes_.resize(n_items + 1);
  for (int i = 0; i <= n_items; ++i) {
    nodes_[i] = Node{i == 0 ? n_items : i - 1, i == n_items ? 0 : i + 1, i, i, i, -1};
  }
}

int ExactCover::add_option(std::span<const int> items) {
  const int option = static_cast<int>(option_items_.size());
  option_items_.emplace_back(items.begin(), items.end());
  int first = -1;
  for (int item : items) {
    if (item < 0 || item >= n_items_)
      throw Error(ErrorCode::OutOfRange, "exact_cover", "item index out of range");
    const int column = item + 1;
    const int id = static_cast<int>(nodes_.size());
    Node node{id, id, nodes_[column].up, column, column, option};
    nodes_.push_back(node);
    nodes_[nodes_[column].up].down = id;
    nodes_[column].up = id;
    ++column_size_[column];
    if (first < 0) {
      first = id;
    } else {
      nodes_[id].left = nodes_[first].left;
      nodes_[id].right = first;
      nodes_[nodes_[first].left].right = id;
      nodes_[first].left = id;
    }
  }
  return option;
}

void ExactCover::cover(int column) {
  nodes_[nodes_[column].right].left = nodes_[column].left;
  nodes_[nodes_[column].left].right = nodes_[column].right;
  for (int i = nodes_[column].down; i != column; i = nodes_[i].down) {
    for (int j = nodes_[i].right; j != i; j = nodes_[j].right) {
      nodes_[nodes_[j].down].up = nodes_[j].up;
      nodes_[nodes_[j].up].down = nodes_[j].down;
      --column_size_[nodes_[j].column];
    }
  }
}

void ExactCover::uncover(int column) {
  for (int i = nodes_[column].up; i != column; i = nodes_[i].up) {
    for (int j = nodes_[i].left; j != i; j = nodes_[j].left) {
      ++column_size_[nodes_[j].column];
      nodes_[nodes_[j].down].up = j;
      nodes_[nodes_[j].up].down = j;
    }
  }
  nodes_[nodes_[column].right].left = column;
  nodes_[nodes_[column].left].right = column;
}

bool ExactCover::search(const Admit& admit, const Accept& accept, std::uint64_t limit,
                        Result& out) {
  if (nodes_[0].right == 0) {
    if (accept && !accept(chosen_)) return false;
    out.solution = chosen_;
    return true;
  }
  if (++out.nodes > limit) {
    out.budget_exceeded = true;
    return false;
  }
  int best = nodes_[0].right;
  for (int c = nodes_[best].right; c != 0; c = nodes_[c].right)
    if (column_size_[c] < column_size_[best]) best = c;
  if (column_size_[best] == 0) return false;

  cover(best);
  for (int r = nodes_[best].down; r != best; r = nodes_[r].down) {
    const int option = nodes_[r].option;
    if (admit && !admit(option, chosen_)) continue;
    chosen_.push_back(option);
    for (int j = nodes_[r].right; j != r; j = nodes_[j].right) cover(nodes_[j].column);
    const bool found = search(admit, accept, limit, out);
    for (int j = nodes_[r].left; j != r; j = nodes_[j].left) uncover(nodes_[j].column);
    chosen_.pop_back();
    if (found || out.budget_exceeded) {
      uncover(best);
      return found;
    }
  }
  uncover(best);
  return false;
}

ExactCover::Result ExactCover::solve_first(const Admit& admit, const Accept& accept,
                                           std::uint64_t node_limit) {
  Result out;
  chosen_.clear();
  search(admit, accept, node_limit, out);
  return out;
}

}  // namespace pbdcs
