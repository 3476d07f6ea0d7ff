#include "pbdcs/planner.hpp"

#include <algorithm>
#include <numeric>

#include "pbdcs/error.hpp"
#include "pbdcs/number_theory.hpp"

namespace pbdcs {

namespace {

constexpr const char* kModule = "planner";

using i128 = __int128;

[[noreturn]] void invalid(const std::string& why) {
  throw Error(ErrorCode::InvalidArgument, kModule, why);
}

i128 floor_div(i128 a, i128 b) {
  i128 q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

// Fraction-free (Bareiss) determinant.
i128 determinant(std::vector<std::vector<i128>> a) {
  const std::size_t n = a.size();
  i128 sign = 1;
  i128 prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t swap = k + 1;
      while (swap < n && a[swap][k] == 0) ++swap;
      if (swap == n) return 0;
      std::swap(a[k], a[swap]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j)
        a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

std::vector<std::vector<i128>> widen(const IntMatrix& m) {
  std::vector<std::vector<i128>> out(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) out[i].assign(m[i].begin(), m[i].end());
  return out;
}

struct Enumerator {
  const IntMatrix& m;
  std::vector<std::int64_t> residual;
  std::vector<std::int64_t> x;
  std::uint64_t nodes = 0;

  bool run(std::size_t col) {
    if (++nodes > 10'000'000) throw Error(ErrorCode::Guard, kModule, "MX = alpha enumeration too large");
    if (col == x.size())
      return std::all_of(residual.begin(), residual.end(), [](std::int64_t r) { return r == 0; });
    std::int64_t bound = -1;
    for (std::size_t i = 0; i < m.size(); ++i)
      if (m[i][col] > 0) {
        const std::int64_t b = residual[i] / m[i][col];
        bound = bound < 0 ? b : std::min(bound, b);
      }
    if (bound < 0) bound = 0;  // zero column
    for (std::int64_t value = 0; value <= bound; ++value) {
      x[col] = value;
      for (std::size_t i = 0; i < m.size(); ++i) residual[i] -= m[i][col] * value;
      const bool ok = run(col + 1);
      for (std::size_t i = 0; i < m.size(); ++i) residual[i] += m[i][col] * value;
      if (ok) return true;
    }
    x[col] = 0;
    return false;
  }
};

std::vector<std::int64_t> reversed(std::vector<std::int64_t> v) {
  std::reverse(v.begin(), v.end());
  return v;
}

IntMatrix reversed_rows(IntMatrix m) {
  std::reverse(m.begin(), m.end());
  return m;
}

// Inequalities equivalent to M^{-1} alpha >= 0 for the alternate matrix.
InequalityReport alternate_check(const std::vector<std::int64_t>& a) {
  InequalityReport r;
  r.checks = {{"alpha_{k-1} >= 0", a[0] >= 0},
              {"10 alpha_{k-1} + 2 alpha_{k+1} >= 2 alpha_k", 10 * a[0] + 2 * a[2] >= 2 * a[1]},
              {"2 alpha_k >= 10 alpha_{k-1} + alpha_{k+1}", 2 * a[1] >= 10 * a[0] + a[2]}};
  r.ok = std::all_of(r.checks.begin(), r.checks.end(), [](const auto& c) { return c.holds; });
  return r;
}

PlanOutcome plan_integer_impl(std::int64_t n, int k) {
  if (n < 1) invalid("n must be >= 1");
  const std::int64_t a_lo = (n + 3) / 4;
  const std::int64_t a_hi = n / 3;
  PlanOutcome out;
  if (a_lo > a_hi) {
    out.reason = "no type (a, n-2a, a) satisfies ceil(n/4) <= a <= floor(n/3)";
    return out;
  }
  const std::vector<std::int64_t> rows{k - 2, k - 1, k};
  for (std::int64_t a = a_lo; a <= a_hi; ++a) {
    BlockType type{{k - 1, k, k + 1}, {a, n - 2 * a, a}};
    const auto F = pair_count(type);
    const auto v = triangular_root(F);
    if (!v) continue;
    const auto mx = solve_mx(designexistence_matrix(), type.alpha, rows);
    if (!mx.x) continue;
    PlanResult plan;
    plan.v = *v;
    plan.type = type;
    plan.n = n;
    plan.N = column_count(type);
    plan.tau = a - a_lo;
    plan.sigma = 0;
    plan.regime = "designexistence";
    plan.certificates.feasible = feasible(*v, type);
    plan.certificates.inequalities = designexistence_check(type, *v);
    plan.certificates.mx_solution = *mx.x;
    plan.certificates.gcd_hypothesis = mx.hypothesis_ok;
    out.result = std::move(plan);
    return out;
  }
  const BlockType lo{{k - 1, k, k + 1}, {a_lo, n - 2 * a_lo, a_lo}};
  out.reason = "no C(v,2) in F-range [" + std::to_string(pair_count(lo)) + ", " +
               std::to_string(pair_count(lo) + (a_hi - a_lo)) + "]";
  return out;
}

}  // namespace

std::vector<std::string> InequalityReport::violated() const {
  std::vector<std::string> out;
  for (const auto& c : checks)
    if (!c.holds) out.push_back(c.name);
  return out;
}

void check_block_type(const BlockType& type) {
  if (type.k.size() != type.alpha.size()) invalid("block sizes and counts differ in length");
  for (int k : type.k)
    if (k < 2) invalid("block sizes must be >= 2");
  for (auto a : type.alpha)
    if (a < 0) invalid("block counts must be non-negative");
}

void check_consecutive_triple(const BlockType& type) {
  check_block_type(type);
  if (type.k.size() != 3 || type.k[1] != type.k[0] + 1 || type.k[2] != type.k[1] + 1)
    invalid("expected block sizes (k-1, k, k+1)");
}

std::int64_t pair_count(const BlockType& type) {
  check_block_type(type);
  std::int64_t total = 0;
  for (std::size_t i = 0; i < type.k.size(); ++i)
    total = checked_add(total, checked_mul(type.alpha[i], binom2(type.k[i])));
  return total;
}

std::int64_t block_count(const BlockType& type) {
  check_block_type(type);
  std::int64_t total = 0;
  for (auto a : type.alpha) total = checked_add(total, a);
  return total;
}

std::int64_t column_count(const BlockType& type) {
  check_block_type(type);
  std::int64_t total = 0;
  for (std::size_t i = 0; i < type.k.size(); ++i)
    total = checked_add(total, checked_mul(type.k[i], type.alpha[i]));
  return total;
}

BlockType binom_swap(const BlockType& type, std::int64_t t) {
  check_consecutive_triple(type);
  BlockType out = type;
  out.alpha[0] = checked_add(out.alpha[0], t);
  out.alpha[1] = checked_add(out.alpha[1], checked_mul(-2, t));
  out.alpha[2] = checked_add(out.alpha[2], t);
  for (auto a : out.alpha)
    if (a < 0)
      throw Error(ErrorCode::InfeasibleSwap, kModule,
                  "swap by t = " + std::to_string(t) + " makes a block count negative");
  return out;
}

bool feasible(std::int64_t v, const BlockType& type) {
  if (v < 1) return false;
  return pair_count(type) == binom2(v);
}

InequalityReport designexistence_check(const BlockType& type, std::int64_t v) {
  check_consecutive_triple(type);
  const auto& a = type.alpha;
  InequalityReport r;
  r.checks = {{"alpha_k >= alpha_{k-1}", a[1] >= a[0]},
              {"alpha_k >= alpha_{k+1}", a[1] >= a[2]},
              {"alpha_{k+1} + alpha_{k-1} >= alpha_k", a[2] + a[0] >= a[1]},
              {"F(alpha) = C(v,2)", feasible(v, type)}};
  r.ok = std::all_of(r.checks.begin(), r.checks.end(), [](const auto& c) { return c.holds; });
  return r;
}

bool column_gcd_hypothesis(const IntMatrix& m, const std::vector<std::int64_t>& row_indices) {
  if (m.empty()) return false;
  if (row_indices.size() != m.size()) invalid("one row index per row of M required");
  const std::size_t cols = m.front().size();
  for (std::size_t j = 0; j < cols; ++j) {
    std::int64_t g = 0;
    for (std::size_t i = 0; i < m.size(); ++i)
      if (m[i][j] != 0) g = std::gcd(g, row_indices[i]);
    if (g != 1) return false;
  }
  return true;
}

MxSolution solve_mx(const IntMatrix& m, const std::vector<std::int64_t>& alpha,
                    const std::vector<std::int64_t>& row_indices) {
  if (m.empty() || m.front().empty()) invalid("M must be non-empty");
  const std::size_t cols = m.front().size();
  for (const auto& row : m) {
    if (row.size() != cols) invalid("M rows differ in length");
    for (auto e : row)
      if (e < 0) invalid("M entries must be non-negative");
  }
  if (alpha.size() != m.size()) invalid("alpha length differs from the rows of M");

  MxSolution out;
  out.hypothesis_ok = column_gcd_hypothesis(m, row_indices);

  if (m.size() == cols) {
    const i128 det = determinant(widen(m));
    if (det != 0) {
      out.exact_inverse = true;
      std::vector<std::int64_t> x(cols);
      for (std::size_t j = 0; j < cols; ++j) {
        auto mj = widen(m);
        for (std::size_t i = 0; i < m.size(); ++i) mj[i][j] = alpha[i];
        const i128 dj = determinant(std::move(mj));
        if (dj % det != 0) return out;
        const i128 value = dj / det;
        if (value < 0) return out;
        x[j] = static_cast<std::int64_t>(value);
      }
      out.x = std::move(x);
      return out;
    }
  }

  for (auto a : alpha)
    if (a < 0) return out;
  Enumerator e{m, alpha, std::vector<std::int64_t>(cols, 0)};
  if (e.run(0)) out.x = e.x;
  return out;
}

IntMatrix designexistence_matrix() { return {{1, 0, 1}, {1, 1, 1}, {0, 1, 1}}; }
IntMatrix alternate_matrix() { return {{1, 0, 0}, {5, 1, 1}, {0, 1, 2}}; }

Rational Rational::parse(const std::string& text) {
  auto fail = [&]() -> Rational { invalid("not a rational number: '" + text + "'"); };
  if (text.empty()) return fail();
  auto parse_int = [&](const std::string& s) -> std::int64_t {
    if (s.empty() || s.find_first_not_of("+-0123456789") != std::string::npos) fail();
    std::size_t used = 0;
    std::int64_t value = 0;
    try {
      value = std::stoll(s, &used);
    } catch (const std::exception&) {
      fail();
    }
    if (used != s.size()) fail();
    return value;
  };
  Rational r;
  if (const auto slash = text.find('/'); slash != std::string::npos) {
    r.num = parse_int(text.substr(0, slash));
    r.den = parse_int(text.substr(slash + 1));
    if (r.den == 0) fail();
  } else if (const auto dot = text.find('.'); dot != std::string::npos) {
    const std::string whole = text.substr(0, dot);
    const std::string frac = text.substr(dot + 1);
    if (frac.empty() || frac.find_first_not_of("0123456789") != std::string::npos || frac.size() > 15)
      fail();
    const bool negative = !whole.empty() && whole[0] == '-';
    const std::int64_t w = (whole.empty() || whole == "-" || whole == "+") ? 0 : parse_int(whole);
    std::int64_t den = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
    const std::int64_t f = std::stoll(frac);
    r.num = checked_add(checked_mul(w < 0 ? -w : w, den), f);
    if (negative) r.num = -r.num;
    r.den = den;
  } else {
    r.num = parse_int(text);
  }
  if (r.den < 0) {
    r.num = -r.num;
    r.den = -r.den;
  }
  const std::int64_t g = std::gcd(r.num, r.den);
  if (g > 1) {
    r.num /= g;
    r.den /= g;
  }
  return r;
}

std::int64_t Rational::floor_times(std::int64_t n) const {
  const i128 value = floor_div(static_cast<i128>(num) * n, den);
  if (value > INT64_MAX || value < INT64_MIN)
    throw Error(ErrorCode::Infeasible, kModule, "floor(h n) overflows");
  return static_cast<std::int64_t>(value);
}

std::string Rational::str() const {
  return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den);
}

PlanOutcome plan_integer(std::int64_t n, int k) {
  if (k <= 3) invalid("plan_integer needs k > 3");
  return plan_integer_impl(n, k);
}

PlanOutcome plan_rational(std::int64_t n, const Rational& h) {
  if (n < 1) invalid("n must be >= 1");
  if (h.den <= 0 || h.num <= 3 * h.den) invalid("h must be a rational > 3");
  // k = nearest integer, h = k + 1/2 rounds down.
  const std::int64_t fl = static_cast<std::int64_t>(floor_div(h.num, h.den));
  const std::int64_t twice_frac = 2 * (h.num - fl * h.den);  // 2 (h - fl) * den
  const std::int64_t k64 = twice_frac > h.den ? fl + 1 : fl;
  if (k64 > 1'000'000) invalid("h too large");
  const int k = static_cast<int>(k64);

  const std::int64_t target = h.floor_times(n);
  const std::int64_t sigma = target - checked_mul(k, n);
  if (sigma == 0) return plan_integer_impl(n, k);

  const std::int64_t s = sigma > 0 ? sigma : -sigma;
  const bool mirrored = sigma < 0;
  const bool alternate = 4 * s > n;
  const IntMatrix base = alternate ? alternate_matrix() : designexistence_matrix();
  // Mirroring swaps the roles of k-1 and k+1: reverse M's rows so it acts on
  // alpha in its natural (k-1, k, k+1) order.
  const IntMatrix m = mirrored ? reversed_rows(base) : base;
  const std::vector<std::int64_t> rows{k - 2, k - 1, k};
  std::string regime = alternate ? "alternate" : "designexistence";
  if (mirrored) regime += "-mirrored";

  PlanOutcome out;
  for (std::int64_t tau = 0; 2 * tau <= n - s; ++tau) {
    std::vector<std::int64_t> alpha{tau, n - s - 2 * tau, s + tau};
    if (mirrored) alpha = reversed(alpha);
    BlockType type{{k - 1, k, k + 1}, alpha};
    const auto v = triangular_root(pair_count(type));
    if (!v) continue;
    const auto mx = solve_mx(m, alpha, rows);
    if (!mx.x) continue;
    PlanResult plan;
    plan.v = *v;
    plan.type = type;
    plan.n = n;
    plan.N = column_count(type);
    plan.tau = tau;
    plan.sigma = sigma;
    plan.regime = regime;
    plan.certificates.feasible = feasible(*v, type);
    // The regime's inequalities apply to the mirrored vector; F is checked on the real type.
    const auto effective = mirrored ? reversed(alpha) : alpha;
    auto& ineq = plan.certificates.inequalities;
    if (alternate) {
      ineq = alternate_check(effective);
    } else {
      ineq = designexistence_check(BlockType{{k - 1, k, k + 1}, effective}, *v);
      ineq.checks.pop_back();
    }
    ineq.checks.push_back({"F(alpha) = C(v,2)", plan.certificates.feasible});
    ineq.ok = std::all_of(ineq.checks.begin(), ineq.checks.end(), [](const auto& c) { return c.holds; });
    plan.certificates.mx_solution = *mx.x;
    plan.certificates.gcd_hypothesis = mx.hypothesis_ok;
    out.result = std::move(plan);
    return out;
  }
  out.reason = "no tau in [0, " + std::to_string((n - s) / 2) +
               "] gives a triangular F with a non-negative solution of M X = alpha (" + regime + ")";
  return out;
}

std::optional<BlockType> column_swap_plan(const BlockType& type, std::int64_t steps) {
  check_consecutive_triple(type);
  const std::int64_t k = type.k[1];
  BlockType out = type;
  out.alpha[0] = checked_add(out.alpha[0], checked_mul(k, steps));
  out.alpha[1] = checked_add(out.alpha[1], checked_mul(-(2 * k - 1), steps));
  out.alpha[2] = checked_add(out.alpha[2], checked_mul(k - 1, steps));
  for (auto a : out.alpha)
    if (a < 0) return std::nullopt;
  return out;
}

nlohmann::ordered_json to_json(const PlanResult& p) {
  nlohmann::ordered_json ineq = nlohmann::ordered_json::object();
  for (const auto& c : p.certificates.inequalities.checks) ineq[c.name] = c.holds;
  return {{"v", p.v},
          {"k_values", p.type.k},
          {"alpha", p.type.alpha},
          {"n", p.n},
          {"N", p.N},
          {"tau", p.tau},
          {"sigma", p.sigma},
          {"regime", p.regime},
          {"certificates",
           {{"feasible", p.certificates.feasible},
            {"inequalities", ineq},
            {"inequalities_ok", p.certificates.inequalities.ok},
            {"mx_solution", p.certificates.mx_solution},
            {"gcd_hypothesis", p.certificates.gcd_hypothesis}}},
          {"existence", "asymptotic-only"}};
}

nlohmann::ordered_json to_json(const PlanOutcome& o) {
  if (o.result) {
    auto j = to_json(*o.result);
    j["result"] = "FOUND";
    return j;
  }
  return {{"result", "NOT_FOUND"}, {"reason", o.reason}, {"existence", "asymptotic-only"}};
}

}  // namespace pbdcs
