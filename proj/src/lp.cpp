// Simplex on a dictionary whose free variables are pivoted out first.
//
// Labels: 0..n-1 are the free variables x, n..n+m-1 the slacks s_i = h_i(x) >= 0,
// and n+m the phase-one auxiliary variable. Each dictionary row expresses one basic
// label as an affine function of the nonbasic labels.
//
// lp_min first runs the dictionary in doubles and, if that ends at a vertex, certifies
// the vertex exactly (primal feasibility plus nonnegative multipliers). Anything the
// certificate cannot confirm is recomputed by the exact rational dictionary.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <vector>

#include "luka/geometry.hpp"
#include "luka/linalg.hpp"

namespace luka {

namespace {

// Sign tests with a tolerance for the floating-point pass; exact for Rat.
inline int sgn_of(const Rat& v) { return sgn(v); }
inline int sgn_of(double v) {
  constexpr double eps = 1e-9;
  return v > eps ? 1 : (v < -eps ? -1 : 0);
}

template <class T>
T convert(const Rat& r);
template <>
Rat convert<Rat>(const Rat& r) {
  return r;
}
template <>
double convert<double>(const Rat& r) {
  return r.get_d();
}

template <class T>
struct Row {
  std::size_t label;
  T c;
  std::vector<T> a;  // one entry per nonbasic column
};

template <class T>
class Dictionary {
 public:
  using Row = luka::Row<T>;

  Dictionary(std::size_t n, const std::vector<AffineFn>& constraints) : n_(n), m_(constraints.size()) {
    for (const auto& h : constraints) {
      Row row{n_ + rows_.size(), convert<T>(h.constant_term()), {}};
      row.a.reserve(n_);
      for (const auto& c : h.coefficients()) row.a.push_back(convert<T>(c));
      rows_.push_back(std::move(row));
    }
    for (std::size_t j = 0; j < n_; ++j) nonbasic_.push_back(j);
    frozen_.assign(n_, false);
  }

  // Limits pivots; the exact dictionary never needs this (Bland's rule terminates).
  void set_pivot_limit(std::size_t limit) { pivot_limit_ = limit; }
  bool exhausted() const { return exhausted_; }
  const std::vector<std::size_t>& nonbasic() const { return nonbasic_; }

  bool is_free_label(std::size_t label) const { return label < n_; }

  void pivot(std::size_t r, std::size_t j) {
    Row& pr = rows_[r];
    const T inv = T(1) / pr.a[j];
    // Solve row r for nonbasic column j.
    Row fresh{nonbasic_[j], T(-pr.c * inv), std::vector<T>(pr.a.size())};
    for (std::size_t k = 0; k < pr.a.size(); ++k) fresh.a[k] = k == j ? inv : -pr.a[k] * inv;
    const std::size_t leaving = pr.label;
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      if (i == r) continue;
      substitute(rows_[i].c, rows_[i].a, j, fresh);
    }
    if (objective_) substitute(obj_c_, obj_a_, j, fresh);
    rows_[r] = std::move(fresh);
    nonbasic_[j] = leaving;
  }

  // Brings every free variable into the basis where some constraint row mentions it.
  void eliminate_free() {
    for (std::size_t j = 0; j < nonbasic_.size(); ++j) {
      if (!is_free_label(nonbasic_[j])) continue;
      std::size_t sel = rows_.size();
      for (std::size_t r = 0; r < rows_.size(); ++r) {
        if (!is_free_label(rows_[r].label) && sgn_of(rows_[r].a[j]) != 0) {
          sel = r;
          break;
        }
      }
      if (sel == rows_.size()) {
        frozen_[nonbasic_[j]] = true;  // unconstrained direction, pinned at 0
      } else {
        pivot(sel, j);
      }
    }
  }

  bool column_frozen(std::size_t j) const { return is_free_label(nonbasic_[j]) && frozen_[nonbasic_[j]]; }

  // Returns false if infeasible.
  bool phase_one() {
    std::size_t worst = rows_.size();
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      if (is_free_label(rows_[r].label) || sgn_of(rows_[r].c) >= 0) continue;
      if (worst == rows_.size() || rows_[r].c < rows_[worst].c) worst = r;
    }
    if (worst == rows_.size()) return true;

    const std::size_t aux = n_ + m_;
    nonbasic_.push_back(aux);
    for (auto& row : rows_) row.a.push_back(is_free_label(row.label) ? T(0) : T(1));
    obj_c_ = 0;
    obj_a_.assign(nonbasic_.size(), T(0));
    obj_a_.back() = -1;
    objective_ = true;
    pivot(worst, nonbasic_.size() - 1);
    if (run_bland() != LpStatus::optimal) return false;  // cannot happen: -aux is bounded
    if (sgn_of(obj_c_) < 0) return false;

    // Drive the auxiliary variable out of the basis if it is still basic at 0.
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      if (rows_[r].label != aux) continue;
      std::size_t col = nonbasic_.size();
      for (std::size_t j = 0; j < nonbasic_.size(); ++j) {
        if (!column_frozen(j) && sgn_of(rows_[r].a[j]) != 0) {
          col = j;
          break;
        }
      }
      if (col == nonbasic_.size()) {
        rows_.erase(rows_.begin() + static_cast<std::ptrdiff_t>(r));
      } else {
        pivot(r, col);
      }
      break;
    }
    const auto it = std::find(nonbasic_.begin(), nonbasic_.end(), aux);
    const auto j = static_cast<std::size_t>(it - nonbasic_.begin());
    nonbasic_.erase(it);
    for (auto& row : rows_) row.a.erase(row.a.begin() + static_cast<std::ptrdiff_t>(j));
    objective_ = false;
    return true;
  }

  // Installs "maximize -objective" in terms of the current nonbasic columns.
  void set_objective(const AffineFn& objective) {
    obj_c_ = convert<T>(-objective.constant_term());
    obj_a_.assign(nonbasic_.size(), T(0));
    for (std::size_t x = 0; x < n_; ++x) {
      const T cx = convert<T>(objective.coefficients()[x]);
      if (cx == 0) continue;
      const auto nb = std::find(nonbasic_.begin(), nonbasic_.end(), x);
      if (nb != nonbasic_.end()) {
        obj_a_[static_cast<std::size_t>(nb - nonbasic_.begin())] -= cx;
        continue;
      }
      for (const auto& row : rows_) {
        if (row.label != x) continue;
        obj_c_ -= cx * row.c;
        for (std::size_t k = 0; k < obj_a_.size(); ++k) obj_a_[k] -= cx * row.a[k];
        break;
      }
    }
    objective_ = true;
  }

  bool objective_depends_on_frozen() const {
    for (std::size_t j = 0; j < nonbasic_.size(); ++j) {
      if (column_frozen(j) && sgn_of(obj_a_[j]) != 0) return true;
    }
    return false;
  }

  LpStatus run_bland() {
    for (;;) {
      std::size_t enter = nonbasic_.size();
      for (std::size_t j = 0; j < nonbasic_.size(); ++j) {
        if (column_frozen(j) || sgn_of(obj_a_[j]) <= 0) continue;
        if (enter == nonbasic_.size() || nonbasic_[j] < nonbasic_[enter]) enter = j;
      }
      if (enter == nonbasic_.size()) return LpStatus::optimal;

      std::size_t leave = rows_.size();
      T best{};
      for (std::size_t r = 0; r < rows_.size(); ++r) {
        const Row& row = rows_[r];
        if (is_free_label(row.label) || sgn_of(row.a[enter]) >= 0) continue;
        T ratio = row.c / -row.a[enter];
        if (leave == rows_.size() || ratio < best || (ratio == best && row.label < rows_[leave].label)) {
          leave = r;
          best = std::move(ratio);
        }
      }
      if (leave == rows_.size()) return LpStatus::unbounded;
      if (++pivots_ > pivot_limit_) {
        exhausted_ = true;
        return LpStatus::unbounded;
      }
      pivot(leave, enter);
    }
  }

  T objective_value() const { return obj_c_; }

  Point primal_point() const {
    Point x = zeros(n_);
    for (const auto& row : rows_) {
      if (is_free_label(row.label)) x[row.label] = row.c;
    }
    return x;
  }

 private:
  static void substitute(T& c, std::vector<T>& a, std::size_t j, const Row& fresh) {
    if (a[j] == 0) return;
    const T b = a[j];
    c += b * fresh.c;
    for (std::size_t k = 0; k < a.size(); ++k) {
      if (k == j) {
        a[k] = b * fresh.a[k];
      } else if (fresh.a[k] != 0) {
        a[k] += b * fresh.a[k];
      }
    }
  }

  std::size_t n_;
  std::size_t m_;
  std::vector<Row> rows_;
  std::vector<std::size_t> nonbasic_;
  std::vector<bool> frozen_;
  bool objective_ = false;
  T obj_c_{};
  std::vector<T> obj_a_;
  std::size_t pivots_ = 0;
  std::size_t pivot_limit_ = static_cast<std::size_t>(-1);
  bool exhausted_ = false;
};

struct FloatGuess {
  bool infeasible = false;
  std::vector<std::size_t> active;  // constraints tight at the optimal vertex
};

// Floating-point pass: a suspected infeasibility, or the nonbasic slack labels of
// an optimum that sits at a vertex.
std::optional<FloatGuess> float_guess(const AffineFn& objective, std::size_t n, const std::vector<AffineFn>& cons) {
  const std::size_t m = cons.size();
  Dictionary<double> dict(n, cons);
  dict.set_pivot_limit(8 * (n + m) + 16);
  dict.eliminate_free();
  const bool feasible = dict.phase_one();
  if (dict.exhausted()) return std::nullopt;
  if (!feasible) return FloatGuess{true, {}};
  dict.set_objective(objective);
  if (dict.objective_depends_on_frozen() || dict.run_bland() != LpStatus::optimal) return std::nullopt;
  FloatGuess g;
  for (const auto label : dict.nonbasic()) {
    if (label < n || label >= n + m) return std::nullopt;
    g.active.push_back(label - n);
  }
  if (g.active.size() != n) return std::nullopt;
  return g;
}

// Exact optimality certificate for the vertex cut out by `active`.
std::optional<LpResult> certify_vertex(const AffineFn& objective, std::size_t n, const std::vector<AffineFn>& cons,
                                       const std::vector<std::size_t>& active) {
  Matrix a;
  Point b;
  for (const auto i : active) {
    a.push_back(cons[i].coefficients());
    b.push_back(-cons[i].constant_term());
  }
  auto x = solve(a, std::move(b));
  if (!x) return std::nullopt;
  for (const auto& h : cons) {
    if (h(*x) < 0) return std::nullopt;
  }
  Matrix at(n, Point(n));
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) at[c][r] = a[r][c];
  }
  const auto y = solve(std::move(at), objective.coefficients());
  if (!y) return std::nullopt;
  for (const auto& v : *y) {
    if (v < 0) return std::nullopt;
  }
  LpResult r;
  r.status = LpStatus::optimal;
  r.value = objective(*x);
  r.argmin = std::move(*x);
  return r;
}

LpResult exact_lp_min(const AffineFn& objective, std::size_t n, const std::vector<AffineFn>& cons) {
  LpResult result;
  Dictionary<Rat> dict(n, cons);
  dict.eliminate_free();
  if (!dict.phase_one()) return result;
  dict.set_objective(objective);
  if (dict.objective_depends_on_frozen() || dict.run_bland() == LpStatus::unbounded) {
    result.status = LpStatus::unbounded;
    return result;
  }
  result.status = LpStatus::optimal;
  result.value = -dict.objective_value();
  result.argmin = dict.primal_point();
  return result;
}

// Certifies emptiness: min of r over { h_i(x) + r >= 0, r >= 0 } is positive.
bool certify_empty(std::size_t n, const std::vector<AffineFn>& cons) {
  std::vector<AffineFn> lifted;
  lifted.reserve(cons.size() + 1);
  for (const auto& h : cons) {
    Point c = h.coefficients();
    c.push_back(1);
    lifted.emplace_back(h.constant_term(), std::move(c));
  }
  const AffineFn aux = AffineFn::coordinate(n + 1, n);
  lifted.push_back(aux);
  const auto g = float_guess(aux, n + 1, lifted);
  if (!g || g->infeasible) return false;
  const auto r = certify_vertex(aux, n + 1, lifted, g->active);
  return r && r->value > 0;
}

LpResult solve_lp(const AffineFn& objective, std::size_t n, const std::vector<AffineFn>& cons) {
  if (n > 0) {
    if (const auto g = float_guess(objective, n, cons)) {
      if (g->infeasible) {
        if (certify_empty(n, cons)) return LpResult{};
      } else if (auto r = certify_vertex(objective, n, cons, g->active)) {
        return std::move(*r);
      }
    }
  }
  return exact_lp_min(objective, n, cons);
}

}  // namespace

LpResult lp_min(const AffineFn& objective, const Polyhedron& region) {
  if (objective.dim() != region.dim()) throw DimensionError("lp_min: objective and region dimensions differ");
  if (region.trivially_empty()) return LpResult{};
  return solve_lp(objective, region.dim(), region.constraints());
}

LpResult lp_min_exact(const AffineFn& objective, const Polyhedron& region) {
  if (objective.dim() != region.dim()) throw DimensionError("lp_min: objective and region dimensions differ");
  if (region.trivially_empty()) return LpResult{};
  return exact_lp_min(objective, region.dim(), region.constraints());
}

LpResult lp_max(const AffineFn& objective, const Polyhedron& region) {
  LpResult r = lp_min(-objective, region);
  if (r.optimal()) r.value = -r.value;
  return r;
}

bool is_empty(const Polyhedron& region) {
  return lp_min(AffineFn(region.dim()), region).status == LpStatus::infeasible;
}

bool is_full_dimensional(const Polyhedron& region) {
  // max t subject to h_i(x) - t >= 0 and t <= 1, over (x, t).
  if (region.trivially_empty()) return false;
  const std::size_t n = region.dim();
  std::vector<AffineFn> lifted;
  lifted.reserve(region.constraints().size() + 1);
  for (const auto& h : region.constraints()) {
    Point c = h.coefficients();
    c.push_back(-1);
    lifted.emplace_back(h.constant_term(), std::move(c));
  }
  lifted.emplace_back(Rat(1), scale(unit(n + 1, n), Rat(-1)));
  const auto r = solve_lp(-AffineFn::coordinate(n + 1, n), n + 1, lifted);
  return r.optimal() && r.value < 0;
}

}  // namespace luka
