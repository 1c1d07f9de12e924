#include "luka/linalg.hpp"

#include <utility>

namespace luka {

namespace {

// Reduced row echelon form in place; returns pivot columns.
std::vector<std::size_t> rref(Matrix& a, std::size_t cols) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < cols && row < a.size(); ++col) {
    std::size_t sel = row;
    while (sel < a.size() && a[sel][col] == 0) ++sel;
    if (sel == a.size()) continue;
    std::swap(a[row], a[sel]);
    const Rat inv = 1 / a[row][col];
    for (auto& x : a[row]) x *= inv;
    for (std::size_t r = 0; r < a.size(); ++r) {
      if (r == row || a[r][col] == 0) continue;
      const Rat f = a[r][col];
      for (std::size_t c = col; c < a[r].size(); ++c) a[r][c] -= f * a[row][c];
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

}  // namespace

std::optional<Point> solve(Matrix a, Point b) {
  const std::size_t n = b.size();
  if (a.size() != n) throw DimensionError("solve: matrix must be square");
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i].size() != n) throw DimensionError("solve: matrix must be square");
    a[i].push_back(b[i]);
  }
  const auto pivots = rref(a, n);
  if (pivots.size() != n) return std::nullopt;
  Point x(n);
  for (std::size_t i = 0; i < n; ++i) x[pivots[i]] = a[i][n];
  return x;
}

std::vector<Point> null_space(const Matrix& a, std::size_t n) {
  Matrix m = a;
  for (const auto& r : m) {
    if (r.size() != n) throw DimensionError("null_space: row dimension mismatch");
  }
  const auto pivots = rref(m, n);
  std::vector<bool> is_pivot(n, false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<Point> basis;
  for (std::size_t free = 0; free < n; ++free) {
    if (is_pivot[free]) continue;
    Point v = zeros(n);
    v[free] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -m[i][free];
    basis.push_back(primitive(v));
  }
  return basis;
}

std::size_t rank(Matrix a) {
  if (a.empty()) return 0;
  return rref(a, a.front().size()).size();
}

std::vector<Point> gram_schmidt(const std::vector<Point>& vectors) {
  std::vector<Point> out;
  for (const auto& v : vectors) {
    Point w = v;
    for (const auto& q : out) {
      const Rat c = dot(w, q) / dot(q, q);
      for (std::size_t i = 0; i < w.size(); ++i) w[i] -= c * q[i];
    }
    if (!is_zero(w)) out.push_back(std::move(w));
  }
  return out;
}

Point primitive(const Point& v) {
  bool integral = true;
  for (const auto& x : v) {
    if (x.get_den() != 1) {
      integral = false;
      break;
    }
  }
  mpz_class l = 1;
  if (!integral) {
    for (const auto& x : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
  }
  Point out(v.size());
  mpz_class g = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    mpz_class num = v[i].get_num();
    if (!integral) num *= l / v[i].get_den();
    if (g != 1) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), num.get_mpz_t());
    out[i] = Rat(num);
  }
  if (g == 0 || g == 1) return out;
  for (auto& x : out) mpz_divexact(x.get_num_mpz_t(), x.get_num_mpz_t(), g.get_mpz_t());
  return out;
}

}  // namespace luka
