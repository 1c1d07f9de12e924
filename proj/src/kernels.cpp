#include "luka/kernels.hpp"

#include <cstddef>

#ifdef LUKA_HAVE_OPENMP
#include <omp.h>
#endif

namespace luka::kernels {

namespace {

// Interiors of the two boxes meet (needed for a full-dimensional intersection).
bool boxes_overlap_open(const Box& a, const Box& b) {
  for (std::size_t i = 0; i < a.lo.size(); ++i) {
    if (a.lo[i] >= b.hi[i] || b.lo[i] >= a.hi[i]) return false;
  }
  return true;
}

bool boxes_overlap_closed(const Box& a, const Box& b) {
  for (std::size_t i = 0; i < a.lo.size(); ++i) {
    if (a.lo[i] > b.hi[i] || b.lo[i] > a.hi[i]) return false;
  }
  return true;
}

struct Decision {
  AffineFn split;  // high side: split >= 0
  AffineFn high;
  AffineFn low;
};

Decision decide(Combine op, const AffineFn& f, const AffineFn& g) {
  const std::size_t n = f.dim();
  const AffineFn one = AffineFn::constant(n, 1);
  const AffineFn zero = AffineFn::constant(n, 0);
  switch (op) {
    case Combine::oplus: return {f + g - one, one, f + g};
    case Combine::otimes: return {f + g - one, f + g - one, zero};
    case Combine::impl: return {g - f, one, one - f + g};
    case Combine::max: return {f - g, f, g};
    case Combine::min: return {f - g, g, f};
  }
  return {zero, zero, zero};
}

Box box_meet(const Box& a, const Box& b) {
  Box r = a;
  for (std::size_t i = 0; i < r.lo.size(); ++i) {
    if (b.lo[i] > r.lo[i]) r.lo[i] = b.lo[i];
    if (b.hi[i] < r.hi[i]) r.hi[i] = b.hi[i];
  }
  return r;
}

// Cells produced by one overlay pair, appended in a fixed order. Boxes of new
// cells are inherited from the operands, so they over-approximate the region.
void combine_pair(const Cell& p, const Cell& q, Combine op, bool diagonal, std::vector<Cell>& out) {
  if (!diagonal && !boxes_overlap_open(p.box, q.box)) return;
  Polyhedron r = diagonal ? p.region : p.region.intersect(q.region);
  Box box = diagonal ? p.box : box_meet(p.box, q.box);
  Decision d = decide(op, p.piece, q.piece);
  if (d.high == d.low || d.split.is_constant()) {
    if (!diagonal && !is_full_dimensional(r)) return;
    const bool high = d.high == d.low || d.split.constant_term() >= 0;
    out.push_back(Cell{std::move(r), high ? std::move(d.high) : std::move(d.low), std::move(box)});
    return;
  }
  Polyhedron upper = r;
  upper.add(d.split);
  Polyhedron lower = r;
  lower.add(-d.split);
  const bool up = is_full_dimensional(upper);
  const bool down = is_full_dimensional(lower);
  if (up && down) {
    out.push_back(Cell{std::move(upper), std::move(d.high), box});
    out.push_back(Cell{std::move(lower), std::move(d.low), std::move(box)});
  } else if (up) {
    out.push_back(Cell{std::move(r), std::move(d.high), std::move(box)});
  } else if (down) {
    out.push_back(Cell{std::move(r), std::move(d.low), std::move(box)});
  }
}

void overlay_row(const std::vector<Cell>& a, const std::vector<Cell>& b, Combine op, bool same, std::size_t i,
                 std::vector<Cell>& out) {
  if (same) {
    combine_pair(a[i], a[i], op, true, out);
    return;
  }
  for (const auto& q : b) combine_pair(a[i], q, op, false, out);
}

std::vector<Cell> flatten(std::vector<std::vector<Cell>>& rows) {
  std::size_t total = 0;
  for (const auto& r : rows) total += r.size();
  std::vector<Cell> out;
  out.reserve(total);
  for (auto& r : rows) {
    for (auto& c : r) out.push_back(std::move(c));
  }
  return out;
}

std::optional<Box> member_box(const Polyhedron& p) { return bounding_box(p); }

void intersect_row(const Polyhedron& p, const std::optional<Box>& pb, const std::vector<Polyhedron>& b,
                   const std::vector<std::optional<Box>>& boxes, std::vector<Polyhedron>& out) {
  if (!pb) return;
  for (std::size_t j = 0; j < b.size(); ++j) {
    if (!boxes[j] || !boxes_overlap_closed(*pb, *boxes[j])) continue;
    Polyhedron r = p.intersect(b[j]);
    if (!is_empty(r)) out.push_back(std::move(r));
  }
}

std::optional<RegionMin> min_row(const Cell& cell, const std::vector<Polyhedron>& members,
                                 const std::vector<std::optional<Box>>& boxes) {
  std::optional<RegionMin> best;
  for (std::size_t j = 0; j < members.size(); ++j) {
    if (!boxes[j] || !boxes_overlap_closed(cell.box, *boxes[j])) continue;
    const auto r = lp_min(cell.piece, cell.region.intersect(members[j]));
    if (!r.optimal()) continue;
    if (!best || r.value < best->value) best = RegionMin{r.value, r.argmin};
  }
  return best;
}

std::optional<RegionMin> reduce_min(std::vector<std::optional<RegionMin>>& rows) {
  std::optional<RegionMin> best;
  for (auto& r : rows) {
    if (r && (!best || r->value < best->value)) best = std::move(r);
  }
  return best;
}

}  // namespace

int max_threads() {
#ifdef LUKA_HAVE_OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

std::vector<Cell> overlay(const std::vector<Cell>& a, const std::vector<Cell>& b, Combine op, bool same) {
  std::vector<std::vector<Cell>> rows(a.size());
  const auto n = static_cast<std::ptrdiff_t>(a.size());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < n; ++i) overlay_row(a, b, op, same, static_cast<std::size_t>(i), rows[i]);
  return flatten(rows);
}

std::vector<Rat> eval_batch(const PLFunction& F, const std::vector<Point>& points) {
  std::vector<Rat> out(points.size());
  const auto n = static_cast<std::ptrdiff_t>(points.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) out[i] = eval_pl(F, points[i]);
  return out;
}

std::vector<Polyhedron> intersect_members(const std::vector<Polyhedron>& a, const std::vector<Polyhedron>& b) {
  std::vector<std::optional<Box>> abox(a.size());
  std::vector<std::optional<Box>> bbox(b.size());
  const auto na = static_cast<std::ptrdiff_t>(a.size());
  const auto nb = static_cast<std::ptrdiff_t>(b.size());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < na; ++i) abox[i] = member_box(a[i]);
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t j = 0; j < nb; ++j) bbox[j] = member_box(b[j]);
  std::vector<std::vector<Polyhedron>> rows(a.size());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < na; ++i) intersect_row(a[i], abox[i], b, bbox, rows[i]);
  std::vector<Polyhedron> out;
  for (auto& r : rows) {
    for (auto& p : r) out.push_back(std::move(p));
  }
  return out;
}

std::optional<RegionMin> min_over_members(const PLFunction& F, const std::vector<Polyhedron>& members) {
  std::vector<std::optional<Box>> boxes(members.size());
  const auto nm = static_cast<std::ptrdiff_t>(members.size());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t j = 0; j < nm; ++j) boxes[j] = member_box(members[j]);
  const auto& cells = F.cells();
  std::vector<std::optional<RegionMin>> rows(cells.size());
  const auto nc = static_cast<std::ptrdiff_t>(cells.size());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < nc; ++i) rows[i] = min_row(cells[i], members, boxes);
  return reduce_min(rows);
}

namespace serial {

std::vector<Cell> overlay(const std::vector<Cell>& a, const std::vector<Cell>& b, Combine op, bool same) {
  std::vector<std::vector<Cell>> rows(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) overlay_row(a, b, op, same, i, rows[i]);
  return flatten(rows);
}

std::vector<Rat> eval_batch(const PLFunction& F, const std::vector<Point>& points) {
  std::vector<Rat> out;
  out.reserve(points.size());
  for (const auto& p : points) out.push_back(eval_pl(F, p));
  return out;
}

std::vector<Polyhedron> intersect_members(const std::vector<Polyhedron>& a, const std::vector<Polyhedron>& b) {
  std::vector<std::optional<Box>> bbox;
  for (const auto& p : b) bbox.push_back(member_box(p));
  std::vector<Polyhedron> out;
  for (const auto& p : a) intersect_row(p, member_box(p), b, bbox, out);
  return out;
}

std::optional<RegionMin> min_over_members(const PLFunction& F, const std::vector<Polyhedron>& members) {
  std::vector<std::optional<Box>> boxes;
  for (const auto& m : members) boxes.push_back(member_box(m));
  std::vector<std::optional<RegionMin>> rows;
  for (const auto& c : F.cells()) rows.push_back(min_row(c, members, boxes));
  return reduce_min(rows);
}

}  // namespace serial

}  // namespace luka::kernels
