#include "luka/consequence.hpp"

#include <algorithm>

#include "luka/diffval.hpp"
#include "luka/geometry.hpp"
#include "luka/linalg.hpp"

namespace luka {

std::size_t Theory::dim() const {
  std::size_t n = 0;
  for (const auto& f : members) n = std::max<std::size_t>(n, max_variable(f));
  return n;
}

std::size_t common_dim(const Theory& theory, const Formula& psi) {
  return std::max<std::size_t>({std::size_t{1}, theory.dim(), max_variable(psi)});
}

RegionUnion models(const Theory& theory, std::size_t n) {
  RegionUnion mod = cube_union(n);
  for (const auto& theta : theory.members) {
    const RegionUnion ones = drop_subsumed(one_set(compile(theta, n)));
    mod = drop_subsumed(intersect(mod, ones));
    if (mod.empty()) break;
  }
  return mod;
}

namespace {

std::size_t resolve_dim(const Theory& theory, const Formula& psi, std::optional<std::size_t> n) {
  const std::size_t need = common_dim(theory, psi);
  if (!n) return need;
  if (*n < need) {
    throw DimensionError("dimension " + std::to_string(*n) + " is smaller than the largest variable index " +
                         std::to_string(need));
  }
  return *n;
}

ConsequenceReport minimum_report(const RegionUnion& mod, const Formula& psi) {
  ConsequenceReport rep;
  if (mod.empty()) return rep;
  const auto best = min_over_region(compile(psi, mod.dim), mod);
  if (!best) return rep;
  rep.minimum = best->value;
  if (best->value < 1) {
    rep.verdict = Verdict::fails;
    rep.countermodel = best->argmin;
  }
  return rep;
}

void verify_countermodel(const Theory& theory, const Formula& psi, const Point& v) {
  if (eval_formula(psi, v) >= 1) throw SoundnessError("countermodel " + format_point(v) + " satisfies the query");
  for (const auto& theta : theory.members) {
    if (eval_formula(theta, v) != 1) {
      throw SoundnessError("countermodel " + format_point(v) + " violates " + to_text(theta));
    }
  }
}

// U is assumed valid; same rule as in_ideal without re-validating.
bool vanishes(const PLFunction& f, const DifferentialValuation& u) {
  const AffineFn& piece = f.cells()[germ_cell(f, u)].piece;
  if (piece(u.base) != 0) return false;
  for (const auto& d : u.directions) {
    if (piece.slope(d) != 0) return false;
  }
  return true;
}

void push_unique(std::vector<Point>& out, Point p) {
  if (std::find(out.begin(), out.end(), p) == out.end()) out.push_back(std::move(p));
}

// Bounded search for a valuation that satisfies the theory but refutes psi.
std::optional<DifferentialValuation> search_differential(const Theory& theory, const Formula& psi, std::size_t n,
                                                         const RegionUnion& mod, std::size_t& checked) {
  std::vector<PLFunction> complements;
  for (const auto& theta : theory.members) complements.push_back(compile(Formula::neg(theta), n));
  const PLFunction not_psi = compile(Formula::neg(psi), n);

  Formula all = psi;
  for (auto it = theory.members.rbegin(); it != theory.members.rend(); ++it) all = Formula::min(*it, all);
  const PLFunction refined = compile(all, n);

  std::vector<Point> bases;
  for (const auto& c : refined.cells()) {
    for (auto& v : vertices(c.region)) push_unique(bases, std::move(v));
  }
  for (const auto& m : mod.members) {
    for (auto& v : vertices(m)) push_unique(bases, std::move(v));
  }
  std::erase_if(bases, [&](const Point& v) {
    for (const auto& theta : theory.members) {
      if (eval_formula(theta, v) != 1) return true;
    }
    return false;
  });

  auto refutes = [&](const DifferentialValuation& u) -> bool {
    ++checked;
    if (!validate(u)) return false;
    if (vanishes(not_psi, u)) return false;
    for (const auto& f : complements) {
      if (!vanishes(f, u)) return false;
    }
    return true;
  };

  for (const auto& x : bases) {
    if (refutes(DifferentialValuation{x, {}})) return DifferentialValuation{x, {}};
    std::vector<Point> dirs;
    for (std::size_t i = 0; i < n; ++i) {
      push_unique(dirs, unit(n, i));
      push_unique(dirs, scale(unit(n, i), Rat(-1)));
    }
    for (const auto& c : refined.cells()) {
      if (!contains(c.region, x)) continue;
      for (auto& d : feasible_direction_generators(c.region, x)) push_unique(dirs, std::move(d));
    }
    for (const auto& d1 : dirs) {
      DifferentialValuation u1{x, {d1}};
      if (refutes(u1)) return u1;
      if (n < 2) continue;
      for (const auto& d2 : dirs) {
        Point w = sub(d2, scale(d1, dot(d2, d1) / dot(d1, d1)));
        if (is_zero(w)) continue;
        DifferentialValuation u2{x, {d1, primitive(w)}};
        if (refutes(u2)) return u2;
      }
    }
  }
  return std::nullopt;
}

}  // namespace

ConsequenceReport semantic_consequence(const Theory& theory, const Formula& psi, std::optional<std::size_t> n) {
  const std::size_t dim = resolve_dim(theory, psi, n);
  ConsequenceReport rep = minimum_report(models(theory, dim), psi);
  if (rep.countermodel) verify_countermodel(theory, psi, *rep.countermodel);
  return rep;
}

ConsequenceReport semantic_over_set(const RegionUnion& x, const Formula& psi) {
  if (x.dim < max_variable(psi)) {
    throw DimensionError("query uses X" + std::to_string(max_variable(psi)) + " but the set has dimension " +
                         std::to_string(x.dim));
  }
  ConsequenceReport rep = minimum_report(x, psi);
  if (rep.countermodel && eval_formula(psi, *rep.countermodel) >= 1) {
    throw SoundnessError("countermodel " + format_point(*rep.countermodel) + " satisfies the query");
  }
  return rep;
}

ConsequenceReport stable_consequence(const Theory& theory, const Formula& psi, std::optional<std::size_t> n) {
  const std::size_t dim = resolve_dim(theory, psi, n);
  const RegionUnion mod = models(theory, dim);
  ConsequenceReport rep = minimum_report(mod, psi);
  rep.mode = Mode::stable;
  if (rep.countermodel) {
    verify_countermodel(theory, psi, *rep.countermodel);
    // An order-0 valuation at the countermodel satisfies the theory and refutes psi.
    DifferentialValuation u{*rep.countermodel, {}};
    if (satisfies(u, psi)) throw SoundnessError("order-0 countermodel satisfies the query");
    for (const auto& theta : theory.members) {
      if (!satisfies(u, theta)) throw SoundnessError("order-0 countermodel fails " + to_text(theta));
    }
    rep.differential_countermodel = std::move(u);
    return rep;
  }
  if (mod.empty()) return rep;
  if (auto u = search_differential(theory, psi, dim, mod, rep.flags_checked)) {
    std::string flag = format_point(u->base);
    for (const auto& d : u->directions) flag += "; " + format_point(d);
    throw SoundnessError("valuation (" + flag + ") satisfies the theory and refutes the query, yet |= holds");
  }
  return rep;
}

WitnessReport witness_verify(const Theory& theory, const Formula& psi, const DifferentialValuation& u) {
  if (const auto v = validate(u); !v) throw InputError("invalid differential valuation: " + v.reason);
  WitnessReport rep;
  for (std::size_t i = 0; i < theory.members.size(); ++i) {
    if (!satisfies(u, theory.members[i])) rep.failing_members.push_back(i);
  }
  rep.query_satisfied = satisfies(u, psi);
  rep.certified = rep.failing_members.empty() && !rep.query_satisfied;
  if (rep.certified) {
    rep.proviso = "U refutes the query against every theory that contains the listed members and whose other "
                  "members U also satisfies";
    if (theory.family) {
      rep.proviso += "; members of " + theory.family->name + " outside indices " +
                     std::to_string(theory.family->first) + ".." + std::to_string(theory.family->last) +
                     " were not checked";
    }
  }
  return rep;
}

namespace {

// A formula or one of the constants 0, 1 (which have no formula of their own).
struct Term {
  int constant = -1;  // 0 or 1, or -1 for a genuine formula
  std::optional<Formula> f;

  static Term zero() { return Term{0, std::nullopt}; }
  static Term one() { return Term{1, std::nullopt}; }
  static Term of(Formula g) { return Term{-1, std::move(g)}; }
};

Term oplus(const Term& a, const Term& b) {
  if (a.constant == 1 || b.constant == 1) return Term::one();
  if (a.constant == 0) return b;
  if (b.constant == 0) return a;
  return Term::of(Formula::oplus(*a.f, *b.f));
}

Term otimes(const Term& a, const Term& b) {
  if (a.constant == 0 || b.constant == 0) return Term::zero();
  if (a.constant == 1) return b;
  if (b.constant == 1) return a;
  return Term::of(Formula::otimes(*a.f, *b.f));
}

std::vector<int> bits_msb_first(mpz_class v, std::size_t width) {
  std::vector<int> out(width, 0);
  for (std::size_t i = 0; i < width; ++i) {
    out[width - 1 - i] = mpz_tstbit(v.get_mpz_t(), i);
  }
  return out;
}

bool one_set_is_interval(const RegionUnion& ones, const Rat& a) {
  std::vector<std::pair<Rat, Rat>> spans;
  for (const auto& m : ones.members) {
    const auto box = bounding_box(m);
    if (box) spans.emplace_back(box->lo[0], box->hi[0]);
  }
  std::sort(spans.begin(), spans.end());
  if (spans.empty() || spans.front().first != 0) return false;
  Rat reach = spans.front().second;
  for (const auto& [lo, hi] : spans) {
    if (lo > reach) return false;
    reach = std::max(reach, hi);
  }
  return reach == a;
}

}  // namespace

Formula formula_from_interval(const Rat& a) {
  if (a <= 0 || a >= 1) throw InputError("interval endpoint must lie strictly between 0 and 1, got " + to_string(a));
  const mpz_class p = a.get_num();
  const mpz_class q = a.get_den();
  const std::size_t width = mpz_sizeinbase(q.get_mpz_t(), 2);
  const auto qbits = bits_msb_first(q, width);
  const auto pbits = bits_msb_first(p, width);
  const Term x = Term::of(Formula::var(1));

  // Invariant after each digit, with Q, P the prefixes read so far and c the clamp
  // to [0,1]: c0 = c(Qx - P), c1 = c(Qx - P + 1). K(j) below is c(2(Qx - P) - j).
  Term c0 = Term::zero();
  Term c1 = Term::one();
  for (std::size_t i = 0; i < width; ++i) {
    const Term k1 = otimes(c0, c0);
    const Term k0 = oplus(c0, c0);
    const Term km1 = otimes(c1, c1);
    const Term km2 = oplus(c1, c1);
    auto k = [&](int j) -> const Term& {
      switch (j) {
        case 1: return k1;
        case 0: return k0;
        case -1: return km1;
        default: return km2;
      }
    };
    const int b = pbits[i];
    if (qbits[i] == 0) {
      c0 = k(b);
      c1 = k(b - 1);
    } else {
      // c(z + x) = (c(z) + x) * c(z + 1) for x in [0,1].
      Term d0 = otimes(oplus(k(b), x), k(b - 1));
      c1 = otimes(oplus(k(b - 1), x), k(b - 2));
      c0 = std::move(d0);
    }
  }
  if (c0.constant != -1) throw std::runtime_error("interval synthesis collapsed to a constant for a = " + to_string(a));
  const Formula theta = Formula::neg(*c0.f);

  const PLFunction f = compile(theta, 1);
  const Point right{Rat(1)};
  if (!one_set_is_interval(one_set(f), a) || dir_deriv(f, Point{a}, right) >= 0) {
    throw std::runtime_error("interval synthesis failed verification for a = " + to_string(a));
  }
  return theta;
}

}  // namespace luka
