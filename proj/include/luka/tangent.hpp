#pragma once

// Tangent questions for closed sets. The cone of height 1/m and vertex angle 1/m^2
// is replaced by an exact rational surrogate: the offset of y - x from the axis
// is at most (1/m^2) times its axial length (a tangent bound instead of an angle).
// Both families of cones shrink to the same half-line, so tangency is unchanged.

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "luka/pl_function.hpp"

namespace luka {

/// Points x_1, x_2, ... converging to `limit`; only a finite prefix is listed.
struct PointSequence {
  Point limit;
  std::vector<Point> points;
  std::string note;
};

using ClosedSetDescription = std::variant<RegionUnion, PointSequence>;

std::size_t dim_of(const ClosedSetDescription& x);

/// Exact surrogate cone test with apex x, axis u, height 1/m; the apex itself is excluded.
/// Throws InputError for u = 0 or m = 0.
bool cone_contains(std::span<const Rat> x, std::span<const Rat> u, unsigned m, std::span<const Rat> y);

enum class TangentVerdict { certified, refuted, not_applicable };

struct ConeEvidence {
  unsigned m = 0;
  std::size_t index = 0;  // 0-based position in the listed sequence
};

struct TangentReport {
  TangentVerdict verdict = TangentVerdict::not_applicable;
  unsigned bound = 0;       // M
  unsigned refuted_at = 0;  // first m without a listed point in its cone
  std::vector<ConeEvidence> evidence;
  std::string caveat;
};

/// For m = 1..M looks for a listed point inside the m-th cone at the limit.
/// Throws InputError for a polyhedral description.
TangentReport certify_tangent_sequence(const ClosedSetDescription& x, std::span<const Rat> u, unsigned max_m);

/// Tangency of u at x for either description. Polyhedral sets are decided exactly
/// (u is tangent iff x + s u stays in some member containing x for small s > 0);
/// for a sequence, x must be the limit, otherwise the verdict is not_applicable.
TangentReport certify_tangent(const ClosedSetDescription& x_set, std::span<const Rat> x, std::span<const Rat> u,
                              unsigned max_m);

/// The open segment from x to x + lambda u misses the set. Throws InputError if
/// lambda <= 0 or x + lambda u leaves the cube.
bool certify_outgoing(const ClosedSetDescription& set, std::span<const Rat> x, std::span<const Rat> u, const Rat& lambda);

/// Largest s in (0, 1] such that x + s u stays in the cube and the open segment up to s
/// meets no member (or listed point) that the ray touches only at a positive
/// distance. Throws InputError if u leaves the cube immediately.
Rat default_lambda(const ClosedSetDescription& set, std::span<const Rat> x, std::span<const Rat> u);

/// Union over members containing x of their feasible-direction generators.
/// Throws InputError if x lies in no member.
std::vector<Point> tangent_cone_polyhedral(const RegionUnion& x_set, std::span<const Rat> x);

struct Candidate {
  Point point;
  Point dir;
};

struct CandidateResult {
  Candidate candidate;
  TangentReport tangent;
  bool outgoing = false;
  Rat lambda{0};
};

enum class SssVerdict { strongly_semisimple, not_strongly_semisimple_witnessed, no_witness_found };

struct SssReport {
  SssVerdict verdict = SssVerdict::no_witness_found;
  bool heuristic = false;  // the criterion is a theorem only in dimension 2
  unsigned bound = 0;
  std::vector<CandidateResult> results;
  std::string justification;
};

/// Outgoing-tangent criterion. Polyhedral sets have no outgoing tangents at their
/// points, so they are reported strongly semisimple outright; for a sequence each
/// candidate is certified as a tangent up to M and tested for being outgoing.
SssReport sss_check(const ClosedSetDescription& set, const std::vector<Candidate>& candidates, unsigned max_m,
                    std::optional<Rat> lambda = std::nullopt);

std::string to_string(TangentVerdict v);
std::string to_string(SssVerdict v);

}  // namespace luka
