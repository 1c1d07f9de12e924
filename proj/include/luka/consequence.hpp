#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "luka/formula.hpp"
#include "luka/pl_function.hpp"
#include "luka/valuation.hpp"

namespace luka {

/// Index range of an infinite family whose listed prefix a Theory holds.
struct TheoryFamily {
  std::string name;
  long first = 0;
  long last = 0;
};

struct Theory {
  std::vector<Formula> members;
  std::optional<TheoryFamily> family;

  /// Largest variable index over all members (0 for the empty theory).
  std::size_t dim() const;
};

enum class Verdict { holds, fails };
enum class Mode { semantic, stable };

struct ConsequenceReport {
  Verdict verdict = Verdict::holds;
  Mode mode = Mode::semantic;
  std::optional<Point> countermodel;  // re-verified before it is reported
  std::optional<DifferentialValuation> differential_countermodel;
  std::optional<Rat> minimum;  // min of psi over Mod(theory); absent when Mod is empty
  std::size_t flags_checked = 0;  // stable mode: candidates examined by the cross-check

  bool holds() const { return verdict == Verdict::holds; }
};

/// An answer that contradicts a theorem the procedures rely on; always a bug.
class SoundnessError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Smallest dimension covering the theory and the query (at least 1).
std::size_t common_dim(const Theory& theory, const Formula& psi);

/// Mod(theory) in [0,1]^n by distributing intersections of the one-sets.
RegionUnion models(const Theory& theory, std::size_t n);

/// Theory |= psi. `n` defaults to common_dim; a larger n pads with unused variables.
ConsequenceReport semantic_consequence(const Theory& theory, const Formula& psi, std::optional<std::size_t> n = {});

/// psi evaluates to 1 on all of x.
ConsequenceReport semantic_over_set(const RegionUnion& x, const Formula& psi);

/// Stable consequence of a finite theory. The verdict is the semantic one; when it
/// holds, a bounded search over differential valuations of order <= 2 at vertices
/// of the common refinement must find no valuation satisfying the theory and
/// refuting psi, otherwise SoundnessError is thrown.
ConsequenceReport stable_consequence(const Theory& theory, const Formula& psi, std::optional<std::size_t> n = {});

struct WitnessReport {
  bool certified = false;  // U satisfies every member and refutes psi
  std::vector<std::size_t> failing_members;  // indices of members U does not satisfy
  bool query_satisfied = false;
  std::string proviso;
};

/// Checks U against every listed member and against psi. Throws InputError for an
/// invalid U.
WitnessReport witness_verify(const Theory& theory, const Formula& psi, const DifferentialValuation& u);

/// One-variable formula whose one-set is exactly [0, a] and which decreases
/// immediately to the right of a; built from the binary digits of a = p/q in
/// O(log q) shared nodes and checked against one_set before it is returned.
/// Throws InputError unless 0 < a < 1.
Formula formula_from_interval(const Rat& a);

}  // namespace luka
