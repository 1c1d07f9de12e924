#pragma once

// Line-based ASCII formats. '#' starts a comment; blank lines are ignored;
// rationals are p/q, separated by spaces or commas.
//
//   theory      one formula per line
//   valuation   point: r1 .. rn          base point
//               dir: r1 .. rn            zero or more, in flag order
//               vars: i1 .. in           optional variable indices (default 1..n)
//   region      dim: n                   once, first
//               poly                     starts a member of the union
//               ge: c0 c1 .. cn          c0 + c1 x1 + .. + cn xn >= 0
//               eq: c0 c1 .. cn          the same with equality
//               (every member is intersected with the unit cube)
//   sequence    limit: r1 .. rn          first
//               r1 .. rn                 one listed point per line

#include <string>
#include <string_view>
#include <vector>

#include "luka/consequence.hpp"
#include "luka/tangent.hpp"
#include "luka/valuation.hpp"

namespace luka {

/// Input error tied to a line of a file (1-based).
class FileError : public InputError {
 public:
  FileError(const std::string& source, std::size_t line, const std::string& message);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

std::string read_file(const std::string& path);

Theory parse_theory(std::string_view text, const std::string& source = "<theory>");
Theory load_theory(const std::string& path);

struct ValuationFile {
  DifferentialValuation valuation;
  std::vector<unsigned> vars;  // sorted variable indices, one per coordinate
};

ValuationFile parse_valuation(std::string_view text, const std::string& source = "<valuation>");
std::string format_valuation(const DifferentialValuation& u, const std::vector<unsigned>& vars = {});

RegionUnion parse_region(std::string_view text, const std::string& source = "<region>");
std::string format_region(const RegionUnion& r);

PointSequence parse_sequence(std::string_view text, const std::string& source = "<sequence>");

/// A sequence file if the first content line starts with "limit:", else a region file.
ClosedSetDescription parse_set(std::string_view text, const std::string& source = "<set>");

}  // namespace luka
