#pragma once

#include "cpmu/groupoid.hpp"
#include "cpmu/measure.hpp"

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace cpmu {

/// Malformed groupoid file.  what() reads "source:line:column: message";
/// line 0 means the file as a whole (unreadable, missing section, ...).
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string source, int line, int column, const std::string& message);
  const std::string& source() const { return source_; }
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  std::string source_;
  int line_, column_;
};

/// Parsed file.  The groupoid is not validated: a wrong composition table is
/// a check failure, not a parse error.  Missing [measure] means mu = 1 on
/// every unit, missing [haar] the counting system.
struct GroupoidSpec {
  FiniteGroupoid groupoid;
  HaarSystem haar;
  std::vector<double> unit_weights;
  bool has_measure = false;
  bool has_haar = false;
};

/// Format:
///
///     # comment
///     [arrows]     labels, any number per line
///     [units]      labels of unit arrows
///     [range]      one "arrow unit" pair per line, one line per arrow
///     [source]     same
///     [inverse]    one "arrow inverse" pair per line
///     [compose]    one "x y xy" triple per line, composable pairs only
///     [measure]    optional, one "unit weight" pair per unit
///     [haar]       optional, one "arrow weight" pair per arrow
GroupoidSpec parse_groupoid_spec(std::istream& in, const std::string& source = "<input>");
GroupoidSpec load_groupoid_spec(const std::string& path);

/// Inverse of the parser (every section written, deterministic order).
std::string write_groupoid_spec(const FiniteGroupoid& g, const HaarSystem& haar,
                                const std::vector<double>& unit_weights);

}  // namespace cpmu
