#pragma once

#include <string>
#include <vector>

namespace cpmu {

struct CheckEntry {
  std::string name;
  bool passed = false;
  double residual = 0.0;
  double tolerance = 0.0;
  std::string detail;
  double elapsed_ms = 0.0;
};

/// Ordered list of named checks.  A residual check passes when residual <= tol;
/// NaN never passes.
class Report {
 public:
  CheckEntry& add(std::string name, double residual, double tol, std::string detail = {});
  CheckEntry& add_flag(std::string name, bool passed, std::string detail = {});
  /// Appends all entries of other, with names prefixed by "prefix.".
  void merge(const Report& other, const std::string& prefix = {});
  /// Sets elapsed_ms on every entry from index `first` on.
  void set_elapsed(std::size_t first, double ms);

  bool passed() const;
  const std::vector<CheckEntry>& entries() const { return entries_; }
  const CheckEntry* find(const std::string& name) const;
  double residual(const std::string& name) const;

  std::string to_text(bool timing = false) const;

 private:
  std::vector<CheckEntry> entries_;
};

/// Fixed-format rendering used by all textual output (byte-stable).
std::string format_double(double v);

}  // namespace cpmu
