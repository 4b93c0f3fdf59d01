#include "cpmu/report.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

namespace cpmu {

CheckEntry& Report::add(std::string name, double residual, double tol, std::string detail) {
  CheckEntry e;
  e.name = std::move(name);
  e.residual = residual;
  e.tolerance = tol;
  e.passed = !std::isnan(residual) && residual <= tol;
  e.detail = std::move(detail);
  entries_.push_back(std::move(e));
  return entries_.back();
}

CheckEntry& Report::add_flag(std::string name, bool passed, std::string detail) {
  CheckEntry e;
  e.name = std::move(name);
  e.passed = passed;
  e.residual = passed ? 0.0 : 1.0;
  e.tolerance = 0.0;
  e.detail = std::move(detail);
  entries_.push_back(std::move(e));
  return entries_.back();
}

void Report::merge(const Report& other, const std::string& prefix) {
  for (auto e : other.entries_) {
    if (!prefix.empty()) e.name = prefix + "." + e.name;
    entries_.push_back(std::move(e));
  }
}

void Report::set_elapsed(std::size_t first, double ms) {
  for (std::size_t i = first; i < entries_.size(); ++i) entries_[i].elapsed_ms = ms;
}

bool Report::passed() const {
  for (const auto& e : entries_)
    if (!e.passed) return false;
  return true;
}

const CheckEntry* Report::find(const std::string& name) const {
  for (const auto& e : entries_)
    if (e.name == name) return &e;
  return nullptr;
}

double Report::residual(const std::string& name) const {
  const auto* e = find(name);
  if (!e) throw std::out_of_range("no check named " + name);
  return e->residual;
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

std::string Report::to_text(bool timing) const {
  std::string out;
  for (const auto& e : entries_) {
    out += e.passed ? "PASS " : "FAIL ";
    out += e.name;
    out += "  residual=" + format_double(e.residual);
    if (e.tolerance > 0) out += " tol=" + format_double(e.tolerance);
    if (!e.detail.empty()) out += "  (" + e.detail + ")";
    if (timing) {
      char buf[32];
      std::snprintf(buf, sizeof buf, "  %.1fms", e.elapsed_ms);
      out += buf;
    }
    out += '\n';
  }
  return out;
}

}  // namespace cpmu
