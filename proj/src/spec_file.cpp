#include "cpmu/spec_file.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

namespace cpmu {

ParseError::ParseError(std::string source, int line, int column, const std::string& message)
    : std::runtime_error(source + ":" + std::to_string(line) + ":" + std::to_string(column) + ": " + message),
      source_(std::move(source)),
      line_(line),
      column_(column) {}

namespace {

struct Token {
  std::string text;
  int line = 0, column = 0;
};

struct Section {
  Token header;
  std::vector<std::vector<Token>> lines;  // non-empty lines only
};

constexpr std::array<const char*, 8> kSections = {"arrows", "units",   "range",   "source",
                                                  "inverse", "compose", "measure", "haar"};

class Parser {
 public:
  explicit Parser(std::string source) : source_(std::move(source)) {}

  [[noreturn]] void fail(const Token& t, const std::string& msg) const {
    throw ParseError(source_, t.line, t.column, msg);
  }
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(source_, 0, 0, msg); }

  void read(std::istream& in) {
    std::string raw;
    int lineno = 0;
    Section* current = nullptr;
    while (std::getline(in, raw)) {
      ++lineno;
      if (auto hash = raw.find('#'); hash != std::string::npos) raw.resize(hash);
      std::vector<Token> toks;
      std::size_t i = 0;
      while (i < raw.size()) {
        while (i < raw.size() && std::isspace(static_cast<unsigned char>(raw[i]))) ++i;
        if (i == raw.size()) break;
        std::size_t j = i;
        while (j < raw.size() && !std::isspace(static_cast<unsigned char>(raw[j]))) ++j;
        toks.push_back({raw.substr(i, j - i), lineno, static_cast<int>(i) + 1});
        i = j;
      }
      if (toks.empty()) continue;
      if (toks[0].text.front() == '[') {
        const Token& h = toks[0];
        if (h.text.size() < 3 || h.text.back() != ']') fail(h, "malformed section header '" + h.text + "'");
        if (toks.size() > 1) fail(toks[1], "unexpected token after section header");
        std::string name = h.text.substr(1, h.text.size() - 2);
        bool known = false;
        for (const char* s : kSections) known = known || name == s;
        if (!known) fail(h, "unknown section [" + name + "]");
        if (sections_.count(name)) fail(h, "duplicate section [" + name + "]");
        current = &sections_[name];
        current->header = h;
        continue;
      }
      if (!current) fail(toks[0], "content before the first section header");
      current->lines.push_back(std::move(toks));
    }
  }

  const Section& required(const std::string& name) const {
    auto it = sections_.find(name);
    if (it == sections_.end()) fail("missing section [" + name + "]");
    return it->second;
  }
  const Section* optional(const std::string& name) const {
    auto it = sections_.find(name);
    return it == sections_.end() ? nullptr : &it->second;
  }

  int arrow(const FiniteGroupoid& g, const Token& t) const {
    const int a = g.find(t.text);
    if (a < 0) fail(t, "unknown arrow '" + t.text + "'");
    return a;
  }

  double number(const Token& t) const {
    double v = 0.0;
    const char* b = t.text.data();
    const char* e = b + t.text.size();
    auto [p, ec] = std::from_chars(b, e, v);
    if (ec != std::errc() || p != e) fail(t, "expected a number, got '" + t.text + "'");
    return v;
  }

  void arity(const Section& s, const std::vector<Token>& line, std::size_t n) const {
    if (line.size() != n)
      fail(line.size() > n ? line[n] : line.back(),
           "[" + s.header.text.substr(1, s.header.text.size() - 2) + "] expects " + std::to_string(n) +
               " tokens per line, got " + std::to_string(line.size()));
  }

  /// "arrow value" lines covering every arrow exactly once.
  std::vector<int> arrow_map(const FiniteGroupoid& g, const std::string& name) const {
    const Section& s = required(name);
    std::vector<int> out(static_cast<std::size_t>(g.size()), -1);
    for (const auto& line : s.lines) {
      arity(s, line, 2);
      const int x = arrow(g, line[0]);
      if (out[static_cast<std::size_t>(x)] >= 0) fail(line[0], "second [" + name + "] entry for '" + line[0].text + "'");
      out[static_cast<std::size_t>(x)] = arrow(g, line[1]);
    }
    for (int x = 0; x < g.size(); ++x)
      if (out[static_cast<std::size_t>(x)] < 0)
        fail(s.header, "[" + name + "] has no entry for '" + g.arrows[static_cast<std::size_t>(x)] + "'");
    return out;
  }

  GroupoidSpec build() const {
    GroupoidSpec spec;
    FiniteGroupoid& g = spec.groupoid;

    const Section& arrows = required("arrows");
    std::map<std::string, Token> seen;
    for (const auto& line : arrows.lines)
      for (const auto& t : line) {
        if (t.text.front() == '[') fail(t, "arrow labels may not start with '['");
        if (!seen.emplace(t.text, t).second) fail(t, "duplicate arrow '" + t.text + "'");
        g.arrows.push_back(t.text);
      }
    if (g.arrows.empty()) fail(arrows.header, "no arrows declared");

    const Section& units = required("units");
    for (const auto& line : units.lines)
      for (const auto& t : line) {
        const int u = arrow(g, t);
        for (int v : g.units)
          if (v == u) fail(t, "duplicate unit '" + t.text + "'");
        g.units.push_back(u);
      }
    if (g.units.empty()) fail(units.header, "no units declared");

    g.range = arrow_map(g, "range");
    g.source = arrow_map(g, "source");
    g.inverse = arrow_map(g, "inverse");

    const auto n = static_cast<std::size_t>(g.size());
    g.compose.assign(n * n, -1);
    const Section& compose = required("compose");
    for (const auto& line : compose.lines) {
      arity(compose, line, 3);
      const int x = arrow(g, line[0]), y = arrow(g, line[1]), xy = arrow(g, line[2]);
      auto& slot = g.compose[static_cast<std::size_t>(x) * n + static_cast<std::size_t>(y)];
      if (slot >= 0) fail(line[0], "second product for (" + line[0].text + ", " + line[1].text + ")");
      slot = xy;
    }

    spec.unit_weights.assign(g.units.size(), 1.0);
    if (const Section* m = optional("measure")) {
      spec.has_measure = true;
      std::vector<bool> given(g.units.size(), false);
      for (const auto& line : m->lines) {
        arity(*m, line, 2);
        const int pos = g.unit_position(arrow(g, line[0]));
        if (pos < 0) fail(line[0], "'" + line[0].text + "' is not a unit");
        if (given[static_cast<std::size_t>(pos)]) fail(line[0], "second weight for '" + line[0].text + "'");
        given[static_cast<std::size_t>(pos)] = true;
        spec.unit_weights[static_cast<std::size_t>(pos)] = number(line[1]);
      }
      for (std::size_t k = 0; k < given.size(); ++k)
        if (!given[k]) fail(m->header, "[measure] has no weight for '" + g.arrows[static_cast<std::size_t>(g.units[k])] + "'");
    }

    spec.haar.weights.assign(n, 1.0);
    if (const Section* h = optional("haar")) {
      spec.has_haar = true;
      std::vector<bool> given(n, false);
      for (const auto& line : h->lines) {
        arity(*h, line, 2);
        const auto x = static_cast<std::size_t>(arrow(g, line[0]));
        if (given[x]) fail(line[0], "second weight for '" + line[0].text + "'");
        given[x] = true;
        spec.haar.weights[x] = number(line[1]);
      }
      for (std::size_t x = 0; x < n; ++x)
        if (!given[x]) fail(h->header, "[haar] has no weight for '" + g.arrows[x] + "'");
    }
    return spec;
  }

 private:
  std::string source_;
  std::map<std::string, Section> sections_;
};

std::string number_text(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

GroupoidSpec parse_groupoid_spec(std::istream& in, const std::string& source) {
  Parser p(source);
  p.read(in);
  return p.build();
}

GroupoidSpec load_groupoid_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path, 0, 0, "cannot open file");
  return parse_groupoid_spec(in, path);
}

std::string write_groupoid_spec(const FiniteGroupoid& g, const HaarSystem& haar,
                                const std::vector<double>& unit_weights) {
  std::ostringstream out;
  auto label = [&](int a) -> const std::string& { return g.arrows[static_cast<std::size_t>(a)]; };
  out << "[arrows]\n";
  for (const auto& a : g.arrows) out << a << '\n';
  out << "\n[units]\n";
  for (int u : g.units) out << label(u) << '\n';
  const std::pair<const char*, const std::vector<int>*> maps[] = {
      {"range", &g.range}, {"source", &g.source}, {"inverse", &g.inverse}};
  for (const auto& [name, m] : maps) {
    out << "\n[" << name << "]\n";
    for (int x = 0; x < g.size(); ++x) out << label(x) << ' ' << label((*m)[static_cast<std::size_t>(x)]) << '\n';
  }
  out << "\n[compose]\n";
  for (int x = 0; x < g.size(); ++x)
    for (int y = 0; y < g.size(); ++y)
      if (g.mul(x, y) >= 0) out << label(x) << ' ' << label(y) << ' ' << label(g.mul(x, y)) << '\n';
  out << "\n[measure]\n";
  for (std::size_t k = 0; k < g.units.size(); ++k) out << label(g.units[k]) << ' ' << number_text(unit_weights[k]) << '\n';
  out << "\n[haar]\n";
  for (int x = 0; x < g.size(); ++x) out << label(x) << ' ' << number_text(haar.weights[static_cast<std::size_t>(x)]) << '\n';
  return out.str();
}

}  // namespace cpmu
