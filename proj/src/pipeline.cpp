#include "cpmu/pipeline.hpp"

#include "cpmu/groupoid_pmu.hpp"
#include "cpmu/pmu.hpp"

#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>

namespace cpmu {

std::optional<Command> parse_command(std::string_view name) {
  for (Command c : {Command::check_groupoid, Command::build_pmu, Command::legs, Command::hopf, Command::report})
    if (name == command_name(c)) return c;
  return std::nullopt;
}

const char* command_name(Command c) {
  switch (c) {
    case Command::check_groupoid: return "check-groupoid";
    case Command::build_pmu: return "build-pmu";
    case Command::legs: return "legs";
    case Command::hopf: return "hopf";
    case Command::report: return "report";
  }
  return "?";
}

const DerivedValue* VerificationReport::find_derived(const std::string& key) const {
  for (const auto& [k, v] : derived)
    if (k == key) return &v;
  return nullptr;
}

namespace {

using Clock = std::chrono::steady_clock;

class Run {
 public:
  explicit Run(VerificationReport& r) : r_(r) {}

  /// Runs one stage; its checks are merged under `prefix` and stamped with
  /// the stage time.  Returns false if the stage threw.
  template <class F>
  bool stage(const std::string& prefix, F&& f) {
    const auto before = r_.checks.entries().size();
    const auto t0 = Clock::now();
    Report local;
    bool ok = true;
    try {
      f(local);
    } catch (const PreconditionError& e) {
      local.add_flag("completed", false, e.what());
      ok = false;
    } catch (const NumericError& e) {
      local.add_flag("completed", false, e.what());
      ok = false;
    } catch (const ShapeError& e) {
      local.add_flag("completed", false, e.what());
      ok = false;
    }
    r_.checks.merge(local, prefix);
    const double ms = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
    r_.checks.set_elapsed(before, ms);
    return ok;
  }

  void derive(std::string key, DerivedValue v) { r_.derived.emplace_back(std::move(key), std::move(v)); }

 private:
  VerificationReport& r_;
};

std::int64_t as_int(Index v) { return static_cast<std::int64_t>(v); }

}  // namespace

VerificationReport run_pipeline(Command command, const std::string& instance, const FiniteGroupoid& g,
                                const HaarSystem& haar, const std::vector<double>& unit_weights, double tol) {
  VerificationReport out;
  out.instance = instance;
  out.command = command;
  out.tol = tol;
  Run run(out);

  // Groupoid axioms and measure data.
  bool groupoid_ok = false;
  std::optional<GroupoidMeasure> measure;
  run.stage("groupoid", [&](Report& r) {
    const ValidationReport v = validate(g);
    std::string why;
    for (const auto& s : v.violations) why += (why.empty() ? "" : "; ") + s;
    r.add_flag("axioms", v.ok(), why);
    groupoid_ok = v.ok();
  });
  run.derive("arrows", as_int(g.size()));
  run.derive("units", as_int(g.unit_count()));
  if (!groupoid_ok) return out;
  run.derive("composable_pairs_sr", as_int(static_cast<Index>(composable_pairs(g, PairMode::SourceRange).size())));
  run.derive("composable_pairs_rr", as_int(static_cast<Index>(composable_pairs(g, PairMode::RangeRange).size())));

  run.stage("measure", [&](Report& r) {
    bool positive = haar.weights.size() == static_cast<std::size_t>(g.size()) &&
                    unit_weights.size() == static_cast<std::size_t>(g.unit_count());
    for (double w : haar.weights) positive = positive && std::isfinite(w) && w > 0;
    for (double w : unit_weights) positive = positive && std::isfinite(w) && w > 0;
    r.add_flag("weights positive", positive);
    if (!positive) return;
    const InvarianceCheck inv = check_left_invariance(g, haar, tol);
    std::string why;
    for (const auto& s : inv.violations) why += (why.empty() ? "" : "; ") + s;
    r.add("Haar system left invariant", inv.residual, tol, why);
    if (!inv.ok) return;
    measure = build_measure(g, haar, unit_weights);
    r.add("modular function is a cocycle", check_cocycle(g, *measure), tol);
  });
  if (command == Command::check_groupoid || !out.passed()) return out;

  // The unitary and its spaces.
  std::optional<GroupoidUnitary> u;
  if (!run.stage("construction", [&](Report& r) {
        u = build_groupoid_unitary(g, *measure, tol);
        r.merge(u->report);
      }))
    return out;
  // later stages need the identification unitaries, which a failed
  // construction does not produce
  if (!out.passed()) return out;
  run.derive("dim_base", as_int(u->emb.base.space().dim()));
  run.derive("dim_H", as_int(u->emb.h.dim()));
  run.derive("dim_source", as_int(u->pmu.source->space().dim()));
  run.derive("dim_range", as_int(u->pmu.range->space().dim()));

  const bool want_pmu = command != Command::legs;
  const bool want_legs = command != Command::build_pmu;
  const bool want_hopf = command == Command::hopf || command == Command::report;

  std::shared_ptr<const PentagonFrame> frame;
  if (want_pmu) {
    run.stage("pmu", [&](Report& r) {
      PmuCheck c = check_pmu(u->pmu, tol);
      frame = c.frame;
      r.merge(c.report);
    });
    if (frame) run.derive("dim_triple", as_int(frame->upper.domain().dim()));
    if (const CheckEntry* e = out.checks.find("pmu.pentagon")) run.derive("pentagon_residual", e->residual);
  }

  Regularity reg;
  run.stage("regularity", [&](Report& r) {
    reg = check_regular(u->pmu, tol);
    r.add("[<alpha|_1 V |alpha>_2] = [alpha alpha*]", reg.residual, tol);
  });
  run.derive("regular", reg.regular);

  OperatorSpan a_hat, a;
  if (want_legs) {
    run.stage("legs", [&](Report& r) {
      a_hat = leg_hat(u->pmu, tol);
      a = leg_a(u->pmu, tol);
      r.merge(check_legs(u->pmu, a_hat, a, reg.regular, tol));
      r.merge(identify_legs(*u, tol), "groupoid");
    });
    run.derive("dim_A_hat", as_int(a_hat.rank()));
    run.derive("dim_A", as_int(a.rank()));
    if (command == Command::legs || command == Command::report)
      run.derive("center_dim_A", as_int(center_dim(a, tol)));
  }

  if (want_hopf) {
    bool audited = false;
    run.stage("hopf", [&](Report& r) {
      if (!frame) {
        r.add_flag("pentagon frame available", false);
        return;
      }
      r.merge(verify_hopf(u->pmu, *frame, tol));
      audited = true;
    });
    bool hopf_ok = audited;
    for (const auto& e : out.checks.entries())
      if (e.name.rfind("hopf.", 0) == 0) hopf_ok = hopf_ok && e.passed;
    run.derive("hopf_audit", hopf_ok);
  }

  if (command == Command::report) {
    run.stage("transport", [&](Report& r) { r.merge(check_delta_transport(u->pmu, tol)); });
    run.stage("opposite", [&](Report& r) {
      const PmuData op = opposite(u->pmu, tol);
      r.add("V^op unitary", unitarity_residual(op.v), tol);
      const SpanCheck s1 = span_equal(leg_hat(op, tol), a.adjoint(), tol);
      r.add("A^(V^op) = A(V)*", s1.residual, tol);
      const SpanCheck s2 = span_equal(leg_a(op, tol), a_hat.adjoint(), tol);
      r.add("A(V^op) = A^(V)*", s2.residual, tol);
      const Regularity op_reg = check_regular(op, tol);
      r.add_flag("regular iff V^op regular", op_reg.regular == reg.regular,
                 std::string("V ") + (reg.regular ? "regular" : "not regular") + ", V^op " +
                     (op_reg.regular ? "regular" : "not regular"));
    });
  }
  return out;
}

namespace {

std::string derived_text(const DerivedValue& v) {
  struct {
    std::string operator()(std::int64_t i) const { return std::to_string(i); }
    std::string operator()(bool b) const { return b ? "yes" : "no"; }
    std::string operator()(double d) const { return format_double(d); }
    std::string operator()(const std::string& s) const { return s; }
  } vis;
  return std::visit(vis, v);
}

nlohmann::ordered_json derived_json(const DerivedValue& v) {
  return std::visit([](const auto& x) { return nlohmann::ordered_json(x); }, v);
}

nlohmann::ordered_json number_json(double v) {
  if (!std::isfinite(v)) return nullptr;
  return v;
}

}  // namespace

std::string render_text(const VerificationReport& r, bool timing) {
  std::string out;
  out += "instance: " + r.instance + "\n";
  out += std::string("command: ") + command_name(r.command) + "\n";
  out += "tolerance: " + format_double(r.tol) + "\n";
  out += r.checks.to_text(timing);
  if (!r.derived.empty()) out += "derived:\n";
  for (const auto& [k, v] : r.derived) out += "  " + k + " = " + derived_text(v) + "\n";
  std::size_t failed = 0;
  for (const auto& e : r.checks.entries()) failed += e.passed ? 0 : 1;
  out += std::string("result: ") + (r.passed() ? "PASS" : "FAIL") + " (" +
         std::to_string(r.checks.entries().size()) + " checks, " + std::to_string(failed) + " failed)\n";
  return out;
}

std::string render_json(const VerificationReport& r, bool timing) {
  nlohmann::ordered_json j;
  j["schema"] = "cpmu-report/1";
  j["instance"] = r.instance;
  j["command"] = command_name(r.command);
  j["tolerance"] = r.tol;
  j["passed"] = r.passed();
  auto checks = nlohmann::ordered_json::array();
  for (const auto& e : r.checks.entries()) {
    nlohmann::ordered_json c;
    c["name"] = e.name;
    c["passed"] = e.passed;
    c["residual"] = number_json(e.residual);
    c["tolerance"] = e.tolerance;
    c["detail"] = e.detail;
    if (timing) c["elapsed_ms"] = e.elapsed_ms;
    checks.push_back(std::move(c));
  }
  j["checks"] = std::move(checks);
  nlohmann::ordered_json d = nlohmann::ordered_json::object();
  for (const auto& [k, v] : r.derived) d[k] = derived_json(v);
  j["derived"] = std::move(d);
  return j.dump(2) + "\n";
}

}  // namespace cpmu
