#include "thetafix/report.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "thetafix/errors.hpp"

#ifndef THETAFIX_VERSION
#define THETAFIX_VERSION "0.0.0"
#endif

namespace thetafix {

using nlohmann::json;

std::string_view library_version() { return "thetafix " THETAFIX_VERSION; }

// ---------------------------------------------------------------------------
// pipeline

RunReport run_experiment(const Experiment& exp) {
  const auto started = std::chrono::steady_clock::now();
  const Resolved r = resolve(exp);
  const Mode mode = exp.mode;
  const bool verify = mode == Mode::VerifyAxioms || mode == Mode::Full;
  const bool certify_z = mode == Mode::CertifyZ || mode == Mode::Full;
  const bool certify_m = mode == Mode::CertifyModifiedZ || mode == Mode::Full;
  const bool solve = mode == Mode::Solve || mode == Mode::Full;

  RunReport report;
  report.version = std::string(library_version());
  report.experiment = exp;

  if (verify) {
    report.axioms.push_back(check_b_action(r.space.action(), exp.plan));
    report.axioms.push_back(check_theta_metric(r.space, exp.plan));
    if (r.zeta) report.axioms.push_back(check_simulation(*r.zeta, exp.plan, exp.sequences));
  }
  if (certify_z) {
    report.z_margin = z_margin(r.space, *r.map, *r.zeta, exp.plan);
    report.contractivity = contractivity_check(r.space, *r.map, exp.plan);
  }
  if (certify_m) report.modified_z_margin = modified_z_margin(r.space, *r.map, *r.zeta, exp.plan);

  if (solve) {
    std::vector<FixedPointResult> results;
    if (r.starts.size() >= 2) {
      auto probe = uniqueness_probe(r.space, *r.map, r.starts, exp.tol, exp.max_iter);
      results = std::move(probe.runs);
      report.uniqueness = static_cast<UniquenessVerdict>(probe);
    } else {
      results.push_back(picard_iterate(r.space, *r.map, r.starts.front(), exp.tol, exp.max_iter));
    }
    for (auto& res : results) {
      FixedPointRun run;
      if (res.trace.steps.size() >= 2) run.regularity = asymptotic_regularity(res.trace, exp.tol);
      run.cauchy = cauchy_diagnostic(res.trace, r.space);
      run.result = std::move(res);
      report.runs.push_back(std::move(run));
    }
  }

  bool passed = true;
  if (verify)
    for (const auto& a : report.axioms) passed = passed && a.all_hold();
  if (mode == Mode::CertifyZ) passed = passed && report.z_margin->nonnegative();
  if (mode == Mode::CertifyModifiedZ) passed = passed && report.modified_z_margin->nonnegative();
  if (mode == Mode::Full)
    passed = passed &&
             (report.z_margin->nonnegative() || report.modified_z_margin->nonnegative());
  if (solve) {
    for (const auto& run : report.runs) passed = passed && run.result.converged();
    if (report.uniqueness) passed = passed && report.uniqueness->unique;
  }
  report.passed = passed;

  report.wall_time_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started)
          .count();
  return report;
}

// ---------------------------------------------------------------------------
// json

namespace {

json real(double x) {
  if (std::isfinite(x)) return x;
  if (std::isnan(x)) return "nan";
  return x > 0 ? "inf" : "-inf";
}

double real(const json& j) {
  if (j.is_number()) return j.get<double>();
  const auto s = j.get<std::string>();
  if (s == "inf") return std::numeric_limits<double>::infinity();
  if (s == "-inf") return -std::numeric_limits<double>::infinity();
  if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  throw InvalidArgument("report: expected a real, got '" + s + "'");
}

json reals(const std::vector<double>& v) {
  json a = json::array();
  for (double x : v) a.push_back(real(x));
  return a;
}

std::vector<double> reals(const json& j) {
  std::vector<double> v;
  for (const auto& x : j) v.push_back(real(x));
  return v;
}

// Points need the experiment's labels to be written by name.
struct PointCodec {
  const std::vector<std::string>& labels;

  json encode(const Point& p) const {
    if (!p.is_label()) return real(p.coordinate());
    json o{{"index", p.index()}};
    if (p.index() < labels.size()) o["label"] = labels[p.index()];
    return o;
  }
  Point decode(const json& j) const {
    if (j.is_object()) return Point::label(j.at("index").get<std::size_t>());
    return Point::coord(real(j));
  }
  json encode(const std::vector<Point>& v) const {
    json a = json::array();
    for (const auto& p : v) a.push_back(encode(p));
    return a;
  }
  std::vector<Point> decode_all(const json& j) const {
    std::vector<Point> v;
    for (const auto& p : j) v.push_back(decode(p));
    return v;
  }
};

Relation relation_from(std::string_view s) {
  if (s == "exact") return Relation::Exact;
  if (s == "less") return Relation::Less;
  return Relation::LessEqual;
}

json encode(const Witness& w) {
  return {{"args", reals(w.args)}, {"labels", w.labels}, {"lhs", real(w.lhs)},
          {"rhs", real(w.rhs)},    {"relation", to_string(w.relation)}};
}

Witness decode_witness(const json& j) {
  return {reals(j.at("args")), j.at("labels").get<std::vector<std::string>>(), real(j.at("lhs")),
          real(j.at("rhs")), relation_from(j.at("relation").get<std::string>())};
}

json encode(const AxiomReport& a) {
  json verdicts = json::array();
  for (const auto& v : a.verdicts)
    verdicts.push_back({{"axiom", v.axiom},
                        {"verdict", to_string(v.verdict)},
                        {"samples", v.samples},
                        {"worst_margin", real(v.worst_margin)},
                        {"worst", encode(v.worst)},
                        {"witness", v.witness ? encode(*v.witness) : json(nullptr)}});
  return {{"subject", a.subject}, {"name", a.name}, {"verdicts", verdicts}, {"flags", a.flags}};
}

AxiomReport decode_axioms(const json& j) {
  AxiomReport a;
  a.subject = j.at("subject").get<std::string>();
  a.name = j.at("name").get<std::string>();
  a.flags = j.at("flags").get<std::vector<std::string>>();
  for (const auto& v : j.at("verdicts")) {
    AxiomVerdict out;
    out.axiom = v.at("axiom").get<std::string>();
    out.verdict = v.at("verdict").get<std::string>() == "violated" ? Verdict::Violated
                                                                   : Verdict::HoldsOnSamples;
    out.samples = v.at("samples").get<std::size_t>();
    out.worst_margin = real(v.at("worst_margin"));
    out.worst = decode_witness(v.at("worst"));
    if (!v.at("witness").is_null()) out.witness = decode_witness(v.at("witness"));
    a.verdicts.push_back(std::move(out));
  }
  return a;
}

json encode(const MarginReport& m, const PointCodec& pc) {
  json argmin = nullptr;
  if (m.argmin) argmin = json::array({pc.encode(m.argmin->first), pc.encode(m.argmin->second)});
  return {{"pair_count", m.pair_count},
          {"min_margin", real(m.min_margin)},
          {"min_margin_distinct", real(m.min_margin_distinct)},
          {"argmin", argmin},
          {"verdict", m.nonnegative() ? "nonnegative-on-samples" : "violated"},
          {"clamped", m.clamped}};
}

MarginReport decode_margin(const json& j, const PointCodec& pc) {
  MarginReport m;
  m.pair_count = j.at("pair_count").get<std::size_t>();
  m.min_margin = real(j.at("min_margin"));
  m.min_margin_distinct = real(j.at("min_margin_distinct"));
  if (!j.at("argmin").is_null())
    m.argmin = std::pair{pc.decode(j.at("argmin").at(0)), pc.decode(j.at("argmin").at(1))};
  m.verdict = j.at("verdict").get<std::string>() == "violated" ? Verdict::Violated
                                                               : Verdict::HoldsOnSamples;
  m.clamped = j.at("clamped").get<bool>();
  return m;
}

FixedPointStatus status_from(std::string_view s) {
  if (s == "converged") return FixedPointStatus::Converged;
  if (s == "exact-fixed-point") return FixedPointStatus::ExactFixedPoint;
  return FixedPointStatus::MaxIterations;
}

json encode(const FixedPointRun& run, const PointCodec& pc) {
  const auto& r = run.result;
  json regularity = nullptr;
  if (run.regularity)
    regularity = {{"monotone", run.regularity->monotone},
                  {"final_step", real(run.regularity->final_step)},
                  {"regular", run.regularity->regular}};
  return {{"status", to_string(r.status)},
          {"candidate", pc.encode(r.candidate)},
          {"residual", real(r.residual)},
          {"iterations", r.iterations},
          {"trace",
           {{"start", pc.encode(r.trace.start)},
            {"iterates", pc.encode(r.trace.iterates)},
            {"steps", reals(r.trace.steps)}}},
          {"regularity", regularity},
          {"cauchy", reals(run.cauchy)}};
}

FixedPointRun decode_run(const json& j, const PointCodec& pc) {
  FixedPointRun run;
  auto& r = run.result;
  r.status = status_from(j.at("status").get<std::string>());
  r.candidate = pc.decode(j.at("candidate"));
  r.residual = real(j.at("residual"));
  r.iterations = j.at("iterations").get<std::size_t>();
  const auto& t = j.at("trace");
  r.trace.start = pc.decode(t.at("start"));
  r.trace.iterates = pc.decode_all(t.at("iterates"));
  r.trace.steps = reals(t.at("steps"));
  if (const auto& g = j.at("regularity"); !g.is_null())
    run.regularity = RegularityReport{g.at("monotone").get<bool>(), real(g.at("final_step")),
                                      g.at("regular").get<bool>()};
  run.cauchy = reals(j.at("cauchy"));
  return run;
}

json encode(const Experiment& e) {
  const PointCodec pc{e.space.labels};
  const auto& s = e.space;
  json space{{"finite", s.finite},
             {"lower", real(s.lower)},
             {"upper", real(s.upper)},
             {"metric", s.metric},
             {"labels", s.labels},
             {"table", reals(s.table)},
             {"action", s.action},
             {"action_params", reals(s.action_params)}};
  json map = nullptr;
  if (e.map) map = {{"kind", e.map->kind}, {"params", reals(e.map->params)}, {"image", e.map->image}};
  json zeta = nullptr;
  if (e.zeta) zeta = {{"kind", e.zeta->kind}, {"params", reals(e.zeta->params)}, {"aux", e.zeta->aux}};
  return {{"name", e.name},
          {"mode", to_string(e.mode)},
          {"space", space},
          {"map", map},
          {"zeta", zeta},
          {"plan",
           {{"step", real(e.plan.step)},
            {"upper", real(e.plan.upper)},
            {"random_count", e.plan.random_count},
            {"seed", e.plan.seed},
            {"pair_points", e.plan.pair_points}}},
          {"sequences",
           {{"limits", reals(e.sequences.limits)},
            {"coefficients", reals(e.sequences.coefficients)},
            {"tail_start", e.sequences.tail_start},
            {"tail_length", e.sequences.tail_length}}},
          {"tol", real(e.tol)},
          {"max_iter", e.max_iter},
          {"starts", pc.encode(e.starts)},
          {"start_grid", e.start_grid}};
}

Experiment decode_experiment(const json& j) {
  Experiment e;
  e.name = j.at("name").get<std::string>();
  e.mode = mode_from_string(j.at("mode").get<std::string>());
  const auto& s = j.at("space");
  e.space.finite = s.at("finite").get<bool>();
  e.space.lower = real(s.at("lower"));
  e.space.upper = real(s.at("upper"));
  e.space.metric = s.at("metric").get<std::string>();
  e.space.labels = s.at("labels").get<std::vector<std::string>>();
  e.space.table = reals(s.at("table"));
  e.space.action = s.at("action").get<std::string>();
  e.space.action_params = reals(s.at("action_params"));
  if (const auto& m = j.at("map"); !m.is_null())
    e.map = MapSpec{m.at("kind").get<std::string>(), reals(m.at("params")),
                    m.at("image").get<std::vector<std::string>>()};
  if (const auto& z = j.at("zeta"); !z.is_null())
    e.zeta = ZetaSpec{z.at("kind").get<std::string>(), reals(z.at("params")),
                      z.at("aux").get<std::string>()};
  const auto& p = j.at("plan");
  e.plan.step = real(p.at("step"));
  e.plan.upper = real(p.at("upper"));
  e.plan.random_count = p.at("random_count").get<std::size_t>();
  e.plan.seed = p.at("seed").get<std::uint64_t>();
  e.plan.pair_points = p.at("pair_points").get<std::size_t>();
  const auto& q = j.at("sequences");
  e.sequences.limits = reals(q.at("limits"));
  e.sequences.coefficients = reals(q.at("coefficients"));
  e.sequences.tail_start = q.at("tail_start").get<std::size_t>();
  e.sequences.tail_length = q.at("tail_length").get<std::size_t>();
  e.tol = real(j.at("tol"));
  e.max_iter = j.at("max_iter").get<std::size_t>();
  e.starts = PointCodec{e.space.labels}.decode_all(j.at("starts"));
  e.start_grid = j.at("start_grid").get<std::size_t>();
  return e;
}

json to_json(const RunReport& r) {
  const PointCodec pc{r.experiment.space.labels};
  json axioms = json::array();
  for (const auto& a : r.axioms) axioms.push_back(encode(a));
  json runs = json::array();
  for (const auto& run : r.runs) runs.push_back(encode(run, pc));
  auto margin = [&](const std::optional<MarginReport>& m) {
    return m ? encode(*m, pc) : json(nullptr);
  };
  json uniqueness = nullptr;
  if (r.uniqueness)
    uniqueness = {{"all_converged", r.uniqueness->all_converged},
                  {"max_pairwise_distance", real(r.uniqueness->max_pairwise_distance)},
                  {"unique", r.uniqueness->unique}};
  return {{"schema_version", r.schema_version},
          {"version", r.version},
          {"experiment", encode(r.experiment)},
          {"axioms", axioms},
          {"z_margin", margin(r.z_margin)},
          {"modified_z_margin", margin(r.modified_z_margin)},
          {"contractivity", margin(r.contractivity)},
          {"runs", runs},
          {"uniqueness", uniqueness},
          {"passed", r.passed},
          {"wall_time_ms", real(r.wall_time_ms)}};
}

// ---------------------------------------------------------------------------
// human

void describe_witness(std::ostream& out, const Witness& w) {
  out << "(";
  bool first = true;
  for (const auto& l : w.labels) {
    out << (first ? "" : ", ") << l;
    first = false;
  }
  for (double a : w.args) {
    out << (first ? "" : ", ") << format_real(a);
    first = false;
  }
  out << ") lhs=" << format_real(w.lhs) << " rhs=" << format_real(w.rhs);
}

void describe_margin(std::ostream& out, std::string_view title, const MarginReport& m,
                     const PointDomain* domain) {
  out << title << ": " << (m.nonnegative() ? "nonnegative-on-samples" : "violated")
      << (m.clamped ? " (clamped float noise)" : "") << ", min " << format_real(m.min_margin)
      << " over " << m.pair_count << " pairs";
  if (m.argmin && domain)
    out << " at (" << domain->describe(m.argmin->first) << ", "
        << domain->describe(m.argmin->second) << ")";
  out << "\n";
}

std::string to_human(const RunReport& r) {
  std::ostringstream out;
  const auto& e = r.experiment;
  out << r.version << " | experiment '" << e.name << "' | mode " << to_string(e.mode) << "\n";

  std::optional<PointDomain> domain;
  try {
    domain = resolve(e).space.domain();
  } catch (const Error&) {
  }

  for (const auto& a : r.axioms) {
    out << a.subject << " [" << a.name << "]\n";
    for (const auto& v : a.verdicts) {
      out << "  " << v.axiom << ": " << to_string(v.verdict) << " (" << v.samples
          << " samples, worst margin " << format_real(v.worst_margin) << ")";
      if (v.witness) {
        out << " witness ";
        describe_witness(out, *v.witness);
      }
      out << "\n";
    }
    for (const auto& f : a.flags) out << "  note: " << f << "\n";
  }
  const PointDomain* dom = domain ? &*domain : nullptr;
  if (r.z_margin) describe_margin(out, "z-margin", *r.z_margin, dom);
  if (r.modified_z_margin) describe_margin(out, "modified z-margin", *r.modified_z_margin, dom);
  if (r.contractivity) describe_margin(out, "contractivity", *r.contractivity, dom);

  for (const auto& run : r.runs) {
    const auto& res = run.result;
    out << "picard from " << (dom ? dom->describe(res.trace.start) : "?") << ": "
        << to_string(res.status) << " after " << res.iterations << " iteration(s), z = "
        << (dom ? dom->describe(res.candidate) : "?") << ", residual "
        << format_real(res.residual);
    if (run.regularity)
      out << ", monotone " << (run.regularity->monotone ? "yes" : "no") << ", regular "
          << (run.regularity->regular ? "yes" : "no");
    if (!run.cauchy.empty()) out << ", C_0 " << format_real(run.cauchy.front());
    out << "\n";
  }
  if (r.uniqueness)
    out << "uniqueness: " << (r.uniqueness->unique ? "unique" : "not unique")
        << " (all converged: " << (r.uniqueness->all_converged ? "yes" : "no")
        << ", max limit distance " << format_real(r.uniqueness->max_pairwise_distance) << ")\n";
  out << "result: " << (r.passed ? "PASS" : "FAIL") << "\n";
  return out.str();
}

}  // namespace

std::string emit_report(const RunReport& report, ReportFormat format) {
  if (format == ReportFormat::Human) return to_human(report);
  return to_json(report).dump(2) + "\n";
}

RunReport parse_report_json(std::string_view text) {
  const json j = json::parse(text);
  RunReport r;
  r.schema_version = j.at("schema_version").get<int>();
  if (r.schema_version != kReportSchemaVersion)
    throw InvalidArgument("unsupported report schema version " + std::to_string(r.schema_version));
  r.version = j.at("version").get<std::string>();
  r.experiment = decode_experiment(j.at("experiment"));
  const PointCodec pc{r.experiment.space.labels};
  for (const auto& a : j.at("axioms")) r.axioms.push_back(decode_axioms(a));
  if (!j.at("z_margin").is_null()) r.z_margin = decode_margin(j.at("z_margin"), pc);
  if (!j.at("modified_z_margin").is_null())
    r.modified_z_margin = decode_margin(j.at("modified_z_margin"), pc);
  if (!j.at("contractivity").is_null()) r.contractivity = decode_margin(j.at("contractivity"), pc);
  for (const auto& run : j.at("runs")) r.runs.push_back(decode_run(run, pc));
  if (const auto& u = j.at("uniqueness"); !u.is_null())
    r.uniqueness = UniquenessVerdict{u.at("all_converged").get<bool>(),
                                     real(u.at("max_pairwise_distance")),
                                     u.at("unique").get<bool>()};
  r.passed = j.at("passed").get<bool>();
  r.wall_time_ms = real(j.at("wall_time_ms"));
  return r;
}

std::string emit_trace_csv(const FixedPointResult& result, const PointDomain& domain) {
  std::ostringstream out;
  out << "n,x_n,d_n\n";
  const auto& t = result.trace;
  for (std::size_t n = 0; n < t.steps.size(); ++n)
    out << n << ',' << domain.describe(t.iterates[n]) << ',' << format_real(t.steps[n]) << '\n';
  return out.str();
}

}  // namespace thetafix
