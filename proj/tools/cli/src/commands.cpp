#include "commands.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <thread>

#include "arguments.hpp"
#include "zeno/zeno.hpp"

namespace zeno::cli {
namespace {

template <class... Fs>
struct Overloaded : Fs... {
  using Fs::operator()...;
};
template <class... Fs>
Overloaded(Fs...) -> Overloaded<Fs...>;

std::string short_number(double value) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", value);
  return buf;
}

Json complex_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Json optional_json(const std::optional<double>& value) { return value ? Json(*value) : Json(nullptr); }

Complex parse_overlap(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) return {parse_number(text, "--overlaps"), 0.0};
  return {parse_number(text.substr(0, colon), "--overlaps"), parse_number(text.substr(colon + 1), "--overlaps")};
}

// Overlap shared by every step of a family schedule, or blank for explicit ones.
Cell eta_cell(const OverlapSchedule& schedule, std::uint64_t steps) {
  if (schedule.is_explicit()) return std::monostate{};
  return schedule.realize(steps).eta;
}

std::string summary_text(const RegimeClassification& c) {
  switch (c.label) {
    case Regime::Zeno:
      return "Zeno, lim p = 1";
    case Regime::FreeEvolution:
      return "FreeEvolution, lim p = 1 - VT^2 = " + short_number(*c.limit_p);
    case Regime::Intermediate:
      return "Intermediate, lim p = 1 - k VT^2 = " + short_number(*c.limit_p) + " with k = " + short_number(*c.k);
    default:
      return std::string(to_string(c.label));
  }
}

RegimeClassification analytic_with_limit(const OverlapSchedule& schedule, double variance, double total_time) {
  RegimeClassification c = classify_schedule(schedule);
  if (c.label != Regime::NumericOnly) c.limit_p = limit_pn(schedule, variance, total_time);
  return c;
}

}  // namespace

OverlapSchedule ScheduleOptions::build() const {
  std::string name = family;
  if (name.empty()) {
    if (eta) {
      name = "constant";
    } else if (!overlaps.empty()) {
      name = "explicit";
    } else {
      throw ValidationError("--schedule is required (constant, power-law, exponential, explicit)");
    }
  }
  auto reject = [&](bool present, const char* flag) {
    if (present) throw ValidationError(std::string(flag) + " does not apply to the " + name + " schedule");
  };
  if (name == "constant") {
    if (!eta) throw ValidationError("constant schedule requires --eta");
    reject(alpha.has_value(), "--alpha");
    reject(beta.has_value(), "--beta");
    reject(!overlaps.empty(), "--overlaps");
    return OverlapSchedule::constant(Complex{*eta});
  }
  if (name == "power-law" || name == "exponential") {
    if (!alpha || !beta) throw ValidationError(name + " schedule requires --alpha and --beta");
    reject(eta.has_value(), "--eta");
    reject(!overlaps.empty(), "--overlaps");
    return name == "power-law" ? OverlapSchedule::power_law(*alpha, *beta)
                               : OverlapSchedule::exponential(*alpha, *beta);
  }
  if (name == "explicit") {
    if (overlaps.empty()) throw ValidationError("explicit schedule requires --overlaps");
    reject(eta.has_value(), "--eta");
    reject(alpha.has_value(), "--alpha");
    reject(beta.has_value(), "--beta");
    std::vector<Complex> values;
    values.reserve(overlaps.size());
    for (const auto& text : overlaps) values.push_back(parse_overlap(text));
    return OverlapSchedule::explicit_steps(std::move(values));
  }
  throw ValidationError("--schedule must be constant, power-law, exponential or explicit, got '" + name + "'");
}

Json schedule_json(const OverlapSchedule& schedule) {
  Json out;
  out["family"] = std::string(schedule.family_name());
  std::visit(Overloaded{[&](const ConstantOverlap& c) { out["eta"] = complex_json(c.eta); },
                        [&](const PowerLawOverlap& p) {
                          out["alpha"] = p.alpha;
                          out["beta"] = p.beta;
                        },
                        [&](const ExponentialOverlap& e) {
                          out["alpha"] = e.alpha;
                          out["beta"] = e.beta;
                        },
                        [&](const ExplicitOverlaps& e) {
                          Json values = Json::array();
                          for (const Complex& z : e.values) values.push_back(complex_json(z));
                          out["overlaps"] = std::move(values);
                        }},
             schedule.variant());
  return out;
}

Report cmd_simulate(const SimulateOptions& opts) {
  const OverlapSchedule schedule = opts.schedule.build();
  const EvolutionConfig config{opts.omega, opts.time, opts.steps, opts.c_ratio};
  config.validate();
  if (opts.every < 1) throw ValidationError("--every must be >= 1");
  if (opts.steps > kMaxSimulateSteps) {
    throw CapacityError("simulate: n = " + std::to_string(opts.steps) + " exceeds the cap of 2^26 steps");
  }
  schedule.check_realizable(opts.steps);

  std::optional<double> oracle;
  BranchStats stats;
  if (opts.oracle) {
    oracle = enumerate_branches(make_rabi_unitary(config.omega, config.delta()), schedule, config.steps, &stats);
  }

  const SurvivalResult result = survival_series(config, schedule);
  const std::vector<double> tails = pair_sum_series(schedule, config.steps);
  const RegimeClassification regime = classify_schedule(schedule);
  const Cell eta = eta_cell(schedule, config.steps);

  Report report;
  Table table;
  table.columns = {"n", "eta_n", "p_exact", "p_second_order", "criterion", "regime", "abs_gap"};
  if (oracle) table.columns.push_back("p_oracle");

  const std::uint64_t n = config.steps;
  for (std::uint64_t i = opts.every; i <= n; i += opts.every) {
    if (i == n) break;
    const double exact = result.series[i - 1];
    const double second = result.second_order_series[i - 1];
    const double steps = static_cast<double>(i);
    std::vector<Cell> row{i, eta, exact, second, tails[i - 1] / (steps * steps), std::monostate{},
                          std::abs(exact - second)};
    if (oracle) row.emplace_back(std::monostate{});
    table.rows.push_back(std::move(row));
  }
  std::vector<Cell> last{n,
                         eta,
                         result.p_exact,
                         *result.p_second_order,
                         *result.criterion_value,
                         std::string(to_string(regime.label)),
                         std::abs(result.p_exact - *result.p_second_order)};
  if (oracle) last.emplace_back(*oracle);
  table.rows.push_back(std::move(last));

  if (!second_order_reliable(config)) {
    report.warnings.push_back("V delta^2 = " + short_number(config.variance() * config.delta() * config.delta()) +
                              " exceeds " + short_number(kSecondOrderWarnThreshold) +
                              "; p_second_order is outside its accuracy range");
  }

  Json& doc = report.doc;
  doc["command"] = "simulate";
  doc["parameters"] = {{"omega", opts.omega},
                       {"T", opts.time},
                       {"n", opts.steps},
                       {"c_ratio", opts.c_ratio},
                       {"schedule", schedule_json(schedule)}};
  doc["columns"] = table.columns;
  Json rows = Json::array();
  for (const auto& row : table.rows) {
    Json obj;
    for (std::size_t c = 0; c < table.columns.size(); ++c) obj[table.columns[c]] = cell_to_json(row[c]);
    rows.push_back(std::move(obj));
  }
  doc["rows"] = std::move(rows);
  Json summary = doc["rows"].back();
  if (oracle) {
    summary["oracle_words"] = stats.words_visited;
    summary["oracle_contributing_words"] = stats.words_contributing;
    summary["oracle_abs_diff"] = std::abs(*oracle - result.p_exact);
  }
  doc["summary"] = std::move(summary);
  doc["warnings"] = report.warnings;
  report.table = std::move(table);
  return report;
}

Report cmd_classify(const ClassifyOptions& opts) {
  const OverlapSchedule schedule = opts.schedule.build();
  if (schedule.is_explicit()) throw ValidationError("classify requires a family schedule, not explicit overlaps");
  const EvolutionConfig config{opts.omega, opts.time, 1, 1.0};
  config.validate();
  if (opts.n_max > kMaxSimulateSteps) {
    throw CapacityError("classify: --n-max exceeds the cap of 2^26 steps");
  }

  const RegimeClassification analytic = analytic_with_limit(schedule, config.variance(), config.total_time);
  const RegimeClassification probe = numeric_limit_probe(schedule, config, opts.n_max);
  const bool agree = analytic.label == probe.label;

  Report report;
  Json& doc = report.doc;
  doc["command"] = "classify";
  doc["parameters"] = {{"omega", opts.omega}, {"T", opts.time}, {"n_max", opts.n_max},
                       {"schedule", schedule_json(schedule)}};
  doc["VT2"] = config.variance() * config.total_time * config.total_time;
  doc["analytic"] = {{"regime", std::string(to_string(analytic.label))},
                     {"k", optional_json(analytic.k)},
                     {"limit_p", optional_json(analytic.limit_p)}};

  Json points = Json::array();
  for (const ProbePoint& point : probe.diagnostics) {
    const auto u = make_rabi_unitary(config.omega, config.total_time / static_cast<double>(point.steps));
    const double exact = propagate_projected(u, schedule, point.steps).p_exact;
    points.push_back({{"n", point.steps},
                      {"eta_n", point.eta},
                      {"p_exact", exact},
                      {"p_second_order", point.p_second_order},
                      {"criterion", point.criterion}});
  }
  doc["probe"] = {{"regime", std::string(to_string(probe.label))},
                  {"k", optional_json(probe.k)},
                  {"limit_p", optional_json(probe.limit_p)},
                  {"converged", probe.converged},
                  {"note", probe.note},
                  {"points", std::move(points)}};
  doc["agreement"] = agree;
  doc["summary"] = summary_text(analytic);
  if (!agree) {
    report.warnings.push_back("numeric probe label " + std::string(to_string(probe.label)) +
                              " disagrees with analytic label " + std::string(to_string(analytic.label)));
  }
  doc["warnings"] = report.warnings;
  return report;
}

namespace {

struct SweepPoint {
  std::uint64_t n = 0;
  double omega = 0.0;
  double time = 0.0;
  std::optional<double> eta;
  std::optional<double> alpha;
  std::optional<double> beta;
};

std::vector<Cell> evaluate_point(const SweepPoint& point, const ScheduleOptions& base) {
  ScheduleOptions options = base;
  if (point.eta) options.eta = point.eta;
  if (point.alpha) options.alpha = point.alpha;
  if (point.beta) options.beta = point.beta;
  const OverlapSchedule schedule = options.build();
  const EvolutionConfig config{point.omega, point.time, point.n, 1.0};
  config.validate();
  schedule.check_realizable(point.n);

  const double exact = propagate_projected(make_rabi_unitary(config.omega, config.delta()), schedule, point.n).p_exact;
  double second = 0.0;
  double criterion = 0.0;
  if (const auto* e = std::get_if<ExplicitOverlaps>(&schedule.variant())) {
    second = second_order_pn(e->values, config.variance(), config.delta());
    criterion = criterion_value(e->values);
  } else {
    const RealOverlap overlap = schedule.realize(point.n);
    second = second_order_pn(overlap, config.variance(), config.total_time, point.n);
    criterion = criterion_value(overlap, point.n);
  }
  auto opt_cell = [](const std::optional<double>& v) -> Cell {
    if (v) return *v;
    return std::monostate{};
  };
  return {point.n,
          eta_cell(schedule, point.n),
          exact,
          second,
          criterion,
          std::string(to_string(classify_schedule(schedule).label)),
          point.omega,
          point.time,
          opt_cell(options.alpha),
          opt_cell(options.beta)};
}

}  // namespace

Report cmd_sweep(const SweepOptions& opts) {
  if (opts.vary.empty()) throw ValidationError("sweep requires at least one --vary axis");
  if (opts.vary.size() > 2) throw ValidationError("sweep accepts at most two --vary axes");
  std::vector<SweepAxis> axes;
  for (const auto& spec : opts.vary) {
    SweepAxis axis = parse_sweep_axis(spec);
    static const std::vector<std::string> known{"n", "eta", "alpha", "beta", "omega", "T"};
    if (std::find(known.begin(), known.end(), axis.name) == known.end()) {
      throw ValidationError("--vary: unknown parameter '" + axis.name + "' (n, eta, alpha, beta, omega, T)");
    }
    if (!axes.empty() && axes.front().name == axis.name) throw ValidationError("--vary: axis repeated");
    if (axis.values.empty()) throw ValidationError("--vary " + axis.name + ": empty grid");
    if (axis.name == "n") {
      for (double v : axis.values) {
        if (v < 1 || v != std::floor(v)) throw ValidationError("--vary n: values must be whole numbers >= 1");
        if (v > static_cast<double>(kMaxSimulateSteps)) {
          throw CapacityError("--vary n: value exceeds the cap of 2^26 steps");
        }
      }
    }
    axes.push_back(std::move(axis));
  }
  std::uint64_t total = 1;
  for (const auto& axis : axes) {
    total *= axis.values.size();
    if (total > kMaxGridPoints) {
      throw CapacityError("sweep grid exceeds the cap of 10^6 points");
    }
  }
  const bool varies_n = std::any_of(axes.begin(), axes.end(), [](const SweepAxis& a) { return a.name == "n"; });
  if (!varies_n && opts.steps < 1) throw ValidationError("sweep requires --steps unless n is varied");

  std::vector<SweepPoint> points;
  points.reserve(total);
  const std::size_t inner = axes.size() == 2 ? axes[1].values.size() : 1;
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    SweepPoint p{opts.steps, opts.omega, opts.time, std::nullopt, std::nullopt, std::nullopt};
    const std::size_t coords[2] = {static_cast<std::size_t>(idx / inner), static_cast<std::size_t>(idx % inner)};
    for (std::size_t a = 0; a < axes.size(); ++a) {
      const double v = axes[a].values[coords[a]];
      const std::string& name = axes[a].name;
      if (name == "n") p.n = static_cast<std::uint64_t>(v);
      else if (name == "eta") p.eta = v;
      else if (name == "alpha") p.alpha = v;
      else if (name == "beta") p.beta = v;
      else if (name == "omega") p.omega = v;
      else p.time = v;
    }
    points.push_back(p);
  }

  std::vector<std::vector<Cell>> rows(points.size());
  std::vector<std::exception_ptr> errors(points.size());
  const unsigned workers = std::min<std::size_t>(sweep_threads(), points.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < points.size(); i = next++) {
      try {
        rows[i] = evaluate_point(points[i], opts.schedule);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  for (const auto& error : errors) {
    if (error) std::rethrow_exception(error);
  }

  Report report;
  const auto unreliable = std::count_if(points.begin(), points.end(), [](const SweepPoint& p) {
    return !second_order_reliable(EvolutionConfig{p.omega, p.time, p.n, 1.0});
  });
  if (unreliable > 0) {
    report.warnings.push_back(std::to_string(unreliable) + " grid point(s) have V delta^2 above " +
                              short_number(kSecondOrderWarnThreshold) +
                              "; p_second_order is outside its accuracy range there");
  }
  Table table;
  table.columns = {"n", "eta_n", "p_exact", "p_second_order", "criterion", "regime", "omega", "T", "alpha", "beta"};
  table.rows = std::move(rows);

  Json& doc = report.doc;
  doc["command"] = "sweep";
  Json axes_json = Json::array();
  for (const auto& axis : axes) axes_json.push_back({{"name", axis.name}, {"values", axis.values}});
  doc["axes"] = std::move(axes_json);
  doc["columns"] = table.columns;
  Json rows_json = Json::array();
  for (const auto& row : table.rows) {
    Json obj;
    for (std::size_t c = 0; c < table.columns.size(); ++c) obj[table.columns[c]] = cell_to_json(row[c]);
    rows_json.push_back(std::move(obj));
  }
  doc["rows"] = std::move(rows_json);
  report.table = std::move(table);
  return report;
}

Report cmd_physical(const PhysicalOptions& opts) {
  using namespace zeno::physical;
  Report report;
  Json& doc = report.doc;
  doc["command"] = "physical";
  doc["model"] = opts.model;

  auto require = [&](const std::optional<double>& v, const char* flag) {
    if (!v) throw ValidationError(opts.model + " model requires " + flag);
    return *v;
  };
  auto reject = [&](bool present, const char* flag) {
    if (present) throw ValidationError(std::string(flag) + " does not apply to the " + opts.model + " model");
  };

  if (opts.model == "free-particle") {
    reject(opts.velocity.has_value(), "--velocity");
    reject(opts.diffusion.has_value(), "--diffusion");
    reject(opts.time.has_value(), "--time");
    FreeParticleParams p{require(opts.mass, "--mass"), require(opts.sigma, "--sigma"), opts.hbar.value_or(kHbar)};
    p.validate();
    const double variance = free_particle_variance(p);
    const ValidityTime t = quadratic_validity_time(p);
    doc["parameters"] = {{"mass", p.mass}, {"sigma", p.sigma}, {"hbar", p.hbar}};
    doc["variance"] = variance;
    doc["t_c"] = t.value();
    doc["t_c_from_variance"] = t.from_variance;
    doc["t_c_relative_difference"] = std::abs(t.closed_form - t.from_variance) / t.closed_form;
    // Inputs for which 4e-13 s is often quoted; the closed form gives
    // about 6.7 times that.
    const bool reference_inputs =
        std::abs(p.mass / 1e-26 - 1.0) < 1e-9 && std::abs(p.sigma / 1e-10 - 1.0) < 1e-9 && p.hbar == kHbar;
    if (reference_inputs) {
      doc["reference_t_c"] = kQuotedValidityTime;
      doc["reference_ratio"] = t.value() / kQuotedValidityTime;
      doc["note"] = "a value of 4e-13 s for these inputs does not follow from t_c = 2 sqrt(2) m sigma^2 / hbar = " +
                    short_number(t.value()) + " s";
    }
    return report;
  }

  if (opts.model == "gaussian-pointer") {
    reject(opts.mass.has_value(), "--mass");
    reject(opts.hbar.has_value(), "--hbar");
    reject(opts.diffusion.has_value(), "--diffusion");
    PointerModelParams p{require(opts.velocity, "--velocity"), require(opts.sigma, "--sigma"), opts.c_ratio,
                         require(opts.time, "--time")};
    p.validate();
    const OverlapSchedule schedule = gaussian_model_schedule(p);
    const RegimeClassification c = analytic_with_limit(schedule, opts.omega * opts.omega, p.total_time);
    doc["parameters"] = {{"velocity", p.velocity},
                         {"sigma", p.sigma},
                         {"c_ratio", p.c_ratio},
                         {"T", p.total_time},
                         {"omega", opts.omega}};
    doc["V"] = opts.omega * opts.omega;
    doc["schedule"] = schedule_json(schedule);
    doc["regime"] = std::string(to_string(c.label));
    doc["k"] = optional_json(c.k);
    doc["limit_p"] = optional_json(c.limit_p);
    doc["pointer_time_scale"] = p.sigma / p.velocity;
    doc["note"] = "the power-law form holds once the interaction time c T / n is well below sigma / v";
    doc["summary"] = summary_text(c);
    return report;
  }

  if (opts.model == "brownian") {
    reject(opts.mass.has_value(), "--mass");
    reject(opts.hbar.has_value(), "--hbar");
    reject(opts.velocity.has_value(), "--velocity");
    reject(opts.sigma.has_value(), "--sigma");
    BrownianModelParams p{require(opts.diffusion, "--diffusion"), require(opts.time, "--time")};
    p.validate();
    const OverlapSchedule schedule = brownian_schedule(p);
    const RegimeClassification c = analytic_with_limit(schedule, opts.omega * opts.omega, p.total_time);
    doc["parameters"] = {{"diffusion", p.diffusion}, {"T", p.total_time}, {"omega", opts.omega}};
    doc["V"] = opts.omega * opts.omega;
    doc["schedule"] = schedule_json(schedule);
    doc["regime"] = std::string(to_string(c.label));
    doc["k"] = optional_json(c.k);
    doc["limit_p"] = optional_json(c.limit_p);
    doc["summary"] = summary_text(c);
    return report;
  }

  throw ValidationError("model must be free-particle, gaussian-pointer or brownian, got '" + opts.model + "'");
}

Report cmd_recohere() {
  Report report;
  Json& doc = report.doc;
  doc["command"] = "recohere";
  Json stages = Json::array();
  for (const RecoherenceStage& stage : recoherence_demo()) {
    stage.rho.validate();
    stages.push_back({{"label", stage.label},
                      {"rho",
                       {{complex_json(stage.rho.rho00), complex_json(stage.rho.rho01)},
                        {complex_json(stage.rho.rho10), complex_json(stage.rho.rho11)}}},
                      {"coherence", stage.coherence}});
  }
  doc["stages"] = std::move(stages);
  return report;
}

}  // namespace zeno::cli
