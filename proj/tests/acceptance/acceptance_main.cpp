// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit if any fail.

#include <array>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>

#include "CLI11.hpp"
#include "test_support.hpp"
#include "zeno/zeno.hpp"

namespace {

using Clock = std::chrono::steady_clock;

struct Verdict {
  bool pass = true;
  std::string detail;
};

struct Criterion {
  int id;
  std::string name;
  double time_limit_s;  // <= 0: no runtime bound
  std::function<Verdict()> body;
};

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3e", v);
  return buf;
}

double relative(double got, double want) {
  if (want == 0.0) return std::abs(got);
  return std::abs(got - want) / std::abs(want);
}

// |<0| U^n |0>|^2 by repeated squaring.
double free_survival(const zeno::FreeEvolutionUnitary& u, std::uint64_t n) {
  zeno::Matrix2 result = zeno::Matrix2::identity();
  zeno::Matrix2 base = u.matrix();
  for (std::uint64_t e = n; e > 0; e >>= 1) {
    if (e & 1) result = result * base;
    base = base * base;
  }
  return std::norm(result(0, 0));
}

Verdict oracle_equivalence(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint64_t> steps(1, 14);
  double worst = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    const auto u = zeno::testing::random_unitary(rng);
    const std::uint64_t n = steps(rng);
    const auto schedule = zeno::testing::random_explicit_schedule(rng, n);
    const double fast = zeno::propagate_projected(u, schedule, n).p_exact;
    const double brute = zeno::enumerate_branches(u, schedule, n);
    worst = std::max(worst, std::abs(fast - brute));
  }
  return {worst <= 1e-12, "200 instances, max |diff| = " + sci(worst)};
}

Verdict limiting_cases() {
  const std::array<double, 5> omegas{0.2, 0.5, 1.0, 1.5, 3.0};
  const std::array<double, 5> times{0.05, 0.2, 0.5, 1.0, 2.0};
  const std::array<std::uint64_t, 2> ns{7, 1000};
  double worst_exact = 0.0;
  double worst_second = 0.0;
  int points = 0;
  for (double omega : omegas) {
    for (double t : times) {
      for (std::uint64_t n : ns) {
        ++points;
        const zeno::EvolutionConfig config{omega, t, n, 1.0};
        const auto u = zeno::make_rabi_unitary(omega, config.delta());
        const double v = config.variance();
        const double d = config.delta();
        const double nd = static_cast<double>(n) * d;

        const auto none = zeno::OverlapSchedule::constant(1.0);
        worst_exact = std::max(worst_exact, std::abs(zeno::propagate_projected(u, none, n).p_exact -
                                                     free_survival(u, n)));
        worst_second = std::max(worst_second,
                                std::abs(zeno::second_order_pn(1.0, config) - (1.0 - v * nd * nd)));

        const auto full = zeno::OverlapSchedule::constant(0.0);
        worst_exact = std::max(worst_exact, std::abs(zeno::propagate_projected(u, full, n).p_exact -
                                                     std::pow(std::norm(u.a()), static_cast<double>(n))));
        worst_second = std::max(worst_second, std::abs(zeno::second_order_pn(0.0, config) -
                                                       (1.0 - static_cast<double>(n) * v * d * d)));
      }
    }
  }
  return {worst_exact <= 1e-12 && worst_second <= 1e-12,
          std::to_string(points) + " (omega, T, n) points, max |p_exact - closed| = " + sci(worst_exact) +
              ", max |p2 - formula| = " + sci(worst_second)};
}

Verdict error_order() {
  double worst_ratio = 1e300;
  for (double eta : {0.0, 0.3, 0.7, 1.0}) {
    for (std::uint64_t n : {10u, 100u}) {
      double previous = 0.0;
      for (double t : {0.2, 0.1, 0.05}) {
        const zeno::EvolutionConfig config{1.0, t, n, 1.0};
        const auto result = zeno::survival_series(config, zeno::OverlapSchedule::constant(eta));
        const double gap = std::abs(result.p_exact - *result.p_second_order);
        if (previous > 0.0) worst_ratio = std::min(worst_ratio, previous / gap);
        previous = gap;
      }
    }
  }
  return {worst_ratio >= 12.0, "smallest shrink factor per halving = " + std::to_string(worst_ratio)};
}

Verdict table_reproduction() {
  const zeno::EvolutionConfig config{1.0, 1.0, 1, 1.0};
  const double vt2 = config.variance() * config.total_time * config.total_time;
  const std::uint64_t n_max = std::uint64_t{1} << 20;
  struct Case {
    std::string label;
    zeno::OverlapSchedule schedule;
    double expected;
  };
  std::vector<Case> cases{
      {"Constant 0.7", zeno::OverlapSchedule::constant(0.7), 1.0},
      {"PowerLaw{1, 0.5}", zeno::OverlapSchedule::power_law(1.0, 0.5), 1.0},
      {"PowerLaw{1, 1.5}", zeno::OverlapSchedule::power_law(1.0, 1.5), 1.0 - vt2},
      {"PowerLaw{1, 2}", zeno::OverlapSchedule::power_law(1.0, 2.0), 1.0 - vt2},
      {"PowerLaw{1, 3}", zeno::OverlapSchedule::power_law(1.0, 3.0), 1.0 - vt2},
      {"Exponential{1, 0.1}", zeno::OverlapSchedule::exponential(1.0, 0.1), 1.0 - vt2},
  };
  for (double alpha : {0.5, 1.0, 2.0, 5.0}) {
    const double k = 2.0 * (1.0 / alpha + (std::exp(-alpha) - 1.0) / (alpha * alpha));
    cases.push_back({"PowerLaw{" + std::to_string(alpha).substr(0, 3) + ", 1}",
                     zeno::OverlapSchedule::power_law(alpha, 1.0), 1.0 - k * vt2});
  }
  Verdict v;
  double worst = 0.0;
  for (const auto& c : cases) {
    const auto probe = zeno::numeric_limit_probe(c.schedule, config, n_max);
    const double err = probe.limit_p ? std::abs(*probe.limit_p - c.expected) : 1e300;
    worst = std::max(worst, err);
    if (!(err <= 1e-3 * vt2)) {
      v.pass = false;
      v.detail += c.label + " off by " + sci(err) + "; ";
    }
  }
  v.detail += std::to_string(cases.size()) + " schedules, max |limit - expected| = " + sci(worst) +
              " (tolerance " + sci(1e-3 * vt2) + ")";
  return v;
}

Verdict criterion_identity() {
  std::vector<double> etas{0.0};
  for (int i = 1; i <= 33; ++i) etas.push_back(0.01 + 0.98 * (i - 1) / 32.0);
  for (double gap : {1e-3, 1e-4, 1e-5, 1e-6, 1e-7}) etas.push_back(1.0 - gap);
  etas.push_back(1.0);
  std::vector<std::uint64_t> ns;
  for (int i = 0; i < 25; ++i) ns.push_back(static_cast<std::uint64_t>(std::llround(std::pow(10.0, 6.0 * i / 24.0))));

  double worst_identity = 0.0;
  double worst_reference = 0.0;
  std::size_t points = 0;
  for (double eta : etas) {
    for (std::uint64_t n : ns) {
      ++points;
      const double nd = static_cast<double>(n);
      const double c = zeno::criterion_value(eta, n);
      const double via_sum = (zeno::zeno_sum(eta, n) - 0.5 * nd) / (nd * nd);
      worst_identity = std::max(worst_identity, relative(c, via_sum));
      if (n <= 4096) {
        long double tail = 0.0L;
        long double power = 1.0L;
        for (std::uint64_t k = 1; k < n; ++k) {
          power *= static_cast<long double>(eta);
          tail += static_cast<long double>(n - k) * power;
        }
        worst_reference = std::max(worst_reference, relative(c, static_cast<double>(tail / (nd * nd))));
      }
    }
  }
  return {points >= 1000 && worst_identity <= 1e-12 && worst_reference <= 1e-10,
          std::to_string(points) + " (eta, n) points, max relative identity error = " + sci(worst_identity) +
              ", vs long-double sum = " + sci(worst_reference)};
}

Verdict physical_models() {
  using namespace zeno::physical;
  Verdict v;
  double worst_routes = 0.0;
  for (double mass : {1e-30, 1e-27, 1e-26, 1e-24, 1e-20}) {
    for (double sigma : {1e-12, 1e-10, 1e-9, 1e-6}) {
      const auto t = quadratic_validity_time({mass, sigma});
      worst_routes = std::max(worst_routes, relative(t.from_variance, t.closed_form));
    }
  }
  const double t_c = quadratic_validity_time({1e-26, 1e-10}).value();
  const bool t_c_ok = std::abs(t_c / 2.68e-12 - 1.0) <= 0.01;

  bool all_free = true;
  int pointer_cases = 0;
  for (double velocity : {0.1, 1.0, 10.0}) {
    for (double sigma : {0.5, 1.0, 4.0}) {
      for (double c : {0.1, 1.0}) {
        for (double total : {0.5, 1.0, 3.0}) {
          ++pointer_cases;
          const auto schedule = gaussian_model_schedule({velocity, sigma, c, total});
          all_free = all_free && zeno::classify_schedule(schedule).label == zeno::Regime::FreeEvolution;
        }
      }
    }
  }

  // The deficit 1 - lim p = k V T^2 shrinks as D grows, so lim p itself rises
  // toward the Zeno value 1.
  bool deficit_decreasing = true;
  double previous_deficit = 2.0;
  double first_limit = 0.0;
  double last_limit = 0.0;
  const std::array<double, 7> ds{0.0, 0.25, 0.5, 1.0, 2.0, 4.0, 8.0};
  for (double d : ds) {
    const auto schedule = brownian_schedule({d, 1.0});
    const double limit = zeno::limit_pn(schedule, 1.0, 1.0);
    const double deficit = 1.0 - limit;
    deficit_decreasing = deficit_decreasing && deficit < previous_deficit;
    previous_deficit = deficit;
    if (d == ds.front()) first_limit = limit;
    last_limit = limit;
  }

  v.pass = worst_routes <= 1e-12 && t_c_ok && all_free && deficit_decreasing;
  v.detail = "t_c routes max rel diff = " + sci(worst_routes) + "; t_c(1e-26 kg, 1e-10 m) = " + sci(t_c) +
             " s (a quoted 4e-13 s is not reproduced by the formula); " + std::to_string(pointer_cases) +
             " pointer cases FreeEvolution = " + (all_free ? "yes" : "no") +
             "; brownian deficit k V T^2 decreasing in D = " + (deficit_decreasing ? "yes" : "no") +
             " (lim p rises from " + sci(first_limit) + " to " + sci(last_limit) + ")";
  return v;
}

Verdict recoherence() {
  const auto stages = zeno::recoherence_demo();
  auto entry_error = [](const zeno::DensityMatrix2& rho, double a, double b, double c, double d) {
    return std::max({std::abs(rho.rho00 - zeno::Complex{a}), std::abs(rho.rho01 - zeno::Complex{b}),
                     std::abs(rho.rho10 - zeno::Complex{c}), std::abs(rho.rho11 - zeno::Complex{d})});
  };
  const double e1 = entry_error(stages.at(1).rho, 0.5, 0.0, 0.0, 0.5);
  const double e2 = entry_error(stages.at(2).rho, 0.5, 0.5, 0.5, 0.5);
  return {std::max(e1, e2) <= 1e-12, "stage 1 max entry error = " + sci(e1) + ", stage 2 = " + sci(e2)};
}

struct Run {
  int code = -1;
  std::string out;
};

Run run_cli(const std::string& cli, const std::string& args) {
  Run r;
  FILE* pipe = popen((cli + " " + args + " 2>/dev/null").c_str(), "r");
  if (pipe == nullptr) return r;
  std::array<char, 4096> buf{};
  std::size_t got = 0;
  while ((got = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), got);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

Verdict cli_contract(const std::string& cli) {
  if (cli.empty()) return {false, "no --cli path given"};
  Verdict v;
  int identical = 0;
  const std::vector<std::string> deterministic{
      "simulate -n 500 --schedule power-law --alpha 1 --beta 1",
      "simulate -T 1 -n 12 --eta 0.4 --oracle --format json",
      "classify --schedule power-law --alpha 2 --beta 1 --format json",
      "sweep --vary n=pow2:0:12 --vary eta=lin:0:1:6",
      "physical brownian --diffusion 2 --time 1 --format json",
      "recohere --format json",
  };
  for (const auto& args : deterministic) {
    const Run a = run_cli(cli, args);
    const Run b = run_cli(cli, args);
    const Run c = run_cli("ZENOLAB_THREADS=4 " + cli, args);
    if (a.code == 0 && !a.out.empty() && a.out == b.out && a.out == c.out) {
      ++identical;
    } else {
      v.pass = false;
      v.detail += "nondeterministic: " + args + "; ";
    }
  }
  const std::vector<std::pair<std::string, int>> codes{
      {"recohere", 0},
      {"simulate -n 10 --eta 0.5", 0},
      {"simulate -n 0 --eta 0.5", 2},
      {"classify --schedule power-law --alpha -1 --beta 1", 2},
      {"sweep --eta 0.5 --vary n=", 2},
      {"physical free-particle --mass -1 --sigma 1", 2},
      {"simulate -n 25 --eta 0.5 --oracle", 3},
      {"sweep -n 4 --eta 0.5 --vary eta=lin:0:1:2000 --vary T=lin:1:2:1000", 3},
  };
  int matched = 0;
  for (const auto& [args, expected] : codes) {
    const Run r = run_cli(cli, args);
    if (r.code == expected) {
      ++matched;
    } else {
      v.pass = false;
      v.detail += "'" + args + "' exited " + std::to_string(r.code) + "; ";
    }
  }
  v.detail += std::to_string(identical) + "/" + std::to_string(deterministic.size()) +
              " invocations byte-identical across runs and thread counts, exit codes " + std::to_string(matched) +
              "/" + std::to_string(codes.size()) + " as expected";
  return v;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"zenolab acceptance gate"};
  std::uint64_t seed = 20240611;
  std::string cli;
  app.add_option("--seed", seed, "seed for the randomized criteria")->capture_default_str();
  app.add_option("--cli", cli, "path to the zenolab binary");
  CLI11_PARSE(app, argc, argv);

  std::cout << "acceptance seed: " << seed << "\n";
  const std::vector<Criterion> criteria{
      {1, "oracle equivalence", 10.0, [&] { return oracle_equivalence(seed); }},
      {2, "limiting-case recovery", 0.0, limiting_cases},
      {3, "fourth-order residual", 1.0, error_order},
      {4, "regime table at n <= 2^20", 30.0, table_reproduction},
      {5, "criterion identity", 0.0, criterion_identity},
      {6, "physical models", 0.0, physical_models},
      {7, "recoherence", 0.1, recoherence},
      {8, "CLI contract", 0.0, [&] { return cli_contract(cli); }},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = Clock::now();
    Verdict v;
    try {
      v = c.body();
    } catch (const std::exception& e) {
      v = {false, std::string("threw: ") + e.what()};
    }
    const double elapsed = std::chrono::duration<double>(Clock::now() - start).count();
    std::string timing = "runtime " + sci(elapsed) + " s";
    if (c.time_limit_s > 0.0) {
      timing += " (limit " + std::to_string(c.time_limit_s).substr(0, 4) + " s)";
      if (elapsed >= c.time_limit_s) v.pass = false;
    }
    if (!v.pass) ++failures;
    std::cout << (v.pass ? "PASS" : "FAIL") << " criterion " << c.id << " [" << c.name << "]: " << v.detail << "; "
              << timing << std::endl;
  }
  std::cout << (failures == 0 ? "all acceptance criteria passed" : std::to_string(failures) + " criteria failed")
            << "\n";
  return failures == 0 ? 0 : 1;
}
