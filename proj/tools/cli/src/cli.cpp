#include "zenolab/cli.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "arguments.hpp"
#include "commands.hpp"
#include "output.hpp"
#include "zeno/errors.hpp"

namespace zeno::cli {
namespace {

CLI::Option* add_optional(CLI::App* app, const std::string& name, std::optional<double>& target,
                          const std::string& help) {
  return app->add_option_function<double>(name, [&target](const double& v) { target = v; }, help);
}

void add_schedule_flags(CLI::App* app, ScheduleOptions& s) {
  app->add_option("--schedule", s.family, "constant, power-law, exponential or explicit");
  add_optional(app, "--eta", s.eta, "constant overlap in [0, 1]");
  add_optional(app, "--alpha", s.alpha, "power-law or exponential alpha");
  add_optional(app, "--beta", s.beta, "power-law or exponential beta");
  app->add_option("--overlaps", s.overlaps, "explicit per-step overlaps, re or re:im, comma separated")
      ->delimiter(',');
}

void emit(const Report& report, Format format, std::ostream& os) {
  if (format == Format::Json) {
    os << report.doc.dump(2) << '\n';
  } else if (report.table) {
    report.table->write_csv(os);
  } else {
    write_flat_csv(report.doc, os);
  }
}

}  // namespace

int run(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Discrete-time Zeno effect toolkit", "zenolab"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "zenolab 0.3.0");

  std::string format_name = "csv";
  std::string output_path;
  std::function<Report()> action;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--format", format_name, "csv or json")->capture_default_str();
    sub->add_option("--output,-o", output_path, "write the report to this path instead of stdout");
  };

  SimulateOptions sim;
  auto* simulate = app.add_subcommand("simulate", "survival probabilities step by step");
  add_common(simulate);
  simulate->add_option("--omega", sim.omega, "Rabi frequency; V = omega^2")->capture_default_str();
  simulate->add_option("-T,--time", sim.time, "total time")->capture_default_str();
  simulate->add_option("-n,--steps", sim.steps, "number of steps")->required();
  simulate->add_option("--c-ratio", sim.c_ratio, "interaction time ratio c")->capture_default_str();
  simulate->add_flag("--oracle", sim.oracle, "cross-check with branch enumeration (n <= 20)");
  simulate->add_option("--every", sim.every, "emit every k-th step")->capture_default_str();
  add_schedule_flags(simulate, sim.schedule);
  simulate->callback([&] { action = [&] { return cmd_simulate(sim); }; });

  ClassifyOptions cls;
  auto* classify = app.add_subcommand("classify", "analytic regime and numeric limit probe");
  add_common(classify);
  classify->add_option("--omega", cls.omega, "Rabi frequency; V = omega^2")->capture_default_str();
  classify->add_option("-T,--time", cls.time, "total time")->capture_default_str();
  classify->add_option("--n-max", cls.n_max, "largest probe step count")->capture_default_str();
  add_schedule_flags(classify, cls.schedule);
  classify->callback([&] { action = [&] { return cmd_classify(cls); }; });

  SweepOptions swp;
  auto* sweep = app.add_subcommand("sweep", "grid over one or two parameters");
  add_common(sweep);
  sweep->add_option("--omega", swp.omega, "Rabi frequency; V = omega^2")->capture_default_str();
  sweep->add_option("-T,--time", swp.time, "total time")->capture_default_str();
  sweep->add_option("-n,--steps", swp.steps, "number of steps when n is not varied");
  sweep->add_option("--vary", swp.vary,
                    "name=v1,v2,... | name=lin:start:stop:count | name=pow2:lo:hi over n, eta, alpha, beta, omega, T")
      ->allow_extra_args(false);
  add_schedule_flags(sweep, swp.schedule);
  sweep->callback([&] { action = [&] { return cmd_sweep(swp); }; });

  PhysicalOptions phy;
  auto* physical = app.add_subcommand("physical", "physical environment models");
  add_common(physical);
  physical->add_option("model,--model", phy.model, "free-particle, gaussian-pointer or brownian");
  add_optional(physical, "--mass", phy.mass, "particle mass [kg]");
  add_optional(physical, "--sigma", phy.sigma, "wave packet width [m]");
  add_optional(physical, "--hbar", phy.hbar, "reduced Planck constant [J s]");
  add_optional(physical, "--velocity", phy.velocity, "pointer velocity");
  add_optional(physical, "--diffusion", phy.diffusion, "diffusion constant D");
  add_optional(physical, "-T,--time", phy.time, "total time");
  physical->add_option("--c-ratio", phy.c_ratio, "interaction time ratio c")->capture_default_str();
  physical->add_option("--omega", phy.omega, "Rabi frequency for the limit")->capture_default_str();
  physical->callback([&] {
    action = [&] {
      if (phy.model.empty()) throw ValidationError("physical requires a model");
      return cmd_physical(phy);
    };
  });

  auto* recohere = app.add_subcommand("recohere", "recoherence demonstration");
  add_common(recohere);
  recohere->callback([&] { action = [] { return cmd_recohere(); }; });

  try {
    std::vector<std::string> args = merge_config_file(raw_args);
    std::reverse(args.begin(), args.end());
    try {
      app.parse(args);
    } catch (const CLI::ParseError& e) {
      if (e.get_exit_code() == 0) {
        app.exit(e, out, err);
        return kSuccess;
      }
      err << "error: " << e.what() << '\n';
      return kValidationError;
    }

    const Format format = parse_format(format_name);
    const Report report = action();
    for (const auto& warning : report.warnings) err << "warning: " << warning << '\n';

    std::ostringstream buffer;
    emit(report, format, buffer);
    if (output_path.empty()) {
      out << buffer.str();
      out.flush();
    } else {
      std::ofstream file(output_path, std::ios::binary | std::ios::trunc);
      if (!file) throw ValidationError("cannot open output path '" + output_path + "'");
      file << buffer.str();
      if (!file.flush()) throw ValidationError("failed writing '" + output_path + "'");
    }
    return kSuccess;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kValidationError;
  } catch (const CapacityError& e) {
    err << "error: " << e.what() << '\n';
    return kCapacityError;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kInternalError;
  }
}

}  // namespace zeno::cli
