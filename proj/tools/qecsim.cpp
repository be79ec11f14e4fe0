// Command-line front end.
//
//   qecsim simulate  - one memory experiment, summary JSON
//   qecsim sweep     - logical error probability over code distances
//   qecsim fit       - exponential fit of a sweep output
//   qecsim track     - per-round rate-tracking time series (CSV)
//   qecsim calibrate - prior parameters for a target rate mean/sd
//
// Outputs are deterministic for a fixed config and seed (wall time goes to
// stderr only). Exit codes: 0 ok, 1 input error, 2 numerical error,
// 3 invariant violation.

#include <chrono>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qec/config.hpp"
#include "qec/errors.hpp"
#include "qec/harness.hpp"
#include "qec/noise.hpp"

namespace {

struct CommonArgs {
  std::string config_path;
  std::vector<std::string> overrides;
  std::string out_path;
  int threads = 1;
};

qec::ExperimentConfig load_config(const CommonArgs& args) {
  qec::ExperimentConfig config;
  if (!args.config_path.empty()) config = qec::parse_config_file(args.config_path);
  for (const auto& assignment : args.overrides) qec::apply_override(config, assignment);
  qec::validate_config(config);
  return config;
}

void add_common(CLI::App* cmd, CommonArgs* args, bool with_threads = true) {
  cmd->add_option("--config", args->config_path, "config file (sectioned key = value)");
  cmd->add_option("--set", args->overrides, "override, e.g. --set noise.seed=7")
      ->take_all();
  cmd->add_option("-o,--out", args->out_path, "output file (default: stdout)");
  if (with_threads)
    cmd->add_option("--threads", args->threads, "worker threads for shard execution");
}

template <typename WriteFn>
void emit(const std::string& out_path, WriteFn&& write) {
  if (out_path.empty()) {
    write(std::cout);
  } else {
    std::ofstream out(out_path);
    if (!out) throw qec::InputError("cannot open output file " + out_path);
    write(out);
  }
}

class StageTimer {
 public:
  StageTimer() : start_(std::chrono::steady_clock::now()) {}
  ~StageTimer() {
    const auto elapsed = std::chrono::steady_clock::now() - start_;
    std::cerr << "wall time: "
              << std::chrono::duration<double>(elapsed).count() << " s\n";
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"quantum error correction with real-time error-rate estimation"};
  app.require_subcommand(1);

  CommonArgs sim_args, sweep_args, track_args, fit_args;
  std::string fit_in;
  double cal_mean = 0.02, cal_sd = 0.01;
  std::string cal_out;

  CLI::App* sim = app.add_subcommand("simulate", "run one memory experiment");
  add_common(sim, &sim_args);

  CLI::App* sweep =
      app.add_subcommand("sweep", "logical error probability over distances");
  add_common(sweep, &sweep_args);

  CLI::App* fit = app.add_subcommand("fit", "fit -ln(p_log) = alpha d + delta");
  fit->add_option("-i,--in", fit_in, "sweep JSON file")->required();
  fit->add_option("-o,--out", fit_args.out_path, "output file (default: stdout)");

  CLI::App* track = app.add_subcommand("track", "per-round rate tracking (CSV)");
  add_common(track, &track_args, false);

  CLI::App* cal = app.add_subcommand("calibrate", "prior parameters for a rate target");
  cal->add_option("mean", cal_mean, "target mean error rate")->required();
  cal->add_option("sd", cal_sd, "target standard deviation of the rate")->required();
  cal->add_option("-o,--out", cal_out, "output file (default: stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    StageTimer timer;
    if (sim->parsed()) {
      const auto config = load_config(sim_args);
      const auto summary = qec::run_memory_experiment(config, sim_args.threads);
      emit(sim_args.out_path,
           [&](std::ostream& out) { qec::write_summary_json(out, config, summary); });
    } else if (sweep->parsed()) {
      const auto config = load_config(sweep_args);
      const auto results =
          qec::estimate_p_log(config, config.distances, sweep_args.threads);
      emit(sweep_args.out_path,
           [&](std::ostream& out) { qec::write_sweep_json(out, config, results); });
    } else if (fit->parsed()) {
      const auto results = qec::read_sweep_json(fit_in);
      std::vector<double> d, p, se;
      for (const auto& r : results) {
        d.push_back(r.d);
        p.push_back(r.p_log);
        se.push_back(r.stderr_);
      }
      const auto fit_result = qec::fit_exponential(d, p, se);
      emit(fit_args.out_path,
           [&](std::ostream& out) { qec::write_fit_json(out, fit_result); });
    } else if (track->parsed()) {
      qec::ExperimentConfig config;
      config.code_descriptor = "steane";
      config.decoder = qec::DecoderKind::Ideal;
      config.weights = qec::WeightsMode::AdaptiveSp;
      config.observer = qec::ObserverMode::Both;
      config.rounds = 50000;
      if (!track_args.config_path.empty())
        qec::parse_config_file_into(config, track_args.config_path);
      for (const auto& assignment : track_args.overrides)
        qec::apply_override(config, assignment);
      const auto result = qec::track_rates_experiment(config);
      emit(track_args.out_path,
           [&](std::ostream& out) { qec::write_rates_csv(out, result); });
    } else if (cal->parsed()) {
      const auto result = qec::calibrate_prior(cal_mean, cal_sd);
      emit(cal_out, [&](std::ostream& out) {
        char buf[128];
        std::snprintf(buf, sizeof buf,
                      "{\n  \"f0_mean\": %.17g,\n  \"sigma_f\": %.17g\n}\n",
                      result.f0_mean, result.sigma_f);
        out << buf;
      });
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return qec::exit_code_for(e);
  }
  return 0;
}
