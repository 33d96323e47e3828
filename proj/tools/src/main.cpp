#include <iostream>
#include <string>
#include <thread>

#include "CLI11.hpp"
#include "commands.hpp"
#include "run.hpp"

int main(int argc, char** argv) {
  using namespace simjoin::harness;

  CLI::App app{"Simulator for one-round similarity-join protocols on the Hamming cube"};
  app.set_version_flag("--version", version_string());
  app.require_subcommand(1);

  std::string config_path, out_dir = "results";
  unsigned jobs = std::max(1u, std::thread::hardware_concurrency());
  auto* run = app.add_subcommand("run", "Run an experiment sweep from a JSON config");
  run->add_option("--config", config_path, "Experiment config (JSON)")->required()->check(CLI::ExistingFile);
  run->add_option("--jobs", jobs, "Worker threads; affects wall-clock only")->check(CLI::PositiveNumber);
  run->add_option("--out", out_dir, "Output directory");

  VerifyOptions vopts;
  auto* verify = app.add_subcommand("verify", "Run the exact and Monte Carlo verification suite");
  verify->add_option("--scope", vopts.scope, "'all' or check ids")->delimiter(',');
  verify->add_option("--max-d", vopts.limits.max_d, "Largest dimension to check")->check(CLI::Range(1, 64));
  verify->add_option("--samples", vopts.limits.samples, "Monte Carlo samples per instance");
  verify->add_option("--seed", vopts.limits.seed, "Seed for generated instances");
  verify->add_option("--report", vopts.report_path, "Write the text report here");
  verify->add_option("--json", vopts.json_path, "Write a JSON report here");
  verify->add_flag("--quiet", vopts.quiet, "Print only summary lines");
  verify->add_flag("--list", "List check ids and exit");

  std::string input_path;
  int r = 0;
  auto* oracle = app.add_subcommand("oracle", "Print all pairs at distance <= r");
  oracle->add_option("--input", input_path, "Point-set file")->required();
  oracle->add_option("--r", r, "Distance threshold")->required()->check(CLI::NonNegativeNumber);

  DrawOptions dopts;
  auto* drw = app.add_subcommand("draw", "Write the sets A_0..A_{p-1} of one protocol draw");
  drw->add_option("--protocol", dopts.protocol, "Protocol kind")->required();
  drw->add_option("--d", dopts.d, "Dimension")->required();
  drw->add_option("--r", dopts.r, "Distance threshold");
  drw->add_option("--k", dopts.k, "Ball radius or subcube dimension");
  drw->add_option("--p", dopts.p, "Processors")->required();
  drw->add_option("--delta", dopts.delta, "Per-pair coverage target");
  drw->add_option("--seed", dopts.seed, "Base seed")->required();
  drw->add_option("--trial", dopts.trial, "Trial index");
  drw->add_option("--grid", dopts.grid, "Subcube grid: prefix or segments");
  drw->add_option("--out", dopts.out_dir, "Output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsageError;
  }

  if (*run) return cmd_run(config_path, jobs, out_dir, std::cout, std::cerr);
  if (*verify) {
    if (verify->count("--list") > 0) {
      for (const auto& id : check_ids()) std::cout << id << "\n";
      return 0;
    }
    return cmd_verify(vopts, std::cout, std::cerr);
  }
  if (*oracle) return cmd_oracle(input_path, r, std::cout, std::cerr);
  if (*drw) return cmd_draw(dopts, std::cout, std::cerr);
  return kUsageError;
}
