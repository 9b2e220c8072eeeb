#include <exception>
#include <iostream>

#include "CLI11.hpp"
#include "commands.hpp"

int main(int argc, char** argv) {
  using namespace uscale::cli;
  CLI::App app{"Scale unitary matrices to unit line sums and decompose them as e^{ia} Z X Z"};
  app.require_subcommand(1);

  GlobalOptions global;
  app.add_option("--seed", global.seed, "Seed for every random draw")->capture_default_str();
  app.add_option("--tol", global.tol, "Line-sum residual that counts as converged")
      ->capture_default_str();
  app.add_option("--max-iter", global.max_iter, "Iteration budget")->capture_default_str();
  app.add_flag("--no-escape", global.no_escape, "Do not perturb away from stalls");
  app.add_option("-o,--output", global.output, "Output file (default: stdout)");

  ScaleOptions scale_opts;
  auto* scale_cmd = app.add_subcommand("scale", "Scale one matrix; writes result JSON and trace CSV");
  scale_cmd->add_option("input", scale_opts.input, "Matrix JSON file")->required();
  scale_cmd->add_option("--trace", scale_opts.trace,
                        "Trace CSV path, '-' for stdout (default: <output>.trace.csv)");

  DecomposeOptions dec_opts;
  auto* dec_cmd = app.add_subcommand("decompose", "ZXZ or XZXZXZ decomposition of one matrix");
  dec_cmd->add_option("input", dec_opts.input, "Matrix JSON file")->required();
  dec_cmd->add_option("--form", dec_opts.form, "zxz or xzxzxz")
      ->check(CLI::IsMember({"zxz", "xzxzxz"}))
      ->capture_default_str();
  dec_cmd->add_option("--branch", dec_opts.branch, "Analytic U(2) branch: first or second")
      ->check(CLI::IsMember({"first", "second"}))
      ->capture_default_str();

  RandomOptions rnd_opts;
  auto* rnd_cmd = app.add_subcommand("random", "Haar-random unitaries, one matrix JSON per line");
  rnd_cmd->add_option("-n,--n", rnd_opts.n, "Dimension")->required();
  rnd_cmd->add_option("--count", rnd_opts.count, "Number of matrices")->capture_default_str();

  ExperimentOptions exp_opts;
  auto* exp_cmd = app.add_subcommand("experiment", "Monte Carlo potential statistics as CSV");
  exp_cmd->add_option("--mode", exp_opts.mode, "table1, hist or corr")
      ->check(CLI::IsMember({"table1", "hist", "corr"}))
      ->capture_default_str();
  exp_cmd->add_option("-n,--n", exp_opts.n, "Dimension")->capture_default_str();
  exp_cmd->add_option("--samples", exp_opts.samples, "Number of random matrices")
      ->capture_default_str();
  exp_cmd->add_option("--checkpoints", exp_opts.checkpoints, "Iteration indices to record")
      ->delimiter(',');
  exp_cmd->add_flag("--escape", exp_opts.escape, "Enable stall escapes (default: bare iteration)");
  exp_cmd->add_option("--threads", exp_opts.threads, "Worker threads (0 = all cores)");

  GradcheckOptions grad_opts;
  auto* grad_cmd =
      app.add_subcommand("gradcheck", "Compare the analytic potential gradient to finite differences");
  grad_cmd->add_option("input", grad_opts.input, "Matrix JSON file");
  grad_cmd->add_option("--random", grad_opts.random_n, "Check random matrices of this size");
  grad_cmd->add_option("--count", grad_opts.count, "Number of random matrices")
      ->capture_default_str();
  grad_cmd->add_option("--step", grad_opts.h, "Finite-difference step")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitInvalid;
  }

  try {
    if (*scale_cmd) return run_scale(global, scale_opts, std::cout, std::cerr);
    if (*dec_cmd) return run_decompose(global, dec_opts, std::cout, std::cerr);
    if (*rnd_cmd) return run_random(global, rnd_opts, std::cout, std::cerr);
    if (*exp_cmd) return run_experiment(global, exp_opts, std::cout, std::cerr);
    if (*grad_cmd) {
      if (grad_opts.input.empty() && grad_opts.random_n == 0) {
        std::cerr << "error: gradcheck needs an input file or --random N\n";
        return kExitInvalid;
      }
      return run_gradcheck(global, grad_opts, std::cout, std::cerr);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInvalid;
  }
  return kExitInvalid;
}
