#include "snnlab/cli.hpp"

#include <CLI11.hpp>
#include <iomanip>
#include <iostream>

#include "snnlab/checkpoint.hpp"
#include "snnlab/csv.hpp"
#include "snnlab/demo.hpp"
#include "snnlab/errors.hpp"
#include "snnlab/eval.hpp"
#include "snnlab/stability.hpp"
#include "snnlab/trainer.hpp"

namespace snnlab {

namespace {

struct TrainArgs {
  std::string config_path;
  std::string out_dir = "runs/latest";
  std::string resume_path;
};

struct AttackEvalArgs {
  std::string checkpoint_path;
  std::string config_path;  // optional dataset override
  std::string csv_path = "attack_eval.csv";
  std::vector<std::string> kinds = {"clean", "fgsm", "pgd"};
  double epsilon_over_255 = 8.0;
  double step_over_255 = 0.0;  // 0 -> epsilon/4
  std::size_t iters = 10;
  std::uint64_t seed = 0;
  bool no_random_start = false;
};

struct GainCheckArgs {
  std::string checkpoint_path;
  std::string csv_path = "gain_check.csv";
  std::size_t trials = 200;
  std::size_t horizon = 0;  // 0 -> network T
  std::uint64_t seed = 0;
};

struct DemoArgs {
  std::size_t steps = 30;
  std::uint64_t seed = 0;
  std::string out_dir = "mppd_demo";
};

int cmd_train(const TrainArgs& args) {
  const Config cfg = Config::parse_file(args.config_path);
  const RunConfig rc = parse_run_config(cfg);
  Checkpoint resume;
  const Checkpoint* resume_ptr = nullptr;
  if (!args.resume_path.empty()) {
    resume = load_checkpoint(args.resume_path);
    resume_ptr = &resume;
  }
  const TrainOutcome out = run_training(rc, args.out_dir, resume_ptr);
  const EpochRecord& last = out.history.back();
  std::cout << "trained " << rc.train.epochs << " epochs; final task loss "
            << format_double(last.task_loss) << ", ms-mppd " << format_double(last.msmppd)
            << ", clean acc " << format_double(last.clean_acc) << ", pgd acc "
            << format_double(last.pgd_acc) << "\n";
  std::cout << "outputs in " << args.out_dir << " (metrics.csv, ckpt_final.bin)\n";
  return kExitOk;
}

int cmd_attack_eval(const AttackEvalArgs& args) {
  const Checkpoint ck = load_checkpoint(args.checkpoint_path);
  const Config cfg = args.config_path.empty()
                         ? Config::parse_string(ck.config_echo, "<checkpoint echo>")
                         : Config::parse_file(args.config_path);
  const RunConfig rc = parse_run_config(cfg);
  const Dataset eval_set = load_dataset(rc.eval_data);

  const double epsilon = args.epsilon_over_255 / 255.0;
  const double step = args.step_over_255 > 0.0 ? args.step_over_255 / 255.0 : epsilon / 4.0;

  CsvWriter csv;
  csv.metadata(run_metadata(args.seed, ck.net.lif.lambda, ck.net.lif.u_th, ck.net.steps,
                            rc.train.rho, rc.train.chi, rc.train.omega));
  csv.header({"attack", "epsilon", "step", "iters", "accuracy"});

  std::cout << std::left << std::setw(10) << "attack" << std::right << std::setw(10) << "accuracy"
            << "\n";
  for (const std::string& kind : args.kinds) {
    double acc = 0.0;
    double used_eps = epsilon, used_step = 0.0;
    std::size_t used_iters = 0;
    if (kind == "clean") {
      acc = clean_accuracy(ck.net, eval_set);
      used_eps = 0.0;
    } else if (kind == "fgsm") {
      AttackConfig a;
      a.kind = AttackKind::Fgsm;
      a.epsilon = epsilon;
      acc = attacked_accuracy(ck.net, eval_set, a, args.seed, rc.train.omega);
    } else if (kind == "pgd") {
      AttackConfig a;
      a.kind = AttackKind::Pgd;
      a.epsilon = epsilon;
      a.step = step;
      a.iters = args.iters;
      a.random_start = !args.no_random_start;
      acc = attacked_accuracy(ck.net, eval_set, a, args.seed, rc.train.omega);
      used_step = step;
      used_iters = args.iters;
    } else if (kind == "gaussian") {
      acc = gaussian_accuracy(ck.net, eval_set, epsilon, args.seed);
    } else {
      throw UsageError("attack-eval: unknown kind '" + kind +
                       "' (expected clean|fgsm|pgd|gaussian)");
    }
    csv.row({kind, format_double(used_eps), format_double(used_step),
             std::to_string(used_iters), format_double(acc)});
    std::cout << std::left << std::setw(10) << kind << std::right << std::setw(10)
              << format_double(acc) << "\n";
  }
  csv.commit(args.csv_path);
  std::cout << "wrote " << args.csv_path << "\n";
  return kExitOk;
}

int cmd_gain_check(const GainCheckArgs& args) {
  const Checkpoint ck = load_checkpoint(args.checkpoint_path);
  const std::vector<StabilityBound> bounds = audit_network(ck.net);
  const std::size_t horizon = args.horizon > 0 ? args.horizon : ck.net.steps;

  CsvWriter csv;
  csv.metadata(run_metadata(args.seed, ck.net.lif.lambda, ck.net.lif.u_th, ck.net.steps, 0.0, 0.5,
                            1.0) +
               " trials=" + std::to_string(args.trials) + " horizon=" + std::to_string(horizon));
  csv.header({"layer", "spectral", "leak", "gamma", "empirical", "gap", "note"});

  std::cout << std::left << std::setw(6) << "layer" << std::right << std::setw(12) << "spectral"
            << std::setw(10) << "leak" << std::setw(12) << "gamma" << std::setw(12) << "empirical"
            << std::setw(12) << "gap" << "  note\n";
  for (const StabilityBound& b : bounds) {
    std::string note = b.heuristic_leak ? "effective-leak heuristic" : "";
    if (!b.applicable) {
      csv.row({std::to_string(b.layer), format_double(b.spectral),
               format_double(b.effective_leak), "", "", "", "leak >= 1, bound inapplicable"});
      std::cout << std::left << std::setw(6) << b.layer << std::right << std::setw(12)
                << format_double(b.spectral) << std::setw(10) << format_double(b.effective_leak)
                << std::setw(12) << "-" << std::setw(12) << "-" << std::setw(12) << "-"
                << "  leak >= 1, bound inapplicable\n";
      continue;
    }
    Rng rng = Rng(args.seed).derive(b.layer);
    // The first layer is direct-coded, so its drive is a real-valued image
    // difference rather than a spike difference.
    const DriveKind drive = b.layer == 1 ? DriveKind::Real : DriveKind::SpikeDiff;
    const double emp = empirical_gain(ck.net.weights[b.layer - 1], b.effective_leak, args.trials,
                                      horizon, rng, drive);
    csv.row({std::to_string(b.layer), format_double(b.spectral), format_double(b.effective_leak),
             format_double(b.gamma), format_double(emp), format_double(b.gamma - emp), note});
    std::cout << std::left << std::setw(6) << b.layer << std::right << std::setw(12)
              << format_double(b.spectral) << std::setw(10) << format_double(b.effective_leak)
              << std::setw(12) << format_double(b.gamma) << std::setw(12) << format_double(emp)
              << std::setw(12) << format_double(b.gamma - emp) << "  " << note << "\n";
  }
  csv.commit(args.csv_path);
  std::cout << "wrote " << args.csv_path << "\n";
  return kExitOk;
}

int cmd_demo(const DemoArgs& args) {
  const MppdDemoResult r = run_mppd_demo(args.steps, args.seed);
  write_mppd_demo_outputs(r, args.seed, args.out_dir);
  std::cout << "constant scenario: first spike at t=" << r.first_spike_step
            << ", simplified eps[T]=" << format_double(r.eps_simplified.back()) << "\n";
  std::cout << "gaussian scenario: lag-1 autocorr noise=" << format_double(r.noise_lag1_autocorr)
            << " vs smoothed=" << format_double(r.eps_lag1_autocorr) << "\n";
  std::cout << "outputs in " << args.out_dir << "\n";
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
  CLI::App app{"Spiking network lab: training, attack evaluation, stability auditing"};
  app.require_subcommand(1);

  TrainArgs train_args;
  CLI::App* train = app.add_subcommand("train", "Train a network from a config file");
  train->add_option("--config", train_args.config_path, "key = value config file")->required();
  train->add_option("--out", train_args.out_dir, "output directory");
  train->add_option("--resume", train_args.resume_path, "checkpoint to resume from");

  AttackEvalArgs ae_args;
  CLI::App* ae = app.add_subcommand("attack-eval", "Evaluate clean/attacked accuracy");
  ae->add_option("--checkpoint", ae_args.checkpoint_path, "trained checkpoint")->required();
  ae->add_option("--config", ae_args.config_path, "config override for the eval dataset");
  ae->add_option("--csv", ae_args.csv_path, "output CSV path");
  ae->add_option("--kinds", ae_args.kinds, "subset of clean,fgsm,pgd,gaussian")->delimiter(',');
  ae->add_option("--epsilon-over-255", ae_args.epsilon_over_255, "budget in 1/255 units");
  ae->add_option("--step-over-255", ae_args.step_over_255, "PGD step (default epsilon/4)");
  ae->add_option("--iters", ae_args.iters, "PGD iterations");
  ae->add_option("--seed", ae_args.seed, "attack randomness seed");
  ae->add_flag("--no-random-start", ae_args.no_random_start, "disable PGD random start");

  GainCheckArgs gc_args;
  CLI::App* gc = app.add_subcommand("gain-check", "Per-layer stability bounds vs empirical gain");
  gc->add_option("--checkpoint", gc_args.checkpoint_path, "trained checkpoint")->required();
  gc->add_option("--csv", gc_args.csv_path, "output CSV path");
  gc->add_option("--trials", gc_args.trials, "random drives per layer");
  gc->add_option("--horizon", gc_args.horizon, "signal length (default network T)");
  gc->add_option("--seed", gc_args.seed, "drive sampling seed");

  DemoArgs demo_args;
  CLI::App* demo = app.add_subcommand("mppd-demo", "Perturbation-dynamics demonstration");
  demo->add_option("--steps", demo_args.steps, "time steps to simulate");
  demo->add_option("--seed", demo_args.seed, "noise seed");
  demo->add_option("--out", demo_args.out_dir, "output directory");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*train) return cmd_train(train_args);
    if (*ae) return cmd_attack_eval(ae_args);
    if (*gc) return cmd_gain_check(gc_args);
    if (*demo) return cmd_demo(demo_args);
    throw UsageError("no subcommand given");
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const DataError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  } catch (const NumericError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumeric;
  }
}

int run_cli(int argc, const char* const* argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run_cli(args);
}

}  // namespace snnlab
