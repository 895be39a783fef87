#include <CLI11.hpp>

#include <iostream>

#include "usynth/config.hpp"
#include "usynth/error.hpp"
#include "usynth/pipeline.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfigError = 1;
constexpr int kExitRuntimeError = 2;

struct CommonArgs {
  std::string configPath;
  usynth::ConfigOverrides overrides;
  int threads = 0;
};

void AddCommonOptions(CLI::App* cmd, CommonArgs& args)
{
  cmd->add_option("config", args.configPath, "scenario configuration (JSON)")->required();
  cmd->add_option("--seed", [&args](const CLI::results_t& r) {
        args.overrides.seed = std::stoull(r[0]);
        return true;
      }, "override the scenario seed");
  cmd->add_option("--frames", [&args](const CLI::results_t& r) {
        args.overrides.frames = std::stoi(r[0]);
        return true;
      }, "override the frame count");
  cmd->add_option("--weather", [&args](const CLI::results_t& r) {
        args.overrides.weather = r[0];
        return true;
      }, "override the weather (sunny|cloudy|rainy|foggy)");
  cmd->add_option("--time-of-day", [&args](const CLI::results_t& r) {
        args.overrides.timeOfDay = std::stod(r[0]);
        return true;
      }, "override the starting hour [0, 24)");
  cmd->add_option("--output", [&args](const CLI::results_t& r) {
        args.overrides.output = r[0];
        return true;
      }, "override the output directory");
  cmd->add_option("--threads", args.threads, "worker threads (0 = all cores)");
}

usynth::ScenarioConfig LoadOrExit(const CommonArgs& args)
{
  std::vector<std::string> violations;
  usynth::ScenarioConfig config =
      usynth::LoadScenarioConfig(args.configPath, args.overrides, &violations);
  if (!violations.empty()) {
    std::cerr << "invalid configuration (" << violations.size() << " problem"
              << (violations.size() == 1 ? "" : "s") << "):\n";
    for (const std::string& v : violations) std::cerr << "  - " << v << "\n";
    std::exit(kExitConfigError);
  }
  return config;
}

}  // namespace

int main(int argc, char** argv)
{
  CLI::App app{"urbansynth: synthetic urban traffic scenes with pixel-accurate ground truth"};
  app.require_subcommand(1);

  CommonArgs validateArgs, runArgs, previewArgs;
  double previewTime = 0.0;

  CLI::App* validate = app.add_subcommand("validate", "check a scenario configuration");
  validate->add_option("config", validateArgs.configPath, "scenario configuration (JSON)")
      ->required();

  CLI::App* run = app.add_subcommand("run", "generate the full dataset");
  AddCommonOptions(run, runArgs);

  CLI::App* preview = app.add_subcommand("preview", "render a single frame for inspection");
  AddCommonOptions(preview, previewArgs);
  preview->add_option("--time", previewTime, "capture time in seconds")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (validate->parsed()) {
      const auto violations = usynth::ValidateConfigFile(validateArgs.configPath);
      if (violations.empty()) {
        std::cout << "configuration is valid\n";
        return kExitOk;
      }
      std::cout << violations.size() << " problem" << (violations.size() == 1 ? "" : "s")
                << " found:\n";
      for (const std::string& v : violations) std::cout << "  - " << v << "\n";
      return kExitConfigError;
    }

    if (run->parsed()) {
      const usynth::ScenarioConfig config = LoadOrExit(runArgs);
      usynth::RunOptions options;
      options.threads = runArgs.threads;
      options.printProgress = true;
      usynth::RunPipeline(config, options);
      return kExitOk;
    }

    if (preview->parsed()) {
      const usynth::ScenarioConfig config = LoadOrExit(previewArgs);
      usynth::RunOptions options;
      options.threads = previewArgs.threads;
      usynth::PreviewFrame(config, previewTime, options);
      return kExitOk;
    }
  } catch (const usynth::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntimeError;
  } catch (const std::exception& e) {
    std::cerr << "unexpected error: " << e.what() << "\n";
    return kExitRuntimeError;
  }
  return kExitOk;
}
