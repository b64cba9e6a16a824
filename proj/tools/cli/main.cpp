#include <CLI11.hpp>
#include <iostream>

#include "commands.hpp"
#include "nhnc/errors.hpp"
#include "nhnc/kernels.hpp"
#include "nhnc/wigner.hpp"

using namespace nhnc::cli;

int main(int argc, char** argv) {
  CLI::App app{"Non-Hermitian noncommutative oscillator toolkit"};
  app.require_subcommand(1);
  std::string config_path;
  int levels = 6;
  std::string method = "both";

  auto* check = app.add_subcommand("check-algebra", "star-commutator and SW property suites");
  check->add_option("config", config_path, "config file")->required();

  std::string stage = "nhnc";
  bool show_map = false, crosscheck = false;
  auto* transform = app.add_subcommand("transform", "print the symbol at one pipeline stage");
  transform->add_option("config", config_path, "config file")->required();
  transform->add_option("--stage", stage, "nhnc | hnc | hc")->check(CLI::IsMember({"nhnc", "hnc", "hc"}));
  transform->add_flag("--show-map", show_map, "append the SW matrices as CSV");
  transform->add_flag("--crosscheck", crosscheck, "compare with the hand-coded stage");

  auto* spectrum = app.add_subcommand("spectrum", "closed-form and/or oracle levels as CSV");
  spectrum->add_option("config", config_path, "config file")->required();
  spectrum->add_option("--levels", levels, "number of levels")->check(CLI::PositiveNumber);
  spectrum->add_option("--method", method, "closed | oracle | both")
      ->check(CLI::IsMember({"closed", "oracle", "both"}));

  int jobs = 0;
  auto* sweep = app.add_subcommand("sweep", "spectrum over the config's sweep grid as CSV");
  sweep->add_option("config", config_path, "config file")->required();
  sweep->add_option("--levels", levels, "levels per point")->check(CLI::PositiveNumber);
  sweep->add_option("--method", method, "closed | oracle | both")
      ->check(CLI::IsMember({"closed", "oracle", "both"}));
  sweep->add_option("--jobs", jobs, "worker threads (0 = all cores)")->check(CLI::NonNegativeNumber);

  int mode = 1, count = 129;
  std::string state = "ground";
  auto* wigner = app.add_subcommand("wigner", "single-mode Wigner grid of an eigenstate as CSV");
  wigner->add_option("config", config_path, "config file")->required();
  wigner->add_option("--mode", mode, "1 or 2")->check(CLI::Range(1, 2));
  wigner->add_option("--state", state, "ground or a level n");
  wigner->add_option("--count", count, "grid nodes per axis")->check(CLI::Range(nhnc::kMinGridCount, 4097));

  auto* errata = app.add_subcommand("errata", "closed-form readings vs oracle over the sweep grid");
  errata->add_option("config", config_path, "config file with the grid as sweep axes")->required();
  errata->add_option("--levels", levels, "levels per point")->check(CLI::PositiveNumber);

  std::string backend;
  app.add_option("--simd", backend, "force the kernel backend")->check(CLI::IsMember({"scalar", "avx2"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kValidation;
  }

  try {
    if (backend == "scalar") nhnc::kernels::set_backend(nhnc::kernels::Backend::scalar);
    if (backend == "avx2") nhnc::kernels::set_backend(nhnc::kernels::Backend::avx2);
    const RunConfig cfg = load_config(config_path);
    if (*check) return cmd_check_algebra(cfg, std::cout);
    if (*transform) return cmd_transform(cfg, stage, show_map, crosscheck, std::cout);
    if (*spectrum) return cmd_spectrum(cfg, levels, parse_method(method), std::cout, std::cerr);
    if (*sweep) return cmd_sweep(cfg, levels, parse_method(method), jobs, std::cout);
    if (*wigner) return cmd_wigner(cfg, mode, state, count, std::cout);
    if (*errata) return cmd_errata(cfg, levels, std::cout);
  } catch (const nhnc::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kValidation;
  }
  return kValidation;
}
