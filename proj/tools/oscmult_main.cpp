// Copyright (c) 2026 oscmult contributors
// SPDX-License-Identifier: Apache-2.0
#include <cstdio>
#include <deque>
#include <exception>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "oscmult/dyadic.hpp"
#include "oscmult/experiments.hpp"
#include "oscmult/io.hpp"

namespace {

using nlohmann::json;
using oscmult::ConfigError;
using oscmult::ExperimentResult;
using oscmult::ResolutionError;

enum class Kind { num, integer, boolean, str, int_list, num_list };

struct ParamDesc {
  const char* flag;
  const char* key;
  Kind kind;
  const char* section;  // "params" or "tolerances"
  const char* help;
};

const std::vector<ParamDesc>& params_for(const std::string& experiment) {
  static const std::map<std::string, std::vector<ParamDesc>> table = {
      {"class-check",
       {{"--s", "s", Kind::num, "params", "smoothness exponent"},
        {"--n", "n", Kind::integer, "params", "ambient dimension (1)"},
        {"--j-lo", "j_lo", Kind::integer, "params", "lowest dyadic index"},
        {"--j-hi", "j_hi", Kind::integer, "params", "highest dyadic index"}}},
      {"kernel",
       {{"--lam-min", "lam_min", Kind::num, "params", "lower spectral truncation"},
        {"--lam-max", "lam_max", Kind::num, "params", "upper spectral truncation"},
        {"--extent", "extent", Kind::num, "params", "grid half width"},
        {"--points", "points", Kind::integer, "params", "grid points per axis"},
        {"--dim", "dim", Kind::integer, "params", "ambient dimension (1-3)"}}},
      {"fs-condition",
       {{"--lam-min", "lam_min", Kind::num, "params", "lower spectral truncation"},
        {"--lam-max", "lam_max", Kind::num, "params", "upper spectral truncation"},
        {"--extent", "extent", Kind::num, "params", "grid half width"},
        {"--points", "points", Kind::integer, "params", "grid points"},
        {"--ys", "ys", Kind::num_list, "params", "shift magnitudes"}}},
      {"key-estimate",
       {{"--s", "s", Kind::num, "params", "smoothness exponent"},
        {"--trials", "trials", Kind::integer, "params", "number of random profiles"},
        {"--extent", "extent", Kind::num, "params", "grid half width"},
        {"--points", "points", Kind::integer, "params", "grid points"}}},
      {"lp-scan",
       {{"--ps", "ps", Kind::num_list, "params", "Lebesgue exponents"},
        {"--ladder", "ladder", Kind::int_list, "params", "truncation rungs J"}}},
      {"plancherel",
       {{"--n-xy", "n_xy", Kind::integer, "params", "horizontal grid points"},
        {"--n-t", "n_t", Kind::integer, "params", "vertical grid points"},
        {"--ratio-max", "ratio_max", Kind::num, "tolerances", "mass-ratio deviation budget"},
        {"--slope-tol", "slope_tol", Kind::num, "tolerances", "dilation-slope budget"}}},
      {"heat-oracle",
       {{"--extent-xy", "extent_xy", Kind::num, "params", "horizontal half width"},
        {"--extent-t", "extent_t", Kind::num, "params", "vertical half width"},
        {"--n-xy", "n_xy", Kind::integer, "params", "horizontal grid points"},
        {"--n-t", "n_t", Kind::integer, "params", "vertical grid points"},
        {"--region", "region", Kind::num, "params", "comparison region radius"},
        {"--rel-max", "rel_max", Kind::num, "tolerances", "relative error budget"},
        {"--mass-tol", "mass_tol", Kind::num, "tolerances", "mass defect budget"}}},
      {"weighted-l2",
       {{"--s", "s", Kind::num, "params", "weight exponent"},
        {"--js", "js", Kind::int_list, "params", "dyadic indices"}}},
      {"mean-value",
       {{"--n-xy", "n_xy", Kind::integer, "params", "horizontal grid points"},
        {"--n-t", "n_t", Kind::integer, "params", "vertical grid points"},
        {"--exponent-n", "exponent_n", Kind::num, "params", "decay exponent in the quotient"},
        {"--probes", "probes", Kind::integer, "params", "random probe count"}}},
      {"key-lie-probe",
       {{"--s-grid", "s_grid", Kind::num_list, "params", "smoothness exponents"},
        {"--j-lo", "j_lo", Kind::integer, "params", "lowest dyadic index"},
        {"--j-hi", "j_hi", Kind::integer, "params", "highest dyadic index"}}},
      {"cz",
       {{"--cases", "cases", Kind::integer, "params", "randomized case count"},
        {"--line-extent", "line_extent", Kind::num, "params", "line grid half width"},
        {"--line-points", "line_points", Kind::integer, "params", "line grid points"},
        {"--square-extent", "square_extent", Kind::num, "params", "square grid half width"},
        {"--square-points", "square_points", Kind::integer, "params", "square grid points"},
        {"--alpha-lo", "alpha_lo", Kind::num, "params", "lowest height multiple"},
        {"--alpha-span", "alpha_span", Kind::num, "params", "height multiple span"}}},
      {"weak-type",
       {{"--ladder", "ladder", Kind::int_list, "params", "truncation rungs J"},
        {"--spike-spread-max", "spike_spread_max", Kind::num, "tolerances",
         "assert the spike-constant spread stays under this"}}},
      {"atom-test",
       {{"--J", "J", Kind::integer, "params", "truncation rung"},
        {"--shape", "shape", Kind::str, "params", "atom shape: bump, step, random"},
        {"--levels", "levels", Kind::int_list, "params", "ball scales 2^L"},
        {"--ablate", "ablate", Kind::boolean, "params", "strip the sign pattern"},
        {"--far-spread-max", "far_spread_max", Kind::num, "tolerances",
         "assert the far-field spread stays under this"}}},
      {"tail-sum",
       {{"--s", "s", Kind::num, "params", "weight exponent"},
        {"--js", "js", Kind::int_list, "params", "dyadic indices"},
        {"--levels", "levels", Kind::int_list, "params", "ball scales 2^L"},
        {"--slope-tol", "slope_tol", Kind::num, "tolerances",
         "assert the fitted slope matches the expected one within this"}}},
      {"lambda",
       {{"--j", "j", Kind::integer, "params", "dyadic index"},
        {"--level", "level", Kind::integer, "params", "ball scale exponent"},
        {"--theta", "theta", Kind::num, "params", "oscillation exponent"},
        {"--s", "s", Kind::num, "params", "smoothness exponent"},
        {"--s-star", "s_star", Kind::num, "params", "companion exponent (small-j regime)"},
        {"--q", "q", Kind::num, "params", "homogeneous dimension"},
        {"--threshold", "threshold", Kind::num, "params", "regime threshold added to j"},
        {"--regime", "regime", Kind::str, "params", "n1 or n2"}}},
      {"paper-suite", {}},
  };
  static const std::vector<ParamDesc> empty;
  const auto it = table.find(experiment);
  return it == table.end() ? empty : it->second;
}

struct OptionSlot {
  ParamDesc desc;
  CLI::Option* opt = nullptr;
  double num = 0.0;
  long long integer = 0;
  bool flag = false;
  std::string str;
  std::vector<double> nums;
  std::vector<int> ints;
};

struct SubState {
  std::string experiment;
  std::string config_path;
  std::uint64_t seed = 0;
  CLI::Option* seed_opt = nullptr;
  double theta = 0.0, beta = 0.0;
  CLI::Option* theta_opt = nullptr
             , *beta_opt = nullptr;
  std::string out_csv, out_summary, out_manifest, out_kernel;
  CLI::Option* csv_opt = nullptr, *summary_opt = nullptr, *manifest_opt = nullptr,
             *kernel_opt = nullptr;
  std::deque<OptionSlot> slots;
};

bool takes_multiplier(const std::string& experiment) {
  static const std::vector<std::string> with_spec = {
      "class-check", "kernel",    "fs-condition", "lp-scan",  "weighted-l2",
      "key-lie-probe", "weak-type", "atom-test",  "tail-sum",
  };
  return std::find(with_spec.begin(), with_spec.end(), experiment) != with_spec.end();
}

json load_config(const std::string& path) {
  const std::string text = oscmult::read_text_file(path);
  return json::parse(text);
}

json build_config(const SubState& st) {
  json config = st.config_path.empty() ? json::object() : load_config(st.config_path);
  if (!config.is_object()) throw ConfigError("config: must be a JSON object");
  config["experiment"] = st.experiment;
  if (st.seed_opt->count()) config["seed"] = st.seed;
  if (st.theta_opt && st.theta_opt->count()) config["multiplier"]["theta"] = st.theta;
  if (st.beta_opt && st.beta_opt->count()) config["multiplier"]["beta"] = st.beta;
  for (const OptionSlot& slot : st.slots) {
    if (!slot.opt->count()) continue;
    json& dst = config[slot.desc.section][slot.desc.key];
    switch (slot.desc.kind) {
      case Kind::num: dst = slot.num; break;
      case Kind::integer: dst = slot.integer; break;
      case Kind::boolean: dst = slot.flag; break;
      case Kind::str: dst = slot.str; break;
      case Kind::int_list: dst = slot.ints; break;
      case Kind::num_list: dst = slot.nums; break;
    }
  }
  if (st.csv_opt->count()) config["output"]["csv"] = st.out_csv;
  if (st.summary_opt->count()) config["output"]["summary"] = st.out_summary;
  if (st.manifest_opt->count()) config["output"]["manifest"] = st.out_manifest;
  if (st.kernel_opt->count()) config["output"]["kernel"] = st.out_kernel;
  return config;
}

void print_battery(const json& summary) {
  for (const json& row : summary.at("metrics").at("criteria")) {
    std::printf("[%s] %2d. %s: %s (%.1f s)\n", row.at("pass").get<bool>() ? "PASS" : "FAIL",
                row.at("criterion").get<int>(), row.at("name").get<std::string>().c_str(),
                row.at("detail").get<std::string>().c_str(), row.at("seconds").get<double>());
  }
}

int execute(const json& config) {
  ExperimentResult result;
  try {
    result = oscmult::run_experiment(config);
    oscmult::write_artifacts(result);
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const ResolutionError& e) {
    std::fprintf(stderr, "resolution error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }

  if (result.experiment == "paper-suite") {
    print_battery(result.summary);
  } else {
    std::printf("%s\n", result.summary.dump(2).c_str());
  }
  std::printf("%s: %s\n", result.experiment.c_str(), result.pass ? "pass" : "FAIL");
  return result.pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"oscillating spectral multipliers: kernels, decompositions, and experiments"};
  app.require_subcommand(0, 1);

  bool list = false;
  app.add_flag("--list", list, "list every experiment and exit");

  std::deque<SubState> states;
  int exit_code = 0;
  bool ran = false;

  for (const auto& [name, description] : oscmult::experiment_catalog()) {
    CLI::App* sub = app.add_subcommand(name, description);
    states.emplace_back();
    SubState& st = states.back();
    st.experiment = name;
    sub->add_option("--config", st.config_path, "JSON config the flags override");
    st.seed_opt = sub->add_option("--seed", st.seed, "RNG seed (mandatory here or in the config)");
    if (takes_multiplier(name)) {
      st.theta_opt = sub->add_option("--theta", st.theta, "multiplier oscillation exponent");
      st.beta_opt = sub->add_option("--beta", st.beta, "multiplier decay exponent");
    }
    st.csv_opt = sub->add_option("--csv", st.out_csv, "write the CSV table here");
    st.summary_opt = sub->add_option("--summary", st.out_summary, "write the JSON summary here");
    st.manifest_opt =
        sub->add_option("--manifest", st.out_manifest, "write the resolved-config manifest here");
    st.kernel_opt =
        sub->add_option("--kernel-out", st.out_kernel, "write the kernel in the binary layout");
    for (const ParamDesc& desc : params_for(name)) {
      states.back().slots.emplace_back();
      OptionSlot& slot = states.back().slots.back();
      slot.desc = desc;
      switch (desc.kind) {
        case Kind::num: slot.opt = sub->add_option(desc.flag, slot.num, desc.help); break;
        case Kind::integer: slot.opt = sub->add_option(desc.flag, slot.integer, desc.help); break;
        case Kind::boolean: slot.opt = sub->add_flag(desc.flag, slot.flag, desc.help); break;
        case Kind::str: slot.opt = sub->add_option(desc.flag, slot.str, desc.help); break;
        case Kind::int_list:
          slot.opt = sub->add_option(desc.flag, slot.ints, desc.help)->delimiter(',');
          break;
        case Kind::num_list:
          slot.opt = sub->add_option(desc.flag, slot.nums, desc.help)->delimiter(',');
          break;
      }
    }
    sub->callback([&st, &exit_code, &ran]() {
      ran = true;
      try {
        exit_code = execute(build_config(st));
      } catch (const std::exception& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        exit_code = 2;
      }
    });
  }

  std::string run_path;
  CLI::App* run_sub = app.add_subcommand("run", "run an experiment from a JSON config");
  run_sub->add_option("config", run_path, "config file path")->required();
  run_sub->callback([&run_path, &exit_code, &ran]() {
    ran = true;
    json config;
    try {
      config = load_config(run_path);
    } catch (const std::exception& e) {
      std::fprintf(stderr, "config error: %s\n", e.what());
      exit_code = 2;
      return;
    }
    exit_code = execute(config);
  });

  CLI11_PARSE(app, argc, argv);

  if (list) {
    for (const auto& [name, description] : oscmult::experiment_catalog())
      std::printf("%-14s %s\n", name.c_str(), description.c_str());
    return 0;
  }
  if (!ran) {
    std::printf("%s\n", app.help().c_str());
    return 0;
  }
  return exit_code;
}
