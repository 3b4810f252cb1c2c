// Copyright 2026 The colltherm Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// colltherm: parameter sweeps and validation for collisional thermometry.
//
//   colltherm heatmap  [--gamma-axis ...] [--theta-axis ...] --out f1.csv
//   colltherm scaling  --prep g,e,plus --n-max 10 --out scaling.csv
//   colltherm validate [--quick]
//
// Exit codes: 0 success, 1 validation failure, 2 usage or I/O error.

#include <fstream>
#include <iostream>
#include <numbers>
#include <thread>

#include <CLI11.hpp>

#include "colltherm/sweep.hpp"
#include "colltherm/validation.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitUsage = 2;

struct Options {
  colltherm::ModelParams params;
  std::vector<std::string> preps{"g"};
  int n_max = 10;
  int max_ancillas = 12;
  int threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  std::string out;
  bool quick = false;
  double rel_step = 1e-5;
  double support_cutoff = 1e-12;
  std::string gamma_axis = "0.01:3:40:log";
  std::string theta_axis = "0:1.5707963267948966:40:lin";
};

colltherm::SweepSpec make_spec(const Options& o) {
  colltherm::SweepSpec spec;
  spec.fixed = o.params;
  spec.fixed.validate();
  spec.preps.clear();
  spec.prep_names.clear();
  for (const std::string& p : o.preps) {
    spec.preps.push_back(colltherm::parse_prep(p));
    spec.prep_names.push_back(p.rfind("custom:", 0) == 0 ? "custom" : (p == "+" ? "plus" : p));
  }
  spec.n_max = o.n_max;
  spec.max_ancillas = o.max_ancillas;
  spec.threads = o.threads;
  spec.qfi_options = {o.rel_step, o.support_cutoff};
  return spec;
}

/// Writes via `emit` to --out or stdout.
template <class Emit>
void write_output(const std::string& path, Emit&& emit) {
  if (path.empty() || path == "-") {
    emit(std::cout);
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw colltherm::Error("cannot open output file '" + path + "'");
  emit(file);
  if (!file) throw colltherm::Error("failed writing '" + path + "'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Collisional quantum thermometry: Fisher-information sweeps and checks"};
  app.fallthrough();
  app.require_subcommand(1);
  app.set_config("--config", "", "Key = value file of defaults; command-line flags win");
  app.allow_config_extras(CLI::config_extras_mode::error);

  Options o;
  app.add_option("--temperature", o.params.temperature, "k_B T / (hbar omega)")
      ->capture_default_str();
  app.add_option("--omega", o.params.omega, "Qubit frequency")->capture_default_str();
  app.add_option("--gamma-tau-se,--gamma_tau_se", o.params.gamma_tau_se,
                 "System-environment coupling")
      ->capture_default_str();
  app.add_option("--g-tau-sa,--g_tau_sa", o.params.g_tau_sa,
                 "System-ancilla swap angle in [0, pi/2]")
      ->capture_default_str();
  app.add_option("--prep", o.preps, "Ancilla preparations: g, e, plus, custom:<file>")
      ->delimiter(',')
      ->capture_default_str();
  app.add_option("--n-max,--n_max", o.n_max, "Largest ancilla block for scaling")
      ->capture_default_str();
  app.add_option("--max-ancillas,--max_ancillas", o.max_ancillas,
                 "Hard cap on the block size (memory guard)")
      ->capture_default_str();
  app.add_option("--out", o.out, "Output path (default stdout)");
  app.add_option("--threads", o.threads, "Worker threads")->check(CLI::PositiveNumber);
  app.add_flag("--quick", o.quick, "Run the fast subset of validation checks");
  app.add_option("--rel-step,--rel_step", o.rel_step,
                 "Relative temperature step for derivatives")
      ->capture_default_str();
  app.add_option("--support-cutoff,--support_cutoff", o.support_cutoff,
                 "Relative eigenvalue cutoff for the QFI")
      ->capture_default_str();

  CLI::App* heatmap = app.add_subcommand("heatmap", "F_1 over (gamma_tau_se, g_tau_sa), N = 1");
  heatmap->add_option("--gamma-axis,--gamma_axis", o.gamma_axis, "min:max:count[:log|lin]")
      ->capture_default_str();
  heatmap->add_option("--theta-axis,--theta_axis", o.theta_axis, "min:max:count[:log|lin]")
      ->capture_default_str();
  CLI::App* scaling = app.add_subcommand("scaling", "F_N for N = 1..n-max per preparation");
  CLI::App* validate = app.add_subcommand("validate", "Analytic-vs-numeric consistency checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  if (o.max_ancillas > 12) {
    std::cerr << "warning: max-ancillas " << o.max_ancillas
              << " exceeds 12; a block of N ancillas needs 2^(N+1)-dimensional dense matrices "
                 "(N = 12 is ~1 GiB)\n";
  }

  try {
    if (*validate) {
      const auto checks = colltherm::run_validation({o.quick});
      const nlohmann::json report = colltherm::to_json(checks);
      write_output(o.out, [&](std::ostream& os) { os << report.dump(2) << "\n"; });
      if (!report["all_pass"].get<bool>()) {
        for (const auto& c : checks) {
          if (!c.pass) std::cerr << "FAILED: " << c.name << (c.note.empty() ? "" : ": " + c.note) << "\n";
        }
        return kExitValidation;
      }
      return kExitOk;
    }

    colltherm::SweepSpec spec = make_spec(o);
    if (*heatmap) {
      spec.axes = {colltherm::parse_axis("gamma_tau_se", o.gamma_axis),
                   colltherm::parse_axis("g_tau_sa", o.theta_axis)};
      if (spec.axes[1].max > std::numbers::pi / 2 + 1e-12) {
        throw colltherm::InvalidParameter("theta axis must stay within [0, pi/2]");
      }
      const auto rows = colltherm::compute_heatmap(spec);
      write_output(o.out, [&](std::ostream& os) { colltherm::write_heatmap_csv(os, spec, rows); });
    } else if (*scaling) {
      const auto rows = colltherm::compute_scaling(spec);
      write_output(o.out, [&](std::ostream& os) { colltherm::write_scaling_csv(os, spec, rows); });
    }
  } catch (const colltherm::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitOk;
}
