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

#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "colltherm/estimation.hpp"

namespace colltherm {

/// Runs fn(i) for i in [0, count) on `threads` workers. Each index is
/// visited exactly once; results must be written to per-index slots.
template <class F>
void parallel_for(std::size_t count, int threads, F&& fn) {
  const int workers = std::max(1, std::min<int>(threads, static_cast<int>(count)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) fn(i);
    });
  }
}

/// Shortest round-trip-safe rendering used in every CSV: 17 significant digits.
inline std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

/// One swept parameter: `count` points from min to max, linear or log spaced.
struct Axis {
  std::string name;
  double min = 0.0;
  double max = 1.0;
  int count = 2;
  bool log = false;

  void validate() const {
    static constexpr std::string_view known[] = {"temperature", "omega", "gamma_tau_se",
                                                 "g_tau_sa", "n"};
    if (std::find(std::begin(known), std::end(known), name) == std::end(known)) {
      throw InvalidParameter("unknown sweep parameter '" + name + "'");
    }
    if (count < 2) throw InvalidParameter("axis " + name + ": count must be at least 2");
    if (!(min < max)) throw InvalidParameter("axis " + name + ": min must be below max");
    if (log && !(min > 0.0)) throw InvalidParameter("axis " + name + ": log axis needs min > 0");
  }

  std::vector<double> values() const {
    validate();
    std::vector<double> v(count);
    for (int i = 0; i < count; ++i) {
      const double f = static_cast<double>(i) / (count - 1);
      v[i] = log ? std::exp(std::log(min) + f * (std::log(max) - std::log(min)))
                 : min + f * (max - min);
    }
    v.back() = max;
    return v;
  }

  std::string describe() const {
    return format_double(min) + ":" + format_double(max) + ":" + std::to_string(count) +
           (log ? ":log" : ":lin");
  }
};

/// Parses "min:max:count[:log|:lin]".
inline Axis parse_axis(const std::string& name, const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ':');) parts.push_back(item);
  if (parts.size() < 3 || parts.size() > 4) {
    throw InvalidParameter("axis '" + text + "' must look like min:max:count[:log|lin]");
  }
  Axis axis;
  axis.name = name;
  try {
    axis.min = std::stod(parts[0]);
    axis.max = std::stod(parts[1]);
    axis.count = std::stoi(parts[2]);
  } catch (const std::exception&) {
    throw InvalidParameter("axis '" + text + "' has a non-numeric field");
  }
  if (parts.size() == 4) {
    if (parts[3] == "log") axis.log = true;
    else if (parts[3] != "lin") throw InvalidParameter("axis scale must be 'log' or 'lin'");
  }
  axis.validate();
  return axis;
}

/// Reads a single-qubit density matrix: eight whitespace-separated numbers,
/// row-major "re im" pairs; '#' starts a comment.
inline CustomPrep read_custom_prep(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open custom preparation file '" + path + "'");
  std::vector<double> numbers;
  for (std::string line; std::getline(in, line);) {
    line = line.substr(0, line.find('#'));
    std::istringstream ls(line);
    for (double x; ls >> x;) numbers.push_back(x);
    if (!ls.eof()) throw InvalidParameter("non-numeric entry in '" + path + "'");
  }
  if (numbers.size() != 8) {
    throw InvalidParameter("custom preparation needs 8 numbers (2x2 complex), got " +
                           std::to_string(numbers.size()));
  }
  ComplexMatrix m(2, 2);
  for (int k = 0; k < 4; ++k) m(k / 2, k % 2) = Complex(numbers[2 * k], numbers[2 * k + 1]);
  return make_custom_prep(m);
}

/// Parses g | e | plus | custom:<file>.
inline AncillaPrep parse_prep(const std::string& text) {
  if (text == "g") return GroundPrep{};
  if (text == "e") return ExcitedPrep{};
  if (text == "plus" || text == "+") return PlusPrep{};
  if (text.rfind("custom:", 0) == 0) return read_custom_prep(text.substr(7));
  throw InvalidParameter("unknown ancilla preparation '" + text + "' (g, e, plus, custom:<file>)");
}

struct SweepSpec {
  std::vector<Axis> axes;
  ModelParams fixed;
  std::vector<AncillaPrep> preps{GroundPrep{}};
  std::vector<std::string> prep_names{"g"};
  int n_max = 1;
  int max_ancillas = 12;
  int threads = 1;
  QfiOptions qfi_options;

  const Axis* axis(std::string_view name) const {
    for (const Axis& a : axes) {
      if (a.name == name) return &a;
    }
    return nullptr;
  }

  /// Resolved configuration, one "key = value" per entry.
  std::vector<std::string> describe() const {
    std::vector<std::string> out;
    out.push_back("omega = " + format_double(fixed.omega));
    out.push_back("temperature = " + format_double(fixed.temperature));
    out.push_back("n_bar = " + format_double(fixed.n_bar()));
    out.push_back("gamma_tau_se = " + format_double(fixed.gamma_tau_se));
    out.push_back("g_tau_sa = " + format_double(fixed.g_tau_sa));
    std::string preps_joined;
    for (std::size_t i = 0; i < prep_names.size(); ++i) {
      preps_joined += (i ? "," : "") + prep_names[i];
    }
    out.push_back("prep = " + preps_joined);
    out.push_back("n_max = " + std::to_string(n_max));
    for (const Axis& a : axes) out.push_back(a.name + " axis = " + a.describe());
    out.push_back("rel_step = " + format_double(qfi_options.rel_step));
    out.push_back("support_cutoff = " + format_double(qfi_options.support_cutoff));
    return out;
  }
};

inline void write_header_comments(std::ostream& os, const std::string& title,
                                  const SweepSpec& spec) {
  os << "# colltherm " << title << "\n";
  os << "# units: hbar = k_B = 1; energies in units of omega, temperature as k_B T / (hbar omega)\n";
  for (const std::string& line : spec.describe()) os << "# " << line << "\n";
}

// ---------------------------------------------------------------------------
// Heatmap: F_1 over the (gamma_tau_se, g_tau_sa) plane.

struct HeatmapRow {
  double gamma_tau_se = 0.0;
  double g_tau_sa = 0.0;
  QfiResult qfi;
  double f_th = 0.0;
  std::optional<std::string> error;
};

inline std::vector<HeatmapRow> compute_heatmap(const SweepSpec& spec) {
  if (spec.axes.size() != 2 || !spec.axis("gamma_tau_se") || !spec.axis("g_tau_sa")) {
    throw InvalidParameter("heatmap sweeps exactly gamma_tau_se and g_tau_sa");
  }
  if (spec.preps.size() != 1) throw InvalidParameter("heatmap takes exactly one preparation");
  const std::vector<double> gammas = spec.axis("gamma_tau_se")->values();
  const std::vector<double> thetas = spec.axis("g_tau_sa")->values();

  std::vector<HeatmapRow> rows(gammas.size() * thetas.size());
  parallel_for(rows.size(), spec.threads, [&](std::size_t k) {
    HeatmapRow& row = rows[k];
    row.gamma_tau_se = gammas[k / thetas.size()];
    row.g_tau_sa = thetas[k % thetas.size()];
    try {
      ChainConfig config{spec.fixed, 1, spec.max_ancillas};
      config.params.gamma_tau_se = row.gamma_tau_se;
      config.params.g_tau_sa = row.g_tau_sa;
      config.params.ancilla_prep = spec.preps.front();
      row.f_th = thermal_fisher_information(config.params);
      row.qfi = qfi_chain(config, spec.qfi_options);
    } catch (const std::exception& e) {
      row.error = e.what();
    }
  });
  return rows;
}

namespace detail {
inline std::string csv_escape(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += (c == '\n' ? ' ' : c);
  }
  return out + "\"";
}
}  // namespace detail

inline void write_heatmap_csv(std::ostream& os, const SweepSpec& spec,
                              const std::vector<HeatmapRow>& rows) {
  const bool any_error = std::any_of(rows.begin(), rows.end(), [](const HeatmapRow& r) {
    return r.error.has_value();
  });
  write_header_comments(os, "heatmap (N = 1)", spec);
  os << "gamma_tau_se,g_tau_sa,f1,f1_over_fth,n_truncated,richardson_err"
     << (any_error ? ",error" : "") << "\n";
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (const HeatmapRow& r : rows) {
    const bool ok = !r.error;
    os << format_double(r.gamma_tau_se) << ',' << format_double(r.g_tau_sa) << ','
       << format_double(ok ? r.qfi.value : nan) << ','
       << format_double(ok ? r.qfi.value / r.f_th : nan) << ','
       << (ok ? std::to_string(r.qfi.n_truncated_pairs) : "nan") << ','
       << format_double(ok ? r.qfi.richardson_error_estimate : nan);
    if (any_error) os << ',' << (ok ? "" : detail::csv_escape(*r.error));
    os << '\n';
  }
}

// ---------------------------------------------------------------------------
// Scaling: F_N for N = 1..n_max per preparation.

struct ScalingRow {
  std::string prep;
  int n = 1;
  double f_n = 0.0;
  double f_n_over_fth = 0.0;
  double f_n_over_n_f1 = 0.0;
  bool computed = false;  // f_n is valid even if the ratio is not
  std::optional<std::string> error;
};

inline std::vector<ScalingRow> compute_scaling(const SweepSpec& spec) {
  if (spec.n_max < 1) throw InvalidParameter("n_max must be at least 1");
  if (spec.n_max > spec.max_ancillas) throw ExceedsAncillaCap(spec.n_max, spec.max_ancillas);
  if (spec.preps.empty()) throw InvalidParameter("scaling needs at least one preparation");
  const std::size_t per_prep = static_cast<std::size_t>(spec.n_max);
  std::vector<ScalingRow> rows(spec.preps.size() * per_prep);
  const double f_th = thermal_fisher_information(spec.fixed);

  // Largest blocks first so the long evaluations start early.
  std::vector<std::size_t> order(rows.size());
  for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return a % per_prep > b % per_prep;
  });

  parallel_for(rows.size(), spec.threads, [&](std::size_t job) {
    const std::size_t k = order[job];
    ScalingRow& row = rows[k];
    row.prep = spec.prep_names[k / per_prep];
    row.n = static_cast<int>(k % per_prep) + 1;
    try {
      ChainConfig config{spec.fixed, row.n, spec.max_ancillas};
      config.params.ancilla_prep = spec.preps[k / per_prep];
      row.f_n = qfi_chain(config, spec.qfi_options).value;
      row.f_n_over_fth = row.f_n / f_th;
      row.computed = true;
    } catch (const std::exception& e) {
      row.error = e.what();
    }
  });

  for (std::size_t p = 0; p < spec.preps.size(); ++p) {
    const ScalingRow& first = rows[p * per_prep];
    for (std::size_t i = 0; i < per_prep; ++i) {
      ScalingRow& row = rows[p * per_prep + i];
      if (row.error) continue;
      if (first.error) {
        row.error = "F_1 unavailable: " + *first.error;
      } else if (!(first.f_n > 0.0)) {
        row.error = "F_1 is zero; ratio to N F_1 undefined";
      } else {
        row.f_n_over_n_f1 = row.f_n / (row.n * first.f_n);
      }
    }
  }
  return rows;
}

inline void write_scaling_csv(std::ostream& os, const SweepSpec& spec,
                              const std::vector<ScalingRow>& rows) {
  const bool any_error = std::any_of(rows.begin(), rows.end(), [](const ScalingRow& r) {
    return r.error.has_value();
  });
  write_header_comments(os, "scaling", spec);
  os << "# f_th = " << format_double(thermal_fisher_information(spec.fixed)) << "\n";
  os << "prep,n,f_n,f_n_over_fth,f_n_over_n_f1" << (any_error ? ",error" : "") << "\n";
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (const ScalingRow& r : rows) {
    const bool have_fn = r.computed;
    os << r.prep << ',' << r.n << ',' << format_double(have_fn ? r.f_n : nan) << ','
       << format_double(have_fn ? r.f_n_over_fth : nan) << ','
       << format_double(r.error ? nan : r.f_n_over_n_f1);
    if (any_error) os << ',' << (r.error ? detail::csv_escape(*r.error) : "");
    os << '\n';
  }
}

}  // namespace colltherm
