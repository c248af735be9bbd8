#pragma once

// Parameter sweeps over z, omega or temperature with one column group per
// model, evaluated in parallel and written in grid order.

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <ostream>
#include <string>
#include <thread>
#include <vector>

#include "ewjn/bulk.hpp"
#include "ewjn/cli/config.hpp"
#include "ewjn/constants.hpp"
#include "ewjn/errors.hpp"
#include "ewjn/materials.hpp"
#include "ewjn/relaxation.hpp"
#include "ewjn/spectral.hpp"

namespace ewjn::cli {

enum class SweepAxis { z, omega, temperature };
enum class GridSpacing { linear, log };
enum class OutputFormat { csv, json };

inline SweepAxis parse_axis(const std::string& s) {
  if (s == "z") return SweepAxis::z;
  if (s == "omega") return SweepAxis::omega;
  if (s == "temperature" || s == "T") return SweepAxis::temperature;
  throw ValidationError("unknown sweep axis '" + s + "' (expected z|omega|temperature)");
}

inline std::string axis_column(SweepAxis a) {
  switch (a) {
    case SweepAxis::z: return "z[m]";
    case SweepAxis::omega: return "omega[rad/s]";
    case SweepAxis::temperature: return "T[K]";
  }
  return "?";
}

inline GridSpacing parse_spacing(const std::string& s) {
  if (s == "log") return GridSpacing::log;
  if (s == "linear") return GridSpacing::linear;
  throw ValidationError("unknown grid spacing '" + s + "' (expected log|linear)");
}

inline OutputFormat parse_format(const std::string& s) {
  if (s == "csv") return OutputFormat::csv;
  if (s == "json") return OutputFormat::json;
  throw ValidationError("unknown format '" + s + "' (expected csv|json)");
}

struct GridSpec {
  double min = 0.0;
  double max = 0.0;
  int count = 0;
  GridSpacing spacing = GridSpacing::log;

  void validate() const {
    if (count < 2) throw ValidationError("grid: count must be >= 2");
    if (!std::isfinite(min) || !std::isfinite(max)) throw ValidationError("grid: bounds must be finite");
    if (!(min < max)) throw ValidationError("grid: min must be < max");
    if (spacing == GridSpacing::log && !(min > 0.0))
      throw ValidationError("grid: log spacing needs min > 0");
  }

  std::vector<double> values() const {
    validate();
    std::vector<double> v(static_cast<std::size_t>(count));
    const double last = count - 1;
    for (int i = 0; i < count; ++i) {
      const double t = i / last;
      v[static_cast<std::size_t>(i)] =
          spacing == GridSpacing::linear ? min + (max - min) * t
                                         : min * std::pow(max / min, t);
    }
    v.front() = min;
    v.back() = max;
    for (std::size_t i = 1; i < v.size(); ++i)
      if (!(v[i] > v[i - 1])) throw ValidationError("grid: values are not strictly increasing");
    return v;
  }
};

/// One model column group. A temperature here overrides the sweep's fixed value.
struct ColumnGroup {
  ModelSelector model = ModelSelector::local_quasistatic;
  std::optional<double> temperature;
  bool parts = false;  // emit the signed r_s / r_p split of chi_xx

  std::string label() const {
    std::string s(to_string(model));
    if (temperature) {
      char buf[32];
      std::snprintf(buf, sizeof buf, "@%gK", *temperature);
      s += buf;
    }
    return s;
  }
};

/// "model" or "model@T" with T in kelvin.
inline ColumnGroup parse_group(const std::string& text) {
  ColumnGroup g;
  const auto at = text.find('@');
  g.model = parse_model(text.substr(0, at));
  if (at != std::string::npos) {
    std::string t = text.substr(at + 1);
    if (!t.empty() && (t.back() == 'K' || t.back() == 'k')) t.pop_back();
    char* end = nullptr;
    const double v = std::strtod(t.c_str(), &end);
    if (t.empty() || end != t.c_str() + t.size())
      throw ValidationError("bad temperature in model group '" + text + "'");
    g.temperature = v;
  }
  return g;
}

struct SweepConfig {
  Material material = copper();
  SweepAxis axis = SweepAxis::z;
  GridSpec grid;
  double z = 0.0;            // m, fixed unless swept
  double omega = 0.0;        // rad/s
  double temperature = 0.0;  // K
  QubitSpec qubit;           // level_splitting follows omega
  std::vector<ColumnGroup> groups;
  QuadratureConfig quadrature;
  OutputFormat format = OutputFormat::csv;
  std::string output_path;  // empty or "-" means stdout
  int threads = 0;          // 0: worker_limit()

  void validate() const {
    grid.validate();
    if (groups.empty()) throw ValidationError("sweep: at least one model group is required");
    if (axis != SweepAxis::z && !(z > 0.0)) throw ValidationError("sweep: z must be > 0");
    if (axis != SweepAxis::omega && !(omega > 0.0)) throw ValidationError("sweep: omega must be > 0");
    if (axis != SweepAxis::temperature && !(temperature >= 0.0))
      throw ValidationError("sweep: temperature must be >= 0");
    if (!(qubit.moment > 0.0)) throw ValidationError("sweep: qubit moment must be > 0");
    if (axis == SweepAxis::z && !(grid.min > 0.0)) throw ValidationError("sweep: z grid must be > 0");
    if (axis == SweepAxis::omega && !(grid.min > 0.0))
      throw ValidationError("sweep: omega grid must be > 0");
    if (axis == SweepAxis::temperature && !(grid.min >= 0.0))
      throw ValidationError("sweep: temperature grid must be >= 0");
    for (const auto& g : groups) {
      if (g.temperature && axis == SweepAxis::temperature)
        throw ValidationError("sweep: group temperature overrides conflict with a temperature axis");
      if (g.temperature && !(*g.temperature >= 0.0))
        throw ValidationError("sweep: group temperature must be >= 0");
    }
    try {
      quadrature.validate();
    } catch (const DomainError& e) {
      throw ValidationError(e.what());
    }
  }
};

/// EWJN_THREADS caps the worker count; otherwise the hardware concurrency.
inline int worker_limit() {
  int hw = static_cast<int>(std::thread::hardware_concurrency());
  if (hw < 1) hw = 1;
  const char* env = std::getenv("EWJN_THREADS");
  if (env == nullptr || *env == '\0') return hw;
  char* end = nullptr;
  const long v = std::strtol(env, &end, 10);
  if (*end != '\0' || v < 1) throw ValidationError("EWJN_THREADS must be a positive integer");
  return static_cast<int>(v);
}

/// Calls fn(i) for i in [0, n) from up to `threads` workers.
template <class Fn>
void parallel_for(std::size_t n, int threads, Fn&& fn) {
  const std::size_t workers = std::min<std::size_t>(n, static_cast<std::size_t>(std::max(threads, 1)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) fn(i);
    });
  for (auto& t : pool) t.join();
}

enum class CellStatus { ok, domain_error, quadrature_error, error };

inline std::string_view to_string(CellStatus s) {
  switch (s) {
    case CellStatus::ok: return "ok";
    case CellStatus::domain_error: return "domain-error";
    case CellStatus::quadrature_error: return "quadrature-error";
    case CellStatus::error: return "error";
  }
  return "?";
}

struct Cell {
  CellStatus status = CellStatus::ok;
  RelaxationResult result;
  std::string message;
};

struct SweepRow {
  double axis_value = 0.0;
  std::vector<Cell> cells;  // one per group
};

struct SweepOutcome {
  std::vector<SweepRow> rows;
  int failures = 0;
  int exit_code = 0;  // 0 ok, 2 domain failure, 3 quadrature failure
};

inline Cell evaluate_cell(const SweepConfig& cfg, const ColumnGroup& group, double axis_value) {
  double z = cfg.z, omega = cfg.omega, temperature = cfg.temperature;
  switch (cfg.axis) {
    case SweepAxis::z: z = axis_value; break;
    case SweepAxis::omega: omega = axis_value; break;
    case SweepAxis::temperature: temperature = axis_value; break;
  }
  if (group.temperature) temperature = *group.temperature;
  QubitSpec q = cfg.qubit;
  q.level_splitting = omega;
  Cell c;
  try {
    c.result = t1(cfg.material, q, z, temperature, group.model, cfg.quadrature);
  } catch (const QuadratureError& e) {
    c.status = CellStatus::quadrature_error;
    c.message = e.what();
  } catch (const DomainError& e) {
    c.status = CellStatus::domain_error;
    c.message = e.what();
  } catch (const std::exception& e) {
    c.status = CellStatus::error;
    c.message = e.what();
  }
  return c;
}

inline SweepOutcome run_sweep(const SweepConfig& cfg) {
  cfg.validate();
  const auto grid = cfg.grid.values();
  SweepOutcome out;
  out.rows.resize(grid.size());
  const std::size_t groups = cfg.groups.size();
  for (std::size_t i = 0; i < grid.size(); ++i) {
    out.rows[i].axis_value = grid[i];
    out.rows[i].cells.resize(groups);
  }
  const int threads = cfg.threads > 0 ? cfg.threads : worker_limit();
  parallel_for(grid.size() * groups, threads, [&](std::size_t job) {
    const std::size_t i = job / groups, g = job % groups;
    out.rows[i].cells[g] = evaluate_cell(cfg, cfg.groups[g], grid[i]);
  });
  for (const auto& row : out.rows)
    for (const auto& c : row.cells) {
      if (c.status == CellStatus::ok) continue;
      ++out.failures;
      const int code = c.status == CellStatus::domain_error ? 2 : 3;
      out.exit_code = std::max(out.exit_code, code);
    }
  return out;
}

/// Scientific notation with 9 significant digits; non-finite values as nan/inf.
inline std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.8e", v);
  return buf;
}

/// The same 9-digit rounding applied to a JSON number; non-finite becomes null.
inline nlohmann::ordered_json json_number(double v) {
  if (!std::isfinite(v)) return nullptr;
  return std::strtod(format_number(v).c_str(), nullptr);
}

namespace detail {

inline bool wants_model_column(const ColumnGroup& g) { return g.model == ModelSelector::automatic; }

inline std::string chi_units(const SweepConfig& cfg) { return std::string(units(cfg.qubit.field())); }

}  // namespace detail

inline void write_csv(std::ostream& os, const SweepConfig& cfg, const SweepOutcome& outcome) {
  const std::string u = detail::chi_units(cfg);
  os << axis_column(cfg.axis);
  for (const auto& g : cfg.groups) {
    const std::string l = g.label();
    os << ',' << l << ".chi_xx[" << u << "]," << l << ".chi_zz[" << u << "]," << l
       << ".rate[1/s]," << l << ".t1[s]," << l << ".err[" << u << "]," << l << ".status";
    if (g.parts) os << ',' << l << ".chi_xx_rs[" << u << "]," << l << ".chi_xx_rp[" << u << "]";
    if (detail::wants_model_column(g)) os << ',' << l << ".model_used";
  }
  os << '\n';
  const double nan = std::nan("");
  for (const auto& row : outcome.rows) {
    os << format_number(row.axis_value);
    for (std::size_t g = 0; g < cfg.groups.size(); ++g) {
      const Cell& c = row.cells[g];
      const bool ok = c.status == CellStatus::ok;
      const auto& r = c.result;
      os << ',' << format_number(ok ? r.spectral.chi_xx : nan) << ','
         << format_number(ok ? r.spectral.chi_zz : nan) << ',' << format_number(ok ? r.rate : nan)
         << ',' << format_number(ok ? r.t1 : nan) << ',' << format_number(ok ? r.chi_error : nan)
         << ',' << to_string(c.status);
      if (cfg.groups[g].parts) {
        const bool has = ok && r.spectral.xx_parts.has_value();
        os << ',' << format_number(has ? r.spectral.xx_parts->rs_part : nan) << ','
           << format_number(has ? r.spectral.xx_parts->rp_part : nan);
      }
      if (detail::wants_model_column(cfg.groups[g])) os << ',' << (ok ? to_string(r.model) : "none");
    }
    os << '\n';
  }
}

inline nlohmann::ordered_json sweep_json(const SweepConfig& cfg, const SweepOutcome& outcome) {
  using nlohmann::ordered_json;
  ordered_json doc;
  doc["axis"] = {{"name", axis_column(cfg.axis)}};
  doc["material"] = cfg.material.name();
  doc["qubit"] = {{"kind", to_string(cfg.qubit.kind)},
                  {"moment", json_number(cfg.qubit.moment)},
                  {"orientation", to_string(cfg.qubit.orientation)}};
  if (cfg.axis != SweepAxis::z) doc["z[m]"] = json_number(cfg.z);
  if (cfg.axis != SweepAxis::omega) doc["omega[rad/s]"] = json_number(cfg.omega);
  if (cfg.axis != SweepAxis::temperature) doc["T[K]"] = json_number(cfg.temperature);
  doc["chi_units"] = detail::chi_units(cfg);
  doc["groups"] = ordered_json::array();
  for (const auto& g : cfg.groups) {
    ordered_json j{{"label", g.label()}, {"model", to_string(g.model)}};
    if (g.temperature) j["T[K]"] = json_number(*g.temperature);
    doc["groups"].push_back(j);
  }
  doc["rows"] = ordered_json::array();
  for (const auto& row : outcome.rows) {
    ordered_json jr;
    jr[axis_column(cfg.axis)] = json_number(row.axis_value);
    for (std::size_t g = 0; g < cfg.groups.size(); ++g) {
      const Cell& c = row.cells[g];
      ordered_json jc;
      jc["status"] = to_string(c.status);
      if (c.status == CellStatus::ok) {
        const auto& r = c.result;
        jc["model_used"] = to_string(r.model);
        jc["chi_xx"] = json_number(r.spectral.chi_xx);
        jc["chi_zz"] = json_number(r.spectral.chi_zz);
        jc["rate[1/s]"] = json_number(r.rate);
        jc["t1[s]"] = json_number(r.t1);
        jc["err"] = json_number(r.chi_error);
        if (cfg.groups[g].parts && r.spectral.xx_parts) {
          jc["chi_xx_rs"] = json_number(r.spectral.xx_parts->rs_part);
          jc["chi_xx_rp"] = json_number(r.spectral.xx_parts->rp_part);
        }
      } else {
        jc["message"] = c.message;
      }
      jr[cfg.groups[g].label()] = jc;
    }
    doc["rows"].push_back(jr);
  }
  return doc;
}

inline void write_output(const SweepConfig& cfg, const SweepOutcome& outcome,
                         std::ostream& console = std::cout) {
  auto emit = [&](std::ostream& os) {
    if (cfg.format == OutputFormat::csv)
      write_csv(os, cfg, outcome);
    else
      os << sweep_json(cfg, outcome).dump(2) << '\n';
  };
  if (cfg.output_path.empty() || cfg.output_path == "-") {
    emit(console);
    return;
  }
  std::ofstream os(cfg.output_path, std::ios::binary);
  if (!os) throw ValidationError("cannot write output file '" + cfg.output_path + "'");
  emit(os);
  if (!os) throw ValidationError("failed writing output file '" + cfg.output_path + "'");
}

/// Sweep from a flat config file. Keys: material, axis, min, max, count, spacing,
/// models, z_m, omega_rad_s, temperature_k, qubit, moment, orientation, rel_tol,
/// format, out. Models are "name" or "name@T"; "+parts" appends the r_s/r_p split.
inline SweepConfig sweep_from_config(const FlatConfig& f) {
  f.require_known({"material", "axis", "min", "max", "count", "spacing", "models", "z_m",
                   "omega_rad_s", "temperature_k", "qubit", "moment", "orientation", "rel_tol",
                   "format", "out"});
  SweepConfig cfg;
  if (f.has("material")) cfg.material = resolve_material(f.string("material"));
  cfg.axis = parse_axis(f.string("axis"));
  cfg.grid.min = f.number("min");
  cfg.grid.max = f.number("max");
  const double count = f.number("count");
  if (count != std::floor(count) || count < 0 || count > 1e6)
    throw ValidationError(f.source() + ": count must be a non-negative integer");
  cfg.grid.count = static_cast<int>(count);
  cfg.grid.spacing = f.has("spacing") ? parse_spacing(f.string("spacing")) : GridSpacing::log;
  for (std::string m : f.list("models")) {
    bool parts = false;
    const std::string suffix = "+parts";
    if (m.size() > suffix.size() && m.compare(m.size() - suffix.size(), suffix.size(), suffix) == 0) {
      parts = true;
      m.erase(m.size() - suffix.size());
    }
    ColumnGroup g = parse_group(m);
    g.parts = parts;
    cfg.groups.push_back(g);
  }
  if (f.has("z_m")) cfg.z = f.number("z_m");
  if (f.has("omega_rad_s")) cfg.omega = f.number("omega_rad_s");
  if (f.has("temperature_k")) cfg.temperature = f.number("temperature_k");
  const auto kind = f.has("qubit") ? parse_qubit_kind(f.string("qubit")) : QubitKind::charge;
  cfg.qubit = kind == QubitKind::charge ? QubitSpec::atomic_charge(0.0) : QubitSpec::electron_spin(0.0);
  if (f.has("moment")) cfg.qubit.moment = f.number("moment");
  if (f.has("orientation")) cfg.qubit.orientation = parse_orientation(f.string("orientation"));
  if (f.has("rel_tol")) cfg.quadrature.rel_tol = f.number("rel_tol");
  if (f.has("format")) cfg.format = parse_format(f.string("format"));
  if (f.has("out")) cfg.output_path = f.string("out");
  return cfg;
}

// ---------------------------------------------------------------------------
// Figure regeneration.

inline constexpr double kFigureOmega = 6.0 * constants::pi * 1e8;

inline const std::vector<std::string>& figure_names() {
  static const std::vector<std::string> names{"fig1", "fig2", "fig3", "fig4"};
  return names;
}

/// Sweep behind a figure. fig1/fig3: T1 vs z from 0.03 to 3e4 lambda_F at T = 0
/// (10 points per decade, so 30 lambda_F is a grid point). fig2/fig4: T1 vs omega
/// at z = 10 lambda_F for T = 0 and 2 K. Charge figures use d = |e| a_B, spin
/// figures mu = mu_B, both x-oriented.
inline SweepConfig figure_config(const std::string& name) {
  const Material cu = copper();
  const double lf = cu.fermi_wavelength();
  SweepConfig cfg;
  cfg.material = cu;
  const bool charge = name == "fig1" || name == "fig2";
  const bool versus_z = name == "fig1" || name == "fig3";
  if (!charge && name != "fig3" && name != "fig4")
    throw ValidationError("unknown figure '" + name + "' (expected fig1|fig2|fig3|fig4)");
  cfg.qubit = charge ? QubitSpec::atomic_charge(0.0) : QubitSpec::electron_spin(0.0);
  const auto lq = ModelSelector::local_quasistatic;
  const auto nl = ModelSelector::nonlocal_quasistatic;
  if (versus_z) {
    cfg.axis = SweepAxis::z;
    cfg.grid = {0.03 * lf, 3e4 * lf, 61, GridSpacing::log};
    cfg.omega = kFigureOmega;
    cfg.temperature = 0.0;
    cfg.groups = {{lq, std::nullopt, false},
                  {nl, std::nullopt, !charge},
                  {ModelSelector::automatic, std::nullopt, false}};
  } else {
    cfg.axis = SweepAxis::omega;
    cfg.grid = {1e7, 1e12, 21, GridSpacing::log};
    cfg.z = 10.0 * lf;
    cfg.groups = {{lq, 0.0, false}, {lq, 2.0, false}, {nl, 0.0, !charge}, {nl, 2.0, !charge}};
  }
  return cfg;
}

/// Bulk reference level for the charge figure: each rung of the cutoff ladder as
/// -Im D, the equivalent chi^E = (w^2/(eps0 c^2)) (-Im D) and T1 for the qubit.
inline bool write_bulk_reference(std::ostream& os, const Material& m, double omega,
                                 const QubitSpec& qubit, const QuadratureConfig& cfg) {
  BulkGreenResult r;
  std::string status = "converged";
  try {
    r = bulk_imD_coincident(m, omega, cfg);
  } catch (const CutoffConvergenceError& e) {
    r = e.partial();
    status = "unconverged";
  }
  const double c = constants::speed_of_light;
  const double to_chi = omega * omega / (constants::vacuum_permittivity * c * c);
  const double coupling = qubit.moment / constants::hbar;
  os << "k_max[1/m],im_D[J s/m],chi_E[(V/m)^2 s],t1[s],status\n";
  for (std::size_t i = 0; i < r.convergence_series.size(); ++i) {
    const auto& pt = r.convergence_series[i];
    const double chi = to_chi * pt.im_D;
    const bool last = i + 1 == r.convergence_series.size();
    os << format_number(pt.k_max) << ',' << format_number(pt.im_D) << ',' << format_number(chi)
       << ',' << format_number(1.0 / (coupling * coupling * chi)) << ','
       << (last ? status : std::string("ladder")) << '\n';
  }
  return r.converged;
}

struct FigureOutcome {
  std::vector<std::string> files;
  int failures = 0;
  int exit_code = 0;
  std::string summary;
};

/// Writes <dir>/<name>.csv (and <dir>/fig1_bulk.csv for fig1). The exit code
/// reflects the sweep rows; an unconverged bulk ladder is reported in the
/// bulk file's status column and the summary.
inline FigureOutcome run_figure(const std::string& name, const std::filesystem::path& dir,
                                const QuadratureConfig& quadrature = {}, int threads = 0) {
  SweepConfig cfg = figure_config(name);
  cfg.quadrature = quadrature;
  cfg.threads = threads;
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  cfg.output_path = (dir / (name + ".csv")).string();
  const auto outcome = run_sweep(cfg);
  write_output(cfg, outcome);
  FigureOutcome fo;
  fo.files.push_back(cfg.output_path);
  fo.failures = outcome.failures;
  fo.exit_code = outcome.exit_code;
  fo.summary = name + ": " + std::to_string(outcome.rows.size()) + " rows x " +
               std::to_string(cfg.groups.size()) + " groups -> " + cfg.output_path + " (" +
               std::to_string(outcome.failures) + " failed)";
  if (name == "fig1") {
    const auto path = (dir / "fig1_bulk.csv").string();
    std::ofstream os(path, std::ios::binary);
    if (!os) throw ValidationError("cannot write output file '" + path + "'");
    QubitSpec q = cfg.qubit;
    q.level_splitting = cfg.omega;
    const bool converged = write_bulk_reference(os, cfg.material, cfg.omega, q, quadrature);
    fo.files.push_back(path);
    fo.summary += "\nfig1 bulk reference -> " + path +
                  (converged ? " (converged)" : " (cutoff ladder did not converge)");
  }
  return fo;
}

}  // namespace ewjn::cli
