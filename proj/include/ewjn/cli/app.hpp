#pragma once

// Command-line front end: spectral, t1, sweep, bulk and figure subcommands.
// Exit codes: 0 success, 1 validation, 2 physics-domain error, 3 quadrature
// non-convergence.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "ewjn/bulk.hpp"
#include "ewjn/cli/config.hpp"
#include "ewjn/cli/sweep.hpp"
#include "ewjn/errors.hpp"
#include "ewjn/materials.hpp"
#include "ewjn/relaxation.hpp"
#include "ewjn/spectral.hpp"

namespace ewjn::cli {

enum ExitCode : int { kOk = 0, kValidation = 1, kDomain = 2, kQuadrature = 3 };

namespace detail {

using nlohmann::ordered_json;

inline ordered_json material_json(const Material& m) {
  return {{"name", m.name()},
          {"omega_p[rad/s]", json_number(m.plasma_frequency())},
          {"nu[rad/s]", json_number(m.collision_rate())},
          {"fermi_energy[eV]", json_number(m.fermi_energy_ev())},
          {"fermi_velocity[m/s]", json_number(m.fermi_velocity())},
          {"fermi_wavelength[m]", json_number(m.fermi_wavelength())}};
}

inline ordered_json tensor_json(const SpectralDensityTensor& t) {
  ordered_json j{{"field", to_string(t.field)},
                 {"units", units(t.field)},
                 {"xx", json_number(t.chi_xx)},
                 {"zz", json_number(t.chi_zz)},
                 {"error_xx", json_number(t.error_xx)},
                 {"error_zz", json_number(t.error_zz)}};
  if (t.xx_parts) {
    j["xx_rs_part"] = json_number(t.xx_parts->rs_part);
    j["xx_rp_part"] = json_number(t.xx_parts->rp_part);
  }
  return j;
}

inline void emit_json(const ordered_json& doc, const std::string& path, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << doc.dump(2) << '\n';
    return;
  }
  std::ofstream os(path, std::ios::binary);
  if (!os) throw ValidationError("cannot write output file '" + path + "'");
  os << doc.dump(2) << '\n';
}

inline FieldKind parse_field(const std::string& s) {
  if (s == "E" || s == "electric") return FieldKind::electric;
  if (s == "B" || s == "magnetic") return FieldKind::magnetic;
  throw ValidationError("unknown field '" + s + "' (expected E|B)");
}

inline QuadratureConfig quadrature_with(double rel_tol) {
  QuadratureConfig q;
  q.rel_tol = rel_tol;
  return q;
}

}  // namespace detail

inline const CLI::Validator& positive() {
  static const CLI::Validator v(
      [](std::string& s) -> std::string {
        char* end = nullptr;
        const double x = std::strtod(s.c_str(), &end);
        if (end == s.c_str() || *end != '\0' || !(x > 0.0) || !std::isfinite(x))
          return "value must be a finite number > 0, got '" + s + "'";
        return {};
      },
      "POSITIVE");
  return v;
}

inline const CLI::Validator& non_negative() {
  static const CLI::Validator v(
      [](std::string& s) -> std::string {
        char* end = nullptr;
        const double x = std::strtod(s.c_str(), &end);
        if (end == s.c_str() || *end != '\0' || !(x >= 0.0) || !std::isfinite(x))
          return "value must be a finite number >= 0, got '" + s + "'";
        return {};
      },
      "NONNEGATIVE");
  return v;
}

struct Options {
  std::string material = "copper";
  double rel_tol = QuadratureConfig{}.rel_tol;
  std::string out;
  std::string format = "csv";

  double z = 0.0;
  double omega = kFigureOmega;
  double temperature = 0.0;
  std::string field = "E";
  std::string qubit = "charge";
  std::optional<double> moment;
  std::string orientation = "x";
  std::string model = "auto";

  std::string config;
  std::string axis;
  std::optional<double> grid_min, grid_max;
  std::optional<int> count;
  std::string spacing;
  std::vector<std::string> models;
  bool parts = false;

  std::string figure;
};

inline QubitSpec build_qubit(const Options& o) {
  const QubitKind kind = parse_qubit_kind(o.qubit);
  QubitSpec q = kind == QubitKind::charge ? QubitSpec::atomic_charge(o.omega)
                                          : QubitSpec::electron_spin(o.omega);
  if (o.moment) q.moment = *o.moment;
  q.orientation = parse_orientation(o.orientation);
  return q;
}

inline int cmd_spectral(const Options& o, std::ostream& out) {
  const Material m = resolve_material(o.material);
  const FieldKind field = detail::parse_field(o.field);
  const ModelSelector requested = parse_model(o.model);
  const auto q = detail::quadrature_with(o.rel_tol);
  const auto t = spectral_density(field, m, o.z, o.omega, requested, q);
  detail::ordered_json doc;
  doc["command"] = "spectral";
  doc["inputs"] = {{"material", detail::material_json(m)},
                   {"field", to_string(field)},
                   {"z[m]", json_number(o.z)},
                   {"omega[rad/s]", json_number(o.omega)},
                   {"model", to_string(requested)},
                   {"rel_tol", json_number(o.rel_tol)}};
  doc["model_used"] = to_string(t.model);
  doc["chi"] = detail::tensor_json(t);
  detail::emit_json(doc, o.out, out);
  return kOk;
}

inline int cmd_t1(const Options& o, std::ostream& out) {
  const Material m = resolve_material(o.material);
  const QubitSpec qubit = build_qubit(o);
  const ModelSelector requested = parse_model(o.model);
  const auto r = t1(m, qubit, o.z, o.temperature, requested, detail::quadrature_with(o.rel_tol));
  detail::ordered_json doc;
  doc["command"] = "t1";
  doc["inputs"] = {{"material", detail::material_json(m)},
                   {"z[m]", json_number(o.z)},
                   {"omega[rad/s]", json_number(o.omega)},
                   {"T[K]", json_number(o.temperature)},
                   {"qubit",
                    {{"kind", to_string(qubit.kind)},
                     {"moment", json_number(qubit.moment)},
                     {"moment_units", qubit.kind == QubitKind::charge ? "C m" : "J/T"},
                     {"orientation", to_string(qubit.orientation)}}},
                   {"model", to_string(requested)},
                   {"rel_tol", json_number(o.rel_tol)}};
  doc["model_used"] = to_string(r.model);
  doc["chi"] = detail::tensor_json(r.spectral);
  doc["chi_component_used"] = qubit.orientation == Orientation::z ? "zz" : "xx";
  doc["chi_used"] = json_number(r.chi);
  doc["chi_used_error"] = json_number(r.chi_error);
  doc["thermal_factor"] = json_number(r.thermal_factor);
  doc["rate[1/s]"] = json_number(r.rate);
  doc["t1[s]"] = json_number(r.t1);
  detail::emit_json(doc, o.out, out);
  return kOk;
}

inline int cmd_sweep(const Options& o, const CLI::App& sub, std::ostream& out, std::ostream& err) {
  SweepConfig cfg;
  if (!o.config.empty()) cfg = sweep_from_config(FlatConfig::load(o.config));
  auto given = [&](const char* flag) { return sub.count(flag) > 0; };
  const bool from_flags = o.config.empty();
  if (from_flags || given("--material")) cfg.material = resolve_material(o.material);
  if (given("--axis")) cfg.axis = parse_axis(o.axis);
  if (given("--min")) cfg.grid.min = *o.grid_min;
  if (given("--max")) cfg.grid.max = *o.grid_max;
  if (given("--count")) cfg.grid.count = *o.count;
  if (given("--spacing")) cfg.grid.spacing = parse_spacing(o.spacing);
  if (given("--models")) {
    cfg.groups.clear();
    for (const auto& s : o.models) {
      ColumnGroup g = parse_group(s);
      g.parts = o.parts;
      cfg.groups.push_back(g);
    }
  } else if (given("--parts")) {
    for (auto& g : cfg.groups) g.parts = o.parts;
  }
  if (from_flags || given("--z")) cfg.z = o.z;
  if (from_flags || given("--omega")) cfg.omega = o.omega;
  if (from_flags || given("--temp")) cfg.temperature = o.temperature;
  if (from_flags || given("--qubit")) {
    cfg.qubit = build_qubit(o);
  } else {
    if (given("--moment")) cfg.qubit.moment = *o.moment;
    if (given("--orientation")) cfg.qubit.orientation = parse_orientation(o.orientation);
  }
  if (given("--rel-tol")) cfg.quadrature.rel_tol = o.rel_tol;
  if (given("--format")) cfg.format = parse_format(o.format);
  if (given("--out")) cfg.output_path = o.out;
  const auto outcome = run_sweep(cfg);
  write_output(cfg, outcome, out);
  err << "sweep: " << outcome.rows.size() << " rows x " << cfg.groups.size() << " groups, "
      << outcome.failures << " failed\n";
  return outcome.exit_code;
}

inline int cmd_bulk(const Options& o, std::ostream& out) {
  const Material m = resolve_material(o.material);
  const auto q = detail::quadrature_with(o.rel_tol);
  BulkGreenResult r;
  std::string message;
  int code = kOk;
  try {
    r = bulk_imD_coincident(m, o.omega, q);
  } catch (const CutoffConvergenceError& e) {
    r = e.partial();
    message = e.what();
    code = kQuadrature;
  }
  const auto surface = surface_limit_imD(m, o.omega, q);
  detail::ordered_json doc;
  doc["command"] = "bulk";
  doc["inputs"] = {{"material", detail::material_json(m)},
                   {"omega[rad/s]", json_number(o.omega)},
                   {"rel_tol", json_number(o.rel_tol)}};
  doc["units"] = "J s/m";
  doc["sign_convention"] = "-Im D (positive spectral weight)";
  doc["bulk"] = {{"im_D_xx", json_number(r.im_D_xx)},
                 {"im_D_zz", json_number(r.im_D_zz)},
                 {"error", json_number(r.error)},
                 {"k_max_used[1/m]", json_number(r.k_max_used)},
                 {"converged", r.converged}};
  doc["bulk"]["convergence_series"] = detail::ordered_json::array();
  for (const auto& pt : r.convergence_series)
    doc["bulk"]["convergence_series"].push_back(
        {{"k_max[1/m]", json_number(pt.k_max)}, {"im_D", json_number(pt.im_D)}});
  if (!message.empty()) doc["bulk"]["message"] = message;
  doc["surface_limit"] = {{"z[m]", json_number(surface.z)},
                          {"im_D_xx", json_number(surface.im_D_xx)},
                          {"im_D_zz", json_number(surface.im_D_zz)},
                          {"error_xx", json_number(surface.error_xx)},
                          {"error_zz", json_number(surface.error_zz)}};
  detail::emit_json(doc, o.out, out);
  return code;
}

inline int cmd_figure(const Options& o, std::ostream& out) {
  const auto q = detail::quadrature_with(o.rel_tol);
  const auto fo = run_figure(o.figure, o.out.empty() ? "." : o.out, q);
  out << fo.summary << '\n';
  return fo.exit_code;
}

/// Parses argv and runs one subcommand; output goes to `out` unless --out names a file.
inline int run(int argc, const char* const* argv, std::ostream& out = std::cout,
               std::ostream& err = std::cerr) {
  CLI::App app{"Evanescent-wave Johnson noise near a metal half-space: spectral densities and qubit T1"};
  app.require_subcommand(1);
  Options o;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--material", o.material, "preset name (copper) or material file")
        ->capture_default_str();
    sub->add_option("--rel-tol", o.rel_tol, "quadrature relative tolerance")
        ->check(positive())
        ->capture_default_str();
    sub->add_option("--out", o.out, "output file (default stdout)");
  };
  auto add_omega = [&](CLI::App* sub) {
    sub->add_option("--omega", o.omega, "angular frequency [rad/s]")
        ->check(positive())
        ->capture_default_str();
  };
  auto add_qubit = [&](CLI::App* sub) {
    sub->add_option("--qubit", o.qubit, "qubit kind")
        ->check(CLI::IsMember({"charge", "spin"}))
        ->capture_default_str();
    sub->add_option("--moment", o.moment, "dipole moment [C m] or [J/T] (default e a_B or mu_B)")
        ->check(positive());
    sub->add_option("--orientation", o.orientation, "dipole orientation")
        ->check(CLI::IsMember({"x", "y", "z"}))
        ->capture_default_str();
  };
  const std::vector<std::string> model_names{"local-quasistatic", "nonlocal-quasistatic",
                                             "local-retarded", "auto"};

  auto* spectral = app.add_subcommand("spectral", "field spectral density tensor at one point");
  add_common(spectral);
  add_omega(spectral);
  spectral->add_option("--z", o.z, "height above the surface [m]")->required()->check(positive());
  spectral->add_option("--field", o.field, "E or B")
      ->check(CLI::IsMember({"E", "B", "electric", "magnetic"}))
      ->capture_default_str();
  spectral->add_option("--model", o.model)->check(CLI::IsMember(model_names))->capture_default_str();

  auto* t1cmd = app.add_subcommand("t1", "qubit relaxation time at one point");
  add_common(t1cmd);
  add_omega(t1cmd);
  add_qubit(t1cmd);
  t1cmd->add_option("--z", o.z, "height above the surface [m]")->required()->check(positive());
  t1cmd->add_option("--temp", o.temperature, "temperature [K]")
      ->check(non_negative())
      ->capture_default_str();
  t1cmd->add_option("--model", o.model)->check(CLI::IsMember(model_names))->capture_default_str();

  auto* sweep = app.add_subcommand("sweep", "T1 over a grid in z, omega or temperature");
  add_common(sweep);
  add_omega(sweep);
  add_qubit(sweep);
  sweep->add_option("--config", o.config, "flat key=value sweep file")->check(CLI::ExistingFile);
  sweep->add_option("--axis", o.axis)->check(CLI::IsMember({"z", "omega", "temperature"}));
  sweep->add_option("--min", o.grid_min, "first grid value (axis units)");
  sweep->add_option("--max", o.grid_max, "last grid value (axis units)");
  sweep->add_option("--count", o.count, "number of grid points (>= 2)");
  sweep->add_option("--spacing", o.spacing)->check(CLI::IsMember({"log", "linear"}));
  sweep->add_option("--models", o.models, "model groups, each 'model' or 'model@T'")->delimiter(',');
  sweep->add_flag("--parts", o.parts, "add the r_s/r_p split of chi_xx");
  sweep->add_option("--z", o.z, "height [m] when not swept")->check(positive());
  sweep->add_option("--temp", o.temperature, "temperature [K] when not swept")
      ->check(non_negative());
  sweep->add_option("--format", o.format)->check(CLI::IsMember({"csv", "json"}));

  auto* bulk = app.add_subcommand("bulk", "bulk and surface-limit Green's function values");
  add_common(bulk);
  add_omega(bulk);

  auto* figure = app.add_subcommand("figure", "regenerate figure data as CSV");
  figure->add_option("name", o.figure, "fig1|fig2|fig3|fig4")
      ->required()
      ->check(CLI::IsMember(figure_names()));
  figure->add_option("--out", o.out, "output directory (default .)");
  figure->add_option("--rel-tol", o.rel_tol, "quadrature relative tolerance")
      ->check(positive());

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kValidation;
  }

  try {
    if (*spectral) return cmd_spectral(o, out);
    if (*t1cmd) return cmd_t1(o, out);
    if (*sweep) return cmd_sweep(o, *sweep, out, err);
    if (*bulk) return cmd_bulk(o, out);
    if (*figure) return cmd_figure(o, out);
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kValidation;
  } catch (const QuadratureError& e) {
    err << "quadrature error: " << e.what() << '\n';
    return kQuadrature;
  } catch (const DomainError& e) {
    err << "domain error: " << e.what() << '\n';
    return kDomain;
  }
  return kValidation;
}

inline int run(const std::vector<std::string>& args, std::ostream& out = std::cout,
               std::ostream& err = std::cerr) {
  std::vector<const char*> argv;
  argv.push_back("ewjn");
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace ewjn::cli
