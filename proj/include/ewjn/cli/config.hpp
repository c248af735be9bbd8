#pragma once

// Flat key=value files (TOML subset) for material presets and sweep configs.
// Parsing is delegated to CLI11's TOML reader; this layer adds key checking,
// typed access and the material-file schema.

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <map>
#include <regex>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "ewjn/constants.hpp"
#include "ewjn/errors.hpp"
#include "ewjn/materials.hpp"

namespace ewjn::cli {

class FlatConfig {
 public:
  static FlatConfig parse(std::istream& in, const std::string& source) {
    const std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
    std::set<std::string> seen;
    static const std::regex assignment(R"(^\s*([A-Za-z0-9_.-]+)\s*=)");
    std::istringstream lines(text);
    for (std::string line; std::getline(lines, line);) {
      std::smatch m;
      if (std::regex_search(line, m, assignment) && !seen.insert(m[1].str()).second)
        throw ValidationError(source + ": duplicate key '" + m[1].str() + "'");
    }
    std::vector<CLI::ConfigItem> items;
    try {
      std::istringstream body(text);
      items = CLI::ConfigTOML().from_config(body);
    } catch (const CLI::Error& e) {
      throw ValidationError(source + ": " + e.what());
    }
    FlatConfig out;
    out.source_ = source;
    for (const auto& item : items) {
      if (item.name == "++" || item.name == "--") continue;  // section markers
      const std::string key = item.fullname();
      if (!item.parents.empty())
        throw ValidationError(source + ": sections are not supported (key '" + key + "')");
      out.values_.emplace(key, item.inputs);
    }
    return out;
  }

  static FlatConfig parse_string(const std::string& text, const std::string& source = "<string>") {
    std::istringstream in(text);
    return parse(in, source);
  }

  static FlatConfig load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open config file '" + path.string() + "'");
    return parse(in, path.string());
  }

  bool has(const std::string& key) const { return values_.count(key) != 0; }

  std::vector<std::string> keys() const {
    std::vector<std::string> k;
    for (const auto& [name, v] : values_) k.push_back(name);
    return k;
  }

  void require_known(const std::set<std::string>& allowed) const {
    for (const auto& [name, v] : values_)
      if (!allowed.count(name)) throw ValidationError(source_ + ": unknown key '" + name + "'");
  }

  std::string string(const std::string& key) const {
    const auto& v = scalar(key);
    return v;
  }

  double number(const std::string& key) const {
    const std::string& text = scalar(key);
    const char* begin = text.c_str();
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (text.empty() || end != begin + text.size())
      throw ValidationError(source_ + ": key '" + key + "' is not a number: '" + text + "'");
    return v;
  }

  std::vector<std::string> list(const std::string& key) const {
    auto it = values_.find(key);
    if (it == values_.end()) throw ValidationError(source_ + ": missing key '" + key + "'");
    return it->second;
  }

  const std::string& source() const { return source_; }

 private:
  const std::string& scalar(const std::string& key) const {
    auto it = values_.find(key);
    if (it == values_.end()) throw ValidationError(source_ + ": missing key '" + key + "'");
    if (it->second.size() != 1)
      throw ValidationError(source_ + ": key '" + key + "' must hold a single value");
    return it->second.front();
  }

  std::string source_;
  std::map<std::string, std::vector<std::string>> values_;
};

/// Material file keys: name, omega_p_rad_s, nu_rad_s, fermi_energy_ev.
inline Material material_from_config(const FlatConfig& cfg) {
  cfg.require_known({"name", "omega_p_rad_s", "nu_rad_s", "fermi_energy_ev"});
  const double omega_p = cfg.number("omega_p_rad_s");
  const double nu = cfg.number("nu_rad_s");
  const double ef = cfg.number("fermi_energy_ev");
  if (!(omega_p > 0.0)) throw ValidationError(cfg.source() + ": omega_p_rad_s must be > 0");
  if (!(nu > 0.0)) throw ValidationError(cfg.source() + ": nu_rad_s must be > 0");
  if (!(ef > 0.0)) throw ValidationError(cfg.source() + ": fermi_energy_ev must be > 0");
  return Material::from_ev(cfg.string("name"), omega_p, nu, ef);
}

inline const std::vector<std::string>& material_presets() {
  static const std::vector<std::string> names{"copper"};
  return names;
}

/// Preset name or path to a material file.
inline Material resolve_material(const std::string& spec) {
  if (spec == "copper") return copper();
  std::error_code ec;
  if (std::filesystem::is_regular_file(spec, ec)) return material_from_config(FlatConfig::load(spec));
  throw ValidationError("unknown material '" + spec + "' (not a preset and not a readable file)");
}

}  // namespace ewjn::cli
