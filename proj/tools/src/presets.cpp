#include <charconv>
#include <fstream>
#include <stdexcept>

#include "ici/cli.hpp"
#include "json.hpp"

namespace ici::cli {

namespace {

const std::vector<std::string_view> kSubcommands = {"solve", "order", "basin", "scan", "compare"};

bool is_subcommand(std::string_view s) {
  for (auto c : kSubcommands) {
    if (c == s) return true;
  }
  return false;
}

std::string scalar_text(const nlohmann::json& v, const std::string& key) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  if (v.is_number()) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, v.get<double>());
    return std::string(buf, res.ptr);
  }
  throw std::invalid_argument("--config: unsupported value for key '" + key + "'");
}

std::vector<std::string> config_flags(const std::string& path, std::string& preset, std::string& subcommand) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("--config: cannot open '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument("--config: " + std::string(e.what()));
  }
  if (!j.is_object()) throw std::invalid_argument("--config: top level must be an object");
  std::vector<std::string> flags;
  for (const auto& [key, value] : j.items()) {
    if (key == "preset") {
      if (preset.empty()) preset = scalar_text(value, key);
      continue;
    }
    if (key == "command") {
      if (subcommand.empty()) subcommand = scalar_text(value, key);
      continue;
    }
    const std::string flag = "--" + key;
    if (value.is_boolean()) {
      if (value.get<bool>()) flags.push_back(flag);
    } else if (value.is_array()) {
      flags.push_back(flag);
      for (const auto& v : value) flags.push_back(scalar_text(v, key));
    } else {
      flags.push_back(flag);
      flags.push_back(scalar_text(value, key));
    }
  }
  return flags;
}

}  // namespace

const std::vector<Preset>& presets() {
  static const std::vector<Preset> all = {
      {"newton-classic", "solve", {"--f", "x^3-2*x-5", "--x0", "1", "--digits", "40", "--method", "ici"}},
      {"exp-1000",
       "order",
       {"--f", "(x^2+x)*exp(-x)-1/3", "--x0", "2", "--digits", "1000", "--tol", "1e-500", "--max-iter", "8",
        "--method", "ici"}},
      {"kepler-basin",
       "basin",
       {"--f", "z-0.083*sin(z)-1", "--re", "-30.5", "-29.5", "--im", "-17.5", "-16.5", "--size", "1600",
        "--max-iter", "30", "--out", "kepler.ppm"}},
      {"cube-roots",
       "basin",
       {"--f", "z^3-1", "--re", "-2", "2", "--im", "-2", "2", "--size", "1600", "--max-iter", "13", "--tol",
        "1e-8", "--out", "cube_roots.ppm"}},
  };
  return all;
}

const Preset* find_preset(std::string_view name) {
  for (const auto& p : presets()) {
    if (p.name == name) return &p;
  }
  return nullptr;
}

std::vector<std::string> expand_arguments(const std::vector<std::string>& args) {
  std::string preset, config, subcommand;
  std::vector<std::string> rest;
  for (std::size_t i = 0; i < args.size(); ++i) {
    const std::string& a = args[i];
    auto take = [&](const char* flag, std::string& into) {
      const std::string eq = std::string(flag) + "=";
      if (a == flag) {
        if (i + 1 >= args.size()) throw std::invalid_argument(std::string(flag) + ": missing value");
        into = args[++i];
        return true;
      }
      if (a.rfind(eq, 0) == 0) {
        into = a.substr(eq.size());
        return true;
      }
      return false;
    };
    if (take("--preset", preset) || take("--config", config)) continue;
    if (i == 0 && is_subcommand(a)) {
      subcommand = a;
      continue;
    }
    rest.push_back(a);
  }

  std::vector<std::string> config_tokens;
  if (!config.empty()) config_tokens = config_flags(config, preset, subcommand);

  std::vector<std::string> out;
  const Preset* p = nullptr;
  if (!preset.empty()) {
    p = find_preset(preset);
    if (!p) throw std::invalid_argument("--preset: unknown preset '" + preset + "'");
    if (subcommand.empty()) subcommand = std::string(p->subcommand);
  }
  if (!subcommand.empty()) out.push_back(subcommand);
  if (p) out.insert(out.end(), p->flags.begin(), p->flags.end());
  out.insert(out.end(), config_tokens.begin(), config_tokens.end());
  out.insert(out.end(), rest.begin(), rest.end());
  return out;
}

}  // namespace ici::cli
