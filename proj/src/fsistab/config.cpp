#include "fsistab/config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace fsistab {

namespace {

std::string trim(const std::string& s) {
  auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

[[noreturn]] void fail(const std::string& key, int line, const std::string& what) {
  throw ConfigError("config: key `" + key + "` (line " + std::to_string(line) +
                    "): " + what);
}

double to_double(const std::string& key, int line, const std::string& v) {
  try {
    std::size_t pos;
    double d = std::stod(v, &pos);
    if (pos != v.size() || !std::isfinite(d)) fail(key, line, "malformed number `" + v + "`");
    return d;
  } catch (const ConfigError&) {
    throw;
  } catch (...) {
    fail(key, line, "malformed number `" + v + "`");
  }
}

long to_int(const std::string& key, int line, const std::string& v) {
  try {
    std::size_t pos;
    long d = std::stol(v, &pos);
    if (pos != v.size()) fail(key, line, "malformed integer `" + v + "`");
    return d;
  } catch (const ConfigError&) {
    throw;
  } catch (...) {
    fail(key, line, "malformed integer `" + v + "`");
  }
}

}  // namespace

InitSpec parse_init_spec(const std::string& s) {
  if (s == "n0") return {InitKind::N0, 0, ""};
  auto paren = [&](const std::string& head) -> std::string {
    if (s.size() > head.size() + 2 && s.compare(0, head.size() + 1, head + "(") == 0 &&
        s.back() == ')')
      return s.substr(head.size() + 1, s.size() - head.size() - 2);
    return "";
  };
  if (auto a = paren("random"); !a.empty())
    return {InitKind::Random, std::stoull(a), ""};
  if (auto a = paren("random-offnull"); !a.empty())
    return {InitKind::RandomOffnull, std::stoull(a), ""};
  if (auto a = paren("file"); !a.empty()) return {InitKind::File, 0, a};
  throw ConfigError("config: unknown init spec `" + s +
                    "` (expected n0 | random(seed) | random-offnull(seed) | "
                    "file(path))");
}

RunConfig parse_config(const std::string& text) {
  RunConfig cfg;
  std::istringstream in(text);
  std::string line;
  int ln = 0;
  while (std::getline(in, line)) {
    ++ln;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config: line " + std::to_string(ln) +
                        ": expected `key = value`");
    std::string key = trim(line.substr(0, eq));
    std::string val = trim(line.substr(eq + 1));
    if (key.empty() || val.empty())
      throw ConfigError("config: line " + std::to_string(ln) +
                        ": expected `key = value`");
    if (key == "L1") cfg.L1 = to_double(key, ln, val);
    else if (key == "L2") cfg.L2 = to_double(key, ln, val);
    else if (key == "nx") cfg.nx = static_cast<int>(to_int(key, ln, val));
    else if (key == "ny") cfg.ny = static_cast<int>(to_int(key, ln, val));
    else if (key == "nu") cfg.nu = to_double(key, ln, val);
    else if (key == "lambda") cfg.lambda = to_double(key, ln, val);
    else if (key == "eta") cfg.eta = to_double(key, ln, val);
    else if (key == "kappa") cfg.kappa = static_cast<int>(to_int(key, ln, val));
    else if (key == "preset") cfg.preset = val;
    else if (key == "amplitude") cfg.amplitude = to_double(key, ln, val);
    else if (key == "dt") cfg.dt = to_double(key, ln, val);
    else if (key == "T") cfg.T = to_double(key, ln, val);
    else if (key == "record_stride")
      cfg.record_stride = static_cast<int>(to_int(key, ln, val));
    else if (key == "init") {
      try {
        cfg.init = parse_init_spec(val);
      } catch (const ConfigError& e) {
        fail(key, ln, e.what());
      }
    } else if (key == "out")
      cfg.out_dir = val;
    else
      throw ConfigError("config: unknown key `" + key + "` (line " +
                        std::to_string(ln) + ")");
    // eager constraint checks so the error names the key and line
    if (key == "kappa" && cfg.kappa != 0 && cfg.kappa != 1)
      fail(key, ln, "must be 0 or 1");
    if ((key == "nx" || key == "ny") && (cfg.nx < 8 || cfg.ny < 8) &&
        (key == "nx" ? cfg.nx : cfg.ny) < 8)
      fail(key, ln, "grid must be at least 8 intervals per direction");
    if ((key == "L1" || key == "L2") && to_double(key, ln, val) <= 0)
      fail(key, ln, "must be positive");
    if (key == "nu" && cfg.nu <= 0) fail(key, ln, "must be positive");
    if (key == "eta" && cfg.eta <= 0) fail(key, ln, "must be positive");
    if (key == "lambda" && cfg.lambda < 0) fail(key, ln, "must be nonnegative");
    if (key == "dt" && cfg.dt < 0) fail(key, ln, "must be nonnegative (0 = auto)");
    if (key == "T" && cfg.T <= 0) fail(key, ln, "must be positive");
    if (key == "record_stride" && cfg.record_stride < 1)
      fail(key, ln, "must be >= 1");
    if (key == "amplitude" && cfg.amplitude < 0) fail(key, ln, "must be >= 0");
    if (key == "preset" && val != "zero" && val != "solenoidal-vortex" &&
        val != "small-div")
      fail(key, ln, "unknown preset `" + val + "`");
  }
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("config: cannot open " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return parse_config(ss.str());
}

double RunConfig::resolved_dt() const {
  if (dt > 0.0) return dt;
  double hx = L1 / nx, hy = L2 / ny;
  return 0.5 * std::min(hx, hy);
}

std::string RunConfig::resolved_line() const {
  char buf[512];
  std::string init_s;
  switch (init.kind) {
    case InitKind::N0: init_s = "n0"; break;
    case InitKind::Random: init_s = "random(" + std::to_string(init.seed) + ")"; break;
    case InitKind::RandomOffnull:
      init_s = "random-offnull(" + std::to_string(init.seed) + ")";
      break;
    case InitKind::File: init_s = "file(" + init.path + ")"; break;
  }
  std::snprintf(buf, sizeof(buf),
                "L1 = %.17g; L2 = %.17g; nx = %d; ny = %d; nu = %.17g; "
                "lambda = %.17g; eta = %.17g; kappa = %d; preset = %s; "
                "amplitude = %.17g; dt = %.17g; T = %.17g; record_stride = %d; "
                "init = %s",
                L1, L2, nx, ny, nu, lambda, eta, kappa, preset.c_str(),
                amplitude, resolved_dt(), T, record_stride, init_s.c_str());
  return buf;
}

}  // namespace fsistab
