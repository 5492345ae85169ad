#pragma once
// Flat `key = value` run configuration: `#` comments, unknown keys rejected
// with the offending key and line number.

#include <cstdint>
#include <stdexcept>
#include <string>

namespace fsistab {

enum class InitKind { N0, Random, RandomOffnull, File };

struct InitSpec {
  InitKind kind = InitKind::RandomOffnull;
  std::uint64_t seed = 1;
  std::string path;  // for file(...)
};

struct RunConfig {
  double L1 = 1.0, L2 = 1.0;
  int nx = 16, ny = 16;
  double nu = 1.0, lambda = 1.0, eta = 1.0;
  int kappa = 0;
  std::string preset = "zero";
  double amplitude = 1.0;
  double dt = 0.0;  // 0 = auto: min(hx, hy)/2
  double T = 20.0;
  int record_stride = 1;
  InitSpec init;
  std::string out_dir = ".";

  double resolved_dt() const;
  // one-line `key = value; ...` echo of every resolved field
  std::string resolved_line() const;
};

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

InitSpec parse_init_spec(const std::string& s);
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);

}  // namespace fsistab
