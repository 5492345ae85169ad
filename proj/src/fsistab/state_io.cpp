#include "fsistab/state_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace fsistab {

void save_state(const std::string& path, const Grid& g, const Fields& f) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("state: cannot open " + path + " for writing");
  char buf[160];
  std::snprintf(buf, sizeof(buf), "# fsistab state L1=%.17g L2=%.17g nx=%d ny=%d",
                g.geo.L1, g.geo.L2, g.geo.nx, g.geo.ny);
  out << buf << "\n";
  auto dump = [&](const Vec& v) {
    for (int k = 0; k < v.size(); ++k) {
      std::snprintf(buf, sizeof(buf), "%.17g", v(k));
      out << buf << "\n";
    }
  };
  dump(f.p);
  dump(f.u1);
  dump(f.u2);
  dump(f.w);
  dump(f.v);
  if (!out) throw std::runtime_error("state: write failed for " + path);
}

Fields load_state(const std::string& path, const Grid& g) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("state: cannot open " + path);
  std::string header;
  std::getline(in, header);
  char expect[160];
  std::snprintf(expect, sizeof(expect), "# fsistab state L1=%.17g L2=%.17g nx=%d ny=%d",
                g.geo.L1, g.geo.L2, g.geo.nx, g.geo.ny);
  if (header != expect)
    throw std::runtime_error("state: geometry header mismatch in " + path +
                             " (expected `" + expect + "`, got `" + header + "`)");
  Fields f{Vec(g.N), Vec(g.N), Vec(g.N), Vec(g.nb), Vec(g.nb)};
  auto slurp = [&](Vec& v) {
    for (int k = 0; k < v.size(); ++k)
      if (!(in >> v(k)))
        throw std::runtime_error("state: truncated file " + path);
  };
  slurp(f.p);
  slurp(f.u1);
  slurp(f.u2);
  slurp(f.w);
  slurp(f.v);
  return f;
}

}  // namespace fsistab
