#pragma once
// Plain-text state files: a geometry header line, then one value per line
// in block order p, u1, u2, w, v (diffable over compact).

#include "fsistab/generator.hpp"

#include <string>

namespace fsistab {

void save_state(const std::string& path, const Grid& g, const Fields& f);
Fields load_state(const std::string& path, const Grid& g);

}  // namespace fsistab
