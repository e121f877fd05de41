#pragma once

#include <string>
#include <vector>

namespace gkdvb {

// Shortest-round-trip decimal with 17 significant digits; used for every
// float in every CSV so reruns are byte-identical.
std::string fmt17(double v);

std::string join_csv(const std::vector<std::string>& cells);

} // namespace gkdvb
