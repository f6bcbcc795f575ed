#pragma once

#include <iosfwd>
#include <string>

#include "goim/ising.hpp"

namespace goim {

// Edge-list text format, 0-based indices:
//   first line:  n m
//   then m lines "i k w", one per undirected edge (each pair at most once).
CouplingMatrix load_edge_list(std::istream& in);
CouplingMatrix load_edge_list_file(const std::string& path);

void save_edge_list(std::ostream& out, const CouplingMatrix& j);
void save_edge_list_file(const std::string& path, const CouplingMatrix& j);

}  // namespace goim
