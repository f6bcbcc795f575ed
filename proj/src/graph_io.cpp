#include "goim/graph_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace goim {

CouplingMatrix load_edge_list(std::istream& in) {
  long n = 0, m = 0;
  if (!(in >> n >> m)) {
    throw std::invalid_argument("load_edge_list: expected header line \"n m\"");
  }
  if (n < 1 || m < 0) {
    throw std::invalid_argument("load_edge_list: invalid header values");
  }
  Eigen::MatrixXd j = Eigen::MatrixXd::Zero(n, n);
  for (long e = 0; e < m; ++e) {
    long i = 0, k = 0;
    double w = 0.0;
    if (!(in >> i >> k >> w)) {
      throw std::invalid_argument("load_edge_list: truncated edge list");
    }
    if (i < 0 || i >= n || k < 0 || k >= n) {
      throw std::invalid_argument("load_edge_list: edge index out of range");
    }
    if (i == k) {
      throw std::invalid_argument("load_edge_list: self-loops are not allowed (diagonal must stay zero)");
    }
    if (!std::isfinite(w)) {
      throw std::invalid_argument("load_edge_list: edge weight must be finite");
    }
    if (j(i, k) != 0.0) {
      throw std::invalid_argument("load_edge_list: duplicate edge");
    }
    j(i, k) = w;
    j(k, i) = w;
  }
  return CouplingMatrix(std::move(j));
}

CouplingMatrix load_edge_list_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("load_edge_list: cannot open " + path);
  return load_edge_list(in);
}

void save_edge_list(std::ostream& out, const CouplingMatrix& j) {
  const int n = j.n();
  long m = 0;
  for (int i = 0; i < n; ++i) {
    for (int k = i + 1; k < n; ++k) {
      if (j(i, k) != 0.0) ++m;
    }
  }
  out << n << " " << m << "\n";
  char buf[64];
  for (int i = 0; i < n; ++i) {
    for (int k = i + 1; k < n; ++k) {
      if (j(i, k) != 0.0) {
        std::snprintf(buf, sizeof(buf), "%.17g", j(i, k));
        out << i << " " << k << " " << buf << "\n";
      }
    }
  }
}

void save_edge_list_file(const std::string& path, const CouplingMatrix& j) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("save_edge_list: cannot open " + path);
  save_edge_list(out, j);
}

}  // namespace goim
