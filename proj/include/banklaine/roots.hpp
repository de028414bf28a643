#pragma once

#include <complex>
#include <vector>

#include "banklaine/log_poly.hpp"

namespace bl {

struct RootResult {
  std::vector<std::complex<double>> roots;
  double max_residual = 0.0;  // max |p(w)| / sum |c_j||w|^j over roots
};

// All roots of p via a balanced companion matrix in a rescaled variable,
// each polished by Newton steps evaluated in log form.
RootResult poly_roots(const LogPoly& p);

// Parlett-Reinsch balancing of a square matrix in place (radix 2).
void balance_matrix(std::vector<double>& a, int n);

}  // namespace bl
