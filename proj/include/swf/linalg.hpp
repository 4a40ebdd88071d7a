#pragma once

#include <vector>

#include "swf/rational.hpp"

namespace swf {

struct RatMatrix {
  int rows = 0, cols = 0;
  std::vector<Rational> a;

  RatMatrix() = default;
  RatMatrix(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c, Rational(0)) {
    budget_check(a.size() * sizeof(Rational), "rational matrix");
  }
  Rational& at(int r, int c) { return a[static_cast<std::size_t>(r) * cols + c]; }
  const Rational& at(int r, int c) const { return a[static_cast<std::size_t>(r) * cols + c]; }
};

std::vector<Rational> mat_apply(const RatMatrix& m, const std::vector<Rational>& v);

// Exact Gaussian elimination with partial pivoting on nonzero entries.
// Throws std::invalid_argument on a singular system.
std::vector<Rational> solve_linear(RatMatrix m, std::vector<Rational> rhs);

}  // namespace swf
