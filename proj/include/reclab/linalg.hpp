#pragma once

#include <numeric>
#include <vector>

#include "reclab/padic.hpp"

namespace reclab {

/// Dense matrix over Z/p^n, row-major.
struct ZpMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<u64> data;

  ZpMatrix() = default;
  ZpMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0) {}
  u64& operator()(std::size_t r, std::size_t c) { return data[r * cols + c]; }
  u64 operator()(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
};

struct ZpSolution {
  std::vector<u64> x;  // values mod p^n; component i is only meaningful mod p^(n - loss)
  int loss = 0;        // largest pivot valuation
  std::size_t rank = 0;
};

/// Solves A x = b over Z/p^n by elimination with p-adic pivoting (pivot = entry
/// of minimal valuation, first in scan order). Free variables are set to zero.
/// `column_order`, when given, permutes the scan order of the unknowns; any
/// returned solution satisfies the system regardless of the order.
inline ZpSolution solve_mod_pn(ZpMatrix a, std::vector<u64> b, u64 p, int n,
                               const std::vector<std::size_t>& column_order = {}) {
  const u64 m = detail::ipow(p, static_cast<unsigned>(n));
  const std::size_t rows = a.rows, cols = a.cols;
  std::vector<std::size_t> perm(cols);
  if (column_order.empty()) {
    std::iota(perm.begin(), perm.end(), std::size_t{0});
  } else {
    perm = column_order;
  }
  for (auto& v : a.data) v %= m;
  for (auto& v : b) v %= m;

  std::vector<int> pivot_val;
  std::size_t r = 0;
  for (; r < std::min(rows, cols); ++r) {
    int best = n;
    std::size_t br = 0, bc = 0;
    for (std::size_t i = r; i < rows; ++i) {
      for (std::size_t j = r; j < cols; ++j) {
        u64 e = a(i, perm[j]);
        if (e == 0) continue;
        int v = detail::val(e, p);
        if (v < best) {
          best = v;
          br = i;
          bc = j;
        }
      }
    }
    if (best >= n) break;
    if (br != r) {
      for (std::size_t j = 0; j < cols; ++j) std::swap(a(r, j), a(br, j));
      std::swap(b[r], b[br]);
    }
    std::swap(perm[r], perm[bc]);
    const u64 pv = detail::ipow(p, static_cast<unsigned>(best));
    const u64 unit_inv = detail::inv_mod_pn(a(r, perm[r]) / pv, p, m);
    for (std::size_t i = r + 1; i < rows; ++i) {
      u64 e = a(i, perm[r]);
      if (e == 0) continue;
      u64 factor = detail::mulmod(e / pv, unit_inv, m);
      for (std::size_t j = r; j < cols; ++j) {
        std::size_t c = perm[j];
        a(i, c) = detail::submod(a(i, c), detail::mulmod(factor, a(r, c), m), m);
      }
      b[i] = detail::submod(b[i], detail::mulmod(factor, b[r], m), m);
    }
    pivot_val.push_back(best);
  }
  const std::size_t rank = r;
  for (std::size_t i = rank; i < rows; ++i)
    if (b[i] != 0) fail(Errc::NoSolution, "inconsistent linear system");

  ZpSolution sol;
  sol.rank = rank;
  sol.x.assign(cols, 0);
  for (std::size_t k = rank; k-- > 0;) {
    u64 s = b[k];
    for (std::size_t j = k + 1; j < rank; ++j)
      s = detail::submod(s, detail::mulmod(a(k, perm[j]), sol.x[perm[j]], m), m);
    const int v = pivot_val[k];
    const u64 pv = detail::ipow(p, static_cast<unsigned>(v));
    if (s % pv != 0) fail(Errc::NoSolution, "pivot does not divide right-hand side");
    const u64 unit_inv = detail::inv_mod_pn(a(k, perm[k]) / pv, p, m);
    sol.x[perm[k]] = detail::mulmod(s / pv, unit_inv, m);
    sol.loss = std::max(sol.loss, v);
  }
  return sol;
}

}  // namespace reclab
