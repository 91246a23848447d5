#pragma once
// Brute-force reference computations used by the tests. None of these call
// into the library's own algorithms beyond reading raw data (class matrices,
// group multiplication).

#include <cstdint>
#include <map>
#include <set>
#include <vector>

#include <gmpxx.h>

#include "ccmm/config.hpp"
#include "ccmm/group.hpp"

namespace oracle {

using ccmm::ClassId;
using ccmm::CoherentConfiguration;
using ccmm::Element;
using ccmm::FiniteGroup;

/// A_i A_j = sum_k p^k_{i,j} A_k for all i, j, by counting z for every (x, y).
inline bool adjacency_identity(const CoherentConfiguration& c) {
  const std::uint32_t n = c.points();
  std::map<std::pair<ClassId, ClassId>, std::uint64_t> count;
  for (std::uint32_t x = 0; x < n; ++x)
    for (std::uint32_t y = 0; y < n; ++y) {
      count.clear();
      for (std::uint32_t z = 0; z < n; ++z) ++count[{c.cls(x, z), c.cls(z, y)}];
      const ClassId k = c.cls(x, y);
      std::size_t nonzero = 0;
      for (const auto& [ij, v] : count) {
        if (c.p(ij.first, ij.second, k) != v) return false;
        ++nonzero;
      }
      // Every nonzero p^k_{i,j} must have been seen.
      std::size_t expected = 0;
      for (const auto& e : c.intersection_numbers().entries())
        if (e.k == k) ++expected;
      if (expected != nonzero) return false;
    }
  return true;
}

/// Class triples (i, j, k) with points x, y, z and (x,y) in R_i, (y,z) in R_j, (z,x) in R_k.
inline std::set<std::array<ClassId, 3>> triangles(const CoherentConfiguration& c) {
  std::set<std::array<ClassId, 3>> out;
  const std::uint32_t n = c.points();
  for (std::uint32_t x = 0; x < n; ++x)
    for (std::uint32_t y = 0; y < n; ++y)
      for (std::uint32_t z = 0; z < n; ++z) out.insert({c.cls(x, y), c.cls(y, z), c.cls(z, x)});
  return out;
}

/// Conjugacy classes by full orbit enumeration over all conjugators.
inline std::uint64_t conjugacy_class_count(const FiniteGroup& g) {
  const std::uint64_t n = g.order();
  std::vector<char> seen(n, 0);
  std::uint64_t classes = 0;
  for (Element x = 0; x < n; ++x) {
    if (seen[x]) continue;
    ++classes;
    for (Element k = 0; k < n; ++k) seen[g.multiply(g.multiply(k, x), g.inverse(k))] = 1;
  }
  return classes;
}

/// s^{-1}s' t^{-1}t' u^{-1}u' = 1 only for s=s', t=t', u=u', over all 6-tuples.
inline bool tpp(const FiniteGroup& h, const std::vector<Element>& s, const std::vector<Element>& t,
                const std::vector<Element>& u) {
  for (auto s1 : s)
    for (auto s2 : s)
      for (auto t1 : t)
        for (auto t2 : t)
          for (auto u1 : u)
            for (auto u2 : u) {
              Element p = h.multiply(h.inverse(s1), s2);
              p = h.multiply(p, h.multiply(h.inverse(t1), t2));
              p = h.multiply(p, h.multiply(h.inverse(u1), u2));
              if (p == 0 && !(s1 == s2 && t1 == t2 && u1 == u2)) return false;
            }
  return true;
}

inline bool ap_free(std::uint32_t n, const std::vector<std::uint32_t>& s) {
  for (auto i : s)
    for (auto j : s)
      for (auto k : s)
        if ((i + j) % n == (2 * k) % n && !(i == j && j == k)) return false;
  return true;
}

inline mpz_class binom(unsigned n, unsigned k) {
  std::vector<mpz_class> row(n + 1, 0);
  row[0] = 1;
  for (unsigned i = 1; i <= n; ++i)
    for (unsigned j = i; j > 0; --j) row[j] += row[j - 1];
  return k <= n ? row[k] : mpz_class(0);
}

/// Plain triple loop over rationals.
inline std::vector<mpq_class> multiply(const std::vector<mpq_class>& a, const std::vector<mpq_class>& b,
                                       std::size_t l, std::size_t m, std::size_t n) {
  std::vector<mpq_class> c(l * n, 0);
  for (std::size_t i = 0; i < l; ++i)
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t j = 0; j < m; ++j) c[i * n + k] += a[i * m + j] * b[j * n + k];
  return c;
}

inline std::vector<std::uint8_t> bool_multiply(const std::vector<std::uint8_t>& a, const std::vector<std::uint8_t>& b,
                                               std::size_t l, std::size_t m, std::size_t n) {
  std::vector<std::uint8_t> c(l * n, 0);
  for (std::size_t i = 0; i < l; ++i)
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t j = 0; j < m; ++j)
        if (a[i * m + j] && b[j * n + k]) c[i * n + k] = 1;
  return c;
}

}  // namespace oracle
