#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "ccmm/matrix.hpp"
#include "ccmm/realization.hpp"
#include "ccmm/tensor.hpp"

namespace ccmm {

/// The bilinear algorithm carried by a realization of <l,m,n>: multiply in the
/// adjacency algebra and read off coefficients. Weights are
/// lambda_{a,b,c} = p^{gamma(c,a)*}_{alpha(a,b), beta(b,c)}.
class WeightedMatMul {
 public:
  /// Verifies the realization first; throws Rejection if it fails.
  static WeightedMatMul build(const CoherentConfiguration& c, const Realization& r);

  const CoherentConfiguration& config() const { return config_; }
  const Realization& realization() const { return real_; }
  std::uint64_t weight(std::uint32_t a, std::uint32_t b, std::uint32_t c) const {
    return weights_[(std::size_t{a} * real_.m + b) * real_.n + c];
  }
  /// lambda = h(c,a) f(a,b) g(b,c) exactly, when such a split exists.
  bool weights_factor() const { return factors_.has_value(); }
  /// The tensor sum lambda_{a,b,c} x_{a,b} y_{b,c} z_{c,a}.
  SparseTensor weighted_tensor() const;

  struct Factors {
    std::vector<mpq_class> f, g, h;  // f[a*m+b], g[b*n+c], h[c*l+a]
  };
  const std::optional<Factors>& factors() const { return factors_; }

 private:
  WeightedMatMul(CoherentConfiguration c, Realization r) : config_(std::move(c)), real_(std::move(r)) {}
  CoherentConfiguration config_;
  Realization real_;
  std::vector<std::uint64_t> weights_;
  std::optional<Factors> factors_;
};

/// C_{a,c} = sum_b lambda_{a,b,c} A_{a,b} B_{b,c}, computed in the algebra.
QMatrix weighted_product(const WeightedMatMul& w, const QMatrix& a, const QMatrix& b);

/// Exactly A*B: A and B are rescaled by the weight factors, multiplied in the
/// algebra through the structure constants, and the result is unscaled.
/// Throws Error if the weights do not factor.
QMatrix embedded_matmul(const WeightedMatMul& w, const QMatrix& a, const QMatrix& b);

/// Same product computed from the class matrix (point-level adjacency
/// matrices) instead of intersection numbers. Used as a cross-check.
QMatrix embedded_matmul_adjacency(const WeightedMatMul& w, const QMatrix& a, const QMatrix& b);

struct BoolMatMulOptions {
  std::uint64_t seed = 0;
  unsigned repetitions = 20;
  bool deterministic = false;  // lift every nonzero entry to 1
};

/// Boolean product with one-sided error: nonzero entries are lifted to random
/// values in {1, 2}, the weighted product is taken, and the supports of the
/// repetitions are OR-ed together.
BoolMatrix boolean_matmul(const WeightedMatMul& w, const BoolMatrix& a, const BoolMatrix& b,
                          const BoolMatMulOptions& options = {});

struct JMinusIReport {
  std::uint32_t n = 0;
  std::uint32_t rank_j_minus_i = 0;
  std::uint32_t rank_m_minus_j = 0;
  bool same_support = false;
};

/// M_{i,j} = zeta^{i-j} for a primitive n-th root zeta. M - J has the support
/// of J - I but rank at most 2. Ranks by SVD at relative tolerance 1e-8.
JMinusIReport jminusi_srank_demo(std::uint32_t n);

/// Elements of Delta_n: triples in [1, n]^3 with s1 + s2 + s3 = n + 2.
using Triple = std::array<std::uint32_t, 3>;
std::vector<Triple> delta_set(std::uint32_t n);
/// s1 = t1, t2 = u2, u3 = s3 imply s = t = u; also checks membership in Delta_n.
bool is_triangle_free(std::uint32_t n, const std::vector<Triple>& s);
/// Greedy maximal triangle-free subset of Delta_n in lexicographic order.
std::vector<Triple> triangle_free_set(std::uint32_t n);

struct Theorem32Report {
  bool pass = false;
  std::string detail;
  std::size_t support = 0;  // terms of the substituted tensor
};

/// Builds a weighted <n,n,n> with seeded weights in {1..97}, cubes it, applies
/// the variable substitution indexed by S and compares with the direct sum of
/// |S| copies of <n^2,n^2,n^2>. Requires n <= 3.
Theorem32Report theorem32_check(std::uint32_t n, const std::vector<Triple>& s, std::uint64_t seed);

}  // namespace ccmm
