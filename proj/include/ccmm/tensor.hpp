#pragma once

#include <array>
#include <map>
#include <optional>
#include <span>
#include <string>

#include <gmpxx.h>

#include "ccmm/config.hpp"

namespace ccmm {

/// A trilinear form sum T_{i,j,k} x_i y_j z_k over three finite index domains
/// with exact rational coefficients. Zero coefficients are never stored.
class SparseTensor {
 public:
  using Index = std::array<std::uint64_t, 3>;

  SparseTensor() = default;
  explicit SparseTensor(Index dims) : dims_(dims) {}

  const Index& dims() const { return dims_; }
  /// Adds c to the coefficient of x_i y_j z_k.
  void add(std::uint64_t i, std::uint64_t j, std::uint64_t k, const mpq_class& c);
  mpq_class coefficient(std::uint64_t i, std::uint64_t j, std::uint64_t k) const;
  const std::map<Index, mpq_class>& terms() const { return terms_; }
  std::size_t support_size() const { return terms_.size(); }

  bool operator==(const SparseTensor& other) const { return dims_ == other.dims_ && terms_ == other.terms_; }

 private:
  Index dims_{0, 0, 0};
  std::map<Index, mpq_class> terms_;
};

/// <l,m,n>: x_{a,b} y_{b,c} z_{c,a} with x index a*m+b, y index b*n+c,
/// z index c*l+a.
SparseTensor matmul_tensor(std::uint64_t l, std::uint64_t m, std::uint64_t n);

/// sum p^{k*}_{i,j} x_i y_j z_k.
SparseTensor structural_tensor(const IntersectionTensor& t);
SparseTensor structural_tensor(const CoherentConfiguration& c);

/// Kronecker product: index (i1, i2) becomes i1 * dim2 + i2 in every slot.
SparseTensor tensor_product(const SparseTensor& a, const SparseTensor& b);
/// Disjoint union of the variable sets; b's indices are shifted past a's.
SparseTensor direct_sum(const SparseTensor& a, const SparseTensor& b);
bool support_equal(const SparseTensor& a, const SparseTensor& b);
/// Renames index i of slot s to maps[s][i]; maps must be injective.
SparseTensor relabel(const SparseTensor& t, const std::array<std::vector<std::uint64_t>, 3>& maps,
                     const SparseTensor::Index& new_dims);

/// Slot maps sending the x/y/z indices of <l,m,n> (x) <l',m',n'> to those of
/// <ll',mm',nn'>.
std::array<std::vector<std::uint64_t>, 3> matmul_product_maps(std::array<std::uint64_t, 3> d1,
                                                              std::array<std::uint64_t, 3> d2);

void write_tensor(std::ostream& out, const SparseTensor& t);

}  // namespace ccmm
