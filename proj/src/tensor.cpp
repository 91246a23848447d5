#include "ccmm/tensor.hpp"

#include <algorithm>
#include <ostream>
#include <stdexcept>

namespace ccmm {

void SparseTensor::add(std::uint64_t i, std::uint64_t j, std::uint64_t k, const mpq_class& c) {
  if (i >= dims_[0] || j >= dims_[1] || k >= dims_[2]) throw std::out_of_range("tensor index out of range");
  if (c == 0) return;
  auto [it, fresh] = terms_.try_emplace(Index{i, j, k}, c);
  if (fresh) return;
  it->second += c;
  if (it->second == 0) terms_.erase(it);
}

mpq_class SparseTensor::coefficient(std::uint64_t i, std::uint64_t j, std::uint64_t k) const {
  const auto it = terms_.find(Index{i, j, k});
  return it == terms_.end() ? mpq_class(0) : it->second;
}

SparseTensor matmul_tensor(std::uint64_t l, std::uint64_t m, std::uint64_t n) {
  if (l == 0 || m == 0 || n == 0) throw std::invalid_argument("matmul tensor dims must be positive");
  SparseTensor t({l * m, m * n, n * l});
  for (std::uint64_t a = 0; a < l; ++a)
    for (std::uint64_t b = 0; b < m; ++b)
      for (std::uint64_t c = 0; c < n; ++c) t.add(a * m + b, b * n + c, c * l + a, 1);
  return t;
}

SparseTensor structural_tensor(const IntersectionTensor& t) {
  const std::uint64_t r = t.rank();
  SparseTensor out({r, r, r});
  for (const auto& e : t.entries()) out.add(e.i, e.j, t.star(e.k), e.p);
  return out;
}

SparseTensor structural_tensor(const CoherentConfiguration& c) { return structural_tensor(c.intersection_numbers()); }

SparseTensor tensor_product(const SparseTensor& a, const SparseTensor& b) {
  const auto& da = a.dims();
  const auto& db = b.dims();
  SparseTensor out({da[0] * db[0], da[1] * db[1], da[2] * db[2]});
  for (const auto& [ia, ca] : a.terms())
    for (const auto& [ib, cb] : b.terms())
      out.add(ia[0] * db[0] + ib[0], ia[1] * db[1] + ib[1], ia[2] * db[2] + ib[2], ca * cb);
  return out;
}

SparseTensor direct_sum(const SparseTensor& a, const SparseTensor& b) {
  const auto& da = a.dims();
  const auto& db = b.dims();
  SparseTensor out({da[0] + db[0], da[1] + db[1], da[2] + db[2]});
  for (const auto& [i, c] : a.terms()) out.add(i[0], i[1], i[2], c);
  for (const auto& [i, c] : b.terms()) out.add(da[0] + i[0], da[1] + i[1], da[2] + i[2], c);
  return out;
}

bool support_equal(const SparseTensor& a, const SparseTensor& b) {
  if (a.dims() != b.dims() || a.support_size() != b.support_size()) return false;
  auto ia = a.terms().begin();
  for (auto ib = b.terms().begin(); ib != b.terms().end(); ++ia, ++ib)
    if (ia->first != ib->first) return false;
  return true;
}

SparseTensor relabel(const SparseTensor& t, const std::array<std::vector<std::uint64_t>, 3>& maps,
                     const SparseTensor::Index& new_dims) {
  for (int s = 0; s < 3; ++s)
  {
    if (maps[s].size() != t.dims()[s]) throw std::invalid_argument("relabel map has the wrong length");
    std::vector<std::uint64_t> sorted(maps[s]);
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw std::invalid_argument("relabel map is not injective");
    if (!sorted.empty() && sorted.back() >= new_dims[s]) throw std::invalid_argument("relabel map out of range");
  }
  SparseTensor out(new_dims);
  for (const auto& [i, c] : t.terms()) {
    const SparseTensor::Index j{maps[0][i[0]], maps[1][i[1]], maps[2][i[2]]};
    if (out.coefficient(j[0], j[1], j[2]) != 0) throw std::invalid_argument("relabel map is not injective");
    out.add(j[0], j[1], j[2], c);
  }
  return out;
}

std::array<std::vector<std::uint64_t>, 3> matmul_product_maps(std::array<std::uint64_t, 3> d1,
                                                              std::array<std::uint64_t, 3> d2) {
  // Slot s pairs dimension (p, q) = (d[s], d[s+1]): index u*q + v.
  std::array<std::vector<std::uint64_t>, 3> maps;
  for (int s = 0; s < 3; ++s) {
    const std::uint64_t p1 = d1[s], q1 = d1[(s + 1) % 3], p2 = d2[s], q2 = d2[(s + 1) % 3];
    maps[s].resize(p1 * q1 * p2 * q2);
    for (std::uint64_t u1 = 0; u1 < p1; ++u1)
      for (std::uint64_t v1 = 0; v1 < q1; ++v1)
        for (std::uint64_t u2 = 0; u2 < p2; ++u2)
          for (std::uint64_t v2 = 0; v2 < q2; ++v2) {
            const std::uint64_t from = (u1 * q1 + v1) * (p2 * q2) + (u2 * q2 + v2);
            maps[s][from] = (u1 * p2 + u2) * (q1 * q2) + (v1 * q2 + v2);
          }
  }
  return maps;
}

void write_tensor(std::ostream& out, const SparseTensor& t) {
  out << "tensor " << t.dims()[0] << ' ' << t.dims()[1] << ' ' << t.dims()[2] << ' ' << t.support_size() << '\n';
  for (const auto& [i, c] : t.terms()) out << i[0] << ' ' << i[1] << ' ' << i[2] << ' ' << c.get_str() << '\n';
}

}  // namespace ccmm
