#include <doctest.h>

#include <random>
#include <sstream>

#include "ccmm/constructions.hpp"
#include "ccmm/tensor.hpp"

using namespace ccmm;

TEST_CASE("matrix multiplication tensors") {
  CHECK(matmul_tensor(1, 1, 1).support_size() == 1);
  CHECK(matmul_tensor(2, 2, 2).support_size() == 8);
  const auto t = matmul_tensor(2, 3, 4);
  CHECK(t.dims() == SparseTensor::Index{6, 12, 8});
  CHECK(t.support_size() == 24);
  for (std::uint64_t a = 0; a < 2; ++a)
    for (std::uint64_t b = 0; b < 3; ++b)
      for (std::uint64_t c = 0; c < 4; ++c) CHECK(t.coefficient(a * 3 + b, b * 4 + c, c * 2 + a) == 1);
  for (const auto& [idx, v] : t.terms()) CHECK(v == 1);
  CHECK_THROWS_AS(matmul_tensor(0, 1, 1), std::invalid_argument);
}

TEST_CASE("sparse coefficients cancel to nothing") {
  SparseTensor t({2, 2, 2});
  t.add(0, 1, 1, mpq_class(1, 3));
  t.add(0, 1, 1, mpq_class(-1, 3));
  t.add(1, 1, 1, 0);
  CHECK(t.support_size() == 0);
  CHECK_THROWS_AS(t.add(2, 0, 0, 1), std::out_of_range);
}

TEST_CASE("structural tensors") {
  const auto z2 = structural_tensor(group_scheme(FiniteGroup::cyclic(2)));
  CHECK(z2.support_size() == 4);
  for (const auto& [idx, v] : z2.terms()) {
    CHECK((idx[0] + idx[1] + idx[2]) % 2 == 0);
    CHECK(v == 1);
  }
  const auto z5 = structural_tensor(group_scheme(FiniteGroup::cyclic(5)));
  for (const auto& [idx, v] : z5.terms()) CHECK((idx[0] + idx[1] + idx[2]) % 5 == 0);
  CHECK(z5.support_size() == 25);
  const auto one = structural_tensor(trivial_configuration(1));
  CHECK(one.support_size() == 1);
  CHECK(one.coefficient(0, 0, 0) == 1);
  // The trivial configuration's structural tensor is <n,n,n> up to renaming.
  const auto t3 = structural_tensor(trivial_configuration(3));
  CHECK(t3.support_size() == 27);
}

TEST_CASE("tensor products of matmul tensors are matmul tensors") {
  const std::array<std::uint64_t, 3> d1{2, 1, 3}, d2{1, 2, 2};
  const auto prod = tensor_product(matmul_tensor(2, 1, 3), matmul_tensor(1, 2, 2));
  const auto maps = matmul_product_maps(d1, d2);
  const auto re = relabel(prod, maps, {2 * 2, 2 * 6, 6 * 2});
  CHECK(re == matmul_tensor(2, 2, 6));
}

TEST_CASE("direct sums and supports") {
  const auto a = matmul_tensor(2, 2, 2), b = matmul_tensor(1, 1, 1);
  const auto s = direct_sum(a, b);
  CHECK(s.dims() == SparseTensor::Index{5, 5, 5});
  CHECK(s.support_size() == 9);
  CHECK(s.coefficient(4, 4, 4) == 1);

  SparseTensor w(a.dims());
  std::mt19937_64 rng(1);
  for (const auto& [idx, v] : a.terms()) w.add(idx[0], idx[1], idx[2], mpq_class(long(rng() % 9 + 1), 7));
  CHECK(support_equal(a, w));
  CHECK_FALSE(a == w);
  w.add(0, 0, 1, 1);
  CHECK_FALSE(support_equal(a, w));
}

TEST_CASE("relabel rejects bad maps") {
  const auto t = matmul_tensor(1, 1, 2);
  CHECK_THROWS_AS(relabel(t, {std::vector<std::uint64_t>{0}, {0}, {0}}, {1, 2, 2}), std::invalid_argument);
  CHECK_THROWS_AS(relabel(t, {std::vector<std::uint64_t>{0}, {0, 0}, {0, 1}}, {1, 2, 2}), std::invalid_argument);
}

TEST_CASE("tensor text output is stable") {
  std::ostringstream a, b;
  write_tensor(a, matmul_tensor(2, 2, 2));
  write_tensor(b, matmul_tensor(2, 2, 2));
  CHECK(a.str() == b.str());
  CHECK_FALSE(a.str().empty());
}
