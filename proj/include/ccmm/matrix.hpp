#pragma once

#include <iosfwd>
#include <random>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace ccmm {

/// Dense row-major rational matrix.
struct QMatrix {
  std::size_t rows = 0, cols = 0;
  std::vector<mpq_class> data;

  QMatrix() = default;
  QMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0) {}
  static QMatrix identity(std::size_t n);

  mpq_class& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
  const mpq_class& operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }
  bool operator==(const QMatrix& o) const { return rows == o.rows && cols == o.cols && data == o.data; }
};

/// Dense row-major 0/1 matrix.
struct BoolMatrix {
  std::size_t rows = 0, cols = 0;
  std::vector<std::uint8_t> data;

  BoolMatrix() = default;
  BoolMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0) {}
  static BoolMatrix identity(std::size_t n);

  std::uint8_t& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
  std::uint8_t operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }
  bool operator==(const BoolMatrix& o) const = default;
};

QMatrix naive_multiply(const QMatrix& a, const QMatrix& b);
BoolMatrix boolean_multiply(const BoolMatrix& a, const BoolMatrix& b);

/// Entries p/q with p in [-9, 9] and q in [1, 5].
QMatrix random_rational_matrix(std::size_t rows, std::size_t cols, std::mt19937_64& rng);
BoolMatrix random_bool_matrix(std::size_t rows, std::size_t cols, std::mt19937_64& rng);

// Text format: "rows cols" then the entries, integers or p/q.
QMatrix read_matrix(std::istream& in);
QMatrix load_matrix(const std::string& path);
void write_matrix(std::ostream& out, const QMatrix& m);
BoolMatrix to_bool(const QMatrix& m);
QMatrix to_rational(const BoolMatrix& m);

}  // namespace ccmm
