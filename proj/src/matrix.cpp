#include "ccmm/matrix.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>

namespace ccmm {

QMatrix QMatrix::identity(std::size_t n) {
  QMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

BoolMatrix BoolMatrix::identity(std::size_t n) {
  BoolMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

QMatrix naive_multiply(const QMatrix& a, const QMatrix& b) {
  if (a.cols != b.rows) throw std::invalid_argument("matrix shapes do not compose");
  QMatrix c(a.rows, b.cols);
  for (std::size_t i = 0; i < a.rows; ++i)
    for (std::size_t j = 0; j < a.cols; ++j) {
      if (a(i, j) == 0) continue;
      for (std::size_t k = 0; k < b.cols; ++k) c(i, k) += a(i, j) * b(j, k);
    }
  return c;
}

BoolMatrix boolean_multiply(const BoolMatrix& a, const BoolMatrix& b) {
  if (a.cols != b.rows) throw std::invalid_argument("matrix shapes do not compose");
  BoolMatrix c(a.rows, b.cols);
  for (std::size_t i = 0; i < a.rows; ++i)
    for (std::size_t j = 0; j < a.cols; ++j)
      if (a(i, j))
        for (std::size_t k = 0; k < b.cols; ++k) c(i, k) |= b(j, k);
  return c;
}

QMatrix random_rational_matrix(std::size_t rows, std::size_t cols, std::mt19937_64& rng) {
  QMatrix m(rows, cols);
  for (auto& v : m.data) {
    const long p = static_cast<long>(rng() % 19) - 9;
    const long q = static_cast<long>(rng() % 5) + 1;
    v = mpq_class(p, q);
    v.canonicalize();
  }
  return m;
}

BoolMatrix random_bool_matrix(std::size_t rows, std::size_t cols, std::mt19937_64& rng) {
  BoolMatrix m(rows, cols);
  for (auto& v : m.data) v = static_cast<std::uint8_t>(rng() & 1);
  return m;
}

QMatrix read_matrix(std::istream& in) {
  std::size_t rows = 0, cols = 0;
  if (!(in >> rows >> cols) || rows == 0 || cols == 0) throw std::invalid_argument("matrix header must be 'rows cols'");
  QMatrix m(rows, cols);
  for (auto& v : m.data) {
    std::string tok;
    if (!(in >> tok)) throw std::invalid_argument("matrix has too few entries");
    try {
      v = mpq_class(tok);
    } catch (const std::invalid_argument&) {
      throw std::invalid_argument("bad matrix entry '" + tok + "'");
    }
    if (v.get_den() == 0) throw std::invalid_argument("zero denominator in '" + tok + "'");
    v.canonicalize();
  }
  std::string extra;
  if (in >> extra) throw std::invalid_argument("matrix has too many entries");
  return m;
}

QMatrix load_matrix(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return read_matrix(in);
}

void write_matrix(std::ostream& out, const QMatrix& m) {
  out << m.rows << ' ' << m.cols << '\n';
  for (std::size_t i = 0; i < m.rows; ++i) {
    for (std::size_t j = 0; j < m.cols; ++j) out << (j ? " " : "") << m(i, j).get_str();
    out << '\n';
  }
}

BoolMatrix to_bool(const QMatrix& m) {
  BoolMatrix b(m.rows, m.cols);
  for (std::size_t i = 0; i < m.data.size(); ++i) {
    if (m.data[i] != 0 && m.data[i] != 1) throw std::invalid_argument("boolean matrix entries must be 0 or 1");
    b.data[i] = m.data[i] == 1;
  }
  return b;
}

QMatrix to_rational(const BoolMatrix& m) {
  QMatrix q(m.rows, m.cols);
  for (std::size_t i = 0; i < m.data.size(); ++i) q.data[i] = m.data[i];
  return q;
}

}  // namespace ccmm
