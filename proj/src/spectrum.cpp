#include "ccmm/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <optional>
#include <random>

#include <Eigen/Dense>

namespace ccmm {

std::vector<std::vector<std::int64_t>> regular_representation(const IntersectionTensor& t) {
  const std::uint32_t r = t.rank();
  std::vector<std::vector<std::int64_t>> out(r, std::vector<std::int64_t>(std::size_t{r} * r, 0));
  for (const auto& e : t.entries()) out[e.i][std::size_t{e.k} * r + e.j] = e.p;
  return out;
}

// ---------------------------------------------------------------------------
// Exact center

namespace {

using SparseRow = std::vector<std::pair<std::uint32_t, std::int64_t>>;

// Rows of sum_t c_t (p^k_{t,i} - p^k_{i,t}) = 0, one per (i, k).
std::vector<SparseRow> commutator_rows(const IntersectionTensor& t) {
  std::map<std::uint64_t, std::map<std::uint32_t, std::int64_t>> rows;
  const std::uint64_t r = t.rank();
  for (const auto& e : t.entries()) {
    if (e.i == e.j) continue;
    rows[std::uint64_t{e.j} * r + e.k][e.i] += e.p;
    rows[std::uint64_t{e.i} * r + e.k][e.j] -= e.p;
  }
  std::vector<SparseRow> out;
  for (auto& [key, cols] : rows) {
    SparseRow row;
    for (auto [c, v] : cols)
      if (v != 0) row.emplace_back(c, v);
    if (!row.empty()) out.push_back(std::move(row));
  }
  return out;
}

constexpr std::uint64_t kPrime = (std::uint64_t{1} << 61) - 1;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b) {
  const unsigned __int128 z = static_cast<unsigned __int128>(a) * b;
  std::uint64_t v = static_cast<std::uint64_t>(z & kPrime) + static_cast<std::uint64_t>(z >> 61);
  if (v >= kPrime) v -= kPrime;
  return v;
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e) {
  std::uint64_t r = 1;
  while (e) {
    if (e & 1) r = mulmod(r, a);
    a = mulmod(a, a);
    e >>= 1;
  }
  return r;
}

std::uint64_t to_mod(std::int64_t v) {
  const std::int64_t m = v % static_cast<std::int64_t>(kPrime);
  return static_cast<std::uint64_t>(m < 0 ? m + static_cast<std::int64_t>(kPrime) : m);
}

// a/b with |a|, b <= sqrt(p/2) congruent to v, if one exists.
std::optional<mpq_class> reconstruct(std::uint64_t v) {
  const __int128 bound = 1518500249;  // floor(sqrt(2^61 / 2))
  __int128 r0 = kPrime, r1 = v, t0 = 0, t1 = 1;
  while (r1 > bound) {
    const __int128 q = r0 / r1;
    const __int128 r2 = r0 - q * r1, t2 = t0 - q * t1;
    r0 = r1;
    r1 = r2;
    t0 = t1;
    t1 = t2;
  }
  if (t1 == 0 || (t1 < 0 ? -t1 : t1) > bound) return std::nullopt;
  mpq_class q(mpz_class(static_cast<long>(r1)), mpz_class(static_cast<long>(t1 < 0 ? -t1 : t1)));
  if (t1 < 0) q = -q;
  q.canonicalize();
  return q;
}

bool in_kernel(const std::vector<SparseRow>& rows, const std::vector<mpq_class>& x) {
  for (const auto& row : rows) {
    mpq_class s = 0;
    for (auto [c, v] : row) s += x[c] * v;
    if (s != 0) return false;
  }
  return true;
}

// RREF of a dense matrix over Q; returns pivot columns.
std::vector<std::uint32_t> rref(std::vector<std::vector<mpq_class>>& a, std::uint32_t cols) {
  std::vector<std::uint32_t> pivots;
  std::size_t row = 0;
  for (std::uint32_t c = 0; c < cols && row < a.size(); ++c) {
    std::size_t p = row;
    while (p < a.size() && a[p][c] == 0) ++p;
    if (p == a.size()) continue;
    std::swap(a[p], a[row]);
    const mpq_class inv = 1 / a[row][c];
    for (auto& v : a[row]) v *= inv;
    for (std::size_t q = 0; q < a.size(); ++q) {
      if (q == row || a[q][c] == 0) continue;
      const mpq_class f = a[q][c];
      for (std::uint32_t cc = c; cc < cols; ++cc) a[q][cc] -= f * a[row][cc];
    }
    pivots.push_back(c);
    ++row;
  }
  a.resize(row);
  return pivots;
}

CenterBasis basis_from_rref(const std::vector<std::vector<mpq_class>>& a, const std::vector<std::uint32_t>& pivots,
                            std::uint32_t cols) {
  CenterBasis out;
  std::vector<char> is_pivot(cols, 0);
  for (auto c : pivots) is_pivot[c] = 1;
  for (std::uint32_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    std::vector<mpq_class> v(cols, 0);
    v[f] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -a[i][f];
    out.vectors.push_back(std::move(v));
    out.free_columns.push_back(f);
  }
  return out;
}

std::optional<CenterBasis> modular_center(const std::vector<SparseRow>& rows, std::uint32_t r, std::uint64_t seed) {
  // Compress the system with random combinations; the kernel is unchanged
  // with overwhelming probability and the result is verified exactly anyway.
  std::mt19937_64 rng(seed);
  const std::size_t m = std::min<std::size_t>(rows.size(), std::size_t{r} + 4);
  std::vector<std::vector<std::uint64_t>> a(m, std::vector<std::uint64_t>(r, 0));
  if (m == rows.size()) {
    for (std::size_t i = 0; i < m; ++i)
      for (auto [c, v] : rows[i]) a[i][c] = to_mod(v);
  } else {
    for (const auto& row : rows)
      for (std::size_t i = 0; i < m; ++i) {
        const std::uint64_t w = rng() % kPrime;
        for (auto [c, v] : row) {
          a[i][c] += mulmod(w, to_mod(v));
          if (a[i][c] >= kPrime) a[i][c] -= kPrime;
        }
      }
  }
  std::vector<std::uint32_t> pivots;
  std::size_t row = 0;
  for (std::uint32_t c = 0; c < r && row < m; ++c) {
    std::size_t p = row;
    while (p < m && a[p][c] == 0) ++p;
    if (p == m) continue;
    std::swap(a[p], a[row]);
    const std::uint64_t inv = powmod(a[row][c], kPrime - 2);
    for (auto& v : a[row]) v = mulmod(v, inv);
    for (std::size_t q = 0; q < m; ++q) {
      if (q == row || a[q][c] == 0) continue;
      const std::uint64_t f = a[q][c];
      for (std::uint32_t cc = c; cc < r; ++cc) {
        const std::uint64_t sub = mulmod(f, a[row][cc]);
        a[q][cc] = a[q][cc] >= sub ? a[q][cc] - sub : a[q][cc] + kPrime - sub;
      }
    }
    pivots.push_back(c);
    ++row;
  }
  std::vector<std::vector<mpq_class>> q(pivots.size(), std::vector<mpq_class>(r, 0));
  for (std::size_t i = 0; i < pivots.size(); ++i)
    for (std::uint32_t c = 0; c < r; ++c) {
      if (a[i][c] == 0) continue;
      const auto v = reconstruct(a[i][c]);
      if (!v) return std::nullopt;
      q[i][c] = *v;
    }
  CenterBasis basis = basis_from_rref(q, pivots, r);
  for (const auto& v : basis.vectors)
    if (!in_kernel(rows, v)) return std::nullopt;
  return basis;
}

}  // namespace

CenterBasis center_basis(const IntersectionTensor& t) {
  const std::uint32_t r = t.rank();
  const auto rows = commutator_rows(t);
  for (std::uint64_t seed = 1; seed <= 3; ++seed)
    if (auto b = modular_center(rows, r, seed)) return *b;
  std::vector<std::vector<mpq_class>> dense;
  for (const auto& row : rows) {
    std::vector<mpq_class> d(r, 0);
    for (auto [c, v] : row) d[c] = v;
    dense.push_back(std::move(d));
  }
  const auto pivots = rref(dense, r);
  return basis_from_rref(dense, pivots, r);
}

// ---------------------------------------------------------------------------
// Numerical decomposition

namespace {

using cd = std::complex<double>;
using CVec = std::vector<cd>;

CVec multiply(const IntersectionTensor& t, const CVec& x, const CVec& y) {
  CVec out(t.rank(), 0.0);
  for (const auto& e : t.entries()) {
    const cd xi = x[e.i];
    if (xi == 0.0) continue;
    out[e.k] += xi * y[e.j] * static_cast<double>(e.p);
  }
  return out;
}

struct Attempt {
  std::vector<std::uint32_t> degrees;
  double residual = 0;
  bool svd_checked = false;
  std::string error;
};

Attempt attempt(const IntersectionTensor& t, const CenterBasis& basis, const std::vector<double>& trace,
                std::uint64_t seed, const SpectralOptions& opt) {
  Attempt out;
  const std::uint32_t r = t.rank();
  const std::size_t z = basis.vectors.size();
  std::vector<CVec> zb(z, CVec(r));
  for (std::size_t s = 0; s < z; ++s)
    for (std::uint32_t c = 0; c < r; ++c) zb[s][c] = basis.vectors[s][c].get_d();

  std::mt19937_64 rng(seed);
  auto unit = [&] { return static_cast<double>(rng() >> 11) * 0x1.0p-53 * 2.0 - 1.0; };
  CVec w(r, 0.0);
  for (std::size_t s = 0; s < z; ++s) {
    const cd coef(unit(), unit());
    for (std::uint32_t c = 0; c < r; ++c) w[c] += coef * zb[s][c];
  }
  CVec h(r);
  for (std::uint32_t c = 0; c < r; ++c) h[c] = w[c] + std::conj(w[t.star(c)]);

  Eigen::MatrixXcd m(z, z);
  for (std::size_t s = 0; s < z; ++s) {
    const CVec prod = multiply(t, h, zb[s]);
    for (std::size_t q = 0; q < z; ++q) m(q, s) = prod[basis.free_columns[q]];
  }
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(m);
  if (es.info() != Eigen::Success) {
    out.error = "eigen-solver failed";
    return out;
  }
  const double scale = std::max(1.0, m.norm());
  std::vector<cd> ev(es.eigenvalues().data(), es.eigenvalues().data() + z);
  for (std::size_t a = 0; a < z; ++a)
    for (std::size_t b = a + 1; b < z; ++b)
      if (std::abs(ev[a] - ev[b]) < opt.cluster_tolerance * scale) {
        out.error = "eigenvalue collision";
        return out;
      }

  for (std::size_t q = 0; q < z; ++q) {
    CVec x(r, 0.0);
    for (std::size_t s = 0; s < z; ++s) {
      const cd v = es.eigenvectors()(s, q);
      for (std::uint32_t c = 0; c < r; ++c) x[c] += v * zb[s][c];
    }
    const CVec x2 = multiply(t, x, x);
    cd num = 0, den = 0;
    for (std::uint32_t c = 0; c < r; ++c) {
      num += x2[c] * std::conj(x[c]);
      den += x[c] * std::conj(x[c]);
    }
    const cd mu = num / den;
    if (std::abs(mu) < 1e-12) {
      out.error = "eigenvector is nilpotent";
      return out;
    }
    CVec e(r);
    for (std::uint32_t c = 0; c < r; ++c) e[c] = x[c] / mu;
    const CVec e2 = multiply(t, e, e);
    double res = 0;
    for (std::uint32_t c = 0; c < r; ++c) res = std::max(res, std::abs(e2[c] - e[c]));
    cd d2 = 0;
    for (std::uint32_t c = 0; c < r; ++c) d2 += e[c] * trace[c];
    const double rounded = std::round(d2.real());
    res = std::max({res, std::abs(d2.real() - rounded), std::abs(d2.imag())});
    out.residual = std::max(out.residual, res);
    if (res > opt.idempotent_tolerance) {
      out.error = "idempotent residual too large";
      return out;
    }
    const auto sq = static_cast<std::uint32_t>(std::llround(std::sqrt(rounded)));
    if (rounded < 1 || std::uint64_t{sq} * sq != static_cast<std::uint64_t>(rounded)) {
      out.error = "dimension " + std::to_string(rounded) + " of a simple block is not a square";
      return out;
    }
    if (r <= 128) {
      Eigen::MatrixXcd le = Eigen::MatrixXcd::Zero(r, r);
      for (const auto& en : t.entries()) le(en.k, en.j) += e[en.i] * static_cast<double>(en.p);
      Eigen::JacobiSVD<Eigen::MatrixXcd> svd(le);
      const auto& sv = svd.singularValues();
      const double thr = opt.idempotent_tolerance * std::max(1.0, sv(0));
      std::uint64_t rank = 0;
      for (Eigen::Index i = 0; i < sv.size(); ++i) rank += sv(i) > thr;
      if (rank != static_cast<std::uint64_t>(rounded)) {
        out.error = "SVD rank disagrees with trace";
        return out;
      }
      out.svd_checked = true;
    }
    out.degrees.push_back(sq);
  }
  std::sort(out.degrees.begin(), out.degrees.end());
  return out;
}

}  // namespace

DegreeProfile character_degrees(const IntersectionTensor& t, const SpectralOptions& opt) {
  const std::uint32_t r = t.rank();
  if (r > opt.cap) throw CapExceeded("rank " + std::to_string(r) + " exceeds spectral cap");
  const CenterBasis basis = center_basis(t);
  DegreeProfile prof;
  prof.center_dimension = static_cast<std::uint32_t>(basis.vectors.size());
  if (basis.vectors.size() == r && r > 256) {
    // Commutative semisimple algebra of dimension r: r one-dimensional blocks.
    prof.degrees.assign(r, 1);
    return prof;
  }
  std::vector<double> trace(r, 0.0);
  for (const auto& e : t.entries())
    if (e.j == e.k) trace[e.i] += e.p;

  std::string last;
  double worst = 0;
  for (unsigned tries = 0; tries <= opt.max_retries; ++tries) {
    const std::uint64_t seed = opt.seed + tries;
    Attempt a = attempt(t, basis, trace, seed, opt);
    worst = std::max(worst, a.residual);
    if (!a.error.empty()) {
      last = a.error;
      continue;
    }
    std::uint64_t sum = 0;
    for (auto d : a.degrees) sum += std::uint64_t{d} * d;
    if (sum != r)
      throw SpectralFailure("sum of squared degrees " + std::to_string(sum) + " != rank " + std::to_string(r),
                            a.residual);
    prof.degrees = std::move(a.degrees);
    prof.residual = a.residual;
    prof.seed_used = seed;
    prof.svd_checked = a.svd_checked;
    return prof;
  }
  throw SpectralFailure("decomposition failed after retries: " + last, worst);
}

DegreeProfile character_degrees(const CoherentConfiguration& c, const SpectralOptions& opt) {
  return character_degrees(c.intersection_numbers(), opt);
}

bool max_degree_lower_bound_check(const CoherentConfiguration& c, const DegreeProfile& profile) {
  if (profile.degrees.empty()) return false;
  return profile.degrees.back() >= c.fibers().classes.size();
}

}  // namespace ccmm
