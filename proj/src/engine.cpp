#include "ccmm/engine.hpp"

#include <algorithm>
#include <complex>
#include <numbers>
#include <random>
#include <sstream>

#include <Eigen/Dense>

namespace ccmm {

WeightedMatMul WeightedMatMul::build(const CoherentConfiguration& c, const Realization& r) {
  const auto rep = verify_realization(c, r);
  if (rep.verdict != Verdict::pass) throw Rejection("realization rejected", rep.detail);
  WeightedMatMul w(c, r);
  const std::uint32_t l = r.l, m = r.m, n = r.n;
  w.weights_.resize(std::size_t{l} * m * n);
  for (std::uint32_t a = 0; a < l; ++a)
    for (std::uint32_t b = 0; b < m; ++b)
      for (std::uint32_t cc = 0; cc < n; ++cc) {
        const std::uint64_t lam = c.p(r.a(a, b), r.b(b, cc), c.star(r.c(cc, a)));
        if (lam == 0) throw Error("zero weight in a verified realization");
        w.weights_[(std::size_t{a} * m + b) * n + cc] = lam;
      }

  // Try lambda(a,b,c) = h(c,a) f(a,b) g(b,c), normalized by f(a,0) = g(0,c) = 1.
  auto lam = [&](std::uint32_t a, std::uint32_t b, std::uint32_t cc) { return mpq_class(w.weight(a, b, cc)); };
  Factors fac;
  fac.f.resize(std::size_t{l} * m);
  fac.g.resize(std::size_t{m} * n);
  fac.h.resize(std::size_t{n} * l);
  for (std::uint32_t a = 0; a < l; ++a)
    for (std::uint32_t b = 0; b < m; ++b) fac.f[std::size_t{a} * m + b] = lam(a, b, 0) / lam(a, 0, 0);
  for (std::uint32_t b = 0; b < m; ++b)
    for (std::uint32_t cc = 0; cc < n; ++cc)
      fac.g[std::size_t{b} * n + cc] = lam(0, b, cc) * lam(0, 0, 0) / (lam(0, 0, cc) * lam(0, b, 0));
  for (std::uint32_t cc = 0; cc < n; ++cc)
    for (std::uint32_t a = 0; a < l; ++a) fac.h[std::size_t{cc} * l + a] = lam(a, 0, cc);
  bool ok = true;
  for (std::uint32_t a = 0; a < l && ok; ++a)
    for (std::uint32_t b = 0; b < m && ok; ++b)
      for (std::uint32_t cc = 0; cc < n && ok; ++cc)
        ok = lam(a, b, cc) ==
             fac.h[std::size_t{cc} * l + a] * fac.f[std::size_t{a} * m + b] * fac.g[std::size_t{b} * n + cc];
  if (ok) w.factors_ = std::move(fac);
  return w;
}

SparseTensor WeightedMatMul::weighted_tensor() const {
  const std::uint64_t l = real_.l, m = real_.m, n = real_.n;
  SparseTensor t({l * m, m * n, n * l});
  for (std::uint32_t a = 0; a < l; ++a)
    for (std::uint32_t b = 0; b < m; ++b)
      for (std::uint32_t c = 0; c < n; ++c) t.add(a * m + b, b * n + c, c * l + a, weight(a, b, c));
  return t;
}

namespace {

void check_shapes(const Realization& r, const QMatrix& a, const QMatrix& b) {
  if (a.rows != r.l || a.cols != r.m || b.rows != r.m || b.cols != r.n)
    throw std::invalid_argument("matrix shapes do not match the realization <" + std::to_string(r.l) + "," +
                                std::to_string(r.m) + "," + std::to_string(r.n) + ">");
}

// x = sum A_{a,b} u_{alpha(a,b)}, y = sum B_{b,c} u_{beta(b,c)}, both dense over classes.
std::pair<std::vector<mpq_class>, std::vector<mpq_class>> embed(const WeightedMatMul& w, const QMatrix& a,
                                                                const QMatrix& b, bool scale) {
  const Realization& r = w.realization();
  const std::uint32_t rank = w.config().rank();
  std::vector<mpq_class> x(rank, 0), y(rank, 0);
  const auto& fac = w.factors();
  for (std::uint32_t i = 0; i < r.l; ++i)
    for (std::uint32_t j = 0; j < r.m; ++j)
      x[r.a(i, j)] = scale ? a(i, j) / fac->f[std::size_t{i} * r.m + j] : a(i, j);
  for (std::uint32_t j = 0; j < r.m; ++j)
    for (std::uint32_t k = 0; k < r.n; ++k)
      y[r.b(j, k)] = scale ? b(j, k) / fac->g[std::size_t{j} * r.n + k] : b(j, k);
  return {std::move(x), std::move(y)};
}

std::vector<mpq_class> algebra_product(const IntersectionTensor& t, const std::vector<mpq_class>& x,
                                       const std::vector<mpq_class>& y) {
  std::vector<mpq_class> out(t.rank(), 0);
  std::vector<ClassId> ys;
  for (ClassId j = 0; j < t.rank(); ++j)
    if (y[j] != 0) ys.push_back(j);
  for (ClassId i = 0; i < t.rank(); ++i) {
    if (x[i] == 0) continue;
    for (ClassId j : ys) {
      const mpq_class xy = x[i] * y[j];
      for (const auto& e : t.slice(i, j)) out[e.k] += xy * e.p;
    }
  }
  return out;
}

QMatrix read_off(const WeightedMatMul& w, const std::vector<mpq_class>& prod, bool unscale) {
  const Realization& r = w.realization();
  QMatrix c(r.l, r.n);
  for (std::uint32_t i = 0; i < r.l; ++i)
    for (std::uint32_t k = 0; k < r.n; ++k) {
      c(i, k) = prod[w.config().star(r.c(k, i))];
      if (unscale) c(i, k) /= w.factors()->h[std::size_t{k} * r.l + i];
    }
  return c;
}

void require_factors(const WeightedMatMul& w) {
  if (!w.weights_factor())
    throw Error("realization weights do not split as h(c,a) f(a,b) g(b,c); use weighted_product");
}

}  // namespace

QMatrix weighted_product(const WeightedMatMul& w, const QMatrix& a, const QMatrix& b) {
  check_shapes(w.realization(), a, b);
  const auto [x, y] = embed(w, a, b, false);
  return read_off(w, algebra_product(w.config().intersection_numbers(), x, y), false);
}

QMatrix embedded_matmul(const WeightedMatMul& w, const QMatrix& a, const QMatrix& b) {
  check_shapes(w.realization(), a, b);
  require_factors(w);
  const auto [x, y] = embed(w, a, b, true);
  return read_off(w, algebra_product(w.config().intersection_numbers(), x, y), true);
}

QMatrix embedded_matmul_adjacency(const WeightedMatMul& w, const QMatrix& a, const QMatrix& b) {
  check_shapes(w.realization(), a, b);
  require_factors(w);
  const auto [x, y] = embed(w, a, b, true);
  const CoherentConfiguration& c = w.config();
  const std::uint32_t n = c.points();
  // (XY)_{p,q} for one pair (p,q) of each needed class, X = sum x_i A_i.
  std::vector<mpq_class> prod(c.rank(), 0);
  std::vector<char> done(c.rank(), 0);
  const Realization& r = w.realization();
  for (std::uint32_t i = 0; i < r.l; ++i)
    for (std::uint32_t k = 0; k < r.n; ++k) {
      const ClassId target = c.star(r.c(k, i));
      if (done[target]) continue;
      done[target] = 1;
      const auto [p, q] = c.representative(target);
      mpq_class s = 0;
      for (Point z = 0; z < n; ++z) {
        const mpq_class& xv = x[c.cls(p, z)];
        if (xv == 0) continue;
        s += xv * y[c.cls(z, q)];
      }
      prod[target] = s;
    }
  return read_off(w, prod, true);
}

BoolMatrix boolean_matmul(const WeightedMatMul& w, const BoolMatrix& a, const BoolMatrix& b,
                          const BoolMatMulOptions& opt) {
  if (opt.repetitions == 0) throw std::invalid_argument("repetitions must be at least 1");
  const Realization& r = w.realization();
  if (a.rows != r.l || a.cols != r.m || b.rows != r.m || b.cols != r.n)
    throw std::invalid_argument("matrix shapes do not match the realization");
  std::mt19937_64 rng(opt.seed);
  BoolMatrix out(r.l, r.n);
  const unsigned reps = opt.deterministic ? 1 : opt.repetitions;
  for (unsigned t = 0; t < reps; ++t) {
    QMatrix la(a.rows, a.cols), lb(b.rows, b.cols);
    for (std::size_t i = 0; i < a.data.size(); ++i)
      if (a.data[i]) la.data[i] = opt.deterministic ? 1 : 1 + static_cast<long>(rng() % 2);
    for (std::size_t i = 0; i < b.data.size(); ++i)
      if (b.data[i]) lb.data[i] = opt.deterministic ? 1 : 1 + static_cast<long>(rng() % 2);
    const QMatrix c = weighted_product(w, la, lb);
    for (std::size_t i = 0; i < c.data.size(); ++i) out.data[i] |= c.data[i] != 0;
  }
  return out;
}

JMinusIReport jminusi_srank_demo(std::uint32_t n) {
  if (n < 2) throw std::invalid_argument("jminusi needs n >= 2");
  using cd = std::complex<double>;
  Eigen::MatrixXcd jmi(n, n), mmj(n, n);
  for (std::uint32_t i = 0; i < n; ++i)
    for (std::uint32_t j = 0; j < n; ++j) {
      jmi(i, j) = i == j ? 0.0 : 1.0;
      const double angle = 2 * std::numbers::pi * (static_cast<double>(i) - static_cast<double>(j)) / n;
      mmj(i, j) = i == j ? cd(0.0) : std::polar(1.0, angle) - 1.0;
    }
  auto rank = [](const Eigen::MatrixXcd& m) {
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
    const auto& s = svd.singularValues();
    std::uint32_t r = 0;
    for (Eigen::Index i = 0; i < s.size(); ++i) r += s(i) > 1e-8 * s(0);
    return r;
  };
  JMinusIReport rep;
  rep.n = n;
  rep.rank_j_minus_i = rank(jmi);
  rep.rank_m_minus_j = rank(mmj);
  rep.same_support = true;
  for (std::uint32_t i = 0; i < n; ++i)
    for (std::uint32_t j = 0; j < n; ++j)
      rep.same_support = rep.same_support && ((std::abs(jmi(i, j)) > 1e-8) == (std::abs(mmj(i, j)) > 1e-8));
  return rep;
}

std::vector<Triple> delta_set(std::uint32_t n) {
  std::vector<Triple> out;
  for (std::uint32_t a = 1; a <= n; ++a)
    for (std::uint32_t b = 1; b <= n; ++b)
      if (a + b < n + 2 && n + 2 - a - b <= n) out.push_back({a, b, n + 2 - a - b});
  return out;
}

bool is_triangle_free(std::uint32_t n, const std::vector<Triple>& s) {
  for (const auto& t : s)
    for (auto v : t)
      if (v < 1 || v > n || t[0] + t[1] + t[2] != n + 2) return false;
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = i + 1; j < s.size(); ++j)
      if (s[i] == s[j]) return false;
  for (const auto& a : s)
    for (const auto& b : s) {
      if (a[0] != b[0]) continue;
      for (const auto& c : s)
        if (b[1] == c[1] && c[2] == a[2] && !(a == b && b == c)) return false;
    }
  return true;
}

std::vector<Triple> triangle_free_set(std::uint32_t n) {
  if (n == 0) throw std::invalid_argument("triangle_free_set needs n >= 1");
  std::vector<Triple> s;
  for (const auto& t : delta_set(n)) {
    s.push_back(t);
    if (!is_triangle_free(n, s)) s.pop_back();
  }
  return s;
}

Theorem32Report theorem32_check(std::uint32_t n, const std::vector<Triple>& s, std::uint64_t seed) {
  if (n == 0 || n > 3) throw std::invalid_argument("theorem32_check supports 1 <= n <= 3");
  if (!is_triangle_free(n, s)) throw std::invalid_argument("S is not a triangle-free subset of Delta_n");
  std::mt19937_64 rng(seed);
  std::vector<std::uint64_t> lam(std::size_t{n} * n * n);
  for (auto& v : lam) v = rng() % 97 + 1;
  auto weight = [&](std::uint64_t a, std::uint64_t b, std::uint64_t c) { return lam[(a * n + b) * n + c]; };

  SparseTensor t({std::uint64_t{n} * n, std::uint64_t{n} * n, std::uint64_t{n} * n});
  for (std::uint64_t a = 0; a < n; ++a)
    for (std::uint64_t b = 0; b < n; ++b)
      for (std::uint64_t c = 0; c < n; ++c) t.add(a * n + b, b * n + c, c * n + a, weight(a, b, c));
  const SparseTensor cube = tensor_product(tensor_product(t, t), t);

  // Position of each triple in S, addressed by 0-based coordinates.
  const std::uint64_t n2 = std::uint64_t{n} * n, n4 = n2 * n2;
  std::vector<std::int64_t> slot(n * n * n, -1);
  for (std::size_t q = 0; q < s.size(); ++q) slot[((s[q][0] - 1) * n + (s[q][1] - 1)) * n + (s[q][2] - 1)] = q;
  auto find = [&](std::int64_t s1, std::int64_t s2, std::int64_t s3) -> std::int64_t {
    if (s1 < 0 || s2 < 0 || s3 < 0 || s1 >= n || s2 >= n || s3 >= n) return -1;
    return slot[(s1 * n + s2) * n + s3];
  };
  const std::int64_t sum = static_cast<std::int64_t>(n) - 1;  // 0-based Delta_n

  // A cube variable index is (v1*n^2 + v2)*n^2 + v3 with v_t = p_t*n + q_t.
  auto split = [&](std::uint64_t v, std::array<std::int64_t, 3>& p, std::array<std::int64_t, 3>& q) {
    const std::uint64_t parts[3] = {v / n4, (v / n2) % n2, v % n2};
    for (int k = 0; k < 3; ++k) {
      p[k] = static_cast<std::int64_t>(parts[k] / n);
      q[k] = static_cast<std::int64_t>(parts[k] % n);
    }
  };

  const std::uint64_t block = n4;
  const std::uint64_t dim = s.size() * block;
  SparseTensor result({dim, dim, dim});
  for (const auto& [idx, coef] : cube.terms()) {
    std::array<std::int64_t, 3> xa, xb, yb, yc, zc, za;
    split(idx[0], xa, xb);
    split(idx[1], yb, yc);
    split(idx[2], zc, za);
    // x_{(i1,i2,s3),(s1,j1',j2')} = u_{s,i,j'} / lambda_{i2,j1',s2}
    const std::int64_t sq = find(xb[0], sum - xb[0] - xa[2], xa[2]);
    // y_{(t1,j1,j2),(k1',t2,k2')} = v_{t,j,k'} / lambda_{t3,j2,k2'}
    const std::int64_t tq = find(yb[0], yc[1], sum - yb[0] - yc[1]);
    // z_{(k1,u2,k2),(i1',i2',u3)} = w_{u,k,i'} / lambda_{i1',u1,k1}
    const std::int64_t uq = find(sum - zc[1] - za[2], zc[1], za[2]);
    if (sq < 0 || tq < 0 || uq < 0) continue;
    const auto& sv = s[sq];
    const auto& tv = s[tq];
    const auto& uv = s[uq];
    const mpq_class scale(1, weight(xa[1], xb[1], sv[1] - 1) * weight(tv[2] - 1, yb[2], yc[2]) *
                                 weight(za[0], uv[0] - 1, zc[0]));
    const std::uint64_t i = xa[0] * n + xa[1], jp = xb[1] * n + xb[2];
    const std::uint64_t j = yb[1] * n + yb[2], kp = yc[0] * n + yc[2];
    const std::uint64_t k = zc[0] * n + zc[2], ip = za[0] * n + za[1];
    result.add(sq * block + i * n2 + jp, tq * block + j * n2 + kp, uq * block + k * n2 + ip, coef * scale);
  }

  SparseTensor expected({0, 0, 0});
  for (std::size_t q = 0; q < s.size(); ++q) expected = direct_sum(expected, matmul_tensor(n2, n2, n2));

  Theorem32Report rep;
  rep.support = result.support_size();
  if (result == expected) {
    rep.pass = true;
    rep.detail = std::to_string(s.size()) + " blocks of <" + std::to_string(n2) + "," + std::to_string(n2) + "," +
                 std::to_string(n2) + ">";
    return rep;
  }
  // First monomial where the two tensors disagree.
  std::ostringstream why;
  auto ir = result.terms().begin();
  auto ie = expected.terms().begin();
  while (ir != result.terms().end() || ie != expected.terms().end()) {
    if (ie == expected.terms().end() || (ir != result.terms().end() && ir->first < ie->first)) {
      why << "unexpected monomial (" << ir->first[0] << "," << ir->first[1] << "," << ir->first[2]
          << ") coefficient " << ir->second.get_str();
      break;
    }
    if (ir == result.terms().end() || ie->first < ir->first) {
      why << "missing monomial (" << ie->first[0] << "," << ie->first[1] << "," << ie->first[2] << ")";
      break;
    }
    if (ir->second != ie->second) {
      why << "monomial (" << ir->first[0] << "," << ir->first[1] << "," << ir->first[2] << ") has coefficient "
          << ir->second.get_str();
      break;
    }
    ++ir;
    ++ie;
  }
  rep.detail = why.str();
  return rep;
}

}  // namespace ccmm
