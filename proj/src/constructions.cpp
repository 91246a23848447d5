#include "ccmm/constructions.hpp"

#include <algorithm>
#include <istream>
#include <numeric>
#include <sstream>

namespace ccmm {

namespace {

void check_cap(std::uint64_t points, std::uint64_t cap, const char* what) {
  if (points > cap)
    throw CapExceeded(std::string(what) + ": " + std::to_string(points) + " points exceeds cap " +
                      std::to_string(cap));
}

}  // namespace

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 v = 1;
  for (std::uint64_t t = 1; t <= k; ++t) {
    v = v * (n - k + t) / t;
    if (v > ~std::uint64_t{0}) throw CapExceeded("binomial overflow");
  }
  return static_cast<std::uint64_t>(v);
}

std::uint64_t multiset_rank(std::span<const ClassId> sorted, std::uint32_t r) {
  std::uint64_t rank = 0;
  for (std::size_t t = 0; t < sorted.size(); ++t) {
    if (sorted[t] >= r || (t && sorted[t] < sorted[t - 1]))
      throw std::invalid_argument("multiset_rank expects a sorted multiset in range");
    rank += binomial(sorted[t] + t, t + 1);
  }
  return rank;
}

CoherentConfiguration group_scheme(const FiniteGroup& g, VerifyMode mode, std::uint64_t cap) {
  check_cap(g.order(), cap, "group_scheme");
  const auto n = static_cast<std::uint32_t>(g.order());
  std::vector<ClassId> m(std::size_t{n} * n);
  for (Element x = 0; x < n; ++x) {
    const Element xi = g.inverse(x);
    for (Element y = 0; y < n; ++y) m[x * n + y] = static_cast<ClassId>(g.multiply(xi, y));
  }
  return CoherentConfiguration::from_class_matrix(n, n, std::move(m), mode);
}

CoherentConfiguration schurian(const GroupAction& action, VerifyMode mode, std::uint64_t cap) {
  const std::uint32_t n = action.points();
  check_cap(n, cap, "schurian");
  const std::size_t nn = std::size_t{n} * n;
  std::vector<std::uint32_t> parent(nn);
  std::iota(parent.begin(), parent.end(), 0u);
  auto find = [&](std::uint32_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  std::vector<Point> img(n);
  for (Element s : action.group().generators()) {
    for (Point x = 0; x < n; ++x) img[x] = action.act(s, x);
    for (Point x = 0; x < n; ++x)
      for (Point y = 0; y < n; ++y) {
        std::uint32_t a = find(std::uint32_t(x * n + y));
        std::uint32_t b = find(std::uint32_t(img[x] * n + img[y]));
        if (a < b) parent[b] = a;
        else if (b < a) parent[a] = b;
      }
  }
  std::vector<ClassId> m(nn), id(nn, UINT32_MAX);
  ClassId r = 0;
  for (std::uint32_t p = 0; p < nn; ++p) {
    const std::uint32_t root = find(p);
    if (id[root] == UINT32_MAX) id[root] = r++;
    m[p] = id[root];
  }
  return CoherentConfiguration::from_class_matrix(n, r, std::move(m), mode);
}

CoherentConfiguration group_association_scheme(const FiniteGroup& g, VerifyMode mode, std::uint64_t cap) {
  check_cap(g.order(), cap, "group_association_scheme");
  const ConjugacyClassTable cc = conjugacy_classes(g);
  const auto n = static_cast<std::uint32_t>(g.order());
  std::vector<ClassId> m(std::size_t{n} * n);
  for (Element x = 0; x < n; ++x) {
    const Element xi = g.inverse(x);
    for (Element y = 0; y < n; ++y) m[x * n + y] = cc.class_of[g.multiply(xi, y)];
  }
  return CoherentConfiguration::from_class_matrix(n, cc.count, std::move(m), mode);
}

CoherentConfiguration direct_product(const CoherentConfiguration& a, const CoherentConfiguration& b,
                                     VerifyMode mode, std::uint64_t cap) {
  const std::uint64_t n = std::uint64_t{a.points()} * b.points();
  check_cap(n, cap, "direct_product");
  const std::uint32_t n2 = b.points(), r2 = b.rank();
  std::vector<ClassId> m(n * n);
  for (Point x1 = 0; x1 < a.points(); ++x1)
    for (Point x2 = 0; x2 < n2; ++x2)
      for (Point y1 = 0; y1 < a.points(); ++y1)
        for (Point y2 = 0; y2 < n2; ++y2)
          m[(std::uint64_t{x1} * n2 + x2) * n + std::uint64_t{y1} * n2 + y2] =
              a.cls(x1, y1) * r2 + b.cls(x2, y2);
  return CoherentConfiguration::from_class_matrix(std::uint32_t(n), a.rank() * r2, std::move(m), mode);
}

CoherentConfiguration direct_power(const CoherentConfiguration& c, unsigned k, VerifyMode mode,
                                   std::uint64_t cap) {
  if (k == 0) throw std::invalid_argument("direct power needs k >= 1");
  CoherentConfiguration out = c;
  for (unsigned t = 1; t < k; ++t) out = direct_product(out, c, mode, cap);
  return out;
}

FusionResult fusion(const CoherentConfiguration& c, const FusionPartition& blocks, VerifyMode mode) {
  std::vector<ClassId> target(c.rank(), UINT32_MAX);
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    if (blocks[b].empty()) throw std::invalid_argument("fusion block " + std::to_string(b) + " is empty");
    for (ClassId i : blocks[b]) {
      if (i >= c.rank()) throw std::invalid_argument("fusion: class id " + std::to_string(i) + " out of range");
      if (target[i] != UINT32_MAX)
        throw std::invalid_argument("fusion: class " + std::to_string(i) + " appears in two blocks");
      target[i] = static_cast<ClassId>(b);
    }
  }
  for (ClassId i = 0; i < c.rank(); ++i)
    if (target[i] == UINT32_MAX) throw std::invalid_argument("fusion: class " + std::to_string(i) + " not covered");
  std::vector<ClassId> m(c.class_matrix().size());
  for (std::size_t pos = 0; pos < m.size(); ++pos) m[pos] = target[c.class_matrix()[pos]];
  const auto r = static_cast<std::uint32_t>(blocks.size());
  FusionResult out;
  out.report = check_axioms(c.points(), r, m, mode);
  // Rebuilt under the same mode so the stored axiom (3) verdict matches the report.
  if (out.report.verdict != Verdict::fail)
    out.config = CoherentConfiguration::from_class_matrix(c.points(), r, std::move(m), mode);
  return out;
}

std::vector<ClassId> symmetric_power_classes(const CoherentConfiguration& c, unsigned k, std::uint64_t cap) {
  if (k == 0) throw std::invalid_argument("symmetric power needs k >= 1");
  std::uint64_t n = 1;
  for (unsigned t = 0; t < k; ++t) {
    n *= c.points();
    check_cap(n, cap, "symmetric_power");
  }
  if (binomial(c.rank() + k - 1, k) > UINT32_MAX) throw CapExceeded("symmetric power rank too large");
  const std::uint32_t base = c.points();
  std::vector<Point> coords(n * k);
  for (std::uint64_t x = 0; x < n; ++x) {
    std::uint64_t code = x;
    for (unsigned t = k; t-- > 0;) {
      coords[x * k + t] = static_cast<Point>(code % base);
      code /= base;
    }
  }
  std::vector<ClassId> m(n * n), ms(k);
  for (std::uint64_t x = 0; x < n; ++x)
    for (std::uint64_t y = 0; y < n; ++y) {
      for (unsigned t = 0; t < k; ++t) ms[t] = c.cls(coords[x * k + t], coords[y * k + t]);
      std::sort(ms.begin(), ms.end());
      m[x * n + y] = static_cast<ClassId>(multiset_rank(ms, c.rank()));
    }
  return m;
}

CoherentConfiguration symmetric_power(const CoherentConfiguration& c, unsigned k, VerifyMode mode,
                                      std::uint64_t cap) {
  auto m = symmetric_power_classes(c, k, cap);
  std::uint64_t n = 1;
  for (unsigned t = 0; t < k; ++t) n *= c.points();
  const std::uint64_t rank = binomial(c.rank() + k - 1, k);
  return CoherentConfiguration::from_class_matrix(std::uint32_t(n), std::uint32_t(rank), std::move(m), mode);
}

FusionPartition read_partition(std::istream& in) {
  FusionPartition blocks;
  std::string line;
  while (std::getline(in, line)) {
    if (const auto h = line.find('#'); h != std::string::npos) line.erase(h);
    std::istringstream ss(line);
    std::vector<ClassId> block;
    long long v;
    while (ss >> v) {
      if (v < 0) throw std::invalid_argument("partition: negative class id");
      block.push_back(static_cast<ClassId>(v));
    }
    if (!ss.eof()) throw std::invalid_argument("partition: bad token in line '" + line + "'");
    if (!block.empty()) blocks.push_back(std::move(block));
  }
  return blocks;
}

}  // namespace ccmm
