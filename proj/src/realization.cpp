#include "ccmm/realization.hpp"

#include <algorithm>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "ccmm/constructions.hpp"

namespace ccmm {

bool is_triangle(const IntersectionTensor& t, ClassId i, ClassId j, ClassId k) {
  return t.p(i, j, t.star(k)) > 0;
}

namespace {

constexpr std::uint64_t kNone = ~std::uint64_t{0};

std::string idx(std::uint32_t x, std::uint32_t y) {
  return "(" + std::to_string(x) + "," + std::to_string(y) + ")";
}

RealizationReport fail(std::string detail) { return {Verdict::fail, std::move(detail)}; }

}  // namespace

RealizationReport verify_simultaneous(const CoherentConfiguration& cfg, const SimultaneousRealization& family) {
  if (family.empty()) return fail("empty realization family");
  const std::uint32_t r = cfg.rank();
  const IntersectionTensor& t = cfg.intersection_numbers();

  // Owner tables: class -> packed (member, first index, second index).
  struct Slot {
    std::uint32_t member, x, y;
  };
  std::vector<std::uint64_t> alpha_of(r, kNone), beta_of(r, kNone), gamma_of(r, kNone);
  std::vector<Slot> slots;
  auto claim = [&](std::vector<std::uint64_t>& owner, const char* name, std::uint32_t member, ClassId cls,
                   std::uint32_t x, std::uint32_t y) -> std::optional<std::string> {
    if (cls >= r)
      return std::string(name) + "_" + std::to_string(member) + idx(x, y) + " = " + std::to_string(cls) +
             " is not a class id";
    if (owner[cls] != kNone) {
      const Slot& s = slots[owner[cls]];
      return std::string(name) + " not injective: " + name + "_" + std::to_string(s.member) + idx(s.x, s.y) +
             " and " + name + "_" + std::to_string(member) + idx(x, y) + " both map to class " +
             std::to_string(cls);
    }
    owner[cls] = slots.size();
    slots.push_back({member, x, y});
    return std::nullopt;
  };

  for (std::uint32_t mi = 0; mi < family.size(); ++mi) {
    const Realization& rz = family[mi];
    if (rz.l == 0 || rz.m == 0 || rz.n == 0) return fail("dimensions must be positive");
    if (rz.alpha.size() != std::size_t{rz.l} * rz.m || rz.beta.size() != std::size_t{rz.m} * rz.n ||
        rz.gamma.size() != std::size_t{rz.n} * rz.l)
      return fail("map sizes do not match dims");
    for (std::uint32_t a = 0; a < rz.l; ++a)
      for (std::uint32_t b = 0; b < rz.m; ++b)
        if (auto e = claim(alpha_of, "alpha", mi, rz.a(a, b), a, b)) return fail(*e);
    for (std::uint32_t b = 0; b < rz.m; ++b)
      for (std::uint32_t c = 0; c < rz.n; ++c)
        if (auto e = claim(beta_of, "beta", mi, rz.b(b, c), b, c)) return fail(*e);
    for (std::uint32_t c = 0; c < rz.n; ++c)
      for (std::uint32_t a = 0; a < rz.l; ++a)
        if (auto e = claim(gamma_of, "gamma", mi, rz.c(c, a), c, a)) return fail(*e);
  }

  // For every alpha/beta image pair, the triangle completers among the gamma
  // images must be exactly gamma(c, a) when the middle indices agree.
  for (std::uint32_t m1 = 0; m1 < family.size(); ++m1) {
    const Realization& r1 = family[m1];
    for (std::uint32_t a = 0; a < r1.l; ++a)
      for (std::uint32_t b = 0; b < r1.m; ++b) {
        const ClassId i = r1.a(a, b);
        for (std::uint32_t m2 = 0; m2 < family.size(); ++m2) {
          const Realization& r2 = family[m2];
          for (std::uint32_t b2 = 0; b2 < r2.m; ++b2)
            for (std::uint32_t c = 0; c < r2.n; ++c) {
              const ClassId j = r2.b(b2, c);
              const bool matched = m1 == m2 && b == b2;
              bool found = false;
              for (const auto& e : t.slice(i, j)) {
                const ClassId k = t.star(e.k);
                const std::uint64_t owner = gamma_of[k];
                if (owner == kNone) continue;
                const Slot& s = slots[owner];
                if (matched && s.member == m1 && s.x == c && s.y == a) {
                  found = true;
                  continue;
                }
                return fail("spurious triangle: alpha_" + std::to_string(m1) + idx(a, b) + ", beta_" +
                            std::to_string(m2) + idx(b2, c) + ", gamma_" + std::to_string(s.member) +
                            idx(s.x, s.y) + " (classes " + std::to_string(i) + "," + std::to_string(j) +
                            "," + std::to_string(k) + ")");
              }
              if (matched && !found)
                return fail("missing triangle: alpha_" + std::to_string(m1) + idx(a, b) + ", beta_" +
                            std::to_string(m2) + idx(b2, c) + ", gamma_" + std::to_string(m1) + idx(c, a));
            }
        }
      }
  }
  return {Verdict::pass, "realization verified"};
}

RealizationReport verify_realization(const CoherentConfiguration& c, const Realization& r) {
  return verify_simultaneous(c, SimultaneousRealization{r});
}

Realization fibers_realization(const CoherentConfiguration& c) {
  const FiberSet f = c.fibers();
  const auto k = static_cast<std::uint32_t>(f.classes.size());
  Realization r{k, k, k, {}, {}, {}};
  r.alpha.resize(std::size_t{k} * k);
  for (std::uint32_t a = 0; a < k; ++a)
    for (std::uint32_t b = 0; b < k; ++b) r.alpha[std::size_t{a} * k + b] = c.cls(f.cells[a][0], f.cells[b][0]);
  r.beta = r.alpha;
  r.gamma = r.alpha;
  return r;
}

// ---------------------------------------------------------------------------
// Triple product properties

namespace {

std::vector<char> quotient_set(const FiniteGroup& h, const std::vector<Element>& s1,
                               const std::vector<Element>& s2) {
  std::vector<char> q(h.order(), 0);
  for (Element x : s1) {
    const Element xi = h.inverse(x);
    for (Element y : s2) q[h.multiply(xi, y)] = 1;
  }
  return q;
}

std::vector<Element> members(const std::vector<char>& set) {
  std::vector<Element> out;
  for (Element e = 0; e < set.size(); ++e)
    if (set[e]) out.push_back(e);
  return out;
}

void check_subset(const FiniteGroup& h, const std::vector<Element>& s) {
  if (s.empty()) throw std::invalid_argument("TPP subsets must be non-empty");
  for (Element e : s)
    if (e >= h.order()) throw std::invalid_argument("TPP subset element out of range");
}

// Whether some (q1, q2, q3) in Q1 x Q2 x Q3 with q1 q2 q3 = 1 exists other
// than the identity triple (when `allow_identity`).
bool has_bad_product(const FiniteGroup& h, const std::vector<char>& q1, const std::vector<char>& q2,
                     const std::vector<char>& q3, bool allow_identity) {
  const auto l1 = members(q1), l2 = members(q2);
  for (Element x : l1)
    for (Element y : l2) {
      const Element need = h.inverse(h.multiply(x, y));
      if (!q3[need]) continue;
      if (allow_identity && x == 0 && y == 0) continue;
      return true;
    }
  return false;
}

}  // namespace

bool tpp_verify(const FiniteGroup& h, const std::vector<Element>& s, const std::vector<Element>& t,
                const std::vector<Element>& u) {
  check_subset(h, s);
  check_subset(h, t);
  check_subset(h, u);
  return !has_bad_product(h, quotient_set(h, s, s), quotient_set(h, t, t), quotient_set(h, u, u), true);
}

namespace {

// Checks every (i, j, k) that involves `focus` (or all triples when focus is
// out of range).
bool family_ok(const FiniteGroup& h, const std::vector<std::array<std::vector<Element>, 3>>& tr,
               std::size_t focus) {
  const std::size_t n = tr.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        if (focus < n && i != focus && j != focus && k != focus) continue;
        const auto qa = quotient_set(h, tr[i][0], tr[j][0]);
        const auto qb = quotient_set(h, tr[j][1], tr[k][1]);
        const auto qc = quotient_set(h, tr[k][2], tr[i][2]);
        if (has_bad_product(h, qa, qb, qc, i == j && j == k)) return false;
      }
  return true;
}

std::vector<std::vector<Element>> subsets_by_size(std::uint64_t order, std::size_t lo, std::size_t hi) {
  std::vector<std::vector<Element>> out;
  for (std::size_t size = lo; size <= hi && size <= order; ++size) {
    std::vector<Element> cur(size);
    std::iota(cur.begin(), cur.end(), 0);
    while (true) {
      out.push_back(cur);
      std::size_t p = size;
      while (p > 0 && cur[p - 1] == order - size + p - 1) --p;
      if (p == 0) break;
      ++cur[p - 1];
      for (std::size_t q = p; q < size; ++q) cur[q] = cur[q - 1] + 1;
    }
  }
  return out;
}

struct Searcher {
  const FiniteGroup& h;
  std::vector<std::array<std::vector<Element>, 3>> candidates;
  std::uint64_t budget;
  std::uint64_t nodes = 0;

  bool dfs(std::vector<std::array<std::vector<Element>, 3>>& fam, std::size_t next, std::size_t want) {
    if (fam.size() == want) return true;
    for (std::size_t c = next; c < candidates.size(); ++c) {
      if (++nodes > budget) return false;
      fam.push_back(candidates[c]);
      if (family_ok(h, fam, fam.size() - 1) && dfs(fam, c + 1, want)) return true;
      fam.pop_back();
    }
    return false;
  }
};

std::vector<std::array<std::vector<Element>, 3>> tpp_candidates(const FiniteGroup& h, std::size_t lo,
                                                                 std::size_t hi) {
  const auto subs = subsets_by_size(h.order(), lo, hi);
  std::vector<std::vector<char>> q;
  q.reserve(subs.size());
  for (const auto& s : subs) q.push_back(quotient_set(h, s, s));
  std::vector<std::array<std::vector<Element>, 3>> out;
  for (std::size_t a = 0; a < subs.size(); ++a)
    for (std::size_t b = 0; b < subs.size(); ++b)
      for (std::size_t c = 0; c < subs.size(); ++c)
        if (!has_bad_product(h, q[a], q[b], q[c], true)) out.push_back({subs[a], subs[b], subs[c]});
  return out;
}

}  // namespace

bool simultaneous_tpp_verify(const TripleFamily& family) {
  if (family.triples.empty()) throw std::invalid_argument("empty triple family");
  for (const auto& tr : family.triples)
    for (const auto& s : tr) check_subset(family.group, s);
  return family_ok(family.group, family.triples, family.triples.size());
}

std::optional<TripleFamily> search_simultaneous_tpp(const FiniteGroup& h, const TppSearchOptions& o) {
  Searcher s{h, tpp_candidates(h, o.min_size, o.max_size), o.node_budget};
  std::vector<std::array<std::vector<Element>, 3>> fam;
  if (!s.dfs(fam, 0, o.triples)) return std::nullopt;
  return TripleFamily{h, fam};
}

std::optional<TripleFamily> largest_simultaneous_tpp(const FiniteGroup& h, std::size_t min_size,
                                                     std::size_t max_size, std::size_t max_triples,
                                                     std::uint64_t node_budget) {
  Searcher s{h, tpp_candidates(h, min_size, max_size), node_budget};
  std::optional<TripleFamily> best;
  for (std::size_t want = 1; want <= max_triples; ++want) {
    std::vector<std::array<std::vector<Element>, 3>> fam;
    if (!s.dfs(fam, 0, want)) break;
    best = TripleFamily{h, fam};
  }
  return best;
}

// ---------------------------------------------------------------------------
// Action realizations

std::optional<std::string> action_hypothesis_witness(const GroupAction& action, const std::vector<Point>& a,
                                                     const std::vector<Point>& b, const std::vector<Point>& c) {
  const FiniteGroup& g = action.group();
  const std::uint32_t np = action.points();
  auto membership = [&](const std::vector<Point>& s) {
    std::vector<char> in(np, 0);
    for (Point x : s) {
      if (x >= np) throw std::invalid_argument("subset point out of range");
      in[x] = 1;
    }
    return in;
  };
  const auto in_a = membership(a), in_b = membership(b), in_c = membership(c);
  auto moves = [&](const std::vector<Point>& s, const std::vector<char>& in) {
    std::vector<std::pair<Element, Point>> out;
    for (Point x : s)
      for (Element f = 0; f < g.order(); ++f)
        if (in[action.act(f, x)]) out.emplace_back(f, x);
    return out;
  };
  const auto la = moves(a, in_a), lb = moves(b, in_b);
  for (const auto& [f, pa] : la) {
    const bool fixes_a = action.act(f, pa) == pa;
    for (const auto& [gg, pb] : lb) {
      const bool fixes_b = action.act(gg, pb) == pb;
      const Element h = g.inverse(g.multiply(f, gg));
      for (Point pc : c) {
        const Point hc = action.act(h, pc);
        if (!in_c[hc]) continue;
        if (fixes_a && fixes_b && hc == pc) continue;
        return "(f,g,h,a,b,c)=(" + std::to_string(f) + "," + std::to_string(gg) + "," + std::to_string(h) +
               "," + std::to_string(pa) + "," + std::to_string(pb) + "," + std::to_string(pc) + ")";
      }
    }
  }
  return std::nullopt;
}

Realization action_realization(const GroupAction& action, const CoherentConfiguration& cfg,
                               const std::vector<Point>& a, const std::vector<Point>& b,
                               const std::vector<Point>& c) {
  if (cfg.points() != action.points()) throw std::invalid_argument("configuration does not match the action");
  if (a.empty() || b.empty() || c.empty()) throw std::invalid_argument("subsets must be non-empty");
  if (auto w = action_hypothesis_witness(action, a, b, c)) throw Rejection("action hypothesis fails", *w);
  Realization r{std::uint32_t(a.size()), std::uint32_t(b.size()), std::uint32_t(c.size()), {}, {}, {}};
  for (Point x : a)
    for (Point y : b) r.alpha.push_back(cfg.cls(x, y));
  for (Point y : b)
    for (Point z : c) r.beta.push_back(cfg.cls(y, z));
  for (Point z : c)
    for (Point x : a) r.gamma.push_back(cfg.cls(z, x));
  const RealizationReport rep = verify_realization(cfg, r);
  if (rep.verdict != Verdict::pass) throw Rejection("action realization failed verification", rep.detail);
  return r;
}

// ---------------------------------------------------------------------------
// Diagonal example

bool is_ap_free(std::uint32_t n, const std::vector<std::uint32_t>& s) {
  for (std::uint32_t i : s)
    for (std::uint32_t j : s)
      for (std::uint32_t k : s)
        if ((std::uint64_t{i} + j) % n == (2ull * k) % n && !(i == j && j == k)) return false;
  return true;
}

std::vector<std::uint32_t> salem_spencer(std::uint32_t n) {
  if (n == 0) throw std::invalid_argument("salem_spencer needs n >= 1");
  const std::uint32_t bound = std::max<std::uint32_t>(1, n / 3);
  std::vector<std::uint32_t> out;
  for (std::uint32_t v = 0; v < bound; ++v) {
    std::uint32_t x = v;
    bool ok = true;
    while (x && ok) {
      ok = x % 3 != 2;
      x /= 3;
    }
    if (ok) out.push_back(v);
  }
  if (!is_ap_free(n, out)) throw std::logic_error("salem_spencer produced a progression");
  return out;
}

ClassId diagonal_class(const CoherentConfiguration& c, std::uint32_t n, std::int64_t a, std::int64_t b,
                       std::int64_t d) {
  auto mod = [n](std::int64_t v) { return static_cast<Point>(((v % n) + n) % n); };
  const Point x = mod(a);  // point (0, a)
  const Point y = mod(a + b) * n + mod(a + b + d);
  return c.cls(x, y);
}

DiagonalExample diagonal_example(std::uint32_t n, const std::vector<std::uint32_t>& s) {
  if (n == 0) throw std::invalid_argument("diagonal_example needs n >= 1");
  if (s.empty()) throw std::invalid_argument("diagonal_example needs a non-empty set");
  std::unordered_set<std::uint32_t> seen;
  for (std::uint32_t i : s)
    if (i >= n || !seen.insert(i).second) throw std::invalid_argument("set elements must be distinct residues");
  if (!is_ap_free(n, s)) throw Rejection("set contains a three-term progression mod " + std::to_string(n), "");
  CoherentConfiguration cfg = schurian(diagonal_translation_action(n));
  if (cfg.rank() != std::uint64_t{n} * n * n) throw std::logic_error("diagonal configuration has wrong rank");
  SimultaneousRealization fam;
  for (std::uint32_t i : s) {
    Realization r{n, n, n, {}, {}, {}};
    const std::int64_t si = i;
    for (std::int64_t x = 0; x < n; ++x)
      for (std::int64_t y = 0; y < n; ++y) r.alpha.push_back(diagonal_class(cfg, n, x, si - x, y));
    for (std::int64_t y = 0; y < n; ++y)
      for (std::int64_t z = 0; z < n; ++z) r.beta.push_back(diagonal_class(cfg, n, y, si - y, z));
    for (std::int64_t z = 0; z < n; ++z)
      for (std::int64_t x = 0; x < n; ++x) r.gamma.push_back(diagonal_class(cfg, n, z, -2 * si - z, x));
    fam.push_back(std::move(r));
  }
  return {std::move(cfg), std::move(fam), s};
}

// ---------------------------------------------------------------------------
// Symmetric powers

SympowMaps sympow_maps(const CoherentConfiguration& cfg, const SimultaneousRealization& family) {
  if (family.empty()) throw std::invalid_argument("sympow needs at least one realization");
  SympowMaps out;
  const std::size_t k = family.size();
  for (const auto& r : family) {
    out.l *= r.l;
    out.m *= r.m;
    out.n *= r.n;
  }
  auto decode = [&](std::uint64_t code, auto dim) {
    std::vector<std::uint32_t> d(k);
    for (std::size_t t = k; t-- > 0;) {
      const std::uint32_t radix = dim(family[t]);
      d[t] = static_cast<std::uint32_t>(code % radix);
      code /= radix;
    }
    return d;
  };
  auto L = [](const Realization& r) { return r.l; };
  auto M = [](const Realization& r) { return r.m; };
  auto N = [](const Realization& r) { return r.n; };
  auto build = [&](std::uint32_t d1, std::uint32_t d2, auto dim1, auto dim2, auto pick,
                   std::vector<std::uint64_t>& ranks, std::vector<std::vector<ClassId>>& ms) {
    for (std::uint64_t x = 0; x < d1; ++x) {
      const auto xs = decode(x, dim1);
      for (std::uint64_t y = 0; y < d2; ++y) {
        const auto ys = decode(y, dim2);
        std::vector<ClassId> m(k);
        for (std::size_t t = 0; t < k; ++t) m[t] = pick(family[t], xs[t], ys[t]);
        std::sort(m.begin(), m.end());
        ranks.push_back(multiset_rank(m, cfg.rank()));
        ms.push_back(std::move(m));
      }
    }
  };
  build(out.l, out.m, L, M, [](const Realization& r, auto x, auto y) { return r.a(x, y); }, out.alpha,
        out.alpha_ms);
  build(out.m, out.n, M, N, [](const Realization& r, auto x, auto y) { return r.b(x, y); }, out.beta,
        out.beta_ms);
  build(out.n, out.l, N, L, [](const Realization& r, auto x, auto y) { return r.c(x, y); }, out.gamma,
        out.gamma_ms);
  return out;
}

RealizationReport verify_sympow_staged(const CoherentConfiguration& cfg, const SimultaneousRealization& family) {
  const SympowMaps sm = sympow_maps(cfg, family);
  const IntersectionTensor& t = cfg.intersection_numbers();
  const std::size_t k = family.size();

  auto index_of = [](const std::vector<std::uint64_t>& ranks, const char* name,
                     std::unordered_map<std::uint64_t, std::uint64_t>& out) -> std::optional<std::string> {
    for (std::uint64_t x = 0; x < ranks.size(); ++x)
      if (!out.emplace(ranks[x], x).second) return std::string(name) + " not injective on multisets";
    return std::nullopt;
  };
  std::unordered_map<std::uint64_t, std::uint64_t> a_idx, b_idx, g_idx;
  if (auto e = index_of(sm.alpha, "alpha", a_idx)) return fail(*e);
  if (auto e = index_of(sm.beta, "beta", b_idx)) return fail(*e);
  if (auto e = index_of(sm.gamma, "gamma", g_idx)) return fail(*e);

  std::vector<char> in_gamma(cfg.rank(), 0);
  for (const auto& r : family)
    for (ClassId g : r.gamma) in_gamma[g] = 1;
  std::unordered_map<std::uint64_t, std::vector<ClassId>> cache;
  auto completers = [&](ClassId i, ClassId j) -> const std::vector<ClassId>& {
    const std::uint64_t key = std::uint64_t{i} * cfg.rank() + j;
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    std::vector<ClassId> out;
    for (const auto& e : t.slice(i, j)) {
      const ClassId kk = t.star(e.k);
      if (in_gamma[kk]) out.push_back(kk);
    }
    return cache.emplace(key, std::move(out)).first->second;
  };

  std::vector<std::size_t> perm(k);
  std::vector<ClassId> cand(k);
  std::vector<std::uint64_t> found;
  for (std::uint64_t ai = 0; ai < sm.alpha.size(); ++ai) {
    const auto& I = sm.alpha_ms[ai];
    const std::uint64_t a = ai / sm.m, b = ai % sm.m;
    for (std::uint64_t bi = 0; bi < sm.beta.size(); ++bi) {
      const auto& J = sm.beta_ms[bi];
      const std::uint64_t b2 = bi / sm.n, c = bi % sm.n;
      found.clear();
      std::iota(perm.begin(), perm.end(), 0);
      do {
        std::vector<const std::vector<ClassId>*> lists(k);
        bool empty = false;
        for (std::size_t q = 0; q < k && !empty; ++q) {
          lists[q] = &completers(I[q], J[perm[q]]);
          empty = lists[q]->empty();
        }
        if (empty) continue;
        std::vector<std::size_t> pos(k, 0);
        while (true) {
          for (std::size_t q = 0; q < k; ++q) cand[q] = (*lists[q])[pos[q]];
          std::vector<ClassId> sorted = cand;
          std::sort(sorted.begin(), sorted.end());
          const auto it = g_idx.find(multiset_rank(sorted, cfg.rank()));
          if (it != g_idx.end()) found.push_back(it->second);
          std::size_t q = k;
          while (q > 0 && ++pos[q - 1] == lists[q - 1]->size()) pos[--q] = 0;
          if (q == 0) break;
        }
      } while (std::next_permutation(perm.begin(), perm.end()));
      std::sort(found.begin(), found.end());
      found.erase(std::unique(found.begin(), found.end()), found.end());
      const std::uint64_t expected = c * sm.l + a;
      const bool matched = b == b2;
      if (matched && (found.size() != 1 || found[0] != expected))
        return fail("sympow: matched indices a=" + std::to_string(a) + " b=" + std::to_string(b) +
                    " c=" + std::to_string(c) + " give " + std::to_string(found.size()) + " gamma completers");
      if (!matched && !found.empty())
        return fail("sympow: spurious triangle at a=" + std::to_string(a) + " b=" + std::to_string(b) +
                    " b'=" + std::to_string(b2) + " c=" + std::to_string(c));
    }
  }
  return {Verdict::pass, "symmetric-power realization verified from intersection numbers"};
}

std::pair<CoherentConfiguration, Realization> sympow_realization(const CoherentConfiguration& cfg,
                                                                 const SimultaneousRealization& family,
                                                                 VerifyMode mode, std::uint64_t cap) {
  const SympowMaps sm = sympow_maps(cfg, family);
  CoherentConfiguration sym = symmetric_power(cfg, static_cast<unsigned>(family.size()), mode, cap);
  const std::uint32_t base = cfg.points();
  auto lookup = [&](const std::vector<ClassId>& ms) {
    std::uint64_t x = 0, y = 0;
    for (ClassId c : ms) {
      const auto [px, py] = cfg.representative(c);
      x = x * base + px;
      y = y * base + py;
    }
    return sym.cls(static_cast<Point>(x), static_cast<Point>(y));
  };
  Realization r{sm.l, sm.m, sm.n, {}, {}, {}};
  for (const auto& ms : sm.alpha_ms) r.alpha.push_back(lookup(ms));
  for (const auto& ms : sm.beta_ms) r.beta.push_back(lookup(ms));
  for (const auto& ms : sm.gamma_ms) r.gamma.push_back(lookup(ms));
  return {std::move(sym), std::move(r)};
}

// ---------------------------------------------------------------------------
// Wreath-product realizations

GrpAsInstance grp_as_realization(const TripleFamily& family) {
  const FiniteGroup& h = family.group;
  if (!h.is_abelian()) throw std::invalid_argument("grp-as needs an abelian group");
  if (!simultaneous_tpp_verify(family)) throw Rejection("family fails the simultaneous TPP", "");
  const auto n = static_cast<unsigned>(family.triples.size());
  FiniteGroup g = FiniteGroup::wreath(n, h);
  if (g.order() > 4096) throw CapExceeded("grp-as: |S_n x| H^n| above 4096");
  const Permutation id = identity_permutation(n);
  auto embed = [&](std::size_t which) {
    std::vector<Point> out;
    std::vector<std::size_t> pos(n, 0);
    while (true) {
      std::vector<Element> base(n);
      for (unsigned t = 0; t < n; ++t) base[t] = family.triples[t][which][pos[t]];
      out.push_back(static_cast<Point>(g.wreath_element(base, id)));
      unsigned t = n;
      while (t > 0 && ++pos[t - 1] == family.triples[t - 1][which].size()) pos[--t] = 0;
      if (t == 0) break;
    }
    return out;
  };
  std::vector<Point> a = embed(0), b = embed(1), c = embed(2);
  GroupAction action = conjugation_action(g);
  CoherentConfiguration cfg = schurian(action);
  Realization r = action_realization(action, cfg, a, b, c);
  return {std::move(g), std::move(action), std::move(cfg), std::move(r), std::move(a), std::move(b), std::move(c)};
}

// ---------------------------------------------------------------------------
// Text format

void write_realization(std::ostream& out, const Realization& r) {
  out << "real 1\n";
  out << "dims " << r.l << " " << r.m << " " << r.n << "\n";
  out << "alpha\n";
  for (std::uint32_t a = 0; a < r.l; ++a)
    for (std::uint32_t b = 0; b < r.m; ++b) out << a << " " << b << " -> " << r.a(a, b) << "\n";
  out << "beta\n";
  for (std::uint32_t b = 0; b < r.m; ++b)
    for (std::uint32_t c = 0; c < r.n; ++c) out << b << " " << c << " -> " << r.b(b, c) << "\n";
  out << "gamma\n";
  for (std::uint32_t c = 0; c < r.n; ++c)
    for (std::uint32_t a = 0; a < r.l; ++a) out << c << " " << a << " -> " << r.c(c, a) << "\n";
}

Realization read_realization(std::istream& in) {
  std::string text, line;
  while (std::getline(in, line)) {
    if (const auto h = line.find('#'); h != std::string::npos) line.erase(h);
    text += line + "\n";
  }
  std::istringstream ss(text);
  std::string magic, version, kw;
  if (!(ss >> magic >> version) || magic != "real" || version != "1")
    throw std::invalid_argument("not a 'real 1' file");
  Realization r;
  long long l, m, n;
  if (!(ss >> kw >> l >> m >> n) || kw != "dims" || l <= 0 || m <= 0 || n <= 0 || l * m > 100000000 ||
      m * n > 100000000 || n * l > 100000000)
    throw std::invalid_argument("expected 'dims <l> <m> <n>'");
  r.l = std::uint32_t(l);
  r.m = std::uint32_t(m);
  r.n = std::uint32_t(n);
  auto block = [&](const char* name, std::uint32_t d1, std::uint32_t d2, std::vector<ClassId>& map) {
    if (!(ss >> kw) || kw != name) throw std::invalid_argument(std::string("expected block '") + name + "'");
    map.assign(std::size_t{d1} * d2, UINT32_MAX);
    for (std::size_t t = 0; t < map.size(); ++t) {
      long long x, y, v;
      std::string arrow;
      if (!(ss >> x >> y >> arrow >> v) || arrow != "->" || x < 0 || y < 0 || v < 0 || x >= d1 || y >= d2)
        throw std::invalid_argument(std::string("bad line in block '") + name + "'");
      ClassId& slot = map[std::size_t(x) * d2 + std::size_t(y)];
      if (slot != UINT32_MAX) throw std::invalid_argument(std::string("duplicate entry in block '") + name + "'");
      slot = ClassId(v);
    }
  };
  block("alpha", r.l, r.m, r.alpha);
  block("beta", r.m, r.n, r.beta);
  block("gamma", r.n, r.l, r.gamma);
  if (ss >> kw) throw std::invalid_argument("trailing data in realization file");
  return r;
}

}  // namespace ccmm
