#include "ccmm/action.hpp"

#include <charconv>
#include <memory>
#include <numeric>

namespace ccmm {

GroupAction::GroupAction(FiniteGroup group, std::uint32_t points, ActFn act, std::string name)
    : group_(std::move(group)), points_(points), act_(std::move(act)), name_(std::move(name)) {
  if (points_ == 0) throw std::invalid_argument("an action needs at least one point");
}

GroupReport verify_action(const GroupAction& action, std::uint64_t cap) {
  GroupReport rep;
  const FiniteGroup& g = action.group();
  const std::uint64_t n = action.points();
  if (g.order() * g.order() * n > cap) {
    rep.verdict = Verdict::unchecked;
    rep.detail = "action too large for exhaustive check";
    return rep;
  }
  for (Point x = 0; x < n; ++x)
    if (action.act(0, x) != x) {
      rep.verdict = Verdict::fail;
      rep.detail = "identity does not fix point";
      rep.witness = std::array<Element, 3>{0, 0, x};
      return rep;
    }
  for (Element a = 0; a < g.order(); ++a)
    for (Element b = 0; b < g.order(); ++b) {
      const Element ab = g.multiply(a, b);
      for (Point x = 0; x < n; ++x)
        if (action.act(a, action.act(b, x)) != action.act(ab, x)) {
          rep.verdict = Verdict::fail;
          rep.detail = "a.(b.x) != (ab).x";
          rep.witness = std::array<Element, 3>{a, b, x};
          return rep;
        }
    }
  rep.verdict = Verdict::pass;
  rep.detail = "action laws hold";
  return rep;
}

namespace {

std::uint32_t checked_points(std::uint64_t n) {
  if (n > Limits{}.points * 16) throw CapExceeded("action has too many points");
  return static_cast<std::uint32_t>(n);
}

}  // namespace

GroupAction left_regular_action(const FiniteGroup& g) {
  return GroupAction(
      g, checked_points(g.order()),
      [g](Element k, Point x) { return static_cast<Point>(g.multiply(k, x)); },
      "left-regular:" + g.name());
}

GroupAction right_regular_action(const FiniteGroup& g) {
  return GroupAction(
      g, checked_points(g.order()),
      [g](Element k, Point x) { return static_cast<Point>(g.multiply(x, g.inverse(k))); },
      "right-regular:" + g.name());
}

GroupAction conjugation_action(const FiniteGroup& g) {
  const FiniteGroup gg = FiniteGroup::product(g, g);
  const std::uint64_t m = g.order();
  if (m <= 512) {
    // Small groups: act through a cached Cayley table.
    auto table = std::make_shared<std::vector<std::uint32_t>>(cayley_table(g));
    auto inv = std::make_shared<std::vector<std::uint32_t>>(m);
    for (Element x = 0; x < m; ++x) (*inv)[x] = static_cast<std::uint32_t>(g.inverse(x));
    return GroupAction(
        gg, static_cast<std::uint32_t>(m),
        [table, inv, m](Element k, Point x) {
          const std::uint32_t left = (*table)[(k / m) * m + x];
          return static_cast<Point>((*table)[std::uint64_t{left} * m + (*inv)[k % m]]);
        },
        "conjugation:" + g.name());
  }
  return GroupAction(
      gg, checked_points(g.order()),
      [g, m = g.order()](Element k, Point x) {
        return static_cast<Point>(g.multiply(g.multiply(k / m, x), g.inverse(k % m)));
      },
      "conjugation:" + g.name());
}

GroupAction natural_action(const FiniteGroup& g) {
  if (g.kind() == FiniteGroup::Kind::symmetric) {
    return GroupAction(
        g, g.degree(),
        [g](Element k, Point x) { return static_cast<Point>(g.permutation_of(k)[x]); },
        "natural:" + g.name());
  }
  if (g.kind() == FiniteGroup::Kind::wreath) {
    const FiniteGroup& h = g.base_group();
    std::uint64_t points = 1;
    for (unsigned i = 0; i < g.degree(); ++i) points *= h.order();
    return GroupAction(
        g, checked_points(points),
        [g](Element k, Point x) {
          const FiniteGroup& h = g.base_group();
          const unsigned n = g.degree();
          std::vector<Element> xs(n);
          Point code = x;
          for (unsigned i = n; i-- > 0;) {
            xs[i] = code % h.order();
            code /= static_cast<Point>(h.order());
          }
          const std::vector<Element> moved = g.permute_base(g.permutation_of(k), xs);
          const std::vector<Element> base = g.base_of(k);
          std::uint64_t out = 0;
          for (unsigned i = 0; i < n; ++i) out = out * h.order() + h.multiply(base[i], moved[i]);
          return static_cast<Point>(out);
        },
        "natural:" + g.name());
  }
  throw std::invalid_argument("natural action needs a symmetric or wreath group");
}

GroupAction diagonal_translation_action(std::uint32_t n) {
  if (n == 0) throw std::invalid_argument("diagonal action needs n >= 1");
  const FiniteGroup z = FiniteGroup::cyclic(n);
  return GroupAction(
      z, checked_points(std::uint64_t{n} * n),
      [n](Element s, Point x) {
        const Point p = x / n, q = x % n;
        return static_cast<Point>(((p + s) % n) * n + (q + s) % n);
      },
      "diagonal:" + std::to_string(n));
}

GroupAction with_fixed_points(const GroupAction& action, std::uint32_t extra) {
  const std::uint32_t base = action.points();
  return GroupAction(
      action.group(), base + extra,
      [action, base](Element g, Point x) { return x < base ? action.act(g, x) : x; },
      "fixed:" + std::to_string(extra) + ":" + action.name());
}

GroupAction parse_action(std::string_view spec) {
  const auto colon = spec.find(':');
  if (colon == std::string_view::npos)
    throw std::invalid_argument("action spec needs '<kind>:<params>', got '" + std::string(spec) + "'");
  const std::string_view kind = spec.substr(0, colon);
  const std::string_view rest = spec.substr(colon + 1);
  auto number = [](std::string_view text) {
    std::uint32_t v = 0;
    const auto [p, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || p != text.data() + text.size() || text.empty())
      throw std::invalid_argument("expected integer in action spec, got '" + std::string(text) + "'");
    return v;
  };
  if (kind == "left-regular") return left_regular_action(parse_group(rest));
  if (kind == "right-regular") return right_regular_action(parse_group(rest));
  if (kind == "conjugation") return conjugation_action(parse_group(rest));
  if (kind == "natural") return natural_action(parse_group(rest));
  if (kind == "diagonal") return diagonal_translation_action(number(rest));
  if (kind == "fixed") {
    const auto c2 = rest.find(':');
    if (c2 == std::string_view::npos) throw std::invalid_argument("fixed spec is 'fixed:<m>:<action>'");
    return with_fixed_points(parse_action(rest.substr(c2 + 1)), number(rest.substr(0, c2)));
  }
  throw std::invalid_argument("unknown action kind '" + std::string(kind) + "'");
}

namespace {

std::uint64_t find_root(std::vector<std::uint64_t>& parent, std::uint64_t x) {
  while (parent[x] != x) {
    parent[x] = parent[parent[x]];
    x = parent[x];
  }
  return x;
}

void unite(std::vector<std::uint64_t>& parent, std::uint64_t a, std::uint64_t b) {
  a = find_root(parent, a);
  b = find_root(parent, b);
  if (a < b) parent[b] = a;
  else if (b < a) parent[a] = b;
}

}  // namespace

std::vector<std::uint32_t> point_orbits(const GroupAction& action) {
  const std::uint64_t n = action.points();
  std::vector<std::uint64_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  for (Element s : action.group().generators())
    for (Point x = 0; x < n; ++x) unite(parent, x, action.act(s, x));
  std::vector<std::uint32_t> label(n), id(n, UINT32_MAX);
  std::uint32_t next = 0;
  for (Point x = 0; x < n; ++x) {
    const auto root = find_root(parent, x);
    if (id[root] == UINT32_MAX) id[root] = next++;
    label[x] = id[root];
  }
  return label;
}

std::uint64_t diagonal_orbit_count(const GroupAction& action) {
  const std::uint64_t n = action.points();
  std::vector<std::uint64_t> parent(n * n);
  std::iota(parent.begin(), parent.end(), 0);
  for (Element s : action.group().generators()) {
    std::vector<Point> img(n);
    for (Point x = 0; x < n; ++x) img[x] = action.act(s, x);
    for (Point x = 0; x < n; ++x)
      for (Point y = 0; y < n; ++y) unite(parent, x * n + y, img[x] * n + img[y]);
  }
  std::uint64_t count = 0;
  for (std::uint64_t p = 0; p < n * n; ++p)
    if (find_root(parent, p) == p) ++count;
  return count;
}

}  // namespace ccmm
