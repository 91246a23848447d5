#include <doctest.h>

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>

#include "ccmm/constructions.hpp"
#include "corpus.hpp"
#include "oracles.hpp"

using namespace ccmm;

TEST_CASE("group schemes") {
  const auto z4 = group_scheme(FiniteGroup::cyclic(4));
  CHECK(z4.rank() == 4);
  CHECK(z4.is_commutative());
  const auto s3 = group_scheme(FiniteGroup::symmetric(3));
  CHECK(s3.rank() == 6);
  CHECK_FALSE(s3.is_commutative());
  const auto v4 = group_scheme(FiniteGroup::abelian({2, 2}));
  CHECK(v4.rank() == 4);
  CHECK(v4.is_symmetric());
  // In a group scheme the normalized class id is the element code.
  for (const auto& g : corpus::small_groups()) {
    const auto grp = parse_group(g);
    const auto c = group_scheme(grp);
    for (Element x = 0; x < grp.order(); ++x)
      for (Element y = 0; y < grp.order(); ++y) CHECK(c.cls(x, y) == grp.multiply(grp.inverse(x), y));
  }
}

TEST_CASE("regular Schurian configurations are the group scheme") {
  for (const auto& g : corpus::small_groups()) {
    const auto grp = parse_group(g);
    CAPTURE(g);
    CHECK(schurian(left_regular_action(grp)) == group_scheme(grp));
    // Right translation preserves x y^-1 rather than x^-1 y, so the two agree
    // after renaming every point by its inverse.
    std::vector<Point> inv(grp.order());
    for (Element x = 0; x < grp.order(); ++x) inv[x] = Point(grp.inverse(x));
    const auto right = schurian(right_regular_action(grp));
    CHECK(right.permute_points(inv) == group_scheme(grp));
    if (grp.is_abelian()) CHECK(right == group_scheme(grp));
  }
}

TEST_CASE("Schurian examples") {
  const auto d4 = schurian(diagonal_translation_action(4));
  CHECK(d4.points() == 16);
  CHECK(d4.rank() == 64);
  const auto fixed = schurian(parse_action("fixed:2:left-regular:cyclic:3"));
  CHECK(fixed.fibers().classes.size() == 3);
  CHECK_FALSE(fixed.is_association_scheme());
  for (const char* a : {"natural:sym:4", "diagonal:3", "conjugation:sym:3", "natural:wreath:2:cyclic:2"})
    CHECK(schurian(parse_action(a)).rank() == diagonal_orbit_count(parse_action(a)));
}

TEST_CASE("group association schemes") {
  const auto s3 = group_association_scheme(FiniteGroup::symmetric(3));
  CHECK(s3.points() == 6);
  CHECK(s3.rank() == 3);
  CHECK(s3.is_commutative());
  for (const char* g : {"sym:4", "wreath:2:cyclic:2", "wreath:2:cyclic:3", "dihedral:5", "alt:4", "dicyclic:2"}) {
    const auto c = group_association_scheme(parse_group(g));
    CAPTURE(g);
    CHECK(c.is_commutative());
    CHECK(c.rank() == conjugacy_classes(parse_group(g)).count);
  }
  CHECK(group_association_scheme(parse_group("wreath:2:cyclic:2")).rank() == 5);
  for (const char* g : {"cyclic:6", "abelian:2x2x2", "abelian:3x3"})
    CHECK(group_association_scheme(parse_group(g)) == group_scheme(parse_group(g)));
}

TEST_CASE("direct products") {
  const auto one = trivial_configuration(1);
  const auto s3 = group_scheme(FiniteGroup::symmetric(3));
  CHECK(direct_product(s3, one) == s3);
  CHECK(direct_product(one, s3) == s3);

  // Z2 x Z3 against Z6 after the CRT reindexing x -> (x mod 2, x mod 3).
  const auto p = direct_product(group_scheme(FiniteGroup::cyclic(2)), group_scheme(FiniteGroup::cyclic(3)));
  std::vector<Point> crt(6);
  for (Point x = 0; x < 6; ++x) crt[(x % 2) * 3 + x % 3] = x;
  CHECK(p.permute_points(crt) == group_scheme(FiniteGroup::cyclic(6)));

  const auto a = group_association_scheme(FiniteGroup::symmetric(3));  // r = 3
  const auto b = group_scheme(FiniteGroup::abelian({2, 2}));          // r = 4
  const auto ab = direct_product(a, b);
  CHECK(ab.rank() == 12);
  CHECK(ab.is_commutative());
  CHECK_FALSE(direct_product(s3, b).is_commutative());
  CHECK(direct_power(group_scheme(FiniteGroup::cyclic(2)), 3).rank() == 8);
  CHECK_THROWS_AS(direct_product(s3, s3, VerifyMode::full, 20), CapExceeded);
}

TEST_CASE("fusions") {
  const auto z4 = group_scheme(FiniteGroup::cyclic(4));
  const auto id = fusion(z4, {{0}, {1}, {2}, {3}});
  REQUIRE(id.config);
  CHECK(*id.config == z4);

  const auto sym = fusion(z4, {{0}, {1, 3}, {2}});
  REQUIRE(sym.config);
  CHECK(sym.config->rank() == 3);
  CHECK(sym.config->is_symmetric());
  CHECK(sym.config->axiom3_verdict() == Verdict::pass);

  // {1,2} has transposes {4,3} split over two blocks.
  const auto bad = fusion(group_scheme(FiniteGroup::cyclic(5)), {{0}, {1, 2}, {3}, {4}});
  CHECK_FALSE(bad.config);
  CHECK(bad.report.axiom == 2);
  CHECK_FALSE(bad.report.detail.empty());
  const auto bad3 = fusion(group_scheme(FiniteGroup::cyclic(5)), {{0}, {1, 4}, {2}, {3}});
  CHECK_FALSE(bad3.config);
  CHECK(bad3.report.axiom == 3);

  CHECK_THROWS_AS(fusion(z4, {{0}, {1, 3}}), std::invalid_argument);
  CHECK_THROWS_AS(fusion(z4, {{0}, {1, 3}, {2, 3}}), std::invalid_argument);
  CHECK_THROWS_AS(fusion(z4, {{0}, {}, {1, 2, 3}}), std::invalid_argument);

  std::istringstream in("# blocks\n0\n1 3 # g and -g\n2\n");
  CHECK(read_partition(in) == FusionPartition{{0}, {1, 3}, {2}});
}

TEST_CASE("fusing a group scheme by conjugacy gives the association scheme") {
  for (const char* g : {"sym:3", "dihedral:4", "alt:4"}) {
    const auto grp = parse_group(g);
    const auto f = fusion(group_scheme(grp), corpus::conjugacy_partition(grp));
    REQUIRE(f.config);
    CHECK(*f.config == group_association_scheme(grp));
  }
}

TEST_CASE("symmetric powers") {
  const auto z3 = group_scheme(FiniteGroup::cyclic(3));
  CHECK(symmetric_power(z3, 1) == z3);
  CHECK(symmetric_power(z3, 2).rank() == 6);
  const auto z2 = symmetric_power(group_scheme(FiniteGroup::cyclic(2)), 2);
  CHECK(z2.points() == 4);
  CHECK(z2.rank() == 3);
  CHECK(z2.axiom3_verdict() == Verdict::pass);
  CHECK(symmetric_power(z3, 3).is_commutative());
  CHECK_THROWS_AS(symmetric_power(z3, 0), std::invalid_argument);
  CHECK_THROWS_AS(symmetric_power(z3, 3, VerifyMode::full, 20), CapExceeded);
}

TEST_CASE("symmetric power rank law on small bases") {
  for (const auto& e : corpus::configurations()) {
    if (e.sympow) continue;
    const auto c = e.make();
    for (unsigned k = 2; k <= 3; ++k) {
      std::uint64_t n = 1;
      for (unsigned t = 0; t < k; ++t) n *= c.points();
      if (n > 400) continue;
      CAPTURE(e.name);
      CAPTURE(k);
      const auto s = symmetric_power(c, k);
      CHECK(mpz_class(std::to_string(s.rank())) == oracle::binom(c.rank() + k - 1, k));
      CHECK(s.axiom3_verdict() == Verdict::pass);
      if (c.is_commutative()) CHECK(s.is_commutative());
    }
  }
}

TEST_CASE("multiset ranks enumerate all multisets") {
  for (std::uint32_t r = 1; r <= 5; ++r)
    for (unsigned k = 1; k <= 3; ++k) {
      std::vector<std::uint64_t> seen;
      std::vector<ClassId> ms(k, 0);
      std::function<void(unsigned, ClassId)> rec = [&](unsigned t, ClassId lo) {
        if (t == k) {
          seen.push_back(multiset_rank(ms, r));
          return;
        }
        for (ClassId v = lo; v < r; ++v) {
          ms[t] = v;
          rec(t + 1, v);
        }
      };
      rec(0, 0);
      std::sort(seen.begin(), seen.end());
      std::vector<std::uint64_t> expect(seen.size());
      std::iota(expect.begin(), expect.end(), 0);
      CHECK(seen == expect);
      CHECK(mpz_class(std::to_string(seen.size())) == oracle::binom(r + k - 1, k));
    }
  CHECK(binomial(10, 3) == 120);
  CHECK(binomial(3, 5) == 0);
}
