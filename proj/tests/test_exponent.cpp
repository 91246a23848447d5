#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "ccmm/exponent.hpp"

using namespace ccmm;

namespace {

bool has_flag(const ExponentBound& b, const std::string& f) {
  for (const auto& x : b.flags)
    if (x == f) return true;
  return false;
}

}  // namespace

TEST_CASE("commutative bound") {
  for (std::uint64_t n = 2; n <= 6; ++n) {
    CHECK(omega_s_commutative(n, n, n, n * n * n).value == doctest::Approx(3).epsilon(1e-14));
    CHECK(omega_s_commutative(n, n, n, n * n).value == doctest::Approx(2).epsilon(1e-14));
    CHECK(omega_s_commutative(n, n, n, n * n).flags.empty());
  }
  CHECK(omega_s_commutative(5, 5, 5, 125).value == doctest::Approx(3).epsilon(1e-14));
  const auto v = omega_s_commutative(2, 2, 2, 100);
  CHECK(v.value == 3);
  CHECK(has_flag(v, "vacuous"));
  const auto low = omega_s_commutative(4, 4, 4, 5);
  CHECK(low.value == 2);
  CHECK(has_flag(low, "below-2"));
  CHECK_THROWS_AS(omega_s_commutative(1, 1, 1, 1), std::invalid_argument);
}

TEST_CASE("asymptotic sum inequality") {
  const auto deg = solve_asi({{1, 1, 1}, {1, 1, 1}, {1, 1, 1}}, 3);
  CHECK(deg.value == 3);
  CHECK(has_flag(deg, "degenerate"));
  CHECK(solve_asi({{8, 8, 8}}, 512).value == doctest::Approx(3).epsilon(1e-12));
  const double closed = 3 * (1 - std::log(2.0) / std::log(125.0));
  CHECK(std::abs(solve_asi({{5, 5, 5}, {5, 5, 5}}, 125).value - closed) < 1e-10);
  CHECK(closed == doctest::Approx(2.5693234419266071).epsilon(1e-15));
  CHECK_THROWS_AS(solve_asi({}, 3), std::invalid_argument);
  CHECK_THROWS_AS(solve_asi({{1, 1, 1}, {1, 1, 1}}, 1), std::invalid_argument);
}

TEST_CASE("geometric mean version") {
  std::mt19937_64 rng(4);
  for (int t = 0; t < 40; ++t) {
    const std::uint64_t s = 2 + rng() % 6, k = 1 + rng() % 4;
    const std::vector<Block> blocks(k, Block{s, s, s});
    const double lo = double(k) * std::pow(double(s), 2.0);
    const auto r = std::uint64_t(lo) + 1 + rng() % 50;
    CHECK(std::abs(geometric_mean_bound(blocks, r).value - solve_asi(blocks, r).value) < 1e-10);
  }
  // Unequal blocks: fixtures for both roots.
  const auto a100 = solve_asi({{2, 2, 2}, {4, 4, 4}}, 100);
  const auto g100 = geometric_mean_bound({{2, 2, 2}, {4, 4, 4}}, 100);
  CHECK(a100.value == 3);
  CHECK(g100.value == 3);
  CHECK(solve_asi({{2, 2, 2}, {4, 4, 4}}, 40).value == doctest::Approx(2.5470274644313879).epsilon(1e-14));
  CHECK(geometric_mean_bound({{2, 2, 2}, {4, 4, 4}}, 40).value ==
        doctest::Approx(2.8812853965915757).epsilon(1e-14));
  // Single block: both reduce to the commutative bound.
  CHECK(std::abs(solve_asi({{3, 4, 5}}, 20).value - omega_s_commutative(3, 4, 5, 20).value) < 1e-10);
  CHECK(std::abs(geometric_mean_bound({{3, 4, 5}}, 20).value - omega_s_commutative(3, 4, 5, 20).value) < 1e-10);
}

TEST_CASE("ASI root never exceeds the geometric-mean root") {
  std::mt19937_64 rng(8);
  for (int t = 0; t < 200; ++t) {
    std::vector<Block> blocks;
    const int k = 1 + int(rng() % 4);
    double sum = 0;
    for (int i = 0; i < k; ++i) {
      blocks.push_back({1 + rng() % 6, 1 + rng() % 6, 1 + rng() % 6});
      sum += std::pow(double(blocks.back()[0] * blocks.back()[1] * blocks.back()[2]), 2.0 / 3);
    }
    const auto r = std::uint64_t(std::max<double>(k, sum * (1 + double(rng() % 100) / 100)));
    CHECK(solve_asi(blocks, r).value <= geometric_mean_bound(blocks, r).value + 1e-12);
  }
}

TEST_CASE("noncommutative bound") {
  for (std::uint32_t n = 2; n <= 6; ++n) {
    const auto t = omega_s_noncommutative(n, n, n, {n});
    CHECK(t.value == doctest::Approx(2.3727).epsilon(1e-12));
    CHECK(t.assumptions.size() == 1);
    const auto d = omega_s_noncommutative(n, n, n, std::vector<std::uint32_t>(n, n), 2.3727);
    CHECK(d.value == 3);
    CHECK(has_flag(d, "vacuous"));
  }
  const std::vector<std::uint32_t> ones(20, 1);
  for (double w : {2.0, 2.3727, 3.0}) {
    const auto b = omega_s_noncommutative(3, 3, 3, ones, w);
    CHECK(b.value == doctest::Approx(omega_s_commutative(3, 3, 3, 20).value).epsilon(1e-14));
    CHECK(b.assumptions.empty());
  }
  CHECK_THROWS_AS(omega_s_noncommutative(2, 2, 2, {}), std::invalid_argument);
  CHECK_THROWS_AS(omega_s_noncommutative(2, 2, 2, {2}, 3.5), std::invalid_argument);
}

TEST_CASE("conversion to omega") {
  CHECK(omega_from_omega_s(given_omega_s(2, "x")).value == 2);
  const auto b = omega_from_omega_s(given_omega_s(2.41, "x"));
  CHECK(b.value == doctest::Approx(2.615).epsilon(1e-14));
  CHECK(round_up(b.value, 2) == doctest::Approx(2.62));
  const auto v = omega_from_omega_s(given_omega_s(3, "x"));
  CHECK(v.value == 3);
  CHECK(has_flag(v, "vacuous"));
  double prev = 0;
  for (double s = 2; s <= 3; s += 0.01) {
    const double w = omega_from_omega_s(given_omega_s(s, "x")).value;
    CHECK(w >= prev);
    prev = w;
  }
  CHECK_THROWS_AS(omega_from_omega_s(v), std::invalid_argument);
}

TEST_CASE("the cksu formula") {
  const double v = cksu_formula(10).value;
  CHECK(v > 2.4036);
  CHECK(v < 2.4037);
  CHECK(v <= 2.41);
  double best = 10, best_v = 4;
  for (int m = 4; m <= 100; ++m)
    if (cksu_formula(m).value < best_v) {
      best_v = cksu_formula(m).value;
      best = m;
    }
  CHECK(best == 10);
  CHECK_THROWS_AS(cksu_formula(3), std::invalid_argument);
  CHECK_THROWS_AS(cksu_formula(2), std::invalid_argument);

  const auto w = omega_from_omega_s(cksu_formula(10));
  CHECK(w.value == doctest::Approx(2.6054483912493103).epsilon(1e-15));
  CHECK(w.value <= 2.62);
  CHECK(replay(w));
}

TEST_CASE("published numbers") {
  const auto rows = reproduce_paper_numbers();
  REQUIRE(rows.size() == 3);
  for (const auto& r : rows) CHECK(r.ok);
  CHECK(rows[0].reported == doctest::Approx(2.72));
  CHECK(rows[1].reported == doctest::Approx(2.62));
  CHECK(rows[2].reported == doctest::Approx(2.564));
}

TEST_CASE("provenance replays and formatting") {
  const std::vector<ExponentBound> all{omega_s_commutative(2, 3, 4, 17), solve_asi({{5, 5, 5}, {5, 5, 5}}, 125),
                                       geometric_mean_bound({{2, 2, 2}, {4, 4, 4}}, 40),
                                       omega_s_noncommutative(4, 4, 4, {1, 2, 3}),
                                       omega_from_omega_s(cksu_formula(12)), given_omega_s(2.5, "given")};
  for (const auto& b : all) {
    CHECK(replay(b));
    const auto line = format_bound(b);
    CHECK(parse_bound_value(line) == b.value);
  }
  ExponentBound broken = solve_asi({{5, 5, 5}, {5, 5, 5}}, 125);
  broken.provenance[0].output += 1e-9;
  CHECK_FALSE(replay(broken));
  CHECK(format_bound(cksu_formula(10)) == "omega_s <= 2.4037 (provenance: cksu(10) -> 2.4036322608328735)");
  CHECK(round_up(2.0, 4) == 2.0);
  CHECK(round_up(2.615, 2) == doctest::Approx(2.62));
  CHECK(round_up(2.72, 2) == doctest::Approx(2.72));
  CHECK_THROWS_AS(parse_bound_value("nothing here"), std::invalid_argument);
  CHECK_THROWS_AS(evaluate_rule("bogus", {}), std::invalid_argument);
}
