#pragma once

#include <array>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ccmm/action.hpp"
#include "ccmm/config.hpp"

namespace ccmm {

/// Index maps for <l,m,n>: alpha[a*m+b], beta[b*n+c], gamma[c*l+a].
struct Realization {
  std::uint32_t l = 0, m = 0, n = 0;
  std::vector<ClassId> alpha, beta, gamma;

  ClassId a(std::uint32_t i, std::uint32_t j) const { return alpha[std::size_t{i} * m + j]; }
  ClassId b(std::uint32_t j, std::uint32_t k) const { return beta[std::size_t{j} * n + k]; }
  ClassId c(std::uint32_t k, std::uint32_t i) const { return gamma[std::size_t{k} * l + i]; }
  bool operator==(const Realization&) const = default;
};

using SimultaneousRealization = std::vector<Realization>;

struct RealizationReport {
  Verdict verdict = Verdict::unchecked;
  std::string detail;
};

/// Triangle (i, j, k): points x, y, z with (x,y) in R_i, (y,z) in R_j,
/// (z,x) in R_k; equivalently p^{k*}_{i,j} > 0.
bool is_triangle(const IntersectionTensor& t, ClassId i, ClassId j, ClassId k);

/// Injectivity plus the exact triangle condition over all index 6-tuples.
RealizationReport verify_realization(const CoherentConfiguration& c, const Realization& r);

/// The family condition: alpha_i, beta_j, gamma_k images form a triangle iff
/// i = j = k and the indices match. Implies disjoint images.
RealizationReport verify_simultaneous(const CoherentConfiguration& c, const SimultaneousRealization& family);

/// <f,f,f> from one representative point per fiber.
Realization fibers_realization(const CoherentConfiguration& c);

// Group-theoretic conditions ------------------------------------------------

/// s^{-1}s' t^{-1}t' u^{-1}u' = 1 only when s = s', t = t', u = u'.
bool tpp_verify(const FiniteGroup& h, const std::vector<Element>& s, const std::vector<Element>& t,
                const std::vector<Element>& u);

struct TripleFamily {
  FiniteGroup group;
  std::vector<std::array<std::vector<Element>, 3>> triples;
};

bool simultaneous_tpp_verify(const TripleFamily& family);

struct TppSearchOptions {
  std::size_t triples = 2;       // family size to look for
  std::size_t min_size = 1;      // per-subset size bounds
  std::size_t max_size = 2;
  std::uint64_t node_budget = 5'000'000;
};

/// Deterministic lexicographic search for a simultaneous-TPP family. Triples
/// are ordered by (A, B, C) with subsets ordered by size then lexicographically.
std::optional<TripleFamily> search_simultaneous_tpp(const FiniteGroup& h, const TppSearchOptions& options);

/// Largest family size reachable by the same search (bounded by max_triples).
std::optional<TripleFamily> largest_simultaneous_tpp(const FiniteGroup& h, std::size_t min_size,
                                                     std::size_t max_size, std::size_t max_triples,
                                                     std::uint64_t node_budget = 5'000'000);

// Action realizations -------------------------------------------------------

/// Checks: fa in A, gb in B, hc in C and fgh = 1 imply fa = a, gb = b, hc = c.
/// Returns a witness "(f,g,h,a,b,c)" on failure.
std::optional<std::string> action_hypothesis_witness(const GroupAction& action, const std::vector<Point>& a,
                                                     const std::vector<Point>& b, const std::vector<Point>& c);

/// alpha(a, b') = class of (a, b') and so on, in the given Schurian
/// configuration of `action`. Throws Rejection when the hypothesis fails.
Realization action_realization(const GroupAction& action, const CoherentConfiguration& schurian_config,
                               const std::vector<Point>& a, const std::vector<Point>& b,
                               const std::vector<Point>& c);

// Progression-free sets used by the diagonal example.
bool is_ap_free(std::uint32_t n, const std::vector<std::uint32_t>& s);
/// Integers in [0, max(1, floor(n/3))) whose base-3 digits are 0 or 1.
std::vector<std::uint32_t> salem_spencer(std::uint32_t n);

struct DiagonalExample {
  CoherentConfiguration config;
  SimultaneousRealization family;
  std::vector<std::uint32_t> set;
};

/// Z/n acting diagonally on (Z/n)^2 with alpha_i(x,y) = (x, i-x, y),
/// beta_i(y,z) = (y, i-y, z), gamma_i(z,x) = (z, -2i-z, x) for i in S.
/// Class (a,b,c) has representative ((0,a), (a+b, a+b+c)).
DiagonalExample diagonal_example(std::uint32_t n, const std::vector<std::uint32_t>& s);
ClassId diagonal_class(const CoherentConfiguration& c, std::uint32_t n, std::int64_t a, std::int64_t b,
                       std::int64_t d);

// Symmetric powers ----------------------------------------------------------

/// Product dims with mixed-radix indices (factor 0 most significant); map
/// values are multiset ranks of the coordinate classes.
struct SympowMaps {
  std::uint32_t l = 1, m = 1, n = 1;
  std::vector<std::uint64_t> alpha, beta, gamma;
  std::vector<std::vector<ClassId>> alpha_ms, beta_ms, gamma_ms;  // sorted multisets
};
SympowMaps sympow_maps(const CoherentConfiguration& c, const SimultaneousRealization& family);

/// Verifies the product realization in Sym^k C from C's intersection numbers
/// alone: a multiset triangle needs permutations aligning the coordinates into
/// triangles of C.
RealizationReport verify_sympow_staged(const CoherentConfiguration& c, const SimultaneousRealization& family);

/// Materializes Sym^k C and the realization in it.
std::pair<CoherentConfiguration, Realization> sympow_realization(const CoherentConfiguration& c,
                                                                 const SimultaneousRealization& family,
                                                                 VerifyMode mode = VerifyMode::full,
                                                                 std::uint64_t cap = Limits{}.points);

// Wreath-product realizations ----------------------------------------------

struct GrpAsInstance {
  FiniteGroup group;  // S_n x| H^n
  GroupAction action; // G x G on G
  CoherentConfiguration config;
  Realization realization;
  std::vector<Point> a, b, c;
};

/// A = A_1 x ... x A_n (and B, C) embedded as base elements of S_n x| H^n,
/// realized in the Schurian configuration of (x,y).g = x g y^{-1}.
GrpAsInstance grp_as_realization(const TripleFamily& family);

// "real 1" text format.
void write_realization(std::ostream& out, const Realization& r);
Realization read_realization(std::istream& in);

}  // namespace ccmm
