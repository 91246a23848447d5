#pragma once

#include <array>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

#include "ccmm/common.hpp"

namespace ccmm {

/// A permutation of {0,...,n-1} stored as its image list. Composition follows
/// (p*q)(x) = p(q(x)).
using Permutation = std::vector<std::uint8_t>;

/// Finite groups with an integer element codec. Elements are the integers
/// 0..order-1 and 0 is always the identity.
///
/// Codecs:
///  - abelian (m_1,...,m_t): mixed radix, first factor most significant;
///  - symmetric S_n: lexicographic rank of the image list;
///  - wreath S_n x| H^n: perm_rank * |H|^n + base code, base digits are H codes
///    with coordinate 0 most significant;
///  - product G1 x G2: a * |G2| + b;
///  - table: an explicit Cayley table (dihedral, dicyclic, alternating).
///
/// Instances are immutable and cheap to copy.
class FiniteGroup {
 public:
  enum class Kind { cyclic, abelian, symmetric, wreath, product, table };

  static FiniteGroup cyclic(std::uint64_t m);
  static FiniteGroup abelian(std::vector<std::uint64_t> moduli);
  static FiniteGroup symmetric(unsigned n);
  /// S_n x| H^n. Throws std::invalid_argument unless `base` is abelian-kind.
  static FiniteGroup wreath(unsigned n, const FiniteGroup& base);
  static FiniteGroup product(const FiniteGroup& left, const FiniteGroup& right);
  static FiniteGroup dihedral(unsigned n);   // order 2n
  static FiniteGroup dicyclic(unsigned n);   // order 4n, dicyclic:2 is Q_8
  static FiniteGroup alternating(unsigned n);
  /// Group given by a row-major Cayley table with identity 0. The table is
  /// checked to be a group before it is accepted.
  static FiniteGroup from_table(std::vector<std::uint32_t> table, std::string name);

  Kind kind() const;
  std::uint64_t order() const;
  Element identity() const { return 0; }
  Element multiply(Element a, Element b) const;
  Element inverse(Element a) const;
  bool is_abelian() const;
  /// Spec string that parses back to this group (e.g. "wreath:2:cyclic:3").
  std::string name() const;
  const std::vector<Element>& generators() const;

  // Abelian kinds.
  const std::vector<std::uint64_t>& moduli() const;
  std::vector<std::uint64_t> digits(Element e) const;
  Element from_digits(std::span<const std::uint64_t> digits) const;

  // Symmetric and wreath kinds.
  unsigned degree() const;
  Permutation permutation_of(Element e) const;

  // Symmetric kind.
  Element from_permutation(const Permutation& p) const;

  // Wreath kind.
  const FiniteGroup& base_group() const;
  std::vector<Element> base_of(Element e) const;
  Element wreath_element(std::span<const Element> base, const Permutation& perm) const;
  /// (pi . h)_i = h_{pi^{-1}(i)}: the coordinate-permuting action on H^n.
  std::vector<Element> permute_base(const Permutation& perm,
                                    std::span<const Element> base) const;

  // Product kind.
  const FiniteGroup& left_factor() const;
  const FiniteGroup& right_factor() const;
  Element pair(Element a, Element b) const;

  struct Impl;

 private:
  explicit FiniteGroup(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<const Impl> impl_;
};

/// Parses "cyclic:5", "abelian:10x10x10", "sym:4", "wreath:3:abelian:2",
/// "dihedral:5", "dicyclic:3", "alt:4". Throws std::invalid_argument.
FiniteGroup parse_group(std::string_view spec);

// Permutation helpers.
std::uint64_t factorial(unsigned n);
std::uint64_t permutation_rank(const Permutation& p);
Permutation permutation_unrank(std::uint64_t rank, unsigned n);
Permutation compose(const Permutation& p, const Permutation& q);
Permutation invert(const Permutation& p);
Permutation identity_permutation(unsigned n);

struct GroupReport {
  Verdict verdict = Verdict::unchecked;
  std::string detail;
  std::optional<std::array<Element, 3>> witness;
};

/// Exhaustive axiom check of G's codec (closure, identity, inverses,
/// associativity). Orders above `cap` give Verdict::unchecked.
GroupReport verify_group(const FiniteGroup& g, std::uint64_t cap = Limits{}.group_verify);

/// Same checks on an explicit table of size order*order. Associativity is
/// swept over all triples for small orders, otherwise with Light's test over
/// a generating set computed from the table itself.
GroupReport verify_table(std::span<const std::uint32_t> table, std::uint64_t order);

std::vector<std::uint32_t> cayley_table(const FiniteGroup& g);

struct ConjugacyClassTable {
  std::uint32_t count = 0;
  std::vector<std::uint32_t> class_of;  // indexed by element code
};

/// Conjugacy classes, numbered by their smallest element (identity -> 0).
ConjugacyClassTable conjugacy_classes(const FiniteGroup& g);

/// Number of conjugacy classes of S_n x| H^n for abelian H, summed over
/// cycle types of S_n.
mpz_class count_conjugacy_wreath(unsigned n, const FiniteGroup& base);

struct WreathBoundReport {
  bool pass = false;
  mpz_class count;
  double log_count = 0;
  double log_bound = 0;  // n log(4e^3) + n log|H| - n log n
};

/// Checks count <= (4e^3)^n |H|^n / n^n. Requires n <= |H|.
WreathBoundReport wreath_conjugacy_bound_check(unsigned n, const FiniteGroup& base);

}  // namespace ccmm
