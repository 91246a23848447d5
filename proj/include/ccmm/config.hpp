#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "ccmm/common.hpp"

namespace ccmm {

struct IntersectionEntry {
  ClassId i, j, k;
  std::uint32_t p;  // p^k_{i,j} > 0
};

/// Nonzero intersection numbers p^k_{i,j}, sorted by (i, j, k), together with
/// the star involution and class sizes. Zero entries are implicit.
class IntersectionTensor {
 public:
  IntersectionTensor() = default;
  IntersectionTensor(std::uint32_t rank, std::vector<ClassId> star, std::vector<std::uint64_t> sizes,
                     std::vector<IntersectionEntry> entries);

  std::uint32_t rank() const { return rank_; }
  ClassId star(ClassId i) const { return star_[i]; }
  const std::vector<ClassId>& star_map() const { return star_; }
  std::uint64_t class_size(ClassId i) const { return sizes_[i]; }
  std::uint64_t p(ClassId i, ClassId j, ClassId k) const;
  /// All nonzero entries with the given (i, j), sorted by k.
  std::span<const IntersectionEntry> slice(ClassId i, ClassId j) const;
  std::span<const IntersectionEntry> row(ClassId i) const;
  const std::vector<IntersectionEntry>& entries() const { return entries_; }

  /// Relabels classes: old id c becomes perm[c].
  IntersectionTensor permuted(std::span<const ClassId> perm) const;

  bool operator==(const IntersectionTensor& other) const;

 private:
  std::uint32_t rank_ = 0;
  std::vector<ClassId> star_;
  std::vector<std::uint64_t> sizes_;
  std::vector<IntersectionEntry> entries_;
  std::vector<std::size_t> row_start_;
};

enum class VerifyMode {
  full,     // every pair swept for axiom (3)
  sampled,  // a few pairs per class; axiom (3) verdict stays `unchecked`
  trusted,  // axiom (3) skipped; verdict `unchecked`
};

struct AxiomReport {
  Verdict verdict = Verdict::unchecked;
  int axiom = 0;  // first violated axiom (1, 2, 3), 0 for malformed input, -1 if none
  std::string detail;
};

class AxiomViolation : public Rejection {
 public:
  AxiomViolation(int axiom, const std::string& witness)
      : Rejection("axiom (" + std::to_string(axiom) + ") violated", witness), axiom_(axiom) {}
  int axiom() const { return axiom_; }

 private:
  int axiom_;
};

struct FiberSet {
  std::vector<ClassId> classes;            // fiber class ids in normalized order
  std::vector<std::uint32_t> fiber_of;     // point -> index into `classes`
  std::vector<std::vector<Point>> cells;   // points of each fiber, ascending
};

/// A verified coherent configuration with normalized class ids: fibers first
/// (by smallest point), then the other classes by first row-major occurrence.
class CoherentConfiguration {
 public:
  /// Verifies the axioms and normalizes ids. Throws AxiomViolation with a
  /// witness, or std::invalid_argument for malformed input.
  static CoherentConfiguration from_class_matrix(std::uint32_t n, std::uint32_t r,
                                                 std::vector<ClassId> matrix,
                                                 VerifyMode mode = VerifyMode::full);

  std::uint32_t points() const { return n_; }
  std::uint32_t rank() const { return r_; }
  ClassId cls(Point x, Point y) const { return matrix_[std::size_t{x} * n_ + y]; }
  const std::vector<ClassId>& class_matrix() const { return matrix_; }
  ClassId star(ClassId i) const { return tensor_.star(i); }
  std::uint64_t class_size(ClassId i) const { return tensor_.class_size(i); }
  /// First pair of class k in row-major order.
  std::pair<Point, Point> representative(ClassId k) const { return reps_[k]; }
  const IntersectionTensor& intersection_numbers() const { return tensor_; }
  std::uint64_t p(ClassId i, ClassId j, ClassId k) const { return tensor_.p(i, j, k); }
  Verdict axiom3_verdict() const { return axiom3_; }

  bool is_commutative() const;
  bool is_symmetric() const;
  bool is_association_scheme() const;
  bool is_fiber(ClassId i) const;
  FiberSet fibers() const;
  /// (A_i)_{x,y} = 1 iff (x,y) in R_i, row-major n x n.
  std::vector<std::uint8_t> adjacency_matrix(ClassId i) const;
  /// The same configuration with point x renamed perm[x].
  CoherentConfiguration permute_points(std::span<const Point> perm) const;

  bool operator==(const CoherentConfiguration& other) const {
    return n_ == other.n_ && matrix_ == other.matrix_;
  }

 private:
  CoherentConfiguration() = default;

  std::uint32_t n_ = 0;
  std::uint32_t r_ = 0;
  std::vector<ClassId> matrix_;
  std::vector<std::pair<Point, Point>> reps_;
  IntersectionTensor tensor_;
  Verdict axiom3_ = Verdict::unchecked;
};

/// Checks the axioms on an arbitrary labelling without throwing.
AxiomReport check_axioms(std::uint32_t n, std::uint32_t r, std::span<const ClassId> matrix,
                         VerifyMode mode = VerifyMode::full);

/// Relabels a class matrix into normalized order. Returns the new labels and
/// fills `old_to_new` if given.
std::vector<ClassId> normalize_labels(std::uint32_t n, std::uint32_t r, std::span<const ClassId> matrix,
                                      std::vector<ClassId>* old_to_new = nullptr);

/// The discrete configuration on n points: every ordered pair is its own class.
CoherentConfiguration trivial_configuration(std::uint32_t n);

// "ccfg 1" text format.
void write_ccfg(std::ostream& out, const CoherentConfiguration& c);
CoherentConfiguration read_ccfg(std::istream& in, VerifyMode mode = VerifyMode::full);
CoherentConfiguration load_ccfg(const std::string& path, VerifyMode mode = VerifyMode::full);
void save_ccfg(const std::string& path, const CoherentConfiguration& c);

}  // namespace ccmm
