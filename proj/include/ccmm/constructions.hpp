#pragma once

#include <iosfwd>
#include <optional>
#include <vector>

#include "ccmm/action.hpp"
#include "ccmm/config.hpp"

namespace ccmm {

/// Class of (x, y) is x^{-1} y, so R_g = {(h, hg)}.
CoherentConfiguration group_scheme(const FiniteGroup& g, VerifyMode mode = VerifyMode::full,
                                   std::uint64_t cap = Limits{}.points);

/// Classes are the orbits of the diagonal action on ordered pairs.
CoherentConfiguration schurian(const GroupAction& action, VerifyMode mode = VerifyMode::full,
                               std::uint64_t cap = Limits{}.points);

/// Class of (g, h) is the conjugacy class of g^{-1} h.
CoherentConfiguration group_association_scheme(const FiniteGroup& g, VerifyMode mode = VerifyMode::full,
                                               std::uint64_t cap = Limits{}.points);

/// Points (x1, x2) -> x1 * n2 + x2; classes (c1, c2) before normalization.
CoherentConfiguration direct_product(const CoherentConfiguration& a, const CoherentConfiguration& b,
                                     VerifyMode mode = VerifyMode::full,
                                     std::uint64_t cap = Limits{}.points);
CoherentConfiguration direct_power(const CoherentConfiguration& c, unsigned k,
                                   VerifyMode mode = VerifyMode::full,
                                   std::uint64_t cap = Limits{}.points);

using FusionPartition = std::vector<std::vector<ClassId>>;

struct FusionResult {
  std::optional<CoherentConfiguration> config;  // set iff the fused matrix is coherent
  AxiomReport report;
};

/// Merges the classes of each block and re-verifies from scratch. A fused
/// matrix that is not coherent is reported, not thrown. Malformed partitions
/// (overlaps, gaps, empty blocks) throw std::invalid_argument.
FusionResult fusion(const CoherentConfiguration& c, const FusionPartition& blocks,
                    VerifyMode mode = VerifyMode::full);

/// The S_k-fusion of C^k on the n^k ordered k-tuples of points. Classes are
/// multisets of classes of C.
CoherentConfiguration symmetric_power(const CoherentConfiguration& c, unsigned k,
                                      VerifyMode mode = VerifyMode::full,
                                      std::uint64_t cap = Limits{}.points);

/// The unverified class matrix of Sym^k C, labelled by multiset rank. Cheaper
/// than symmetric_power when only the class count is needed.
std::vector<ClassId> symmetric_power_classes(const CoherentConfiguration& c, unsigned k,
                                             std::uint64_t cap = Limits{}.points);

/// Rank of a sorted multiset of k values in [0, r) among all C(r+k-1, k)
/// multisets (combinatorial number system).
std::uint64_t multiset_rank(std::span<const ClassId> sorted, std::uint32_t r);
std::uint64_t binomial(std::uint64_t n, std::uint64_t k);

/// One block per line, whitespace-separated class ids; '#' comments.
FusionPartition read_partition(std::istream& in);

}  // namespace ccmm
