#pragma once

#include <vector>

#include <gmpxx.h>

#include "ccmm/config.hpp"

namespace ccmm {

/// (L_i)_{k,j} = p^k_{i,j}, dense row-major r x r per class.
std::vector<std::vector<std::int64_t>> regular_representation(const IntersectionTensor& t);

/// Exact basis of the center of the adjacency algebra, in reduced form: each
/// vector is 1 on its own free coordinate and 0 on the others.
struct CenterBasis {
  std::vector<std::vector<mpq_class>> vectors;
  std::vector<std::uint32_t> free_columns;
};
CenterBasis center_basis(const IntersectionTensor& t);

struct SpectralOptions {
  std::uint64_t seed = 0;
  double cluster_tolerance = 1e-8;     // relative eigenvalue separation
  double idempotent_tolerance = 1e-6;  // |e^2 - e| and integrality of d^2
  std::uint64_t cap = Limits{}.spectral;
  unsigned max_retries = 16;
};

struct DegreeProfile {
  std::vector<std::uint32_t> degrees;  // ascending
  double residual = 0;                 // largest numerical defect observed
  std::uint32_t center_dimension = 0;
  std::uint64_t seed_used = 0;
  bool svd_checked = false;            // d^2 cross-checked by SVD rank
};

class SpectralFailure : public Error {
 public:
  SpectralFailure(const std::string& what, double residual) : Error(what), residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_;
};

/// Wedderburn degrees of the adjacency algebra. The center is exact; the
/// primitive central idempotents come from the eigenvectors of a generic
/// Hermitian central element. d^2 = trace of left multiplication by e.
DegreeProfile character_degrees(const IntersectionTensor& t, const SpectralOptions& options = {});
DegreeProfile character_degrees(const CoherentConfiguration& c, const SpectralOptions& options = {});

/// max d >= number of fibers.
bool max_degree_lower_bound_check(const CoherentConfiguration& c, const DegreeProfile& profile);

}  // namespace ccmm
