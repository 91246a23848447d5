#pragma once

#include <array>
#include <string>
#include <vector>

namespace ccmm {

enum class BoundKind { omega_s, omega };

struct ProvenanceStep {
  std::string rule;             // evaluator name, see evaluate_rule
  std::vector<double> inputs;
  double output = 0;
  std::string note;
};

/// kind <= value, with the chain of inequalities that produced it.
struct ExponentBound {
  BoundKind kind = BoundKind::omega_s;
  double value = 3;
  std::vector<std::string> assumptions;
  std::vector<ProvenanceStep> provenance;
  std::vector<std::string> flags;  // clamping and degeneracy markers
};

using Block = std::array<std::uint64_t, 3>;

/// Commutative rank-r realization of <l,m,n>: omega_s <= 3 ln r / ln(lmn).
ExponentBound omega_s_commutative(std::uint64_t l, std::uint64_t m, std::uint64_t n, std::uint64_t r);
/// Root of sum (l_i m_i n_i)^{tau/3} = r in [2, 3] by bisection.
ExponentBound solve_asi(const std::vector<Block>& blocks, std::uint64_t r);
/// Root of k (prod l_i m_i n_i)^{tau/(3k)} = r in [2, 3] by bisection.
ExponentBound geometric_mean_bound(const std::vector<Block>& blocks, std::uint64_t r);
/// omega_s <= 3 ln(sum d_i^w) / ln(lmn) for an assumed omega <= w.
ExponentBound omega_s_noncommutative(std::uint64_t l, std::uint64_t m, std::uint64_t n,
                                     const std::vector<std::uint32_t>& degrees, double assumed_omega = 2.3727);
/// omega <= (3 omega_s - 2) / 2, kept inside [2, 3].
ExponentBound omega_from_omega_s(const ExponentBound& b);
/// omega_s <= (3 log m - log(27/4)) / log(m - 2), m > 2.
ExponentBound cksu_formula(double m);
/// A bound taken as given (e.g. parsed from text).
ExponentBound given_omega_s(double value, const std::string& origin);

/// Re-evaluates one provenance step.
double evaluate_rule(const std::string& rule, const std::vector<double>& inputs);
/// Replays the chain; true iff every step reproduces bit-for-bit and links to
/// the previous one.
bool replay(const ExponentBound& b);

/// Smallest multiple of 10^-decimals that is >= v (up to 1e-9 slack for
/// binary representation of decimal inputs).
double round_up(double v, int decimals);
/// "omega_s <= 2.4037 (provenance: cksu m=10 -> 2.4036322608328735)"
std::string format_bound(const ExponentBound& b);
/// Raw value at the end of a formatted line (after the last "->", else after "<=").
double parse_bound_value(const std::string& line);

/// Bisection bookkeeping, exposed for tests.
constexpr int kBisectionIterations = 200;

struct PaperRow {
  double omega_s;
  double omega;        // (3 omega_s - 2) / 2
  double published;    // the published omega bound
  int decimals;        // decimals of the published figure
  double reported;     // omega rounded up at those decimals
  bool ok;
};
std::vector<PaperRow> reproduce_paper_numbers();

}  // namespace ccmm
