#ifndef POPUC_HARNESS_HPP
#define POPUC_HARNESS_HPP

#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "popuc/circle.hpp"
#include "popuc/cmv.hpp"
#include "popuc/json_io.hpp"
#include "popuc/polynomial.hpp"

namespace popuc {

/// Parameters of a randomized run. Each trial draws from its own stream
/// seeded by (seed, trial index), so results do not depend on scheduling.
struct TrialConfig {
  std::uint64_t seed = 0;
  std::size_t trials = 0;
  std::size_t n_min = 1;
  std::size_t n_max = 20;
  double alpha_radius_max = 0.95;
  /// Worker threads; 0 picks the hardware concurrency.
  unsigned threads = 0;

  /// Throws ErrorKind::InvalidArgument.
  void validate() const;
  Json to_json() const;
};

/// A random problem instance. `word` always holds n_max coefficients so every
/// checker can take the prefix it needs.
struct Instance {
  VerblunskyWord word;
  std::vector<CirclePoint> betas;
  std::size_t n = 0;
  /// A second degree in [n, n_max], strictly above n whenever n < n_max.
  std::size_t m = 0;
  std::uint64_t seed = 0;
  std::size_t trial_index = 0;
  std::size_t attempt = 0;

  Json to_json() const;
};

/// The per-trial random stream.
std::mt19937_64 trial_stream(std::uint64_t seed, std::size_t trial_index);

/// Draws one instance from an existing stream (used for resampling).
Instance draw_instance(const TrialConfig& cfg, std::mt19937_64& rng);

/// The first instance of trial `trial_index`; a pure function of (seed, index).
Instance random_instance(const TrialConfig& cfg, std::size_t trial_index);

/// Uniform on the disk of the given radius.
Complex random_disk_point(std::mt19937_64& rng, double radius);
CirclePoint random_circle_point(std::mt19937_64& rng);

enum class TrialStatus { Pass, Fail, Resample };

struct TrialOutcome {
  TrialStatus status = TrialStatus::Pass;
  Json witness;
  double slack = 0.0;
  /// Optional classification, tallied in the report (e.g. "case_i").
  std::string tally;
  /// Smallest distance between distinct points the verdict depended on.
  /// Randomized runs resample instances where this drops below 1e-6.
  double separation = std::numeric_limits<double>::infinity();
};

struct Failure {
  Json instance;
  Json witness;
};

struct TheoremReport {
  std::string theorem;
  std::size_t trials = 0;
  std::size_t resampled = 0;
  std::size_t skipped = 0;
  std::vector<Failure> failures;
  /// Largest tolerance-governed quantity seen (eigen residuals, coincidence
  /// distances or deviations, depending on the check).
  double max_slack = 0.0;
  std::uint64_t seed = 0;
  Json config = Json::object();
  std::map<std::string, std::size_t> tallies;
  std::vector<std::string> notes;

  bool passed() const noexcept { return failures.empty(); }
  Json to_json() const;
  /// One human-readable line.
  std::string summary() const;

  /// Folds a single outcome for `instance` into the report.
  void absorb(const TrialOutcome& outcome, const Json& instance);
};

// ---------------------------------------------------------------------------
// Single-instance checkers. Zero sets always come from CMV eigenvalues.

/// Every (beta, n) paraorthogonal polynomial has at most one zero in each gap.
/// An empty gap list passes vacuously. Requires n <= word.size() + 1.
TheoremReport check_thm_1_1(const VerblunskyWord& word, const std::vector<OpenArc>& gaps,
                            const std::vector<CirclePoint>& betas, const std::vector<std::size_t>& ns);

/// Zeros of z Phi_{n-1} - conj(beta) Phi^*_{n-1} interlace those of the
/// second-kind polynomial with boundary -beta. Uses word[0..n-2].
TheoremReport check_thm_1_2(const VerblunskyWord& word, const CirclePoint& beta, std::size_t n);

/// Distinct boundary coefficients give interlacing zeros.
/// Throws ErrorKind::InvalidArgument when beta and beta_prime coincide.
TheoremReport check_thm_1_3(const VerblunskyWord& word, std::size_t n, const CirclePoint& beta,
                            const CirclePoint& beta_prime);

/// How the split-off eigenvalue is obtained by check_thm_1_4.
enum class DecouplingRule {
  /// From the block replacement (split).
  Constructed,
  /// transcribed_decoupling_value; expected to fail, used for mutation tests.
  Transcribed,
};

/// Successive paraorthogonal polynomials with boundaries beta_n, beta_next.
/// Uses word[0..n-1]. Classifies into "case_i" (no common zero: the split-off
/// value joins the degree-n zeros and the union interlaces the degree-(n+1)
/// zeros) or "case_ii" (one common zero equal to the split-off value).
///
/// Floating point cannot tell a common zero from two zeros a few ulps apart,
/// so an apparent common zero that is not the split-off value makes the
/// instance undecidable (status Resample) unless the caller plants it: with
/// `planted` given, the split-off value must equal it and it must be common.
TheoremReport check_thm_1_4(const VerblunskyWord& word, const CirclePoint& beta_n,
                            const CirclePoint& beta_next, std::size_t n,
                            DecouplingRule rule = DecouplingRule::Constructed,
                            const std::optional<CirclePoint>& planted = std::nullopt);

/// Every open arc between cyclically adjacent degree-n zeros holds a
/// degree-m zero. Requires m > n and word.size() >= m - 1.
TheoremReport check_thm_3_4(const VerblunskyWord& word, const CirclePoint& beta_n,
                            const CirclePoint& beta_m, std::size_t n, std::size_t m);

TrialOutcome evaluate_thm_1_1(const VerblunskyWord& word, const std::vector<OpenArc>& gaps,
                              const std::vector<CirclePoint>& betas, const std::vector<std::size_t>& ns);
TrialOutcome evaluate_thm_1_2(const VerblunskyWord& word, const CirclePoint& beta, std::size_t n);
TrialOutcome evaluate_thm_1_3(const VerblunskyWord& word, std::size_t n, const CirclePoint& beta,
                              const CirclePoint& beta_prime);
TrialOutcome evaluate_thm_1_4(const VerblunskyWord& word, const CirclePoint& beta_n,
                              const CirclePoint& beta_next, std::size_t n, DecouplingRule rule,
                              const std::optional<CirclePoint>& planted = std::nullopt);
TrialOutcome evaluate_thm_3_4(const VerblunskyWord& word, const CirclePoint& beta_n,
                              const CirclePoint& beta_m, std::size_t n, std::size_t m);

// ---------------------------------------------------------------------------
// Support gaps.

/// Zeros of the orthogonal polynomial Phi_N, as eigenvalues of the truncated
/// (non-unitary) CMV matrix. Requires word.size() >= N.
std::vector<Complex> opuc_zeros(const VerblunskyWord& word, std::size_t degree);

/// Largest arc free of zeros of Phi_N, each side pulled in by `shrink` of its
/// length. Zeros of modulus below 1/2 carry no angular information and are
/// ignored; with fewer than two informative zeros there is no estimate.
std::optional<OpenArc> estimate_support_gap(const VerblunskyWord& word, std::size_t degree = 400,
                                            double shrink = 0.2);

// ---------------------------------------------------------------------------
// Common zeros.

/// beta_1 .. beta_N such that every paraorthogonal polynomial of the sequence
/// vanishes at lambda: beta_1 = conj(lambda) and each next boundary is the
/// one that makes the split-off value equal lambda.
/// Requires word.size() >= N - 1.
std::vector<CirclePoint> corollary_beta_sequence(const CirclePoint& lambda, const VerblunskyWord& word,
                                                 std::size_t count);

/// |Phi~_n(lambda)| for n = 1 .. betas.size().
std::vector<double> common_zero_residuals(const CirclePoint& lambda, const VerblunskyWord& word,
                                          const std::vector<CirclePoint>& betas);

// ---------------------------------------------------------------------------
// Randomized runs.

TheoremReport run_thm_1_1(const TrialConfig& cfg, std::size_t gap_degree = 400);
TheoremReport run_thm_1_2(const TrialConfig& cfg);
TheoremReport run_thm_1_3(const TrialConfig& cfg);
/// `constructed` extra trials use corollary_beta_sequence and must land in case (ii).
TheoremReport run_thm_1_4(const TrialConfig& cfg, std::size_t constructed,
                          DecouplingRule rule = DecouplingRule::Constructed);
TheoremReport run_thm_3_4(const TrialConfig& cfg);

/// Rank-one perturbation properties of generic unitaries.
enum class PerturbationProperty {
  GapCount,            // at most one eigenvalue of V in a closed spectral gap of U
  CyclicInterlace,     // cyclic phi: spectra of U and V strictly interlace
  ClosedArcEigenvalue, // any phi: V has an eigenvalue between consecutive ones of U
  DirectSum,           // U1 + U2: common eigenvalues persist, the rest interlace
  SchurShift,          // f_{V,phi} = conj(lambda) f_{U,phi}
};

const char* property_id(PerturbationProperty p) noexcept;

/// Random unitary from the QR factorization of a complex Gaussian matrix.
Matrix haar_unitary(std::mt19937_64& rng, Eigen::Index n);
/// Uniform unit vector.
Vector random_unit_vector(std::mt19937_64& rng, Eigen::Index n);

TheoremReport run_perturbation_property(PerturbationProperty property, const TrialConfig& cfg);
std::vector<TheoremReport> check_perturbation_properties(const std::set<PerturbationProperty>& properties,
                                           const TrialConfig& cfg);

/// Direct-sum check on an explicit instance.
TrialOutcome evaluate_direct_sum(const Matrix& u1, const Matrix& u2, const Vector& phi1,
                                 const Vector& phi2, Complex a, Complex b, const CirclePoint& lambda);

}  // namespace popuc

#endif  // POPUC_HARNESS_HPP
