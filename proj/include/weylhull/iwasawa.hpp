#pragma once

#include "weylhull/hull.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace weylhull::numeric {

using DVec = std::vector<double>;
using DMat = std::vector<std::vector<double>>;

struct SingularInput : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct NotRegular : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct TargetOutsideHull : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct ToleranceNotMet : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NotApplicable : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// g = k * diag(exp(logA)) * u with k orthogonal, u unit upper triangular.
struct IwasawaTriple {
  DMat k;
  DVec logA;
  DMat u;
  double residual = 0.0;  // max-abs reconstruction error
};

/// Closed-form factorization of diag(e^r, e^-r) * R_gamma in SL(2,R);
/// logA = (log rho, -log rho) with rho = sqrt(e^{2r}cos^2 + e^{-2r}sin^2).
IwasawaTriple sl2_iwasawa(double r, double gamma);

/// Modified Gram-Schmidt on columns with positive-diagonal normalization.
IwasawaTriple qr_iwasawa(const DMat& g);

/// logA of the Iwasawa A-factor of exp(diag h) * k.  Requires sum(h) = 0.
DVec kostant_project(const DVec& h, const DMat& k);

/// Diagonal of k * diag(h) * k^T.  Requires sum(h) = 0.
DVec linear_project(const DVec& h, const DMat& k);

/// Most negative slack of x against the inequality description of
/// conv(S_n . h) for h sorted decreasing with sum 0: equal totals and every
/// sorted partial sum of x bounded by the corresponding partial sum of h.
double permutohedron_slack(const DVec& h, const DVec& x);

/// Deterministic 64-bit generator (xoshiro-free splitmix core) so that
/// streams are identical across platforms and thread counts.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next();
  double uniform01();  // in (0,1)
  double gaussian();   // standard normal via Box-Muller

 private:
  std::uint64_t state_;
};

/// Haar-random orthogonal matrix: QR of a Gaussian matrix with the
/// positive-diagonal correction absorbed into the R factor.
DMat haar_orthogonal(std::size_t n, Rng& rng);

struct VerificationReport {
  std::size_t samples = 0;
  double worstSlack = 0.0;          // most negative membership slack seen
  std::vector<double> coverageGaps; // interior grid targets (first coordinate)
                                    // with no attained sample within 0.01
  double maxGap = 0.0;              // largest hole in the attained first coords
  std::uint64_t seed = 0;
};

/// Sampling supports n in {2, 3, 4}; projections (merged in deterministic
/// chunk order) are appended to *samples_out when given.
VerificationReport verify_nonlinear(std::size_t n, const DVec& h, std::size_t samples,
                                    std::uint64_t seed,
                                    std::vector<DVec>* samples_out = nullptr);
VerificationReport verify_linear(std::size_t n, const DVec& h, std::size_t samples,
                                 std::uint64_t seed, std::vector<DVec>* samples_out = nullptr);

struct AttainResult {
  DMat k;
  DVec achieved;          // kostant_project(h, k)
  double error = 0.0;     // max-abs distance to the target
  bool fallback = false;  // true if derivative-free refinement was needed
};

/// Constructs k with kostant_project(h, k) ~ target (n in {2,3}); follows the
/// two-step slice construction (face rotation, then a rotation in the
/// complementary block), with a pattern-search fallback.  Throws
/// TargetOutsideHull / ToleranceNotMet (best attempt in the message).
AttainResult attain(std::size_t n, const DVec& h, const DVec& target);

/// Orthogonal k with diag(k diag(h) k^T) = target exactly up to rounding,
/// for target majorized by h; built from a deflating sequence of Givens
/// rotations (constructive Schur-Horn).
DMat pinch(const DVec& h, const DVec& target);

struct HorosphereWitness {
  QVec h;                 // regular dominant point with 0 outside conv(W.h)
  std::string violated;   // the constraint that excludes 0
  bool extension_case;    // true: d > n level constraint; false: negative
                          // fundamental-weight target on an indefinite block
  Membership check;       // hull_membership(ctx, 0) == Out
};

/// Produces h in the open chamber whose orbit hull misses the origin,
/// certifying that the ambient group is not covered by K U+ K.
HorosphereWitness horosphere_witness(const RootDatum& datum);

/// Worker cap honoring the WEYLHULL_THREADS environment variable.
std::size_t worker_count();

}  // namespace weylhull::numeric
