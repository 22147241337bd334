#pragma once

#include "weylhull/tits.hpp"

#include <array>

namespace weylhull {

struct InteriorPoint : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct NotInterior : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct NotInSlice : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct NotAFace : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct UnsupportedRank : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// All hull queries are phrased against conv(W*h) for a fixed regular
/// dominant h. In B coordinates <omega_i, x> = x[i] and <phi_k, x> = x[k],
/// so the targets are simply the coordinates of h.
class HullContext {
 public:
  HullContext(RootDatum datum, QVec h);

  const WeylGroup& group() const { return wg_; }
  const RootDatum& datum() const { return wg_.datum(); }
  const QVec& h() const { return h_; }
  const DualBasis& dual() const { return dual_; }
  Rat target(std::size_t i) const { return h_[i]; }          // h_i = <omega_i, h>
  Rat phi_level(std::size_t k) const { return h_[k]; }       // k >= n
  std::size_t n() const { return wg_.n(); }
  std::size_t d() const { return wg_.datum().d; }

 private:
  WeylGroup wg_;
  QVec h_;
  DualBasis dual_;
};

struct Membership {
  enum class Verdict { In, Out, Inconclusive } verdict;
  std::vector<std::size_t> tight;   // In: {i : <omega_i, x_dom> = h_i}
  std::string violated;             // Out: human-readable constraint
  ChamberReduction reduction;
};

Membership hull_membership(const HullContext& ctx, const QVec& x,
                           std::size_t budget = kDefaultReductionBudget);

struct FaceHandle {
  StandardCoset coset;  // face = conv(rep W_J * h), dimension |j_set|
};

/// Minimal coset face containing a boundary point; throws InteriorPoint.
FaceHandle locate_face(const HullContext& ctx, const QVec& x,
                       std::size_t budget = kDefaultReductionBudget);

struct FaceVertices {
  std::vector<WeylElement> elements;  // rep * w_J
  std::vector<QVec> points;
  bool truncated = false;
};

FaceVertices face_vertices(const HullContext& ctx, const FaceHandle& face,
                           std::size_t max_length = 64);

/// The n orbit points {w s_i(h)} adjacent to w(h) on the hull 1-skeleton.
std::vector<QVec> vertex_neighbors(const HullContext& ctx, const WeylElement& w);

struct SliceInterval {
  bool bounded_below = false;
  Rat lo;          // only when bounded_below
  std::size_t j;   // index with s_j = w_+ s_i w_+ (bounded case)
  Rat hi;          // always h_i
};

/// The set of t with non-empty slice P^(i)(t).
SliceInterval slice_interval(const HullContext& ctx, std::size_t i);

struct SliceVertex {
  enum class Kind { OrbitPoint, EdgeCrossing } kind;
  WeylElement w;
  std::size_t k = 0;  // EdgeCrossing: the edge is [w(h), w s_k(h)]
  Rat s;              // EdgeCrossing: parameter in (0,1) along that edge
  QVec point;
};

struct SliceVertexList {
  std::vector<SliceVertex> vertices;
  bool truncated = false;
};

SliceVertexList slice_vertices(const HullContext& ctx, std::size_t i, const Rat& t,
                               std::size_t max_length = 12);

struct EssentialPart {
  std::vector<QVec> points;  // x_1..x_m, all in the open subchamber C^(i)
  std::size_t m = 0;
};

/// Vertices of the essential part of the slice; t must be interior to I_h.
EssentialPart essential_vertices(const HullContext& ctx, std::size_t i, const Rat& t,
                                 std::size_t node_cap = 200'000);

struct CoverCertificate {
  QVec y;  // essential vertex with x in conv(W^(i) * y)
  std::vector<std::pair<WeylElement, Rat>> combination;  // x = sum lambda_r w_r(y)
};

CoverCertificate essential_cover(const HullContext& ctx, std::size_t i, const Rat& t,
                                 const QVec& x, std::size_t max_length = 12);

struct SliceFaceSymmetry {
  WeylElement w;                   // translate into the closed subchamber
  std::vector<std::size_t> j_set;  // maximal J with s_k-invariance, k != i
  std::vector<QVec> orbit_reps;
};

SliceFaceSymmetry slice_face_symmetry(const HullContext& ctx, std::size_t i, const Rat& t,
                                      const std::vector<QVec>& face_vertices);

struct RenderMode {
  enum class Kind { Hull2D, Slice2D } kind;
  std::size_t i = 0;  // Slice2D
  Rat t;              // Slice2D
  std::size_t max_length = 8;
};

/// Deterministic SVG figure: truncated hull polygon (n=2) or slice polygon
/// with the essential part highlighted (n=3).
std::string render(const HullContext& ctx, const RenderMode& mode);

/// Indices of the extreme points of a planar point set, in counterclockwise
/// hull order (exact arithmetic). Exposed for figure plumbing and oracles.
std::vector<std::size_t> convex_hull_2d(const std::vector<std::array<Rat, 2>>& pts);

}  // namespace weylhull
