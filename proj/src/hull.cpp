#include "weylhull/hull.hpp"

#include "weylhull/fourier_motzkin.hpp"
#include "weylhull/linalg.hpp"

#include <algorithm>
#include <cstdio>
#include <deque>
#include <limits>
#include <map>
#include <set>

namespace weylhull {

namespace {

bool in_open_subchamber(const RootDatum& rd, std::size_t i, const QVec& x) {
  for (std::size_t k = 0; k < rd.n(); ++k)
    if (k != i && alpha_value(rd, k, x) <= 0) return false;
  return true;
}

bool in_closed_subchamber(const RootDatum& rd, std::size_t i, const QVec& x) {
  for (std::size_t k = 0; k < rd.n(); ++k)
    if (k != i && alpha_value(rd, k, x) < 0) return false;
  return true;
}

std::vector<std::size_t> complement_of(std::size_t i, std::size_t n) {
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < n; ++k)
    if (k != i) out.push_back(k);
  return out;
}

}  // namespace

HullContext::HullContext(RootDatum datum, QVec h) : wg_(std::move(datum)), h_(std::move(h)) {
  if (h_.size() != wg_.datum().d) throw std::invalid_argument("h: dimension mismatch");
  if (!is_regular_dominant(wg_.datum(), h_))
    throw NotRegularDominant("h must satisfy <alpha_i, h> > 0 for all i");
  dual_ = dual_basis(wg_.datum());
}

Membership hull_membership(const HullContext& ctx, const QVec& x, std::size_t budget) {
  if (x.size() != ctx.d()) throw std::invalid_argument("point: dimension mismatch");
  Membership m;
  for (std::size_t k = ctx.n(); k < ctx.d(); ++k)
    if (x[k] != ctx.phi_level(k)) {
      m.verdict = Membership::Verdict::Out;
      m.violated = "phi_" + std::to_string(k + 1) + " level " + to_string(x[k]) +
                   " != " + to_string(ctx.phi_level(k));
      return m;
    }
  m.reduction = reduce_to_chamber(ctx.group(), x, budget);
  if (!m.reduction.in_cone) {
    m.verdict = Membership::Verdict::Inconclusive;
    return m;
  }
  for (std::size_t i = 0; i < ctx.n(); ++i) {
    if (m.reduction.dominant[i] > ctx.target(i)) {
      m.verdict = Membership::Verdict::Out;
      m.violated = "omega_" + std::to_string(i + 1) + " value " +
                   to_string(m.reduction.dominant[i]) + " exceeds " + to_string(ctx.target(i));
      return m;
    }
    if (m.reduction.dominant[i] == ctx.target(i)) m.tight.push_back(i);
  }
  m.verdict = Membership::Verdict::In;
  return m;
}

FaceHandle locate_face(const HullContext& ctx, const QVec& x, std::size_t budget) {
  Membership m = hull_membership(ctx, x, budget);
  if (m.verdict != Membership::Verdict::In)
    throw std::invalid_argument("locate_face: point is not a verified hull member");
  if (m.tight.empty()) throw InteriorPoint("point lies in the interior; no proper face");
  std::vector<std::size_t> j_set;
  for (std::size_t i = 0; i < ctx.n(); ++i)
    if (std::find(m.tight.begin(), m.tight.end(), i) == m.tight.end()) j_set.push_back(i);
  return {ctx.group().min_coset_rep(m.reduction.w, j_set)};
}

FaceVertices face_vertices(const HullContext& ctx, const FaceHandle& face,
                           std::size_t max_length) {
  const auto& wg = ctx.group();
  FaceVertices out;
  bool finite = wg.is_finite_standard_subgroup(face.coset.j_set);
  auto se = wg.enumerate_standard_subgroup(
      face.coset.j_set, finite ? std::numeric_limits<std::size_t>::max() : max_length);
  out.truncated = !se.saturated;
  for (const auto& wj : se.elements) {
    out.elements.push_back(wg.mul(face.coset.rep, wj));
    out.points.push_back(wg.act(out.elements.back(), ctx.h()));
  }
  return out;
}

std::vector<QVec> vertex_neighbors(const HullContext& ctx, const WeylElement& w) {
  std::vector<QVec> out;
  for (std::size_t i = 0; i < ctx.n(); ++i)
    out.push_back(ctx.group().act(ctx.group().mul_gen(w, i), ctx.h()));
  return out;
}

SliceInterval slice_interval(const HullContext& ctx, std::size_t i) {
  SliceInterval out;
  out.hi = ctx.target(i);
  auto core = finite_index_core(ctx.datum().gcm);
  if (std::binary_search(core.begin(), core.end(), i)) {
    out.bounded_below = false;  // [W : W^(i)] is infinite
    return out;
  }
  // w_+ = longest word of the finite part; s_j = w_+ s_i w_+ read off the
  // root action: w_+(alpha_i) = -alpha_j.
  std::vector<std::size_t> finite_part;
  for (std::size_t k = 0; k < ctx.n(); ++k)
    if (!std::binary_search(core.begin(), core.end(), k)) finite_part.push_back(k);
  WeylElement wplus = ctx.group().longest_word(finite_part);
  std::size_t j = ctx.n();
  for (std::size_t r = 0; r < ctx.n() && j == ctx.n(); ++r)
    if (wplus.actQ[r][i] == -1) j = r;
  if (j == ctx.n()) throw std::logic_error("slice_interval: conjugate generator not found");
  out.bounded_below = true;
  out.j = j;
  out.lo = -ctx.target(j);
  return out;
}

SliceVertexList slice_vertices(const HullContext& ctx, std::size_t i, const Rat& t,
                               std::size_t max_length) {
  const auto& wg = ctx.group();
  auto se = wg.enumerate_standard_subgroup(complement_of(ctx.n(), ctx.n() + 1), max_length);
  SliceVertexList out;
  out.truncated = !se.saturated;

  std::vector<QVec> pts(se.elements.size());
  for (std::size_t idx = 0; idx < se.elements.size(); ++idx)
    pts[idx] = wg.act(se.elements[idx], ctx.h());

  std::set<QVec> taken;
  for (std::size_t idx = 0; idx < se.elements.size(); ++idx) {
    if (pts[idx][i] != t || taken.count(pts[idx])) continue;
    taken.insert(pts[idx]);
    SliceVertex v;
    v.kind = SliceVertex::Kind::OrbitPoint;
    v.w = se.elements[idx];
    v.point = pts[idx];
    out.vertices.push_back(std::move(v));
  }
  for (std::size_t idx = 0; idx < se.elements.size(); ++idx) {
    const auto& w = se.elements[idx];
    for (std::size_t k = 0; k < ctx.n(); ++k) {
      auto u = wg.mul_gen(w, k);
      if (wg.length(u) <= wg.length(w)) continue;  // each edge once, from its short end
      QVec pu = wg.act(u, ctx.h());
      const QVec& pw = pts[idx];
      if ((pw[i] - t) * (pu[i] - t) >= 0) continue;  // no strict straddle
      Rat s = (pw[i] - t) / (pw[i] - pu[i]);
      QVec point(ctx.d());
      for (std::size_t c = 0; c < ctx.d(); ++c) point[c] = pw[c] + s * (pu[c] - pw[c]);
      if (taken.count(point)) continue;
      taken.insert(point);
      SliceVertex v;
      v.kind = SliceVertex::Kind::EdgeCrossing;
      v.w = w;
      v.k = k;
      v.s = s;
      v.point = std::move(point);
      out.vertices.push_back(std::move(v));
    }
  }
  return out;
}

EssentialPart essential_vertices(const HullContext& ctx, std::size_t i, const Rat& t,
                                 std::size_t node_cap) {
  auto iv = slice_interval(ctx, i);
  if (t >= iv.hi || (iv.bounded_below && t <= iv.lo))
    throw NotInterior("t = " + to_string(t) + " is not interior to the slice interval");

  const auto& wg = ctx.group();
  const auto& rd = ctx.datum();
  EssentialPart out;
  std::set<QVec> found;
  auto record = [&](QVec p) {
    if (found.insert(p).second) out.points.push_back(std::move(p));
  };

  // Pruned BFS over the orbit: expand only nodes whose point stays in the
  // closed subchamber above the slice plane; record where edges meet it.
  std::map<std::vector<Int>, bool> seen;
  auto key_of = [](const WeylElement& w) {
    std::vector<Int> key;
    for (const auto& row : w.actB) key.insert(key.end(), row.begin(), row.end());
    return key;
  };
  std::deque<std::pair<WeylElement, QVec>> frontier;
  frontier.emplace_back(wg.identity(), ctx.h());
  seen.emplace(key_of(wg.identity()), true);
  std::size_t visited = 0;
  while (!frontier.empty()) {
    if (++visited > node_cap) throw BudgetExceeded("essential vertex search exceeded node cap");
    auto [w, pw] = frontier.front();
    frontier.pop_front();
    for (std::size_t k = 0; k < ctx.n(); ++k) {
      auto u = wg.mul_gen(w, k);
      QVec pu = wg.act(u, ctx.h());
      if (pu[i] == t) {
        if (in_open_subchamber(rd, i, pu)) record(pu);
        continue;
      }
      if (pu[i] < t) {
        if (pw[i] <= t) continue;
        Rat s = (pw[i] - t) / (pw[i] - pu[i]);
        QVec point(ctx.d());
        for (std::size_t c = 0; c < ctx.d(); ++c) point[c] = pw[c] + s * (pu[c] - pw[c]);
        if (in_open_subchamber(rd, i, point)) record(std::move(point));
        continue;
      }
      if (!in_closed_subchamber(rd, i, pu)) continue;
      auto key = key_of(u);
      if (seen.emplace(std::move(key), true).second) frontier.emplace_back(std::move(u), std::move(pu));
    }
  }
  out.m = out.points.size();
  return out;
}

CoverCertificate essential_cover(const HullContext& ctx, std::size_t i, const Rat& t,
                                 const QVec& x, std::size_t max_length) {
  auto verdict = hull_membership(ctx, x);
  if (verdict.verdict != Membership::Verdict::In || x[i] != t)
    throw NotInSlice("point is not a verified member of the slice");

  const auto& wg = ctx.group();
  auto gens = complement_of(i, ctx.n());
  bool finite = wg.is_finite_standard_subgroup(gens);
  auto se = wg.enumerate_standard_subgroup(
      gens, finite ? std::numeric_limits<std::size_t>::max() : max_length);

  auto ess = essential_vertices(ctx, i, t);
  for (const auto& y : ess.points) {
    // Orbit of y under the enumerated part of W^(i); y is W^(i)-regular,
    // so orbit points are pairwise distinct.
    std::vector<QVec> orbit;
    for (const auto& w : se.elements) orbit.push_back(wg.act(w, y));
    const std::size_t m = orbit.size();
    // lambda >= 0, sum lambda = 1, sum lambda_r orbit_r = x.
    std::vector<fm::Constraint> cons;
    for (std::size_t r = 0; r < m; ++r) {
      QVec e(m, 0);
      e[r] = 1;
      cons.push_back({e, 0, fm::Rel::Ge});
    }
    cons.push_back({QVec(m, 1), 1, fm::Rel::Eq});
    for (std::size_t c = 0; c < ctx.d(); ++c) {
      QVec row(m);
      for (std::size_t r = 0; r < m; ++r) row[r] = orbit[r][c];
      cons.push_back({row, x[c], fm::Rel::Eq});
    }
    auto lambda = fm::feasible(std::move(cons), m);
    if (!lambda) continue;
    CoverCertificate cert;
    cert.y = y;
    for (std::size_t r = 0; r < m; ++r)
      if ((*lambda)[r] != 0) cert.combination.emplace_back(se.elements[r], (*lambda)[r]);
    return cert;
  }
  if (!se.saturated)
    throw BudgetExceeded("essential cover search truncated before finding a certificate");
  throw std::logic_error("no essential cover found for a verified slice point");
}

SliceFaceSymmetry slice_face_symmetry(const HullContext& ctx, std::size_t i, const Rat& t,
                                      const std::vector<QVec>& verts) {
  if (verts.empty()) throw NotAFace("empty vertex set");
  const auto& wg = ctx.group();
  const auto& rd = ctx.datum();
  for (const auto& v : verts) {
    auto m = hull_membership(ctx, v);
    if (m.verdict != Membership::Verdict::In || v[i] != t)
      throw NotAFace("vertex set contains a point outside the slice");
  }

  SliceFaceSymmetry out;
  out.w = wg.identity();
  // Translate so the barycenter lands in the closed subchamber.
  QVec bary(ctx.d(), 0);
  for (const auto& v : verts)
    for (std::size_t c = 0; c < ctx.d(); ++c) bary[c] += v[c];
  for (auto& c : bary) c /= Rat(static_cast<long>(verts.size()));
  for (bool moved = true; moved;) {
    moved = false;
    for (std::size_t k = 0; k < ctx.n(); ++k) {
      if (k == i || alpha_value(rd, k, bary) >= 0) continue;
      bary = wg.act(wg.generator(k), bary);
      out.w = wg.mul_gen(out.w, k);
      moved = true;
      break;
    }
  }
  auto winv = wg.inverse(out.w);
  std::set<QVec> vset;
  for (const auto& v : verts) vset.insert(wg.act(winv, v));

  for (std::size_t k = 0; k < ctx.n(); ++k) {
    if (k == i) continue;
    bool preserves = true;
    for (const auto& v : vset)
      if (!vset.count(wg.act(wg.generator(k), v))) {
        preserves = false;
        break;
      }
    if (preserves) out.j_set.push_back(k);
  }

  // Orbit decomposition under the detected reflections.
  std::set<QVec> covered;
  for (const auto& v : vset) {
    if (covered.count(v)) continue;
    std::deque<QVec> queue{v};
    QVec rep = v;
    covered.insert(v);
    while (!queue.empty()) {
      QVec p = queue.front();
      queue.pop_front();
      if (p < rep) rep = p;
      for (std::size_t k : out.j_set) {
        QVec q = wg.act(wg.generator(k), p);
        if (!vset.count(q)) throw NotAFace("orbit leaves the vertex set");
        if (covered.insert(q).second) queue.push_back(q);
      }
    }
    out.orbit_reps.push_back(std::move(rep));
  }
  return out;
}

std::vector<std::size_t> convex_hull_2d(const std::vector<std::array<Rat, 2>>& pts) {
  std::vector<std::size_t> idx(pts.size());
  for (std::size_t k = 0; k < pts.size(); ++k) idx[k] = k;
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return pts[a] < pts[b]; });
  idx.erase(std::unique(idx.begin(), idx.end(),
                        [&](std::size_t a, std::size_t b) { return pts[a] == pts[b]; }),
            idx.end());
  if (idx.size() < 3) return idx;
  auto cross = [&](std::size_t o, std::size_t a, std::size_t b) {
    return (pts[a][0] - pts[o][0]) * (pts[b][1] - pts[o][1]) -
           (pts[a][1] - pts[o][1]) * (pts[b][0] - pts[o][0]);
  };
  std::vector<std::size_t> hull;
  for (std::size_t pass = 0; pass < 2; ++pass) {
    std::size_t base = hull.size();
    for (std::size_t k : idx) {
      while (hull.size() >= base + 2 &&
             cross(hull[hull.size() - 2], hull[hull.size() - 1], k) <= 0)
        hull.pop_back();
      hull.push_back(k);
    }
    hull.pop_back();
    std::reverse(idx.begin(), idx.end());
  }
  return hull;
}

namespace {

std::string fnum(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

double approx(const Rat& q) {
  return static_cast<double>(numerator(q)) / static_cast<double>(denominator(q));
}

}  // namespace

std::string render(const HullContext& ctx, const RenderMode& mode) {
  const auto& wg = ctx.group();
  std::vector<std::array<Rat, 2>> pts2;
  std::vector<std::array<Rat, 2>> highlight;
  bool truncated = false;
  std::string title;

  if (mode.kind == RenderMode::Kind::Hull2D) {
    if (ctx.n() != 2) throw UnsupportedRank("Hull2D needs n = 2");
    auto se = wg.enumerate_standard_subgroup({0, 1}, mode.max_length);
    truncated = !se.saturated;
    for (const auto& w : se.elements) {
      QVec p = wg.act(w, ctx.h());
      pts2.push_back({p[0], p[1]});
    }
    title = "orbit hull";
  } else {
    if (ctx.n() != 3) throw UnsupportedRank("Slice2D needs n = 3");
    auto sv = slice_vertices(ctx, mode.i, mode.t, mode.max_length);
    truncated = sv.truncated;
    std::size_t a = mode.i == 0 ? 1 : 0;
    std::size_t b = mode.i == 2 ? 1 : 2;
    for (const auto& v : sv.vertices) pts2.push_back({v.point[a], v.point[b]});
    auto ess = essential_vertices(ctx, mode.i, mode.t);
    for (const auto& p : ess.points) highlight.push_back({p[a], p[b]});
    title = "slice at omega_" + std::to_string(mode.i + 1) + " = " + to_string(mode.t);
  }

  auto hull = convex_hull_2d(pts2);
  Rat xmin = pts2[0][0], xmax = xmin, ymin = pts2[0][1], ymax = ymin;
  for (const auto& p : pts2) {
    xmin = std::min(xmin, p[0]);
    xmax = std::max(xmax, p[0]);
    ymin = std::min(ymin, p[1]);
    ymax = std::max(ymax, p[1]);
  }
  double sx = approx(xmax - xmin), sy = approx(ymax - ymin);
  double scale = 360.0 / std::max({sx, sy, 1e-9});
  auto px = [&](const Rat& q) { return fnum(20.0 + (approx(q) - approx(xmin)) * scale); };
  auto py = [&](const Rat& q) { return fnum(380.0 - (approx(q) - approx(ymin)) * scale); };

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"400\" height=\"400\" "
         "viewBox=\"0 0 400 400\">\n";
  svg += "<title>" + title + "</title>\n";
  if (hull.size() >= 2) {
    svg += "<polygon fill=\"#dce9f5\" stroke=\"#235789\" stroke-width=\"1\" points=\"";
    for (std::size_t k : hull) svg += px(pts2[k][0]) + "," + py(pts2[k][1]) + " ";
    svg += "\"/>\n";
  }
  for (const auto& p : pts2)
    svg += "<circle cx=\"" + px(p[0]) + "\" cy=\"" + py(p[1]) +
           "\" r=\"3\" fill=\"#235789\"/>\n";
  for (const auto& p : highlight)
    svg += "<circle cx=\"" + px(p[0]) + "\" cy=\"" + py(p[1]) +
           "\" r=\"5\" fill=\"none\" stroke=\"#c1292e\" stroke-width=\"2\"/>\n";
  if (truncated)
    svg += "<text x=\"20\" y=\"20\" font-family=\"monospace\" font-size=\"14\" "
           "fill=\"#c1292e\">truncated</text>\n";
  svg += "</svg>\n";
  return svg;
}

}  // namespace weylhull
