#include "weylhull/json_io.hpp"

namespace weylhull::io {

namespace {

json dmat_to_json(const numeric::DMat& m) {
  json out = json::array();
  for (const auto& row : m) out.push_back(row);
  return out;
}

}  // namespace

json rat_to_json(const Rat& r) { return to_string(r); }

Rat rat_from_json(const json& j) {
  if (j.is_number_integer()) return Rat(j.get<long long>());
  return parse_rational(j.get<std::string>());
}

json int_to_json(const Int& v) {
  static const Int lo = std::numeric_limits<long long>::min();
  static const Int hi = std::numeric_limits<long long>::max();
  if (v >= lo && v <= hi) return v.convert_to<long long>();
  return v.str();
}

Int int_from_json(const json& j) {
  if (j.is_string()) return Int(j.get<std::string>());
  return Int(j.get<long long>());
}

json qvec_to_json(const QVec& v) {
  json out = json::array();
  for (const Rat& r : v) out.push_back(rat_to_json(r));
  return out;
}

QVec qvec_from_json(const json& j) {
  QVec v;
  for (const auto& e : j) v.push_back(rat_from_json(e));
  return v;
}

json imat_to_json(const IMat& m) {
  json out = json::array();
  for (const auto& row : m) {
    json r = json::array();
    for (const Int& v : row) r.push_back(int_to_json(v));
    out.push_back(r);
  }
  return out;
}

IMat imat_from_json(const json& j) {
  IMat m;
  for (const auto& row : j) {
    std::vector<Int> r;
    for (const auto& v : row) r.push_back(int_from_json(v));
    m.push_back(std::move(r));
  }
  return m;
}

json gcm_to_json(const Gcm& gcm) { return {{"cartan", imat_to_json(gcm.a)}}; }

Gcm gcm_from_json(const json& j) { return validate_gcm(imat_from_json(j.at("cartan"))); }

json classification_to_json(const Gcm& gcm) {
  json out;
  out["components"] = gcm.components;
  json tags = json::array(), witnesses = json::array();
  for (const auto& type : classify(gcm)) {
    tags.push_back(to_string(type.tag));
    witnesses.push_back(qvec_to_json(type.witness));
  }
  out["tags"] = std::move(tags);
  out["witnesses"] = std::move(witnesses);
  Symmetrizer sym = symmetrizer(gcm);
  json b = json::array();
  for (const auto& row : sym.b) b.push_back(qvec_to_json(row));
  out["symmetrizer"] = {{"d", qvec_to_json(sym.d)}, {"b", std::move(b)}};
  return out;
}

json datum_to_json(const RootDatum& datum) {
  return {{"cartan", imat_to_json(datum.gcm.a)},
          {"d", datum.d},
          {"c", imat_to_json(datum.c)},
          {"h", imat_to_json(datum.h)}};
}

RootDatum datum_from_json(const json& j) {
  Gcm gcm = validate_gcm(imat_from_json(j.at("cartan")));
  return validate_datum(gcm, j.at("d").get<std::size_t>(), imat_from_json(j.at("c")),
                        imat_from_json(j.at("h")));
}

json element_to_json(const WeylElement& w) {
  return {{"word", w.word}, {"actB", imat_to_json(w.actB)}};
}

WeylElement element_from_json(const WeylGroup& wg, const json& j) {
  return wg.compose(j.at("word").get<std::vector<std::size_t>>());
}

json reduction_to_json(const ChamberReduction& red) {
  json out;
  out["inCone"] = red.in_cone;
  out["steps"] = red.steps;
  if (red.in_cone) {
    out["word"] = red.w.word;
    out["dominant"] = qvec_to_json(red.dominant);
    out["cell"] = red.cell;
  } else {
    out["last"] = qvec_to_json(red.last);
  }
  return out;
}

json membership_to_json(const Membership& m) {
  json out;
  switch (m.verdict) {
    case Membership::Verdict::In: out["verdict"] = "In"; break;
    case Membership::Verdict::Out: out["verdict"] = "Out"; break;
    case Membership::Verdict::Inconclusive: out["verdict"] = "Inconclusive"; break;
  }
  if (m.verdict == Membership::Verdict::In) out["tight"] = m.tight;
  if (m.verdict == Membership::Verdict::Out) out["violated"] = m.violated;
  out["reduction"] = reduction_to_json(m.reduction);
  return out;
}

json face_to_json(const FaceHandle& face, const FaceVertices& verts) {
  json out;
  out["rep"] = element_to_json(face.coset.rep);
  out["jSet"] = face.coset.j_set;
  out["dimension"] = face.coset.j_set.size();
  json points = json::array();
  for (const QVec& p : verts.points) points.push_back(qvec_to_json(p));
  out["vertices"] = std::move(points);
  out["truncated"] = verts.truncated;
  return out;
}

json slice_report_to_json(const HullContext& ctx, std::size_t i, const Rat& t,
                          std::size_t max_length) {
  json out;
  out["i"] = i;
  out["t"] = rat_to_json(t);

  SliceInterval iv = slice_interval(ctx, i);
  json interval;
  interval["boundedBelow"] = iv.bounded_below;
  if (iv.bounded_below) {
    interval["lo"] = rat_to_json(iv.lo);
    interval["j"] = iv.j;
  }
  interval["hi"] = rat_to_json(iv.hi);
  out["interval"] = std::move(interval);

  SliceVertexList verts = slice_vertices(ctx, i, t, max_length);
  json vjson = json::array();
  for (const SliceVertex& v : verts.vertices) {
    json e;
    e["kind"] = v.kind == SliceVertex::Kind::OrbitPoint ? "orbitPoint" : "edgeCrossing";
    e["word"] = v.w.word;
    if (v.kind == SliceVertex::Kind::EdgeCrossing) {
      e["k"] = v.k;
      e["s"] = rat_to_json(v.s);
    }
    e["point"] = qvec_to_json(v.point);
    vjson.push_back(std::move(e));
  }
  out["vertices"] = std::move(vjson);
  out["truncated"] = verts.truncated;

  bool interior = t < iv.hi && (!iv.bounded_below || t > iv.lo);
  if (interior) {
    EssentialPart ess = essential_vertices(ctx, i, t);
    json points = json::array();
    for (const QVec& p : ess.points) points.push_back(qvec_to_json(p));
    out["essential"] = {{"points", std::move(points)}, {"m", ess.m}};
  }
  return out;
}

json verification_to_json(const numeric::VerificationReport& rep) {
  return {{"samples", rep.samples},
          {"worstSlack", rep.worstSlack},
          {"coverageGaps", rep.coverageGaps},
          {"maxGap", rep.maxGap},
          {"seed", rep.seed}};
}

json attain_to_json(const numeric::AttainResult& res) {
  return {{"k", dmat_to_json(res.k)},
          {"achieved", res.achieved},
          {"error", res.error},
          {"fallback", res.fallback}};
}

json witness_to_json(const numeric::HorosphereWitness& wit) {
  return {{"h", qvec_to_json(wit.h)},
          {"violated", wit.violated},
          {"extensionCase", wit.extension_case},
          {"membership", membership_to_json(wit.check)}};
}

}  // namespace weylhull::io
