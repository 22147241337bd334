#pragma once

#include "weylhull/hull.hpp"
#include "weylhull/iwasawa.hpp"

#include "json.hpp"

namespace weylhull::io {

using nlohmann::json;

// Rationals travel as exact "p/q" strings (plain "p" for integers); Cartan
// entries and other integers as JSON numbers when they fit, strings otherwise.
json rat_to_json(const Rat& r);
Rat rat_from_json(const json& j);
json int_to_json(const Int& v);
Int int_from_json(const json& j);
json qvec_to_json(const QVec& v);
QVec qvec_from_json(const json& j);
json imat_to_json(const IMat& m);
IMat imat_from_json(const json& j);

/// {"cartan": [[...]]}
json gcm_to_json(const Gcm& gcm);
Gcm gcm_from_json(const json& j);

/// {"components", "tags", "witnesses", "symmetrizer"}
json classification_to_json(const Gcm& gcm);

/// {"cartan", "d", "c", "h"}; reading re-validates.
json datum_to_json(const RootDatum& datum);
RootDatum datum_from_json(const json& j);

/// {"word", "actB"}
json element_to_json(const WeylElement& w);
/// Rebuilds the element through the group (word is re-canonicalized).
WeylElement element_from_json(const WeylGroup& wg, const json& j);

json reduction_to_json(const ChamberReduction& red);
json membership_to_json(const Membership& m);
json face_to_json(const FaceHandle& face, const FaceVertices& verts);

/// Full slice report: interval, slice vertices, essential part.
json slice_report_to_json(const HullContext& ctx, std::size_t i, const Rat& t,
                          std::size_t max_length);

json verification_to_json(const numeric::VerificationReport& rep);
json attain_to_json(const numeric::AttainResult& res);
json witness_to_json(const numeric::HorosphereWitness& wit);

}  // namespace weylhull::io
