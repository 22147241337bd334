#include "weylhull/json_io.hpp"

#include "CLI11.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>

using namespace weylhull;
using io::json;

namespace {

constexpr int kExitVerdict = 2;  // mathematical Out / Inconclusive / failed check

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return json::parse(in);
}

void emit(const json& j, const std::string& out_path) {
  std::string text = j.dump(2) + "\n";
  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(out_path);
    if (!out) throw std::runtime_error("cannot write " + out_path);
    out << text;
  }
}

void write_text(const std::string& text, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : s) {
    if (c == ',') {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(cur);
  return parts;
}

QVec parse_qvec(const std::string& s) {
  QVec v;
  for (const auto& p : split_list(s)) v.push_back(parse_rational(p));
  return v;
}

numeric::DVec parse_dvec(const std::string& s) {
  numeric::DVec v;
  for (const auto& p : split_list(s)) v.push_back(std::stod(p));
  return v;
}

numeric::DVec default_h(const std::string& type) {
  if (type == "A1") return {1.0, -1.0};
  if (type == "A2") return {1.0, 0.0, -1.0};
  if (type == "A3") return {1.5, 0.5, -0.5, -1.5};
  throw CLI::ValidationError("--type", "expected A1, A2 or A3");
}

std::string csv_of(const std::vector<numeric::DVec>& samples) {
  std::string out;
  char buf[64];
  for (std::size_t s = 0; s < samples.size(); ++s) {
    out += std::to_string(s);
    for (double v : samples[s]) {
      std::snprintf(buf, sizeof buf, ",%.17g", v);
      out += buf;
    }
    out += '\n';
  }
  return out;
}

struct VerifyOptions {
  std::string type = "A2", h_str, out, csv;
  std::size_t samples = 10000;
  std::uint64_t seed = 42;
  bool linear = false;
};

int run_verify(const VerifyOptions& opt, bool linear) {
  numeric::DVec h = opt.h_str.empty() ? default_h(opt.type) : parse_dvec(opt.h_str);
  std::vector<numeric::DVec> points;
  auto* sink = opt.csv.empty() ? nullptr : &points;
  auto report = linear ? numeric::verify_linear(h.size(), h, opt.samples, opt.seed, sink)
                       : numeric::verify_nonlinear(h.size(), h, opt.samples, opt.seed, sink);
  if (!opt.csv.empty()) write_text(csv_of(points), opt.csv);
  json j = io::verification_to_json(report);
  j["projection"] = linear ? "linear" : "nonlinear";
  emit(j, opt.out);
  return report.worstSlack >= -1e-9 && report.coverageGaps.empty() ? 0 : kExitVerdict;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact convex geometry of Weyl orbit hulls with finite-type matrix models"};
  app.require_subcommand(1);

  std::string gcm_path, datum_path, out_path, svg_path, point_str, h_str, t_str, target_str;
  std::size_t max_length = 8, index_i = 0;
  std::size_t budget = kDefaultReductionBudget;

  // classify
  auto* classify_cmd = app.add_subcommand("classify", "Classify a generalized Cartan matrix");
  classify_cmd->add_option("--gcm", gcm_path, "JSON file with {\"cartan\": [[...]]}")->required();
  classify_cmd->add_option("--out", out_path, "output path (default stdout)");

  // datum make-kac | validate
  auto* datum_cmd = app.add_subcommand("datum", "Root datum construction and validation");
  datum_cmd->require_subcommand(1);
  auto* make_kac = datum_cmd->add_subcommand("make-kac", "Standard realization of a GCM");
  make_kac->add_option("--gcm", gcm_path)->required();
  make_kac->add_option("--out", out_path);
  auto* validate = datum_cmd->add_subcommand("validate", "Check pairing and free/cofree axioms");
  validate->add_option("--datum", datum_path)->required();
  validate->add_option("--out", out_path);

  // weyl enumerate
  auto* weyl_cmd = app.add_subcommand("weyl", "Weyl group computations");
  weyl_cmd->require_subcommand(1);
  auto* enumerate = weyl_cmd->add_subcommand("enumerate", "Elements up to a length bound");
  enumerate->add_option("--gcm", gcm_path);
  enumerate->add_option("--datum", datum_path);
  enumerate->add_option("--max-length", max_length);
  enumerate->add_option("--out", out_path);

  // cone reduce
  auto* cone_cmd = app.add_subcommand("cone", "Tits cone geometry");
  cone_cmd->require_subcommand(1);
  auto* reduce = cone_cmd->add_subcommand("reduce", "Reduce a point into the closed chamber");
  reduce->add_option("--datum", datum_path)->required();
  reduce->add_option("--point", point_str, "comma-separated rationals")->required();
  reduce->add_option("--budget", budget);
  reduce->add_option("--out", out_path);

  // hull member|faces|slice|essential|render
  auto* hull_cmd = app.add_subcommand("hull", "Orbit hull queries for a regular dominant h");
  hull_cmd->require_subcommand(1);
  auto add_ctx = [&](CLI::App* sub) {
    sub->set_help_flag("--help", "print help");  // frees --h for the base point
    sub->add_option("--datum", datum_path)->required();
    sub->add_option("--h", h_str, "regular dominant point, comma-separated rationals")->required();
    sub->add_option("--out", out_path);
  };
  auto* member = hull_cmd->add_subcommand("member", "Membership of a point in conv(W.h)");
  add_ctx(member);
  member->add_option("--point", point_str)->required();
  member->add_option("--budget", budget);
  auto* faces = hull_cmd->add_subcommand("faces", "Minimal face through a boundary point");
  add_ctx(faces);
  faces->add_option("--point", point_str)->required();
  faces->add_option("--max-length", max_length);
  auto* slice = hull_cmd->add_subcommand("slice", "Slice interval and vertices at a level");
  add_ctx(slice);
  slice->add_option("--i", index_i)->required();
  slice->add_option("--t", t_str)->required();
  slice->add_option("--max-length", max_length);
  auto* essential = hull_cmd->add_subcommand("essential", "Essential vertices of a slice");
  add_ctx(essential);
  essential->add_option("--i", index_i)->required();
  essential->add_option("--t", t_str)->required();
  auto* render_cmd = hull_cmd->add_subcommand("render", "SVG figure of the hull or a slice");
  add_ctx(render_cmd);
  render_cmd->add_option("--i", index_i);
  render_cmd->add_option("--t", t_str, "slice level; renders a slice when given");
  render_cmd->add_option("--max-length", max_length);
  render_cmd->add_option("--svg", svg_path)->required();

  // verify kostant|linear
  VerifyOptions vopt;
  auto* verify_cmd = app.add_subcommand("verify", "Numerical convexity verification");
  verify_cmd->require_subcommand(1);
  auto add_verify = [&](CLI::App* sub) {
    sub->set_help_flag("--help", "print help");
    sub->add_option("--type", vopt.type, "A1, A2 or A3");
    sub->add_option("--h", vopt.h_str, "diagonal, comma-separated decimals");
    sub->add_option("--samples", vopt.samples);
    sub->add_option("--seed", vopt.seed);
    sub->add_option("--csv", vopt.csv, "dump projections as CSV");
    sub->add_option("--out", vopt.out);
  };
  auto* kostant = verify_cmd->add_subcommand("kostant", "Iwasawa projection sampling");
  add_verify(kostant);
  kostant->add_flag("--linear", vopt.linear, "use the adjoint-diagonal projection instead");
  auto* linear = verify_cmd->add_subcommand("linear", "Adjoint-diagonal projection sampling");
  add_verify(linear);

  // attain
  auto* attain_cmd = app.add_subcommand("attain", "Construct k reaching a target projection");
  attain_cmd->set_help_flag("--help", "print help");
  attain_cmd->add_option("--type", vopt.type);
  attain_cmd->add_option("--h", vopt.h_str);
  attain_cmd->add_option("--target", target_str)->required();
  attain_cmd->add_option("--out", out_path);

  // witness
  auto* witness_cmd = app.add_subcommand("witness", "Orbit hull missing the origin");
  witness_cmd->add_option("--datum", datum_path);
  witness_cmd->add_option("--gcm", gcm_path);
  witness_cmd->add_option("--out", out_path);

  CLI11_PARSE(app, argc, argv);

  try {
    if (classify_cmd->parsed()) {
      emit(io::classification_to_json(io::gcm_from_json(read_json(gcm_path))), out_path);
      return 0;
    }
    if (make_kac->parsed()) {
      emit(io::datum_to_json(make_kac_datum(io::gcm_from_json(read_json(gcm_path)))), out_path);
      return 0;
    }
    if (validate->parsed()) {
      try {
        io::datum_from_json(read_json(datum_path));
        emit(json{{"valid", true}}, out_path);
        return 0;
      } catch (const DatumError& e) {
        emit(json{{"valid", false}, {"error", e.what()}}, out_path);
        return kExitVerdict;
      }
    }
    if (enumerate->parsed()) {
      if (gcm_path.empty() == datum_path.empty())
        throw std::runtime_error("weyl enumerate needs exactly one of --gcm / --datum");
      RootDatum datum = datum_path.empty()
                            ? make_kac_datum(io::gcm_from_json(read_json(gcm_path)))
                            : io::datum_from_json(read_json(datum_path));
      WeylGroup wg(datum);
      json elems = json::array();
      for (const auto& w : wg.enumerate_by_length(max_length))
        elems.push_back(io::element_to_json(w));
      emit(json{{"maxLength", max_length}, {"elements", std::move(elems)}}, out_path);
      return 0;
    }
    if (reduce->parsed()) {
      WeylGroup wg(io::datum_from_json(read_json(datum_path)));
      auto red = reduce_to_chamber(wg, parse_qvec(point_str), budget);
      emit(io::reduction_to_json(red), out_path);
      return red.in_cone ? 0 : kExitVerdict;
    }
    if (member->parsed()) {
      HullContext ctx(io::datum_from_json(read_json(datum_path)), parse_qvec(h_str));
      auto verdict = hull_membership(ctx, parse_qvec(point_str), budget);
      emit(io::membership_to_json(verdict), out_path);
      return verdict.verdict == Membership::Verdict::In ? 0 : kExitVerdict;
    }
    if (faces->parsed()) {
      HullContext ctx(io::datum_from_json(read_json(datum_path)), parse_qvec(h_str));
      auto face = locate_face(ctx, parse_qvec(point_str));
      emit(io::face_to_json(face, face_vertices(ctx, face, max_length)), out_path);
      return 0;
    }
    if (slice->parsed()) {
      HullContext ctx(io::datum_from_json(read_json(datum_path)), parse_qvec(h_str));
      emit(io::slice_report_to_json(ctx, index_i, parse_rational(t_str), max_length), out_path);
      return 0;
    }
    if (essential->parsed()) {
      HullContext ctx(io::datum_from_json(read_json(datum_path)), parse_qvec(h_str));
      auto ess = essential_vertices(ctx, index_i, parse_rational(t_str));
      json points = json::array();
      for (const auto& p : ess.points) points.push_back(io::qvec_to_json(p));
      emit(json{{"m", ess.m}, {"points", std::move(points)}}, out_path);
      return 0;
    }
    if (render_cmd->parsed()) {
      HullContext ctx(io::datum_from_json(read_json(datum_path)), parse_qvec(h_str));
      RenderMode mode;
      mode.max_length = max_length;
      if (t_str.empty()) {
        mode.kind = RenderMode::Kind::Hull2D;
      } else {
        mode.kind = RenderMode::Kind::Slice2D;
        mode.i = index_i;
        mode.t = parse_rational(t_str);
      }
      write_text(render(ctx, mode), svg_path);
      return 0;
    }
    if (kostant->parsed()) return run_verify(vopt, vopt.linear);
    if (linear->parsed()) return run_verify(vopt, true);
    if (attain_cmd->parsed()) {
      numeric::DVec h = vopt.h_str.empty() ? default_h(vopt.type) : parse_dvec(vopt.h_str);
      auto res = numeric::attain(h.size(), h, parse_dvec(target_str));
      emit(io::attain_to_json(res), out_path);
      return 0;
    }
    if (witness_cmd->parsed()) {
      if (datum_path.empty() == gcm_path.empty())
        throw std::runtime_error("witness needs exactly one of --gcm / --datum");
      RootDatum datum = datum_path.empty()
                            ? make_kac_datum(io::gcm_from_json(read_json(gcm_path)))
                            : io::datum_from_json(read_json(datum_path));
      emit(io::witness_to_json(numeric::horosphere_witness(datum)), out_path);
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
