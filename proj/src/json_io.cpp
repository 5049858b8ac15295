#include "pwrelax/json_io.hpp"

#include <json.hpp>

namespace pwrelax {

namespace {

using Json = nlohmann::ordered_json;

Json parse_doc(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw UsageError(std::string("malformed JSON: ") + e.what());
  }
  if (!j.is_object()) throw UsageError("JSON document must be an object");
  if (!j.contains("version") || j["version"] != kJsonVersion)
    throw UsageError("unsupported or missing document version");
  return j;
}

// Wraps nlohmann type errors so callers see one exception type.
template <class F>
auto guarded(F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Json::exception& e) {
    throw UsageError(std::string("invalid document: ") + e.what());
  }
}

Json rat(const Rational& r) { return r.decimal_or_fraction(); }

Rational rat(const Json& j) {
  if (j.is_string()) return Rational::parse(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long long>());
  throw UsageError("expected a rational string");
}

Json rats(const std::vector<Rational>& v) {
  Json a = Json::array();
  for (const auto& r : v) a.push_back(rat(r));
  return a;
}

std::vector<Rational> rats(const Json& j) {
  std::vector<Rational> out;
  for (const auto& e : j) out.push_back(rat(e));
  return out;
}

Json family_json(const CdcFamily& fam) {
  Json j;
  j["version"] = kJsonVersion;
  if (fam.shape()) j["shape"] = *fam.shape();
  j["sets"] = fam.sets();
  return j;
}

CdcFamily family_of(const Json& j) {
  std::optional<std::vector<int>> shape;
  if (j.contains("shape")) shape = j["shape"].get<std::vector<int>>();
  return CdcFamily(j.at("sets").get<std::vector<IndexSet>>(), shape);
}

Json breakpoints_json(const Breakpoints& bp) { return Json{{"x", rats(bp.x)}, {"y", rats(bp.y)}}; }

Breakpoints breakpoints_of(const Json& j) {
  Breakpoints bp{rats(j.at("x")), rats(j.at("y"))};
  validate_breakpoints(bp);
  return bp;
}

Json header(const char* kind, std::uint64_t seed) {
  Json j;
  j["version"] = kJsonVersion;
  j["kind"] = kind;
  j["seed"] = seed;
  return j;
}

}  // namespace

std::string family_to_json(const CdcFamily& fam) { return family_json(fam).dump(2); }

CdcFamily family_from_json(const std::string& text) {
  Json j = parse_doc(text);
  return guarded([&] { return family_of(j); });
}

std::string relaxation_to_json(const Relaxation1D& r) {
  Json j;
  j["version"] = kJsonVersion;
  j["function"] = r.function;
  j["lo"] = rat(r.lo);
  j["hi"] = rat(r.hi);
  Json pieces = Json::array();
  for (const auto& p : r.pieces)
    pieces.push_back(Json{{"x_lo", rat(p.x_lo)},
                          {"x_hi", rat(p.x_hi)},
                          {"vertex_ids", p.vertex_ids},
                          {"orientation", to_string(p.orientation)}});
  j["pieces"] = pieces;
  Json verts = Json::array();
  for (const auto& v : r.vertices) verts.push_back(Json::array({rat(v.x), rat(v.y)}));
  j["vertices"] = verts;
  Json fam = family_json(r.family);
  fam.erase("version");
  j["family"] = fam;
  j["lower"] = breakpoints_json(r.lower);
  j["upper"] = breakpoints_json(r.upper);
  return j.dump(2);
}

Relaxation1D relaxation_from_json(const std::string& text) {
  Json j = parse_doc(text);
  return guarded([&] {
    Relaxation1D r;
    r.function = j.at("function").get<std::string>();
    r.lo = rat(j.at("lo"));
    r.hi = rat(j.at("hi"));
    for (const auto& v : j.at("vertices")) {
      if (v.size() != 2) throw UsageError("vertex must be [x, y]");
      r.vertices.push_back({rat(v[0]), rat(v[1])});
    }
    for (const auto& p : j.at("pieces")) {
      Piece pc{rat(p.at("x_lo")), rat(p.at("x_hi")), p.at("vertex_ids").get<std::vector<int>>(),
               orientation_from_string(p.at("orientation").get<std::string>())};
      for (int id : pc.vertex_ids)
        if (id < 1 || id > static_cast<int>(r.vertices.size())) throw UsageError("piece refers to unknown vertex");
      r.pieces.push_back(std::move(pc));
    }
    r.family = family_of(j.at("family"));
    if (r.family.size() != static_cast<int>(r.pieces.size())) throw UsageError("family and pieces disagree");
    r.lower = breakpoints_of(j.at("lower"));
    r.upper = breakpoints_of(j.at("upper"));
    return r;
  });
}

std::string instance_to_json(const KinematicsInstance& inst) {
  Json j = header("kinematics", inst.seed);
  j["n"] = inst.n;
  Json links = Json::array();
  for (const auto& l : inst.links) links.push_back(Json::array({rat(l[0]), rat(l[1])}));
  j["links"] = links;
  j["lower"] = rats(inst.lower);
  j["upper"] = rats(inst.upper);
  j["x_des"] = Json::array({rat(inst.x_des[0]), rat(inst.x_des[1])});
  j["theta_des"] = rat(inst.theta_des);
  j["theta_init"] = rat(inst.theta_init);
  j["beta"] = rat(inst.beta);
  return j.dump(2);
}

std::string instance_to_json(const SocInstance& inst) {
  Json j = header("share_of_choice", inst.seed);
  j["v"] = inst.v;
  j["S"] = inst.S;
  j["eta"] = inst.eta;
  j["C"] = rat(inst.C);
  j["shares"] = rats(inst.shares);
  Json beta = Json::array();
  for (const auto& bi : inst.beta) {
    Json row = Json::array();
    for (const auto& bis : bi) row.push_back(rats(bis));
    beta.push_back(row);
  }
  j["beta"] = beta;
  j["u"] = rats(inst.u);
  return j.dump(2);
}

std::string instance_kind(const std::string& text) {
  Json j = parse_doc(text);
  return guarded([&] { return j.at("kind").get<std::string>(); });
}

KinematicsInstance kinematics_from_json(const std::string& text) {
  Json j = parse_doc(text);
  return guarded([&] {
    if (j.at("kind") != "kinematics") throw UsageError("not a kinematics instance");
    KinematicsInstance k;
    k.seed = j.at("seed").get<std::uint64_t>();
    k.n = j.at("n").get<int>();
    for (const auto& l : j.at("links")) {
      if (l.size() != 2) throw UsageError("link must be [x, y]");
      k.links.push_back({rat(l[0]), rat(l[1])});
    }
    k.lower = rats(j.at("lower"));
    k.upper = rats(j.at("upper"));
    const auto& xd = j.at("x_des");
    if (xd.size() != 2) throw UsageError("x_des must be [x, y]");
    k.x_des = {rat(xd[0]), rat(xd[1])};
    k.theta_des = rat(j.at("theta_des"));
    k.theta_init = rat(j.at("theta_init"));
    k.beta = rat(j.at("beta"));
    k.validate();
    return k;
  });
}

SocInstance soc_from_json(const std::string& text) {
  Json j = parse_doc(text);
  return guarded([&] {
    if (j.at("kind") != "share_of_choice") throw UsageError("not a share-of-choice instance");
    SocInstance s;
    s.seed = j.at("seed").get<std::uint64_t>();
    s.v = j.at("v").get<int>();
    s.S = j.at("S").get<int>();
    s.eta = j.at("eta").get<int>();
    s.C = rat(j.at("C"));
    s.shares = rats(j.at("shares"));
    for (const auto& bi : j.at("beta")) {
      std::vector<std::vector<Rational>> row;
      for (const auto& bis : bi) row.push_back(rats(bis));
      s.beta.push_back(std::move(row));
    }
    s.u = rats(j.at("u"));
    s.validate();
    return s;
  });
}

}  // namespace pwrelax
