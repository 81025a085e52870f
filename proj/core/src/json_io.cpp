#include "segre/json_io.hpp"

namespace segre {

namespace {

Json subspace_json(const CoordinateSubspace& S, const std::vector<std::string>& vars) {
  Json arr = Json::array();
  for (int i : S.vanishing) arr.push_back(vars.at(i));
  return arr;
}

}  // namespace

Json segre_report_json(const SegreReport& R, const std::vector<std::string>& vars) {
  Json j;
  j["e"] = R.e;
  j["codimZ"] = R.codimZ;
  Json dec = Json::array();
  for (const auto& lvl : R.decomposition) {
    Json lj;
    lj["k"] = lvl.k;
    Json fixed = Json::array();
    for (const auto& fp : lvl.fixed) {
      Json fj;
      fj["S"] = subspace_json(fp.V, vars);
      fj["beta"] = fp.beta;
      fixed.push_back(fj);
    }
    lj["fixed"] = fixed;
    lj["n_k"] = lvl.n_k;
    dec.push_back(lj);
  }
  j["decomposition"] = dec;
  return j;
}

Json newton_polyhedron_json(const NewtonPolyhedron& NP) {
  Json j;
  Json verts = Json::array();
  for (const auto& v : NP.vertices) verts.push_back(v.e);
  j["vertices"] = verts;
  Json facets = Json::array();
  for (const auto& f : NP.facets) {
    Json fj;
    fj["normal"] = f.normal;
    fj["offset"] = f.offset;
    facets.push_back(fj);
  }
  j["facets"] = facets;
  return j;
}

Json lelong_estimate_json(const LelongEstimate& L) {
  Json j;
  j["k"] = L.k;
  j["value"] = L.value;
  j["stderr"] = L.stderr_;
  Json trace = Json::array();
  for (const auto& row : L.trace) {
    Json rj;
    rj["r"] = row.r;
    rj["epsilon"] = row.epsilon;
    rj["mass"] = row.mass;
    rj["mass_stderr"] = row.mass_stderr;
    rj["nu_hat"] = row.nu_hat;
    rj["nu_stderr"] = row.nu_stderr;
    rj["mass_near"] = row.mass_near;
    rj["mass_far"] = row.mass_far;
    trace.push_back(rj);
  }
  j["trace"] = trace;
  j["decay_exponent"] = L.decay_exponent;
  j["fit_used"] = L.fit_used;
  j["monotone"] = L.monotone;
  j["flagged"] = L.flagged;
  return j;
}

Json vogel_stats_json(const VogelStats& S) {
  Json j;
  j["trials"] = S.trials;
  j["generic"] = {{"e", S.generic_value.e}, {"m", S.generic_value.m}};
  j["generic_count"] = S.generic_count;
  Json outcomes = Json::array();
  for (const auto& [o, cnt] : S.frequency) {
    Json oj;
    oj["e"] = o.e;
    oj["m"] = o.m;
    oj["count"] = cnt;
    outcomes.push_back(oj);
  }
  j["outcomes"] = outcomes;
  return j;
}

Json king_report_json(const KingReport& R) {
  Json j;
  j["ideal"] = {{"vars", R.ideal.vars}, {"generators", R.ideal.generator_texts}};
  j["segre"] = segre_report_json(R.segre, R.ideal.vars);
  if (R.vogel) {
    j["vogel"] = vogel_stats_json(*R.vogel);
    j["vogel_agrees"] = R.vogel_agrees;
  } else {
    j["vogel"] = nullptr;
  }
  Json checks = Json::array();
  for (const auto& c : R.lelong_checks) {
    Json cj;
    cj["k"] = c.k;
    if (c.target)
      cj["target"] = *c.target;
    else
      cj["target"] = nullptr;
    cj["target_source"] = c.target_source;
    cj["estimate"] = c.estimate.value;
    cj["stderr"] = c.estimate.stderr_;
    cj["verdict"] = to_string(c.verdict);
    cj["reason"] = c.reason;
    cj["detail"] = lelong_estimate_json(c.estimate);
    checks.push_back(cj);
  }
  j["lelong_checks"] = checks;
  j["overall"] = to_string(R.overall);
  j["any_flagged"] = R.any_flagged;
  return j;
}

bool validate_schema(const Json& value, const Json& schema, std::string* why) {
  auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  if (schema.contains("type")) {
    const std::string t = schema["type"];
    bool ok = (t == "object" && value.is_object()) || (t == "array" && value.is_array()) ||
              (t == "string" && value.is_string()) || (t == "integer" && value.is_number_integer()) ||
              (t == "number" && value.is_number()) || (t == "boolean" && value.is_boolean()) ||
              (t == "null" && value.is_null());
    if (!ok) return fail("expected type " + t + ", got " + std::string(value.type_name()));
  }
  if (schema.contains("enum")) {
    bool ok = false;
    for (const auto& e : schema["enum"])
      if (e == value) ok = true;
    if (!ok) return fail("value not in enum");
  }
  if (schema.contains("required") && value.is_object()) {
    for (const auto& k : schema["required"])
      if (!value.contains(k.get<std::string>()))
        return fail("missing required key " + k.get<std::string>());
  }
  if (schema.contains("properties") && value.is_object()) {
    for (auto it = schema["properties"].begin(); it != schema["properties"].end(); ++it) {
      if (!value.contains(it.key())) continue;
      std::string sub;
      if (!validate_schema(value.at(it.key()), it.value(), &sub))
        return fail(it.key() + ": " + sub);
    }
  }
  if (schema.contains("items") && value.is_array()) {
    for (const auto& elem : value) {
      std::string sub;
      if (!validate_schema(elem, schema["items"], &sub)) return fail("items: " + sub);
    }
  }
  if (schema.contains("anyOf")) {
    for (const auto& sub : schema["anyOf"]) {
      std::string w;
      if (validate_schema(value, sub, &w)) return true;
    }
    return fail("no anyOf branch matched");
  }
  return true;
}

}  // namespace segre
