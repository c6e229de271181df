#include "conestab/serialize.hpp"

#include <cmath>

#include "conestab/errors.hpp"

namespace conestab {

Json number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return x;
}

namespace {

Json rational_json(const std::optional<Rational>& q) {
  return q ? Json(to_string(*q)) : Json(nullptr);
}

Json spectrum_json(const Spectrum& s) {
  Json out = Json::array();
  for (const auto& e : s.entries()) out.push_back({{"value", number(e.value)}, {"multiplicity", e.multiplicity}});
  return out;
}

Json coeffs_json(const std::vector<Rational>& c) {
  Json out = Json::array();
  for (const auto& q : c) out.push_back(to_string(q));
  return out;
}

Json profile_json(const SampledProfile& p) {
  Json out = Json::array();
  for (const auto& s : p.samples()) out.push_back({number(s.t), number(s.y), number(s.dy)});
  return out;
}

}  // namespace

Json to_json(const ConeSolution& cone) {
  Json j;
  j["k"] = cone.k;
  j["h"] = cone.h;
  j["theta_star"] = number(cone.theta_star);
  j["normalization"] = number(cone.normalization);
  j["base_step"] = number(cone.base_step);
  j["samples"] = profile_json(cone.profile);
  return j;
}

ConeSolution cone_from_json(const Json& j) {
  try {
    ConeSolution c;
    c.k = j.at("k").get<int>();
    c.h = j.at("h").get<int>();
    if (c.k < 1 || c.h < 1) throw Error(ErrorKind::usage, "k and h must be positive");
    c.theta_star = j.at("theta_star").get<double>();
    c.normalization = j.at("normalization").get<double>();
    const double q = c.n() - 1.0;
    std::vector<SampledProfile::Sample> samples;
    for (const auto& row : j.at("samples")) {
      SampledProfile::Sample s{row.at(0).get<double>(), row.at(1).get<double>(),
                               row.at(2).get<double>(), 0.0};
      s.d2y = s.t == 0.0 ? -q * s.y / c.h : -profile_drift(c.k, c.h, s.t) * s.dy - q * s.y;
      samples.push_back(s);
    }
    c.profile = SampledProfile(std::move(samples));
    const double dt = c.profile.samples()[1].t - c.profile.samples()[0].t;
    c.base_step = j.contains("base_step") ? j.at("base_step").get<double>()
                                          : std::min(0.05 * std::pow(1e-10, 0.25), 2.0 * dt);
    return c;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::usage, std::string("malformed cone JSON: ") + e.what());
  }
}

Json to_json(const BoundaryData& bd) {
  Json j;
  j["theta"] = number(bd.theta);
  j["H"] = number(bd.H);
  j["kappas"] = spectrum_json(bd.kappas);
  j["hessian_spectrum"] = spectrum_json(bd.hessian_spectrum);
  return j;
}

Json to_json(const BoundaryFunctionalResult& r) {
  Json j;
  j["weight"] = to_string(r.weight);
  j["n"] = r.n;
  j["H"] = number(r.H);
  j["L"] = number(r.L);
  j["B"] = number(r.B);
  j["L_exact"] = rational_json(r.L_exact);
  j["B_exact"] = rational_json(r.B_exact);
  j["boundary_case"] = to_string(r.boundary_case);
  j["case_mu"] = number(r.case_mu);
  j["equality_case"] = r.equality_case;
  j["tangential_distinct"] = r.tangential_distinct;
  return j;
}

Json to_json(const SubsolutionWindow& w) {
  Json j;
  j["alpha_min"] = number(w.alpha_min);
  j["alpha_max"] = number(w.alpha_max);
  j["alpha_min_exact"] = rational_json(w.alpha_min_exact);
  j["alpha_max_exact"] = rational_json(w.alpha_max_exact);
  j["nonempty"] = w.nonempty;
  j["strict"] = w.strict;
  j["strict_reason"] = w.strict_reason;
  j["alpha"] = number(w.alpha);
  j["gamma"] = number(w.gamma);
  return j;
}

Json to_json(const StabilityReport& r) {
  Json j;
  j["k"] = r.k;
  j["h"] = r.h;
  j["n"] = r.n;
  j["theta_star"] = number(r.theta_star);
  j["H"] = number(r.H);
  j["Lambda"] = number(r.Lambda);
  j["Lambda_fd"] = number(r.Lambda_fd);
  j["Lambda_shoot"] = number(r.Lambda_shoot);
  j["convergence_estimate"] = number(r.convergence_estimate);
  j["threshold"] = number(r.threshold);
  j["tol"] = number(r.tol);
  j["verdict"] = to_string(r.verdict);
  j["weight"] = to_string(r.selected_weight);
  j["L"] = number(r.L);
  j["B_a4"] = number(r.B_a4);
  j["criterion37"] = r.criterion37_fired;
  Json windows = Json::array();
  for (const auto& w : r.windows)
    windows.push_back({{"weight", to_string(w.weight)},
                       {"boundary", to_json(w.boundary)},
                       {"window", to_json(w.window)}});
  j["windows"] = windows;
  j["methods_agree"] = r.methods_agree;
  j["consistent"] = r.consistent;
  j["consistency_detail"] = r.consistency_detail;
  return j;
}

Json to_json(const Certificate& c) {
  Json j;
  j["k"] = c.k;
  j["h"] = c.h;
  j["n"] = c.n;
  j["Lambda"] = number(c.Lambda);
  j["beta"] = number(c.beta);
  j["omega"] = number(c.omega);
  j["r1"] = number(c.r1);
  j["r2"] = number(c.r2);
  j["Q_value"] = number(c.Q_value);
  j["margin_floor"] = number(c.margin_floor);
  Json hist = Json::array();
  for (const auto& l : c.refinement_history)
    hist.push_back({{"quadN", l.quadN}, {"Q", number(l.Q)}, {"weighted_l2", number(l.weighted_l2)}});
  j["refinement_history"] = hist;
  return j;
}

Json to_json(const PositiveSolution& p) {
  Json j;
  j["decay_exponent"] = number(p.decay_exponent);
  j["residual"] = number(p.residual);
  j["min_psi"] = number(p.min_psi);
  j["psi"] = profile_json(p.psi);
  return j;
}

Json to_json(const LStarResult& r) {
  Json j;
  j["n"] = r.n;
  j["sup"] = number(r.sup);
  j["infinite"] = r.infinite;
  j["attained"] = r.attained;
  Json w = Json::array();
  for (double v : r.witness) w.push_back(number(v));
  j["witness"] = w;
  Json h = Json::array();
  for (const auto& [radius, best] : r.history) h.push_back({number(radius), number(best)});
  j["history"] = h;
  return j;
}

Json to_json(const IdentityProof& p) {
  Json recs = Json::array();
  for (const auto& r : p.records)
    recs.push_back({{"identity", r.identity},
                    {"lhs_coeffs", coeffs_json(r.lhs_coeffs)},
                    {"rhs_coeffs", coeffs_json(r.rhs_coeffs)},
                    {"verdict", r.verdict},
                    {"detail", r.detail}});
  return {{"records", recs}, {"verdict", p.verdict}};
}

Json to_json(const ViolationReport& r) {
  Json j;
  j["seed"] = r.seed;
  j["samples_tested"] = r.samples_tested;
  j["samples_guarded"] = r.samples_guarded;
  j["worst_margin"] = number(r.worst_margin);
  Json pt = Json::array();
  for (double v : r.worst_point) pt.push_back(number(v));
  j["worst_point"] = pt;
  j["hard_violations"] = r.hard_violations;
  j["tol_fd"] = number(r.tol_fd);
  j["fd_disagreements"] = r.fd_disagreements;
  j["max_gradient_rel_error"] = number(r.max_gradient_rel_error);
  j["max_laplacian_rel_error"] = number(r.max_laplacian_rel_error);
  j["max_pairing_residual"] = number(r.max_pairing_residual);
  j["min_pairing"] = number(r.min_pairing);
  j["passed"] = r.passed();
  return j;
}

Json to_json(const InteriorCheckResult& r) {
  Json j;
  j["skipped"] = r.skipped;
  j["min_margin"] = number(r.min_margin);
  j["argmin_t"] = number(r.argmin_t);
  j["scale"] = number(r.scale);
  j["points_checked"] = r.points_checked;
  j["points_guarded"] = r.points_guarded;
  j["passed"] = r.passed();
  return j;
}

Json to_json(const ScanTable& t) {
  Json j;
  j["schema"] = kCsvSchema;
  j["version"] = kVersion;
  j["n"] = t.n;
  j["weight"] = to_string(t.options.stability.weight);
  j["tol"] = number(t.options.stability.tol);
  j["gridN"] = t.options.stability.gridN;
  j["timestamp"] = t.timestamp;
  Json rows = Json::array();
  for (const auto& r : t.rows) rows.push_back(to_json(r));
  j["rows"] = rows;
  return j;
}

}  // namespace conestab
