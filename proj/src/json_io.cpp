#include "levy_gqmle/json_io.hpp"

#include <string>

#include "levy_gqmle/errors.hpp"

namespace levy_gqmle {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

double number(const Json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_number()) {
    throw Error(ErrorKind::Usage, std::string("missing numeric field '") + key + "'");
  }
  return j.at(key).get<double>();
}

Json drift_json(const DriftFamily& d) {
  Json j{{"kind", to_string(d.kind)}};
  if (d.kind == DriftKind::MeanRevertLinear) j["level"] = d.level;
  return j;
}

DriftFamily drift_from(const Json& j) {
  DriftFamily d;
  d.kind = drift_kind_from_string(j.at("kind").get<std::string>());
  d.level = j.value("level", 0.0);
  return d;
}

ScaleFamily scale_from(const Json& j) {
  ScaleFamily s;
  s.kind = scale_kind_from_string(j.at("kind").get<std::string>());
  return s;
}

ParameterInterval box_from(const Json& j) {
  if (!j.is_array() || j.size() != 2) {
    throw Error(ErrorKind::Usage, "parameter box must be a two-element array");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

Json vec(const std::vector<double>& v) { return Json(v); }

Json epe_json(const EPEApprox& f) {
  return {{"grid", vec(f.grid)},
          {"values", vec(f.values)},
          {"se", vec(f.se)},
          {"tail_bound", vec(f.tail_bound)},
          {"t_max", f.t_max},
          {"inner_paths", f.inner_paths},
          {"centering", f.centering},
          {"centering_se", f.centering_se}};
}

}  // namespace

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::exception& e) {
    throw Error(ErrorKind::Usage, std::string("invalid JSON: ") + e.what());
  }
}

Json to_json(const LevyLawSpec& spec) {
  Json params = std::visit(
      overloaded{[](const Nig& p) {
                   return Json{{"alpha", p.alpha}, {"beta", p.beta}, {"delta", p.delta},
                               {"mu", p.mu}};
                 },
                 [](const BilateralGamma& p) {
                   return Json{{"shape_plus", p.shape_plus},
                               {"rate_plus", p.rate_plus},
                               {"shape_minus", p.shape_minus},
                               {"rate_minus", p.rate_minus}};
                 },
                 [](const Brownian& p) { return Json{{"sigma", p.sigma}}; }},
      spec);
  return {{"family", family_name(spec)}, {"params", params}};
}

LevyLawSpec levy_spec_from_json(const Json& j) {
  try {
    const std::string family = j.at("family").get<std::string>();
    const Json& p = j.at("params");
    LevyLawSpec spec;
    if (family == "nig") {
      spec = Nig{number(p, "alpha"), number(p, "beta"), number(p, "delta"), number(p, "mu")};
    } else if (family == "bgamma") {
      spec = BilateralGamma{number(p, "shape_plus"), number(p, "rate_plus"),
                            number(p, "shape_minus"), number(p, "rate_minus")};
    } else if (family == "brownian") {
      spec = Brownian{number(p, "sigma")};
    } else {
      throw Error(ErrorKind::Usage, "unknown Levy family '" + family + "'");
    }
    validate(spec);
    return spec;
  } catch (const Json::exception& e) {
    throw Error(ErrorKind::Usage, std::string("bad Levy law JSON: ") + e.what());
  }
}

Json to_json(const TrueModel& model) {
  return {{"drift", drift_json(model.drift)},
          {"alpha", model.alpha},
          {"scale", {{"kind", to_string(model.scale.kind)}}},
          {"gamma", model.gamma}};
}

TrueModel true_model_from_json(const Json& j) {
  try {
    TrueModel m;
    if (j.contains("drift")) m.drift = drift_from(j.at("drift"));
    if (j.contains("scale")) m.scale = scale_from(j.at("scale"));
    m.alpha = j.value("alpha", m.alpha);
    m.gamma = j.value("gamma", m.gamma);
    validate(m);
    return m;
  } catch (const Json::exception& e) {
    throw Error(ErrorKind::Usage, std::string("bad true-model JSON: ") + e.what());
  }
}

Json to_json(const ModelSpec& model) {
  return {{"drift", drift_json(model.drift)},
          {"scale", {{"kind", to_string(model.scale.kind)}}},
          {"alpha_box", {model.alpha_box.lo, model.alpha_box.hi}},
          {"gamma_box", {model.gamma_box.lo, model.gamma_box.hi}}};
}

ModelSpec model_spec_from_json(const Json& j) {
  try {
    ModelSpec m;
    if (j.contains("drift")) m.drift = drift_from(j.at("drift"));
    if (j.contains("scale")) m.scale = scale_from(j.at("scale"));
    if (j.contains("alpha_box")) m.alpha_box = box_from(j.at("alpha_box"));
    if (j.contains("gamma_box")) m.gamma_box = box_from(j.at("gamma_box"));
    validate(m);
    return m;
  } catch (const Json::exception& e) {
    throw Error(ErrorKind::Usage, std::string("bad model JSON: ") + e.what());
  }
}

Json to_json(const PathConfig& cfg) {
  return {{"n", cfg.n}, {"h", cfg.h}, {"x0", cfg.x0}, {"seed", cfg.seed}, {"refine", cfg.refine}};
}

PathConfig path_config_from_json(const Json& j, PathConfig base) {
  try {
    base.n = j.value("n", base.n);
    base.h = j.value("h", base.h);
    base.x0 = j.value("x0", base.x0);
    base.seed = j.value("seed", base.seed);
    base.refine = j.value("refine", base.refine);
    return base;
  } catch (const Json::exception& e) {
    throw Error(ErrorKind::Usage, std::string("bad path config JSON: ") + e.what());
  }
}

Json to_json(const EstimateResult& est) {
  return {{"gamma_hat", est.gamma_hat},
          {"alpha_hat", est.alpha_hat},
          {"g1_value", est.scale.objective},
          {"g2_value", est.drift.objective},
          {"g1_gradient", est.scale.gradient},
          {"g2_gradient", est.drift.gradient},
          {"scale_method", to_string(est.scale.method)},
          {"drift_method", to_string(est.drift.method)},
          {"scale_iterations", est.scale.iterations},
          {"drift_iterations", est.drift.iterations},
          {"scale_converged", est.scale.converged},
          {"drift_converged", est.drift.converged},
          {"scale_on_boundary", est.scale.on_boundary},
          {"drift_on_boundary", est.drift.on_boundary},
          {"scale_degenerate", est.scale.degenerate},
          {"drift_degenerate", est.drift.degenerate}};
}

Json to_json(const ExperimentDesign& design) {
  Json designs = Json::array();
  for (const auto& d : design.designs) designs.push_back({{"n", d.n}, {"h", d.h}});
  Json out{{"case", to_string(design.noise_case)},
           {"designs", designs},
           {"replications", design.replications},
           {"seed", design.seed},
           {"max_sim_step", design.max_sim_step},
           {"x0", design.x0},
           {"model", to_json(design.model)}};
  if (design.theta_star) {
    out["theta_star"] = {{"gamma", design.theta_star->gamma}, {"alpha", design.theta_star->alpha}};
  }
  return out;
}

ExperimentDesign experiment_design_from_json(const Json& j, ExperimentDesign base) {
  try {
    if (j.contains("case")) base.noise_case = noise_case_from_string(j.at("case").get<std::string>());
    if (j.contains("designs")) {
      base.designs.clear();
      for (const auto& d : j.at("designs")) {
        base.designs.push_back({d.at("n").get<long>(), d.at("h").get<double>()});
      }
    }
    base.replications = j.value("replications", base.replications);
    base.seed = j.value("seed", base.seed);
    base.max_sim_step = j.value("max_sim_step", base.max_sim_step);
    base.x0 = j.value("x0", base.x0);
    if (j.contains("model")) base.model = model_spec_from_json(j.at("model"));
    if (j.contains("theta_star")) {
      const Json& t = j.at("theta_star");
      base.theta_star = ThetaStar{t.at("gamma").get<double>(), t.at("alpha").get<double>()};
    }
    return base;
  } catch (const Json::exception& e) {
    throw Error(ErrorKind::Usage, std::string("bad experiment design JSON: ") + e.what());
  }
}

Json to_json(const Eigen::Matrix2d& m) {
  return Json::array({Json::array({m(0, 0), m(0, 1)}), Json::array({m(1, 0), m(1, 1)})});
}

Json to_json(const McSummary& summary, bool with_replications) {
  Json designs = Json::array();
  for (const auto& d : summary.designs) {
    Json item{{"Tn", d.design.horizon()},
              {"n", d.design.n},
              {"h", d.design.h},
              {"refine", d.refine},
              {"completed", d.completed},
              {"failed", d.failed},
              {"mean_alpha", d.mean_alpha},
              {"sd_alpha", d.sd_alpha},
              {"mean_gamma", d.mean_gamma},
              {"sd_gamma", d.sd_gamma},
              {"tail_radii", kTailRadii},
              {"tail_fraction", d.tail_fraction},
              {"covariance", to_json(d.covariance)}};
    if (with_replications) {
      item["alpha_hat"] = d.alpha_hat;
      item["gamma_hat"] = d.gamma_hat;
    }
    designs.push_back(std::move(item));
  }
  return {{"case", to_string(summary.noise_case)},
          {"alpha_star", summary.theta_star.alpha},
          {"gamma_star", summary.theta_star.gamma},
          {"replications", summary.replications},
          {"seed", summary.seed},
          {"designs", designs}};
}

Json to_json(const AsymptoticsResult& r) {
  return {{"order", {"gamma", "alpha"}},
          {"alpha_star", r.theta.alpha},
          {"gamma_star", r.theta.gamma},
          {"Gamma", to_json(r.Gamma)},
          {"Sigma", to_json(r.Sigma)},
          {"Jacobian", to_json(r.Jacobian)},
          {"V", to_json(r.V)},
          {"diagnostics",
           {{"Gamma_se", to_json(r.Gamma_se)},
            {"Sigma_se", to_json(r.Sigma_se)},
            {"V_se", to_json(r.V_se)},
            {"invariant_size", r.invariant_size},
            {"sigma_states", r.sigma_states},
            {"f1", epe_json(r.f1)},
            {"f2", epe_json(r.f2)}}}};
}

Json to_json(const NormalityReport& r) {
  return {{"order", {"gamma", "alpha"}},
          {"empirical", to_json(r.empirical)},
          {"V", to_json(r.V)},
          {"relative_difference", to_json(r.relative_difference)},
          {"coverage95", r.coverage95},
          {"probabilities", r.probabilities},
          {"normal_quantiles", r.normal_quantiles},
          {"gamma_quantiles", r.gamma_quantiles},
          {"alpha_quantiles", r.alpha_quantiles}};
}

}  // namespace levy_gqmle
