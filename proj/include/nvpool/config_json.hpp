#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "nvpool/copulas.hpp"
#include "nvpool/joint_demand.hpp"
#include "nvpool/marginals.hpp"
#include "nvpool/pooling.hpp"

namespace nvpool {

using json = nlohmann::json;

/// Copula described either by a direct parameter or by a target Kendall's
/// tau (resolved by calibration at load time).
struct CopulaSpec {
  CopulaFamily family = CopulaFamily::Independence;
  std::optional<double> tau;
  std::optional<double> theta;

  Copula resolve() const {
    if (tau) return calibrate_parameter(family, *tau);
    if (theta) {
      switch (family) {
        case CopulaFamily::Gumbel: return Copula::gumbel(*theta);
        case CopulaFamily::Clayton: return Copula::clayton(*theta);
        case CopulaFamily::Frank: return Copula::frank(*theta);
        case CopulaFamily::Gaussian: return Copula::gaussian(*theta);
        default:
          throw std::domain_error(std::string(family_name(family)) +
                                  " copula takes no parameter");
      }
    }
    switch (family) {
      case CopulaFamily::Independence: return Copula::independence();
      case CopulaFamily::Comonotone: return Copula::comonotone();
      case CopulaFamily::Countermonotone: return Copula::countermonotone();
      default:
        throw std::domain_error(std::string(family_name(family)) +
                                " copula needs either \"tau\" or \"theta\"");
    }
  }

  std::string describe() const {
    std::string s = family_name(family);
    if (tau) s += "|tau=" + format_scalar(*tau);
    if (theta) s += "|theta=" + format_scalar(*theta);
    return s;
  }
};

inline MarginalFamily marginal_family_from_name(const std::string& name) {
  if (name == "beta") return MarginalFamily::Beta;
  if (name == "normal") return MarginalFamily::Normal;
  if (name == "exponential") return MarginalFamily::Exponential;
  if (name == "pareto") return MarginalFamily::Pareto;
  if (name == "uniform") return MarginalFamily::Uniform;
  throw std::invalid_argument("unknown marginal family '" + name + "'");
}

inline CopulaFamily copula_family_from_name(const std::string& name) {
  if (name == "independence") return CopulaFamily::Independence;
  if (name == "gumbel") return CopulaFamily::Gumbel;
  if (name == "clayton") return CopulaFamily::Clayton;
  if (name == "frank") return CopulaFamily::Frank;
  if (name == "gaussian") return CopulaFamily::Gaussian;
  if (name == "comonotone") return CopulaFamily::Comonotone;
  if (name == "countermonotone") return CopulaFamily::Countermonotone;
  throw std::invalid_argument("unknown copula family '" + name + "'");
}

/// {"family": "beta", "params": [2, 8]}
inline MarginalDistribution marginal_from_json(const json& j) {
  if (!j.is_object() || !j.contains("family"))
    throw std::invalid_argument("marginal spec needs a \"family\" field");
  const auto fam = marginal_family_from_name(j.at("family").get<std::string>());
  std::vector<double> p = j.value("params", std::vector<double>{});
  auto arity = [&](std::size_t want) {
    if (p.size() != want)
      throw std::invalid_argument(std::string("marginal '") +
                                  family_name(fam) + "' expects " +
                                  std::to_string(want) + " params, got " +
                                  std::to_string(p.size()));
  };
  switch (fam) {
    case MarginalFamily::Beta:
      arity(2);
      return MarginalDistribution::beta(p[0], p[1]);
    case MarginalFamily::Normal:
      arity(2);
      return MarginalDistribution::normal(p[0], p[1]);
    case MarginalFamily::Exponential:
      arity(1);
      return MarginalDistribution::exponential(p[0]);
    case MarginalFamily::Pareto:
      arity(2);
      return MarginalDistribution::pareto(p[0], p[1]);
    case MarginalFamily::Uniform:
      arity(2);
      return MarginalDistribution::uniform(p[0], p[1]);
  }
  throw std::logic_error("unreachable");
}

inline json marginal_to_json(const MarginalDistribution& m) {
  json j;
  j["family"] = family_name(m.family());
  if (m.family() == MarginalFamily::Exponential)
    j["params"] = {m.param1()};
  else
    j["params"] = {m.param1(), m.param2()};
  return j;
}

/// {"family": "frank", "tau": 0.8} or {"family": "frank", "theta": -4.6}
inline CopulaSpec copula_spec_from_json(const json& j) {
  if (!j.is_object() || !j.contains("family"))
    throw std::invalid_argument("copula spec needs a \"family\" field");
  CopulaSpec spec;
  spec.family = copula_family_from_name(j.at("family").get<std::string>());
  if (j.contains("tau")) spec.tau = j.at("tau").get<double>();
  if (j.contains("theta")) spec.theta = j.at("theta").get<double>();
  if (spec.tau && spec.theta)
    throw std::invalid_argument(
        "copula spec takes \"tau\" or \"theta\", not both");
  return spec;
}

inline json copula_spec_to_json(const CopulaSpec& s) {
  json j;
  j["family"] = family_name(s.family);
  if (s.tau) j["tau"] = *s.tau;
  if (s.theta) j["theta"] = *s.theta;
  return j;
}

/// {"m1": <marginal>, "m2": <marginal>, "copula": <copula>}
inline JointDemandModel model_from_json(const json& j) {
  if (!j.is_object() || !j.contains("m1") || !j.contains("m2") ||
      !j.contains("copula"))
    throw std::invalid_argument(
        "model needs \"m1\", \"m2\" and \"copula\" fields");
  return JointDemandModel(marginal_from_json(j.at("m1")),
                          marginal_from_json(j.at("m2")),
                          copula_spec_from_json(j.at("copula")).resolve());
}

inline JointDemandModel model_from_json_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("model JSON parse error: ") +
                                e.what());
  }
  return model_from_json(j);
}

inline json threshold_report_to_json(const ThresholdReport& rep) {
  json j;
  j["roots"] = rep.roots;
  j["unique"] = rep.unique;
  j["sign_pattern"] = rep.sign_pattern;
  json brackets = json::array();
  for (const auto& [lo, hi] : rep.brackets) brackets.push_back({lo, hi});
  j["brackets"] = brackets;
  json plateaus = json::array();
  for (const auto& [lo, hi] : rep.zero_plateaus) plateaus.push_back({lo, hi});
  j["zero_plateaus"] = plateaus;
  return j;
}

}  // namespace nvpool
