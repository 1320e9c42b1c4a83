#include "accinfo/io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <stdexcept>

namespace accinfo {

Json real_to_json(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return x;
}

double real_from_json(const Json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  }
  throw std::invalid_argument("expected a real number, got " + j.dump());
}

namespace {

Json complex_to_json(Complex z) { return Json::array({real_to_json(z.real()), real_to_json(z.imag())}); }

Complex complex_from_json(const Json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2) throw std::invalid_argument("expected [re, im], got " + j.dump());
  return {real_from_json(j[0]), real_from_json(j[1])};
}

Json reals_to_json(const std::vector<double>& v) {
  Json out = Json::array();
  for (double x : v) out.push_back(real_to_json(x));
  return out;
}

std::vector<double> reals_from_json(const Json& j) {
  std::vector<double> out;
  for (const auto& x : j) out.push_back(real_from_json(x));
  return out;
}

}  // namespace

Json vector_to_json(const CVector& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(complex_to_json(v(i)));
  return out;
}

CVector vector_from_json(const Json& j) {
  if (!j.is_array()) throw std::invalid_argument("expected an array of [re, im] pairs");
  CVector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Eigen::Index>(i)) = complex_from_json(j[i]);
  return v;
}

Json matrix_to_json(const CMatrix& m) {
  Json data = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) data.push_back(complex_to_json(m(r, c)));
  return {{"dim", m.rows()}, {"data", data}};
}

CMatrix matrix_from_json(const Json& j) {
  const auto d = j.at("dim").get<Eigen::Index>();
  const auto& data = j.at("data");
  if (d <= 0 || data.size() != static_cast<std::size_t>(d * d))
    throw std::invalid_argument("operator data must hold dim^2 entries");
  CMatrix m(d, d);
  for (Eigen::Index r = 0; r < d; ++r)
    for (Eigen::Index c = 0; c < d; ++c) m(r, c) = complex_from_json(data[static_cast<std::size_t>(r * d + c)]);
  return m;
}

std::vector<CVector> povm_vectors(const Povm& povm) {
  std::vector<CVector> out;
  for (const auto& e : povm.elements()) {
    const auto eig = eigh(e.matrix());
    const double top = eig.values.maxCoeff();
    for (Eigen::Index i = eig.values.size() - 1; i >= 0; --i) {
      if (eig.values(i) <= 1e-12 * std::max(top, 1.0)) break;
      CVector v = eig.vectors.col(i) * std::sqrt(eig.values(i));
      // fix the global phase: largest entry real positive
      Eigen::Index k = 0;
      v.cwiseAbs().maxCoeff(&k);
      v *= std::abs(v(k)) / v(k);
      out.push_back(v);
    }
  }
  return out;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw std::invalid_argument("'" + path + "': " + e.what());
  }
}

}  // namespace accinfo

using namespace accinfo;
using nlohmann::adl_serializer;

void adl_serializer<ProbDist>::to_json(Json& j, const ProbDist& x) {
  j = reals_to_json(std::vector<double>(x.weights().begin(), x.weights().end()));
}
ProbDist adl_serializer<ProbDist>::from_json(const Json& j) { return ProbDist(reals_from_json(j)); }

void adl_serializer<HermitianOperator>::to_json(Json& j, const HermitianOperator& x) { j = matrix_to_json(x.matrix()); }
HermitianOperator adl_serializer<HermitianOperator>::from_json(const Json& j) {
  return HermitianOperator(matrix_from_json(j));
}

void adl_serializer<PureState>::to_json(Json& j, const PureState& x) { j = vector_to_json(x.amplitudes()); }
PureState adl_serializer<PureState>::from_json(const Json& j) { return PureState(vector_from_json(j)); }

void adl_serializer<PureStateEnsemble>::to_json(Json& j, const PureStateEnsemble& x) {
  j = {{"dim", x.dim()}, {"probs", x.probs()}, {"states", x.states()}};
}
PureStateEnsemble adl_serializer<PureStateEnsemble>::from_json(const Json& j) {
  std::vector<PureState> states;
  for (const auto& s : j.at("states")) states.push_back(s.get<PureState>());
  if (states.empty()) throw std::invalid_argument("ensemble has no states");
  // probabilities default to uniform
  ProbDist probs = j.contains("probs") ? j.at("probs").get<ProbDist>() : ProbDist::uniform(states.size());
  if (j.contains("dim") && j.at("dim").get<Eigen::Index>() != states.front().dim())
    throw std::invalid_argument("ensemble dim does not match its states");
  return PureStateEnsemble(std::move(probs), std::move(states));
}

void adl_serializer<Povm>::to_json(Json& j, const Povm& x) {
  j = {{"dim", x.dim()}, {"elements", x.elements()}};
  if (!x.full_support()) j["support"] = x.support();
}
Povm adl_serializer<Povm>::from_json(const Json& j) {
  std::optional<HermitianOperator> support;
  if (j.contains("support")) support = j.at("support").get<HermitianOperator>();
  if (j.contains("vectors")) {
    std::vector<CVector> vs;
    for (const auto& v : j.at("vectors")) vs.push_back(vector_from_json(v));
    return Povm::from_vectors(vs, support);
  }
  std::vector<HermitianOperator> elements;
  for (const auto& e : j.at("elements")) elements.push_back(e.get<HermitianOperator>());
  if (elements.empty()) throw std::invalid_argument("observable has no elements");
  return Povm(std::move(elements), support);
}

void adl_serializer<Verdict>::to_json(Json& j, const Verdict& x) { j = to_string(x); }
Verdict adl_serializer<Verdict>::from_json(const Json& j) { return verdict_from_string(j.get<std::string>()); }

void adl_serializer<OptimalityReport>::to_json(Json& j, const OptimalityReport& x) {
  j = {{"lambda0", x.lambda0},
       {"iib_residuals", reals_to_json(x.iib_residuals)},
       {"iia_worst_gap", real_to_json(x.iia_worst_gap)},
       {"iia_worst_state", x.iia_worst_state},
       {"accessible_info", real_to_json(x.accessible_info)},
       {"candidate_info", real_to_json(x.candidate_info)},
       {"verdict", x.verdict}};
}
OptimalityReport adl_serializer<OptimalityReport>::from_json(const Json& j) {
  return OptimalityReport{j.at("lambda0").get<HermitianOperator>(),
                          reals_from_json(j.at("iib_residuals")),
                          real_from_json(j.at("iia_worst_gap")),
                          j.at("iia_worst_state").get<PureState>(),
                          real_from_json(j.at("accessible_info")),
                          real_from_json(j.at("candidate_info")),
                          j.at("verdict").get<Verdict>()};
}

void adl_serializer<PyramidSpec>::to_json(Json& j, const PyramidSpec& x) {
  j = {{"m", x.m()}, {"r0", x.r0()}, {"r1", x.r1()}, {"p", x.p()}};
}
PyramidSpec adl_serializer<PyramidSpec>::from_json(const Json& j) {
  const int m = j.at("m").get<int>();
  if (j.contains("r0")) return PyramidSpec(m, real_from_json(j.at("r0")));
  const auto orientation = j.value("orientation", std::string("acute"));
  if (orientation != "acute" && orientation != "obtuse")
    throw std::invalid_argument("orientation must be 'acute' or 'obtuse'");
  return spec_from_p(m, real_from_json(j.at("p")), orientation == "acute" ? Orientation::acute : Orientation::obtuse);
}

void adl_serializer<Regime>::to_json(Json& j, const Regime& x) { j = to_string(x); }
Regime adl_serializer<Regime>::from_json(const Json& j) { return regime_from_string(j.get<std::string>()); }

void adl_serializer<PyramidSolution>::to_json(Json& j, const PyramidSolution& x) {
  Json vectors = Json::array();
  for (const auto& v : povm_vectors(x.observable)) vectors.push_back(vector_to_json(v));
  j = {{"observable_vectors", vectors}, {"spec", x.spec},          {"regime", x.regime}, {"t", real_to_json(x.t)},
       {"observable", x.observable}, {"c0", real_to_json(x.c0)}, {"c1", real_to_json(x.c1)},
       {"accessible_info", real_to_json(x.accessible_info)}};
}
PyramidSolution adl_serializer<PyramidSolution>::from_json(const Json& j) {
  return PyramidSolution{j.at("spec").get<PyramidSpec>(),   j.at("regime").get<Regime>(),
                         real_from_json(j.at("t")),         j.at("observable").get<Povm>(),
                         real_from_json(j.at("c0")),        real_from_json(j.at("c1")),
                         real_from_json(j.at("accessible_info"))};
}

void adl_serializer<InequalityId>::to_json(Json& j, const InequalityId& x) { j = to_string(x); }
InequalityId adl_serializer<InequalityId>::from_json(const Json& j) {
  return inequality_from_string(j.get<std::string>());
}

void adl_serializer<MinimizerPattern>::to_json(Json& j, const MinimizerPattern& x) { j = to_string(x); }
MinimizerPattern adl_serializer<MinimizerPattern>::from_json(const Json& j) {
  return pattern_from_string(j.get<std::string>());
}

namespace {

Json params_to_json(const Params& p) {
  Json out = Json::object();
  for (const auto& [k, v] : p) out[k] = real_to_json(v);
  return out;
}

Params params_from_json(const Json& j) {
  Params p;
  for (const auto& [k, v] : j.items()) p[k] = real_from_json(v);
  return p;
}

}  // namespace

void adl_serializer<GapReport>::to_json(Json& j, const GapReport& x) {
  j = {{"id", x.id},
       {"params", params_to_json(x.params)},
       {"worst_gap", real_to_json(x.worst_gap)},
       {"worst_point", vector_to_json(x.worst_point)},
       {"equality_residuals", reals_to_json(x.equality_residuals)},
       {"samples_used", x.samples_used},
       {"pattern", x.pattern}};
}
GapReport adl_serializer<GapReport>::from_json(const Json& j) {
  return GapReport{j.at("id").get<InequalityId>(),
                   params_from_json(j.at("params")),
                   real_from_json(j.at("worst_gap")),
                   vector_from_json(j.at("worst_point")),
                   reals_from_json(j.at("equality_residuals")),
                   j.at("samples_used").get<std::size_t>(),
                   j.at("pattern").get<MinimizerPattern>()};
}

void adl_serializer<MaximizeResult>::to_json(Json& j, const MaximizeResult& x) {
  j = {{"best_info", real_to_json(x.best_info)},
       {"best_povm", x.best_povm},
       {"converged", x.converged},
       {"iterations", x.iterations},
       {"trace", reals_to_json(x.trace)}};
}
MaximizeResult adl_serializer<MaximizeResult>::from_json(const Json& j) {
  return MaximizeResult{real_from_json(j.at("best_info")), j.at("best_povm").get<Povm>(),
                        j.at("converged").get<bool>(), j.at("iterations").get<std::size_t>(),
                        reals_from_json(j.value("trace", Json::array()))};
}

void adl_serializer<MinimizeGapResult>::to_json(Json& j, const MinimizeGapResult& x) {
  j = {{"min_gap", real_to_json(x.min_gap)}, {"argmin", vector_to_json(x.argmin)}, {"evaluations", x.evaluations}};
}
MinimizeGapResult adl_serializer<MinimizeGapResult>::from_json(const Json& j) {
  return MinimizeGapResult{real_from_json(j.at("min_gap")), vector_from_json(j.at("argmin")),
                           j.at("evaluations").get<std::size_t>()};
}

void adl_serializer<LemmaCheck>::to_json(Json& j, const LemmaCheck& x) {
  j = {{"name", x.name},
       {"passed", x.passed},
       {"points", x.points},
       {"worst_slack", real_to_json(x.worst_slack)},
       {"witness", reals_to_json(x.witness)}};
}
LemmaCheck adl_serializer<LemmaCheck>::from_json(const Json& j) {
  return LemmaCheck{j.at("name").get<std::string>(), j.at("passed").get<bool>(), j.at("points").get<std::size_t>(),
                    real_from_json(j.at("worst_slack")), reals_from_json(j.at("witness"))};
}

void adl_serializer<LemmaReport>::to_json(Json& j, const LemmaReport& x) {
  j = {{"passed", x.passed()}, {"checks", x.checks}};
}
LemmaReport adl_serializer<LemmaReport>::from_json(const Json& j) {
  return LemmaReport{j.at("checks").get<std::vector<LemmaCheck>>()};
}
