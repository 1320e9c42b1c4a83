#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "accinfo/inequalities.hpp"
#include "accinfo/optimality.hpp"
#include "accinfo/oracle.hpp"
#include "accinfo/pyramids.hpp"
#include "accinfo/quantum.hpp"

// JSON schema: operators are {"dim": d, "data": [[re, im], ...]} in row-major
// order, vectors are [[re, im], ...]. Non-finite reals are written as the
// strings "inf", "-inf" and "nan" so that every report survives a round trip.

namespace accinfo {

using Json = nlohmann::json;

Json real_to_json(double x);
double real_from_json(const Json& j);

Json vector_to_json(const CVector& v);
CVector vector_from_json(const Json& j);

Json matrix_to_json(const CMatrix& m);
CMatrix matrix_from_json(const Json& j);

/// Rank-one components sqrt(lambda) v of every element, in element order.
std::vector<CVector> povm_vectors(const Povm& povm);

/// Reads a file holding any of the serialized types.
Json read_json_file(const std::string& path);

}  // namespace accinfo

#define ACCINFO_JSON_SERIALIZER(T)                 \
  template <>                                      \
  struct nlohmann::adl_serializer<T> {             \
    static void to_json(nlohmann::json& j, const T& x); \
    static T from_json(const nlohmann::json& j);   \
  };

ACCINFO_JSON_SERIALIZER(accinfo::ProbDist)
ACCINFO_JSON_SERIALIZER(accinfo::HermitianOperator)
ACCINFO_JSON_SERIALIZER(accinfo::PureState)
ACCINFO_JSON_SERIALIZER(accinfo::PureStateEnsemble)
ACCINFO_JSON_SERIALIZER(accinfo::Povm)
ACCINFO_JSON_SERIALIZER(accinfo::Verdict)
ACCINFO_JSON_SERIALIZER(accinfo::OptimalityReport)
ACCINFO_JSON_SERIALIZER(accinfo::PyramidSpec)
ACCINFO_JSON_SERIALIZER(accinfo::Regime)
ACCINFO_JSON_SERIALIZER(accinfo::PyramidSolution)
ACCINFO_JSON_SERIALIZER(accinfo::InequalityId)
ACCINFO_JSON_SERIALIZER(accinfo::MinimizerPattern)
ACCINFO_JSON_SERIALIZER(accinfo::GapReport)
ACCINFO_JSON_SERIALIZER(accinfo::MaximizeResult)
ACCINFO_JSON_SERIALIZER(accinfo::MinimizeGapResult)
ACCINFO_JSON_SERIALIZER(accinfo::LemmaCheck)
ACCINFO_JSON_SERIALIZER(accinfo::LemmaReport)

#undef ACCINFO_JSON_SERIALIZER
