#pragma once

#include "hecke/freeness.hpp"
#include "hecke/graded.hpp"
#include "hecke/induction.hpp"
#include "hecke/weights.hpp"

#include <json.hpp>

#include <memory>
#include <string>

namespace hecke {

using Json = nlohmann::json;

inline constexpr const char* kInducedFnSchema = "hecke-sl2/induced-fn/1";
inline constexpr const char* kCertificateSchema = "hecke-sl2/freeness-certificate/1";
inline constexpr const char* kGradedInstanceSchema = "hecke-sl2/graded-instance/1";
inline constexpr const char* kHypothesisReportSchema = "hecke-sl2/hypothesis-report/1";
inline constexpr const char* kBuildReportSchema = "hecke-sl2/build-report/1";
inline constexpr const char* kTauTableSchema = "hecke-sl2/tau-table/1";

/// Canonical text: sorted keys, two-space indent, trailing newline.
std::string canonical_dump(const Json& j);

Json to_json(const Field& F);
Json to_json(const CosetPoint& P);
CosetPoint point_from_json(const Json& j);
Json to_json(const SparseVec& v);
/// Nonzero entries as [tuple, value] pairs in basis order.
Json weight_to_json(const WeightShape& S, const WeightVec& v);
WeightVec weight_from_json(const WeightShape& S, const Json& j);
Json shape_to_json(const WeightShape& S);

Json to_json(const InducedSpace& V, const InducedFn& f);
/// Throws InvalidParameter when the document does not match V's shape.
InducedFn induced_from_json(const InducedSpace& V, const Json& j);

Json to_json(const ConditionReport& r);
Json to_json(const TauFnEntry& e);
Json to_json(const FreenessCertificate& c);

Json to_json(const GradedInstance& inst);
GradedInstance graded_from_json(const Json& j);
Json to_json(const HypothesisReport& r);
Json to_json(const BuildResult& r);

} // namespace hecke
