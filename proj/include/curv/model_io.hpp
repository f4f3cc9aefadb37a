#ifndef CURV_MODEL_IO_HPP
#define CURV_MODEL_IO_HPP

#include <map>
#include <optional>
#include <string>

#include <nlohmann/json_fwd.hpp>

#include "curv/hermitian.hpp"
#include "curv/quaternionic.hpp"
#include "curv/riemann.hpp"

namespace curv {

/// In-memory image of a model file: metric, tensor (validated and symmetry
/// completed at load), optional named structures and constructor provenance.
struct LoadedModel {
  Metric metric;
  Rank4Tensor tensor;  // affine or riemann kind
  std::map<std::string, ComplexStructure> structures;
  std::optional<CliffordTag> clifford_tag;
  std::string provenance_type;  // empty when absent

  bool is_riemann() const { return tensor.kind() == TensorKind::riemann; }
  CurvatureModel as_model() const { return CurvatureModel(metric, tensor); }
};

LoadedModel parse_model_text(const std::string& text);
LoadedModel parse_model_file(const std::string& path);

nlohmann::json serialize_model(const LoadedModel& model);
std::string serialize_model_text(const LoadedModel& model);
void write_model_file(const LoadedModel& model, const std::string& path);

LoadedModel loaded_from(const CurvatureModel& model);
LoadedModel loaded_from(const CliffordModel& model);

}  // namespace curv

#endif
