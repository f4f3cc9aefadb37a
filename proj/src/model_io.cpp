#include "curv/model_io.hpp"

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace curv {

using nlohmann::json;

namespace {

Eigen::MatrixXd parse_matrix(const json& rows, int m, const std::string& name) {
  if (!rows.is_array() || static_cast<int>(rows.size()) != m)
    throw validation_error("structure '" + name + "': matrix must be " + std::to_string(m) +
                           " rows");
  Eigen::MatrixXd M(m, m);
  for (int i = 0; i < m; ++i) {
    const auto& row = rows.at(i);
    if (!row.is_array() || static_cast<int>(row.size()) != m)
      throw validation_error("structure '" + name + "': row " + std::to_string(i) +
                             " has wrong length");
    for (int j = 0; j < m; ++j) M(i, j) = row.at(j).get<double>();
  }
  return M;
}

StructureFlavor parse_flavor(const std::string& s) {
  if (s == "hermitian") return StructureFlavor::hermitian;
  if (s == "para_hermitian" || s == "para-hermitian") return StructureFlavor::para_hermitian;
  throw validation_error("unknown structure flavor '" + s + "'");
}

}  // namespace

LoadedModel parse_model_text(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw validation_error(std::string("malformed model file: ") + e.what());
  }

  if (!doc.contains("dimension") || !doc.contains("signature") || !doc.contains("kind"))
    throw validation_error("model file needs 'dimension', 'signature' and 'kind'");
  const int m = doc.at("dimension").get<int>();
  const auto sig = doc.at("signature");
  if (!sig.is_array() || sig.size() != 2)
    throw validation_error("'signature' must be [p, q]");
  const int p = sig.at(0).get<int>(), q = sig.at(1).get<int>();
  if (p + q != m) throw validation_error("signature does not sum to the dimension");

  const std::string kind_s = doc.at("kind").get<std::string>();
  TensorKind kind;
  if (kind_s == "riemann") kind = TensorKind::riemann;
  else if (kind_s == "affine") kind = TensorKind::affine;
  else throw validation_error("'kind' must be \"riemann\" or \"affine\"");

  std::vector<GeneratorEntry> gens;
  if (doc.contains("entries")) {
    for (const auto& e : doc.at("entries")) {
      if (!e.is_array() || e.size() != 5)
        throw validation_error("each entry must be [i, j, k, l, value]");
      GeneratorEntry gen{e.at(0).get<int>(), e.at(1).get<int>(), e.at(2).get<int>(),
                         e.at(3).get<int>(), e.at(4).get<double>()};
      if (gen.i < 0 || gen.i >= m || gen.j < 0 || gen.j >= m || gen.k < 0 || gen.k >= m ||
          gen.l < 0 || gen.l >= m) {
        std::ostringstream os;
        os << "entry index out of range: [" << gen.i << "," << gen.j << "," << gen.k << ","
           << gen.l << "]";
        throw validation_error(os.str());
      }
      gens.push_back(gen);
    }
  }

  Metric metric = make_metric(p, q);
  Rank4Tensor T = complete_by_symmetry(gens, kind, m);
  SymmetryReport rep = validate_symmetries(T, metric);
  if (!rep.all_ok()) {
    std::ostringstream os;
    os << "loaded tensor fails validation (max violation " << rep.max_violation
       << "; antisymmetry " << rep.antisymmetry_violation << ", pair "
       << rep.pair_symmetry_violation << ", bianchi " << rep.first_bianchi_violation << ")";
    throw validation_error(os.str());
  }

  LoadedModel out{std::move(metric), std::move(T), {}, std::nullopt, {}};

  if (doc.contains("structures")) {
    for (const auto& [name, body] : doc.at("structures").items()) {
      if (!body.contains("matrix") || !body.contains("flavor"))
        throw validation_error("structure '" + name + "' needs 'matrix' and 'flavor'");
      Eigen::MatrixXd J = parse_matrix(body.at("matrix"), m, name);
      out.structures.emplace(name, make_complex_structure(out.metric, J,
                                                          parse_flavor(body.at("flavor"))));
    }
  }

  if (doc.contains("provenance")) {
    const auto& prov = doc.at("provenance");
    if (prov.contains("type")) out.provenance_type = prov.at("type").get<std::string>();
    if (out.provenance_type == "clifford") {
      CliffordTag tag;
      tag.lambda0 = prov.at("lambda0").get<double>();
      for (const auto& l : prov.at("lambda")) tag.lambda.push_back(l.get<double>());
      tag.ell = static_cast<int>(tag.lambda.size());
      out.clifford_tag = tag;
    }
  }
  return out;
}

LoadedModel parse_model_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw validation_error("cannot open model file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_model_text(buf.str());
}

json serialize_model(const LoadedModel& model) {
  const int m = model.metric.dimension();
  json doc;
  doc["dimension"] = m;
  doc["signature"] = {model.metric.p(), model.metric.q()};
  doc["kind"] = to_string(model.tensor.kind());

  json entries = json::array();
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      for (int k = 0; k < m; ++k)
        for (int l = 0; l < m; ++l) {
          const double v = model.tensor(i, j, k, l);
          if (v != 0.0) entries.push_back({i, j, k, l, v});
        }
  doc["entries"] = std::move(entries);

  if (!model.structures.empty()) {
    json st;
    for (const auto& [name, S] : model.structures) {
      json rows = json::array();
      const auto& J = S.J().matrix();
      for (int i = 0; i < m; ++i) {
        json row = json::array();
        for (int j = 0; j < m; ++j) row.push_back(J(i, j));
        rows.push_back(std::move(row));
      }
      st[name] = {{"matrix", std::move(rows)},
                  {"flavor", to_string(S.flavor()) == "hermitian" ? "hermitian"
                                                                  : "para_hermitian"}};
    }
    doc["structures"] = std::move(st);
  }

  if (!model.provenance_type.empty()) {
    json prov;
    prov["type"] = model.provenance_type;
    if (model.clifford_tag) {
      prov["lambda0"] = model.clifford_tag->lambda0;
      prov["lambda"] = model.clifford_tag->lambda;
    }
    doc["provenance"] = std::move(prov);
  }
  return doc;
}

std::string serialize_model_text(const LoadedModel& model) {
  return serialize_model(model).dump(2) + "\n";
}

void write_model_file(const LoadedModel& model, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw validation_error("cannot write model file '" + path + "'");
  out << serialize_model_text(model);
}

LoadedModel loaded_from(const CurvatureModel& model) {
  return LoadedModel{model.metric, model.tensor, {}, std::nullopt, {}};
}

LoadedModel loaded_from(const CliffordModel& model) {
  LoadedModel out{model.model.metric, model.model.tensor, {}, model.tag, "clifford"};
  return out;
}

}  // namespace curv
