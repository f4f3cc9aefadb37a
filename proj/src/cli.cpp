#include "curv/cli.hpp"

#include <CLI11.hpp>
#include <cstdlib>
#include <iomanip>
#include <sstream>

#include "curv/affine.hpp"
#include "curv/model_io.hpp"
#include "curv/special.hpp"
#include "curv/subspace.hpp"

namespace curv {

using nlohmann::json;

namespace {

std::uint64_t env_seed() {
  if (const char* s = std::getenv("CURV_SEED")) {
    try {
      return std::stoull(s, nullptr, 0);
    } catch (...) {
    }
  }
  return kDefaultSeed;
}

json vec_json(const std::vector<double>& v) { return json(v); }

json matrix_json(const Eigen::MatrixXd& M) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < M.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < M.cols(); ++j) row.push_back(M(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string fmt(double v) {
  std::ostringstream os;
  os << std::setprecision(12) << v;
  return os.str();
}

const ComplexStructure& require_structure(const LoadedModel& model, StructureFlavor flavor,
                                          const char* why) {
  auto it = model.structures.find("J");
  if (it == model.structures.end())
    throw validation_error(std::string(why) + ": model file carries no structure named \"J\"");
  if (it->second.flavor() != flavor)
    throw validation_error(std::string(why) + ": structure \"J\" has flavor " +
                           to_string(it->second.flavor()) + ", need " + to_string(flavor));
  return it->second;
}

// ---- dims ----

json dims_affine_gl(int m) {
  Subspace space = affine_space(m);
  Metric g = make_metric(0, m);
  Subspace ker = null_space_within(
      space,
      [&](const Rank4Tensor& T) {
        Eigen::MatrixXd r = Eigen::MatrixXd::Zero(m, m);
        for (int i = 0; i < m; ++i)
          for (int j = 0; j < m; ++j)
            for (int a = 0; a < m; ++a)
              for (int b = 0; b < m; ++b) r(i, j) += g.inv(a, b) * T(a, i, j, b);
        return Eigen::VectorXd(Eigen::Map<Eigen::VectorXd>(r.data(), m * m));
      },
      m, TensorKind::riemann);
  json out;
  out["space"] = "affine-gl";
  out["modules"] = {{"ker_rho", ker.dim()},
                    {"S2", m * (m + 1) / 2},
                    {"Lambda2", m * (m - 1) / 2}};
  out["total_rank"] = space.dim();
  out["total_formula"] = m * m * (m * m - 1) / 3;
  return out;
}

json dims_affine_bokan(int m) {
  auto spaces = bokan_spaces(make_metric(0, m));
  json dims = json::array();
  int sum = 0;
  for (int d : spaces->dims) {
    dims.push_back(d);
    sum += d;
  }
  json out;
  out["space"] = "affine-bokan";
  out["modules"] = dims;
  out["sum"] = sum;
  out["total_rank"] = spaces->space.dim();
  out["total_formula"] = m * m * (m * m - 1) / 3;
  return out;
}

json dims_riemann(int m) {
  Subspace space = riemann_space(m);
  Metric g = make_metric(0, m);
  Subspace ker = null_space_within(
      space,
      [&](const Rank4Tensor& T) {
        Eigen::MatrixXd r = Eigen::MatrixXd::Zero(m, m);
        for (int i = 0; i < m; ++i)
          for (int l = 0; l < m; ++l)
            for (int j = 0; j < m; ++j)
              for (int k = 0; k < m; ++k) r(i, l) += g.inv(j, k) * T(i, j, k, l);
        return Eigen::VectorXd(Eigen::Map<Eigen::VectorXd>(r.data(), m * m));
      },
      m, TensorKind::riemann);
  json out;
  out["space"] = "riemann-o";
  out["modules"] = {{"scalar", 1},
                    {"S2_tracefree", (m - 1) * (m + 2) / 2},
                    {"ker_rho", ker.dim()}};
  out["total_rank"] = space.dim();
  out["total_formula"] = m * m * (m * m - 1) / 12;
  return out;
}

json dims_tv(int m, StructureFlavor flavor) {
  Metric g = flavor == StructureFlavor::hermitian ? make_metric(0, m)
                                                  : make_metric(m / 2, m / 2);
  ComplexStructure S = flavor == StructureFlavor::hermitian ? standard_complex_structure(g)
                                                            : standard_para_structure(g);
  auto spaces = tv_spaces(g, S);
  json dims = json::array();
  int sum = 0;
  for (int d : spaces->dims) {
    dims.push_back(d);
    sum += d;
  }
  json out;
  out["space"] = flavor == StructureFlavor::hermitian ? "unitary" : "para-unitary";
  out["modules"] = dims;
  out["sum"] = sum;
  out["total_rank"] = spaces->space.dim();
  out["total_formula"] = m * m * (m * m - 1) / 12;
  return out;
}

std::string dims_human(const json& r) {
  std::ostringstream os;
  os << "module dimensions (" << r.at("space").get<std::string>() << "):\n";
  if (r.at("modules").is_array()) {
    os << "  ";
    bool first = true;
    for (const auto& d : r.at("modules")) {
      if (!first) os << ", ";
      os << d.get<int>();
      first = false;
    }
    os << "  (sum " << r.at("sum").get<int>() << ")\n";
  } else {
    for (const auto& [k, v] : r.at("modules").items())
      os << "  " << k << ": " << v.get<int>() << "\n";
  }
  os << "  space rank " << r.at("total_rank").get<int>() << ", closed form "
     << r.at("total_formula").get<int>() << "\n";
  return os.str();
}

// ---- per-command handlers; each returns (results json, human text, exit code) ----

struct Handled {
  json results;
  std::string human;
  int exit_code = 0;
};

Handled handle_dims(int m, const std::string& space) {
  json r;
  if (space == "affine-gl") r = dims_affine_gl(m);
  else if (space == "affine-bokan") r = dims_affine_bokan(m);
  else if (space == "riemann-o") r = dims_riemann(m);
  else if (space == "unitary") r = dims_tv(m, StructureFlavor::hermitian);
  else if (space == "para-unitary") r = dims_tv(m, StructureFlavor::para_hermitian);
  else throw validation_error("unknown space '" + space + "'");
  return {r, dims_human(r), 0};
}

json st_json(const SingerThorpeDecomposition& st) {
  json r;
  r["weyl_norm"] = st.weyl_norm;
  r["ricci_traceless_part_norm"] = st.ricci_traceless_part.frobenius_norm();
  r["scalar_part_norm"] = st.scalar_part.frobenius_norm();
  r["tau"] = st.scalar;
  r["reconstruction_residual"] = st.reconstruction_residual;
  r["conformally_flat"] = st.conformally_flat;
  return r;
}

Handled handle_decompose(const LoadedModel& model, const std::string& group) {
  json r;
  std::ostringstream os;
  if (group == "gl" || group == "bokan") {
    if (model.is_riemann())
      throw validation_error("decompose --group " + group + " needs an affine model");
    if (group == "gl") {
      AffineDecompositionGL d = decompose_gl(model.tensor);
      r["weyl_norm"] = d.weyl_norm;
      r["sym_part_norm"] = d.sym_norm;
      r["antisym_part_norm"] = d.antisym_norm;
      r["reconstruction_residual"] = d.reconstruction_residual;
      os << "general-linear decomposition:\n"
         << "  projective Weyl |P| = " << fmt(d.weyl_norm) << "\n"
         << "  sigma(rho_s)    |.| = " << fmt(d.sym_norm) << "\n"
         << "  sigma(rho_a)    |.| = " << fmt(d.antisym_norm) << "\n"
         << "  reconstruction residual " << fmt(d.reconstruction_residual) << "\n";
    } else {
      BokanDecomposition d = decompose_bokan(model.tensor, model.metric);
      r["dims"] = d.dims;
      r["part_norms"] = d.part_norms;
      r["direct_sum_mode"] = d.direct_sum_mode;
      r["reconstruction_residual"] = d.reconstruction_residual;
      os << "eight-module decomposition" << (d.direct_sum_mode ? " (direct-sum mode)" : "")
         << ":\n";
      for (int i = 0; i < 8; ++i)
        os << "  A" << i + 1 << ": dim " << d.dims[i] << ", |part| = " << fmt(d.part_norms[i])
           << "\n";
      os << "  reconstruction residual " << fmt(d.reconstruction_residual) << "\n";
    }
  } else if (group == "singer-thorpe") {
    CurvatureModel cm = model.as_model();
    SingerThorpeDecomposition st = singer_thorpe(cm);
    r = st_json(st);
    os << "Singer-Thorpe decomposition:\n"
       << "  |W| = " << fmt(st.weyl_norm) << (st.conformally_flat ? "  (conformally flat)" : "")
       << "\n  |sigma(rho_0)| = " << fmt(st.ricci_traceless_part.frobenius_norm())
       << "\n  |scalar part| = " << fmt(st.scalar_part.frobenius_norm()) << "\n  tau = "
       << fmt(st.scalar) << "\n  reconstruction residual "
       << fmt(st.reconstruction_residual) << "\n";
  } else if (group == "tv" || group == "para-tv") {
    CurvatureModel cm = model.as_model();
    const auto flavor = group == "tv" ? StructureFlavor::hermitian
                                      : StructureFlavor::para_hermitian;
    const ComplexStructure& S = require_structure(model, flavor, "decompose");
    TVDecomposition d = decompose_tv(cm, S);
    r["dims"] = d.dims;
    r["part_norms"] = d.part_norms;
    r["absent"] = d.absent;
    r["direct_sum_mode"] = d.direct_sum_mode;
    r["reconstruction_residual"] = d.reconstruction_residual;
    r["tau"] = d.tau;
    r["tau_star"] = d.tau_star;
    os << "ten-module decomposition" << (d.direct_sum_mode ? " (direct-sum mode)" : "")
       << ":\n";
    for (int i = 0; i < 10; ++i) {
      os << "  W" << i + 1 << ": dim " << d.dims[i] << ", |part| = " << fmt(d.part_norms[i]);
      if (d.absent[i]) os << "  [absent at this dimension]";
      os << "\n";
    }
    os << "  tau = " << fmt(d.tau) << ", tau* = " << fmt(d.tau_star)
       << "\n  reconstruction residual " << fmt(d.reconstruction_residual) << "\n";
  } else {
    throw validation_error("unknown group '" + group + "'");
  }
  return {r, os.str(), 0};
}

Handled handle_invariants(const LoadedModel& model) {
  json r;
  std::ostringstream os;
  if (!model.is_riemann()) {
    BilinearForm rho = affine_ricci(model.tensor);
    r["rho"] = matrix_json(rho.components());
    r["rho_sym_norm"] = rho.symmetric_part().norm();
    r["rho_antisym_norm"] = rho.antisymmetric_part().norm();
    r["tau"] = rho.trace(model.metric);
    os << "affine invariants:\n  |rho_s| = " << fmt(rho.symmetric_part().norm())
       << ", |rho_a| = " << fmt(rho.antisymmetric_part().norm())
       << ", tau = " << fmt(rho.trace(model.metric)) << "\n";
  } else {
    CurvatureModel cm = model.as_model();
    RicciInvariants ri = ricci_scalar(cm);
    r["rho"] = matrix_json(ri.ricci.components());
    r["tau"] = ri.scalar;
    r["rho0_norm"] = ri.ricci_traceless.norm();
    os << "invariants:\n  tau = " << fmt(ri.scalar) << ", |rho_0| = "
       << fmt(ri.ricci_traceless.norm()) << "\n";

    for (const auto& [name, S] : model.structures) {
      StarInvariants si = star_invariants(cm, S);
      r["star"][name] = {{"tau_star", si.tau_star},
                         {"rho_star_sym_norm", si.rho_star.symmetric_part().norm()},
                         {"rho_star_antisym_norm", si.rho_star.antisymmetric_part().norm()}};
      os << "  " << name << ": tau* = " << fmt(si.tau_star) << "\n";
    }
    if (model.structures.count("J") && model.structures.count("J2") &&
        model.structures.count("J3")) {
      const auto& J1 = model.structures.at("J");
      const auto& J2 = model.structures.at("J2");
      const auto& J3 = model.structures.at("J3");
      auto flavor = J2.flavor() == StructureFlavor::hermitian
                        ? HyperFlavor::hyper_hermitian
                        : HyperFlavor::hyper_para_hermitian;
      HyperTriple triple = validate_hyper(model.metric, J1.J().matrix(), J2.J().matrix(),
                                          J3.J().matrix(), flavor);
      double tq = tau_star_q(cm, triple);
      r["tau_star_q"] = tq;
      os << "  tau*_Q = " << fmt(tq) << "\n";
    }

    ModelFingerprint fp = model_fingerprint(cm);
    r["fingerprint"] = {{"tau", fp.scalar},
                        {"rho0_norm", fp.ricci_traceless_norm},
                        {"weyl_norm", fp.weyl_norm},
                        {"ricci_eigenvalues", vec_json(fp.ricci_eigenvalues)},
                        {"two_form_eigenvalues", vec_json(fp.two_form_eigenvalues)},
                        {"two_form_diagonalizable", fp.two_form_diagonalizable}};
    os << "  fingerprint: |rho_0| = " << fmt(fp.ricci_traceless_norm)
       << ", |W| = " << fmt(fp.weyl_norm) << "\n";
  }
  return {r, os.str(), 0};
}

json sampling_json(const SpectralSamplingReport& rep) {
  json r;
  r["samples"] = rep.samples;
  r["seed"] = rep.seed;
  r["tolerance"] = rep.tolerance;
  r["verdict"] = rep.verdict;
  r["max_deviation"] = rep.max_deviation;
  r["reference_spectrum"] = vec_json(rep.reference_spectrum);
  json mult = json::array();
  for (auto [v, c] : rep.multiplicity_pattern) mult.push_back({{"value", v}, {"count", c}});
  r["multiplicity_pattern"] = std::move(mult);
  if (!rep.deviating.empty()) {
    json dev = json::array();
    for (const auto& d : rep.deviating) dev.push_back(vec_json(d));
    r["deviating_spectra"] = std::move(dev);
  }
  return r;
}

std::string sampling_human(const char* what, const SpectralSamplingReport& rep) {
  std::ostringstream os;
  os << what << ": " << (rep.verdict ? "holds" : "fails") << " on " << rep.samples
     << " samples (max deviation " << fmt(rep.max_deviation) << ", tolerance "
     << fmt(rep.tolerance) << ", seed " << rep.seed << ")\n  reference spectrum:";
  for (double v : rep.reference_spectrum) os << " " << fmt(v);
  os << "\n";
  return os.str();
}

Handled handle_check(const LoadedModel& model, const std::string& property, int samples,
                     std::uint64_t seed, double tol) {
  json r;
  std::ostringstream os;
  int code = 0;
  if (property == "ip" || property == "osserman") {
    CurvatureModel cm = model.as_model();
    SpectralSamplingReport rep =
        property == "ip" ? check_ip(cm, samples, seed, tol)
                         : check_osserman(cm, samples, seed, tol);
    r = sampling_json(rep);
    os << sampling_human(property == "ip" ? "Ivanov-Petrova" : "Osserman", rep);
    code = rep.verdict ? 0 : 1;
  } else if (property == "gray" || property == "para-gray") {
    CurvatureModel cm = model.as_model();
    const auto flavor = property == "gray" ? StructureFlavor::hermitian
                                           : StructureFlavor::para_hermitian;
    const ComplexStructure& S = require_structure(model, flavor, "check");
    GrayReport rep = gray_defect(cm, S, tol);
    r["identity_holds"] = rep.identity_holds;
    r["defect_norm"] = rep.defect_norm;
    r["raw_defect_norm"] = rep.raw_defect_norm;
    r["w7_component_norm"] = rep.w7_component_norm;
    r["detectors_agree"] = rep.detectors_agree;
    r["tolerance"] = rep.tolerance;
    os << (property == "gray" ? "Gray identity: " : "para-Gray identity: ")
       << (rep.identity_holds ? "holds" : "fails") << "\n  defect norm "
       << fmt(rep.defect_norm) << " (as-printed form " << fmt(rep.raw_defect_norm)
       << "), W7 component norm " << fmt(rep.w7_component_norm) << "\n  detectors "
       << (rep.detectors_agree ? "agree" : "DISAGREE") << ", tolerance "
       << fmt(rep.tolerance) << "\n";
    code = rep.identity_holds ? 0 : 1;
  } else {
    throw validation_error("unknown property '" + property + "'");
  }
  return {r, os.str(), code};
}

Handled handle_classify(const LoadedModel& model, const std::string& property, int samples,
                        std::uint64_t seed) {
  json r;
  std::ostringstream os;
  if (property == "affine-flags") {
    if (model.is_riemann())
      throw validation_error("classify --property affine-flags needs an affine model");
    AffineFlags f = classify_affine(model.tensor);
    r["ricci_symmetric"] = f.ricci_symmetric;
    r["ricci_antisymmetric"] = f.ricci_antisymmetric;
    r["ricci_flat"] = f.ricci_flat;
    r["projectively_flat"] = f.projectively_flat;
    r["flat"] = f.flat;
    r["realizable"] = f.realizable;
    r["case"] = f.realizability_case;
    os << "affine flags: ricci_symmetric=" << f.ricci_symmetric
       << " ricci_antisymmetric=" << f.ricci_antisymmetric << " ricci_flat=" << f.ricci_flat
       << " projectively_flat=" << f.projectively_flat << " flat=" << f.flat << "\n"
       << "  realizable: " << (f.realizable ? "yes" : "no") << " (" << f.realizability_case
       << ")\n";
  } else if (property == "ip") {
    CurvatureModel cm = model.as_model();
    IpClassification c = classify_ip(cm, samples, seed);
    const char* form = c.form == IpClassification::Form::constant_like_phi ? "constant_like_phi"
                       : c.form == IpClassification::Form::exceptional_4d ? "exceptional_4d"
                                                                          : "unknown";
    r["form"] = form;
    r["realizable"] = c.realizable;
    r["residual"] = c.residual;
    r["tolerance"] = 1e-8;
    if (c.form == IpClassification::Form::constant_like_phi) {
      r["C"] = c.C;
      r["phi_signature"] = {c.phi_neg, c.phi_pos};
    }
    os << "Ivanov-Petrova classification: " << form;
    if (c.form == IpClassification::Form::constant_like_phi)
      os << " with C = " << fmt(c.C) << ", <.,.>_phi signature (" << c.phi_neg << ","
         << c.phi_pos << ")";
    os << "\n  realizable: " << (c.realizable ? "yes" : "no") << "\n";
  } else if (property == "osserman") {
    if (!model.clifford_tag)
      throw validation_error(
          "osserman realizability is undecidable from a raw tensor: no Clifford provenance");
    CliffordModel cmod{model.as_model(), *model.clifford_tag};
    OssermanRealizability v = osserman_realizable(cmod);
    r["realizable"] = v.realizable;
    r["case"] = v.matched_case;
    os << "Osserman realizability: " << (v.realizable ? "yes" : "no") << " ("
       << v.matched_case << ")\n";
  } else {
    throw validation_error("unknown property '" + property + "'");
  }
  return {r, os.str(), 0};
}

Handled handle_construct(const std::string& type, int m, int p, double C, double lambda0,
                         const std::vector<double>& lambda,
                         const std::vector<double>& phi_diag, double a1,
                         const std::string& out_path) {
  LoadedModel out = [&] {
    if (type == "constant") {
      return loaded_from(constant_curvature(make_metric(p, m - p), C));
    }
    if (type == "rank-one") {
      if (static_cast<int>(phi_diag.size()) != m)
        throw validation_error("--phi-diag needs exactly m entries");
      Eigen::VectorXd d(m);
      for (int i = 0; i < m; ++i) d(i) = phi_diag[i];
      Metric g = make_metric(p, m - p);
      return loaded_from(rank_one_phi(g, Endo(Eigen::MatrixXd(d.asDiagonal())), C));
    }
    if (type == "skew-psi") {
      Metric g = make_metric(p, m - p);
      ComplexStructure S = p == 0 ? standard_complex_structure(g) : standard_para_structure(g);
      LoadedModel lm = loaded_from(skew_psi_tensor(g, S.J()));
      lm.structures.emplace("J", S);
      return lm;
    }
    if (type == "clifford") {
      return loaded_from(clifford_model(make_metric(0, m), lambda0, lambda));
    }
    if (type == "ip4") {
      return loaded_from(ip_exceptional_4d(a1));
    }
    throw validation_error("unknown construct type '" + type + "'");
  }();

  if (!out_path.empty()) write_model_file(out, out_path);
  json r;
  r["type"] = type;
  r["dimension"] = out.metric.dimension();
  r["signature"] = {out.metric.p(), out.metric.q()};
  r["tensor_norm"] = out.tensor.frobenius_norm();
  if (!out_path.empty()) r["written"] = out_path;
  std::ostringstream os;
  os << "constructed " << type << " model, |A| = " << fmt(out.tensor.frobenius_norm());
  if (!out_path.empty()) os << ", written to " << out_path;
  os << "\n";
  return {r, os.str(), 0};
}

}  // namespace

json convention_block() {
  json c;
  c["index_order"] = "row-major (i,j,k,l); file entries are 0-based";
  c["sectional_curvature"] =
      "K(x,y) = A(x,y,y,x) / (<x,x><y,y> - <x,y>^2); the constant and rank-one "
      "constructors negate the raw phi-tensor so that phi = id gives K = C";
  c["phi_tensor_raw"] = "A_phi(x,y,z,w) = <phi x,z><phi y,w> - <phi x,w><phi y,z>";
  c["gray_identity"] =
      "hermitian: A + J-pullback(A) - [six mixed J-pair terms] = 0; para mirror flips the "
      "mixed-block sign; the as-printed all-plus (resp. all-minus) form is reported alongside";
  c["isotypic_splits"] =
      "W1 is the tau*-null line of the trivial block and W4 its orthocomplement; W2 is the "
      "rho*-component kernel of its block (m >= 6) and W5 its orthocomplement; A2/A3 are the "
      "sigma-image copies, A5/A4 their orthocomplements";
  c["a8_module"] =
      "A8 is the invariant complement of A1..A7 (the stated antisym/anti-pair relations have "
      "no Bianchi-compatible solutions; the complement equals the metric projection of that "
      "constraint space)";
  c["ricci_trace"] = "affine rho_ij = A_{kij}^k; riemann rho_il = eps^{jk} A_{ijkl}";
  c["indefinite_mode"] =
      "orthogonal projections are asserted in Euclidean signature; indefinite metrics use "
      "direct-sum least squares and are flagged";
  return c;
}

CommandResult run_command(const std::vector<std::string>& args) {
  CLI::App app{"algebraic curvature tensor toolkit"};
  app.require_subcommand(1);

  // dims
  int m = 4;
  std::string space;
  auto* dims = app.add_subcommand("dims", "module dimension tables");
  dims->add_option("--m", m, "dimension")->required();
  dims->add_option("--space", space,
                   "affine-gl | affine-bokan | riemann-o | unitary | para-unitary")
      ->required();

  // decompose
  std::string in_path, group;
  auto* dec = app.add_subcommand("decompose", "module decompositions");
  dec->add_option("--in", in_path, "model file")->required();
  dec->add_option("--group", group, "gl | bokan | singer-thorpe | tv | para-tv")->required();

  // invariants
  std::string inv_path;
  auto* inv = app.add_subcommand("invariants", "Ricci, scalar and star invariants");
  inv->add_option("--in", inv_path, "model file")->required();

  // check
  std::string check_path, property;
  int samples = -1;
  std::uint64_t seed = env_seed();
  double tol = 1e-7;
  auto* chk = app.add_subcommand("check", "property checks by spectral sampling");
  chk->add_option("--in", check_path, "model file")->required();
  chk->add_option("--property", property, "ip | osserman | gray | para-gray")->required();
  chk->add_option("--samples", samples, "sample count");
  chk->add_option("--seed", seed, "sampling seed");
  chk->add_option("--tol", tol, "comparison tolerance");

  // construct
  std::string ctype, out_path;
  int cm_ = 4, cp = 0;
  double C = 1.0, lambda0 = 1.0, a1 = 1.0;
  std::vector<double> lambda, phi_diag;
  auto* con = app.add_subcommand("construct", "named constructors");
  con->add_option("--type", ctype, "constant | rank-one | skew-psi | clifford | ip4")
      ->required();
  con->add_option("--m", cm_, "dimension");
  con->add_option("--p", cp, "negative directions of the metric");
  con->add_option("--C", C, "curvature constant");
  con->add_option("--lambda0", lambda0, "Clifford lambda_0");
  con->add_option("--lambda", lambda, "Clifford lambda_1..lambda_ell")->delimiter(',');
  con->add_option("--phi-diag", phi_diag, "diagonal of phi")->delimiter(',');
  con->add_option("--a1", a1, "exceptional family parameter");
  con->add_option("--out", out_path, "output model file");

  // classify
  std::string cls_path, cls_property;
  auto* cls = app.add_subcommand("classify", "realizability classification");
  cls->add_option("--in", cls_path, "model file")->required();
  cls->add_option("--property", cls_property, "ip | osserman | affine-flags")->required();
  int cls_samples = -1;

  CommandResult result;
  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    std::ostringstream os;
    if (e.get_exit_code() == 0) {  // --help
      os << app.help();
      return {0, os.str(), json{{"help", true}}};
    }
    os << "error: " << e.what() << "\n\n" << app.help();
    return {2, os.str(), json{{"error", e.what()}}};
  }

  json report;
  report["command"] = args;
  report["conventions"] = convention_block();

  try {
    Handled h;
    if (*dims) {
      h = handle_dims(m, space);
    } else if (*dec) {
      h = handle_decompose(parse_model_file(in_path), group);
    } else if (*inv) {
      h = handle_invariants(parse_model_file(inv_path));
    } else if (*chk) {
      if (samples < 0) samples = property == "osserman" ? 128 : 64;
      report["seed"] = seed;
      report["tolerances"] = {{"spectrum", tol}};
      h = handle_check(parse_model_file(check_path), property, samples, seed, tol);
    } else if (*con) {
      h = handle_construct(ctype, cm_, cp, C, lambda0, lambda, phi_diag, a1, out_path);
    } else if (*cls) {
      if (cls_samples < 0) cls_samples = 64;
      h = handle_classify(parse_model_file(cls_path), cls_property, cls_samples, env_seed());
    }
    report["results"] = h.results;
    result.exit_code = h.exit_code;
    result.human = h.human;
  } catch (const error& e) {
    report["error"] = e.what();
    result.exit_code = 2;
    result.human = std::string("error: ") + e.what() + "\n";
  }
  result.report = std::move(report);
  return result;
}

}  // namespace curv
