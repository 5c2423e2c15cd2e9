// SPDX-License-Identifier: BSD-3-Clause
// Copyright (c) 2026, shtvol contributors.
//
// Batch front end: every subcommand prints one JSON document.
//   exit 0  success
//   exit 1  malformed input (schema)
//   exit 2  mathematical precondition failure
//   exit 3  internal inconsistency

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "shtvol/expression.hpp"
#include "shtvol/flag_calculus.hpp"
#include "shtvol/phantom_ring.hpp"
#include "shtvol/trace_oracle.hpp"
#include "shtvol/volume.hpp"

namespace {

using shtvol::MatrixQ;
using shtvol::Rational;
using shtvol::SchemaError;
using Json = nlohmann::ordered_json;
namespace fs = std::filesystem;

constexpr const char* kVersion = "0.1.0";

bool g_approx = false;

void put(Json& obj, const std::string& key, const Rational& x) {
  obj[key] = shtvol::to_string(x);
  if (g_approx) obj[key + "_approx"] = shtvol::to_double(x);
}

Json rational_list(const std::vector<Rational>& xs) {
  Json out = Json::array();
  for (const auto& x : xs) out.push_back(shtvol::to_string(x));
  return out;
}

Json matrix_json(const MatrixQ& m) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(shtvol::to_string(m(i, j)));
    out.push_back(row);
  }
  return out;
}

Json load_json(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw SchemaError(path.string() + ": " + e.what());
  }
}

const Json& field(const Json& obj, const char* key, const std::string& where) {
  if (!obj.is_object() || !obj.contains(key)) throw SchemaError(where + ": missing field '" + key + "'");
  return obj.at(key);
}

Rational rational_of(const Json& v, const std::string& where) {
  if (v.is_number_integer()) return Rational(v.get<long>());
  if (v.is_string()) return shtvol::parse_rational(v.get<std::string>());
  throw SchemaError(where + ": expected an integer or a rational string");
}

int int_of(const Json& v, const std::string& where) {
  if (!v.is_number_integer()) throw SchemaError(where + ": expected an integer");
  return v.get<int>();
}

std::vector<Rational> rational_vector(const Json& v, const std::string& where) {
  if (!v.is_array()) throw SchemaError(where + ": expected an array");
  std::vector<Rational> out;
  for (const auto& x : v) out.push_back(rational_of(x, where));
  return out;
}

std::vector<int> int_vector(const Json& v, const std::string& where) {
  if (!v.is_array()) throw SchemaError(where + ": expected an array");
  std::vector<int> out;
  for (const auto& x : v) out.push_back(int_of(x, where));
  return out;
}

MatrixQ matrix_of(const Json& v, int n, const std::string& where) {
  if (!v.is_array() || static_cast<int>(v.size()) != n) throw SchemaError(where + ": expected a square matrix");
  MatrixQ m(n, n);
  for (int i = 0; i < n; ++i) {
    auto row = rational_vector(v[static_cast<std::size_t>(i)], where);
    if (static_cast<int>(row.size()) != n) throw SchemaError(where + ": expected a square matrix");
    for (int j = 0; j < n; ++j) m(i, j) = row[static_cast<std::size_t>(j)];
  }
  return m;
}

shtvol::CurveData curve_of(const Json& c, const std::string& where) {
  Rational q = rational_of(field(c, "q", where), where + ".q");
  int g = int_of(field(c, "g", where), where + ".g");
  shtvol::UPolyQ h1(rational_vector(field(c, "h1", where), where + ".h1"));
  std::optional<MatrixQ> f, j;
  if (c.contains("frobenius")) f = matrix_of(c.at("frobenius"), 2 * g, where + ".frobenius");
  if (c.contains("pairing")) j = matrix_of(c.at("pairing"), 2 * g, where + ".pairing");
  if (g > 1 && (!f || !j)) throw SchemaError(where + ": genus > 1 needs frobenius and pairing");
  return shtvol::make_curve(q, g, h1, f, j);
}

// A curve given inline, by canonical index, or by a path relative to the job file.
shtvol::CurveData resolve_curve(const Json& v, const fs::path& base) {
  if (v.is_number_integer()) return shtvol::canonical_curve(v.get<int>());
  if (v.is_object()) return curve_of(v, "curve");
  if (v.is_string()) {
    fs::path p = base / v.get<std::string>();
    return curve_of(load_json(p), p.string());
  }
  throw SchemaError("curve: expected an object, a canonical index or a file path");
}

shtvol::CurveData curve_from_option(const std::string& text) {
  if (text == "0" || text == "1") return shtvol::canonical_curve(std::stoi(text));
  return curve_of(load_json(text), text);
}

shtvol::ArtinLSystem artin_of(const Json& a, const std::string& where) {
  std::string group = field(a, "group", where).get<std::string>();
  std::transform(group.begin(), group.end(), group.begin(), [](unsigned char ch) { return std::tolower(ch); });
  int gY = int_of(field(a, "gY", where), where + ".gY");
  Rational q = rational_of(field(a, "q", where), where + ".q");
  std::vector<shtvol::ArtinRep> reps;
  for (const auto& r : field(a, "reps", where)) {
    reps.push_back({field(r, "name", where).get<std::string>(), int_of(field(r, "dim", where), where + ".dim"),
                    shtvol::UPolyQ(rational_vector(field(r, "numerator", where), where + ".numerator"))});
  }
  return shtvol::build_artin_system(group, gY, q, std::move(reps));
}

shtvol::Coweight coweight_of(const std::vector<Rational>& xs) {
  shtvol::Coweight mu(static_cast<Eigen::Index>(xs.size()));
  for (std::size_t k = 0; k < xs.size(); ++k) mu(static_cast<Eigen::Index>(k)) = xs[k];
  return mu;
}

shtvol::Coweight parse_coweight(const std::string& text, const shtvol::RootDatum& rd) {
  std::vector<Rational> xs;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) xs.push_back(shtvol::parse_rational(item));
  if (static_cast<int>(xs.size()) != rd.coordinates) {
    throw SchemaError("coweight '" + text + "' needs " + std::to_string(rd.coordinates) + " coordinates");
  }
  return coweight_of(xs);
}

std::vector<shtvol::LegSpec> legs_of(const Json& job, const shtvol::RootDatum& rd) {
  std::vector<shtvol::LegSpec> legs;
  if (!job.contains("legs")) return legs;
  for (const auto& l : job.at("legs")) {
    auto mu = rational_vector(field(l, "mu", "leg"), "leg.mu");
    if (static_cast<int>(mu.size()) != rd.coordinates) throw SchemaError("leg.mu has the wrong number of coordinates");
    shtvol::LegSpec s{coweight_of(mu), shtvol::parse_polynomial(field(l, "eta", "leg").get<std::string>(), rd.coordinates),
                      shtvol::Poly(rd.coordinates), Rational(0)};
    for (const char* key : {"etap", "eta_prime"}) {
      if (l.contains(key)) s.eta_prime = shtvol::parse_polynomial(l.at(key).get<std::string>(), rd.coordinates);
    }
    if (l.contains("omega")) s.omega = rational_of(l.at("omega"), "leg.omega");
    legs.push_back(std::move(s));
  }
  return legs;
}

Json volume_json(const shtvol::VolumeResult& v) {
  Json out;
  out["theorem"] = v.theorem;
  put(out, "value", v.value);
  put(out, "per_component", v.per_component);
  out["dim_bun"] = v.dim_bun;
  put(out, "q_power", v.q_power);
  put(out, "operator_value", v.operator_value);
  out["pi1_factor"] = v.pi1_factor;
  out["constants"] = rational_list(v.constants);
  Json eps = Json::array();
  for (const auto& e : v.eigenvalues) eps.push_back(rational_list(e));
  out["eigenvalues"] = eps;
  out["line_degrees"] = v.line_degrees;
  return out;
}

Json run_eigenweights(const std::string& group, const std::string& mu_text, const std::string& eta_text) {
  auto rd = shtvol::parse_root_datum(group);
  auto mu = parse_coweight(mu_text, rd);
  auto eta = shtvol::parse_polynomial(eta_text, rd.coordinates);
  auto rep = shtvol::eigenweight_report(rd, mu, eta);
  Json out;
  out["theorem"] = "nabla lambda eta";
  out["group"] = rd.label();
  out["mu"] = rational_list(std::vector<Rational>(mu.data(), mu.data() + mu.size()));
  out["eta"] = eta.to_string();
  out["lines"] = rep.labels;
  out["matrix"] = matrix_json(rep.matrix);
  out["rational_spectrum"] = rep.rational_spectrum;
  out["eigenvalues"] = rational_list(rep.eigenvalues);
  Json blocks = Json::array();
  for (const auto& b : rep.blocks) {
    Json jb;
    jb["degree"] = b.degree;
    jb["lines"] = b.lines;
    jb["diagonal"] = b.diagonal;
    jb["characteristic_polynomial"] = rational_list(b.characteristic_polynomial);
    jb["eigenvalues"] = rational_list(b.eigenvalues);
    blocks.push_back(jb);
  }
  out["blocks"] = blocks;
  return out;
}

Json run_integrate(const std::string& group, const std::string& mu_text, const std::string& f_text) {
  auto rd = shtvol::parse_root_datum(group);
  auto mu = parse_coweight(mu_text, rd);
  auto f = shtvol::parse_polynomial(f_text, rd.coordinates);
  Json out;
  out["theorem"] = "lem:w-average-integration";
  out["group"] = rd.label();
  out["flag_dimension"] = shtvol::flag_dimension(rd, mu);
  out["value"] = shtvol::integrate_flag(rd, mu, f).to_string();
  return out;
}

Json run_volume(const fs::path& job_path) {
  Json job = load_json(job_path);
  const fs::path base = job_path.parent_path();
  std::string method = job.value("method", std::string("split"));
  if (method == "split") {
    auto rd = shtvol::parse_root_datum(field(job, "group", "job").get<std::string>());
    auto curve = resolve_curve(field(job, "curve", "job"), base);
    auto legs = legs_of(job, rd);
    bool total = job.value("total", false);
    Json out = volume_json(shtvol::volume_split(rd, legs, curve, total));
    out["group"] = rd.label();
    return out;
  }
  if (method == "gln") {
    auto curve = resolve_curve(field(job, "curve", "job"), base);
    int n = int_of(field(job, "n", "job"), "job.n");
    int d = int_of(field(job, "d", "job"), "job.d");
    auto signs = int_vector(field(job, "signs", "job"), "job.signs");
    auto degrees = int_vector(field(job, "degrees", "job"), "job.degrees");
    Json out = volume_json(shtvol::volume_gln(n, d, signs, degrees, curve));
    auto split = shtvol::volume_split(shtvol::build_root_datum(shtvol::Family::GL, n),
                                      shtvol::gln_legs(n, d, signs, degrees), curve, false);
    put(out, "split_per_component", split.per_component);
    out["b_coefficients"] = rational_list(shtvol::gln_b_coefficients(d, signs, degrees));
    return out;
  }
  if (method == "unitary") {
    auto curve = resolve_curve(field(job, "curve", "job"), base);
    int n = int_of(field(job, "n", "job"), "job.n");
    int r = int_of(field(job, "r", "job"), "job.r");
    int degree = int_of(field(job, "degree", "job"), "job.degree");
    shtvol::DoubleCover cover = shtvol::constant_field_cover(curve);
    if (job.contains("l_chi")) {
      cover = shtvol::geometric_cover(curve, shtvol::UPolyQ(rational_vector(job.at("l_chi"), "job.l_chi")));
    }
    auto res = shtvol::volume_unitary(n, r, degree, cover);
    Json out = volume_json(res.result);
    out["cover"] = cover.model;
    put(out, "series_per_component", res.series_per_component);
    return out;
  }
  throw SchemaError("job.method must be split, gln or unitary");
}

Json run_trace_check(const fs::path& job_path, int dmax) {
  Json job = load_json(job_path);
  auto rd = shtvol::parse_root_datum(field(job, "group", "job").get<std::string>());
  auto curve = resolve_curve(field(job, "curve", "job"), job_path.parent_path());
  auto legs = legs_of(job, rd);
  auto closed = shtvol::volume_split(rd, legs, curve, false);
  auto run = shtvol::truncated_trace(curve, shtvol::gross_motive(rd), shtvol::trace_legs(rd, legs), dmax, closed.dim_bun);
  Json out;
  out["theorem"] = "p:trace conv";
  out["group"] = rd.label();
  out["dmax"] = run.dmax;
  out["burn_in"] = run.burn_in;
  put(out, "closed_form", closed.per_component);
  put(out, "truncated", run.value);
  out["difference"] = std::abs(shtvol::to_double(run.value - closed.per_component));
  out["tail_bound"] = run.tail_bound;
  out["decay_ratio"] = run.decay_ratio;
  out["diagonal_path"] = run.diagonal_path;
  out["agrees"] = shtvol::agrees(run, closed.per_component);
  return out;
}

Json run_phantom(const std::string& group, const std::vector<std::string>& mus, const std::string& curve_text,
                 const std::string& omega_text) {
  auto rd = shtvol::parse_root_datum(group);
  std::vector<shtvol::Coweight> mu;
  for (const auto& m : mus) mu.push_back(parse_coweight(m, rd));
  std::optional<shtvol::Coweight> omega;
  if (!omega_text.empty()) omega = parse_coweight(omega_text, rd);
  auto curve = curve_from_option(curve_text);
  auto ring = shtvol::build_phantom(rd, mu, curve, omega);
  auto rep = shtvol::phantom_report(ring);
  Json out;
  out["theorem"] = "def:taut";
  out["group"] = rd.label();
  out["legs"] = static_cast<int>(mu.size());
  out["top_degree"] = ring.top_degree;
  out["hilbert"] = rep.hilbert;
  out["expected_hilbert"] = rep.expected;
  out["dimension"] = rep.dimension;
  out["expected_dimension"] = rep.expected_dimension;
  out["reduction_hilbert"] = rep.reduction_hilbert;
  out["free"] = rep.free;
  out["top_one_dimensional"] = rep.top_one_dimensional;
  out["vanishes_above_top"] = rep.vanishes_above_top;
  out["frobenius_eigen"] = rep.frobenius_eigen;
  Json duality;
  duality["theorem"] = "p:taut duality";
  duality["perfect"] = rep.perfect;
  out["duality"] = duality;
  if (rep.volume_top) {
    Json vol;
    vol["theorem"] = "p:vol on taut";
    put(vol, "prefactor", *ring.prefactor);
    put(vol, "top_class", *rep.volume_top);
    out["volume_functional"] = vol;
  }
  return out;
}

Json run_colmez(const fs::path& job_path, bool ring) {
  Json job = load_json(job_path);
  auto artin = artin_of(load_json(job_path.parent_path() / field(job, "artin", "job").get<std::string>()), "artin");
  auto group = shtvol::make_group(artin.group);
  shtvol::ColmezInput in{int_of(field(job, "n", "job"), "job.n"), int_vector(field(job, "signs", "job"), "job.signs"),
                         int_vector(field(job, "sigma", "job"), "job.sigma"), &group, &artin};
  auto res = shtvol::volume_colmez(in);
  Json out;
  out["theorem"] = res.theorem.theorem;
  out["proposition"] = volume_json(res.proposition);
  out["statement"] = volume_json(res.theorem);
  put(out, "proposition_sum", res.proposition_sum);
  put(out, "theorem_sum", res.theorem_sum);
  put(out, "reversed_bracket_sum", res.reversed_bracket_sum);
  out["genus_X"] = res.gX;
  out["forms_agree"] = res.proposition.value == res.theorem.value;
  if (ring) {
    auto s = shtvol::build_phantom_sigma(in);
    Json jr;
    jr["hilbert"] = s.ring.hilbert();
    put(jr, "eta_image", s.ring.integral(shtvol::colmez_eta(s)));
    out["restricted_ring"] = jr;
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact volumes of moduli of shtukas and the phantom tautological ring"};
  app.require_subcommand(1);
  std::string output;
  app.add_option("-o,--output", output, "Write the JSON result to this file");
  app.add_flag("--approx", g_approx, "Add decimal renderings next to exact rationals");

  std::string group, mu_text, poly_text, job, curve_text = "0", omega_text;
  std::vector<std::string> mus;
  int dmax = 60;
  bool with_ring = false;

  auto* eig = app.add_subcommand("eigenweights", "Eigenweights of the derivation nabla on the Gross motive");
  eig->add_option("group", group, "Root datum, e.g. gl:4")->required();
  eig->add_option("--mu", mu_text, "Coweight coordinates, comma separated")->required();
  eig->add_option("--eta", poly_text, "Polynomial eta in x1..xn")->required();

  auto* integ = app.add_subcommand("integrate", "Pushforward along G/P_mu");
  integ->add_option("group", group)->required();
  integ->add_option("--mu", mu_text)->required();
  integ->add_option("--f", poly_text)->required();

  auto* vol = app.add_subcommand("volume", "Arithmetic volume from a job file");
  vol->add_option("--job", job)->required()->check(CLI::ExistingFile);

  auto* trace = app.add_subcommand("trace-check", "Truncated Lefschetz trace against the closed form");
  trace->add_option("--job", job)->required()->check(CLI::ExistingFile);
  trace->add_option("--dmax", dmax, "Truncation degree")->check(CLI::Range(2, 200));

  auto* phantom = app.add_subcommand("phantom", "Phantom tautological ring report");
  phantom->add_option("group", group)->required();
  phantom->add_option("--mu", mus, "One coweight per leg (repeat the option)")->required();
  phantom->add_option("--curve", curve_text, "Canonical curve index 0/1 or a curve JSON file");
  phantom->add_option("--omega", omega_text, "Component coweight (reductive groups)");

  auto* colmez = app.add_subcommand("colmez", "Colmez-type volume from a job file");
  colmez->add_option("--job", job)->required()->check(CLI::ExistingFile);
  colmez->add_flag("--ring", with_ring, "Also evaluate eta in the restricted ring");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    Json result;
    if (*eig) result = run_eigenweights(group, mu_text, poly_text);
    if (*integ) result = run_integrate(group, mu_text, poly_text);
    if (*vol) result = run_volume(job);
    if (*trace) result = run_trace_check(job, dmax);
    if (*phantom) result = run_phantom(group, mus, curve_text, omega_text);
    if (*colmez) result = run_colmez(job, with_ring);
    Json doc;
    doc["version"] = kVersion;
    doc["result"] = result;
    const std::string text = doc.dump(2) + "\n";
    if (output.empty()) {
      std::cout << text;
    } else {
      std::ofstream out(output);
      if (!out) throw SchemaError("cannot write " + output);
      out << text;
    }
  } catch (const SchemaError& e) {
    std::cerr << "schema error: " << e.what() << "\n";
    return 1;
  } catch (const Json::exception& e) {
    std::cerr << "schema error: " << e.what() << "\n";
    return 1;
  } catch (const shtvol::PreconditionError& e) {
    std::cerr << "precondition failed: " << e.what() << "\n";
    return 2;
  } catch (const shtvol::InconsistencyError& e) {
    std::cerr << "internal inconsistency: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
