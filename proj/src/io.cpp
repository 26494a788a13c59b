#include "vmcorr/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "vmcorr/errors.hpp"

namespace vmcorr::io {

using nlohmann::ordered_json;

std::string format_number(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

std::string format_2sf(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.2g", value);
  return buf;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << text;
  out.flush();
  if (!out) throw IoError("failed writing '" + path + "'");
}

void write_sample_csv(const std::string& path, const AngleSampleMatrix& data) {
  std::string text = "theta,phi\n";
  for (Eigen::Index i = 0; i < data.size(); ++i) {
    text += format_number(data.theta(i));
    text += ',';
    text += format_number(data.phi(i));
    text += '\n';
  }
  write_text(path, text);
}

AngleSampleMatrix read_sample_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  std::string line;
  if (!std::getline(in, line) || line.rfind("theta,phi", 0) != 0) {
    throw IoError("'" + path + "' lacks the theta,phi header");
  }
  std::vector<double> theta, phi;
  long line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    const auto comma = line.find(',');
    try {
      if (comma == std::string::npos) throw std::invalid_argument("missing comma");
      theta.push_back(wrap_angle(std::stod(line.substr(0, comma))));
      phi.push_back(wrap_angle(std::stod(line.substr(comma + 1))));
    } catch (const std::exception&) {
      throw IoError("'" + path + "' line " + std::to_string(line_no) + ": malformed pair");
    }
  }
  AngleSampleMatrix data;
  data.theta = Eigen::Map<Eigen::ArrayXd>(theta.data(), static_cast<Eigen::Index>(theta.size()));
  data.phi = Eigen::Map<Eigen::ArrayXd>(phi.data(), static_cast<Eigen::Index>(phi.size()));
  return data;
}

namespace {

ordered_json params_json(const ModelParams& p) {
  ordered_json j;
  j["family"] = std::string(to_string(p.family));
  j["mu1"] = p.mu1;
  j["mu2"] = p.mu2;
  j["kappa1"] = p.kappa1;
  j["kappa2"] = p.kappa2;
  j["assoc"] = p.assoc;
  return j;
}

}  // namespace

std::string manifest_json(const RunManifest& m) {
  ordered_json j;
  j["command"] = m.command;
  j["tool_version"] = m.tool_version;
  j["params"] = params_json(m.params);
  j["control"] = {{"rel_tol", m.control.rel_tol},
                  {"consecutive_small", m.control.consecutive_small},
                  {"max_terms", m.control.max_terms}};
  if (m.sampler) {
    j["sampler"] = {{"seed", m.sampler->seed},
                    {"method", std::string(to_string(m.sampler->method))},
                    {"burn_in", m.sampler->burn_in},
                    {"thin", m.sampler->thin},
                    {"rng", std::string(Rng::kName)}};
  } else {
    j["sampler"] = nullptr;
  }
  j["outputs"] = m.outputs;
  for (const auto& [key, value] : m.extra) j["settings"][key] = value;
  return j.dump(2) + "\n";
}

void write_manifest(const std::string& path, const RunManifest& manifest) {
  write_text(path, manifest_json(manifest));
}

std::string report_json(const CorrelationReport& r) {
  ordered_json j;
  j["params"] = params_json(r.params);
  j["rho_js"] = r.rho_js;
  j["rho_fl"] = r.rho_fl;
  j["var_theta"] = r.var_t;
  j["var_phi"] = r.var_p;
  j["delta"] = r.delta;
  if (r.normal_approx) {
    j["normal_approx"] = r.normal_approx->value;
    j["normal_approx_valid"] = r.normal_approx->valid;
  } else {
    j["normal_approx"] = nullptr;
    j["normal_approx_valid"] = nullptr;
  }
  j["moments"] = {{"e_cos_theta", r.moments.e_cos_t},  {"e_cos_phi", r.moments.e_cos_p},
                  {"e_cos2_theta", r.moments.e_cos2_t}, {"e_cos2_phi", r.moments.e_cos2_p},
                  {"e_sin_sin", r.moments.e_ss},        {"e_cos_cos", r.moments.e_cc}};
  j["series"] = {{"terms_used", r.terms_used},
                 {"converged", r.converged},
                 {"log_scale_exponent", r.log_scale_exponent}};
  return j.dump(2) + "\n";
}

std::string mc_validation_csv(const std::vector<McValidation>& rows) {
  std::string text = "quantity,analytic,estimate_mean,estimate_se,replicates,sample_size,z_score\n";
  for (const auto& row : rows) {
    text += std::string(to_string(row.quantity)) + ',' + format_number(row.analytic) + ',' +
            format_number(row.estimate_mean) + ',' + format_number(row.estimate_se) + ',' +
            std::to_string(row.replicates) + ',' + std::to_string(row.sample_size) + ',' +
            format_number(row.z_score) + '\n';
  }
  return text;
}

}  // namespace vmcorr::io
