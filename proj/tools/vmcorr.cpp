#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <json.hpp>
#include <numbers>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "vmcorr/errors.hpp"
#include "vmcorr/estimation.hpp"
#include "vmcorr/io.hpp"
#include "vmcorr/moments.hpp"
#include "vmcorr/quadrature.hpp"
#include "vmcorr/sampling.hpp"
#include "vmcorr/tables.hpp"

namespace {

using namespace vmcorr;

enum ExitCode { kOk = 0, kUsage = 2, kNotConverged = 3, kIo = 4, kOracleMismatch = 5 };

constexpr double kOraclePass = 1e-8;
constexpr double kOracleFail = 1e-6;
constexpr double kOracleMaxKappa = 50;

struct ModelFlags {
  std::string family = "sine";
  double mu1 = 0, mu2 = 0, k1 = 0, k2 = 0, assoc = 0;
  bool degrees = false;
};

struct ControlFlags {
  double rel_tol = SeriesControl{}.rel_tol;
  long max_terms = SeriesControl{}.max_terms;
  std::string manifest;
};

void add_model_flags(CLI::App* cmd, ModelFlags& f) {
  cmd->add_option("--family", f.family, "sine or cosine")->capture_default_str();
  cmd->add_option("--mu1", f.mu1, "mean of theta");
  cmd->add_option("--mu2", f.mu2, "mean of phi");
  cmd->add_option("--k1", f.k1, "kappa1 >= 0");
  cmd->add_option("--k2", f.k2, "kappa2 >= 0");
  cmd->add_option("--assoc", f.assoc, "lambda (sine) or kappa3 (cosine)");
  cmd->add_flag("--degrees", f.degrees, "read --mu1/--mu2 in degrees");
}

void add_control_flags(CLI::App* cmd, ControlFlags& f) {
  cmd->add_option("--rel-tol", f.rel_tol, "series truncation tolerance")->capture_default_str();
  cmd->add_option("--max-terms", f.max_terms, "series term cap")->capture_default_str();
  cmd->add_option("--manifest", f.manifest, "write the run manifest to this path");
}

ModelParams model_of(const ModelFlags& f) {
  const double scale = f.degrees ? std::numbers::pi / 180 : 1.0;
  return ModelParams::make(parse_family(f.family), f.k1, f.k2, f.assoc, f.mu1 * scale,
                           f.mu2 * scale);
}

SeriesControl control_of(const ControlFlags& f) {
  SeriesControl c;
  c.rel_tol = f.rel_tol;
  c.max_terms = f.max_terms;
  c.validate();
  return c;
}

io::RunManifest manifest_of(std::string command, const ModelParams& p, const SeriesControl& ctl,
                            std::optional<SamplerConfig> sampler = std::nullopt) {
  io::RunManifest m;
  m.command = std::move(command);
  m.params = p;
  m.control = ctl;
  m.sampler = sampler;
  return m;
}

void emit_manifest(const std::string& path, const io::RunManifest& manifest) {
  if (!path.empty()) io::write_manifest(path, manifest);
}

std::string manifest_path_for(const std::string& out, const std::string& explicit_path) {
  return explicit_path.empty() ? out + ".manifest.json" : explicit_path;
}

void write_or_print(const std::string& out, const std::string& text) {
  if (out.empty()) {
    std::cout << text;
  } else {
    io::write_text(out, text);
  }
}

std::string table_csv(Family family, const SeriesControl& control, bool pretty) {
  auto num = [&](double v) { return pretty ? io::format_2sf(v) : io::format_number(v); };
  std::string text = "kappa1,kappa2,assoc,rho_approx,rho_js,rho_fl,var_theta\n";
  for (const ModelParams& p : table_grid(family)) {
    const CorrelationReport r = correlation_report(p, control);
    text += num(p.kappa1) + ',' + num(p.kappa2) + ',' + num(p.assoc) + ',';
    if (r.normal_approx) text += num(r.normal_approx->value);
    text += ',' + num(r.rho_js) + ',' + num(r.rho_fl) + ',' + num(r.var_t) + '\n';
  }
  return text;
}

std::string density_csv(const Eigen::MatrixXd& grid) {
  const Eigen::Index n = grid.rows();
  const double h = 2 * std::numbers::pi / static_cast<double>(n);
  std::string text = "theta,phi,density\n";
  for (Eigen::Index i = 0; i < n; ++i) {
    const double theta = -std::numbers::pi + h * static_cast<double>(i);
    for (Eigen::Index j = 0; j < n; ++j) {
      const double phi = -std::numbers::pi + h * static_cast<double>(j);
      text += io::format_number(theta) + ',' + io::format_number(phi) + ',' +
              io::format_number(grid(i, j)) + '\n';
    }
  }
  return text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Circular correlations of the bivariate von Mises sine and cosine models"};
  app.set_version_flag("--version", io::kToolVersion);
  app.require_subcommand(1);

  ModelFlags model;
  ControlFlags control;

  auto* report = app.add_subcommand("report", "analytic correlations, variances and moments");
  std::string report_format = "json";
  add_model_flags(report, model);
  add_control_flags(report, control);
  report->add_option("--format", report_format, "json or kv")
      ->check(CLI::IsMember({"json", "kv"}))
      ->capture_default_str();

  auto* table = app.add_subcommand("table", "analytic columns of the 12-row illustration grid");
  bool pretty = false;
  std::string table_out;
  table->add_option("--family", model.family, "sine or cosine")->capture_default_str();
  table->add_flag("--pretty", pretty, "two significant figures");
  table->add_option("--out", table_out, "CSV path (default stdout)");
  add_control_flags(table, control);

  auto* sample = app.add_subcommand("sample", "draw a bivariate sample");
  long n = 1000;
  std::uint64_t seed = 1;
  std::string method = "gibbs";
  int burn_in = SamplerConfig{}.burn_in;
  int thin = SamplerConfig{}.thin;
  std::string sample_out;
  add_model_flags(sample, model);
  add_control_flags(sample, control);
  sample->add_option("--n", n, "sample size")->capture_default_str();
  sample->add_option("--seed", seed, "master seed")->capture_default_str();
  sample->add_option("--method", method, "gibbs or rejection")->capture_default_str();
  sample->add_option("--burn-in", burn_in, "Gibbs burn-in sweeps")->capture_default_str();
  sample->add_option("--thin", thin, "Gibbs sweeps per kept draw")->capture_default_str();
  sample->add_option("--out", sample_out, "CSV path")->required();

  auto* mc = app.add_subcommand("mc-validate", "Monte Carlo check of the analytic values");
  int replicates = 100;
  std::string mc_out;
  unsigned threads = 0;
  add_model_flags(mc, model);
  add_control_flags(mc, control);
  mc->add_option("--n", n, "draws per replicate")->capture_default_str();
  mc->add_option("--replicates", replicates, "number of replicates")->capture_default_str();
  mc->add_option("--seed", seed, "master seed")->capture_default_str();
  mc->add_option("--burn-in", burn_in, "Gibbs burn-in sweeps")->capture_default_str();
  mc->add_option("--thin", thin, "Gibbs sweeps per kept draw")->capture_default_str();
  mc->add_option("--method", method, "gibbs or rejection")->capture_default_str();
  mc->add_option("--threads", threads, "worker threads (0 = all cores)");
  mc->add_option("--out", mc_out, "CSV path (default stdout)");

  auto* density = app.add_subcommand("density-grid", "normalized density on a uniform grid");
  int resolution = 128;
  std::string density_out;
  add_model_flags(density, model);
  add_control_flags(density, control);
  density->add_option("--resolution", resolution, "points per axis (>= 8)")->capture_default_str();
  density->add_option("--out", density_out, "CSV path")->required();

  auto* oracle = app.add_subcommand("oracle-check", "compare the series with torus quadrature");
  add_model_flags(oracle, model);
  add_control_flags(oracle, control);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    const SeriesControl ctl = control_of(control);

    if (*report) {
      const ModelParams p = model_of(model);
      const CorrelationReport r = correlation_report(p, ctl);
      std::cout << (report_format == "json" ? io::report_json(r) : format_key_values(r));
      emit_manifest(control.manifest, manifest_of("report", p, ctl));
      return kOk;
    }

    if (*table) {
      const Family family = parse_family(model.family);
      write_or_print(table_out, table_csv(family, ctl, pretty));
      const std::string path =
          table_out.empty() ? control.manifest : manifest_path_for(table_out, control.manifest);
      io::RunManifest m = manifest_of("table", ModelParams::make(family, 0, 0, 0), ctl);
      if (!table_out.empty()) m.outputs.push_back(table_out);
      m.extra.push_back({"pretty", pretty ? "true" : "false"});
      emit_manifest(path, m);
      return kOk;
    }

    if (*sample) {
      const ModelParams p = model_of(model);
      const SamplerConfig cfg{seed, parse_sampling_method(method), burn_in, thin};
      const AngleSampleMatrix data = sample_bivariate(p, n, cfg);
      io::write_sample_csv(sample_out, data);
      io::RunManifest m = manifest_of("sample", p, ctl, cfg);
      m.outputs.push_back(sample_out);
      m.extra.push_back({"n", std::to_string(n)});
      if (cfg.method == SamplingMethod::Rejection) {
        m.extra.push_back({"acceptance_rate", io::format_number(data.acceptance_rate())});
      }
      emit_manifest(manifest_path_for(sample_out, control.manifest), m);
      return kOk;
    }

    if (*mc) {
      const ModelParams p = model_of(model);
      McOptions opts;
      opts.burn_in = burn_in;
      opts.thin = thin;
      opts.method = parse_sampling_method(method);
      opts.threads = threads;
      const auto rows = mc_validate(p, n, replicates, seed, opts, ctl);
      write_or_print(mc_out, io::mc_validation_csv(rows));
      const std::string path =
          mc_out.empty() ? control.manifest : manifest_path_for(mc_out, control.manifest);
      io::RunManifest m =
          manifest_of("mc-validate", p, ctl, SamplerConfig{seed, opts.method, burn_in, thin});
      if (!mc_out.empty()) m.outputs.push_back(mc_out);
      m.extra.push_back({"n", std::to_string(n)});
      m.extra.push_back({"replicates", std::to_string(replicates)});
      m.extra.push_back({"se_convention", "sd_of_replicate_estimates"});
      emit_manifest(path, m);
      return kOk;
    }

    if (*density) {
      const ModelParams p = model_of(model);
      const Eigen::MatrixXd grid = density_grid(p, resolution, ctl);
      io::write_text(density_out, density_csv(grid));
      io::RunManifest m = manifest_of("density-grid", p, ctl);
      m.outputs.push_back(density_out);
      m.extra.push_back({"resolution", std::to_string(resolution)});
      m.extra.push_back({"local_maxima", std::to_string(count_local_maxima(grid))});
      emit_manifest(manifest_path_for(density_out, control.manifest), m);
      return kOk;
    }

    if (*oracle) {
      const ModelParams p = model_of(model);
      if (p.kappa1 > kOracleMaxKappa || p.kappa2 > kOracleMaxKappa ||
          std::fabs(p.assoc) > kOracleMaxKappa) {
        throw InvalidArgument("oracle-check supports concentrations up to 50");
      }
      const auto rows = quadrature::compare_with_oracle(p, ctl);
      double worst = 0;
      nlohmann::ordered_json j;
      j["family"] = std::string(to_string(p.family));
      j["kappa1"] = p.kappa1;
      j["kappa2"] = p.kappa2;
      j["assoc"] = p.assoc;
      j["quantities"] = nlohmann::ordered_json::array();
      for (const auto& row : rows) {
        worst = std::max(worst, row.discrepancy);
        j["quantities"].push_back({{"quantity", row.quantity},
                                   {"series", row.series},
                                   {"quadrature", row.oracle},
                                   {"discrepancy", row.discrepancy}});
      }
      j["max_discrepancy"] = worst;
      j["tolerance"] = kOraclePass;
      j["pass"] = worst <= kOraclePass;
      std::cout << j.dump(2) << "\n";
      emit_manifest(control.manifest, manifest_of("oracle-check", p, ctl));
      return worst > kOracleFail ? kOracleMismatch : kOk;
    }
  } catch (const SeriesNotConverged& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kNotConverged;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kIo;
  } catch (const ResolutionCapExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kNotConverged;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
