#include "cli.hpp"

#include <chrono>
#include <cstdlib>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "boolmodel/covariance.hpp"
#include "boolmodel/io.hpp"
#include "boolmodel/limit_stats.hpp"
#include "boolmodel/moments.hpp"
#include "boolmodel/parallel.hpp"

namespace boolmodel {

namespace {

// Raw flag values; only the ones the user passed override the config file.
struct Flags {
  std::string config;
  double gamma = 0.0;
  std::uint64_t seed = 0;
  std::vector<double> window;
  std::vector<double> scales;
  std::size_t reps = 0;
  std::uint64_t replicate = 0;
  int functional = 2;
  double tolerance = 0.0;
  double resolution = 0.0;
  double probe_radius = 0.0;
  std::string method;
  std::string out;
  std::string json_out;
  std::string input;
  unsigned threads = 0;
};

struct Options {
  CLI::Option* gamma = nullptr;
  CLI::Option* seed = nullptr;
  CLI::Option* window = nullptr;
  CLI::Option* scales = nullptr;
  CLI::Option* reps = nullptr;
  CLI::Option* replicate = nullptr;
  CLI::Option* functional = nullptr;
  CLI::Option* tolerance = nullptr;
  CLI::Option* resolution = nullptr;
  CLI::Option* probe = nullptr;
  CLI::Option* method = nullptr;
  CLI::Option* out = nullptr;
  CLI::Option* threads = nullptr;
};

void add_common(CLI::App* s, Flags& f, Options& o) {
  s->add_option("-c,--config", f.config, "JSON experiment config")->check(CLI::ExistingFile);
  o.gamma = s->add_option("--gamma", f.gamma, "intensity, overrides model.gamma");
  o.seed = s->add_option("--seed", f.seed, "master seed, overrides model.seed");
  o.window = s->add_option("--window", f.window, "window width and height (lower corner at the origin)")->expected(2);
  o.threads = s->add_option("-j,--threads", f.threads, "worker threads (else BOOLMODEL_THREADS, else all cores)");
  o.out = s->add_option("-o,--out", f.out, "output file (stdout when omitted)");
}

ExperimentConfig effective_config(const Flags& f, const Options& o) {
  ExperimentConfig c = f.config.empty() ? ExperimentConfig{} : experiment_from_json(read_json_file(f.config));
  if (f.config.empty()) c.model.gamma = 0.3;
  auto given = [](CLI::Option* opt) { return opt && opt->count() > 0; };
  if (given(o.gamma)) c.model.gamma = f.gamma;
  if (given(o.seed)) c.model.seed = f.seed;
  if (given(o.window)) c.model.window = Window::make({0.0, 0.0}, {f.window[0], f.window[1]});
  if (given(o.scales)) c.scales = f.scales;
  if (given(o.reps)) c.reps = f.reps;
  if (given(o.replicate)) c.replicate = f.replicate;
  if (given(o.functional)) c.functional = f.functional;
  if (given(o.tolerance)) c.tolerance = f.tolerance;
  if (given(o.resolution)) c.resolution = f.resolution;
  if (given(o.method)) c.method = f.method;
  if (given(o.out)) c.output = f.out;
  if (given(o.threads)) c.threads = f.threads;
  if (given(o.probe)) c.probe = Probe{c.model.window.center(), GrainShape::disk(f.probe_radius)};
  return c;
}

unsigned thread_count(const ExperimentConfig& c) {
  if (c.threads) {
    if (*c.threads == 0) throw PreconditionError("threads must be at least 1");
    return *c.threads;
  }
  if (const char* env = std::getenv("BOOLMODEL_THREADS")) {
    char* end = nullptr;
    const unsigned long v = std::strtoul(env, &end, 10);
    if (end == env || *end != '\0' || v == 0) throw FormatError("BOOLMODEL_THREADS must be a positive integer");
    return static_cast<unsigned>(v);
  }
  return default_parallelism();
}

// Thread count and output path do not change any number, so they are
// left out of the echoed config.
Json echo(const ExperimentConfig& c) {
  Json j = experiment_to_json(c);
  j.erase("threads");
  j.erase("output");
  return j;
}

void emit(const ExperimentConfig& c, const std::string& content, std::ostream& out) {
  if (c.output.empty())
    out << content;
  else
    write_atomic(c.output, content);
}

std::string csv_numbers(const std::vector<double>& v) {
  std::vector<std::string> s;
  for (double x : v) s.push_back(csv_number(x));
  return csv_row(s);
}

std::vector<GermGrainSample> simulate(const ExperimentConfig& c, unsigned threads) {
  c.model.validate();
  std::vector<GermGrainSample> s(c.reps);
  parallel_for(c.reps, threads, [&](std::size_t i) { s[i] = sample(c.model, c.replicate + i); });
  return s;
}

std::string cmd_simulate(const ExperimentConfig& c, unsigned threads) {
  return samples_to_text(c.model, simulate(c, threads));
}

FunctionalVector measure_one(const ExperimentConfig& c, const GermGrainSample& s) {
  if (c.method == "arrangement") return arrangement_measure(s.placed, s.config.window);
  if (c.method == "inclusion-exclusion") return inclusion_exclusion_measure(s.placed, s.config.window);
  if (c.method == "pixel") return pixel_measure(s.placed, s.config.window, c.resolution);
  throw PreconditionError("method must be arrangement, inclusion-exclusion or pixel");
}

std::string cmd_measure(ExperimentConfig& c, const std::string& input, unsigned threads) {
  if (input.empty()) throw PreconditionError("measure needs --input with a sample file");
  const auto file = samples_from_text(read_text_file(input));
  c.model = file.config;
  c.reps = file.samples.size();
  std::vector<FunctionalVector> v(file.samples.size());
  parallel_for(v.size(), threads, [&](std::size_t i) { v[i] = measure_one(c, file.samples[i]); });
  std::string body = comment_header("boolmodel-measure", echo(c)) + csv_row({"replicate", "grains", "V0", "V1", "V2"});
  for (std::size_t i = 0; i < v.size(); ++i)
    body += csv_row({std::to_string(file.samples[i].replicate), std::to_string(file.samples[i].placed.size()),
                     csv_number(v[i].v0), csv_number(v[i].v1), csv_number(v[i].v2)});
  return body;
}

std::string cmd_predict(const ExperimentConfig& c) {
  if (!(c.model.gamma >= 0.0) || !std::isfinite(c.model.gamma)) throw PreconditionError("gamma must be finite and >= 0");
  const auto m = grain_moments(c.model.grains);
  const bool iso = c.model.grains.isotropic();
  const auto d = miles_densities_2d(c.model.gamma, m, iso);
  return comment_header("boolmodel-predict", echo(c)) + csv_row({"gamma", "ev1", "ev2", "d0", "d1", "d2"}) +
         csv_numbers({c.model.gamma, m.ev1, m.ev2, d.d0, d.d1, d.d2});
}

std::string cmd_estimate(ExperimentConfig& c, const std::string& input, unsigned threads) {
  std::vector<GermGrainSample> samples;
  if (input.empty()) {
    samples = simulate(c, threads);
  } else {
    auto file = samples_from_text(read_text_file(input));
    c.model = file.config;
    samples = std::move(file.samples);
    c.reps = samples.size();
  }
  if (samples.size() < 2) throw PreconditionError("estimate needs at least 2 replicates");
  std::vector<DensityVector> d(samples.size());
  parallel_for(d.size(), threads, [&](std::size_t i) {
    d[i] = window_densities(arrangement_statistics(samples[i].placed, samples[i].config.window), samples[i].config.window);
  });
  const auto e = estimate_densities(d);
  const auto g = invert_intensity(e, c.model.grains.isotropic());
  return comment_header("boolmodel-estimate", echo(c)) +
         csv_row({"reps", "d0", "d1", "d2", "se_d0", "se_d1", "se_d2", "gamma", "ev1", "ev2", "se_gamma"}) +
         csv_row({std::to_string(e.reps), csv_number(e.mean.d0), csv_number(e.mean.d1), csv_number(e.mean.d2),
                  csv_number(e.standard_error.d0), csv_number(e.standard_error.d1), csv_number(e.standard_error.d2),
                  csv_number(g.gamma), csv_number(g.ev1), csv_number(g.ev2), csv_number(g.gamma_se)});
}

std::string cmd_covariance(const ExperimentConfig& c) {
  c.model.validate();
  const auto r = sigma_matrix(c.model.gamma, c.model.grains, c.tolerance);
  std::string body = comment_header("boolmodel-covariance", echo(c)) +
                     csv_row({"quantity", "i", "j", "value", "quadrature_error"});
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      // The errors of sigma follow from those of rho through the P weights.
      body += csv_row({"sigma", std::to_string(i), std::to_string(j), csv_number(r.sigma(i, j)), ""});
    }
  for (int i = 0; i < 3; ++i)
    for (int j = i; j < 3; ++j)
      body += csv_row({"rho", std::to_string(i), std::to_string(j), csv_number(r.rho.rho[i][j]),
                       csv_number(r.rho.error[i][j])});
  const char* names[3] = {"cross_check_12", "cross_check_11", "cross_check_02"};
  for (int k = 0; k < 3; ++k) body += csv_row({names[k], "", "", csv_number(r.cross_check[k]), ""});
  body += csv_row({"positive_definite", "", "", r.positive_definite ? "1" : "0", ""});
  return body;
}

struct CltOutput {
  std::string csv;
  std::string json;
};

CltOutput cmd_clt(const ExperimentConfig& c, unsigned threads) {
  c.model.validate();
  if (c.scales.empty()) throw PreconditionError("clt needs at least one scale");
  if (c.reps < 100) throw PreconditionError("clt needs reps >= 100 for the distributional checks");
  const auto e = clt_experiment(c.model, c.scales, c.reps, threads);
  const double threshold = calibrated_threshold(c.reps);
  std::string csv = comment_header("boolmodel-clt", echo(c)) +
                    csv_row({"functional", "r", "N", "mean", "var_per_area", "w1", "ks", "slope"});
  Json summary{{"format", "boolmodel-clt-summary"}, {"version", kFormatVersion}, {"tool", kToolVersion},
               {"config", echo(c)}, {"threshold", threshold}};
  for (const auto& rep : e.reports) {
    for (const auto& s : rep.scales)
      csv += csv_row({"V" + std::to_string(rep.functional), csv_number(s.scale), std::to_string(s.reps),
                      csv_number(s.mean), csv_number(s.variance_per_area), csv_number(s.w1), csv_number(s.ks),
                      csv_number(rep.slope)});
    const double w_last = rep.scales.back().w1;
    summary["functionals"].push_back({{"functional", rep.functional},
                                      {"slope", rep.slope},
                                      {"spearman", rep.spearman},
                                      {"w1_largest_scale", w_last},
                                      {"below_threshold", w_last < threshold},
                                      {"decreasing", rep.spearman < 0.0}});
  }
  return {csv, summary.dump(2) + "\n"};
}

std::string cmd_capacity(const ExperimentConfig& c, unsigned threads) {
  c.model.validate();
  const Probe p = c.probe ? *c.probe : Probe{c.model.window.center(), std::nullopt};
  const double theory = theory_capacity(c.model, p);
  const auto est = empirical_capacity(c.model, p, c.reps, threads);
  const double z = est.standard_error > 0.0 ? (est.estimate - theory) / est.standard_error : 0.0;
  return comment_header("boolmodel-capacity", echo(c)) +
         csv_row({"theory", "estimate", "standard_error", "reps", "z"}) +
         csv_row({csv_number(theory), csv_number(est.estimate), csv_number(est.standard_error),
                  std::to_string(est.reps), csv_number(z)});
}

std::string cmd_render(const ExperimentConfig& c) {
  c.model.validate();
  if (!(c.resolution > 0.0)) throw PreconditionError("resolution must be positive");
  const auto s = sample(c.model, c.replicate);
  const auto pgm = to_pgm(rasterize(s.placed, c.model.window, c.resolution));
  // PGM allows comment lines after the magic number.
  return "P5\n# format boolmodel-render " + std::to_string(kFormatVersion) + "\n# config " + echo(c).dump() + "\n" +
         pgm.substr(3);
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Boolean model simulation, measurement and asymptotic theory"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);

  Flags f;
  std::map<std::string, Options> opts;
  auto sub = [&](const char* name, const char* help) {
    auto* s = app.add_subcommand(name, help);
    add_common(s, f, opts[name]);
    return s;
  };

  auto* simulate_cmd = sub("simulate", "write replicates as a grain dump");
  opts["simulate"].reps = simulate_cmd->add_option("-n,--reps", f.reps, "number of replicates");
  opts["simulate"].replicate = simulate_cmd->add_option("--replicate", f.replicate, "first replicate index");

  auto* measure_cmd = sub("measure", "measure (V0, V1, V2) of dumped replicates");
  measure_cmd->add_option("-i,--input", f.input, "grain dump from simulate")->required()->check(CLI::ExistingFile);
  opts["measure"].method = measure_cmd->add_option("--method", f.method, "arrangement, inclusion-exclusion or pixel")
                               ->check(CLI::IsMember({"arrangement", "inclusion-exclusion", "pixel"}));
  opts["measure"].resolution = measure_cmd->add_option("--resolution", f.resolution, "pixels per unit length");

  sub("predict", "density of (V0, V1, V2) from gamma and the grain law");

  auto* estimate_cmd = sub("estimate", "estimate densities and invert for gamma");
  estimate_cmd->add_option("-i,--input", f.input, "grain dump (simulated from the config when omitted)")
      ->check(CLI::ExistingFile);
  opts["estimate"].reps = estimate_cmd->add_option("-n,--reps", f.reps, "replicates to simulate");
  opts["estimate"].replicate = estimate_cmd->add_option("--replicate", f.replicate, "first replicate index");

  auto* covariance_cmd = sub("covariance", "asymptotic covariance matrix of (V0, V1, V2)");
  opts["covariance"].tolerance = covariance_cmd->add_option("--tolerance", f.tolerance, "relative quadrature tolerance");

  auto* clt_cmd = sub("clt", "normal approximation across window scales");
  opts["clt"].scales = clt_cmd->add_option("--scales", f.scales, "window scale factors");
  opts["clt"].reps = clt_cmd->add_option("-n,--reps", f.reps, "replicates per scale");
  clt_cmd->add_option("--json", f.json_out, "JSON summary path (default <out>.json; appended to stdout without --out)");

  auto* capacity_cmd = sub("capacity", "capacity functional, theory against simulation");
  opts["capacity"].reps = capacity_cmd->add_option("-n,--reps", f.reps, "replicates");
  opts["capacity"].probe = capacity_cmd->add_option("--probe-disk", f.probe_radius, "disk probe radius at the window center");

  auto* render_cmd = sub("render", "raster of one replicate as binary PGM");
  opts["render"].resolution = render_cmd->add_option("--resolution", f.resolution, "pixels per unit length");
  opts["render"].replicate = render_cmd->add_option("--replicate", f.replicate, "replicate index");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  CLI::App* chosen = app.get_subcommands().front();
  const std::string name = chosen->get_name();
  const auto start = std::chrono::steady_clock::now();
  try {
    ExperimentConfig c = effective_config(f, opts[name]);
    const unsigned threads = thread_count(c);
    std::string body, json_path, json_body;
    if (name == "simulate") {
      body = cmd_simulate(c, threads);
    } else if (name == "measure") {
      body = cmd_measure(c, f.input, threads);
    } else if (name == "predict") {
      body = cmd_predict(c);
    } else if (name == "estimate") {
      body = cmd_estimate(c, f.input, threads);
    } else if (name == "covariance") {
      body = cmd_covariance(c);
    } else if (name == "clt") {
      auto r = cmd_clt(c, threads);
      json_path = f.json_out.empty() && !c.output.empty() ? c.output + ".json" : f.json_out;
      body = r.csv;
      if (json_path.empty())
        body += r.json;
      else
        json_body = r.json;
    } else if (name == "capacity") {
      body = cmd_capacity(c, threads);
    } else if (name == "render") {
      body = cmd_render(c);
    }
    if (!json_path.empty()) write_atomic(json_path, json_body);
    try {
      emit(c, body, out);
    } catch (...) {
      if (!json_path.empty()) std::filesystem::remove(json_path);
      throw;
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    err << name << ": done in " << secs << " s\n";
    return 0;
  } catch (const FormatError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const PreconditionError& e) {
    err << "precondition violated: " << e.what() << "\n";
    return 3;
  } catch (const DegenerateVarianceError& e) {
    err << "precondition violated: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    err << "numerical failure: " << e.what() << "\n";
    return 4;
  }
}

}  // namespace boolmodel
