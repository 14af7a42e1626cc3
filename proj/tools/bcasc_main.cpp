// Command-line frontend: coherence lower bounds, BCASC search, file
// diagnostics, and the reproduction harness for the published benchmark
// tables and curves.

#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "bcasc/analysis.hpp"
#include "bcasc/bounds.hpp"
#include "bcasc/matrix_file.hpp"
#include "bcasc/optimizer.hpp"
#include "bcasc/reference_data.hpp"
#include "bcasc/spherical_code.hpp"

namespace {

using nlohmann::json;
using namespace bcasc;

// Shortest representation that round-trips, for CSV output.
std::string format_double(double v) {
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string field_name(Field f) {
  return f == Field::Real ? "real" : "complex";
}

std::string regime_name(BoundRegime r) {
  switch (r) {
    case BoundRegime::WelchRegime: return "WelchRegime";
    case BoundRegime::OrthoplexRegime: return "OrthoplexRegime";
    default: return "LargeM";
  }
}

std::string mode_name(ForceMode mode) {
  switch (mode) {
    case ForceMode::Plain: return "plain";
    case ForceMode::PhaseSum: return "ksum";
    case ForceMode::RealAntipodal: return "real";
    default: return "integral";
  }
}

json config_to_json(const OptimizerConfig& c) {
  return json{
      {"alpha_init", c.alpha_init},
      {"epsilon", c.epsilon},
      {"nu_start", c.nu_start},
      {"nu_max", c.nu_max},
      {"include_nu_max", c.include_nu_max},
      {"i_max", c.i_max},
      {"force_mode", mode_name(c.force.mode)},
      {"k", c.force.k},
      {"quadrature",
       {{"initial_nodes", c.force.quadrature.initial_nodes},
        {"max_nodes", c.force.quadrature.max_nodes},
        {"rel_tol", c.force.quadrature.rel_tol}}},
      {"accel",
       {{"enabled", c.accel.enabled},
        {"growth", c.accel.growth},
        {"alpha_max", c.accel.alpha_max},
        {"direction_cos_min", c.accel.direction_cos_min}}},
      {"rng_seed", c.rng_seed},
      {"runs", c.runs},
  };
}

json report_to_json(const RunReport& r) {
  json stages = json::array();
  for (const auto& s : r.converged_per_nu) {
    stages.push_back({{"nu", s.nu},
                      {"iterations", s.iterations},
                      {"fixed_point_reached", s.fixed_point_reached}});
  }
  json history = json::array();
  for (const auto& h : r.coherence_history) {
    history.push_back({h.nu, h.iteration, h.coherence});
  }
  return json{{"coherence", r.coherence},
              {"wall_time_s", r.wall_time_s},
              {"quadrature_flags", r.quadrature_flags},
              {"run_index", r.run_index},
              {"run_seed", r.run_seed},
              {"converged_per_nu", stages},
              {"coherence_history", history},
              {"config", config_to_json(r.config)}};
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << contents;
  if (!out) throw std::runtime_error("failed writing " + path);
}

json bound_set_to_json(const BoundSet& b) {
  json j{{"n", b.n},
         {"m", b.m},
         {"field", field_name(b.field)},
         {"welch", b.welch},
         {"orthoplex", b.orthoplex},
         {"mukkavilli", b.mukkavilli},
         {"composite", b.composite},
         {"regime", regime_name(b.regime)},
         {"mwbe_possible", b.mwbe_possible},
         {"extension", b.extension}};
  if (b.levenshtein) {
    j["levenshtein"] = *b.levenshtein;
  } else {
    j["levenshtein"] = nullptr;
  }
  const auto range = orthoplex_achievable_range(b.n, b.field);
  j["orthoplex_achievable_m"] = {{"above", range.first},
                                 {"up_to", range.second}};
  return j;
}

// ---------------------------------------------------------------------------
// bounds subcommand

struct BoundsOptions {
  int n = 0;
  int m = 0;
  std::string field = "complex";
  bool as_json = false;
  bool as_csv = false;
};

int run_bounds(const BoundsOptions& opt) {
  const Field field = opt.field == "real" ? Field::Real : Field::Complex;
  const BoundSet b = composite_bound(opt.n, opt.m, field);
  if (opt.as_json) {
    std::cout << bound_set_to_json(b).dump(2) << "\n";
    return 0;
  }
  if (opt.as_csv) {
    std::cout << "n,m,field,welch,orthoplex,levenshtein,mukkavilli,composite,"
                 "regime,mwbe_possible,extension\n";
    std::cout << b.n << ',' << b.m << ',' << field_name(b.field) << ','
              << format_double(b.welch) << ',' << format_double(b.orthoplex)
              << ','
              << (b.levenshtein ? format_double(*b.levenshtein) : std::string())
              << ',' << format_double(b.mukkavilli) << ','
              << format_double(b.composite) << ',' << regime_name(b.regime)
              << ',' << (b.mwbe_possible ? "true" : "false") << ','
              << (b.extension ? "true" : "false") << "\n";
    return 0;
  }
  const auto range = orthoplex_achievable_range(b.n, b.field);
  std::cout << "coherence lower bounds for N=" << b.n << ", M=" << b.m << " ("
            << field_name(b.field) << ")\n";
  std::cout << "  welch        " << format_double(b.welch) << "\n";
  std::cout << "  orthoplex    " << format_double(b.orthoplex)
            << "   (achievable for " << range.first << " < M <= "
            << range.second << ")\n";
  std::cout << "  levenshtein  "
            << (b.levenshtein ? format_double(*b.levenshtein)
                              : std::string("n/a (negative numerator)"))
            << "\n";
  std::cout << "  mukkavilli   " << format_double(b.mukkavilli) << "\n";
  std::cout << "  composite    " << format_double(b.composite) << "   ["
            << regime_name(b.regime) << "]"
            << (b.extension ? "  (real-field composition is an extension)"
                            : "")
            << "\n";
  std::cout << "  mwbe_possible " << (b.mwbe_possible ? "yes" : "no")
            << " (necessary condition only)\n";
  return 0;
}

// ---------------------------------------------------------------------------
// optimize subcommand

struct OptimizeOptions {
  int n = 0;
  int m = 0;
  std::string field = "complex";
  int runs = 10;
  std::uint64_t seed = 1;
  std::string mode;  // empty = default for field
  int k = 22;
  std::string out;
  std::string report_out;
  OptimizerConfig config;  // schedule fields; force/seed/runs filled below
  bool exclude_nu_max = false;
  bool no_accel = false;
};

ForceMode parse_mode(const std::string& name) {
  if (name == "integral") return ForceMode::PhaseIntegral;
  if (name == "ksum") return ForceMode::PhaseSum;
  if (name == "plain") return ForceMode::Plain;
  if (name == "real") return ForceMode::RealAntipodal;
  throw std::invalid_argument("unknown mode '" + name + "'");
}

std::string default_out_path(int n, int m) {
  return "bcasc_n" + std::to_string(n) + "_m" + std::to_string(m) +
         ".bcasc.json";
}

std::string default_report_path(std::string out) {
  const std::string suffix = ".bcasc.json";
  if (out.size() > suffix.size() &&
      out.compare(out.size() - suffix.size(), suffix.size(), suffix) == 0) {
    out.resize(out.size() - suffix.size());
  }
  return out + ".report.json";
}

int run_optimize(OptimizeOptions opt) {
  const Field field = opt.field == "real" ? Field::Real : Field::Complex;
  if (opt.n < 1 || opt.m < 2) {
    throw std::invalid_argument("optimize requires n >= 1 and m >= 2");
  }

  OptimizerConfig config = opt.config;
  config.rng_seed = opt.seed;
  config.runs = opt.runs;
  config.include_nu_max = !opt.exclude_nu_max;
  config.accel.enabled = !opt.no_accel;
  config.accel.alpha_max = std::max(config.accel.alpha_max, config.alpha_init);
  if (opt.mode.empty()) {
    config.force.mode =
        field == Field::Real ? ForceMode::RealAntipodal : ForceMode::PhaseIntegral;
  } else {
    config.force.mode = parse_mode(opt.mode);
  }
  config.force.k = opt.k;
  if (field == Field::Real && (config.force.mode == ForceMode::PhaseSum ||
                               config.force.mode == ForceMode::PhaseIntegral)) {
    throw std::invalid_argument(
        "mode '" + mode_name(config.force.mode) +
        "' is not closed under the real field; use --mode real or plain");
  }
  if (field == Field::Complex && config.force.mode == ForceMode::RealAntipodal) {
    throw std::invalid_argument("--mode real requires --field real");
  }
  config.validate();

  const MultiStartResult result = multi_start(opt.n, opt.m, field, config);

  for (const auto& run : result.all) {
    long total_iters = 0;
    bool all_fixed = !run.converged_per_nu.empty();
    for (const auto& s : run.converged_per_nu) {
      total_iters += s.iterations;
      all_fixed = all_fixed && s.fixed_point_reached;
    }
    std::cout << "run " << run.run_index << ": coherence "
              << format_double(run.coherence) << ", " << total_iters
              << " iterations, "
              << (all_fixed ? "all stages at fixed point"
                            : "iteration cap hit in some stage")
              << ", " << format_double(run.wall_time_s) << " s\n";
  }
  for (const auto& f : result.failures) std::cout << "failed: " << f << "\n";

  double worst = result.best.coherence, mean = 0.0;
  for (const auto& run : result.all) {
    worst = std::max(worst, run.coherence);
    mean += run.coherence;
  }
  mean /= static_cast<double>(result.all.size());
  std::cout << "best " << format_double(result.best.coherence) << "  worst "
            << format_double(worst) << "  mean " << format_double(mean)
            << "\n";
  if (opt.m > opt.n) {
    const BoundSet b = composite_bound(opt.n, opt.m, field);
    std::cout << "composite bound " << format_double(b.composite) << " ["
              << regime_name(b.regime) << "], gap "
              << format_double(result.best.coherence - b.composite) << "\n";
  }

  const std::string out_path =
      opt.out.empty() ? default_out_path(opt.n, opt.m) : opt.out;
  const std::string report_path =
      opt.report_out.empty() ? default_report_path(out_path) : opt.report_out;

  MatrixFileMetadata meta;
  meta.coherence = result.best.coherence;
  meta.config_digest = config_digest(config_to_json(config).dump());
  meta.rng_seed = config.rng_seed;
  write_file(out_path, serialize_matrix_file(result.best.code, meta));

  json report{{"n", opt.n},
              {"m", opt.m},
              {"field", field_name(field)},
              {"config", config_to_json(config)},
              {"best_run_index", result.best.run_index},
              {"best", report_to_json(result.best)},
              {"failures", result.failures}};
  json runs = json::array();
  for (const auto& run : result.all) runs.push_back(report_to_json(run));
  report["runs"] = runs;
  write_file(report_path, report.dump(2) + "\n");

  std::cout << "wrote " << out_path << " and " << report_path << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// analyze subcommand

struct AnalyzeOptions {
  std::string file;
  bool as_json = false;
  bool as_csv = false;
};

int run_analyze(const AnalyzeOptions& opt) {
  std::ifstream in(opt.file, std::ios::binary);
  if (!in) {
    std::cerr << "cannot open " << opt.file << "\n";
    return 2;
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  const ParsedMatrixFile parsed = parse_matrix_file(buffer.str());
  const SphericalCode& code = parsed.code;

  const CoherenceReport coh = coherence(code);
  const FrameDiagnostics diag = analyze_frame(code);
  std::optional<BoundSet> bounds;
  if (code.size() > code.dim()) {
    bounds = composite_bound(code.dim(), code.size(), code.field());
  }

  if (opt.as_json) {
    json j{{"n", code.dim()},
           {"m", code.size()},
           {"field", field_name(code.field())},
           {"coherence",
            {{"value", coh.value},
             {"argmax_pair", {coh.argmax_pair.first, coh.argmax_pair.second}},
             {"gram_offdiag_min", coh.gram_offdiag_min},
             {"gram_offdiag_max", coh.gram_offdiag_max},
             {"offdiag_rms", coh.offdiag_rms}}},
           {"frame",
            {{"frame_potential", diag.frame_potential},
             {"wbe_rms", diag.wbe_rms},
             {"is_wbe", diag.is_wbe},
             {"is_mwbe", diag.is_mwbe},
             {"is_tight", diag.is_tight},
             {"tight_residual", diag.tight_residual},
             {"is_equiangular", diag.is_equiangular},
             {"equiangle_spread", diag.equiangle_spread}}},
           {"metadata_coherence", parsed.metadata.coherence}};
    if (bounds) {
      j["bounds"] = bound_set_to_json(*bounds);
      j["gap_to_composite"] = coh.value - bounds->composite;
    }
    if (diag.mub_partition) {
      const auto& p = *diag.mub_partition;
      j["mub"] = {{"blocks", p.blocks},
                  {"cross_min", p.cross_min},
                  {"cross_max", p.cross_max},
                  {"cross_mean", p.cross_mean},
                  {"is_mub", p.is_mub}};
    }
    std::cout << j.dump(2) << "\n";
    return 0;
  }

  if (opt.as_csv) {
    std::cout << "n,m,field,coherence,offdiag_rms,composite,gap,frame_potential,"
                 "is_tight,is_equiangular,is_mwbe,mub_blocks\n";
    std::cout << code.dim() << ',' << code.size() << ','
              << field_name(code.field()) << ',' << format_double(coh.value)
              << ',' << format_double(coh.offdiag_rms) << ','
              << (bounds ? format_double(bounds->composite) : std::string())
              << ','
              << (bounds ? format_double(coh.value - bounds->composite)
                         : std::string())
              << ',' << format_double(diag.frame_potential) << ','
              << (diag.is_tight ? "true" : "false") << ','
              << (diag.is_equiangular ? "true" : "false") << ','
              << (diag.is_mwbe ? "true" : "false") << ','
              << (diag.mub_partition ? diag.mub_partition->blocks.size() : 0)
              << "\n";
    return 0;
  }

  std::cout << opt.file << ": N=" << code.dim() << ", M=" << code.size()
            << " (" << field_name(code.field()) << ")\n";
  std::cout << "coherence " << format_double(coh.value) << " at pair ("
            << coh.argmax_pair.first << ", " << coh.argmax_pair.second
            << "), off-diagonal rms " << format_double(coh.offdiag_rms)
            << ", min " << format_double(coh.gram_offdiag_min) << "\n";
  if (bounds) {
    std::cout << "composite bound " << format_double(bounds->composite)
              << " [" << regime_name(bounds->regime) << "], gap "
              << format_double(coh.value - bounds->composite) << "\n";
  } else {
    std::cout << "composite bound n/a (M <= N)\n";
  }
  std::cout << "frame potential " << format_double(diag.frame_potential)
            << " (tight target "
            << format_double(static_cast<double>(code.size()) * code.size() /
                             code.dim())
            << "), tightness residual "
            << format_double(diag.tight_residual) << "\n";
  std::cout << "tight: " << (diag.is_tight ? "yes" : "no")
            << "  equiangular: " << (diag.is_equiangular ? "yes" : "no")
            << " (spread " << format_double(diag.equiangle_spread) << ")"
            << "  wbe: " << (diag.is_wbe ? "yes" : "no")
            << "  mwbe: " << (diag.is_mwbe ? "yes" : "no") << "\n";
  if (diag.mub_partition) {
    const auto& p = *diag.mub_partition;
    std::cout << "orthonormal block partition: " << p.blocks.size()
              << " blocks of " << code.dim() << " {";
    for (size_t b = 0; b < p.blocks.size(); ++b) {
      std::cout << (b ? " |" : "");
      for (int v : p.blocks[b]) std::cout << ' ' << v;
    }
    std::cout << " }\n";
    std::cout << "cross-block moduli in [" << format_double(p.cross_min)
              << ", " << format_double(p.cross_max) << "], mean "
              << format_double(p.cross_mean) << ", MUB structure: "
              << (p.is_mub ? "yes" : "no") << "\n";
  } else {
    std::cout << "orthonormal block partition: none found\n";
  }
  return 0;
}

// ---------------------------------------------------------------------------
// reproduce subcommand

struct ReproduceOptions {
  std::string target;
  std::string budget = "quick";
  std::string out;
  std::uint64_t seed = 1;
};

struct ReproJob {
  int n = 0;
  int m = 0;
  ForceMode mode = ForceMode::PhaseIntegral;
  int k = 22;
  std::optional<double> reference;
  bool budget_limited = false;
  bool skip = false;  // emit a gap row without running
};

OptimizerConfig budget_config(const std::string& budget) {
  OptimizerConfig config;
  if (budget == "quick") {
    config.runs = 3;
    config.nu_max = 1 << 8;
    config.i_max = 10000;
  } else {
    config.runs = 10;
    config.nu_max = 1 << 10;
    config.i_max = 100000;
  }
  return config;
}

std::vector<ReproJob> build_jobs(const std::string& target) {
  std::vector<ReproJob> jobs;
  if (target == "table1") {
    for (const auto& row : reference::kTable1) {
      ReproJob job{.n = row.n, .m = row.m, .reference = row.bcasc};
      if (row.n == 4 && row.m == 64) {
        // integral mode on (4,64) is far beyond desk scale
        job.mode = ForceMode::PhaseSum;
        job.k = 22;
        job.budget_limited = true;
      }
      jobs.push_back(job);
    }
  } else if (target == "table2") {
    for (const auto& row : reference::kTable2) {
      jobs.push_back({.n = row.n, .m = row.m, .reference = row.bcasc});
    }
  } else if (target == "table3") {
    for (const auto& row : reference::kTable3) {
      ReproJob integral{.n = row.n, .m = row.m,
                        .reference = row.integral_coherence};
      if (row.n == 4 && row.m == 64) {
        integral.budget_limited = true;
        integral.skip = true;
      }
      jobs.push_back(integral);
      jobs.push_back({.n = row.n, .m = row.m, .mode = ForceMode::PhaseSum,
                      .k = 22, .reference = row.ksum22_coherence});
    }
  } else if (target == "fig2") {
    for (size_t i = 0; i < reference::kFig2BcascBest.size(); ++i) {
      jobs.push_back({.n = 3, .m = reference::kFig2MFirst + static_cast<int>(i),
                      .reference = reference::kFig2BcascBest[i]});
    }
  } else if (target == "fig4") {
    for (const auto& series : reference::kFig4) {
      if (!((series.n == 2 && series.m == 8) ||
            (series.n == 4 && series.m == 16))) {
        continue;  // remaining constellations are beyond desk scale per K
      }
      for (int k = 1; k <= 24; ++k) {
        jobs.push_back({.n = series.n, .m = series.m,
                        .mode = ForceMode::PhaseSum, .k = k,
                        .reference = series.by_k[k - 1]});
      }
    }
  } else {
    throw std::invalid_argument("unknown target '" + target + "'");
  }
  return jobs;
}

int run_reproduce(const ReproduceOptions& opt) {
  if (opt.budget != "quick" && opt.budget != "full") {
    throw std::invalid_argument("budget must be quick or full");
  }
  const std::vector<ReproJob> jobs = build_jobs(opt.target);

  std::ofstream file_out;
  if (!opt.out.empty()) {
    file_out.open(opt.out, std::ios::binary);
    if (!file_out) throw std::runtime_error("cannot open " + opt.out);
  }
  std::ostream& csv = opt.out.empty() ? std::cout : file_out;

  csv << "n,m,method,k,coherence,bound,reference,runtime_s,budget_limited\n";
  for (size_t idx = 0; idx < jobs.size(); ++idx) {
    const ReproJob& job = jobs[idx];
    const std::string method = mode_name(job.mode);
    const BoundSet bound = composite_bound(job.n, job.m, Field::Complex);
    std::cerr << "[" << (idx + 1) << "/" << jobs.size() << "] N=" << job.n
              << " M=" << job.m << " " << method
              << (job.mode == ForceMode::PhaseSum
                      ? " K=" + std::to_string(job.k)
                      : std::string())
              << (job.skip ? " (skipped: beyond budget)" : "") << "\n";

    std::string coherence_s, runtime_s;
    if (!job.skip) {
      OptimizerConfig config = budget_config(opt.budget);
      config.rng_seed = opt.seed;
      config.force.mode = job.mode;
      config.force.k = job.k;
      const auto t0 = std::chrono::steady_clock::now();
      const MultiStartResult result =
          multi_start(job.n, job.m, Field::Complex, config);
      const double elapsed =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
              .count();
      coherence_s = format_double(result.best.coherence);
      runtime_s = format_double(elapsed);
    }

    csv << job.n << ',' << job.m << ',' << method << ','
        << (job.mode == ForceMode::PhaseSum ? std::to_string(job.k)
                                            : std::string())
        << ',' << coherence_s << ',' << format_double(bound.composite) << ','
        << (job.reference ? format_double(*job.reference) : std::string())
        << ',' << runtime_s << ','
        << (job.budget_limited ? "true" : "false") << "\n";
    csv.flush();
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Best Complex Antipodal Spherical Codes: minimal-coherence "
               "vector set search and diagnostics"};
  app.require_subcommand(1);

  BoundsOptions bounds_opt;
  auto* bounds_cmd = app.add_subcommand(
      "bounds", "Coherence lower bounds and the composite-bound regime");
  bounds_cmd->add_option("--n", bounds_opt.n, "dimension N")->required();
  bounds_cmd->add_option("--m", bounds_opt.m, "number of vectors M")->required();
  bounds_cmd->add_option("--field", bounds_opt.field, "complex or real")
      ->check(CLI::IsMember({"complex", "real"}));
  bounds_cmd->add_flag("--json", bounds_opt.as_json, "JSON output");
  bounds_cmd->add_flag("--csv", bounds_opt.as_csv, "CSV output");

  OptimizeOptions optimize_opt;
  auto* optimize_cmd = app.add_subcommand(
      "optimize", "Search a minimal-coherence vector set (best of --runs)");
  optimize_cmd->add_option("--n", optimize_opt.n, "dimension N")->required();
  optimize_cmd->add_option("--m", optimize_opt.m, "number of vectors M")
      ->required();
  optimize_cmd->add_option("--field", optimize_opt.field, "complex or real")
      ->check(CLI::IsMember({"complex", "real"}));
  optimize_cmd->add_option("--runs", optimize_opt.runs, "independent seeds");
  optimize_cmd->add_option("--seed", optimize_opt.seed, "base RNG seed");
  optimize_cmd->add_option("--mode", optimize_opt.mode,
                           "integral|ksum|plain|real (default: integral, or "
                           "real for --field real)")
      ->check(CLI::IsMember({"integral", "ksum", "plain", "real"}));
  optimize_cmd->add_option("--k", optimize_opt.k, "phase points for ksum");
  optimize_cmd->add_option("--out", optimize_opt.out, "matrix file path");
  optimize_cmd->add_option("--report", optimize_opt.report_out,
                           "run report path");
  optimize_cmd->add_option("--alpha-init", optimize_opt.config.alpha_init,
                           "initial damping factor");
  optimize_cmd->add_option("--epsilon", optimize_opt.config.epsilon,
                           "fixed-point residual threshold");
  optimize_cmd->add_option("--nu-start", optimize_opt.config.nu_start,
                           "first exponent of the doubling ladder");
  optimize_cmd->add_option("--nu-max", optimize_opt.config.nu_max,
                           "last exponent (power of two)");
  optimize_cmd->add_option("--i-max", optimize_opt.config.i_max,
                           "iteration cap per stage");
  optimize_cmd->add_flag("--exclude-nu-max", optimize_opt.exclude_nu_max,
                         "stop the ladder before nu_max");
  optimize_cmd->add_flag("--no-accel", optimize_opt.no_accel,
                         "disable adaptive per-point damping");
  optimize_cmd->add_option("--accel-growth", optimize_opt.config.accel.growth,
                           "damping growth factor");
  optimize_cmd->add_option("--accel-alpha-max",
                           optimize_opt.config.accel.alpha_max,
                           "damping upper bound");
  optimize_cmd->add_option("--accel-cos-min",
                           optimize_opt.config.accel.direction_cos_min,
                           "direction-stability cosine threshold");
  optimize_cmd->add_option("--quad-initial",
                           optimize_opt.config.force.quadrature.initial_nodes,
                           "initial quadrature nodes");
  optimize_cmd->add_option("--quad-max",
                           optimize_opt.config.force.quadrature.max_nodes,
                           "maximum quadrature nodes");
  optimize_cmd->add_option("--quad-tol",
                           optimize_opt.config.force.quadrature.rel_tol,
                           "quadrature direction tolerance");

  AnalyzeOptions analyze_opt;
  auto* analyze_cmd = app.add_subcommand(
      "analyze", "Coherence, bounds, and frame diagnostics of a matrix file");
  analyze_cmd->add_option("file", analyze_opt.file, "matrix file (.bcasc.json)")
      ->required();
  analyze_cmd->add_flag("--json", analyze_opt.as_json, "JSON output");
  analyze_cmd->add_flag("--csv", analyze_opt.as_csv, "CSV output");

  ReproduceOptions reproduce_opt;
  auto* reproduce_cmd = app.add_subcommand(
      "reproduce", "Re-run a published benchmark grid and emit CSV");
  reproduce_cmd
      ->add_option("--target", reproduce_opt.target,
                   "table1|table2|table3|fig2|fig4")
      ->required()
      ->check(CLI::IsMember({"table1", "table2", "table3", "fig2", "fig4"}));
  reproduce_cmd->add_option("--budget", reproduce_opt.budget, "quick|full")
      ->check(CLI::IsMember({"quick", "full"}));
  reproduce_cmd->add_option("--out", reproduce_opt.out, "CSV path (default stdout)");
  reproduce_cmd->add_option("--seed", reproduce_opt.seed, "base RNG seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (bounds_cmd->parsed()) return run_bounds(bounds_opt);
    if (optimize_cmd->parsed()) return run_optimize(optimize_opt);
    if (analyze_cmd->parsed()) return run_analyze(analyze_opt);
    if (reproduce_cmd->parsed()) return run_reproduce(reproduce_opt);
  } catch (const MatrixFileError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
