// Command-line driver: seeded Monte-Carlo verification of the duality and
// projection-continuity estimates, moduli scans, the asymptotic-order study,
// and the alternating-projections demo. Exit code 0 iff no asserted check
// failed.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "lpproj/lpproj.hpp"

namespace {

std::vector<lpproj::ConvexSet> load_sets(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open set file: " + path);
  nlohmann::json j;
  is >> j;
  std::vector<lpproj::ConvexSet> sets;
  if (j.is_array())
    for (const auto& item : j) sets.push_back(item.get<lpproj::ConvexSet>());
  else
    sets.push_back(j.get<lpproj::ConvexSet>());
  return sets;
}

void print_summary(const lpproj::ExperimentConfig& cfg, const lpproj::Summary& s) {
  std::printf("command:            %s\n", lpproj::command_name(cfg.command));
  std::printf("rows:               %ld\n", s.total);
  std::printf("passed / failed:    %ld / %ld\n", s.passed, s.failed);
  std::printf("asserted failures:  %ld of %ld\n", s.asserted_failed, s.asserted_total);
  std::printf("saturated records:  %ld\n", s.saturated);
  if (s.total > 0)
    std::printf("worst violation:    %.3e (%s)\n", s.worst_violation,
                s.worst_kind.c_str());
  std::printf("verdict:            %s\n", s.asserted_failed == 0 ? "PASS" : "FAIL");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"lpproj: metric projections and continuity estimates in l^p"};
  app.require_subcommand(1);

  lpproj::ExperimentConfig cfg;
  std::string set_file;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--p", cfg.p_grid, "exponent grid (repeatable)");
    cmd->add_option("--dim", cfg.dim, "space dimension");
    cmd->add_option("--samples", cfg.samples, "samples per exponent");
    cmd->add_option("--seed", cfg.seed, "root seed");
    cmd->add_option("--L", cfg.L, "Figiel-type constant, (1, 3.18]");
    cmd->add_option("--N", cfg.N_zr, "free constant of the zr estimate");
    cmd->add_option("--tol", cfg.tol, "solver tolerance");
    cmd->add_option("--radius", cfg.radius, "sampling ball radius");
    cmd->add_option("--set-file", set_file, "JSON file with explicit sets");
    cmd->add_option("--out", cfg.out_path, "report output path");
    cmd->add_option("--format", cfg.format, "report format: csv | json");
  };

  struct Entry {
    lpproj::Command command;
    const char* name;
    const char* help;
  };
  const std::vector<Entry> entries = {
      {lpproj::Command::verify_duality, "verify-duality",
       "duality-mapping inequalities (upper/lower estimates, parallelogram)"},
      {lpproj::Command::verify_projection, "verify-projection",
       "projection continuity bounds, certificates, oracle comparisons"},
      {lpproj::Command::moduli_scan, "moduli-scan",
       "empirical moduli vs the per-exponent bound functions"},
      {lpproj::Command::exponent_study, "exponent-study",
       "log-log slope table of the continuity estimates"},
      {lpproj::Command::alternating_demo, "alternating-demo",
       "alternating projections feasibility demo"},
      {lpproj::Command::run_all, "run-all", "every command in sequence"},
  };
  for (const Entry& e : entries) add_common(app.add_subcommand(e.name, e.help));

  CLI11_PARSE(app, argc, argv);

  for (const Entry& e : entries)
    if (app.got_subcommand(e.name)) cfg.command = e.command;

  try {
    if (!set_file.empty()) cfg.sets = load_sets(set_file);
    cfg.validate();
    for (const lpproj::ConvexSet& s : cfg.sets) lpproj::validate_set(s, cfg.dim);

    lpproj::Summary summary;
    if (cfg.out_path.empty()) {
      summary = lpproj::run_experiment(cfg, lpproj::RowSink{});
    } else {
      std::ofstream os(cfg.out_path);
      if (!os) throw std::runtime_error("cannot open output: " + cfg.out_path);
      lpproj::ReportWriter writer(os, lpproj::parse_format(cfg.format),
                                  lpproj::current_timestamp());
      summary = lpproj::run_experiment(
          cfg, [&writer](const lpproj::ReportRow& row) { writer.write(row); });
      writer.finish();
      if (!os) throw std::runtime_error("write failure: " + cfg.out_path);
    }
    print_summary(cfg, summary);
    return summary.asserted_failed == 0 ? 0 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
