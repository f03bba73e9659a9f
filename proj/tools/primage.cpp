#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "primage/report.hpp"

namespace {

void print_result(const primage::JobResult& r, bool json) {
  const std::string& s = json ? r.json : r.human;
  std::fwrite(s.data(), 1, s.size(), stdout);
  if (s.empty() || s.back() != '\n') std::fputc('\n', stdout);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"classify one-dimensional images of polynomial and rational maps"};
  app.require_subcommand(0, 1);

  primage::JobSpec spec;
  bool json_out = false;
  bool table = false;
  std::string jobs_file;
  app.add_flag("--json", json_out, "emit one JSON report line per job");
  app.add_flag("--table", table, "print the interval invariant table and exit");
  app.add_flag("--timing", spec.timing, "include wall-clock timing in reports");
  app.add_option("--seed", spec.seed, "root seed for sampling-based verification");
  app.add_option("--samples", spec.samples, "membership sample count for verification");
  app.add_option("--tol", spec.tol, "verification tolerance, a rational such as 1/1000000000");
  app.add_option("--threads", spec.threads, "worker threads for batches and verification");
  app.add_option("--jobs", jobs_file, "run a batch: one JSON job object per line");

  struct SubDef {
    const char* name;
    const char* help;
    bool has_map;
    bool needs_interval;
  };
  const SubDef defs[] = {
      {"classify-interval", "compute (r, p) and certificates for an interval", false, true},
      {"classify-curve", "classify the image of a map on an interval", true, false},
      {"image", "compute the exact image interval of a scalar map", true, false},
      {"decompose", "factor a multivariate map through a univariate one", true, false},
      {"implicitize", "equations cutting out the Zariski closure of the image", true, false},
      {"certify", "emit certificate maps of the requested kind", true, false},
      {"verify", "numerically check the emitted certificates", true, false},
  };
  std::vector<CLI::App*> subs;
  std::vector<std::string> map_args(std::size(defs)), interval_args(std::size(defs));
  std::string kind_arg;
  for (size_t i = 0; i < std::size(defs); ++i) {
    CLI::App* s = app.add_subcommand(defs[i].name, defs[i].help);
    s->fallthrough();
    if (defs[i].has_map)
      s->add_option("map", map_args[i], "map expression, e.g. \"(t^2, t^3)\"")->required();
    auto* iv = s->add_option("interval", interval_args[i],
                             "parameter interval, e.g. \"[0, 1)\"; omitted means (-inf, inf)");
    if (defs[i].needs_interval) iv->required();
    if (std::string(defs[i].name) == "certify")
      s->add_option("--kind", kind_arg, "certificate kind filter: regular or polynomial");
    subs.push_back(s);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  if (table) {
    std::fputs(primage::invariant_table().c_str(), stdout);
    return 0;
  }

  if (!jobs_file.empty()) {
    if (app.get_subcommands().size() > 0) {
      std::fputs("error: --jobs cannot be combined with a subcommand\n", stderr);
      return 2;
    }
    std::ifstream in(jobs_file);
    if (!in) {
      std::fprintf(stderr, "error: cannot open jobs file '%s'\n", jobs_file.c_str());
      return 2;
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    auto results = primage::run_batch(buf.str(), spec);
    int code = 0;
    for (size_t i = 0; i < results.size(); ++i) {
      if (!json_out && i) std::fputc('\n', stdout);
      print_result(results[i], json_out);
      if (code == 0) code = results[i].exit_code;
    }
    return code;
  }

  auto chosen = app.get_subcommands();
  if (chosen.empty()) {
    std::fputs(app.help().c_str(), stderr);
    return 2;
  }
  for (size_t i = 0; i < subs.size(); ++i) {
    if (subs[i] == chosen[0]) {
      spec.command = defs[i].name;
      spec.map_text = map_args[i];
      spec.interval_text = interval_args[i];
    }
  }
  if (spec.command == "certify") spec.kind = kind_arg;

  primage::JobResult r = primage::run_job(spec);
  print_result(r, json_out);
  return r.exit_code;
}
