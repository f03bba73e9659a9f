#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "primage/error.hpp"

namespace primage {

// One CLI job. tol is a rational literal; an empty interval means the whole
// line. threads bounds both verification workers and batch concurrency.
struct JobSpec {
  std::string command;
  std::string map_text;
  std::string interval_text;
  std::string kind;  // certify filter: "polynomial" | "regular" | ""
  std::uint64_t seed = 1;
  int samples = 10000;
  std::string tol = "1/1000000000";
  int threads = 1;
  bool timing = false;
};

struct JobResult {
  int exit_code = 0;
  std::string json;   // one line, schema primage.report.v1
  std::string human;  // readable rendering of the same content
};

// Process exit code for a failure category.
int exit_code_for(ErrorKind k);

JobResult run_job(const JobSpec& spec);

// The five-interval invariant table, computed live.
std::string invariant_table();

// Batch runner: one JSON object per nonblank input line, reports in input
// order. Unset job fields fall back to the defaults; unset seeds derive
// from the root seed and the line index.
std::vector<JobResult> run_batch(const std::string& jobs_text, const JobSpec& defaults);

}  // namespace primage
