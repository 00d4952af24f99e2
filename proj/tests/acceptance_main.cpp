// Acceptance runner: executes every verification suite with the default
// configuration and prints one pass/fail line per numbered criterion,
// followed by the per-check worst defects. Exits nonzero if any suite fails.

#include <cstdio>

#include "fn3/verify.hpp"

int main() {
  fn3::RunConfig cfg;
  cfg.seed = 0;

  bool all_pass = true;
  int idx = 0;
  for (const std::string& name : fn3::suite_names()) {
    ++idx;
    fn3::SuiteResult res;
    try {
      res = fn3::run_suite(name, cfg);
    } catch (const std::exception& e) {
      res.name = name;
      res.pass = false;
      res.lines.push_back(std::string("exception: ") + e.what());
    }
    all_pass = all_pass && res.pass;
    std::printf("[%s] criterion %2d  %-18s (samples %d, excluded %d)\n",
                res.pass ? "PASS" : "FAIL", idx, res.name.c_str(), res.samples,
                res.excluded);
    for (const std::string& line : res.lines) std::printf("    %s\n", line.c_str());
  }
  std::printf("%s\n", all_pass ? "ALL CRITERIA PASS" : "ACCEPTANCE FAILURE");
  return all_pass ? 0 : 1;
}
