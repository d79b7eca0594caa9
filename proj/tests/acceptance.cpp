// Acceptance suite: one pass/fail line per criterion. Thresholds live in the
// criterion implementations and are not configurable.

#include "powemb/verify.hpp"

#include <cstdio>
#include <cstdlib>
#include <string>

int main(int argc, char** argv) {
  const bool verbose = argc > 1 && std::string(argv[1]) == "-v";
  int failed = 0;
  for (int id = 1; id <= powemb::kCriterionCount; ++id) {
    powemb::CriterionResult r;
    try {
      r = powemb::run_criterion(id, 1);
    } catch (const std::exception& e) {
      r.id = id;
      r.title = "error";
      r.details.push_back(e.what());
    }
    std::printf("criterion %d: %s  %s (%.1f s)\n", id, r.pass ? "PASS" : "FAIL", r.title.c_str(), r.seconds);
    if (verbose || !r.pass)
      for (const auto& d : r.details) std::printf("    %s\n", d.c_str());
    std::fflush(stdout);
    if (!r.pass) ++failed;
  }
  std::printf("%d of %d criteria passed\n", powemb::kCriterionCount - failed, powemb::kCriterionCount);
  return failed == 0 ? EXIT_SUCCESS : EXIT_FAILURE;
}
