// Runs every acceptance criterion with pinned seeds and time limits and prints
// one PASS/FAIL line per criterion. Exit status is nonzero if any fails.

#include <chrono>
#include <cstdio>
#include <iostream>

#include "pwrelax/suites.hpp"

int main() {
  using namespace pwrelax;
  constexpr std::uint64_t kSeed = 20240607;
  int failures = 0, k = 0;
  for (const SuiteInfo& info : suite_catalog()) {
    ++k;
    auto t0 = std::chrono::steady_clock::now();
    VerificationReport rep = run_suite(info.name, kSeed);
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    bool in_time = secs < info.time_limit_seconds;
    bool pass = rep.passed() && in_time;
    failures += pass ? 0 : 1;
    std::printf("criterion %2d %-12s %s  %.2fs (limit %.0fs)  %s\n", k, info.name.c_str(), pass ? "PASS" : "FAIL", secs,
                info.time_limit_seconds, info.summary.c_str());
    if (!pass) {
      if (!in_time) std::printf("    over the time limit\n");
      for (const auto& c : rep.checks)
        if (!c.pass) std::printf("    %s: %s %s\n", c.name.c_str(), c.detail.c_str(), c.witness.c_str());
    }
    std::fflush(stdout);
  }
  std::printf("%d of %d criteria passed\n", k - failures, k);
  return failures == 0 ? 0 : 1;
}
