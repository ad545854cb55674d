// One line per acceptance criterion; details for failures go to stderr.
#include <algorithm>
#include <cstdio>
#include <iostream>
#include <thread>

#include "wordlogic/acceptance.hpp"

using namespace wordlogic::theorems;

int main() {
  AcceptanceOptions opt;
  opt.run.jobs = std::max(1u, std::min(8u, std::thread::hardware_concurrency()));
  opt.corpus.corpus_dir = WORDLOGIC_CORPUS_DIR;

  bool ok = true;
  acceptance_suite(opt, [&](const CriterionResult& c) {
    double secs = 0;
    for (const auto& r : c.reports) secs += r.wall_time.count();
    std::printf("criterion %2d: %s  %s  (%.1f s)\n", c.number, c.passed ? "PASS" : "FAIL", c.title.c_str(), secs);
    std::fflush(stdout);
    if (!c.passed) {
      for (const auto& r : c.reports) std::cerr << to_table(r, 6);
    }
    ok = ok && (c.passed || !c.gating);
  });
  return ok ? 0 : 1;
}
