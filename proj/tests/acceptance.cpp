// Runs the nine acceptance criteria, each against its wall-clock limit, and
// prints one PASS/FAIL line per criterion. Exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <iostream>

#include "hecke/report.hpp"

int main() {
  using namespace hecke;
  RunConfig cfg;
  bool all_ok = true;
  for (const auto& c : acceptance_criteria()) {
    Recorder rec(false);
    auto t0 = std::chrono::steady_clock::now();
    c.run(rec, cfg);
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    int pass = 0, mismatch = 0;
    for (const auto& r : rec.records()) {
      pass += r.verdict == "pass";
      mismatch += r.verdict == "mismatch";
      if (r.verdict == "fail") std::cerr << "  " << text_line(r) << "\n";
    }
    bool ok = !any_failed(rec.records()) && secs < c.limit_seconds;
    all_ok = all_ok && ok;
    std::printf("%s criterion %d (%s): %d checks passed, %d reported mismatches, %.3f s (limit %.0f s)\n",
                ok ? "PASS" : "FAIL", c.id, c.title.c_str(), pass, mismatch, secs, c.limit_seconds);
  }
  return all_ok ? 0 : 1;
}
