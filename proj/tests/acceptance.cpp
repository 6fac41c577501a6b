#include <cstdio>

#include "involkit/verify.hpp"

int main() {
  using namespace involkit;
  int failed = 0;
  int index = 0;
  for (const auto& claim : claims()) {
    const CheckResult r = run_claim(claim.id);
    ++index;
    std::printf("%-4s %2d %-26s %s", to_string(r.status).c_str(), index, r.claim.c_str(), r.evidence.c_str());
    if (r.counterexample) std::printf(" | counterexample: %s", r.counterexample->c_str());
    std::printf(" (%.0f ms)\n", r.elapsed_ms);
    std::fflush(stdout);
    failed += r.failed();
  }
  std::printf("%s: %d failed\n", failed ? "FAIL" : "PASS", failed);
  return failed ? 1 : 0;
}
