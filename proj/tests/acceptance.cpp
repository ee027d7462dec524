// Acceptance suite: every criterion at its stated size and tolerance.
#include <cstdio>
#include <cstdlib>

#include "cantorlab/verify.hpp"

int main(int argc, char** argv) {
  cantorlab::VerifyOptions opt;
  if (const char* t = std::getenv("CANTORLAB_THREADS")) opt.threads = static_cast<unsigned>(std::atoi(t));
  (void)argc;
  (void)argv;
  int failed = 0;
  cantorlab::run_acceptance(opt, [&](const cantorlab::CriterionResult& r) {
    std::printf("%s %-4s %-28s %s (%.1f s)\n", r.passed ? "PASS" : "FAIL", r.id.c_str(), r.title.c_str(),
                r.summary.c_str(), r.seconds);
    std::fflush(stdout);
    if (!r.passed) ++failed;
  });
  std::printf("%d criteria failed\n", failed);
  return failed == 0 ? 0 : 1;
}
