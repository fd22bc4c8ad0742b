// One line per acceptance criterion; exit status 0 iff all pass.
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <string>

#include <sys/wait.h>

#include "annulus/acceptance.hpp"

namespace {

// Runs `<cli> selftest --quick` and returns its wall time, or -1 when it did
// not complete. Exit status 5 (some criterion failed) still counts as a run.
double time_quick_selftest(const std::string& cli, int& status) {
  const auto t0 = std::chrono::steady_clock::now();
  const std::string cmd = "\"" + cli + "\" selftest --quick > /dev/null 2>&1";
  const int rc = std::system(cmd.c_str());
  const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  status = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
  return status == 0 || status == 5 ? s : -1.0;
}

}  // namespace

int main(int argc, char** argv) {
  std::string cli;
  for (int i = 1; i + 1 < argc; ++i) {
    if (std::string(argv[i]) == "--cli") cli = argv[i + 1];
  }
  annulus::AcceptanceOptions opt;
  bool all = true;
  annulus::run_acceptance(opt, [&](annulus::CriterionResult r) {
    if (r.id == 11 && !cli.empty()) {
      int status = 0;
      const double quick = time_quick_selftest(cli, status);
      r.pass = r.pass && quick >= 0.0 && quick <= 60.0;
      char buf[128];
      std::snprintf(buf, sizeof buf, "; selftest --quick exited %d after %.1f s", status,
                    quick >= 0.0 ? quick : 0.0);
      r.detail += buf;
    }
    all = all && r.pass;
    std::printf("%s\n", annulus::format_result(r).c_str());
    std::fflush(stdout);
  });
  return all ? 0 : 1;
}
