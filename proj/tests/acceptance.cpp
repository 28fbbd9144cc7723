// Acceptance run: one PASS/FAIL line per criterion. Pass --fast for the coarse grids.
#include <cstdio>
#include <cstring>

#include "pluripot/acceptance.hpp"

int main(int argc, char** argv) {
  pluripot::AcceptanceOptions opt;
  for (int i = 1; i < argc; ++i)
    if (std::strcmp(argv[i], "--fast") == 0) opt.preset = pluripot::Preset::Fast;
  int failed = 0;
  pluripot::run_acceptance(opt, [&](const pluripot::CriterionResult& r) {
    std::printf("%s\n", pluripot::format_row(r).c_str());
    std::fflush(stdout);
    if (!r.pass) ++failed;
  });
  std::printf("%d of %d criteria passed (preset %s)\n", pluripot::kCriterionCount - failed, pluripot::kCriterionCount,
              pluripot::to_string(opt.preset).c_str());
  return failed == 0 ? 0 : 1;
}
