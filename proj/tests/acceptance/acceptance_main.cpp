// Runs the verification suite and prints one line per criterion.
#include <cstdio>
#include <cstring>
#include <string>
#include <vector>

#include "fracpm/acceptance.hpp"
#include "fracpm/error.hpp"

int main(int argc, char** argv) {
  fracpm::SuiteOptions opt;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--only") == 0 && i + 1 < argc) {
      opt.only.emplace_back(argv[++i]);
    } else {
      std::fprintf(stderr, "usage: %s [--only ID]...\n", argv[0]);
      return 2;
    }
  }
  try {
    opt.threads = fracpm::worker_count_from_env();
    const auto results = fracpm::run_suite(opt);
    bool all = true;
    for (const auto& r : results) {
      std::string title;
      for (const auto& c : fracpm::criteria()) {
        if (c.id == r.id) title = c.title;
      }
      std::printf("%-4s %s  %-30s %7.1f s  %s\n", r.id.c_str(), r.pass ? "PASS" : "FAIL", title.c_str(), r.seconds,
                  r.detail.c_str());
      for (const auto& [name, v] : r.metrics) std::printf("       %-40s %.10g\n", name.c_str(), v);
      all = all && r.pass;
    }
    return all ? 0 : 1;
  } catch (const fracpm::Error& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return 2;
  }
}
