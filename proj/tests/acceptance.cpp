// Runs every verification criterion and prints one pass/fail line each.

#include <cstdio>
#include <cstdlib>

#include "qcorr/verify.hpp"

int main(int argc, char** argv) {
  std::uint64_t seed = 42;
  if (const char* env = std::getenv("QCORR_SEED")) seed = std::strtoull(env, nullptr, 10);
  if (argc > 1) seed = std::strtoull(argv[1], nullptr, 10);

  bool all_pass = true;
  for (const auto& r : qcorr::verify::run_suite("all", seed)) {
    std::printf("%s criterion %2d: %s%s%s%s\n", r.pass ? "PASS" : "FAIL", r.id, r.name.c_str(),
                r.detail.empty() ? "" : " (", r.detail.c_str(), r.detail.empty() ? "" : ")");
    all_pass = all_pass && r.pass;
  }
  return all_pass ? 0 : 1;
}
