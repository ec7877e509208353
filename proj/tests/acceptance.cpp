// Runs every acceptance criterion and prints one PASS/FAIL line per criterion.
// Exit status is nonzero when any criterion fails.

#include <cstdio>
#include <cstdlib>
#include <string>

#include "pvalent/selftest.hpp"

int main(int argc, char** argv) {
  pvalent::SelftestOptions opt;
  if (argc > 1) opt.seed = std::strtoull(argv[1], nullptr, 10);

  const auto results = pvalent::run_acceptance(opt);
  int failed = 0;
  double total = 0.0;
  for (const auto& r : results) {
    total += r.seconds;
    if (!r.pass) ++failed;
    std::printf("[%s] criterion %d %s (%.3f s): %s\n", r.pass ? "PASS" : "FAIL", r.id, r.name.c_str(),
                r.seconds, r.detail.c_str());
    if (r.id == 9)
      for (const auto& e : pvalent::acceptance_audit())
        std::printf("    %-8s %s | %s: derived %.17g printed %.17g%s%s\n", e.diverges ? "DIVERGES" : "agrees",
                    e.subject.c_str(), e.quantity.c_str(), e.derived, e.printed, e.diverges ? " | " : "",
                    e.diverges ? e.note.c_str() : "");
  }
  std::printf("%d/%zu criteria pass, %.2f s total (seed %llu)\n", static_cast<int>(results.size()) - failed,
              results.size(), total, static_cast<unsigned long long>(opt.seed));
  return failed == 0 ? EXIT_SUCCESS : EXIT_FAILURE;
}
