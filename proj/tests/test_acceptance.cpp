#include <chrono>
#include <cstdio>
#include <stdexcept>
#include <string>

#include "doctest.h"
#include "oco/acceptance.hpp"

using namespace oco;

// Every release-gate criterion must hold, and the whole gate must finish in
// well under ten minutes.
TEST_CASE("release gate criteria") {
  const std::string artifact_dir = "acceptance_artifacts";
  const auto t0 = std::chrono::steady_clock::now();
  for (const int id : acceptance_ids()) {
    const criterion_result r = run_criterion(id, artifact_dir);
    const std::string line = format_criterion_line(r);
    std::printf("%s\n", line.c_str());
    std::fflush(stdout);
    INFO(line);
    CHECK(r.pass);
  }
  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  CHECK(elapsed < 600.0);
}

TEST_CASE("criterion runner validates ids and formats lines") {
  CHECK_THROWS_AS(run_criterion(0, "acceptance_artifacts"), std::invalid_argument);
  CHECK_THROWS_AS(run_criterion(19, "acceptance_artifacts"), std::invalid_argument);
  CHECK(acceptance_ids().size() == 18);

  criterion_result r;
  r.id = 3;
  r.name = "sample";
  r.pass = true;
  r.observed = 0.5;
  r.limit = 1.0;
  r.detail = "why";
  CHECK(format_criterion_line(r) == "criterion_03 PASS  sample  observed=0.5 limit=1 | why");
  r.pass = false;
  r.detail.clear();
  CHECK(format_criterion_line(r) == "criterion_03 FAIL  sample  observed=0.5 limit=1");
}
