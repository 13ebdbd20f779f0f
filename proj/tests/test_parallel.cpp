#include <doctest.h>

#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <vector>

#include "fraclab/parallel.hpp"

using namespace fraclab;

TEST_CASE("worker count honours FRACLAB_THREADS") {
  const char* old = std::getenv("FRACLAB_THREADS");
  const std::string saved = old ? old : "";
  setenv("FRACLAB_THREADS", "3", 1);
  CHECK(worker_count() == 3);
  setenv("FRACLAB_THREADS", "zero", 1);
  CHECK(worker_count() >= 1);
  if (old) setenv("FRACLAB_THREADS", saved.c_str(), 1);
  else unsetenv("FRACLAB_THREADS");
}

TEST_CASE("parallel_for visits every index once") {
  setenv("FRACLAB_THREADS", "4", 1);
  std::vector<std::atomic<int>> hits(1000);
  parallel_for(hits.size(), [&](std::size_t i) { hits[i].fetch_add(1); });
  for (const auto& h : hits) CHECK(h.load() == 1);
  CHECK_THROWS_AS(parallel_for(100, [](std::size_t i) {
                    if (i == 57) throw std::runtime_error("boom");
                  }),
                  std::runtime_error);
  unsetenv("FRACLAB_THREADS");
}

TEST_CASE("pairwise sum") {
  std::vector<double> v;
  long double exact = 0.0L;
  for (int i = 0; i < 100000; ++i) {
    const double x = 1.0 / (1.0 + i);
    v.push_back(x);
    exact += x;
  }
  CHECK(pairwise_sum(v) == doctest::Approx(static_cast<double>(exact)).epsilon(1e-15));
  CHECK(pairwise_sum({}) == 0.0);
}
