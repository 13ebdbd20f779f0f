#pragma once

#include <cstddef>
#include <functional>
#include <span>

namespace fraclab {

// Worker count from FRACLAB_THREADS, falling back to hardware concurrency.
std::size_t worker_count();

// Runs body(i) for i in [0, count). Each index is visited exactly once, so
// results written per index do not depend on the number of workers.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

// Pairwise summation with a fixed split order.
double pairwise_sum(std::span<const double> values);

}  // namespace fraclab
