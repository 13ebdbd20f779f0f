#pragma once

#include <functional>
#include <string>
#include <vector>

#include "fraclab/field_io.hpp"
#include "fraclab/verify.hpp"

namespace fraclab::detail {

using CheckTask = std::function<std::vector<Check>()>;

// Runs the tasks in parallel and concatenates their checks in task order.
std::vector<Check> run_tasks(const std::vector<CheckTask>& tasks);

std::vector<std::pair<std::string, std::string>> grid_environment(const std::string& prefix, const Grid& grid);

// Short label for an order, e.g. "s0.5".
std::string order_label(double s);

// |a - b| / max(|a|, |b|), 0 when both vanish.
double relative_change(double a, double b);

}  // namespace fraclab::detail
