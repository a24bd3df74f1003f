#include "sdgreen/problem.hpp"

namespace sdgreen {

SourceFn builtin_source(const std::string& name) {
  if (name == "zero") return [](double, double) { return 0.0; };
  if (name == "one") return [](double, double) { return 1.0; };
  if (name == "poly")
    return [](double x, double y) { return 1.0 + x + 2.0 * y + x * y; };
  throw std::invalid_argument("builtin_source: unknown source '" + name + "'");
}

}  // namespace sdgreen
