#pragma once

// Serial and OpenMP execution of independent index-addressed tasks. Results
// are always written by index, so both policies produce identical output.

#include <cstddef>
#include <exception>
#include <vector>

namespace jspec {

enum class ExecPolicy { Serial, Parallel };

template <class F>
void for_each_index(std::size_t n, ExecPolicy policy, F&& body) {
  if (policy == ExecPolicy::Serial) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::exception_ptr error;
  const long long count = static_cast<long long>(n);
#pragma omp parallel for schedule(dynamic)
  for (long long i = 0; i < count; ++i) {
    try {
      body(static_cast<std::size_t>(i));
    } catch (...) {
#pragma omp critical(jspec_error)
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
}

template <class T, class F>
std::vector<T> map_indices(std::size_t n, ExecPolicy policy, F&& body) {
  std::vector<T> out(n);
  for_each_index(n, policy, [&](std::size_t i) { out[i] = body(i); });
  return out;
}

}  // namespace jspec
