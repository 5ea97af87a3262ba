#pragma once

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace unilab {

/// Dense row-major matrix, sized once at construction.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, const T& fill = T{})
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<T> data_;
};

struct construction_error : std::runtime_error {
  explicit construction_error(const std::string& what) : std::runtime_error(what) {}
};

struct singular_system_error : std::runtime_error {
  explicit singular_system_error(const std::string& what) : std::runtime_error(what) {}
};

struct no_minimum_error : std::runtime_error {
  explicit no_minimum_error(const std::string& what) : std::runtime_error(what) {}
};

/// Runs fn(i) for i in [0, count). Work is partitioned statically over
/// threads; fn(i) must only touch state owned by index i, so results are
/// identical to a serial loop regardless of scheduling. If any call
/// throws, the exception from the lowest failing index is rethrown on the
/// caller's thread after all workers finish.
template <class Fn>
void parallel_for(std::size_t count, Fn&& fn) {
  std::size_t workers =
      std::min<std::size_t>(std::max(1u, std::thread::hardware_concurrency()), count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::size_t> error_index(workers, count);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t i = w; i < count; i += workers) {
        try {
          fn(i);
        } catch (...) {
          errors[w] = std::current_exception();
          error_index[w] = i;
          return;
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  std::size_t first = count;
  std::exception_ptr to_throw;
  for (std::size_t w = 0; w < workers; ++w) {
    if (errors[w] && error_index[w] < first) {
      first = error_index[w];
      to_throw = errors[w];
    }
  }
  if (to_throw) std::rethrow_exception(to_throw);
}

}  // namespace unilab
