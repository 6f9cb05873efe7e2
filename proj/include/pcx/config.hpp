#pragma once

#include <atomic>
#include <cstddef>
#include <stdexcept>
#include <string>

namespace pcx {

enum class Errc {
  mixed_model,
  inadmissible,
  precondition,
  hypothesis_failed,
  empty_set,
  search_exhausted,
  budget_exceeded,
  parse,
};

struct Error : std::runtime_error {
  Errc code;
  Error(Errc c, const std::string& msg) : std::runtime_error(msg), code(c) {}
};

[[noreturn]] inline void fail(Errc c, const std::string& msg) { throw Error(c, msg); }

// Process-wide cap on intermediate cell counts (CLI seeds it from PCX_MAX_CELLS).
inline std::atomic<std::size_t>& cell_budget() {
  static std::atomic<std::size_t> budget{100000};
  return budget;
}

inline void check_budget(std::size_t cells) {
  if (cells > cell_budget().load(std::memory_order_relaxed))
    fail(Errc::budget_exceeded,
         "cell budget exceeded: " + std::to_string(cells) + " > " +
             std::to_string(cell_budget().load(std::memory_order_relaxed)));
}

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

}  // namespace pcx
