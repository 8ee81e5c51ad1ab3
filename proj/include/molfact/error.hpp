#pragma once

#include <atomic>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace molfact {

enum class ErrorKind {
  invalid_presentation,
  ring_mismatch,
  no_embedding,
  size_guard_exceeded,
  precondition_violation,
  not_certified,
  config_error,
};

inline const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::invalid_presentation: return "invalid-presentation";
    case ErrorKind::ring_mismatch: return "ring-mismatch";
    case ErrorKind::no_embedding: return "no-embedding";
    case ErrorKind::size_guard_exceeded: return "size-guard-exceeded";
    case ErrorKind::precondition_violation: return "precondition-violation";
    case ErrorKind::not_certified: return "not-certified";
    case ErrorKind::config_error: return "config-error";
  }
  return "unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

inline void require(bool cond, ErrorKind kind, const std::string& what) {
  if (!cond) throw Error(kind, what);
}

namespace detail {
inline std::atomic<std::uint64_t>& size_guard_cell() {
  static std::atomic<std::uint64_t> cell{std::uint64_t{1} << 24};
  return cell;
}
}  // namespace detail

/// Largest number of elements any enumeration is allowed to walk.
inline std::uint64_t size_guard() { return detail::size_guard_cell().load(); }

inline void set_size_guard(std::uint64_t limit) {
  require(limit > 0, ErrorKind::config_error, "size guard must be positive");
  detail::size_guard_cell().store(limit);
}

inline void check_size_guard(std::uint64_t size, const std::string& what) {
  if (size > size_guard()) {
    throw Error(ErrorKind::size_guard_exceeded,
                what + " has " + std::to_string(size) + " elements (guard " +
                    std::to_string(size_guard()) + ")");
  }
}

/// RAII override of the size guard, restored on scope exit.
class ScopedSizeGuard {
 public:
  explicit ScopedSizeGuard(std::uint64_t limit) : saved_(size_guard()) { set_size_guard(limit); }
  ~ScopedSizeGuard() { detail::size_guard_cell().store(saved_); }
  ScopedSizeGuard(const ScopedSizeGuard&) = delete;
  ScopedSizeGuard& operator=(const ScopedSizeGuard&) = delete;

 private:
  std::uint64_t saved_;
};

}  // namespace molfact
