#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace primebound {

/// Thrown when an enumeration would exceed its configured cap.
class GuardExceeded : public std::runtime_error {
public:
  GuardExceeded(std::string guard, std::uint64_t cap)
      : std::runtime_error("guard '" + guard + "' exceeded (cap " +
                           std::to_string(cap) + ")"),
        guard_(std::move(guard)), cap_(cap) {}

  const std::string &guard() const { return guard_; }
  std::uint64_t cap() const { return cap_; }

private:
  std::string guard_;
  std::uint64_t cap_;
};

/// Caps on the exact-but-exponential enumerations.
struct GuardCaps {
  std::uint64_t max_dimension = 2'000'000;
  std::uint64_t max_orbit = 2'000'000;
  std::uint64_t max_subsets = 20'000'000;
  std::uint64_t max_faces = 20'000'000;

  static GuardCaps uniform(std::uint64_t cap) { return {cap, cap, cap, cap}; }
};

} // namespace primebound
