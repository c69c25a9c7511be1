#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace hforge {

using PointId = std::uint32_t;

/// Default slack for every distance comparison. Chord lengths are irrational,
/// so `a <= b` is always evaluated as `a <= b + eps`.
inline constexpr double kDefaultEps = 1e-9;

/// Sentinel for an unbounded (infinite) integer invariant such as TC_r of a
/// space that is not r-connected.
inline constexpr int kInfinite = std::numeric_limits<int>::max();

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A label or index that does not name a point of the space in use.
class UnknownPoint : public Error {
 public:
  explicit UnknownPoint(const std::string& what) : Error("unknown point: " + what) {}
};

/// Two objects that must live over the same space(s) do not.
class DomainMismatch : public Error {
 public:
  using Error::Error;
};

/// Three-valued answer of every bounded search.
enum class Answer { Yes, No, Unknown };

inline const char* to_string(Answer a) {
  switch (a) {
    case Answer::Yes: return "yes";
    case Answer::No: return "no";
    case Answer::Unknown: return "unknown";
  }
  return "unknown";
}

}  // namespace hforge
