#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace testset {

// Raised when some item pair (or set cover element) cannot be separated by
// any available test.
class InfeasibleError : public std::runtime_error {
 public:
  InfeasibleError(const std::string& what, std::uint64_t first, std::uint64_t second)
      : std::runtime_error(what), first_(first), second_(second) {}

  // Undifferentiable pair {first, second}; for set cover, first is the
  // uncoverable element and second is unused.
  std::uint64_t first() const { return first_; }
  std::uint64_t second() const { return second_; }

 private:
  std::uint64_t first_;
  std::uint64_t second_;
};

// A requested construction or quadratic computation exceeds its size cap.
class SizeCapError : public std::length_error {
 public:
  SizeCapError(const std::string& what, std::uint64_t requested, std::uint64_t cap)
      : std::length_error(what), requested_(requested), cap_(cap) {}
  std::uint64_t requested() const { return requested_; }
  std::uint64_t cap() const { return cap_; }

 private:
  std::uint64_t requested_;
  std::uint64_t cap_;
};

// The caller handed in data that breaks an operation's precondition
// (for example, minimalizing something that is not a test set).
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace testset
