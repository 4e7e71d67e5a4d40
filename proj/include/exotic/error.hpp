#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace exotic {

enum class ErrorKind { MalformedInput, Domain, ResourceLimit, Precondition };

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class MalformedInputError : public Error {
 public:
  explicit MalformedInputError(const std::string& what) : Error(ErrorKind::MalformedInput, what) {}
};

class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what) : Error(ErrorKind::Domain, what) {}
};

/// Raised when a computation would exceed a configured size cap. `flag` names
/// the knob (CLI flag or environment variable) that raises the cap.
class ResourceLimitError : public Error {
 public:
  ResourceLimitError(const std::string& what, double requested, double limit, std::string flag)
      : Error(ErrorKind::ResourceLimit, what), requested_(requested), limit_(limit), flag_(std::move(flag)) {}

  double requested() const noexcept { return requested_; }
  double limit() const noexcept { return limit_; }
  const std::string& flag() const noexcept { return flag_; }

 private:
  double requested_;
  double limit_;
  std::string flag_;
};

/// A precondition of a certified computation failed. Carries the ℓ^p threshold
/// when the failure is a membership failure.
class PreconditionError : public Error {
 public:
  PreconditionError(const std::string& what, std::optional<double> p_star = std::nullopt,
                    bool member_of_intersection = false)
      : Error(ErrorKind::Precondition, what), p_star_(p_star), member_of_intersection_(member_of_intersection) {}

  std::optional<double> p_star() const noexcept { return p_star_; }
  bool member_of_intersection() const noexcept { return member_of_intersection_; }

 private:
  std::optional<double> p_star_;
  bool member_of_intersection_;
};

}  // namespace exotic
