#pragma once

#include <stdexcept>
#include <string>

namespace shelfplan {

struct EmptyGridError : std::runtime_error {
  explicit EmptyGridError(const std::string& what) : std::runtime_error(what) {}
};

struct SamplingExhaustedError : std::runtime_error {
  explicit SamplingExhaustedError(const std::string& what) : std::runtime_error(what) {}
};

struct PlacementCollisionError : std::runtime_error {
  explicit PlacementCollisionError(const std::string& what) : std::runtime_error(what) {}
};

struct OutOfWorkspaceError : std::runtime_error {
  explicit OutOfWorkspaceError(const std::string& what) : std::runtime_error(what) {}
};

/// Raised by the loaders with the offending file/key in the message.
struct ParseError : std::runtime_error {
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

struct DnfBlowupError : std::runtime_error {
  explicit DnfBlowupError(const std::string& what) : std::runtime_error(what) {}
};

struct MalformedEdgeError : std::runtime_error {
  explicit MalformedEdgeError(const std::string& what) : std::runtime_error(what) {}
};

struct BranchNotVerifiedError : std::runtime_error {
  explicit BranchNotVerifiedError(const std::string& what) : std::runtime_error(what) {}
};

struct IOFailureError : std::runtime_error {
  explicit IOFailureError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace shelfplan
