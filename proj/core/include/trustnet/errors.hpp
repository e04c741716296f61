#pragma once

#include <stdexcept>
#include <string>

namespace trustnet {

/// Filesystem-level failure (missing file, unwritable destination).
/// The CLI maps this to exit code 2.
class IoError : public std::runtime_error {
  public:
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

/// Scenario parse or validation failure; the message names the offending
/// field. The CLI maps this to exit code 1.
class ScenarioError : public std::runtime_error {
  public:
    explicit ScenarioError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace trustnet
