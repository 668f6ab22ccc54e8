#pragma once
#include <stdexcept>
#include <string>

namespace riemap {

/// Metric not symmetric positive definite at a queried point.
struct degenerate_metric_error : std::runtime_error {
  explicit degenerate_metric_error(const std::string& what)
      : std::runtime_error(what) {}
};

/// A grid operation needed more boundary margin than the data provides.
struct margin_error : std::runtime_error {
  explicit margin_error(const std::string& what) : std::runtime_error(what) {}
};

/// Map values (or flow iterates) left the target chart domain.
struct chart_domain_error : std::runtime_error {
  explicit chart_domain_error(const std::string& what)
      : std::runtime_error(what) {}
};

/// A Lagrangian is missing callbacks needed by the requested operation.
struct unsupported_lagrangian_error : std::runtime_error {
  explicit unsupported_lagrangian_error(const std::string& what)
      : std::runtime_error(what) {}
};

/// Supplied partial derivatives disagree with finite differences.
struct callback_consistency_error : std::runtime_error {
  explicit callback_consistency_error(const std::string& what)
      : std::runtime_error(what) {}
};

/// Config file / schema problems (CLI exit code 2).
struct config_error : std::runtime_error {
  explicit config_error(const std::string& what) : std::runtime_error(what) {}
};

/// NaN found where a finite field is required.
struct nan_error : std::runtime_error {
  explicit nan_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace riemap
