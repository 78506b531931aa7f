#pragma once

#include "alexcomp/convexity.hpp"
#include "alexcomp/extension.hpp"
#include "alexcomp/finite_metric.hpp"

#include <nlohmann/json.hpp>

#include <optional>
#include <stdexcept>
#include <string>

namespace alexcomp {

/// Malformed input document.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class DocFormat { Json, DecryptingCsv };

struct MetricDocument {
  std::string name;
  FiniteMetric metric;
  std::optional<double> kappa;
  std::optional<std::string> basepoint;
};

MetricDocument metric_from_json(const nlohmann::json& j);
nlohmann::json metric_to_json(const MetricDocument& doc);

/// Header row of labels, then rows of squared distances.
MetricDocument metric_from_csv(const std::string& text, const std::string& name = "");
std::string metric_to_csv(const MetricDocument& doc);

/// Parse a metric document from text in either format.
MetricDocument ingest_metric(const std::string& text, DocFormat fmt);

ModelPoint point_from_json(const ModelSpace& s, const nlohmann::json& j);
nlohmann::json point_to_json(const ModelPoint& p);

/// {"kappa", "chart_dim", "targets", "radii", "center"?}
ExtensionInstance instance_from_json(const nlohmann::json& j);
nlohmann::json instance_to_json(const ExtensionInstance& inst);

/// A metric document plus {"chart_dim", "map_kappa"?, "assigned": {label: coords}, "center"?}.
PartialShortMap map_from_json(const nlohmann::json& j);
nlohmann::json map_to_json(const PartialShortMap& f, const std::string& name);

/// {"kappa", "chart_dim", "centers", "radii"}
BallSystem balls_from_json(const nlohmann::json& j);

}  // namespace alexcomp
