#include "alexcomp/io.hpp"

#include <cmath>
#include <sstream>

namespace alexcomp {

using nlohmann::json;

namespace {

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw InputError(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

double number(const json& j, const char* what) {
  if (!j.is_number()) throw InputError(std::string(what) + " must be a number");
  return j.get<double>();
}

int integer(const json& j, const char* what) {
  if (!j.is_number_integer()) throw InputError(std::string(what) + " must be an integer");
  return j.get<int>();
}

std::vector<double> numbers(const json& j, const char* what) {
  if (!j.is_array()) throw InputError(std::string(what) + " must be an array");
  std::vector<double> v;
  for (const json& x : j) v.push_back(number(x, what));
  return v;
}

std::vector<ModelPoint> points(const ModelSpace& s, const json& j, const char* what) {
  if (!j.is_array()) throw InputError(std::string(what) + " must be an array of points");
  std::vector<ModelPoint> v;
  for (const json& x : j) v.push_back(point_from_json(s, x));
  return v;
}

FiniteMetric checked_metric(std::vector<std::string> labels, const Mat& d) {
  try {
    return FiniteMetric(std::move(labels), d);
  } catch (const GeometryError& e) {
    throw InputError(e.what());
  }
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    const auto b = cell.find_first_not_of(" \t\r");
    const auto e = cell.find_last_not_of(" \t\r");
    out.push_back(b == std::string::npos ? "" : cell.substr(b, e - b + 1));
  }
  return out;
}

}  // namespace

MetricDocument metric_from_json(const json& j) {
  MetricDocument doc;
  if (j.contains("name")) doc.name = j.at("name").get<std::string>();
  const json& d = field(j, "d");
  if (!d.is_array()) throw InputError("\"d\" must be a square array");
  const auto n = static_cast<Eigen::Index>(d.size());
  Mat m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (!d[i].is_array() || static_cast<Eigen::Index>(d[i].size()) != n) throw InputError("\"d\" must be square");
    for (Eigen::Index k = 0; k < n; ++k) {
      const json& x = d[i][k];
      m(i, k) = x.is_null() ? std::nan("") : number(x, "distance");
    }
  }
  std::vector<std::string> labels;
  if (j.contains("labels")) {
    labels = j.at("labels").get<std::vector<std::string>>();
    if (static_cast<Eigen::Index>(labels.size()) != n) throw InputError("label count does not match the matrix");
  } else {
    for (Eigen::Index i = 0; i < n; ++i) labels.push_back("p" + std::to_string(i));
  }
  doc.metric = checked_metric(labels, m);
  if (j.contains("kappa") && !j.at("kappa").is_null()) doc.kappa = number(j.at("kappa"), "kappa");
  if (j.contains("basepoint") && !j.at("basepoint").is_null()) {
    doc.basepoint = j.at("basepoint").get<std::string>();
    if (!doc.metric.index_of(*doc.basepoint)) throw InputError("basepoint is not a label");
  }
  return doc;
}

json metric_to_json(const MetricDocument& doc) {
  json j;
  j["name"] = doc.name;
  j["labels"] = doc.metric.labels();
  json d = json::array();
  for (std::size_t i = 0; i < doc.metric.size(); ++i) {
    json row = json::array();
    for (std::size_t k = 0; k < doc.metric.size(); ++k) row.push_back(doc.metric(i, k));
    d.push_back(row);
  }
  j["d"] = d;
  if (doc.kappa) j["kappa"] = *doc.kappa;
  if (doc.basepoint) j["basepoint"] = *doc.basepoint;
  return j;
}

MetricDocument metric_from_csv(const std::string& text, const std::string& name) {
  std::stringstream ss(text);
  std::string line;
  std::vector<std::vector<std::string>> rows;
  while (std::getline(ss, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    rows.push_back(split_csv_line(line));
  }
  if (rows.empty()) throw InputError("empty CSV document");
  const std::vector<std::string> labels = rows.front();
  const auto n = static_cast<Eigen::Index>(labels.size());
  if (static_cast<Eigen::Index>(rows.size()) != n + 1) throw InputError("CSV body must have one row per label");
  Mat d(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& row = rows[static_cast<std::size_t>(i) + 1];
    if (static_cast<Eigen::Index>(row.size()) != n) throw InputError("CSV rows must be square");
    for (Eigen::Index k = 0; k < n; ++k) {
      double s = 0.0;
      try {
        std::size_t used = 0;
        s = std::stod(row[static_cast<std::size_t>(k)], &used);
        if (used != row[static_cast<std::size_t>(k)].size()) throw InputError("bad number in CSV");
      } catch (const std::logic_error&) {
        throw InputError("bad number in CSV: \"" + row[static_cast<std::size_t>(k)] + "\"");
      }
      if (!(s >= 0.0)) throw InputError("squared distances must be nonnegative");
      d(i, k) = std::sqrt(s);
    }
  }
  MetricDocument doc;
  doc.name = name;
  doc.metric = checked_metric(labels, d);
  return doc;
}

std::string metric_to_csv(const MetricDocument& doc) {
  std::ostringstream os;
  os.precision(17);
  const auto& labels = doc.metric.labels();
  for (std::size_t i = 0; i < labels.size(); ++i) os << (i ? "," : "") << labels[i];
  os << "\n";
  for (std::size_t i = 0; i < doc.metric.size(); ++i) {
    for (std::size_t k = 0; k < doc.metric.size(); ++k) {
      const double d = doc.metric(i, k);
      os << (k ? "," : "") << d * d;
    }
    os << "\n";
  }
  return os.str();
}

MetricDocument ingest_metric(const std::string& text, DocFormat fmt) {
  if (fmt == DocFormat::DecryptingCsv) return metric_from_csv(text);
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("invalid JSON: ") + e.what());
  }
  return metric_from_json(j);
}

ModelPoint point_from_json(const ModelSpace& s, const json& j) {
  const std::vector<double> c = numbers(j, "point coordinates");
  if (static_cast<int>(c.size()) != s.ambient_dim())
    throw InputError("point has " + std::to_string(c.size()) + " coordinates, the chart needs " +
                     std::to_string(s.ambient_dim()));
  try {
    return s.point(Eigen::Map<const Vec>(c.data(), static_cast<Eigen::Index>(c.size())));
  } catch (const GeometryError& e) {
    throw InputError(e.what());
  }
}

json point_to_json(const ModelPoint& p) { return std::vector<double>(p.coords.data(), p.coords.data() + p.coords.size()); }

ExtensionInstance instance_from_json(const json& j) {
  ExtensionInstance inst;
  inst.curvature = Curvature{number(field(j, "kappa"), "kappa")};
  inst.dim = integer(field(j, "chart_dim"), "chart_dim");
  if (inst.dim < 1) throw InputError("chart_dim must be positive");
  const ModelSpace s = inst.space();
  inst.targets = points(s, field(j, "targets"), "targets");
  inst.radii = numbers(field(j, "radii"), "radii");
  if (j.contains("center") && !j.at("center").is_null()) inst.center = point_from_json(s, j.at("center"));
  return inst;
}

json instance_to_json(const ExtensionInstance& inst) {
  json j;
  j["kappa"] = inst.curvature.kappa;
  j["chart_dim"] = inst.dim;
  j["targets"] = json::array();
  for (const auto& t : inst.targets) j["targets"].push_back(point_to_json(t));
  j["radii"] = inst.radii;
  if (inst.center) j["center"] = point_to_json(*inst.center);
  return j;
}

PartialShortMap map_from_json(const json& j) {
  const MetricDocument doc = metric_from_json(j);
  PartialShortMap f;
  f.source = doc.metric;
  f.curvature = Curvature{j.contains("map_kappa") ? number(j.at("map_kappa"), "map_kappa") : doc.kappa.value_or(0.0)};
  f.dim = integer(field(j, "chart_dim"), "chart_dim");
  if (f.dim < 1) throw InputError("chart_dim must be positive");
  const ModelSpace s = f.space();
  const json& a = field(j, "assigned");
  if (!a.is_object()) throw InputError("\"assigned\" must map labels to points");
  for (const auto& [label, coords] : a.items()) {
    const auto idx = doc.metric.index_of(label);
    if (!idx) throw InputError("assigned label \"" + label + "\" is not in the metric");
    f.assigned.emplace(*idx, point_from_json(s, coords));
  }
  if (j.contains("center") && !j.at("center").is_null()) f.center = point_from_json(s, j.at("center"));
  return f;
}

json map_to_json(const PartialShortMap& f, const std::string& name) {
  json j = metric_to_json(MetricDocument{name, f.source, f.curvature.kappa, std::nullopt});
  j["chart_dim"] = f.dim;
  json a = json::object();
  for (const auto& [i, p] : f.assigned) a[f.source.label(i)] = point_to_json(p);
  j["assigned"] = a;
  if (f.center) j["center"] = point_to_json(*f.center);
  return j;
}

BallSystem balls_from_json(const json& j) {
  BallSystem bs;
  bs.curvature = Curvature{number(field(j, "kappa"), "kappa")};
  bs.dim = integer(field(j, "chart_dim"), "chart_dim");
  if (bs.dim < 1) throw InputError("chart_dim must be positive");
  bs.centers = points(bs.space(), field(j, "centers"), "centers");
  bs.radii = numbers(field(j, "radii"), "radii");
  return bs;
}

}  // namespace alexcomp
