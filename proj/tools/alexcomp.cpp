// Command-line front end: reads metric, map and instance documents, runs one
// check or solver and prints a JSON report.

#include "alexcomp/barycentric.hpp"
#include "alexcomp/comparisons.hpp"
#include "alexcomp/convexity.hpp"
#include "alexcomp/extension.hpp"
#include "alexcomp/fixtures.hpp"
#include "alexcomp/io.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

using namespace alexcomp;
using nlohmann::json;

namespace {

struct Config {
  double kappa = 0.0;
  bool kappa_given = false;
  std::optional<double> tol;
  std::optional<int> max_iter;
  std::optional<int> restarts;
  std::uint64_t seed = 0;
  std::string out;
  std::string format = "json";
  std::string input = "-";
  // command specific
  std::vector<std::string> points;
  std::string order = "greedy";
  std::string direction = "cbb";
  std::string base;
  std::string x, y, pairs;
  int n = 8;
  int dim = 2;
  std::string fixture;
  bool cone = false;
};

json config_json(const Config& c) {
  json j;
  j["kappa"] = c.kappa;
  j["tol"] = c.tol ? json(*c.tol) : json(nullptr);
  j["max_iter"] = c.max_iter ? json(*c.max_iter) : json(nullptr);
  j["restarts"] = c.restarts ? json(*c.restarts) : json(nullptr);
  j["seed"] = c.seed;
  j["format"] = c.format;
  return j;
}

std::string read_input(const std::string& path) {
  if (path == "-") return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  std::ifstream f(path);
  if (!f) throw InputError("cannot open " + path);
  return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

json read_json(const Config& c) {
  try {
    return json::parse(read_input(c.input));
  } catch (const json::parse_error& e) {
    throw InputError(std::string("invalid JSON: ") + e.what());
  }
}

MetricDocument read_metric(Config& c) {
  const DocFormat fmt = c.format == "csv" ? DocFormat::DecryptingCsv : DocFormat::Json;
  MetricDocument doc = ingest_metric(read_input(c.input), fmt);
  if (!c.kappa_given && doc.kappa) c.kappa = *doc.kappa;
  return doc;
}

json labels_of(const FiniteMetric& m, const std::vector<std::size_t>& idx) {
  json a = json::array();
  for (std::size_t i : idx) a.push_back(m.label(i));
  return a;
}

std::size_t label_index(const FiniteMetric& m, const std::string& label) {
  const auto i = m.index_of(label);
  if (!i) throw InputError("unknown label \"" + label + "\"");
  return *i;
}

json comparison_json(const ComparisonReport& r, const FiniteMetric& m) {
  json j;
  j["predicate"] = r.predicate;
  j["kappa"] = r.curvature.kappa;
  j["tol"] = r.tol;
  j["passed"] = r.passed();
  j["tuples"] = r.records.size();
  for (Verdict v : {Verdict::Pass, Verdict::Fail, Verdict::Undefined}) j["count"][verdict_name(v)] = r.count(v);
  if (const TupleRecord* w = r.worst()) j["worst"] = {{"tuple", labels_of(m, w->indices)}, {"defect", w->defect}};
  json recs = json::array();
  for (const TupleRecord& t : r.records)
    recs.push_back({{"tuple", labels_of(m, t.indices)},
                    {"defect", t.defect},
                    {"verdict", verdict_name(t.verdict)},
                    {"degenerate", t.degenerate}});
  j["records"] = recs;
  return j;
}

ExtensionOptions extension_options(const Config& c) {
  ExtensionOptions o;
  o.seed = c.seed;
  o.tol = c.tol;
  if (c.max_iter) o.subgradient_iters = *c.max_iter;
  if (c.restarts) o.random_starts = *c.restarts;
  return o;
}

// Each command fills `results` and returns the exit code.
int cmd_check1p3(Config& c, json& results) {
  const MetricDocument doc = read_metric(c);
  const auto r = check_1plus3(doc.metric, Curvature{c.kappa}, c.tol);
  results.push_back(comparison_json(r, doc.metric));
  return r.passed() ? 0 : 1;
}

int cmd_check2p2(Config& c, json& results) {
  const MetricDocument doc = read_metric(c);
  const auto r = check_2plus2(doc.metric, Curvature{c.kappa}, c.tol);
  results.push_back(comparison_json(r, doc.metric));
  return r.passed() ? 0 : 1;
}

int cmd_check1pn(Config& c, json& results) {
  const MetricDocument doc = read_metric(c);
  OnePlusNOptions o;
  o.seed = c.seed;
  o.tol = c.tol;
  if (c.restarts) o.restarts = *c.restarts;
  if (c.max_iter) o.max_iter = *c.max_iter;
  std::vector<std::size_t> bases;
  const std::string base = !c.base.empty() ? c.base : doc.basepoint.value_or("");
  if (!base.empty()) {
    bases.push_back(label_index(doc.metric, base));
  } else {
    bases = label_order(doc.metric);
  }
  int code = 0;
  for (std::size_t b : bases) {
    const auto r = check_1plusN(doc.metric, b, Curvature{c.kappa}, o);
    results.push_back({{"base", doc.metric.label(b)},
                       {"verdict", verdict_name(r.verdict)},
                       {"slack", r.slack},
                       {"targets", labels_of(doc.metric, r.targets)},
                       {"solves", r.solves}});
    if (r.verdict != Verdict::Pass) code = 1;
  }
  return code;
}

int cmd_check2n2(Config& c, json& results) {
  const MetricDocument doc = read_metric(c);
  if (c.x.empty() || c.y.empty() || c.pairs.empty()) throw InputError("check2n2 needs --x, --y and --pairs");
  ChainSpec spec;
  spec.x = label_index(doc.metric, c.x);
  spec.y = label_index(doc.metric, c.y);
  std::stringstream ss(c.pairs);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto colon = item.find(':');
    if (colon == std::string::npos) throw InputError("pairs are written p:q, separated by commas");
    spec.pairs.emplace_back(label_index(doc.metric, item.substr(0, colon)),
                            label_index(doc.metric, item.substr(colon + 1)));
  }
  ChainOptions o;
  o.seed = c.seed;
  o.tol = c.tol;
  if (c.restarts) o.random_starts = *c.restarts;
  const auto r = check_2Nplus2(doc.metric, spec, Curvature{c.kappa}, o);
  const char* status = r.status == ChainStatus::Evaluated ? "evaluated"
                       : r.status == ChainStatus::Undefined ? "undefined"
                                                            : "not_realizable";
  results.push_back({{"verdict", verdict_name(r.verdict)},
                     {"status", status},
                     {"reason", r.reason},
                     {"defect", r.defect},
                     {"chain_length", r.chain_length},
                     {"t", r.t}});
  return counts_as_pass(r.verdict) ? 0 : 1;
}

int cmd_extend(Config& c, json& results) {
  const json j = read_json(c);
  PartialShortMap f = map_from_json(j);
  if (c.kappa_given) f.curvature = Curvature{c.kappa};
  c.kappa = f.curvature.kappa;
  std::vector<std::size_t> todo;
  if (!c.points.empty()) {
    for (const auto& l : c.points) todo.push_back(label_index(f.source, l));
  } else {
    for (std::size_t i : label_order(f.source))
      if (!f.assigned.count(i)) todo.push_back(i);
  }
  if (c.order != "greedy" && c.order != "given") throw InputError("--order is greedy or given");
  const auto opt = extension_options(c);
  const auto r = extend_map(f, todo, c.order == "greedy" ? OrderPolicy::Greedy : OrderPolicy::Given, opt);
  json a = json::object();
  for (const auto& [i, p] : r.map.assigned) a[f.source.label(i)] = point_to_json(p);
  json out{{"success", r.success},
           {"defect", r.defect},
           {"order", labels_of(f.source, r.order)},
           {"failed_point", r.failed_point ? json(f.source.label(*r.failed_point)) : json(nullptr)},
           {"blocking", labels_of(f.source, r.blocking)},
           {"shortness", r.shortness},
           {"assigned", a}};
  if (r.best_candidate) out["best_candidate"] = point_to_json(*r.best_candidate);
  if (r.failed_point && f.curvature.sign() > 0) {
    const ConeResult cone = spherical_extend_via_cone(r.map, *r.failed_point, opt);
    out["cone"] = {{"defect", cone.defect},     {"point", point_to_json(cone.point)},
                   {"degenerate", cone.degenerate}, {"lift_norm", cone.lift_norm},
                   {"lift_margin", cone.lift_margin}, {"note", cone.note}};
  }
  results.push_back(out);
  return r.success ? 0 : 1;
}

int cmd_cheb(Config& c, json& results) {
  const json j = read_json(c);
  ExtensionInstance inst = instance_from_json(j);
  c.kappa = inst.curvature.kappa;
  const auto opt = extension_options(c);
  const auto r = chebyshev_extend(inst, opt);
  json out{{"point", point_to_json(r.point)}, {"defect", r.defect},       {"tol", r.tol},
           {"feasible", r.feasible},          {"certified", r.certified}, {"active", r.active}};
  if (c.cone && inst.curvature.sign() > 0) {
    const ConeResult cone = spherical_extend_via_cone(inst, opt);
    out["cone"] = {{"defect", cone.defect}, {"point", point_to_json(cone.point)}, {"degenerate", cone.degenerate}};
  }
  results.push_back(out);
  return r.feasible ? 0 : 1;
}

int cmd_fourpoint(Config& c, json& results) {
  const json j = read_json(c);
  FourPointInput in;
  if (j.contains("d")) {
    // a metric on four points: p first (or the basepoint), mapped isometrically
    const MetricDocument doc = metric_from_json(j);
    if (doc.metric.size() != 4) throw InputError("fourpoint needs exactly four points");
    if (!c.kappa_given && doc.kappa) c.kappa = *doc.kappa;
    const std::size_t p = doc.basepoint ? label_index(doc.metric, *doc.basepoint) : 0;
    std::vector<std::size_t> v;
    for (std::size_t i = 0; i < 4; ++i)
      if (i != p) v.push_back(i);
    for (int e = 0; e < 3; ++e) in.source[e] = in.target[e] = doc.metric(v[e], v[(e + 1) % 3]);
    for (int i = 0; i < 3; ++i) in.radii[i] = doc.metric(p, v[i]);
  } else {
    for (const char* key : {"source", "target", "radii"}) {
      const auto a = j.at(key).get<std::vector<double>>();
      if (a.size() != 3) throw InputError(std::string("\"") + key + "\" needs three numbers");
    }
    const auto s = j.at("source").get<std::vector<double>>(), t = j.at("target").get<std::vector<double>>(),
               r = j.at("radii").get<std::vector<double>>();
    std::copy(s.begin(), s.end(), in.source.begin());
    std::copy(t.begin(), t.end(), in.target.begin());
    std::copy(r.begin(), r.end(), in.radii.begin());
    if (!c.kappa_given && j.contains("kappa")) c.kappa = j.at("kappa").get<double>();
    if (j.contains("direction")) c.direction = j.at("direction").get<std::string>();
  }
  if (c.direction != "cbb" && c.direction != "cat") throw InputError("direction is cbb or cat");
  const auto r = four_point_decision(in, Curvature{c.kappa},
                                     c.direction == "cbb" ? FourPointDirection::CBB : FourPointDirection::CAT,
                                     extension_options(c));
  json tri = json::array();
  for (const auto& p : r.triangle.points) tri.push_back(point_to_json(p));
  results.push_back({{"feasible", r.feasible},
                     {"defect", r.defect},
                     {"tol", r.tol},
                     {"witness", point_to_json(r.witness)},
                     {"triangle", tri},
                     {"direction", c.direction}});
  return r.feasible ? 0 : 1;
}

int cmd_barycenter(Config& c, json& results) {
  const json j = read_json(c);
  const Curvature k{j.at("kappa").get<double>()};
  c.kappa = k.kappa;
  const int dim = j.at("chart_dim").get<int>();
  const ModelSpace s(k, dim);
  std::vector<ModelPoint> anchors;
  for (const auto& a : j.at("anchors")) anchors.push_back(point_from_json(s, a));
  const std::string form = j.value("form", "half_squared");
  if (form != "half_squared" && form != "cosh") throw InputError("form is half_squared or cosh");
  const FunctionArray fa(k, dim, anchors, form == "cosh" ? FunctionForm::CoshDist : FunctionForm::HalfSquaredDist,
                         j.value("lambda", 1.0));
  const auto w = j.at("weights").get<std::vector<double>>();
  ArgminOptions ao;
  if (c.max_iter) ao.max_iter = *c.max_iter;
  if (c.tol) ao.grad_tol = *c.tol;
  const auto r = bary_simplex(fa, WeightVector(Eigen::Map<const Vec>(w.data(), static_cast<Eigen::Index>(w.size()))), ao);
  const Vec fv = fa.values(r.point);
  json out{{"point", point_to_json(r.point)},
           {"grad_norm", r.grad_norm},
           {"iterations", r.iterations},
           {"converged", r.converged},
           {"values", std::vector<double>(fv.data(), fv.data() + fv.size())}};
  bool ok = r.converged;
  if (j.contains("v")) {
    const auto v = j.at("v").get<std::vector<double>>();
    const auto nu = h_v_argmin(fa, Eigen::Map<const Vec>(v.data(), static_cast<Eigen::Index>(v.size())));
    out["nu"] = {{"point", point_to_json(nu.point)}, {"converged", nu.converged}};
    ok = ok && nu.converged;
  }
  results.push_back(out);
  return ok ? 0 : 1;
}

int cmd_project(Config& c, json& results) {
  const json j = read_json(c);
  const BallSystem bs = balls_from_json(j);
  c.kappa = bs.curvature.kappa;
  ProjectionOptions o;
  o.tol = c.tol;
  o.seed = c.seed;
  const auto r = closest_point(bs, point_from_json(bs.space(), j.at("point")), o);
  results.push_back({{"empty", r.empty},
                     {"point", r.empty ? json(nullptr) : point_to_json(r.point)},
                     {"distance", r.empty ? json(nullptr) : json(r.distance)},
                     {"defect", r.defect},
                     {"tol", r.tol},
                     {"certified", r.certified}});
  return r.empty ? 1 : 0;
}

int cmd_helly(Config& c, json& results) {
  const json j = read_json(c);
  const BallSystem bs = balls_from_json(j);
  c.kappa = bs.curvature.kappa;
  const auto r = helly_witness(bs, extension_options(c));
  results.push_back({{"feasible", r.feasible},
                     {"common_point", r.common_point ? point_to_json(*r.common_point) : json(nullptr)},
                     {"subfamily", r.feasible ? json(nullptr) : json(r.subfamily)},
                     {"defect", r.defect},
                     {"tol", r.tol},
                     {"certified", r.certified}});
  return r.feasible ? 0 : 1;
}

int cmd_fixture(const Config& c, std::ostream& os) {
  const std::string& name = c.fixture;
  if (c.n < 1) throw InputError("--n must be positive");
  if (name == "hemisphere") {
    os << map_to_json(hemisphere_fixture(c.n), "hemisphere").dump(2) << "\n";
    return 0;
  }
  MetricDocument doc;
  doc.name = name;
  if (name == "ivanov") {
    doc.metric = ivanov_metric();
    doc.kappa = 0.0;
  } else if (name == "tripod") {
    doc.metric = tripod_metric();
    doc.kappa = 0.0;
  } else if (name == "sphere-sample") {
    doc.metric = sphere_sample(c.n, c.seed, c.dim).metric;
    doc.kappa = 1.0;
  } else if (name == "tree-sample") {
    doc.metric = tree_sample(c.n, c.seed);
    doc.kappa = 0.0;
  } else {
    throw InputError("unknown fixture \"" + name + "\"");
  }
  if (c.format == "csv") {
    os << metric_to_csv(doc);
  } else {
    os << metric_to_json(doc).dump(2) << "\n";
  }
  return 0;
}

void common_options(CLI::App* sub, Config& c) {
  sub->add_option("input", c.input, "input document, - for stdin")->capture_default_str();
  sub->add_option("--kappa", c.kappa, "curvature bound")->each([&c](const std::string&) { c.kappa_given = true; });
  sub->add_option("--tol", c.tol, "tolerance");
  sub->add_option("--max-iter", c.max_iter, "iteration cap of the underlying solver");
  sub->add_option("--restarts", c.restarts, "random restarts");
  sub->add_option("--seed", c.seed, "random seed")->capture_default_str();
  sub->add_option("--out", c.out, "write the report here instead of stdout");
  sub->add_option("--format", c.format, "json or csv (decrypting matrix)")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Curvature comparisons and short map extension on finite metric spaces"};
  app.require_subcommand(1);
  Config c;

  using Handler = int (*)(Config&, json&);
  const std::vector<std::tuple<std::string, std::string, Handler>> commands{
      {"check1p3", "(1+3)-point comparison on every centered triple", cmd_check1p3},
      {"check2p2", "(2+2)-point comparison on every 4-set", cmd_check2p2},
      {"check1pn", "(1+n)-point comparison at each basepoint", cmd_check1pn},
      {"check2n2", "(2n+2)-point chain comparison", cmd_check2n2},
      {"extend", "extend a partial short map one point at a time", cmd_extend},
      {"fourpoint", "four-point extension decision", cmd_fourpoint},
      {"cheb", "single-point extension (Chebyshev minimax)", cmd_cheb},
      {"barycenter", "barycentric simplex point and its inverse", cmd_barycenter},
      {"project", "closest point of a ball intersection", cmd_project},
      {"helly", "common point or empty subfamily of a ball system", cmd_helly},
  };
  std::map<CLI::App*, Handler> handlers;
  for (const auto& [name, help, h] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    common_options(sub, c);
    handlers[sub] = h;
    if (name == "check1pn") sub->add_option("--base", c.base, "basepoint label (default: every point)");
    if (name == "check2n2") {
      sub->add_option("--x", c.x, "label of x")->required();
      sub->add_option("--y", c.y, "label of y")->required();
      sub->add_option("--pairs", c.pairs, "p1:q1,p2:q2,...")->required();
    }
    if (name == "extend") {
      sub->add_option("--points", c.points, "labels to extend to (default: all unassigned)");
      sub->add_option("--order", c.order, "greedy or given")->capture_default_str();
    }
    if (name == "fourpoint") sub->add_option("--direction", c.direction, "cbb or cat")->capture_default_str();
    if (name == "cheb") sub->add_flag("--cone", c.cone, "also run the cone route (kappa > 0)");
  }
  CLI::App* fixture = app.add_subcommand("fixture", "print a built-in fixture document");
  fixture->add_option("name", c.fixture, "ivanov, hemisphere, tripod, sphere-sample or tree-sample")->required();
  fixture->add_option("--n", c.n, "point count (equator points for hemisphere)")->capture_default_str();
  fixture->add_option("--seed", c.seed, "random seed")->capture_default_str();
  fixture->add_option("--dim", c.dim, "sphere dimension for sphere-sample")->capture_default_str();
  fixture->add_option("--format", c.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (fixture->parsed()) return cmd_fixture(c, std::cout);

    CLI::App* sub = app.get_subcommands().front();
    const auto t0 = std::chrono::steady_clock::now();
    json results = json::array();
    const int code = handlers.at(sub)(c, results);
    const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    const json report{{"command", sub->get_name()},
                      {"config", config_json(c)},
                      {"results", results},
                      {"exit", code},
                      {"elapsed_ms", ms}};
    if (c.out.empty()) {
      std::cout << report.dump(2) << "\n";
    } else {
      std::ofstream f(c.out);
      if (!f) throw InputError("cannot write " + c.out);
      f << report.dump(2) << "\n";
    }
    return code;
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
  } catch (const GeometryError& e) {
    std::cerr << "input error: " << e.what() << "\n";
  } catch (const json::exception& e) {
    std::cerr << "input error: " << e.what() << "\n";
  }
  return 2;
}
