#include "io/commands.hpp"

#include "io/json_codec.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace normconc::io {
namespace {

std::string csv_number(double x) {
  if (std::isnan(x)) return "NaN";
  if (x == kInf) return "Infinity";
  if (x == -kInf) return "-Infinity";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

std::string output_format(const json& req) {
  if (!req.contains("output")) return "json";
  const auto f = get_string(req.at("output"), "output");
  if (f != "json" && f != "csv") throw Error(ErrorCode::parse_error, "output: expected 'json' or 'csv'");
  return f;
}

void json_only(const std::string& format, const char* command) {
  if (format != "json") throw Error(ErrorCode::invalid_argument, std::string(command) + " supports JSON output only");
}

std::uint64_t seed_of(const json& req, std::uint64_t fallback) {
  if (!req.contains("seed")) return fallback;
  const long s = get_integer(req.at("seed"), "seed");
  if (s < 0) throw Error(ErrorCode::invalid_argument, "seed must be nonnegative");
  return static_cast<std::uint64_t>(s);
}

ConvexBody as_body(const SetPayload& s) {
  if (const auto* b = std::get_if<ConvexBody>(&s)) return *b;
  return ConvexBody::hull(std::get<PointSet>(s));
}

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

BoundReport compute_bound(const json& req, const SetPayload& set, const std::string& where) {
  const json& model = need(req, "model", where);
  std::string method = chernoff_only(model) ? "chernoff" : "portmanteau";
  if (req.contains("method")) method = get_string(req.at("method"), where + ".method");
  const SearchOptions options = parse_options(req.contains("options") ? req.at("options") : json());
  if (method == "chernoff") {
    const MgfModel m = parse_mgf_model(model);
    const ConvexBody body = as_body(set);
    require_dim(m.dim(), body.dim(), "set");
    ChernoffOptions co;
    co.search = options;
    if (const auto* p = body.as<HPolytope>(); p && p->halfspaces.size() == 1) {
      return chernoff_halfspace(m, p->halfspaces.front(), co);
    }
    return chernoff_convex(m, body, co);
  }
  if (method != "portmanteau") throw Error(ErrorCode::parse_error, where + ".method: expected 'portmanteau' or 'chernoff'");
  return std::visit(overloaded{
                        [&](const PsiModel& m) {
                          if (const auto* pts = std::get_if<PointSet>(&set)) {
                            return portmanteau_bound(m.psi, m.mean, *pts, options);
                          }
                          return portmanteau_bound(m.psi, m.mean, std::get<ConvexBody>(set), options);
                        },
                        [&](const GaussianFamily& f) { return gaussian_family_bound(f, as_body(set), options); },
                        [&](const CuboidModel& m) { return cuboid_bound(m, as_body(set), options); },
                        [&](const EmpiricalMeanModel& m) { return empirical_mean_bound(m, as_body(set), options); },
                    },
                    parse_concentration_model(model));
}

std::string cmd_bound(const json& req) {
  allow_only(req, {"model", "set", "method", "options", "output", "seed"}, "bound");
  const auto format = output_format(req);
  const auto set = parse_set(need(req, "set", "bound"));
  const auto r = compute_bound(req, set, "bound");
  if (format == "csv") {
    return "value,exponent,method,converged,degenerate\n" + csv_number(r.value) + "," + csv_number(r.exponent) + "," +
           to_string(r.method) + "," + (r.converged ? "true" : "false") + "," + (r.degenerate ? "true" : "false") +
           "\n";
  }
  json out;
  out["kind"] = "bound";
  const json fields = to_json(r);
  for (const auto& [k, v] : fields.items()) out[k] = v;
  return dump(out);
}

std::string cmd_compare(const json& req) {
  allow_only(req, {"example", "theta", "n_max", "n_min", "output", "seed"}, "compare");
  const auto format = output_format(req);
  const auto example = get_string(need(req, "example", "compare"), "compare.example");
  if (example != "quadratic") throw Error(ErrorCode::invalid_argument, "compare: unknown example '" + example + "'");
  const double theta = get_number(need(req, "theta", "compare"), "compare.theta");
  const long n_max = get_integer(need(req, "n_max", "compare"), "compare.n_max");
  const long n_min = req.contains("n_min") ? get_integer(req.at("n_min"), "compare.n_min") : 1;
  if (n_min < 1 || n_max < n_min || n_max > 10000000) {
    throw Error(ErrorCode::invalid_argument, "compare: need 1 <= n_min <= n_max <= 1e7");
  }
  std::ostringstream csv;
  json rows = json::array();
  if (format == "csv") csv << "N,theta,mcd_exponent,halfspace_exponent,mcd_bound,halfspace_bound\n";
  for (long n = n_min; n <= n_max; ++n) {
    const auto b = quadratic_example_bounds(static_cast<int>(n), theta);
    if (format == "csv") {
      csv << n << ',' << csv_number(theta) << ',' << csv_number(b.mcdiarmid.exponent) << ','
          << csv_number(b.halfspace.exponent) << ',' << csv_number(b.mcdiarmid.value) << ','
          << csv_number(b.halfspace.value) << '\n';
    } else {
      rows.push_back({{"N", n},
                      {"theta", number(theta)},
                      {"mcd_exponent", number(b.mcdiarmid.exponent)},
                      {"halfspace_exponent", number(b.halfspace.exponent)},
                      {"mcd_bound", number(b.mcdiarmid.value)},
                      {"halfspace_bound", number(b.halfspace.value)}});
    }
  }
  if (format == "csv") return csv.str();
  json out;
  out["kind"] = "compare";
  out["example"] = example;
  out["rows"] = rows;
  return dump(out);
}

std::string cmd_allocate(const json& req) {
  allow_only(req, {"gradient", "margins", "diameters", "total_budget", "min_per_coordinate", "output", "seed"},
             "allocate");
  json_only(output_format(req), "allocate");
  AllocationProblem p;
  p.gradient = get_vector(need(req, "gradient", "allocate"), "allocate.gradient");
  p.margins = get_vector(need(req, "margins", "allocate"), "allocate.margins");
  p.diameters = get_vector(need(req, "diameters", "allocate"), "allocate.diameters");
  p.total_budget = get_integer(need(req, "total_budget", "allocate"), "allocate.total_budget");
  if (req.contains("min_per_coordinate")) {
    p.min_per_coordinate = get_integer(req.at("min_per_coordinate"), "allocate.min_per_coordinate");
  }
  const auto r = optimize_allocation(p);
  json out;
  out["kind"] = "allocation";
  out["allocation"] = r.allocation;
  out["bound"] = number(r.bound.value);
  out["exponent"] = number(r.bound.exponent);
  out["degenerate"] = r.bound.degenerate;
  out["notes"] = r.bound.notes;
  return dump(out);
}

json verify_one(const json& s, std::uint64_t seed, const std::string& where) {
  allow_only(s, {"check", "sampler", "samples", "seed", "model", "set", "method", "options", "a", "b"}, where);
  SamplerSpec spec;
  spec.law = parse_sampler(need(s, "sampler", where));
  spec.seed = seed_of(s, seed);
  spec.sample_count = s.contains("samples") ? get_integer(s.at("samples"), where + ".samples") : 1000000;
  const std::string check = s.contains("check") ? get_string(s.at("check"), where + ".check") : "bound";
  json out;
  out["check"] = check;
  out["sampler"] = Sampler(spec).describe();
  if (check == "talagrand") {
    const auto a = get_points(need(s, "a", where), where + ".a");
    const auto b = get_points(need(s, "b", where), where + ".b");
    const auto r = talagrand_product_check(spec, a, b);
    out["prob_a"] = number(r.prob_a);
    out["prob_b"] = number(r.prob_b);
    out["lhs"] = number(r.lhs);
    out["rhs"] = number(r.rhs);
    out["distance"] = number(r.distance);
    out["tolerance"] = number(r.tolerance);
    out["exact"] = r.exact;
    out["verdict"] = r.pass ? "PASS" : "FAIL";
    return out;
  }
  if (check != "bound") throw Error(ErrorCode::parse_error, where + ".check: expected 'bound' or 'talagrand'");
  const auto set = parse_set(need(s, "set", where));
  const auto bound = compute_bound(s, set, where);
  require_dim(Sampler(spec).dim(), set_dim(set), "sampler vs set");
  const auto v = verify_bound(spec, [&](const Vector& x) { return set_contains(set, x); }, bound);
  out["estimate"] = number(v.estimate.estimate);
  out["standard_error"] = number(v.estimate.standard_error);
  out["samples"] = v.estimate.samples;
  out["predicate_failures"] = v.estimate.predicate_failures;
  out["bound"] = number(v.bound);
  out["exponent"] = number(v.exponent);
  out["slack"] = number(v.slack);
  out["verdict"] = v.pass ? "PASS" : "FAIL";
  out["bound_report"] = to_json(bound);
  return out;
}

std::string verify_csv(const std::vector<json>& results) {
  std::ostringstream os;
  os << "index,check,estimate,standard_error,bound,exponent,slack,verdict\n";
  for (std::size_t i = 0; i < results.size(); ++i) {
    const auto& r = results[i];
    const bool tal = r.at("check") == "talagrand";
    auto num = [&](const char* key) { return csv_number(get_number(r.at(key), key)); };
    os << i << ',' << r.at("check").get<std::string>() << ',' << (tal ? num("lhs") : num("estimate")) << ','
       << (tal ? csv_number(get_number(r.at("tolerance"), "") / 3.0) : num("standard_error")) << ','
       << (tal ? num("rhs") : num("bound")) << ','
       << (tal ? csv_number(std::log(get_number(r.at("rhs"), ""))) : num("exponent")) << ','
       << (tal ? csv_number(get_number(r.at("rhs"), "") - get_number(r.at("lhs"), "")) : num("slack")) << ','
       << r.at("verdict").get<std::string>() << '\n';
  }
  return os.str();
}

std::string cmd_verify(const json& req, std::uint64_t default_seed) {
  const auto format = output_format(req);
  const std::uint64_t seed = seed_of(req, default_seed);
  std::vector<json> results;
  bool sweep = req.is_object() && req.contains("scenarios");
  if (sweep) {
    allow_only(req, {"scenarios", "output", "seed"}, "verify");
    const auto& sc = req.at("scenarios");
    if (!sc.is_array() || sc.empty()) throw Error(ErrorCode::parse_error, "verify.scenarios: expected a nonempty array");
    for (std::size_t i = 0; i < sc.size(); ++i) {
      results.push_back(verify_one(sc[i], seed, "verify.scenarios[" + std::to_string(i) + "]"));
    }
  } else {
    json single = req;
    single.erase("output");
    results.push_back(verify_one(single, seed, "verify"));
  }
  if (format == "csv") return verify_csv(results);
  if (!sweep) {
    json out;
    out["kind"] = "verify";
    for (const auto& [k, v] : results.front().items()) out[k] = v;
    return dump(out);
  }
  json out;
  out["kind"] = "verify_sweep";
  out["results"] = results;
  return dump(out);
}

std::string cmd_sharpness(const json& req) {
  allow_only(req, {"psi", "mean", "set", "n", "options", "output", "seed"}, "sharpness");
  json_only(output_format(req), "sharpness");
  const PsiFunctional psi = req.contains("psi") ? parse_psi(req.at("psi")) : PsiFunctional::euclidean();
  const Vector mean = get_vector(need(req, "mean", "sharpness"), "sharpness.mean");
  const auto set = parse_set(need(req, "set", "sharpness"));
  const auto* body = std::get_if<ConvexBody>(&set);
  if (!body) throw Error(ErrorCode::invalid_argument, "sharpness needs a convex body");
  const Index n = req.contains("n") ? static_cast<Index>(get_integer(req.at("n"), "sharpness.n")) : mean.size();
  const auto r = sharpness_diagnostics(psi, mean, *body, n,
                                       parse_options(req.contains("options") ? req.at("options") : json()));
  json out;
  out["kind"] = "sharpness";
  const json fields = to_json(r);
  for (const auto& [k, v] : fields.items()) out[k] = v;
  return dump(out);
}

}  // namespace

std::string run_command(const std::string& command, const std::string& request, std::uint64_t default_seed) {
  json req;
  try {
    req = json::parse(request);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::parse_error, std::string("malformed JSON: ") + e.what());
  }
  if (!req.is_object()) throw Error(ErrorCode::parse_error, "request must be a JSON object");
  try {
    if (command == "bound") return cmd_bound(req);
    if (command == "compare") return cmd_compare(req);
    if (command == "allocate") return cmd_allocate(req);
    if (command == "verify") return cmd_verify(req, default_seed);
    if (command == "sharpness") return cmd_sharpness(req);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::parse_error, e.what());
  }
  throw Error(ErrorCode::invalid_argument, "unknown command '" + command + "'");
}

}  // namespace normconc::io
