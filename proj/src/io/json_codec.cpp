#include "io/json_codec.hpp"

#include <cmath>
#include <set>

namespace normconc::io {
namespace {

[[noreturn]] void bad(const std::string& where, const std::string& what) {
  throw Error(ErrorCode::parse_error, where + ": " + what);
}

std::string type_of(const json& j, const std::string& where) {
  if (!j.is_object()) bad(where, "expected an object");
  return get_string(need(j, "type", where), where + ".type");
}

std::vector<double> get_doubles(const json& j, const std::string& where) {
  if (!j.is_array()) bad(where, "expected an array of numbers");
  std::vector<double> out;
  out.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(get_number(j[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

std::vector<long> get_integers(const json& j, const std::string& where) {
  if (!j.is_array()) bad(where, "expected an array of integers");
  std::vector<long> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(get_integer(j[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

HalfSpace parse_halfspace(const json& j, const std::string& where) {
  allow_only(j, {"type", "point", "normal"}, where);
  return HalfSpace(get_vector(need(j, "point", where), where + ".point"),
                   get_vector(need(j, "normal", where), where + ".normal"));
}

// {x : (x - c)^T Q (x - c) / 2 <= level}, Q positive definite (identity by default).
ConvexBody parse_quadratic_sublevel(const json& j, const std::string& where) {
  allow_only(j, {"type", "center", "matrix", "level"}, where);
  const Vector c = get_vector(need(j, "center", where), where + ".center");
  const Index n = c.size();
  const Matrix q = j.contains("matrix") ? get_matrix(j.at("matrix"), where + ".matrix") : Matrix::Identity(n, n);
  require_dim(n, q.rows(), "quadratic sublevel matrix");
  require_dim(n, q.cols(), "quadratic sublevel matrix");
  const double level = get_number(need(j, "level", where), where + ".level");
  if (!(level > 0.0)) throw Error(ErrorCode::invalid_argument, where + ".level must be positive");
  SmoothSublevel s{[c, q](const Vector& x) { return 0.5 * (x - c).dot(q * (x - c)); },
                   [c, q](const Vector& x) { return Vector(q * (x - c)); }, level, c, "quadratic"};
  return ConvexBody::sublevel(std::move(s));
}

}  // namespace

void allow_only(const json& j, std::initializer_list<const char*> keys, const std::string& where) {
  if (!j.is_object()) bad(where, "expected an object");
  const std::set<std::string> allowed(keys.begin(), keys.end());
  for (const auto& [k, v] : j.items()) {
    if (!allowed.count(k)) bad(where, "unknown field '" + k + "'");
  }
}

const json& need(const json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) bad(where, std::string("missing field '") + key + "'");
  return j.at(key);
}

double get_number(const json& j, const std::string& where) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "Infinity") return kInf;
    if (s == "-Infinity") return -kInf;
  }
  bad(where, "expected a number");
}

long get_integer(const json& j, const std::string& where) {
  if (j.is_number_integer()) return j.get<long>();
  if (j.is_number_float()) {
    const double x = j.get<double>();
    if (std::floor(x) == x && std::abs(x) < 9e15) return static_cast<long>(x);
  }
  bad(where, "expected an integer");
}

std::string get_string(const json& j, const std::string& where) {
  if (!j.is_string()) bad(where, "expected a string");
  return j.get<std::string>();
}

Vector get_vector(const json& j, const std::string& where) {
  const auto xs = get_doubles(j, where);
  Vector v(static_cast<Index>(xs.size()));
  for (std::size_t i = 0; i < xs.size(); ++i) v(static_cast<Index>(i)) = xs[i];
  return v;
}

Matrix get_matrix(const json& j, const std::string& where) {
  if (!j.is_array() || j.empty()) bad(where, "expected a nonempty array of rows");
  const auto rows = static_cast<Index>(j.size());
  Matrix m;
  for (Index i = 0; i < rows; ++i) {
    const Vector row = get_vector(j[static_cast<std::size_t>(i)], where + "[" + std::to_string(i) + "]");
    if (i == 0) m.resize(rows, row.size());
    if (row.size() != m.cols()) throw Error(ErrorCode::dimension_mismatch, where + ": ragged matrix");
    m.row(i) = row.transpose();
  }
  return m;
}

std::vector<Vector> get_points(const json& j, const std::string& where) {
  if (!j.is_array()) bad(where, "expected an array of points");
  std::vector<Vector> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(get_vector(j[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

json number(double x) {
  if (std::isnan(x)) return nullptr;
  if (x == kInf) return "Infinity";
  if (x == -kInf) return "-Infinity";
  return x;
}

json vector(const Vector& v) {
  json a = json::array();
  for (Index i = 0; i < v.size(); ++i) a.push_back(number(v(i)));
  return a;
}

PsiFunctional parse_psi(const json& j) {
  const std::string w = "psi";
  const auto t = type_of(j, w);
  if (t == "euclidean") {
    allow_only(j, {"type"}, w);
    return PsiFunctional::euclidean();
  }
  if (t == "weighted_quadratic") {
    allow_only(j, {"type", "matrix"}, w);
    return PsiFunctional::weighted_quadratic(get_matrix(need(j, "matrix", w), w + ".matrix"));
  }
  if (t == "diagonal") {
    allow_only(j, {"type", "weights"}, w);
    return PsiFunctional::diagonal(get_vector(need(j, "weights", w), w + ".weights"));
  }
  if (t == "max_of_quadratics") {
    allow_only(j, {"type", "matrices"}, w);
    const auto& ms = need(j, "matrices", w);
    if (!ms.is_array()) bad(w + ".matrices", "expected an array of matrices");
    std::vector<Matrix> forms;
    for (std::size_t i = 0; i < ms.size(); ++i) forms.push_back(get_matrix(ms[i], w + ".matrices"));
    return PsiFunctional::max_of_quadratics(std::move(forms));
  }
  bad(w, "unknown type '" + t + "'");
}

SetPayload parse_set(const json& j) {
  const std::string w = "set";
  const auto t = type_of(j, w);
  if (t == "ball") {
    allow_only(j, {"type", "center", "radius"}, w);
    return ConvexBody::ball(get_vector(need(j, "center", w), w + ".center"),
                            get_number(need(j, "radius", w), w + ".radius"));
  }
  if (t == "box") {
    allow_only(j, {"type", "lower", "upper"}, w);
    return ConvexBody::box(get_vector(need(j, "lower", w), w + ".lower"),
                           get_vector(need(j, "upper", w), w + ".upper"));
  }
  if (t == "hull") {
    allow_only(j, {"type", "points"}, w);
    return ConvexBody::hull(get_points(need(j, "points", w), w + ".points"));
  }
  if (t == "polytope") {
    allow_only(j, {"type", "halfspaces"}, w);
    const auto& hs = need(j, "halfspaces", w);
    if (!hs.is_array()) bad(w + ".halfspaces", "expected an array");
    std::vector<HalfSpace> out;
    for (std::size_t i = 0; i < hs.size(); ++i) {
      const std::string wi = w + ".halfspaces[" + std::to_string(i) + "]";
      allow_only(hs[i], {"point", "normal"}, wi);
      out.emplace_back(get_vector(need(hs[i], "point", wi), wi + ".point"),
                       get_vector(need(hs[i], "normal", wi), wi + ".normal"));
    }
    return ConvexBody::polytope(std::move(out));
  }
  if (t == "halfspace") return ConvexBody::halfspace(parse_halfspace(j, w));
  if (t == "quadratic_sublevel") return parse_quadratic_sublevel(j, w);
  if (t == "points") {
    allow_only(j, {"type", "points"}, w);
    auto pts = get_points(need(j, "points", w), w + ".points");
    if (pts.empty()) throw Error(ErrorCode::empty_set, "set.points is empty");
    for (const auto& p : pts) require_dim(pts.front().size(), p.size(), "set.points");
    return pts;
  }
  bad(w, "unknown type '" + t + "'");
}

bool set_contains(const SetPayload& s, const Vector& x) {
  if (const auto* b = std::get_if<ConvexBody>(&s)) return b->contains(x);
  for (const auto& p : std::get<PointSet>(s)) {
    if (p == x) return true;
  }
  return false;
}

Index set_dim(const SetPayload& s) {
  if (const auto* b = std::get_if<ConvexBody>(&s)) return b->dim();
  return std::get<PointSet>(s).front().size();
}

bool chernoff_only(const json& model) {
  if (!model.is_object() || !model.contains("type") || !model.at("type").is_string()) return false;
  const auto t = model.at("type").get<std::string>();
  return t == "bounded_product" || t == "empirical" || t == "rademacher" || t == "bernoulli" || t == "point_mass";
}

ConcentrationModel parse_concentration_model(const json& j) {
  const std::string w = "model";
  const auto t = type_of(j, w);
  if (t == "psi") {
    allow_only(j, {"type", "psi", "mean"}, w);
    return PsiModel{parse_psi(need(j, "psi", w)), get_vector(need(j, "mean", w), w + ".mean")};
  }
  if (t == "gaussian") {
    allow_only(j, {"type", "mean", "covariance"}, w);
    return GaussianFamily{{GaussianModel{get_vector(need(j, "mean", w), w + ".mean"),
                                         get_matrix(need(j, "covariance", w), w + ".covariance")}}};
  }
  if (t == "gaussian_family") {
    allow_only(j, {"type", "members"}, w);
    const auto& ms = need(j, "members", w);
    if (!ms.is_array() || ms.empty()) bad(w + ".members", "expected a nonempty array");
    GaussianFamily f;
    for (std::size_t i = 0; i < ms.size(); ++i) {
      const std::string wi = w + ".members[" + std::to_string(i) + "]";
      allow_only(ms[i], {"mean", "covariance"}, wi);
      f.members.push_back(GaussianModel{get_vector(need(ms[i], "mean", wi), wi + ".mean"),
                                        get_matrix(need(ms[i], "covariance", wi), wi + ".covariance")});
    }
    return f;
  }
  if (t == "cuboid") {
    allow_only(j, {"type", "means", "interval_lengths"}, w);
    return CuboidModel{get_vector(need(j, "means", w), w + ".means"),
                       get_vector(need(j, "interval_lengths", w), w + ".interval_lengths")};
  }
  if (t == "empirical_mean") {
    allow_only(j, {"type", "means", "diameters", "sample_counts"}, w);
    return EmpiricalMeanModel{get_vector(need(j, "means", w), w + ".means"),
                              get_vector(need(j, "diameters", w), w + ".diameters"),
                              get_integers(need(j, "sample_counts", w), w + ".sample_counts")};
  }
  bad(w, "type '" + t + "' has no Psi-distance bound");
}

MgfModel parse_mgf_model(const json& j) {
  const std::string w = "model";
  const auto t = type_of(j, w);
  if (t == "gaussian") {
    allow_only(j, {"type", "mean", "covariance"}, w);
    return MgfModel::gaussian(get_vector(need(j, "mean", w), w + ".mean"),
                              get_matrix(need(j, "covariance", w), w + ".covariance"));
  }
  if (t == "bounded_product" || t == "cuboid") {
    allow_only(j, {"type", "means", "interval_lengths"}, w);
    return MgfModel::bounded_product(get_vector(need(j, "means", w), w + ".means"),
                                     get_vector(need(j, "interval_lengths", w), w + ".interval_lengths"));
  }
  if (t == "empirical") {
    allow_only(j, {"type", "samples"}, w);
    return MgfModel::empirical(get_doubles(need(j, "samples", w), w + ".samples"));
  }
  if (t == "rademacher") {
    allow_only(j, {"type"}, w);
    return MgfModel::rademacher();
  }
  if (t == "bernoulli") {
    allow_only(j, {"type", "a", "b", "q"}, w);
    return MgfModel::bernoulli(get_number(need(j, "a", w), w + ".a"), get_number(need(j, "b", w), w + ".b"),
                               get_number(need(j, "q", w), w + ".q"));
  }
  if (t == "point_mass") {
    allow_only(j, {"type", "a"}, w);
    return MgfModel::point_mass(get_number(need(j, "a", w), w + ".a"));
  }
  bad(w, "type '" + t + "' has no Chernoff bound");
}

SamplerLaw parse_sampler(const json& j) {
  const std::string w = "sampler";
  const auto t = type_of(j, w);
  if (t == "product_uniform") {
    allow_only(j, {"type", "lower", "upper"}, w);
    return ProductUniform{get_vector(need(j, "lower", w), w + ".lower"), get_vector(need(j, "upper", w), w + ".upper")};
  }
  if (t == "hamming") {
    allow_only(j, {"type", "dim"}, w);
    return HammingUniform{static_cast<Index>(get_integer(need(j, "dim", w), w + ".dim"))};
  }
  if (t == "gaussian") {
    allow_only(j, {"type", "mean", "covariance"}, w);
    return GaussianSampler{get_vector(need(j, "mean", w), w + ".mean"),
                           get_matrix(need(j, "covariance", w), w + ".covariance")};
  }
  if (t == "two_point") {
    allow_only(j, {"type", "a", "b", "q"}, w);
    return ProductTwoPoint{get_vector(need(j, "a", w), w + ".a"), get_vector(need(j, "b", w), w + ".b"),
                           get_vector(need(j, "q", w), w + ".q")};
  }
  if (t == "empirical_mean") {
    allow_only(j, {"type", "lower", "upper", "sample_counts"}, w);
    return ProductEmpiricalMean{get_vector(need(j, "lower", w), w + ".lower"),
                                get_vector(need(j, "upper", w), w + ".upper"),
                                get_integers(need(j, "sample_counts", w), w + ".sample_counts")};
  }
  bad(w, "unknown type '" + t + "'");
}

SearchOptions parse_options(const json& j) {
  SearchOptions o;
  if (j.is_null()) return o;
  allow_only(j, {"random_starts", "max_evaluations", "search_seed"}, "options");
  if (j.contains("random_starts")) o.random_starts = static_cast<int>(get_integer(j.at("random_starts"), "options"));
  if (j.contains("max_evaluations")) {
    o.max_evaluations = static_cast<int>(get_integer(j.at("max_evaluations"), "options"));
  }
  if (j.contains("search_seed")) o.seed = static_cast<std::uint64_t>(get_integer(j.at("search_seed"), "options"));
  return o;
}

json to_json(const BoundReport& r) {
  json j;
  j["value"] = number(r.value);
  j["exponent"] = number(r.exponent);
  j["method"] = to_string(r.method);
  j["converged"] = r.converged;
  j["degenerate"] = r.degenerate;
  j["upper_bound_model"] = r.upper_bound_model;
  if (r.witness) {
    j["witness"] = {{"normal", vector(r.witness->normal)},
                    {"point", vector(r.witness->point)},
                    {"s", number(r.witness->s)},
                    {"distance", number(r.witness->distance)}};
  } else {
    j["witness"] = nullptr;
  }
  j["notes"] = r.notes;
  return j;
}

json to_json(const SharpnessReport& r) {
  json j;
  j["point"] = vector(r.point);
  j["normal"] = vector(r.normal);
  j["interior_ball_radius"] = number(r.interior_ball_radius);
  j["curvature_eigenvalues"] = vector(r.curvature_eigenvalues);
  j["eigenvalue_threshold"] = number(r.eigenvalue_threshold);
  j["log_gap"] = number(r.log_gap);
  j["verdict"] = to_string(r.verdict);
  j["notes"] = r.notes;
  return j;
}

}  // namespace normconc::io
