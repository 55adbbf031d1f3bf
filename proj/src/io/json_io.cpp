#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "atomrec/errors.hpp"
#include "atomrec/io.hpp"

namespace atomrec {

using nlohmann::json;

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

namespace {

json require_key(const json& obj, const std::string& key) {
  if (!obj.contains(key))
    throw IoError("problem file: missing key \"" + key + "\"");
  return obj.at(key);
}

template <typename T>
T key_as(const json& obj, const std::string& key) {
  const json value = require_key(obj, key);
  try {
    return value.get<T>();
  } catch (const json::exception&) {
    throw IoError("problem file: key \"" + key + "\" has the wrong type");
  }
}

Vec numbers(const json& value, const std::string& key, std::size_t expected) {
  if (!value.is_array())
    throw IoError("problem file: key \"" + key + "\" must be an array");
  Vec out;
  out.reserve(value.size());
  for (const auto& e : value) {
    if (!e.is_number())
      throw IoError("problem file: key \"" + key + "\" contains a non-number");
    out.push_back(e.get<double>());
  }
  if (expected != 0 && out.size() != expected)
    throw IoError("problem file: key \"" + key + "\" has length " +
                  std::to_string(out.size()) + ", expected " +
                  std::to_string(expected));
  if (!all_finite(out))
    throw IoError("problem file: key \"" + key + "\" contains a non-finite value");
  return out;
}

SetParams parse_set_params(const json& obj) {
  SetParams params;
  if (!obj.contains("set_params")) return params;
  const json sp = obj.at("set_params");
  if (!sp.is_object()) throw IoError("problem file: key \"set_params\" must be an object");
  auto read_int = [&](const char* key, int& into) {
    if (!sp.contains(key)) return;
    if (!sp.at(key).is_number_integer())
      throw IoError(std::string("problem file: key \"set_params.") + key +
                    "\" must be an integer");
    into = sp.at(key).get<int>();
  };
  read_int("s", params.s);
  read_int("r", params.r);
  read_int("m", params.m);
  read_int("m1", params.m1);
  read_int("m2", params.m2);
  read_int("p", params.p);
  read_int("k", params.k);
  return params;
}

}  // namespace

Problem read_problem_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open problem file: " + path);
  json obj;
  try {
    in >> obj;
  } catch (const json::parse_error& e) {
    throw IoError("problem file " + path + " is not valid JSON: " + e.what());
  }
  const int n = key_as<int>(obj, "n");
  const int p = key_as<int>(obj, "p");
  if (n < 1 || p < 1) throw IoError("problem file: keys \"n\" and \"p\" must be >= 1");

  const json phi = require_key(obj, "phi");
  if (!phi.is_array() || static_cast<int>(phi.size()) != n)
    throw IoError("problem file: key \"phi\" must be an array of n rows");
  Mat matrix(n, p);
  for (int i = 0; i < n; ++i) {
    const Vec row = numbers(phi.at(i), "phi", static_cast<std::size_t>(p));
    for (int j = 0; j < p; ++j) matrix(i, j) = row[j];
  }

  Problem problem;
  problem.map = LinearMap(std::move(matrix));
  problem.y = numbers(require_key(obj, "y"), "y", static_cast<std::size_t>(n));
  problem.set_id = key_as<std::string>(obj, "set");
  problem.params = parse_set_params(obj);
  if (problem.params.p == 0) problem.params.p = p;
  if (obj.contains("delta")) {
    if (!obj.at("delta").is_number())
      throw IoError("problem file: key \"delta\" must be a number");
    const double delta = obj.at("delta").get<double>();
    if (delta < 0.0) throw IoError("problem file: key \"delta\" must be >= 0");
    problem.delta = delta;
  }
  if (obj.contains("x_true")) {
    AtomicModel truth;
    truth.set_id = problem.set_id;
    truth.ambient = numbers(obj.at("x_true"), "x_true", static_cast<std::size_t>(p));
    problem.truth = std::move(truth);
  }
  return problem;
}

void write_problem_json(const std::string& path, const Problem& problem) {
  json obj;
  obj["n"] = problem.map.n();
  obj["p"] = problem.map.p();
  json phi = json::array();
  for (int i = 0; i < problem.map.n(); ++i) {
    json row = json::array();
    for (int j = 0; j < problem.map.p(); ++j) row.push_back(problem.map.matrix(i, j));
    phi.push_back(std::move(row));
  }
  obj["phi"] = std::move(phi);
  obj["y"] = problem.y;
  obj["set"] = problem.set_id;
  json sp;
  const SetParams& q = problem.params;
  if (q.s) sp["s"] = q.s;
  if (q.r) sp["r"] = q.r;
  if (q.m) sp["m"] = q.m;
  if (q.m1) sp["m1"] = q.m1;
  if (q.m2) sp["m2"] = q.m2;
  if (q.p) sp["p"] = q.p;
  if (q.k) sp["k"] = q.k;
  if (!sp.empty()) obj["set_params"] = std::move(sp);
  if (problem.delta) obj["delta"] = *problem.delta;
  if (problem.truth) obj["x_true"] = problem.truth->ambient;
  std::ofstream out(path);
  if (!out) throw IoError("cannot write problem file: " + path);
  out << obj.dump(2) << "\n";
}

std::string solve_report_to_json(const SolveReport& report) {
  json obj;
  obj["x_hat"] = report.x_hat;
  obj["objective"] = report.objective;
  obj["residual"] = report.residual;
  if (std::isfinite(report.gauge))
    obj["gauge"] = report.gauge;
  else
    obj["gauge"] = nullptr;
  obj["iterations"] = report.iterations;
  obj["status"] = to_string(report.status);
  return obj.dump(2);
}

std::string width_estimate_to_json(const WidthEstimate& estimate) {
  json obj;
  obj["mean"] = estimate.mean;
  obj["stderr"] = estimate.stderr_;
  obj["n_samples"] = estimate.n_samples;
  obj["kind"] = estimate.kind;
  return obj.dump(2);
}

std::string phase_csv_string(const PhaseResult& result) {
  std::ostringstream out;
  out << "n,trials,successes,success_rate,mean_rel_error,mean_seconds\n";
  for (const auto& row : result.rows)
    out << row.n << "," << row.trials << "," << row.successes << ","
        << format_double(row.success_rate) << ","
        << format_double(row.mean_rel_error) << ","
        << format_double(row.mean_seconds) << "\n";
  return out.str();
}

void write_phase_csv(const std::string& path, const PhaseResult& result) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write CSV file: " + path);
  out << phase_csv_string(result);
}

void write_phase_sidecar(const std::string& path, const PhaseResult& result,
                         const std::string& extra_note) {
  json obj;
  obj["set"] = result.config.set_id;
  json params;
  const SetParams& q = result.config.params;
  if (q.s) params["s"] = q.s;
  if (q.r) params["r"] = q.r;
  if (q.m) params["m"] = q.m;
  if (q.m1) params["m1"] = q.m1;
  if (q.m2) params["m2"] = q.m2;
  if (q.p) params["p"] = q.p;
  if (q.k) params["k"] = q.k;
  obj["set_params"] = std::move(params);
  obj["n_grid"] = result.config.n_grid;
  obj["trials"] = result.config.trials;
  obj["seed"] = result.config.master_seed;
  obj["success_threshold"] = result.config.success_threshold;
  json solver;
  solver["step"] = result.config.solver.step;
  solver["max_iter"] = result.config.solver.max_iter;
  solver["splitting_max_iter"] = result.config.solver.splitting_max_iter;
  solver["tol_obj"] = result.config.solver.tol_obj;
  solver["tol_feas"] = result.config.solver.tol_feas;
  solver["acceleration"] = result.config.solver.acceleration;
  solver["lambda_floor"] = result.config.solver.lambda_floor;
  solver["rho"] = result.config.solver.rho;
  obj["solver"] = std::move(solver);
  if (!extra_note.empty()) obj["notes"] = extra_note;
  std::ofstream out(path);
  if (!out) throw IoError("cannot write sidecar file: " + path);
  out << obj.dump(2) << "\n";
}

}  // namespace atomrec
