#include "iqc/cli.hpp"

#include <fstream>
#include <ostream>
#include <random>
#include <set>
#include <sstream>

#include <json.hpp>

#include "iqc/classify.hpp"
#include "iqc/indirect.hpp"
#include "iqc/lieclosure.hpp"
#include "iqc/model.hpp"
#include "iqc/sampler.hpp"

namespace iqc {

namespace {

using nlohmann::json;

constexpr std::size_t kDefaultDraws = 100;

json load_config(const RunConfig& cfg, bool required) {
  if (!cfg.config_path) {
    if (required) throw ConfigError(cfg.subcommand + ": a config file is required");
    return json::object();
  }
  std::ifstream f(*cfg.config_path);
  if (!f) throw ConfigError("cannot open config '" + *cfg.config_path + "'");
  json j;
  try {
    f >> j;
  } catch (const json::parse_error& e) {
    throw ConfigError("config '" + *cfg.config_path + "' is not valid JSON: " + e.what());
  }
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  return j;
}

void reject_unknown(const json& j, const std::set<std::string>& allowed, const std::string& where) {
  for (const auto& [key, value] : j.items())
    if (!allowed.count(key)) throw ConfigError(where + ": unknown field '" + key + "'");
}

double number(const json& j, const char* key, double fallback) {
  if (!j.contains(key)) return fallback;
  if (!j[key].is_number()) throw ConfigError(std::string("'") + key + "' must be a number");
  return j[key].get<double>();
}

std::uint64_t unsigned_value(const json& j, const char* key, std::uint64_t fallback) {
  if (!j.contains(key)) return fallback;
  if (!j[key].is_number_unsigned()) throw ConfigError(std::string("'") + key + "' must be a non-negative integer");
  return j[key].get<std::uint64_t>();
}

Vec3 vec3(const json& j, const char* key) {
  const json& v = j.at(key);
  if (!v.is_array() || v.size() != 3) throw ConfigError(std::string("'") + key + "' must be a 3-array");
  Vec3 out;
  for (int i = 0; i < 3; ++i) {
    if (!v[i].is_number()) throw ConfigError(std::string("'") + key + "' entries must be numbers");
    out(i) = v[i].get<double>();
  }
  return out;
}

DensityMatrix state_from(const json& j, const char* key, const Tolerances& tol) {
  const Vec3 b = vec3(j, key);
  if (b.norm() > 1.0 + tol.rank) throw ConfigError(std::string("'") + key + "' lies outside the Bloch ball");
  return bloch_inverse({b(0), b(1), b(2)}, tol);
}

Tolerances effective_tolerances(const RunConfig& cfg, const json& file) {
  Tolerances tol;
  if (file.contains("tolerances")) {
    const json& t = file["tolerances"];
    if (!t.is_object()) throw ConfigError("'tolerances' must be an object");
    reject_unknown(t, {"rank", "eq", "state"}, "tolerances");
    tol.rank = number(t, "rank", tol.rank);
    tol.eq = number(t, "eq", tol.eq);
    tol.state = number(t, "state", tol.state);
  }
  if (cfg.tol_rank) tol.rank = *cfg.tol_rank;
  if (cfg.tol_eq) tol.eq = *cfg.tol_eq;
  if (!(tol.rank > 0) || !(tol.eq > 0) || !(tol.state > 0)) throw ConfigError("tolerances must be positive");
  return tol;
}

json tolerances_json(const Tolerances& tol) { return {{"rank", tol.rank}, {"eq", tol.eq}, {"state", tol.state}}; }

TwoQubitModel model_from_config(json j, const Tolerances& tol) {
  for (const char* extra : {"tolerances", "rho_S", "rho_A"}) j.erase(extra);
  return model_from_json(j, tol);
}

std::uint64_t effective_seed(const RunConfig& cfg, const json& file) {
  return cfg.seed ? *cfg.seed : unsigned_value(file, "seed", 0);
}

std::size_t effective_draws(const RunConfig& cfg, const json& file) {
  const std::size_t n = cfg.draws ? *cfg.draws : unsigned_value(file, "draws", kDefaultDraws);
  if (n == 0) throw ConfigError("draws must be at least 1");
  return n;
}

// Random helpers for the self-checking subcommands.
double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

Vec3 unit_vector(std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Vec3 v;
  do {
    v = Vec3(g(rng), g(rng), g(rng));
  } while (v.norm() < 1e-6);
  return v.normalized();
}

DensityMatrix ball_state(std::mt19937_64& rng, double r_min, double r_max) {
  const Vec3 v = unit_vector(rng) * uniform(rng, r_min, r_max);
  return bloch_inverse({v(0), v(1), v(2)});
}

ComplexMatrix su2_element(const Vec3& axis, double angle) {
  return mat_exp(ComplexMatrix(angle * sigma_from_vec(axis)));
}

json classify_command(const RunConfig& cfg) {
  const json file = load_config(cfg, true);
  const Tolerances tol = effective_tolerances(cfg, file);
  const TwoQubitModel m = model_from_config(file, tol);
  const auto gens = generator_set(m);
  json out;
  if (m.full_control()) {
    const CrossValidation cv = cross_validate(m, tol);
    out = {{"case", to_string(cv.predicted.tag)},
           {"predicted_dim", cv.predicted.predicted_dim},
           {"computed_dim", cv.computed_dim},
           {"agree", cv.agree},
           {"marginal", cv.predicted.marginal}};
  } else {
    const Oms0Report r = oms0_check(m, tol);
    const Oms0NormalForm& nf = r.normal_form;
    const int dim = static_cast<int>(closure(gens, tol).size());
    out = {{"c1", r.c1},
           {"c2", r.c2},
           {"cc", r.cc},
           {"det_k", r.det_k},
           {"c2_magnitude", r.c2_magnitude},
           {"c1_prime", r.c1_prime},
           {"c2_prime", r.c2_prime},
           {"forms_agree", r.forms_agree},
           {"marginal", r.marginal},
           {"computed_dim", dim},
           {"agree", r.cc == (dim == 15)},
           {"normal_form",
            {{"alpha", nf.alpha},
             {"beta", nf.beta},
             {"gamma", nf.gamma},
             {"x", nf.x},
             {"y", nf.y},
             {"z", nf.z},
             {"omega_A", nf.omega_a},
             {"c_parallel", nf.c_parallel}}}};
  }
  out["tolerances"] = tolerances_json(tol);
  return out;
}

json closure_command(const RunConfig& cfg) {
  const json file = load_config(cfg, true);
  const Tolerances tol = effective_tolerances(cfg, file);
  const TwoQubitModel m = model_from_config(file, tol);
  const auto gens = generator_set(m);
  const LieBasis basis = closure(gens, tol);
  json out = {{"dim", basis.size()}};
  if (cfg.basis) {
    json mats = json::array();
    for (const auto& e : basis.elements()) {
      json rows = json::array();
      for (Index r = 0; r < e.rows(); ++r) {
        json row = json::array();
        for (Index c = 0; c < e.cols(); ++c) row.push_back({e(r, c).real(), e(r, c).imag()});
        rows.push_back(row);
      }
      mats.push_back(rows);
    }
    out["basis"] = mats;
  }
  out["tolerances"] = tolerances_json(tol);
  return out;
}

json negat_command(const RunConfig& cfg) {
  const json file = load_config(cfg, true);
  const Tolerances tol = effective_tolerances(cfg, file);
  for (const char* key : {"rho_S", "rho_A"})
    if (!file.contains(key)) throw ConfigError(std::string("negat: missing field '") + key + "'");
  const DensityMatrix rho_s = state_from(file, "rho_S", tol);
  const DensityMatrix rho_a = state_from(file, "rho_A", tol);
  const TwoQubitModel m = model_from_config(file, tol);
  const auto gens = generator_set(m);
  const GennegatVerdict v = gennegat_test(closure(gens, tol), rho_s, rho_a, tol);
  return {{"v_dim", v.v_dim},
          {"trace_image_dim", v.trace_image_dim},
          {"uic_excluded", v.uic_excluded},
          {"tolerances", tolerances_json(tol)}};
}

json steer_command(const RunConfig& cfg) {
  const json file = load_config(cfg, false);
  reject_unknown(file, {"rho_S", "rho_A", "X", "seed", "draws", "tolerances"}, "steer");
  const Tolerances tol = effective_tolerances(cfg, file);
  auto residual = [](const DensityMatrix& rho_s, const DensityMatrix& rho_a, const ComplexMatrix& x) {
    const ComplexMatrix t = pure_uic_steer(rho_s, rho_a, x);
    return (evolve_reduced(t, rho_s, rho_a) - conjugate(x, rho_s.matrix())).norm();
  };
  json out;
  if (file.contains("X")) {
    const json& jx = file["X"];
    if (!jx.is_object()) throw ConfigError("steer: 'X' must be {\"axis\": [3], \"angle\": number}");
    reject_unknown(jx, {"axis", "angle"}, "X");
    const Vec3 axis = vec3(jx, "axis");
    if (axis.norm() == 0.0) throw ConfigError("steer: X axis is zero");
    if (!jx.contains("angle") || !jx["angle"].is_number()) throw ConfigError("steer: X needs a numeric 'angle'");
    const ComplexMatrix x = su2_element(axis.normalized(), jx["angle"].get<double>());
    if (!file.contains("rho_S")) throw ConfigError("steer: missing field 'rho_S'");
    const DensityMatrix rho_s = state_from(file, "rho_S", tol);
    const DensityMatrix rho_a = file.contains("rho_A") ? state_from(file, "rho_A", tol) : bloch_inverse({0, 0, 1});
    const EulerAngles e = euler_su2(x);
    out = {{"residual", residual(rho_s, rho_a, x)}, {"angles", {{"t2", e.t2}, {"t", e.t}, {"t1", e.t1}}}};
  } else {
    const std::uint64_t seed = effective_seed(cfg, file);
    const std::size_t draws = effective_draws(cfg, file);
    std::mt19937_64 rng(seed);
    double worst = 0.0;
    const DensityMatrix e1 = bloch_inverse({0, 0, 1});
    for (std::size_t i = 0; i < draws; ++i) {
      const ComplexMatrix x = su2_element(unit_vector(rng), uniform(rng, 0.0, 4.0 * M_PI));
      worst = std::max(worst, residual(ball_state(rng, 0.0, 1.0), e1, x));
    }
    out = {{"draws", draws}, {"seed", seed}, {"max_residual", worst}};
  }
  out["tolerances"] = tolerances_json(tol);
  return out;
}

json fic_command(const RunConfig& cfg) {
  const json file = load_config(cfg, false);
  reject_unknown(file, {"rho_S", "psi_A", "target", "seed", "draws", "tolerances"}, "fic");
  const Tolerances tol = effective_tolerances(cfg, file);
  struct Outcome {
    double residual;
    double eigen_error;
    double theta;
  };
  auto evaluate = [&](const DensityMatrix& rho_s, const DensityMatrix& psi_a, const DensityMatrix& target) {
    const FicReach r = fic_reach(rho_s, psi_a, target, tol);
    const DensityMatrix reached(evolve_reduced(r.u, rho_s, psi_a), tol);
    return Outcome{(reached.matrix() - target.matrix()).norm(),
                   (reached.eigenvalues() - target.eigenvalues()).cwiseAbs().maxCoeff(), r.theta};
  };
  json out;
  if (file.contains("target")) {
    for (const char* key : {"rho_S", "psi_A"})
      if (!file.contains(key)) throw ConfigError(std::string("fic: missing field '") + key + "'");
    const Outcome o = evaluate(state_from(file, "rho_S", tol), state_from(file, "psi_A", tol),
                               state_from(file, "target", tol));
    out = {{"residual", o.residual}, {"eigenvalue_error", o.eigen_error}, {"theta", o.theta}};
  } else {
    const std::uint64_t seed = effective_seed(cfg, file);
    const std::size_t draws = effective_draws(cfg, file);
    std::mt19937_64 rng(seed);
    double worst_res = 0.0;
    double worst_eig = 0.0;
    for (std::size_t i = 0; i < draws; ++i) {
      const DensityMatrix rho_s = ball_state(rng, 0.0, 1.0);
      const DensityMatrix psi_a = ball_state(rng, 1.0, 1.0);
      const DensityMatrix target = ball_state(rng, 0.0, 1.0);
      const Outcome o = evaluate(rho_s, psi_a, target);
      worst_res = std::max(worst_res, o.residual);
      worst_eig = std::max(worst_eig, o.eigen_error);
    }
    out = {{"draws", draws}, {"seed", seed}, {"max_residual", worst_res}, {"max_eigenvalue_error", worst_eig}};
  }
  out["tolerances"] = tolerances_json(tol);
  return out;
}

SampleConfig sample_config(const RunConfig& cfg, const json& file) {
  reject_unknown(file, {"s_x", "s_z", "a_z", "n", "seed", "mode", "verify", "ranges"}, "sample");
  SampleConfig sc;
  sc.s_x = number(file, "s_x", sc.s_x);
  sc.s_z = number(file, "s_z", sc.s_z);
  sc.a_z = number(file, "a_z", sc.a_z);
  sc.n = cfg.draws ? *cfg.draws : unsigned_value(file, "n", sc.n);
  sc.seed = effective_seed(cfg, file);
  if (file.contains("mode")) {
    const json& mode = file["mode"];
    if (mode == "random") {
      sc.mode = SampleMode::random;
    } else if (mode == "grid") {
      sc.mode = SampleMode::grid;
    } else {
      throw ConfigError("sample: 'mode' must be \"random\" or \"grid\"");
    }
  }
  if (file.contains("verify")) {
    if (!file["verify"].is_boolean()) throw ConfigError("sample: 'verify' must be a boolean");
    sc.verify = file["verify"].get<bool>();
  }
  if (file.contains("ranges")) {
    const json& r = file["ranges"];
    if (!r.is_array() || r.size() != 9) throw ConfigError("sample: 'ranges' must list 9 [lo, hi] pairs");
    for (std::size_t i = 0; i < 9; ++i) {
      if (!r[i].is_array() || r[i].size() != 2 || !r[i][0].is_number() || !r[i][1].is_number())
        throw ConfigError("sample: each range must be [lo, hi]");
      sc.ranges[i] = {r[i][0].get<double>(), r[i][1].get<double>()};
    }
  }
  return sc;
}

json verify_command(const RunConfig& cfg) {
  const json file = load_config(cfg, false);
  reject_unknown(file, {"seed", "draws", "tolerances"}, "verify");
  const Tolerances tol = effective_tolerances(cfg, file);
  const std::uint64_t seed = effective_seed(cfg, file);
  const std::size_t draws = effective_draws(cfg, file);
  std::mt19937_64 rng(seed);
  double gamma_max = 0.0;
  double appendix_max = 0.0;
  std::string worst_name;
  double worst = -1.0;
  for (std::size_t i = 0; i < draws; ++i) {
    // α bounded away from zero keeps k = α² + 4ω_A² well conditioned.
    const double sign = uniform(rng, 0.0, 1.0) < 0.5 ? -1.0 : 1.0;
    const double alpha = sign * uniform(rng, 0.1, 1.0);
    const double gamma = uniform(rng, -1.0, 1.0);
    const double beta = uniform(rng, -1.0, 1.0);
    const double omega_a = uniform(rng, -1.0, 1.0);
    const Vec3 c = unit_vector(rng);
    const IdentityReport g = gamma_suite(alpha, gamma, beta, omega_a);
    const IdentityReport b = appendix_b_suite(c(0), c(1), c(2), alpha, omega_a);
    gamma_max = std::max(gamma_max, g.max_residual());
    appendix_max = std::max(appendix_max, b.max_residual());
    for (const auto* rep : {&g, &b})
      for (const auto& e : rep->entries)
        if (e.residual > worst) {
          worst = e.residual;
          worst_name = e.name;
        }
  }
  return {{"draws", draws},
          {"seed", seed},
          {"gamma_suite_max", gamma_max},
          {"appendix_b_max", appendix_max},
          {"max_residual", std::max(gamma_max, appendix_max)},
          {"worst_identity", worst_name},
          {"tolerances", tolerances_json(tol)}};
}

void write_text(const RunConfig& cfg, std::ostream& out, const std::string& text) {
  if (!cfg.output_path) {
    out << text;
    return;
  }
  std::ofstream f(*cfg.output_path, std::ios::binary);
  if (!f) throw ConfigError("cannot open '" + *cfg.output_path + "' for writing");
  f << text;
  if (!f) throw ConfigError("write to '" + *cfg.output_path + "' failed");
}

}  // namespace

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    if (cfg.subcommand == "sample") {
      const json file = load_config(cfg, false);
      const SampleConfig sc = sample_config(cfg, file);
      const auto points = sample(sc);
      std::ostringstream csv;
      emit_csv(points, csv, &sc.seed);
      write_text(cfg, out, csv.str());
      return 0;
    }
    json result;
    if (cfg.subcommand == "classify") {
      result = classify_command(cfg);
    } else if (cfg.subcommand == "closure") {
      result = closure_command(cfg);
    } else if (cfg.subcommand == "negat") {
      result = negat_command(cfg);
    } else if (cfg.subcommand == "steer") {
      result = steer_command(cfg);
    } else if (cfg.subcommand == "fic") {
      result = fic_command(cfg);
    } else if (cfg.subcommand == "verify") {
      result = verify_command(cfg);
    } else {
      throw ConfigError("unknown subcommand '" + cfg.subcommand + "'");
    }
    write_text(cfg, out, result.dump(2) + "\n");
    return 0;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const json::exception& e) {
    err << "error: malformed config: " << e.what() << '\n';
    return 1;
  } catch (const PreconditionError& e) {
    err << "precondition violated: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace iqc
