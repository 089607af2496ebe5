#include "fracpm/config.hpp"

#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include "fracpm/error.hpp"

namespace fracpm {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(trim(cur));
  return out;
}

double to_double(const std::string& key, const std::string& v) {
  double x = 0.0;
  const auto* end = v.data() + v.size();
  const auto res = std::from_chars(v.data(), end, x);
  if (res.ec != std::errc() || res.ptr != end || !std::isfinite(x)) {
    throw Error(ErrorKind::Config, "key '" + key + "': expected a number, got '" + v + "'");
  }
  return x;
}

long long to_int(const std::string& key, const std::string& v) {
  long long x = 0;
  const auto* end = v.data() + v.size();
  const auto res = std::from_chars(v.data(), end, x);
  if (res.ec != std::errc() || res.ptr != end) {
    throw Error(ErrorKind::Config, "key '" + key + "': expected an integer, got '" + v + "'");
  }
  return x;
}

bool to_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw Error(ErrorKind::Config, "key '" + key + "': expected true/false, got '" + v + "'");
}

std::vector<double> to_list(const std::string& key, const std::string& v) {
  std::vector<double> out;
  for (const auto& item : split(v, ',')) {
    if (!item.empty()) out.push_back(to_double(key, item));
  }
  return out;
}

std::vector<double> to_words(const std::string& key, const std::string& v) {
  std::vector<double> out;
  std::istringstream in(v);
  std::string w;
  while (in >> w) out.push_back(to_double(key, w));
  return out;
}

}  // namespace

const std::vector<std::string>& suite_constant_names() {
  static const std::vector<std::string> names{
      "operator_tolerance", "operator_runtime",   "slope_tolerance_1d", "bound_E",
      "slope_tolerance_2d", "runtime_2d",         "fourier_crosscheck",         "beta_tolerance",     "alpha_slope_tolerance",
      "stationary_bound",   "stationary_runtime", "contraction_slack",  "mean_drift",
      "gap_variation",      "decay_match",        "fd_tolerance",       "trivial_tolerance"};
  return names;
}

const std::map<std::string, std::string>& config_keys() {
  static const std::map<std::string, std::string> keys = [] {
    std::map<std::string, std::string> k{
      {"dim", "spatial dimension, 1 or 2 (required)"},
      {"epsilon", "fractional order in (0,1) (required)"},
      {"n", "grid points per axis, power of two >= 8"},
      {"delta", "tube radius of the capped distance"},
      {"seed", "seed for randomized perturbations"},
      {"check_sign", "request the sign-definite curvature check (rejects eps = 1/2)"},
      {"out", "output directory"},
      {"jumps.points", "1D jump locations, comma separated"},
      {"jumps.values", "1D value on the interval starting at each jump"},
      {"gamma.circles", "2D circles 'cx cy r', separated by ';'"},
      {"gamma.splines", "2D closed splines 'x y, x y, ...', separated by ';'"},
      {"gamma.inside", "2D interior values, circles first then splines, separated by ';'"},
      {"gamma.outside", "2D exterior value"},
      {"perturbation.kind", "sine | mode | noise | file | zero"},
      {"perturbation.amplitude", "perturbation amplitude"},
      {"perturbation.taper", "multiply the perturbation by the capped distance"},
      {"perturbation.file", "field file for kind = file"},
      {"perturbation.wavenumber", "m in sin(pi m (x - c)) for kind = mode"},
      {"perturbation.center", "c for kind = mode, 'x' or 'x, y'"},
      {"solver.dt", "time step"},
      {"solver.T", "final time"},
      {"solver.scheme", "semi-implicit | explicit"},
      {"solver.tolerance", "relative residual of the linear solve, in (0, 1e-6]"},
      {"solver.snapshot_stride", "steps between stored snapshots (0: first and last)"},
      {"solver.max_iterations", "iteration cap of the linear solve"},
      {"fit.dmin", "lower end of the exponent-fit window"},
      {"fit.dmax", "upper end of the exponent-fit window"},
      {"fit.probes", "number of log-spaced probes"},
      {"spectrum.path", "auto | dense | sparse"},
      {"spectrum.count", "number of lowest eigenvalues kept on the sparse path"},
      {"spectrum.alpha", "oracle | one: coefficient used for assembly"},
      {"verify.only", "comma-separated criterion ids to run (default: all)"},
    };
    for (const auto& name : suite_constant_names()) k.emplace("verify." + name, "suite constant override");
    return k;
  }();
  return keys;
}

RunConfig parse_config(const std::string& text, bool require_run_keys) {
  RunConfig cfg;
  std::set<std::string> seen;
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  bool have_inside = false;
  while (std::getline(in, raw)) {
    ++lineno;
    const auto hash = raw.find('#');
    const auto line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw Error(ErrorKind::Config, "line " + std::to_string(lineno) + ": expected 'key = value'");
    }
    const auto key = trim(line.substr(0, eq));
    const auto val = trim(line.substr(eq + 1));
    if (!config_keys().contains(key)) {
      throw Error(ErrorKind::Config, "line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    }
    if (!seen.insert(key).second) {
      throw Error(ErrorKind::Config, "line " + std::to_string(lineno) + ": key '" + key + "' given twice");
    }
    if (key == "dim") {
      cfg.dim = static_cast<int>(to_int(key, val));
    } else if (key == "epsilon") {
      cfg.epsilon = to_double(key, val);
    } else if (key == "n") {
      const auto v = to_int(key, val);
      if (v <= 0) throw Error(ErrorKind::Config, "n must be positive");
      cfg.n = static_cast<std::size_t>(v);
    } else if (key == "delta") {
      cfg.delta = to_double(key, val);
    } else if (key == "seed") {
      const auto v = to_int(key, val);
      if (v < 0) throw Error(ErrorKind::Config, "seed must be non-negative");
      cfg.seed = static_cast<std::uint64_t>(v);
    } else if (key == "check_sign") {
      cfg.check_sign = to_bool(key, val);
    } else if (key == "out") {
      cfg.out = val;
    } else if (key == "jumps.points") {
      cfg.jump_points = to_list(key, val);
    } else if (key == "jumps.values") {
      cfg.jump_values = to_list(key, val);
    } else if (key == "gamma.circles") {
      cfg.circles.clear();
      for (const auto& c : split(val, ';')) {
        if (c.empty()) continue;
        const auto w = to_words(key, c);
        if (w.size() != 3) throw Error(ErrorKind::Config, "gamma.circles entries are 'cx cy r'");
        cfg.circles.push_back({w[0], w[1], w[2]});
      }
    } else if (key == "gamma.splines") {
      cfg.splines.clear();
      for (const auto& s : split(val, ';')) {
        if (s.empty()) continue;
        std::vector<Point> pts;
        for (const auto& p : split(s, ',')) {
          const auto w = to_words(key, p);
          if (w.size() != 2) throw Error(ErrorKind::Config, "gamma.splines points are 'x y'");
          pts.push_back({w[0], w[1]});
        }
        cfg.splines.push_back(std::move(pts));
      }
    } else if (key == "gamma.inside") {
      have_inside = true;
      cfg.inside_values.clear();
      for (const auto& v : split(val, ';')) {
        if (!v.empty()) cfg.inside_values.push_back(to_double(key, v));
      }
    } else if (key == "gamma.outside") {
      cfg.outside_value = to_double(key, val);
    } else if (key == "perturbation.kind") {
      static const std::map<std::string, PerturbationKind> kinds{{"sine", PerturbationKind::Sine},
                                                                 {"mode", PerturbationKind::Mode},
                                                                 {"noise", PerturbationKind::Noise},
                                                                 {"file", PerturbationKind::File},
                                                                 {"zero", PerturbationKind::Zero}};
      const auto it = kinds.find(val);
      if (it == kinds.end()) throw Error(ErrorKind::Config, "unknown perturbation.kind '" + val + "'");
      cfg.perturbation.kind = it->second;
    } else if (key == "perturbation.amplitude") {
      cfg.perturbation.amplitude = to_double(key, val);
    } else if (key == "perturbation.taper") {
      cfg.perturbation.taper = to_bool(key, val);
    } else if (key == "perturbation.file") {
      cfg.perturbation.file = val;
    } else if (key == "perturbation.wavenumber") {
      cfg.perturbation.wavenumber = static_cast<int>(to_int(key, val));
    } else if (key == "perturbation.center") {
      const auto c = to_list(key, val);
      if (c.empty() || c.size() > 2) throw Error(ErrorKind::Config, "perturbation.center is 'x' or 'x, y'");
      cfg.perturbation.center = {c[0], c.size() > 1 ? c[1] : 0.0};
    } else if (key == "solver.dt") {
      cfg.solver.dt = to_double(key, val);
    } else if (key == "solver.T") {
      cfg.solver.T = to_double(key, val);
    } else if (key == "solver.scheme") {
      if (val == "semi-implicit") {
        cfg.solver.scheme = Scheme::SemiImplicit;
      } else if (val == "explicit") {
        cfg.solver.scheme = Scheme::Explicit;
      } else {
        throw Error(ErrorKind::Config, "solver.scheme must be semi-implicit or explicit");
      }
    } else if (key == "solver.tolerance") {
      cfg.solver.tolerance = to_double(key, val);
    } else if (key == "solver.snapshot_stride") {
      const auto v = to_int(key, val);
      if (v < 0) throw Error(ErrorKind::Config, "solver.snapshot_stride must be non-negative");
      cfg.solver.snapshot_stride = static_cast<std::size_t>(v);
    } else if (key == "solver.max_iterations") {
      const auto v = to_int(key, val);
      if (v <= 0) throw Error(ErrorKind::Config, "solver.max_iterations must be positive");
      cfg.solver.max_iterations = static_cast<std::size_t>(v);
    } else if (key == "fit.dmin") {
      cfg.fit.dmin = to_double(key, val);
    } else if (key == "fit.dmax") {
      cfg.fit.dmax = to_double(key, val);
    } else if (key == "fit.probes") {
      const auto v = to_int(key, val);
      if (v < 8) throw Error(ErrorKind::Config, "fit.probes must be at least 8");
      cfg.fit.probes = static_cast<std::size_t>(v);
    } else if (key == "spectrum.path") {
      if (val == "auto") cfg.eigen_path = EigenPath::Auto;
      else if (val == "dense") cfg.eigen_path = EigenPath::Dense;
      else if (val == "sparse") cfg.eigen_path = EigenPath::Sparse;
      else throw Error(ErrorKind::Config, "spectrum.path must be auto, dense or sparse");
    } else if (key == "spectrum.alpha") {
      if (val == "oracle") cfg.unit_alpha = false;
      else if (val == "one") cfg.unit_alpha = true;
      else throw Error(ErrorKind::Config, "spectrum.alpha must be oracle or one");
    } else if (key == "verify.only") {
      for (const auto& id : split(val, ',')) {
        if (!id.empty()) cfg.verify_only.push_back(id);
      }
    } else if (key.rfind("verify.", 0) == 0) {
      cfg.verify_constants[key.substr(7)] = to_double(key, val);
    } else if (key == "spectrum.count") {
      const auto v = to_int(key, val);
      if (v <= 0) throw Error(ErrorKind::Config, "spectrum.count must be positive");
      cfg.eigen_count = static_cast<std::size_t>(v);
    }
  }
  if (require_run_keys) {
    if (!seen.contains("dim")) throw Error(ErrorKind::Config, "missing required key 'dim'");
    if (!seen.contains("epsilon")) throw Error(ErrorKind::Config, "missing required key 'epsilon'");
  }
  if (seen.contains("dim") || require_run_keys) {
    if (cfg.dim != 1 && cfg.dim != 2) throw Error(ErrorKind::Config, "dim must be 1 or 2");
  }
  if (seen.contains("epsilon") || require_run_keys) {
    if (!(cfg.epsilon > 0.0 && cfg.epsilon < 1.0)) throw Error(ErrorKind::Config, "epsilon must lie in (0,1)");
  }
  if (!(cfg.fit.dmin > 0.0 && cfg.fit.dmax > cfg.fit.dmin)) {
    throw Error(ErrorKind::Config, "fit window needs 0 < dmin < dmax");
  }
  if (cfg.perturbation.kind == PerturbationKind::File && cfg.perturbation.file.empty()) {
    throw Error(ErrorKind::Config, "perturbation.kind = file needs perturbation.file");
  }
  if (seen.contains("gamma.splines") && !seen.contains("gamma.circles")) cfg.circles.clear();
  if (have_inside && cfg.inside_values.size() != cfg.circles.size() + cfg.splines.size()) {
    throw Error(ErrorKind::Config, "gamma.inside needs one value per curve");
  }
  try {
    if (cfg.dim != 0) (void)cfg.grid();
    cfg.solver.validate();
  } catch (const Error& e) {
    throw Error(ErrorKind::Config, e.what());
  }
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path, bool require_run_keys) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Config, "cannot read config file " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), require_run_keys);
}

JumpSet RunConfig::jump_set() const {
  if (dim == 1) return JumpSet::line(jump_points, jump_values);
  std::vector<CurveGamma> curves;
  for (const auto& c : circles) curves.push_back(CurveGamma::circle({c[0], c[1]}, c[2]));
  for (const auto& s : splines) curves.push_back(CurveGamma::spline(s));
  auto inside = inside_values;
  if (inside.empty()) inside.assign(curves.size(), 1.0);
  return JumpSet::plane(std::move(curves), std::move(inside), outside_value);
}

}  // namespace fracpm
