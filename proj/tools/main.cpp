// resilience_lab: scenario runner for the attrition / resilience toolkit.
// Subcommands map one-to-one onto library operations; every run is
// deterministic given the config file, seed and thread count.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "reslab/attacker.hpp"
#include "reslab/attrition.hpp"
#include "reslab/distributions.hpp"
#include "reslab/json_io.hpp"
#include "reslab/numfmt.hpp"
#include "reslab/parallel.hpp"
#include "reslab/resilience.hpp"
#include "reslab/targeting.hpp"
#include "reslab/transport.hpp"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitIo = 3;
constexpr int kExitNoConverge = 4;

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string config_path;
  std::string out_path;    // empty: use config, then stdout
  std::string format;      // empty: use config, then per-command default
  std::uint64_t seed = 0;
  int threads = -1;        // -1: env fallback, then hardware
};

unsigned resolve_threads(const Options& opt) {
  if (opt.threads >= 0) return reslab::resolve_thread_count(opt.threads);
  if (const char* env = std::getenv("RESILIENCE_LAB_THREADS")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end && *end == '\0' && v >= 0) {
      return reslab::resolve_thread_count(static_cast<unsigned>(v));
    }
    throw ConfigError("RESILIENCE_LAB_THREADS must be a nonnegative integer");
  }
  return reslab::resolve_thread_count(0);
}

json load_config(const std::string& path) {
  if (path.empty()) throw ConfigError("--config is required");
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  json cfg;
  try {
    in >> cfg;
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!cfg.is_object()) throw ConfigError("config root must be an object");
  return cfg;
}

const json& require_section(const json& cfg, const char* name) {
  if (!cfg.contains(name) || !cfg[name].is_object()) {
    throw ConfigError(std::string("config needs a '") + name + "' object");
  }
  return cfg[name];
}

double get_number(const json& j, const char* field, double fallback) {
  if (!j.contains(field)) return fallback;
  if (!j[field].is_number()) {
    throw ConfigError(std::string("field '") + field + "' must be a number");
  }
  return j[field].get<double>();
}

std::size_t get_count(const json& j, const char* field, std::size_t fallback) {
  if (!j.contains(field)) return fallback;
  if (!j[field].is_number_unsigned() && !j[field].is_number_integer()) {
    throw ConfigError(std::string("field '") + field + "' must be an integer");
  }
  auto v = j[field].get<long long>();
  if (v < 0) throw ConfigError(std::string("field '") + field + "' must be >= 0");
  return static_cast<std::size_t>(v);
}

// A grid is either an explicit array or {"from": a, "to": b, "step": s}
// / {"from": a, "to": b, "count": n}.
std::vector<double> parse_grid(const json& j, const char* field) {
  if (!j.contains(field)) {
    throw ConfigError(std::string("config needs grid '") + field + "'");
  }
  const json& g = j[field];
  std::vector<double> out;
  if (g.is_array()) {
    for (const auto& v : g) {
      if (!v.is_number()) {
        throw ConfigError(std::string("grid '") + field +
                          "' must hold numbers");
      }
      out.push_back(v.get<double>());
    }
  } else if (g.is_object()) {
    double from = get_number(g, "from", 0.0);
    double to = get_number(g, "to", -1.0);
    if (!(to >= from)) {
      throw ConfigError(std::string("grid '") + field + "': need to >= from");
    }
    if (g.contains("count")) {
      std::size_t count = get_count(g, "count", 0);
      if (count < 2) {
        throw ConfigError(std::string("grid '") + field + "': count >= 2");
      }
      for (std::size_t i = 0; i < count; ++i) {
        out.push_back(from + (to - from) * static_cast<double>(i) /
                                 static_cast<double>(count - 1));
      }
    } else {
      double step = get_number(g, "step", 0.0);
      if (!(step > 0.0)) {
        throw ConfigError(std::string("grid '") + field + "': step > 0");
      }
      for (double x = from; x <= to + step * 1e-9; x += step) out.push_back(x);
    }
  } else {
    throw ConfigError(std::string("grid '") + field +
                      "' must be an array or a range object");
  }
  if (out.empty()) {
    throw ConfigError(std::string("grid '") + field + "' is empty");
  }
  return out;
}

reslab::ThresholdDistribution parse_distribution(const json& cfg) {
  if (!cfg.contains("distribution")) {
    throw ConfigError("config needs a 'distribution' object");
  }
  try {
    return reslab::distribution_from_json(cfg["distribution"]);
  } catch (const std::exception& e) {
    throw ConfigError(std::string("invalid distribution: ") + e.what());
  }
}

reslab::DynamicsParams parse_dynamics(const json& cfg) {
  reslab::DynamicsParams params;
  if (cfg.contains("dynamics")) {
    const json& d = require_section(cfg, "dynamics");
    params.harassment = get_number(d, "H", 0.0);
    params.alpha = get_number(d, "alpha", 1.0);
    params.lambda = get_number(d, "lambda", 0.0);
    params.tol = get_number(d, "tol", 1e-10);
    params.max_iter = get_count(d, "max_iter", 1000000);
    if (d.contains("H_schedule")) {
      for (const auto& v : d["H_schedule"]) {
        if (!v.is_number()) throw ConfigError("H_schedule must hold numbers");
        params.schedule.push_back(v.get<double>());
      }
    }
  }
  try {
    params.validate();
  } catch (const std::exception& e) {
    throw ConfigError(std::string("invalid dynamics: ") + e.what());
  }
  return params;
}

reslab::AttackerConfig parse_attacker(const json& cfg) {
  reslab::AttackerConfig config;
  const json& a = require_section(cfg, "attacker");
  config.cost_rate = get_number(a, "c", 1.0);
  config.discount = get_number(a, "delta", 0.9);
  config.h_max = get_number(a, "H_max", 1.0);
  config.p_grid = get_count(a, "p_grid", 1001);
  config.h_grid = get_count(a, "h_grid", 501);
  config.tol = get_number(a, "tol", 1e-9);
  if (a.contains("monotone")) {
    if (!a["monotone"].is_boolean()) {
      throw ConfigError("attacker.monotone must be a boolean");
    }
    config.monotone_transition = a["monotone"].get<bool>();
  }
  try {
    config.validate();
  } catch (const std::exception& e) {
    throw ConfigError(std::string("invalid attacker config: ") + e.what());
  }
  return config;
}

// Rows of preformatted cells; CSV or a {"columns":[...],"rows":[...]} JSON
// rendering with identical cell text, so both formats stay byte-stable.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  std::string render_csv() const {
    std::string out;
    for (std::size_t c = 0; c < columns.size(); ++c) {
      if (c > 0) out += ",";
      out += columns[c];
    }
    out += "\n";
    for (const auto& row : rows) {
      for (std::size_t c = 0; c < row.size(); ++c) {
        if (c > 0) out += ",";
        out += row[c];
      }
      out += "\n";
    }
    return out;
  }

  std::string render_json() const {
    std::string out = "{\"columns\":[";
    for (std::size_t c = 0; c < columns.size(); ++c) {
      if (c > 0) out += ",";
      out += "\"" + columns[c] + "\"";
    }
    out += "],\"rows\":[";
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r > 0) out += ",";
      out += "[";
      for (std::size_t c = 0; c < rows[r].size(); ++c) {
        if (c > 0) out += ",";
        bool numeric = !rows[r][c].empty() &&
                       (std::isdigit(static_cast<unsigned char>(rows[r][c][0])) ||
                        rows[r][c][0] == '-');
        out += numeric ? rows[r][c] : "\"" + rows[r][c] + "\"";
      }
      out += "]";
    }
    out += "]}\n";
    return out;
  }
};

void write_output(const std::string& content, const std::string& path) {
  if (path.empty()) {
    std::cout << content;
    if (!std::cout) throw std::ios_base::failure("stdout write failed");
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::ios_base::failure("cannot open output file: " + path);
  out << content;
  out.flush();
  if (!out) throw std::ios_base::failure("write failed: " + path);
}

struct RunContext {
  json cfg;
  Options opt;
  unsigned threads = 1;
  int precision = 12;

  std::string format(const char* fallback) const {
    if (!opt.format.empty()) return opt.format;
    if (cfg.contains("output")) {
      const json& o = cfg["output"];
      if (o.contains("format")) {
        if (!o["format"].is_string()) {
          throw ConfigError("output.format must be a string");
        }
        return o["format"].get<std::string>();
      }
    }
    return fallback;
  }

  std::string out_path() const {
    if (!opt.out_path.empty()) return opt.out_path;
    if (cfg.contains("output")) {
      const json& o = cfg["output"];
      if (o.contains("path")) {
        if (!o["path"].is_string()) {
          throw ConfigError("output.path must be a string");
        }
        return o["path"].get<std::string>();
      }
    }
    return {};
  }

  std::string num(double v) const { return reslab::format_sig(v, precision); }

  int emit_table(const Table& table, const char* default_format) const {
    std::string fmt = format(default_format);
    if (fmt != "csv" && fmt != "json") {
      throw ConfigError("format must be 'csv' or 'json'");
    }
    write_output(fmt == "csv" ? table.render_csv() : table.render_json(),
                 out_path());
    return kExitOk;
  }
};

int cmd_sweep(const RunContext& ctx) {
  auto f = parse_distribution(ctx.cfg);
  auto params = parse_dynamics(ctx.cfg);
  auto grid = parse_grid(require_section(ctx.cfg, "dynamics"), "H_grid");
  for (double h : grid) {
    if (!(h >= 0.0)) throw ConfigError("H_grid levels must be >= 0");
  }
  auto curve =
      reslab::sweep_pinf(f, grid, params.alpha, params.lambda, ctx.threads);
  Table table;
  table.columns = {"H", "p_inf"};
  for (const auto& [h, p] : curve) {
    table.rows.push_back({ctx.num(h), ctx.num(p)});
  }
  return ctx.emit_table(table, "csv");
}

int cmd_surface(const RunContext& ctx) {
  auto f = parse_distribution(ctx.cfg);
  const json& d = require_section(ctx.cfg, "dynamics");
  auto alpha_grid = parse_grid(d, "alpha_grid");
  auto lambda_grid = parse_grid(d, "lambda_grid");
  std::size_t cells = alpha_grid.size() * lambda_grid.size();
  std::vector<double> values(cells);
  reslab::parallel_for(cells, ctx.threads, [&](std::size_t k) {
    double alpha = alpha_grid[k / lambda_grid.size()];
    double lambda = lambda_grid[k % lambda_grid.size()];
    values[k] = reslab::resilience_combined(f, alpha, lambda).value;
  });
  Table table;
  table.columns = {"alpha", "lambda", "resilience"};
  for (std::size_t k = 0; k < cells; ++k) {
    table.rows.push_back({ctx.num(alpha_grid[k / lambda_grid.size()]),
                          ctx.num(lambda_grid[k % lambda_grid.size()]),
                          ctx.num(values[k])});
  }
  return ctx.emit_table(table, "csv");
}

int cmd_resilience(const RunContext& ctx) {
  auto f = parse_distribution(ctx.cfg);
  auto params = parse_dynamics(ctx.cfg);
  auto report = reslab::resilience_combined(f, params.alpha, params.lambda);
  if (ctx.cfg.contains("resilience")) {
    const json& r = require_section(ctx.cfg, "resilience");
    if (r.contains("auc_range")) {
      auto range = parse_grid(r, "auc_range");
      if (range.size() != 2) {
        throw ConfigError("resilience.auc_range must be [h_min, h_max]");
      }
      std::size_t grid = get_count(r, "auc_grid", 10000);
      report.auc = reslab::AucResult{
          reslab::auc_resilience(f, range[0], range[1], grid, params.alpha,
                                 params.lambda, ctx.threads),
          range[0], range[1]};
    }
    if (r.contains("critical") && r["critical"].is_boolean() &&
        r["critical"].get<bool>()) {
      if (report.infinite()) {
        throw ConfigError(
            "resilience.critical: no critical fraction for infinite "
            "resilience");
      }
      report.critical_fraction =
          reslab::critical_fraction(f, params.alpha, params.lambda);
    }
  }
  std::string fmt = ctx.format("json");
  if (fmt == "json") {
    write_output(reslab::resilience_report_to_json(report, ctx.precision),
                 ctx.out_path());
    return kExitOk;
  }
  Table table;
  table.columns = {"value", "maximizer_p"};
  std::vector<std::string> row = {ctx.num(report.value),
                                  ctx.num(report.maximizer_p)};
  if (report.auc) {
    table.columns.insert(table.columns.end(), {"auc", "auc_hmin", "auc_hmax"});
    row.insert(row.end(), {ctx.num(report.auc->value),
                           ctx.num(report.auc->h_min),
                           ctx.num(report.auc->h_max)});
  }
  if (report.critical_fraction) {
    table.columns.insert(table.columns.end(),
                         {"critical_fraction", "remaining_fraction"});
    row.insert(row.end(), {ctx.num(*report.critical_fraction),
                           ctx.num(1.0 - *report.critical_fraction)});
  }
  table.rows.push_back(row);
  return ctx.emit_table(table, "csv");
}

int cmd_simulate(const RunContext& ctx) {
  auto f = parse_distribution(ctx.cfg);
  auto params = parse_dynamics(ctx.cfg);
  auto traj = reslab::simulate(f, params);
  Table table;
  table.columns = {"t", "p"};
  for (std::size_t t = 0; t < traj.points.size(); ++t) {
    table.rows.push_back({std::to_string(t), ctx.num(traj.points[t])});
  }
  int code = ctx.emit_table(table, "csv");
  if (code != kExitOk) return code;
  return traj.converged ? kExitOk : kExitNoConverge;
}

int cmd_target(const RunContext& ctx) {
  auto f = parse_distribution(ctx.cfg);
  auto params = parse_dynamics(ctx.cfg);
  double epsilon = 1e-6;
  std::size_t max_steps = 1000000;
  if (ctx.cfg.contains("target")) {
    const json& t = require_section(ctx.cfg, "target");
    epsilon = get_number(t, "epsilon", epsilon);
    max_steps = get_count(t, "max_steps", max_steps);
  }
  if (!(params.harassment > 0.0)) {
    throw ConfigError("target needs dynamics.H > 0");
  }
  reslab::TargetingTrace trace;
  try {
    trace = reslab::targeted_unravel(f, params.harassment, epsilon, max_steps);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  Table table;
  table.columns = {"t", "theta", "removed_mass", "cumulative"};
  for (std::size_t t = 0; t < trace.thresholds.size(); ++t) {
    table.rows.push_back({std::to_string(t), ctx.num(trace.thresholds[t]),
                          ctx.num(trace.removed_mass[t]),
                          ctx.num(trace.cumulative[t])});
  }
  int code = ctx.emit_table(table, "csv");
  if (code != kExitOk) return code;
  return trace.steps_to_unravel ? kExitOk : kExitNoConverge;
}

int cmd_attack(const RunContext& ctx) {
  auto f = parse_distribution(ctx.cfg);
  auto config = parse_attacker(ctx.cfg);
  auto sol = reslab::value_iteration(f, config, ctx.threads);
  Table table;
  table.columns = {"p", "V", "pi_star"};
  for (std::size_t i = 0; i < sol.value.grid.size(); ++i) {
    table.rows.push_back({ctx.num(sol.value.grid[i]),
                          ctx.num(sol.value.values[i]),
                          ctx.num(sol.policy.actions[i])});
  }
  int code = ctx.emit_table(table, "csv");
  if (code != kExitOk) return code;
  return sol.converged ? kExitOk : kExitNoConverge;
}

int cmd_voi(const RunContext& ctx) {
  auto f = parse_distribution(ctx.cfg);
  auto config = parse_attacker(ctx.cfg);
  const json& v = require_section(ctx.cfg, "voi");
  auto eps_grid = parse_grid(v, "eps_grid");
  for (double eps : eps_grid) {
    if (!(eps >= 0.0 && eps < 1.0)) {
      throw ConfigError("voi.eps_grid values must lie in [0,1)");
    }
  }
  std::string metric = "sup";
  if (v.contains("metric")) {
    if (!v["metric"].is_string()) throw ConfigError("voi.metric: string");
    metric = v["metric"].get<std::string>();
  }
  reslab::PerturbationFamily family;
  if (metric == "sup") {
    family = reslab::make_widen_family(f);
  } else if (metric == "wasserstein1") {
    // calibrate the widened distribution against W1 instead of the sup norm
    auto sup_family = reslab::make_widen_family(f);
    family = [f, sup_family](double eps) {
      if (eps == 0.0) return sup_family(0.0);
      double lo = 0.0, hi = 0.999;
      for (int i = 0; i < 80; ++i) {
        double mid = 0.5 * (lo + hi);
        double d = reslab::wasserstein_continuous(f, sup_family(mid), 1.0);
        if (d < eps) {
          lo = mid;
        } else {
          hi = mid;
        }
      }
      return sup_family(0.5 * (lo + hi));
    };
  } else {
    throw ConfigError("voi.metric must be 'sup' or 'wasserstein1'");
  }
  std::vector<reslab::VoiPoint> curve;
  try {
    curve = reslab::voi_curve(f, family, eps_grid, config, ctx.threads);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  Table table;
  table.columns = {"eps", "regret"};
  for (const auto& point : curve) {
    table.rows.push_back({ctx.num(point.epsilon), ctx.num(point.regret)});
  }
  return ctx.emit_table(table, "csv");
}

int cmd_intervene(const RunContext& ctx) {
  auto f = parse_distribution(ctx.cfg);
  const json& t = require_section(ctx.cfg, "transport");
  std::size_t n = get_count(t, "n", 0);
  if (n < 1) throw ConfigError("transport.n must be >= 1");
  double p_norm = get_number(t, "p_norm", 1.0);
  bool has_budget = t.contains("budget");
  bool has_target = t.contains("R_target");
  if (has_budget == has_target) {
    throw ConfigError("transport needs exactly one of 'budget' or 'R_target'");
  }
  auto qv = reslab::discretize(f, n);
  reslab::InterventionPlan plan;
  try {
    plan = has_budget
               ? reslab::max_resilience_under_budget(
                     qv, get_number(t, "budget", 0.0), p_norm)
               : reslab::min_cost_to_reach(qv, get_number(t, "R_target", 0.0),
                                           p_norm);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  if (ctx.format("json") != "json") {
    throw ConfigError("intervene emits json only");
  }
  write_output(reslab::intervention_plan_to_json(plan, ctx.precision),
               ctx.out_path());
  return kExitOk;
}

int cmd_dist(const RunContext& ctx) {
  auto f = parse_distribution(ctx.cfg);
  std::size_t grid = 101;
  std::size_t samples = 0;
  if (ctx.cfg.contains("dist")) {
    const json& d = require_section(ctx.cfg, "dist");
    grid = get_count(d, "grid", grid);
    samples = get_count(d, "sample_count", 0);
  }
  Table table;
  if (samples > 0) {
    auto values = f.sample(samples, ctx.opt.seed);
    table.columns = {"i", "value"};
    for (std::size_t i = 0; i < values.size(); ++i) {
      table.rows.push_back({std::to_string(i), ctx.num(values[i])});
    }
    return ctx.emit_table(table, "csv");
  }
  if (grid < 2) throw ConfigError("dist.grid must be >= 2");
  double lo = f.support_lower();
  double hi = f.support_bounded() ? f.support_upper() : f.quantile(1.0 - 1e-9);
  bool with_density = f.has_density();
  table.columns = with_density
                      ? std::vector<std::string>{"x", "cdf", "density"}
                      : std::vector<std::string>{"x", "cdf"};
  for (std::size_t i = 0; i < grid; ++i) {
    double x = lo + (hi - lo) * static_cast<double>(i) /
                        static_cast<double>(grid - 1);
    std::vector<std::string> row = {ctx.num(x), ctx.num(f.cdf(x))};
    if (with_density) row.push_back(ctx.num(f.density(x)));
    table.rows.push_back(std::move(row));
  }
  return ctx.emit_table(table, "csv");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"attrition, resilience and intervention toolkit for "
               "harassment-pressured civic networks"};
  app.require_subcommand(1);

  Options opt;
  const char* names[] = {"sweep",  "surface", "resilience",
                         "simulate", "target",  "attack",
                         "voi",    "intervene", "dist"};
  const char* descs[] = {
      "p_inf(H) curve over a harassment grid (CSV: H,p_inf)",
      "resilience over an (alpha, lambda) grid (CSV: alpha,lambda,resilience)",
      "resilience report with optional AUC and critical fraction (JSON)",
      "departed-fraction trajectory (CSV: t,p)",
      "targeted-attack trace (CSV: t,theta,removed_mass,cumulative)",
      "attacker MDP solution (CSV: p,V,pi_star)",
      "value-of-information regret curve (CSV: eps,regret)",
      "intervention plan via quantile lifting (JSON)",
      "distribution table or samples (CSV: x,cdf[,density] / i,value)"};
  for (int i = 0; i < 9; ++i) {
    auto* cmd = app.add_subcommand(names[i], descs[i]);
    cmd->add_option("--config", opt.config_path, "scenario config (JSON)");
    cmd->add_option("--out", opt.out_path, "output path (default: stdout)");
    cmd->add_option("--format", opt.format, "csv or json");
    cmd->add_option("--seed", opt.seed, "PRNG seed for sampling commands");
    cmd->add_option("--threads", opt.threads,
                    "worker threads (0 = all cores; env "
                    "RESILIENCE_LAB_THREADS as fallback)");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    RunContext ctx;
    ctx.opt = opt;
    ctx.cfg = load_config(opt.config_path);
    ctx.threads = resolve_threads(opt);
    if (ctx.cfg.contains("output")) {
      ctx.precision = static_cast<int>(
          get_count(ctx.cfg["output"], "precision", 12));
      if (ctx.precision < 1 || ctx.precision > 17) {
        throw ConfigError("output.precision must lie in [1,17]");
      }
    }

    std::string mode = app.get_subcommands().front()->get_name();
    if (mode == "sweep") return cmd_sweep(ctx);
    if (mode == "surface") return cmd_surface(ctx);
    if (mode == "resilience") return cmd_resilience(ctx);
    if (mode == "simulate") return cmd_simulate(ctx);
    if (mode == "target") return cmd_target(ctx);
    if (mode == "attack") return cmd_attack(ctx);
    if (mode == "voi") return cmd_voi(ctx);
    if (mode == "intervene") return cmd_intervene(ctx);
    if (mode == "dist") return cmd_dist(ctx);
    std::cerr << "unknown subcommand\n";
    return kExitConfig;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::ios_base::failure& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  }
}
