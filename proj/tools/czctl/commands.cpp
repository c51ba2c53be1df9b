#include "commands.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "czk/bsolve.hpp"
#include "czk/criterion.hpp"
#include "czk/numerics.hpp"
#include "json.hpp"

namespace czctl {

using json = nlohmann::json;

namespace {

czk::KernelExpansion load_kernel(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::invalid_argument("cannot read kernel spec " + path);
  std::stringstream ss;
  ss << is.rdbuf();
  return czk::parse_kernel(ss.str());
}

std::string join(const std::vector<double>& v) {
  std::ostringstream os;
  os << std::setprecision(12);
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  return os.str();
}

czk::TestFunctionSpec parse_field(const std::string& text) {
  const auto colon = text.find(':');
  const std::string kind = text.substr(0, colon);
  double value = 1.0;
  if (colon != std::string::npos) {
    std::size_t used = 0;
    value = std::stod(text.substr(colon + 1), &used);
    if (used != text.size() - colon - 1) throw std::invalid_argument("bad field parameter in " + text);
  }
  if (!(value > 0.0)) throw std::invalid_argument("field parameter must be positive: " + text);
  if (kind == "gaussian") return czk::TestFunctionSpec::gaussian(value);
  if (kind == "bump") return czk::TestFunctionSpec::bump(value);
  if (kind == "ball") return czk::TestFunctionSpec::ball(value);
  throw std::invalid_argument("unknown field kind: " + text);
}

json input_echo(const RunConfig& cfg) {
  json j;
  j["command"] = cfg.command;
  if (!cfg.variant.empty()) j["variant"] = cfg.variant;
  if (!cfg.kernel_path.empty()) j["kernel"] = cfg.kernel_path;
  if (cfg.n) j["n"] = *cfg.n;
  if (cfg.N) j["N"] = *cfg.N;
  if (cfg.command == "bfun") j["verify"] = cfg.verify;
  j["seed"] = cfg.seed;
  return j;
}

// "# key=value" lines for CSV reports.
void csv_header(std::ostream& os, const RunConfig& cfg, const std::vector<std::pair<std::string, std::string>>& extra) {
  os << "# czctl simulate " << cfg.variant << '\n';
  if (!cfg.kernel_path.empty()) os << "# kernel=" << cfg.kernel_path << '\n';
  for (const auto& [k, v] : extra) os << "# " << k << '=' << v << '\n';
  os << "# seed=" << cfg.seed << '\n';
}

int verdict_code(czk::Verdict v) {
  switch (v) {
    case czk::Verdict::certified_pass: return kPass;
    case czk::Verdict::certified_fail:
    case czk::Verdict::fail_divisibility: return kFail;
    default: return kInconclusive;
  }
}

}  // namespace

void validate(const RunConfig& cfg) {
  if (cfg.n && (*cfg.n < 2)) throw std::invalid_argument("--n must be >= 2");
  if (cfg.N && (*cfg.N < 1)) throw std::invalid_argument("--N must be >= 1");
  if (cfg.grid && (*cfg.grid < 2 || *cfg.grid % 2 != 0)) throw std::invalid_argument("--grid must be even and >= 2");
  if (cfg.extent && !(*cfg.extent > 0.0)) throw std::invalid_argument("--extent must be positive");
  if (!(cfg.p >= 1.0) || !std::isfinite(cfg.p)) throw std::invalid_argument("--p must be finite and >= 1");
  if (cfg.command == "simulate" && (cfg.variant == "tstar" || cfg.variant == "ratio" || cfg.variant == "localize") &&
      cfg.kernel_path.empty())
    throw std::invalid_argument("simulate " + cfg.variant + " needs --kernel");
  if (cfg.command == "bfun" && cfg.verify && cfg.kernel_path.empty())
    throw std::invalid_argument("bfun --verify needs --kernel");
}

int cmd_check(const RunConfig& cfg, std::ostream& out) {
  const auto k = load_kernel(cfg.kernel_path);
  const auto report = czk::check_condition_c(k);
  json j;
  j["input"] = input_echo(cfg);
  j["input"]["kernel_spec"] = json::parse(czk::serialize_kernel(k));
  j["report"] = json::parse(czk::report_to_json(report));
  out << j.dump(2) << '\n';
  return verdict_code(report.verdict);
}

int cmd_bfun(const RunConfig& cfg, std::ostream& out) {
  const int n = *cfg.n, N = *cfg.N;
  const auto bc = czk::solve_matching(n, N);
  std::optional<czk::SPolynomial> s;
  std::optional<czk::ExpressioResult> verify;
  if (!cfg.kernel_path.empty()) {
    const auto k = load_kernel(cfg.kernel_path);
    if (k.dim() != n) throw std::invalid_argument("kernel dimension differs from --n");
    s = czk::compute_S(k, bc);
    if (cfg.verify) {
      if (n != 2 && n != 3) throw std::invalid_argument("--verify supports n = 2 and n = 3");
      auto pts = czk::expressio_sample_points();
      if (n == 3)
        for (auto& p : pts) p.push_back(0.25);
      verify = czk::verify_expressio(k, bc, *s, pts);
    }
  }
  json j;
  j["input"] = input_echo(cfg);
  j["result"] = json::parse(czk::bfun_to_json(bc, s, verify));
  out << j.dump(2) << '\n';
  return kPass;
}

namespace {

std::optional<czk::PowerWeight> weight_of(const RunConfig& cfg) {
  if (!cfg.weight_exp) return std::nullopt;
  return czk::PowerWeight{*cfg.weight_exp};
}

std::string weight_text(const RunConfig& cfg) {
  if (!cfg.weight_exp) return "none";
  std::ostringstream os;
  os << std::setprecision(12) << "|x|^" << *cfg.weight_exp;
  return os.str();
}

std::string num(double v) {
  std::ostringstream os;
  os << std::setprecision(12) << v;
  return os.str();
}

int simulate_tstar(const RunConfig& cfg, std::ostream& out) {
  const auto k = load_kernel(cfg.kernel_path);
  const int g = cfg.grid.value_or(128);
  const double l = cfg.extent.value_or(8.0);
  const czk::Grid grid(k.dim(), g, l, cfg.budget);
  const auto spec = parse_field(cfg.fields.empty() ? "gaussian:1" : cfg.fields.front());
  const auto f = czk::make_field(spec, grid);
  const auto levels = cfg.eps_levels.empty() ? czk::dyadic_levels(grid) : cfg.eps_levels;
  const auto w = weight_of(cfg);
  if (w && !w->in_ap(k.dim(), cfg.p)) throw std::invalid_argument("weight exponent outside the A_p range");
  const auto family = czk::truncated_family(k, f, levels);

  csv_header(out, cfg, {{"n", std::to_string(k.dim())}, {"grid", std::to_string(g)}, {"extent", num(l)},
                        {"field", czk::describe(spec)}, {"p", num(cfg.p)}, {"weight", weight_text(cfg)},
                        {"eps_levels", join(levels)}});
  out << "level,eps,sup_abs,norm_p\n";
  czk::GridField tstar(grid);
  for (std::size_t i = 0; i < family.size(); ++i) {
    const auto& t = family[i];
    for (std::size_t j = 0; j < grid.size(); ++j)
      tstar.samples[j] = std::max(tstar.samples[j].real(), std::abs(t.samples[j]));
    out << i << ',' << num(levels[i]) << ',' << num(t.max_abs()) << ',' << num(czk::norm(t, cfg.p, w)) << '\n';
  }
  out << "max,," << num(tstar.max_abs()) << ',' << num(czk::norm(tstar, cfg.p, w)) << '\n';
  return kPass;
}

int simulate_ratio(const RunConfig& cfg, std::ostream& out) {
  const auto k = load_kernel(cfg.kernel_path);
  const int g = cfg.grid.value_or(128);
  const double l = cfg.extent.value_or(8.0);
  const int s = k.parity() == czk::Parity::even ? 1 : 2;
  std::vector<czk::TestFunctionSpec> specs;
  const std::vector<std::string> names =
      cfg.fields.empty() ? std::vector<std::string>{"gaussian:1", "bump:2", "gaussian:0.5"} : cfg.fields;
  for (const auto& f : names) specs.push_back(parse_field(f));
  // budget check up front for the finer grid
  czk::Grid(k.dim(), 2 * g, l, cfg.budget);
  const auto rows = czk::pointwise_ratio_report(k, specs, s, k.dim(), l, {g, 2 * g});

  csv_header(out, cfg, {{"n", std::to_string(k.dim())}, {"grid", std::to_string(g) + "," + std::to_string(2 * g)},
                        {"extent", num(l)}, {"maximal_iterate", std::to_string(s)}});
  out << "field,G,h,sup_ratio,max_tstar,max_mtf,points_used\n";
  for (const auto& r : rows)
    out << '"' << r.field << "\"," << r.points_per_axis << ',' << num(r.spacing) << ',' << num(r.sup_ratio) << ','
        << num(r.max_tstar) << ',' << num(r.max_mtf) << ',' << r.points_used << '\n';
  return kPass;
}

int simulate_localize(const RunConfig& cfg, std::ostream& out) {
  const auto k = load_kernel(cfg.kernel_path);
  const int n = k.dim();
  const int g = cfg.grid.value_or(n == 2 ? 512 : 64);
  const double l = cfg.extent.value_or(n == 2 ? 80.0 : 40.0);
  std::vector<double> xi0 = cfg.xi0;
  if (xi0.empty()) {
    xi0.assign(n, 0.0);
    xi0[0] = 1.0;
  }
  const auto deltas = cfg.delta_list.empty() ? std::vector<double>{0.4, 0.2, 0.1} : cfg.delta_list;
  const czk::Grid grid(n, g, l, cfg.budget);
  const auto rows =
      czk::localization_decay_experiment(czk::kernel_multiplier(k), xi0, deltas, cfg.p, weight_of(cfg), grid);

  csv_header(out, cfg, {{"n", std::to_string(n)}, {"grid", std::to_string(g)}, {"extent", num(l)},
                        {"xi0", join(xi0)}, {"delta_list", join(deltas)}, {"p", num(cfg.p)},
                        {"weight", weight_text(cfg)}});
  out << "delta,ratio,window_sup\n";
  for (const auto& r : rows) out << num(r.delta) << ',' << num(r.ratio) << ',' << num(r.window_sup) << '\n';
  return kPass;
}

int simulate_msl(const RunConfig& cfg, std::ostream& out) {
  czk::MultiplierSampler m;
  int n = 0;
  if (cfg.kernel_path.empty()) {
    n = cfg.n.value_or(2);
    m = [](std::span<const double>) { return std::complex<double>(1.0); };
  } else {
    const auto k = load_kernel(cfg.kernel_path);
    n = k.dim();
    m = czk::kernel_multiplier(k);
  }
  if (cfg.n && *cfg.n != n) throw std::invalid_argument("--n differs from the kernel dimension");
  const auto radii = cfg.radii.empty() ? std::vector<double>{0.25, 0.5, 1.0, 2.0, 4.0} : cfg.radii;
  std::vector<double> xi0 = cfg.xi0;
  if (cfg.window_delta) {
    if (xi0.empty()) {
      xi0.assign(n, 0.0);
      xi0[0] = 1.0;
    }
    if (static_cast<int>(xi0.size()) != n) throw std::invalid_argument("--xi0 dimension mismatch");
    m = czk::localized_multiplier(m, xi0, *cfg.window_delta);
  }
  const auto res = czk::msl_estimate(m, n, cfg.s, cfg.l, radii);

  std::vector<std::pair<std::string, std::string>> hdr{
      {"n", std::to_string(n)}, {"s", num(cfg.s)}, {"l", std::to_string(cfg.l)}, {"radii", join(radii)}};
  if (cfg.kernel_path.empty()) hdr.insert(hdr.begin(), {"multiplier", "1"});
  if (cfg.window_delta) {
    hdr.emplace_back("xi0", join(xi0));
    hdr.emplace_back("window_delta", num(*cfg.window_delta));
  }
  csv_header(out, cfg, hdr);
  out << "R,value\n";
  for (std::size_t i = 0; i < radii.size(); ++i) out << num(radii[i]) << ',' << num(res.per_radius[i]) << '\n';
  out << "# sup=" << num(res.value) << " at R=" << num(res.argmax_radius) << '\n';
  return kPass;
}

}  // namespace

int cmd_simulate(const RunConfig& cfg, std::ostream& out) {
  if (cfg.variant == "tstar") return simulate_tstar(cfg, out);
  if (cfg.variant == "ratio") return simulate_ratio(cfg, out);
  if (cfg.variant == "localize") return simulate_localize(cfg, out);
  if (cfg.variant == "msl") return simulate_msl(cfg, out);
  throw std::invalid_argument("unknown simulate variant " + cfg.variant);
}

}  // namespace czctl
