#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "pairwire/bec.hpp"
#include "pairwire/errors.hpp"
#include "pairwire/spectral.hpp"
#include "pairwire/units.hpp"
#include "run_record.hpp"

namespace pairwire::cli {

namespace {

using nlohmann::json;

// Rendered output of one command: a record plus, for tabular commands, CSV.
struct Rendered {
  RunRecord record;
  std::string csv;
};

struct CommonFlags {
  std::string out_format = "json";
  std::string output_path;
  std::string cache_dir;
  bool no_cache = false;
};

std::vector<double> parse_number_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      throw ConfigError("not a number: '" + item + "'");
    }
    if (used != item.size()) throw ConfigError("not a number: '" + item + "'");
    out.push_back(v);
  }
  if (out.empty()) throw ConfigError("empty number list");
  return out;
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  for (double v : parse_number_list(text)) {
    if (v != std::floor(v) || std::abs(v) > 1e9) {
      throw ConfigError("not an integer: " + format_number(v));
    }
    out.push_back(static_cast<int>(v));
  }
  return out;
}

/// Interaction profile syntax: a bare number or const:<c>, step:<c>:<y0>,
/// table:<v0>,<v1>,... (equally spaced samples on [0, 1]).
SigmaProfile parse_sigma(const std::string& text) {
  const auto colon = text.find(':');
  const std::string kind = colon == std::string::npos ? "" : text.substr(0, colon);
  const std::string rest = colon == std::string::npos ? text : text.substr(colon + 1);
  if (kind.empty() || kind == "const") {
    const auto v = parse_number_list(rest);
    if (v.size() != 1) throw ConfigError("constant sigma takes one value");
    return SigmaProfile::constant(v[0]);
  }
  if (kind == "step") {
    std::string spec = rest;
    std::replace(spec.begin(), spec.end(), ':', ',');
    const auto v = parse_number_list(spec);
    if (v.size() != 2) throw ConfigError("step sigma takes step:<c>:<y0>");
    return SigmaProfile::step(v[0], v[1]);
  }
  if (kind == "table") return SigmaProfile::table(parse_number_list(rest));
  throw ConfigError("unknown sigma profile kind '" + kind + "'");
}

json to_json(const std::vector<double>& v) { return json(v); }

void require_format(const std::string& fmt) {
  if (fmt != "json" && fmt != "csv") throw ConfigError("--out must be json or csv");
}

SolverOptions solver_options(int k, double tol, int maxiter) {
  SolverOptions o;
  o.k = k;
  o.tol = tol;
  o.maxiter = maxiter;
  o.keep_vectors = false;
  return o;
}

json solver_params(double tol, int maxiter) {
  return {{"tol", tol}, {"maxiter", maxiter}, {"seed", kDefaultSolverSeed}};
}

// ---------------------------------------------------------------- spectrum

struct SpectrumFlags {
  double length = 8.0;
  int m = 64;
  int k = 3;
  std::string sigma = "0";
  double tol = 1e-9;
  int maxiter = 5000;
  std::optional<double> d_meters;
};

json spectrum_params(const SpectrumFlags& f, const CommonFlags& c) {
  json p = {{"L", f.length}, {"m", f.m},       {"k", f.k},
            {"sigma", parse_sigma(f.sigma).describe()}, {"out", c.out_format},
            {"solver", solver_params(f.tol, f.maxiter)}};
  p["d_meters"] = f.d_meters ? json(*f.d_meters) : json(nullptr);
  return p;
}

Rendered run_spectrum(const SpectrumFlags& f, const json& params) {
  if (f.d_meters && !(*f.d_meters > 0.0)) throw ConfigError("--d-meters must be positive");
  const SigmaProfile sigma = parse_sigma(f.sigma);
  const Grid grid = build_grid(DomainSpec(f.length), f.m);
  const SparseOperator op = assemble_operator(grid, sigma);
  const SpectrumResult r = lowest_eigenpairs(op, solver_options(f.k, f.tol, f.maxiter));

  const double threshold = threshold_dimless();
  const double bound = kCountSafety * threshold;
  std::vector<double> ratios;
  for (double e : r.eigenvalues) ratios.push_back(e / threshold);

  json outputs = {{"dof", op.size()},
                  {"method", r.diagnostics.method},
                  {"iterations", r.diagnostics.iterations},
                  {"eigenvalues", to_json(r.eigenvalues)},
                  {"residuals", to_json(r.residuals)},
                  {"ratio_to_threshold", to_json(ratios)},
                  {"threshold", threshold},
                  {"count_bound", bound},
                  {"count_below", count_below(r, bound)}};
  const double e0 = r.eigenvalues.front();
  const bool has_gap = e0 <= threshold;
  outputs["gap"] = has_gap ? json(gap(e0)) : json(nullptr);
  outputs["gap_ratio"] = has_gap ? json(gap(e0) / threshold) : json(nullptr);

  std::vector<double> physical_ev;
  if (f.d_meters) {
    for (double e : r.eigenvalues) physical_ev.push_back(units::to_physical(e, *f.d_meters).ev);
    json phys = {{"d_meters", *f.d_meters},
                 {"eigenvalues_ev", to_json(physical_ev)},
                 {"threshold_ev", units::to_physical(threshold, *f.d_meters).ev}};
    phys["gap_ev"] = has_gap ? json(units::gap_from_d(*f.d_meters, gap(e0) / threshold)) : json(nullptr);
    outputs["physical"] = phys;
  }

  std::ostringstream csv;
  csv << "index,eigenvalue,residual,ratio_to_threshold" << (f.d_meters ? ",eigenvalue_ev" : "") << "\n";
  for (std::size_t i = 0; i < r.eigenvalues.size(); ++i) {
    csv << i << "," << format_number(r.eigenvalues[i]) << "," << format_number(r.residuals[i]) << ","
        << format_number(ratios[i]);
    if (f.d_meters) csv << "," << format_number(physical_ev[i]);
    csv << "\n";
  }
  return {{"spectrum", params, outputs}, csv.str()};
}

// ---------------------------------------------------------------- converge

struct ConvergeFlags {
  std::string lengths = "4,8";
  std::string ms = "32,64,128";
  std::string sigma = "0";
  double tol = 1e-9;
  int maxiter = 5000;
};

json converge_params(const ConvergeFlags& f, const CommonFlags& c) {
  return {{"L_list", parse_number_list(f.lengths)},
          {"m_list", parse_int_list(f.ms)},
          {"sigma", parse_sigma(f.sigma).describe()},
          {"out", c.out_format},
          {"solver", solver_params(f.tol, f.maxiter)}};
}

Rendered run_converge(const ConvergeFlags& f, const json& params) {
  const ConvergenceTable table =
      convergence_study(parse_number_list(f.lengths), parse_int_list(f.ms), parse_sigma(f.sigma),
                        solver_options(3, f.tol, f.maxiter));
  json rows = json::array();
  std::ostringstream csv;
  csv << "L,m,E0,E1,count,ratio_to_threshold\n";
  for (const auto& r : table.rows) {
    rows.push_back({{"L", r.length},
                    {"m", r.m},
                    {"E0", r.e0},
                    {"E1", r.e1},
                    {"count", r.count},
                    {"ratio_to_threshold", r.ratio_to_threshold}});
    csv << format_number(r.length) << "," << r.m << "," << format_number(r.e0) << ","
        << format_number(r.e1) << "," << r.count << "," << format_number(r.ratio_to_threshold)
        << "\n";
  }
  const Extrapolation& ex = table.extrapolated_e0;
  json extra = {{"L", ex.length},
                {"m_coarse", ex.m_coarse},
                {"m_fine", ex.m_fine},
                {"E0", ex.value},
                {"error_estimate", ex.error_estimate},
                {"ratio_to_threshold", ex.ratio_to_threshold},
                {"flagged", ex.flagged}};
  extra["order_ratio"] = ex.order_ratio ? json(*ex.order_ratio) : json(nullptr);
  extra["coarser_E0"] = ex.coarser_value ? json(*ex.coarser_value) : json(nullptr);

  csv << "# extrapolated_E0=" << format_number(ex.value)
      << " error_estimate=" << format_number(ex.error_estimate)
      << " ratio_to_threshold=" << format_number(ex.ratio_to_threshold) << " L=" << format_number(ex.length)
      << " m=" << ex.m_coarse << "," << ex.m_fine << "\n";
  if (ex.order_ratio) {
    csv << "# order_ratio=" << format_number(*ex.order_ratio) << " flagged=" << (ex.flagged ? 1 : 0)
        << "\n";
  }
  return {{"converge", params, {{"rows", rows}, {"extrapolation", extra}}}, csv.str()};
}

// ---------------------------------------------------------------- gamma

struct GammaFlags {
  double length = 8.0;
  std::string ms = "64";
  double tol = 1e-3;
  double solver_tol = 1e-9;
  int maxiter = 5000;
};

json gamma_params(const GammaFlags& f, const CommonFlags& c) {
  return {{"L", f.length},
          {"m_list", parse_int_list(f.ms)},
          {"tol", f.tol},
          {"out", c.out_format},
          {"solver", solver_params(f.solver_tol, f.maxiter)}};
}

Rendered run_gamma(const GammaFlags& f, const json& params) {
  if (!(f.tol > 0.0)) throw ConfigError("--tol must be positive");
  json grids = json::array();
  std::ostringstream csv;
  csv << "m,sigma_star,lower,upper,e0_lower,e0_upper,target,solves\n";
  for (int m : parse_int_list(f.ms)) {
    const GammaResult g = find_gamma(f.length, m, f.tol, solver_options(1, f.solver_tol, f.maxiter));
    grids.push_back({{"m", m},
                     {"sigma_star", g.sigma_star},
                     {"certificate",
                      {{"lower", g.lower}, {"upper", g.upper}, {"e0_lower", g.e0_lower},
                       {"e0_upper", g.e0_upper}, {"target", g.target}}},
                     {"solves", g.evaluations.size()}});
    csv << m << "," << format_number(g.sigma_star) << "," << format_number(g.lower) << ","
        << format_number(g.upper) << "," << format_number(g.e0_lower) << ","
        << format_number(g.e0_upper) << "," << format_number(g.target) << ","
        << g.evaluations.size() << "\n";
  }
  return {{"gamma", params, {{"L", f.length}, {"threshold", threshold_dimless()}, {"grids", grids}}},
          csv.str()};
}

// ---------------------------------------------------------------- bec

struct BecFlags {
  double beta = 1.0;
  std::optional<double> rho;
  std::optional<double> rho_mult;
  std::string lengths = "1000,10000,100000";
  std::string model = "bound";
  double tol = 1e-10;
  std::optional<double> e0;
  double spectral_length = 8.0;
  std::string spectral_ms = "32,64";
  int explicit_m = 32;
  int explicit_k = 24;
  double solver_tol = 1e-9;
  int maxiter = 5000;
};

json bec_params(const BecFlags& f, const CommonFlags& c) {
  json p = {{"beta", f.beta},
            {"L_list", parse_number_list(f.lengths)},
            {"model", f.model},
            {"tol", f.tol},
            {"out", c.out_format},
            {"solver", solver_params(f.solver_tol, f.maxiter)}};
  p["rho"] = f.rho ? json(*f.rho) : json(nullptr);
  p["rho_mult"] = f.rho ? json(nullptr) : json(f.rho_mult.value_or(2.0));
  if (f.e0) {
    p["E0"] = *f.e0;
  } else {
    p["E0_source"] = {{"L", f.spectral_length}, {"m_list", parse_int_list(f.spectral_ms)}};
  }
  if (f.model == "explicit") p["explicit"] = {{"m", f.explicit_m}, {"k", f.explicit_k}};
  return p;
}

Rendered run_bec(const BecFlags& f, const json& params) {
  if (f.model != "bound" && f.model != "nobound" && f.model != "explicit") {
    throw ConfigError("--model must be bound, nobound or explicit");
  }
  if (f.rho && !(*f.rho > 0.0)) throw ValidationError("--rho must be positive");
  if (f.rho_mult && !(*f.rho_mult > 0.0)) throw ValidationError("--rho-mult must be positive");

  double e0 = 0.0;
  if (f.e0) {
    e0 = *f.e0;
  } else {
    const ConvergenceTable t = convergence_study({f.spectral_length}, parse_int_list(f.spectral_ms),
                                                 SigmaProfile::zero(),
                                                 solver_options(2, f.solver_tol, f.maxiter));
    e0 = t.extrapolated_e0.value;
  }
  const double rho_crit = bec::critical_density(f.beta, e0);
  const double rho = f.rho ? *f.rho : f.rho_mult.value_or(2.0) * rho_crit;
  const std::vector<double> lengths = parse_number_list(f.lengths);

  std::vector<bec::GasSolution> sweep;
  if (f.model == "explicit") {
    if (std::adjacent_find(lengths.begin(), lengths.end(), std::greater_equal<>()) != lengths.end()) {
      throw ValidationError("length sequence must be strictly ascending");
    }
    for (double length : lengths) {
      const SpectrumResult r = pencil_spectrum(length, f.explicit_m, SigmaProfile::zero(),
                                               solver_options(f.explicit_k, f.solver_tol, f.maxiter));
      const auto model = bec::SpectrumModel::explicit_levels(r.eigenvalues);
      sweep.push_back(bec::condensate_stats(f.beta, rho, length, model, f.tol));
    }
  } else {
    const auto model = f.model == "bound" ? bec::SpectrumModel::bound(e0) : bec::SpectrumModel::no_bound();
    sweep = bec::thermo_sweep(f.beta, rho, lengths, model, f.tol);
  }

  json rows = json::array();
  std::ostringstream csv;
  csv << "L,mu,mu_offset,n0,n0_per_L,rho_ex,rho\n";
  for (const auto& g : sweep) {
    rows.push_back({{"L", g.length},
                    {"mu", g.mu},
                    {"mu_offset", g.mu_offset},
                    {"n0", g.n0},
                    {"n0_per_L", g.n0_per_length},
                    {"rho_ex", g.rho_ex},
                    {"rho", g.rho},
                    {"truncation_bound", g.truncation_bound}});
    csv << format_number(g.length) << "," << format_number(g.mu) << "," << format_number(g.mu_offset)
        << "," << format_number(g.n0) << "," << format_number(g.n0_per_length) << ","
        << format_number(g.rho_ex) << "," << format_number(g.rho) << "\n";
  }
  csv << "# model=" << f.model << " beta=" << format_number(f.beta) << " rho=" << format_number(rho)
      << " rho_crit=" << format_number(rho_crit) << " E0=" << format_number(e0)
      << " rho_minus_rho_crit=" << format_number(rho - rho_crit) << "\n";
  json outputs = {{"E0", e0},       {"rho_crit", rho_crit}, {"rho", rho},
                  {"rho_minus_rho_crit", rho - rho_crit},   {"sweep", rows}};
  return {{"bec", params, outputs}, csv.str()};
}

// ---------------------------------------------------------------- units

struct UnitsFlags {
  std::optional<double> gap_ev;
  std::optional<double> d_meters;
  double gap_ratio = 1.0;
  bool show_constants = false;
};

json units_params(const UnitsFlags& f, const CommonFlags& c) {
  json p = {{"gap_ratio", f.gap_ratio}, {"show_constants", f.show_constants}, {"out", c.out_format}};
  p["gap_ev"] = f.gap_ev ? json(*f.gap_ev) : json(nullptr);
  p["d_meters"] = f.d_meters ? json(*f.d_meters) : json(nullptr);
  return p;
}

Rendered run_units(const UnitsFlags& f, const json& params) {
  if (!f.gap_ev && !f.d_meters && !f.show_constants) {
    throw ConfigError("units needs --gap-ev, --d-meters or --show-constants");
  }
  const auto& c = units::kCodata2018;
  json outputs = json::object();
  std::ostringstream csv;
  csv << "quantity,value,unit\n";
  if (f.show_constants) {
    outputs["constants"] = {{"source", "CODATA 2018"},
                            {"hbar_J_s", c.hbar},
                            {"electron_mass_kg", c.electron_mass},
                            {"electron_volt_J", c.electron_volt}};
    csv << "hbar," << format_number(c.hbar) << ",J s\n"
        << "electron_mass," << format_number(c.electron_mass) << ",kg\n"
        << "electron_volt," << format_number(c.electron_volt) << ",J\n";
  }
  if (f.gap_ev) {
    const double d = units::d_from_gap(*f.gap_ev, f.gap_ratio);
    outputs["from_gap"] = {{"gap_ev", *f.gap_ev},
                           {"gap_ratio", f.gap_ratio},
                           {"d_meters", d},
                           {"roundtrip_gap_ev", units::gap_from_d(d, f.gap_ratio)},
                           {"quoted_order_m", units::kQuotedExtensionOrder},
                           {"ratio_to_quoted_order", d / units::kQuotedExtensionOrder}};
    csv << "d_from_gap," << format_number(d) << ",m\n"
        << "quoted_order," << format_number(units::kQuotedExtensionOrder) << ",m\n";
  }
  if (f.d_meters) {
    const double delta = units::gap_from_d(*f.d_meters, f.gap_ratio);
    outputs["from_d"] = {{"d_meters", *f.d_meters},
                         {"gap_ratio", f.gap_ratio},
                         {"gap_ev", delta},
                         {"threshold_ev", units::to_physical(threshold_dimless(), *f.d_meters).ev}};
    csv << "gap_from_d," << format_number(delta) << ",eV\n";
  }
  return {{"units", params, outputs}, csv.str()};
}

// ---------------------------------------------------------------- driver

int exit_code_for(const std::exception_ptr& ep, std::ostream& err) {
  try {
    std::rethrow_exception(ep);
  } catch (const IterationError& e) {
    err << "error: " << e.what() << "\n";
    return kExitNonConvergence;
  } catch (const CapError& e) {
    err << "error: " << e.what() << "\n";
    return kExitNonConvergence;
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfig;
  }
}

void emit(const std::string& bytes, const CommonFlags& common, std::ostream& out) {
  if (common.output_path.empty()) {
    out << bytes;
    return;
  }
  std::ofstream file(common.output_path, std::ios::binary | std::ios::trunc);
  if (!file) throw IoError("cannot open output file " + common.output_path);
  file << bytes;
  if (!file) throw IoError("short write to " + common.output_path);
}

std::optional<ResultCache> open_cache(const CommonFlags& common) {
  if (common.no_cache) return std::nullopt;
  if (!common.cache_dir.empty()) return ResultCache(common.cache_dir);
  if (const char* env = std::getenv(kCacheEnv); env && *env) return ResultCache(env);
  return std::nullopt;
}

// Digest, cache lookup, compute, store, emit.
void execute(const std::string& command, const json& params, const CommonFlags& common,
             const std::function<Rendered()>& compute, std::ostream& out, std::ostream& err) {
  require_format(common.out_format);
  const std::string digest = params_digest(command, params);
  const std::optional<ResultCache> cache = open_cache(common);
  if (cache) {
    if (auto hit = cache->load(digest, common.out_format)) {
      err << "cache hit " << digest << "\n";
      emit(*hit, common, out);
      return;
    }
  }
  const Rendered r = compute();
  const std::string bytes = common.out_format == "json" ? r.record.to_text() : r.csv;
  if (cache) cache->store(digest, common.out_format, bytes, command);
  emit(bytes, common, out);
}

void add_common(CLI::App* sub, CommonFlags& c, const std::string& default_format) {
  c.out_format = default_format;
  sub->add_option("--out", c.out_format, "Output format: json or csv")->capture_default_str();
  sub->add_option("--output", c.output_path, "Write the result to this file instead of stdout");
  sub->add_option("--cache-dir", c.cache_dir,
                  std::string("Result cache directory (default: $") + kCacheEnv + ")");
  sub->add_flag("--no-cache", c.no_cache, "Neither read nor write the result cache");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Bound electron pairs in a quantum wire: pair spectrum and pair condensation"};
  app.name("pairwire");
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(tool_version()));

  std::string selected;
  std::function<void()> action;

  CommonFlags spectrum_common;
  SpectrumFlags spectrum;
  auto* s = app.add_subcommand("spectrum", "Lowest eigenvalues, gap and bound-state count");
  s->add_option("--L", spectrum.length, "Wire length in units of d")->capture_default_str();
  s->add_option("--m", spectrum.m, "Grid nodes per pair extension d")->capture_default_str();
  s->add_option("--k", spectrum.k, "Number of eigenvalues")->capture_default_str();
  s->add_option("--sigma", spectrum.sigma, "Wire-end interaction: c | const:c | step:c:y0 | table:v0,v1,...")
      ->capture_default_str();
  s->add_option("--tol", spectrum.tol, "Eigensolver residual tolerance")->capture_default_str();
  s->add_option("--maxiter", spectrum.maxiter, "Eigensolver iteration cap")->capture_default_str();
  s->add_option("--d-meters", spectrum.d_meters, "Physical pair extension for eV output");
  add_common(s, spectrum_common, "json");
  s->callback([&] {
    action = [&] {
      execute("spectrum", spectrum_params(spectrum, spectrum_common), spectrum_common,
              [&] { return run_spectrum(spectrum, spectrum_params(spectrum, spectrum_common)); }, out,
              err);
    };
  });

  CommonFlags converge_common;
  ConvergeFlags converge;
  auto* c = app.add_subcommand("converge", "Ground-state convergence in L and h with extrapolation");
  c->add_option("--L-list", converge.lengths, "Comma-separated wire lengths")->capture_default_str();
  c->add_option("--m-list", converge.ms, "Comma-separated resolutions")->capture_default_str();
  c->add_option("--sigma", converge.sigma, "Wire-end interaction profile")->capture_default_str();
  c->add_option("--tol", converge.tol, "Eigensolver residual tolerance")->capture_default_str();
  c->add_option("--maxiter", converge.maxiter, "Eigensolver iteration cap")->capture_default_str();
  add_common(c, converge_common, "csv");
  c->callback([&] {
    action = [&] {
      const json p = converge_params(converge, converge_common);
      execute("converge", p, converge_common, [&] { return run_converge(converge, p); }, out, err);
    };
  });

  CommonFlags gamma_common;
  GammaFlags gamma;
  auto* g = app.add_subcommand("gamma", "Interaction strength that removes the bound state");
  g->add_option("--L", gamma.length, "Wire length in units of d")->capture_default_str();
  g->add_option("--m", gamma.ms, "Resolution, or comma-separated resolutions")->capture_default_str();
  g->add_option("--tol", gamma.tol, "Relative threshold margin and bracket width")->capture_default_str();
  g->add_option("--solver-tol", gamma.solver_tol, "Eigensolver residual tolerance")->capture_default_str();
  g->add_option("--maxiter", gamma.maxiter, "Eigensolver iteration cap")->capture_default_str();
  add_common(g, gamma_common, "json");
  g->callback([&] {
    action = [&] {
      if (!(gamma.tol > 0.0)) throw ConfigError("--tol must be positive");
      const json p = gamma_params(gamma, gamma_common);
      execute("gamma", p, gamma_common, [&] { return run_gamma(gamma, p); }, out, err);
    };
  });

  CommonFlags bec_common;
  BecFlags becf;
  auto* b = app.add_subcommand("bec", "Grand-canonical pair gas sweep over wire lengths");
  b->add_option("--beta", becf.beta, "Dimensionless inverse temperature")->capture_default_str();
  auto* rho_opt = b->add_option("--rho", becf.rho, "Pair density per unit d");
  b->add_option("--rho-mult", becf.rho_mult, "Pair density as a multiple of the critical density (default 2)")
      ->excludes(rho_opt);
  b->add_option("--L-list", becf.lengths, "Comma-separated wire lengths")->capture_default_str();
  b->add_option("--model", becf.model, "bound, nobound or explicit")->capture_default_str();
  b->add_option("--tol", becf.tol, "Relative density tolerance of the chemical-potential solve")
      ->capture_default_str();
  b->add_option("--E0", becf.e0, "Ground-state energy; computed by extrapolation when omitted");
  b->add_option("--spectral-L", becf.spectral_length, "Wire length for the E0 solve")->capture_default_str();
  b->add_option("--spectral-m", becf.spectral_ms, "Resolutions for the E0 extrapolation")->capture_default_str();
  b->add_option("--explicit-m", becf.explicit_m, "Resolution of explicit-model solves")->capture_default_str();
  b->add_option("--explicit-k", becf.explicit_k, "Levels kept by the explicit model")->capture_default_str();
  b->add_option("--solver-tol", becf.solver_tol, "Eigensolver residual tolerance")->capture_default_str();
  b->add_option("--maxiter", becf.maxiter, "Eigensolver iteration cap")->capture_default_str();
  add_common(b, bec_common, "csv");
  b->callback([&] {
    action = [&] {
      const json p = bec_params(becf, bec_common);
      execute("bec", p, bec_common, [&] { return run_bec(becf, p); }, out, err);
    };
  });

  CommonFlags units_common;
  UnitsFlags unitsf;
  auto* u = app.add_subcommand("units", "Conversions between pair extension and energy gap");
  u->add_option("--gap-ev", unitsf.gap_ev, "Energy gap in eV");
  u->add_option("--d-meters", unitsf.d_meters, "Pair extension in meters");
  u->add_option("--gap-ratio", unitsf.gap_ratio, "Gap as a fraction of the threshold")->capture_default_str();
  u->add_flag("--show-constants", unitsf.show_constants, "Print the physical constants table");
  add_common(u, units_common, "json");
  u->callback([&] {
    action = [&] {
      execute("units", units_params(unitsf, units_common), units_common,
              [&] { return run_units(unitsf, units_params(unitsf, units_common)); }, out, err);
    };
  });

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (action) action();
  } catch (...) {
    return exit_code_for(std::current_exception(), err);
  }
  return kExitOk;
}

}  // namespace pairwire::cli
