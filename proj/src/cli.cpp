#include "accinfo/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <stdexcept>

#include <CLI11.hpp>

#include "accinfo/io.hpp"
#include "accinfo/reference.hpp"

namespace accinfo {

namespace {

std::string num(double x, int digits = 10) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, x);
  return buf;
}

std::string complex_str(Complex z) {
  if (std::abs(z.imag()) < 1e-15) return num(z.real(), 8);
  return "(" + num(z.real(), 8) + (z.imag() < 0 ? "-" : "+") + num(std::abs(z.imag()), 8) + "i)";
}

std::string vector_str(const CVector& v) {
  std::string s = "[";
  for (Eigen::Index i = 0; i < v.size(); ++i) s += (i ? ", " : "") + complex_str(v(i));
  return s + "]";
}

/// Flags shared by the commands that take a pyramid spec.
struct SpecFlags {
  std::optional<int> m;
  std::optional<double> r0;
  std::optional<double> p;
  bool obtuse = false;

  void attach(CLI::App* app, bool required = true) {
    auto* mo = app->add_option("-m,--m", m, "number of states");
    if (required) mo->required();
    auto* ro = app->add_option("--r0", r0, "r0 parameter");
    auto* po = app->add_option("--p", p, "p parameter (needs --acute or --obtuse)");
    ro->excludes(po);
    auto* ob = app->add_flag("--obtuse", obtuse, "obtuse orientation for --p");
    app->add_flag("--acute", "acute orientation for --p (default)")->excludes(ob);
  }

  bool given() const { return r0 || p; }

  PyramidSpec spec() const {
    if (!m) throw std::invalid_argument("missing -m");
    if (r0) return PyramidSpec(*m, *r0);
    if (p) return spec_from_p(*m, *p, obtuse ? Orientation::obtuse : Orientation::acute);
    throw std::invalid_argument("give either --r0 or --p");
  }
};

void check_format(const std::string& format, std::initializer_list<const char*> allowed) {
  for (const char* a : allowed)
    if (format == a) return;
  throw std::invalid_argument("format '" + format + "' is not supported by this command");
}

// ---- pyramid ----

int cmd_pyramid(const SpecFlags& flags, const std::string& format, std::ostream& out) {
  check_format(format, {"text", "json"});
  const auto sol = solve_pyramid(flags.spec());
  if (format == "json") {
    out << Json(sol).dump(2) << '\n';
    return kExitOk;
  }
  out << "m: " << sol.spec.m() << "\nr0: " << num(sol.spec.r0()) << "\nr1: " << num(sol.spec.r1())
      << "\np: " << num(sol.spec.p()) << "\nregime: " << to_string(sol.regime) << "\nt: " << num(sol.t)
      << "\nc0: " << num(sol.c0) << "\nc1: " << num(sol.c1) << "\naccessible_info: " << num(sol.accessible_info, 12)
      << "\nobservable:\n";
  for (const auto& v : povm_vectors(sol.observable)) out << "  " << vector_str(v) << '\n';
  return kExitOk;
}

// ---- table ----

struct TableLine {
  int m;
  double tau;
  std::optional<double> m_r0;
  double p;
  const reference::TableRow& ref;
  bool ok;
};

std::vector<TableLine> compute_table() {
  std::vector<TableLine> lines;
  for (const auto& row : reference::kTable) {
    const auto th = thresholds(row.m);
    const double tau = tau_obtuse(row.m).value_or(obtuse_root_extended(row.m));
    std::optional<double> m_r0;
    if (th.r0_obtuse) m_r0 = row.m * *th.r0_obtuse;
    const double p = th.p_of_m.value_or(p_from_tau(row.m, tau));
    bool ok = std::abs(tau - row.tau) <= reference::kTauTolerance && std::abs(p - row.p) <= reference::kPTolerance;
    if (row.m_r0) ok = ok && m_r0 && std::abs(*m_r0 - *row.m_r0) <= reference::kMR0Tolerance;
    else ok = ok && !m_r0;
    lines.push_back({row.m, tau, m_r0, p, row, ok});
  }
  return lines;
}

int cmd_table(const std::string& format, std::ostream& out) {
  check_format(format, {"text", "json", "csv"});
  const auto lines = compute_table();
  const bool all_ok = std::all_of(lines.begin(), lines.end(), [](const TableLine& l) { return l.ok; });
  auto opt = [](const std::optional<double>& x) { return x ? num(*x, 8) : std::string("none"); };
  if (format == "json") {
    Json rows = Json::array();
    for (const auto& l : lines)
      rows.push_back({{"m", l.m},
                      {"tau", l.tau},
                      {"tau_ref", l.ref.tau},
                      {"m_r0", l.m_r0 ? Json(*l.m_r0) : Json(nullptr)},
                      {"m_r0_ref", l.ref.m_r0 ? Json(*l.ref.m_r0) : Json(nullptr)},
                      {"p", l.p},
                      {"p_ref", l.ref.p},
                      {"srm_threshold", (l.m - 1.0) / l.m},
                      {"ok", l.ok}});
    out << Json{{"rows", rows}, {"ok", all_ok}}.dump(2) << '\n';
  } else if (format == "csv") {
    out << "m,tau,tau_ref,tau_delta,m_r0,m_r0_ref,m_r0_delta,p,p_ref,p_delta,srm_threshold,ok\n";
    for (const auto& l : lines) {
      const bool both = l.m_r0 && l.ref.m_r0;
      out << l.m << ',' << num(l.tau) << ',' << num(l.ref.tau) << ',' << num(l.tau - l.ref.tau, 3) << ','
          << (l.m_r0 ? num(*l.m_r0) : "") << ',' << (l.ref.m_r0 ? num(*l.ref.m_r0) : "") << ','
          << (both ? num(*l.m_r0 - *l.ref.m_r0, 3) : "") << ',' << num(l.p) << ',' << num(l.ref.p) << ','
          << num(l.p - l.ref.p, 3) << ',' << num((l.m - 1.0) / l.m) << ',' << (l.ok ? 1 : 0) << '\n';
    }
  } else {
    char buf[256];
    std::snprintf(buf, sizeof buf, "%2s  %-12s %-10s %-10s %-12s %-10s %-12s %-10s %-10s %-8s %s\n", "m", "tau",
                  "ref", "delta", "m*r0", "ref", "p(m)", "ref", "delta", "(m-1)/m", "");
    out << buf;
    for (const auto& l : lines) {
      std::snprintf(buf, sizeof buf, "%2d  %-12s %-10s %-10s %-12s %-10s %-12s %-10s %-10s %-8s %s\n", l.m,
                    num(l.tau, 8).c_str(), num(l.ref.tau, 6).c_str(), num(l.tau - l.ref.tau, 2).c_str(),
                    opt(l.m_r0).c_str(), opt(l.ref.m_r0).c_str(), num(l.p, 8).c_str(), num(l.ref.p, 6).c_str(),
                    num(l.p - l.ref.p, 2).c_str(), num((l.m - 1.0) / l.m, 5).c_str(), l.ok ? "ok" : "MISMATCH");
      out << buf;
    }
  }
  return all_ok ? kExitOk : kExitMismatch;
}

// ---- verify ----

struct BudgetFlags {
  std::size_t samples = 200000;
  std::uint64_t seed = 1;
  unsigned threads = 1;
};

int verdict_exit(Verdict v) {
  switch (v) {
    case Verdict::certified: return kExitOk;
    case Verdict::iib_failed: return kExitIib;
    case Verdict::iia_violated:
    case Verdict::inconclusive: return kExitIia;
  }
  return kExitIia;
}

int cmd_verify(const SpecFlags& flags, const std::string& ensemble_file, const std::string& observable,
               const BudgetFlags& budget, const std::string& format, std::ostream& out) {
  check_format(format, {"text", "json"});
  std::optional<PureStateEnsemble> ens;
  std::optional<Povm> candidate;
  if (!ensemble_file.empty()) {
    if (flags.given()) throw std::invalid_argument("give either a pyramid spec or --ensemble, not both");
    ens = read_json_file(ensemble_file).get<PureStateEnsemble>();
  } else {
    const auto spec = flags.spec();
    ens = build_pyramid_ensemble(spec);
    if (observable.empty()) candidate = conjectured_observable(spec).povm;
  }
  if (observable == "srm" || (observable.empty() && !candidate)) {
    candidate = dual_observable(*ens);
  } else if (observable == "identity") {
    std::vector<CVector> basis;
    for (Eigen::Index i = 0; i < ens->dim(); ++i) basis.push_back(CVector::Unit(ens->dim(), i));
    candidate = Povm::from_vectors(basis);
  } else if (!observable.empty()) {
    candidate = read_json_file(observable).get<Povm>();
  }

  IiaBudget b;
  b.samples = budget.samples;
  b.seed = budget.seed;
  b.threads = budget.threads;
  std::optional<OptimalityReport> report;
  double anti_hermitian = 0.0;
  try {
    report = verify_optimality(*ens, *candidate, b);
  } catch (const NotACertificate& e) {
    anti_hermitian = e.anti_hermitian_norm();
  }
  if (!report) {
    if (format == "json")
      out << Json{{"verdict", "iib_failed"}, {"anti_hermitian_norm", anti_hermitian}, {"seed", budget.seed}}.dump(2)
          << '\n';
    else
      out << "verdict: iib_failed\nreason: fitted dual variable is not Hermitian (anti-Hermitian norm "
          << num(anti_hermitian, 4) << ")\nseed: " << budget.seed << '\n';
    return kExitIib;
  }
  if (format == "json") {
    Json j = *report;
    j["seed"] = budget.seed;
    j["samples"] = budget.samples;
    out << j.dump(2) << '\n';
  } else {
    const double iib = report->iib_residuals.empty()
                           ? 0.0
                           : *std::max_element(report->iib_residuals.begin(), report->iib_residuals.end());
    out << "verdict: " << to_string(report->verdict) << "\naccessible_info: " << num(report->accessible_info, 12)
        << "\ncandidate_info: " << num(report->candidate_info, 12) << "\nmax_iib_residual: " << num(iib, 3)
        << "\niia_worst_gap: " << num(report->iia_worst_gap, 3) << "\nobservable_elements: " << candidate->size()
        << "\nsamples: " << budget.samples << "\nseed: " << budget.seed << '\n';
  }
  return verdict_exit(report->verdict);
}

// ---- ineq / sweep ----

bool has_scan(InequalityId id) {
  return id == InequalityId::basic || id == InequalityId::basic2 || id == InequalityId::ineqz ||
         id == InequalityId::ineqw;
}

Params collect_params(InequalityId id, const std::optional<double>& m, const std::optional<double>& p) {
  Params params;
  const auto names = param_names(id);
  auto wants = [&](const char* n) { return std::find(names.begin(), names.end(), n) != names.end(); };
  if (m) {
    if (!wants("m")) throw std::invalid_argument(to_string(id) + " takes no -m");
    params["m"] = *m;
  }
  if (p) {
    if (!wants("p")) throw std::invalid_argument(to_string(id) + " takes no --p");
    params["p"] = *p;
  }
  validate_params(id, params);
  return params;
}

std::string params_str(const Params& params) {
  std::string s;
  for (const auto& [k, v] : params) s += (s.empty() ? "" : " ") + k + "=" + num(v);
  return s.empty() ? "-" : s;
}

int cmd_ineq(InequalityId id, const Params& params, std::size_t samples, std::uint64_t seed, unsigned threads,
             bool oracle, const std::string& format, std::ostream& out) {
  check_format(format, {"text", "json"});
  const auto sampled = sample_gap(id, params, samples, seed, threads);
  std::optional<GapReport> scan;
  if (has_scan(id)) scan = two_value_scan(id, params);
  std::optional<MinimizeGapResult> brute;
  if (oracle) brute = minimize_gap(id, params);
  double worst = sampled.worst_gap;
  if (scan) worst = std::min(worst, scan->worst_gap);
  if (brute) worst = std::min(worst, brute->min_gap);
  if (format == "json") {
    Json j{{"id", id}, {"seed", seed}, {"worst_gap", real_to_json(worst)}, {"sampling", sampled}};
    if (scan) j["scan"] = *scan;
    if (brute) j["oracle"] = *brute;
    out << j.dump(2) << '\n';
    return kExitOk;
  }
  out << "id: " << to_string(id) << "\nparams: " << params_str(params) << "\nseed: " << seed
      << "\nworst_gap: " << num(worst, 6) << "\nsampled_worst_gap: " << num(sampled.worst_gap, 6)
      << " (samples " << sampled.samples_used << ")\nsampled_worst_point: " << vector_str(sampled.worst_point) << '\n';
  if (scan)
    out << "scan_min_gap: " << num(scan->worst_gap, 6) << "\nscan_pattern: " << to_string(scan->pattern)
        << "\nscan_point: " << vector_str(scan->worst_point) << '\n';
  if (brute)
    out << "oracle_min_gap: " << num(brute->min_gap, 6) << "\noracle_point: " << vector_str(brute->argmin) << '\n';
  out << "equality_residuals:";
  for (double r : sampled.equality_residuals) out << ' ' << num(r, 3);
  out << '\n';
  return kExitOk;
}

/// "a:b:step" or a single value.
std::vector<double> parse_range(const std::string& s, const std::string& name) {
  std::vector<double> parts;
  std::size_t start = 0;
  try {
    while (true) {
      const auto colon = s.find(':', start);
      std::size_t used = 0;
      const std::string token = s.substr(start, colon == std::string::npos ? std::string::npos : colon - start);
      parts.push_back(std::stod(token, &used));
      if (used != token.size()) throw std::invalid_argument("trailing characters");
      if (colon == std::string::npos) break;
      start = colon + 1;
    }
  } catch (const std::exception&) {
    throw std::invalid_argument("--" + name + ": cannot parse '" + s + "'");
  }
  if (parts.size() == 1) return parts;
  if (parts.size() != 3 || !(parts[2] > 0.0) || parts[1] < parts[0])
    throw std::invalid_argument("--" + name + ": expected lo:hi:step with lo <= hi and step > 0");
  std::vector<double> values;
  const auto count = static_cast<std::size_t>(std::floor((parts[1] - parts[0]) / parts[2] + 1e-9));
  for (std::size_t i = 0; i <= count; ++i) values.push_back(parts[0] + parts[2] * static_cast<double>(i));
  return values;
}

int cmd_sweep(InequalityId id, const std::string& m_range, const std::string& p_range, std::size_t samples,
              std::uint64_t seed, unsigned threads, const std::string& format, std::ostream& out) {
  check_format(format, {"csv", "text"});
  const auto names = param_names(id);
  auto wants = [&](const char* n) { return std::find(names.begin(), names.end(), n) != names.end(); };
  const auto ms = m_range.empty() ? std::vector<double>{} : parse_range(m_range, "m");
  const auto ps = p_range.empty() ? std::vector<double>{} : parse_range(p_range, "p");
  if (wants("m") && ms.empty()) throw std::invalid_argument(to_string(id) + ": missing -m");
  if (wants("p") && ps.empty()) throw std::invalid_argument(to_string(id) + ": missing --p");
  // validate the whole grid before any sampling
  std::vector<Params> grid;
  for (double m : ms.empty() ? std::vector<double>{0.0} : ms)
    for (double p : ps.empty() ? std::vector<double>{0.0} : ps) {
      std::optional<double> mo = ms.empty() ? std::nullopt : std::optional<double>(m);
      std::optional<double> po = ps.empty() ? std::nullopt : std::optional<double>(p);
      grid.push_back(collect_params(id, mo, po));
    }
  out << "id";
  for (const auto& n : names) out << ',' << n;
  out << ",worst_gap,samples,seed\n";
  for (const auto& params : grid) {
    const auto r = sample_gap(id, params, samples, seed, threads);
    out << to_string(id);
    for (const auto& n : names) out << ',' << num(params.at(n), 12);
    out << ',' << num(r.worst_gap, 12) << ',' << r.samples_used << ',' << seed << '\n';
  }
  return kExitOk;
}

// ---- oracle ----

int cmd_oracle(const SpecFlags& flags, const std::string& ensemble_file, const AscentConfig& cfg,
               const std::string& trace_file, const std::string& format, std::ostream& out) {
  check_format(format, {"text", "json"});
  std::optional<PureStateEnsemble> ens;
  std::optional<double> closed_form;
  if (!ensemble_file.empty()) {
    if (flags.given()) throw std::invalid_argument("give either a pyramid spec or --ensemble, not both");
    ens = read_json_file(ensemble_file).get<PureStateEnsemble>();
  } else {
    const auto spec = flags.spec();
    ens = build_pyramid_ensemble(spec);
    closed_form = accessible_information(spec);
  }
  validate(cfg, ens->dim());
  const auto result = maximize_info(*ens, cfg);
  if (!trace_file.empty()) {
    std::ofstream csv(trace_file);
    if (!csv) throw std::invalid_argument("cannot write '" + trace_file + "'");
    csv << "iteration,info\n";
    for (std::size_t i = 0; i < result.trace.size(); ++i) csv << i + 1 << ',' << num(result.trace[i], 15) << '\n';
  }
  if (format == "json") {
    Json j = result;
    j["seed"] = cfg.seed;
    if (closed_form) j["closed_form"] = *closed_form;
    out << j.dump(2) << '\n';
  } else {
    out << "best_info: " << num(result.best_info, 12) << "\nconverged: " << (result.converged ? "yes" : "no")
        << "\niterations: " << result.iterations << "\noutcomes: " << result.best_povm.size()
        << "\nrestarts: " << cfg.restarts << "\nseed: " << cfg.seed << '\n';
    if (closed_form)
      out << "closed_form: " << num(*closed_form, 12) << "\ndelta: " << num(result.best_info - *closed_form, 3) << '\n';
  }
  return result.converged ? kExitOk : kExitNotConverged;
}

int cmd_oracle_gap(InequalityId id, const Params& params, std::size_t grid, std::size_t polish,
                   const std::string& format, std::ostream& out) {
  check_format(format, {"text", "json"});
  const auto r = minimize_gap(id, params, grid, polish);
  if (format == "json") {
    Json j = r;
    j["id"] = id;
    out << j.dump(2) << '\n';
  } else {
    out << "id: " << to_string(id) << "\nparams: " << params_str(params) << "\nmin_gap: " << num(r.min_gap, 6)
        << "\nargmin: " << vector_str(r.argmin) << "\nevaluations: " << r.evaluations << '\n';
  }
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Accessible information of pure-state ensembles, optimality certificates and entropy inequalities"};
  app.require_subcommand(1);
  std::string format = "text";
  unsigned threads = 1;
  app.add_option("--format", format, "text, json or csv")->check(CLI::IsMember({"text", "json", "csv"}));
  app.add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber);
  app.fallthrough();

  SpecFlags pyramid_flags;
  auto* pyramid = app.add_subcommand("pyramid", "closed-form solution for an equiangular ensemble");
  pyramid_flags.attach(pyramid);

  auto* table = app.add_subcommand("table", "recompute the obtuse threshold table against the reference values");

  SpecFlags verify_flags;
  std::string ensemble_file;
  std::string observable;
  BudgetFlags budget;
  auto* verify = app.add_subcommand("verify", "run the optimality certificate on a candidate observable");
  verify_flags.attach(verify, false);
  verify->add_option("--ensemble", ensemble_file, "ensemble JSON file");
  verify->add_option("--observable", observable, "observable JSON file, 'srm' or 'identity'");
  verify->add_option("-n,--samples", budget.samples, "random pure states for the global condition");
  verify->add_option("--seed", budget.seed, "random seed");

  std::string ineq_id;
  std::optional<double> ineq_m;
  std::optional<double> ineq_p;
  std::size_t ineq_samples = 100000;
  std::uint64_t ineq_seed = 1;
  bool ineq_oracle = false;
  auto* ineq = app.add_subcommand("ineq", "audit an entropy inequality");
  ineq->add_option("id", ineq_id, "inequality id")->required();
  ineq->add_option("-m,--m", ineq_m, "dimension");
  ineq->add_option("--p", ineq_p, "parameter p");
  ineq->add_option("-n,--samples", ineq_samples, "random points");
  ineq->add_option("--seed", ineq_seed, "random seed");
  ineq->add_flag("--oracle", ineq_oracle, "also run the brute-force minimizer");

  std::string sweep_id;
  std::string sweep_m;
  std::string sweep_p;
  std::size_t sweep_samples = 20000;
  std::uint64_t sweep_seed = 1;
  auto* sweep = app.add_subcommand("sweep", "sampled worst gap over a parameter range, as CSV");
  sweep->add_option("id", sweep_id, "inequality id")->required();
  sweep->add_option("-m,--m", sweep_m, "value or lo:hi:step");
  sweep->add_option("--p", sweep_p, "value or lo:hi:step");
  sweep->add_option("-n,--samples", sweep_samples, "random points per parameter set");
  sweep->add_option("--seed", sweep_seed, "random seed");

  SpecFlags oracle_flags;
  std::string oracle_ensemble;
  std::string oracle_trace;
  std::string oracle_ineq;
  std::size_t oracle_grid = 0;
  std::size_t oracle_polish = 200;
  std::string step_rule = "armijo";
  AscentConfig cfg;
  auto* oracle = app.add_subcommand("oracle", "brute-force maximization of the mutual information");
  oracle_flags.attach(oracle, false);
  oracle->add_option("--ensemble", oracle_ensemble, "ensemble JSON file");
  oracle->add_option("--n-outcomes", cfg.n_outcomes, "rank-one outcomes (0 means dim^2)");
  oracle->add_option("--restarts", cfg.restarts, "random restarts");
  oracle->add_option("--max-iters", cfg.max_iters, "iterations per restart");
  oracle->add_option("--step-rule", step_rule, "armijo or fixed")->check(CLI::IsMember({"armijo", "fixed"}));
  oracle->add_option("--step", cfg.step, "step length");
  oracle->add_option("--seed", cfg.seed, "random seed");
  oracle->add_option("--trace", oracle_trace, "write the best restart's trace as CSV");
  oracle->add_option("--ineq", oracle_ineq, "minimize an inequality gap instead");
  oracle->add_option("--grid", oracle_grid, "grid resolution for --ineq (0 = automatic)");
  oracle->add_option("--polish", oracle_polish, "descent iterations per start for --ineq");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  }

  try {
    if (*pyramid) return cmd_pyramid(pyramid_flags, format, out);
    if (*table) return cmd_table(format, out);
    if (*verify) {
      budget.threads = threads;
      return cmd_verify(verify_flags, ensemble_file, observable, budget, format, out);
    }
    if (*ineq) {
      const auto id = inequality_from_string(ineq_id);
      return cmd_ineq(id, collect_params(id, ineq_m, ineq_p), ineq_samples, ineq_seed, threads, ineq_oracle, format,
                      out);
    }
    if (*sweep) {
      if (format == "text") format = "csv";
      return cmd_sweep(inequality_from_string(sweep_id), sweep_m, sweep_p, sweep_samples, sweep_seed, threads,
                       format, out);
    }
    if (*oracle) {
      if (!oracle_ineq.empty()) {
        const auto id = inequality_from_string(oracle_ineq);
        std::optional<double> m;
        if (oracle_flags.m) m = *oracle_flags.m;
        return cmd_oracle_gap(id, collect_params(id, m, oracle_flags.p), oracle_grid, oracle_polish, format, out);
      }
      cfg.step_rule = step_rule_from_string(step_rule);
      cfg.threads = threads;
      cfg.record_trace = !oracle_trace.empty();
      return cmd_oracle(oracle_flags, oracle_ensemble, cfg, oracle_trace, format, out);
    }
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const Json::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  }
  return kExitInput;
}

}  // namespace accinfo
