#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <ostream>
#include <sstream>
#include <variant>

#include <CLI11.hpp>
#include <json.hpp>

#include "ocrs/adversary.hpp"
#include "ocrs/bounds.hpp"
#include "ocrs/exact.hpp"
#include "ocrs/prophet.hpp"
#include "ocrs/stress.hpp"
#include "ocrs/walk.hpp"

namespace ocrs::cli {

namespace {

using json = nlohmann::json;
using Cell = std::variant<std::monostate, std::string, double, long long, bool>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  std::vector<std::string> notes;
  bool pass = true;
};

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

std::string csv_cell(const Cell& c) {
  struct {
    std::string operator()(std::monostate) const { return ""; }
    std::string operator()(const std::string& s) const { return s; }
    std::string operator()(double v) const { return format_double(v); }
    std::string operator()(long long v) const { return std::to_string(v); }
    std::string operator()(bool v) const { return v ? "true" : "false"; }
  } visit;
  return std::visit(visit, c);
}

json json_cell(const Cell& c) {
  struct {
    json operator()(std::monostate) const { return nullptr; }
    json operator()(const std::string& s) const { return s; }
    json operator()(double v) const { return std::isfinite(v) ? json(v) : json(nullptr); }
    json operator()(long long v) const { return v; }
    json operator()(bool v) const { return v; }
  } visit;
  return std::visit(visit, c);
}

std::string render(const Table& t, const RunConfig& config) {
  std::string s;
  if (config.format == "csv") {
    s += "# " + config_header(config) + "\n";
    for (std::size_t j = 0; j < t.columns.size(); ++j) s += (j ? "," : "") + t.columns[j];
    s += "\n";
    for (const auto& row : t.rows) {
      for (std::size_t j = 0; j < row.size(); ++j) s += (j ? "," : "") + csv_cell(row[j]);
      s += "\n";
    }
    for (const auto& note : t.notes) s += "# " + note + "\n";
  } else {
    s += json{{"config", config_header(config)}}.dump() + "\n";
    for (const auto& row : t.rows) {
      json obj = json::object();
      for (std::size_t j = 0; j < row.size(); ++j) obj[t.columns[j]] = json_cell(row[j]);
      s += obj.dump() + "\n";
    }
    for (const auto& note : t.notes) s += json{{"note", note}}.dump() + "\n";
  }
  return s;
}

json read_json(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "'");
  const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    const std::size_t upto = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    const auto line = 1 + std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(upto), '\n');
    throw InputError(path + ":" + std::to_string(line) + ": " + e.what());
  }
}

std::string fmt_opt(const std::optional<double>& v) { return v ? format_double(*v) : "-"; }

StressKind parse_stress(const std::string& name) {
  for (StressKind kind : stress_catalog())
    if (stress_name(kind) == name) return kind;
  throw InputError("unknown stress instance '" + name + "'");
}

int single_k(const RunConfig& c) {
  if (c.ks.size() != 1) throw InputError("exactly one --k value is required");
  return c.ks.front();
}

std::vector<std::size_t> one_based_indices(const json& arr, std::size_t n, const std::string& what) {
  std::vector<std::size_t> out;
  for (const auto& v : arr) {
    const long long i = v.get<long long>();
    if (i < 1 || static_cast<std::size_t>(i) > n)
      throw InputError(what + ": index " + std::to_string(i) + " outside 1.." + std::to_string(n));
    out.push_back(static_cast<std::size_t>(i - 1));
  }
  return out;
}

Instance load_instance(const RunConfig& c, double default_scale) {
  if (!c.stress.empty()) {
    if (!c.instance_path.empty()) throw InputError("give either --instance or --stress, not both");
    return stress_instance(parse_stress(c.stress), single_k(c), default_scale);
  }
  if (c.instance_path.empty()) throw InputError("--instance or --stress is required");
  const json doc = read_json(c.instance_path);
  try {
    const json& xs = doc.is_array() ? doc : doc.at("x");
    Eigen::VectorXd x(static_cast<Eigen::Index>(xs.size()));
    for (std::size_t i = 0; i < xs.size(); ++i) x[static_cast<Eigen::Index>(i)] = xs[i].get<double>();
    std::optional<int> k;
    if (doc.is_object() && doc.contains("k")) k = doc["k"].get<int>();
    if (!c.ks.empty()) {
      const int flag = single_k(c);
      if (k && *k != flag) throw InputError("--k " + std::to_string(flag) + " disagrees with k in " + c.instance_path);
      k = flag;
    }
    if (!k) throw InputError("k missing: pass --k or put \"k\" in the instance file");
    const double b = doc.is_object() ? doc.value("b", 1.0) : 1.0;
    std::optional<std::vector<Part>> partition;
    if (doc.is_object() && doc.contains("partition")) {
      std::vector<Part> parts;
      for (const auto& p : doc["partition"])
        parts.push_back({p.at("quota").get<int>(),
                         one_based_indices(p.at("members"), static_cast<std::size_t>(x.size()), "partition")});
      partition = std::move(parts);
    }
    return validate_instance(std::move(x), *k, b, std::move(partition));
  } catch (const json::exception& e) {
    throw InputError(c.instance_path + ": " + e.what());
  }
}

Order parse_order(const std::string& text, std::size_t n) {
  if (text == "identity") return Order::identity();
  if (text == "actives-first") return Order::actives_first();
  if (text.rfind("perm:", 0) == 0) {
    const std::string path = text.substr(5);
    std::ifstream in(path);
    if (!in) throw InputError("cannot open permutation file '" + path + "'");
    std::string body((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    std::replace(body.begin(), body.end(), ',', ' ');
    std::istringstream tokens(body);
    std::vector<std::size_t> perm;
    long long v = 0;
    while (tokens >> v) {
      if (v < 1 || static_cast<std::size_t>(v) > n)
        throw InputError(path + ": index " + std::to_string(v) + " outside 1.." + std::to_string(n));
      perm.push_back(static_cast<std::size_t>(v - 1));
    }
    if (!tokens.eof()) throw InputError(path + ": expected whitespace-separated integers");
    check_permutation(perm, n);
    return Order::fixed(std::move(perm));
  }
  throw InputError("unknown order '" + text + "' (identity | perm:FILE | actives-first)");
}

SchemeSpec resolve_scheme(const RunConfig& c, int k) {
  std::string text = c.scheme;
  const bool bare = text.find(':') == std::string::npos;
  if (bare && text == "algd") {
    if (!c.d) throw InputError("algd needs --d or algd:d=VALUE");
    text += ":d=" + format_double(*c.d);
  } else if (bare && text == "scaled") {
    const double b = c.b ? *c.b : hks_guarantee(k).b;
    text += ":b=" + format_double(b);
  } else if ((c.d && text.rfind("algd", 0) != 0) || (c.b && text.rfind("scaled", 0) != 0)) {
    throw InputError("--d applies to algd and --b to scaled only");
  }
  return parse_scheme(text);
}

Cell opt_cell(const std::optional<double>& v) { return v ? Cell(*v) : Cell(); }

Table selectability(const RunConfig& c) {
  const bool algd_hint = c.scheme.rfind("algd", 0) == 0;
  double scale = 1.0;
  if (algd_hint && !c.stress.empty() && c.d) scale = 1.0 - *c.d / single_k(c);
  const Instance inst = load_instance(c, scale);
  const SchemeSpec scheme = resolve_scheme(c, inst.k());
  const Order order = parse_order(c.order, inst.size());
  if (!order.activation_independent() &&
      (scheme.kind == SchemeKind::SimpleOcrs || scheme.kind == SchemeKind::AlgorithmD))
    throw InputError("the " + scheme.name() +
                     " guarantee is for orders fixed in advance; actives-first is not checked against it");

  SelectabilityReport report;
  if (c.method == "exact-dp") {
    report = exact_selectability_dp(inst, scheme, order);
  } else if (c.method == "brute-force") {
    report = brute_force_selectability(inst, scheme, order);
  } else if (c.method == "monte-carlo") {
    if (!c.seed) throw InputError("--seed is required");
    report = mc_selectability(inst, scheme, order, c.trials.value_or(100000), *c.seed);
  } else {
    throw InputError("unknown method '" + c.method + "' (exact-dp | brute-force | monte-carlo)");
  }

  Table t;
  t.columns = {"element_index", "method", "p_cond", "stderr", "bound", "pass"};
  const std::optional<double> bound = scheme_guarantee(scheme, inst);
  for (std::size_t i = 0; i < inst.size(); ++i) {
    const auto idx = static_cast<Eigen::Index>(i);
    std::vector<Cell> row{static_cast<long long>(i + 1), method_name(report.method)};
    if (report.absent[i]) {
      row.insert(row.end(), {std::string("absent"), Cell(), opt_cell(bound), std::string("n/a")});
    } else {
      const double p = report.per_element[idx];
      const double se = report.std_err[idx];
      row.insert(row.end(), {p, se, opt_cell(bound)});
      if (bound) {
        const bool ok = p + 3.0 * se >= *bound - 1e-9;
        t.pass = t.pass && ok;
        row.emplace_back(ok);
      } else {
        row.emplace_back(std::string("n/a"));
      }
    }
    t.rows.push_back(std::move(row));
  }
  t.notes.push_back("min_p_cond=" + format_double(report.min_value));
  for (const auto& w : report.warnings) t.notes.push_back("warning: " + w);
  return t;
}

Table bounds(const RunConfig& c) {
  if (c.ks.empty()) throw InputError("--k is required (comma-separated list allowed)");
  Table t;
  t.columns = {"k", "c_star", "a_star", "envelope", "impossibility_curve", "hks_bc", "greedy_frontier", "ocrs_bound"};
  for (int k : c.ks) {
    const LpSolution lp = lp_cstar(k);
    const double envelope = cstar_upper_envelope(k, lp.a);
    std::vector<Cell> row{static_cast<long long>(k), lp.c_star, static_cast<long long>(lp.a), envelope};
    row.push_back(k >= 2 ? Cell(impossibility_curve(k)) : Cell());
    row.push_back(k >= 3 ? Cell(hks_guarantee(k).bc) : Cell());
    row.push_back(greedy_bc_frontier(k).value);
    const auto g = ocrs_guarantee(k);
    row.push_back(g ? Cell(*g) : Cell(std::string("vacuous")));
    t.rows.push_back(std::move(row));

    if (!(lp.c_star >= 0.5)) {
      t.pass = false;
      t.notes.push_back("check failed: c_star < 0.5 at k=" + std::to_string(k));
    }
    if (lp.c_star > envelope + 1e-12) {
      t.pass = false;
      t.notes.push_back("check failed: c_star above envelope at k=" + std::to_string(k));
    }
    if (k <= 200) {
      const LpOracleResult oracle = lp_oracle(k, 1000, c.seed.value_or(0));
      if (std::abs(oracle.c_star - lp.c_star) > 1e-9 || oracle.best_probe > lp.c_star + 1e-9) {
        t.pass = false;
        t.notes.push_back("check failed: vertex oracle disagrees at k=" + std::to_string(k));
      }
    }
    if (lp.x_exceeds_one()) t.notes.push_back("note: optimal x exceeds 1 at k=" + std::to_string(k));
  }
  return t;
}

ValueDistribution parse_distribution(const json& d) {
  const std::string kind = d.at("kind").get<std::string>();
  if (kind == "discrete")
    return ValueDistribution::discrete(d.at("values").get<std::vector<double>>(),
                                       d.at("probs").get<std::vector<double>>());
  if (kind == "point") return ValueDistribution::point(d.at("value").get<double>());
  if (kind == "uniform") return ValueDistribution::uniform(d.value("lo", 0.0), d.value("hi", 1.0));
  if (kind == "exponential") return ValueDistribution::exponential(d.value("rate", 1.0));
  if (kind == "quantile")
    return ValueDistribution::piecewise_quantile(d.at("u").get<std::vector<double>>(),
                                                 d.at("q").get<std::vector<double>>());
  throw InputError("unknown distribution kind '" + kind + "'");
}

std::vector<ValueDistribution> load_distributions(const std::string& path) {
  if (path.empty()) throw InputError("--dists is required");
  const json doc = read_json(path);
  try {
    const json& list = doc.is_array() ? doc : doc.at("distributions");
    std::vector<ValueDistribution> out;
    for (const auto& d : list) {
      const ValueDistribution dist = parse_distribution(d);
      const long long repeat = d.value("repeat", 1LL);
      if (repeat < 1) throw InputError(path + ": repeat must be >= 1");
      for (long long r = 0; r < repeat; ++r) out.push_back(dist);
    }
    if (out.empty()) throw InputError(path + ": no distributions");
    return out;
  } catch (const json::exception& e) {
    throw InputError(path + ": " + e.what());
  }
}

Table prophet(const RunConfig& c) {
  if (!c.seed) throw InputError("--seed is required");
  const int k = single_k(c);
  const ProphetInstance pinst(load_distributions(c.dists_path), k);
  const SchemeSpec scheme = resolve_scheme(c, k);
  const Order order = parse_order(c.order, pinst.size());
  if (!order.activation_independent() &&
      (scheme.kind == SchemeKind::SimpleOcrs || scheme.kind == SchemeKind::AlgorithmD))
    throw InputError("the " + scheme.name() +
                     " guarantee is for orders fixed in advance; actives-first is not checked against it");
  const std::size_t trials = c.trials.value_or(100000);
  const CompetitiveRatio r = competitive_ratio(pinst, scheme, order, trials, *c.seed);
  const std::optional<double> floor = scheme_guarantee(scheme, pinst.activation());

  Table t;
  t.columns = {"scheme", "k", "trials", "ratio", "ci_low", "ci_high", "floor", "pass"};
  std::vector<Cell> row{scheme.name(), static_cast<long long>(k), static_cast<long long>(trials), r.ratio,
                        r.ci_low, r.ci_high, opt_cell(floor)};
  const bool sound = r.dominance_violations == 0 && r.over_budget == 0;
  if (floor) {
    const bool ok = sound && r.ci_low >= *floor;
    row.emplace_back(ok);
    t.pass = ok;
  } else {
    row.emplace_back(sound ? std::string("n/a") : std::string("false"));
    t.pass = sound;
  }
  t.rows.push_back(std::move(row));
  t.notes.push_back("threshold T=" + format_double(pinst.threshold().T) +
                    " rho=" + format_double(pinst.threshold().rho));
  t.notes.push_back("mean_gambler=" + format_double(r.mean_gambler) +
                    " mean_prophet=" + format_double(r.mean_prophet) +
                    " std_err=" + format_double(r.std_err));
  t.notes.push_back("dominance_violations=" + std::to_string(r.dominance_violations) +
                    " over_budget=" + std::to_string(r.over_budget));
  return t;
}

Table walk_check(const RunConfig& c) {
  if (!c.seed) throw InputError("--seed is required");
  std::optional<double> d = c.d;
  if (!d && c.scheme.rfind("algd:", 0) == 0) d = parse_scheme(c.scheme).d;
  if (!d) throw InputError("walk-check needs --d");
  if (!c.stress.empty() && !(*d < single_k(c))) throw InputError("stress instances need d < k");
  const Instance inst = load_instance(c, c.stress.empty() ? 1.0 : 1.0 - *d / single_k(c));
  const Order order = parse_order(c.order, inst.size());
  if (!order.activation_independent()) throw InputError("walk-check needs an order fixed in advance");
  const std::size_t trials = c.trials.value_or(100000);
  const WalkStudy study = walk_study(inst, order, *d, trials, *c.seed);

  Table t;
  t.columns = {"m", "element_index", "discard_prob", "stderr", "bound", "pass"};
  std::size_t drift_flags = 0;
  for (std::size_t m = 0; m < inst.size(); ++m) {
    const double p = study.discard_probability(m);
    const double se = study.discard_std_err(m);
    const double bound = study.discard_bound(m);
    const bool ok = p <= bound + 3.0 * se;
    t.pass = t.pass && ok;
    t.rows.push_back({static_cast<long long>(m + 1), static_cast<long long>(study.order[m] + 1), p, se, bound, ok});
    const double sigma = study.increment_std_err(m);
    if (std::abs(study.increment_mean(m)) > 3.0 * sigma + 1e-15) ++drift_flags;
  }
  const std::size_t drift_allowed = std::max<std::size_t>(1, inst.size() / 100);
  const bool drift_ok = drift_flags <= drift_allowed;
  const bool exact_ok = study.difference_mismatches == 0 && study.height_mismatches == 0 &&
                        study.buffer_violations == 0;
  t.pass = t.pass && drift_ok && exact_ok;
  t.notes.push_back("report: trajectories=" + std::to_string(trials) +
                    " difference_mismatches=" + std::to_string(study.difference_mismatches) +
                    " height_mismatches=" + std::to_string(study.height_mismatches) +
                    " buffer_violations=" + std::to_string(study.buffer_violations) +
                    " over_budget=" + std::to_string(study.over_budget));
  t.notes.push_back("report: increments beyond 3 sigma=" + std::to_string(drift_flags) + " of " +
                    std::to_string(inst.size()) + " (allowed " + std::to_string(drift_allowed) + ")");
  if (trials >= 1000 && *d > 1.0) {
    const TailEstimate tail = martingale_tail_estimate(inst, order, *d, c.a, trials, *c.seed);
    const bool ok = tail.p_hat <= tail.bound + 3.0 * tail.std_err;
    t.pass = t.pass && ok;
    t.notes.push_back("report: martingale a=" + format_double(c.a) + " b=" + format_double(-(*d - 1.0)) +
                      " p_hat=" + format_double(tail.p_hat) + " stderr=" + format_double(tail.std_err) +
                      " bound=" + format_double(tail.bound) + (ok ? " ok" : " VIOLATED"));
  }
  return t;
}

Table oracle_compare(const RunConfig& c) {
  if (!c.seed) throw InputError("--seed is required");
  Table t;
  t.columns = {"case", "scheme", "n", "k", "max_abs_diff", "pass"};
  for (std::size_t i = 0; i < c.cases; ++i) {
    const FuzzCase fc = fuzz_case(*c.seed, i);
    const Order order = Order::fixed(fc.order);
    const auto dp = exact_selectability_dp(fc.instance, fc.scheme, order);
    const auto bf = brute_force_selectability(fc.instance, fc.scheme, order);
    const double diff = (dp.per_element - bf.per_element).cwiseAbs().maxCoeff();
    const bool ok = diff <= 1e-9;
    t.pass = t.pass && ok;
    t.rows.push_back({static_cast<long long>(i), fc.scheme.name(), static_cast<long long>(fc.instance.size()),
                      static_cast<long long>(fc.instance.k()), diff, ok});
  }
  t.notes.push_back("fuzz_version=" + std::to_string(kFuzzVersion));
  return t;
}

}  // namespace

std::string config_header(const RunConfig& c) {
  std::string ks;
  for (std::size_t i = 0; i < c.ks.size(); ++i) ks += (i ? "," : "") + std::to_string(c.ks[i]);
  std::ostringstream s;
  s << "ocrs " << c.subcommand << " scheme=" << c.scheme << " order=" << c.order
    << " k=" << (ks.empty() ? "-" : ks) << " d=" << fmt_opt(c.d) << " b=" << fmt_opt(c.b)
    << " trials=" << (c.trials ? std::to_string(*c.trials) : "-")
    << " seed=" << (c.seed ? std::to_string(*c.seed) : "-")
    << " instance=" << (c.instance_path.empty() ? "-" : c.instance_path)
    << " stress=" << (c.stress.empty() ? "-" : c.stress)
    << " dists=" << (c.dists_path.empty() ? "-" : c.dists_path) << " method=" << c.method
    << " a=" << format_double(c.a) << " cases=" << c.cases << " format=" << c.format;
  return s.str();
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  Table table;
  try {
    if (!config.seed) throw InputError("--seed is required");
    if (config.format != "csv" && config.format != "jsonl") throw InputError("--format must be csv or jsonl");
    if (config.subcommand == "selectability") {
      table = selectability(config);
    } else if (config.subcommand == "bounds") {
      table = bounds(config);
    } else if (config.subcommand == "prophet") {
      table = prophet(config);
    } else if (config.subcommand == "walk-check") {
      table = walk_check(config);
    } else if (config.subcommand == "oracle-compare") {
      table = oracle_compare(config);
    } else {
      throw InputError("unknown subcommand '" + config.subcommand + "'");
    }
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  }

  const std::string text = render(table, config);
  if (config.out_path.empty()) {
    out << text;
  } else {
    std::ofstream file(config.out_path, std::ios::binary | std::ios::trunc);
    if (!file || !(file << text)) {
      err << "error: cannot write '" << config.out_path << "'\n";
      return kExitInputError;
    }
  }
  if (!table.pass) {
    err << config.subcommand << ": check failed\n";
    return kExitCheckFailed;
  }
  return kExitPass;
}

int run_command_line(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Online contention resolution schemes for k-uniform matroids: exact and Monte Carlo checks"};
  app.require_subcommand(1);
  RunConfig config;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--seed", config.seed, "Master seed (mandatory)")->required();
    sub->add_option("--k", config.ks, "Budget k; comma-separated list for bounds")->delimiter(',');
    sub->add_option("--out", config.out_path, "Output file (default stdout)");
    sub->add_option("--format", config.format, "csv | jsonl")->check(CLI::IsMember({"csv", "jsonl"}));
  };
  auto scheme_opts = [&](CLI::App* sub) {
    sub->add_option("--scheme", config.scheme, "simple | algd[:d=V] | greedy | partition | scaled[:b=V], optional ,wrap=V");
    sub->add_option("--order", config.order, "identity | perm:FILE | actives-first");
    sub->add_option("--d", config.d, "Buffer of AlgorithmD");
    sub->add_option("--b", config.b, "Scale of ScaledGreedy (default: 1 - sqrt(2 ln k / k))");
    sub->add_option("--trials", config.trials, "Monte Carlo trials");
  };
  auto instance_opts = [&](CLI::App* sub) {
    sub->add_option("--instance", config.instance_path, "Instance JSON: {\"k\":K, \"x\":[...], \"partition\":[...]}");
    sub->add_option("--stress", config.stress, "Built-in instance: uniform | geometric | single-heavy | half-zeros | lumpy");
  };

  auto* sel = app.add_subcommand("selectability", "Per-element P(selected | active)");
  common(sel);
  scheme_opts(sel);
  instance_opts(sel);
  sel->add_option("--method", config.method, "exact-dp | brute-force | monte-carlo");

  auto* bnd = app.add_subcommand("bounds", "LP impossibility value and guarantee curves per k");
  common(bnd);

  auto* pro = app.add_subcommand("prophet", "Competitive ratio of the threshold gambler");
  common(pro);
  scheme_opts(pro);
  pro->add_option("--dists", config.dists_path, "Distribution file (JSON list of {kind, params})");

  auto* walk = app.add_subcommand("walk-check", "Random-walk identities and discard bounds for AlgorithmD");
  common(walk);
  scheme_opts(walk);
  instance_opts(walk);
  walk->add_option("--a", config.a, "Level a of the martingale tail check");

  auto* cmp = app.add_subcommand("oracle-compare", "Exact DP against brute force over the fuzz corpus");
  common(cmp);
  cmp->add_option("--cases", config.cases, "Number of fuzz cases");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitPass;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitPass;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  }
  config.subcommand = app.get_subcommands().front()->get_name();
  return run(config, out, err);
}

}  // namespace ocrs::cli
