// swf: construct, verify and analyze exact social welfare functions on the
// three-candidate cyclic domain. All arithmetic is exact; reports never
// contain floating point.
#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "swf/doubleslice.hpp"
#include "swf/io.hpp"
#include "swf/search.hpp"

using swf::io::ordered_json;

namespace {

struct Output {
  std::string path;    // empty = stdout
  std::string format = "json";
  bool no_timestamp = false;

  void stamp(ordered_json& j) const {
    if (no_timestamp) return;
    std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    char buf[32];
    std::strftime(buf, sizeof buf, "%FT%TZ", std::gmtime(&now));
    j["timestamp"] = buf;
  }

  static void flatten(const std::string& prefix, const ordered_json& j, std::ostream& os,
                      const char* sep) {
    if (j.is_object()) {
      for (const auto& [key, val] : j.items())
        flatten(prefix.empty() ? key : prefix + "." + key, val, os, sep);
    } else if (j.is_array()) {
      for (std::size_t i = 0; i < j.size(); ++i)
        flatten(prefix + "[" + std::to_string(i) + "]", j[i], os, sep);
    } else {
      std::string v = j.is_string() ? j.get<std::string>() : j.dump();
      os << prefix << sep << v << "\n";
    }
  }

  void emit(const ordered_json& j) const {
    std::ostringstream os;
    if (format == "json") {
      os << j.dump(2) << "\n";
    } else if (format == "csv") {
      os << "key,value\n";
      flatten("", j, os, ",");
    } else {
      flatten("", j, os, ": ");
    }
    if (path.empty()) {
      std::cout << os.str();
    } else {
      std::ofstream f(path);
      if (!f) throw std::invalid_argument("cannot write " + path);
      f << os.str();
    }
  }
};

int parse_shard(const std::string& spec, swf::SearchOptions& opt) {
  if (spec.empty()) return 0;
  auto slash = spec.find('/');
  if (slash == std::string::npos) throw std::invalid_argument("--shard wants i/t");
  opt.shard_index = std::stoi(spec.substr(0, slash));
  opt.shard_count = std::stoi(spec.substr(slash + 1));
  if (opt.shard_count <= 0 || opt.shard_index < 0 || opt.shard_index >= opt.shard_count)
    throw std::invalid_argument("--shard index must satisfy 0 <= i < t");
  return 0;
}

swf::PermutationGroup load_group(const std::string& path, int n) {
  if (path.empty()) return swf::PermutationGroup::cyclic(n);
  swf::PermutationGroup g = swf::io::group_from_json(swf::io::load_json(path));
  if (g.n != n) throw std::invalid_argument("group file is for n=" + std::to_string(g.n));
  return g;
}

long long pow3(int n) {
  long long p = 1;
  while (n--) p *= 3;
  return p;
}

int cmd_construct(int n, const Output& out) {
  if (n % 3 == 0) throw std::invalid_argument("no non-Borda SWF exists (n divisible by 3)");
  swf::NonBordaConstruction c = swf::build_nonborda_g(n);
  ordered_json j = swf::io::setfunction_to_json(c);
  out.stamp(j);
  out.emit(j);
  return 0;
}

int cmd_verify(const std::string& gfile, const std::string& groupfile, const Output& out) {
  swf::SetFunctionWTL g = swf::io::setfunction_from_json(swf::io::load_json(gfile));
  swf::PermutationGroup grp = load_group(groupfile, g.n);

  ordered_json j;
  j["n"] = g.n;
  j["ordered_partitions"] = pow3(g.n);
  auto bad = swf::check_triple_consistency(g);
  j["consistent"] = !bad.has_value();
  if (bad)
    j["violation"] = {{"v1", bad->v1}, {"v2", bad->v2}, {"v3", bad->v3}};
  bool ta = false, pareto = false, pr = false;
  std::string classification = "unclassified-without-TA";
  if (!bad) {
    ta = swf::check_ta(g, grp);
    pareto = swf::check_pareto(g);
    pr = swf::check_pr(g);
    swf::BordaClassification cls = swf::classify_borda(g, grp, /*assume_consistent=*/true);
    classification = swf::borda_kind_name(cls.kind);
    if (cls.witness) {
      j["witness"] = {{"u_w", cls.witness->u_w},
                      {"u_l", cls.witness->u_l},
                      {"margin", cls.witness->margin}};
    }
  }
  j["ta"] = ta;
  j["pareto"] = pareto;
  j["pr"] = pr;
  j["classification"] = classification;
  bool pass = !bad && ta && pareto && pr;
  j["pass"] = pass;
  out.stamp(j);
  out.emit(j);
  return pass ? 0 : 1;
}

int cmd_spectral(int k, const Output& out) {
  if (k < 0 || k > 1000) throw std::invalid_argument("--k out of range");
  ordered_json j;
  j["k"] = k;
  j["n"] = 3 * k;
  ordered_json rows = ordered_json::array();
  for (int d = 0; d <= k; ++d)
    rows.push_back({{"d", d}, {"alpha", swf::rat_str(swf::alpha(k, d))}});
  j["alpha"] = std::move(rows);
  out.stamp(j);
  out.emit(j);
  return 0;
}

int cmd_slicebounds(int n, std::string mode, const Output& out) {
  if (n <= 0 || n % 3 != 0) throw std::invalid_argument("--n must be a positive multiple of 3");
  if (mode.empty()) mode = n <= 6 ? "exhaustive" : "invariant";
  swf::ScanMode m;
  if (mode == "exhaustive")
    m = swf::ScanMode::Exhaustive;
  else if (mode == "invariant")
    m = swf::ScanMode::InvariantOnly;
  else
    throw std::invalid_argument("--mode must be exhaustive or invariant");
  swf::SliceBoundsReport rep = swf::verify_slice_bounds(n, m);
  ordered_json j;
  j["n"] = rep.n;
  j["k"] = rep.k;
  j["mode"] = mode;
  j["boolean_scanned"] = rep.boolean_scanned;
  j["boolean_egalitarian"] = rep.boolean_egalitarian;
  j["wtl_scanned"] = rep.wtl_scanned;
  j["wtl_egalitarian"] = rep.wtl_egalitarian;
  j["violations"] = rep.violations;
  auto slack = [](const std::optional<swf::Rational>& q) {
    return q ? swf::rat_str(*q) : std::string("n/a");
  };
  j["min_slack_prob"] = slack(rep.min_slack_prob);
  j["min_slack_stab_lower"] = slack(rep.min_slack_stab_lo);
  j["min_slack_stab_upper"] = slack(rep.min_slack_stab_hi);
  j["min_slack_wtl"] = slack(rep.min_slack_wtl);
  out.stamp(j);
  out.emit(j);
  return rep.violations == 0 ? 0 : 1;
}

int cmd_doubleslice(int n, int k, const std::string& mode, const Output& out) {
  ordered_json j;
  long long violations = 0;
  if (mode == "bounds") {
    if (k < 2) throw std::invalid_argument("--k (max k, >= 2) required for --mode bounds");
    swf::StabBoundsReport rep = swf::verify_stab12_bounds(2, k);
    j["k_min"] = 2;
    j["k_max"] = k;
    j["rows"] = rep.rows.size();
    j["tail_rows"] = rep.tail_rows.size();
    j["violations"] = rep.violations;
    violations = rep.violations;
  } else if (mode == "operator") {
    swf::DoubleSliceConfig cfg = swf::DoubleSliceConfig::for_n(n);
    swf::TOperatorReport rep = swf::t_operator_check(cfg);
    j["n"] = rep.n;
    j["self_adjoint"] = rep.self_adjoint;
    j["stab_identity"] = rep.stab_identity;
    j["top_harmonic"] = rep.top_harmonic_ok;
    j["rational_eigvecs_checked"] = rep.rational_eigvecs_checked;
    violations = rep.ok() ? 0 : 1;
  } else if (mode == "twoslice") {
    swf::TwoSliceReport rep = swf::verify_two_slice(n);
    j["n"] = rep.n;
    j["orbit_count"] = rep.orbit_count;
    j["nodes_visited"] = rep.nodes_visited;
    j["qualifying"] = rep.qualifying.size();
    j["violations"] = rep.violations;
    j["identity_ok"] = rep.identity_ok;
    j["egalitarian_ok"] = rep.egalitarian_ok;
    j["projection_ok"] = rep.projection_ok;
    j["recheck_ok"] = rep.recheck_ok;
    violations = rep.violations +
                 !(rep.identity_ok && rep.egalitarian_ok && rep.projection_ok && rep.recheck_ok);
  } else if (mode.empty() || mode == "lambda") {
    swf::DoubleSliceConfig cfg = swf::DoubleSliceConfig::for_n(n);
    j["n"] = n;
    j["k"] = cfg.k;
    ordered_json rows = ordered_json::array();
    for (int d = 0; d <= cfg.k + 1; ++d) {
      swf::LambdaEigen le = swf::lambda_eigen(cfg, d);
      ordered_json row;
      row["d"] = d;
      if (le.is_pair) {
        row["lambda"] = swf::io::surd_to_json(le.pair);
        bool zero = swf::lambda_residual(cfg, d, le.pair, +1).zero() &&
                    swf::lambda_residual(cfg, d, le.pair, -1).zero();
        row["residual_zero"] = zero;
        if (!zero) ++violations;
      } else {
        row["lambda"] = swf::rat_str(le.single);
      }
      rows.push_back(std::move(row));
    }
    j["eigenvalues"] = std::move(rows);
  } else {
    throw std::invalid_argument("--mode must be lambda, operator, twoslice or bounds");
  }
  out.stamp(j);
  out.emit(j);
  return violations == 0 ? 0 : 1;
}

int cmd_search(int n, const std::string& groupfile, const std::string& mode,
               const std::string& shard, long long node_limit, const std::string& resume_file,
               const Output& out) {
  swf::SearchFilters filters;
  std::stringstream ss(mode);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok == "decreasing")
      filters.decreasing = true;
    else if (tok == "pareto")
      filters.pareto = true;
    else if (!tok.empty() && tok != "plain")
      throw std::invalid_argument("--mode tokens: decreasing, pareto, plain");
  }
  swf::SearchOptions opt;
  parse_shard(shard, opt);
  opt.node_limit = node_limit;
  if (!resume_file.empty()) {
    swf::io::json c = swf::io::load_json(resume_file);
    for (int v : c.at("frontier")) opt.resume.push_back(static_cast<std::int8_t>(v));
  }
  swf::SearchReport rep = swf::enumerate_consistent(n, load_group(groupfile, n), filters, opt);
  ordered_json j = swf::io::search_report_to_json(rep);
  out.stamp(j);
  out.emit(j);
  return 0;
}

int cmd_conjecture(int n, const std::string& shard, const Output& out) {
  swf::SearchOptions opt;
  parse_shard(shard, opt);
  swf::SearchReport rep = swf::conjecture_scan(n, opt);
  ordered_json j = swf::io::search_report_to_json(rep);
  out.stamp(j);
  out.emit(j);
  return rep.counterexamples == 0 ? 0 : 1;
}

int cmd_eval(const std::string& gfile, const std::string& election, const Output& out) {
  swf::SetFunctionWTL g = swf::io::setfunction_from_json(swf::io::load_json(gfile));
  swf::Election e = swf::election_parse(election);
  if (e.n != g.n) throw std::invalid_argument("election length != n");
  swf::WeakOrdering w = swf::evaluate_swf(g, e);
  ordered_json j;
  j["n"] = g.n;
  j["election"] = election;
  j["ordering"] = w.str();
  j["tiers"] = w.tiers;
  out.stamp(j);
  out.emit(j);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact social welfare functions on the three-candidate cyclic domain"};
  app.require_subcommand(1);

  Output out;
  int n = 0, k = -1;
  std::string gfile, groupfile, mode, shard, election, resume_file;
  long long node_limit = -1;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--format", out.format, "json, csv or text")
        ->check(CLI::IsMember({"json", "csv", "text"}));
    cmd->add_option("--out", out.path, "write the report here instead of stdout");
    cmd->add_flag("--no-timestamp", out.no_timestamp, "omit the timestamp field");
  };

  std::function<int()> run;

  CLI::App* c_construct = app.add_subcommand("construct", "emit the non-Borda rule for n");
  c_construct->add_option("--n", n, "voters")->required();
  add_common(c_construct);
  c_construct->callback([&] { run = [&] { return cmd_construct(n, out); }; });

  CLI::App* c_verify = app.add_subcommand("verify", "run all axiom checks on a rule file");
  c_verify->add_option("--g", gfile, "set-function JSON file")->required();
  c_verify->add_option("--group", groupfile, "permutation group JSON file (default cyclic)");
  add_common(c_verify);
  c_verify->callback([&] { run = [&] { return cmd_verify(gfile, groupfile, out); }; });

  CLI::App* c_spectral = app.add_subcommand("spectral", "replacement-operator eigenvalues");
  c_spectral->add_option("--k", k, "slice parameter (n = 3k)")->required();
  add_common(c_spectral);
  c_spectral->callback([&] { run = [&] { return cmd_spectral(k, out); }; });

  CLI::App* c_slice = app.add_subcommand("slicebounds", "scan slice functions against bounds");
  c_slice->add_option("--n", n, "voters (multiple of 3)")->required();
  c_slice->add_option("--mode", mode, "exhaustive or invariant");
  add_common(c_slice);
  c_slice->callback([&] { run = [&] { return cmd_slicebounds(n, mode, out); }; });

  CLI::App* c_double = app.add_subcommand("doubleslice", "two-slice spectra and dichotomy");
  c_double->add_option("--n", n, "voters (not divisible by 3)");
  c_double->add_option("--k", k, "max k for --mode bounds");
  c_double->add_option("--mode", mode, "lambda (default), operator, twoslice or bounds");
  add_common(c_double);
  c_double->callback([&] { run = [&] { return cmd_doubleslice(n, k, mode, out); }; });

  CLI::App* c_search = app.add_subcommand("search", "enumerate consistent invariant rules");
  c_search->add_option("--n", n, "voters")->required();
  c_search->add_option("--group", groupfile, "permutation group JSON file (default cyclic)");
  c_search->add_option("--mode", mode, "comma list of filters: decreasing, pareto");
  c_search->add_option("--shard", shard, "i/t: explore only first-orbit branches i mod t");
  c_search->add_option("--node-limit", node_limit, "stop after this many DFS nodes");
  c_search->add_option("--resume-from", resume_file, "checkpoint report to continue");
  add_common(c_search);
  c_search->callback([&] {
    run = [&] { return cmd_search(n, groupfile, mode, shard, node_limit, resume_file, out); };
  });

  CLI::App* c_conj = app.add_subcommand("conjecture", "scan for slice-band counterexamples");
  c_conj->add_option("--n", n, "voters (not divisible by 3)")->required();
  c_conj->add_option("--shard", shard, "i/t shard spec");
  add_common(c_conj);
  c_conj->callback([&] { run = [&] { return cmd_conjecture(n, shard, out); }; });

  CLI::App* c_eval = app.add_subcommand("eval", "apply a rule file to one election");
  c_eval->add_option("--g", gfile, "set-function JSON file")->required();
  c_eval->add_option("election", election, "one digit 1-3 per voter")->required();
  add_common(c_eval);
  c_eval->callback([&] { run = [&] { return cmd_eval(gfile, election, out); }; });

  try {
    app.parse(argc, argv);
    return run();
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const swf::BudgetError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const swf::ConsistencyError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
