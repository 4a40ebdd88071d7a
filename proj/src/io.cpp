#include "swf/io.hpp"

#include <fstream>

namespace swf::io {

std::string rel_string(const SetFunctionWTL& g) {
  std::string s;
  s.reserve(g.size());
  for (SubsetMask u = 0; u < g.size(); ++u) s.push_back(rel_char(g(u)));
  return s;
}

ordered_json setfunction_to_json(const SetFunctionWTL& g) {
  ordered_json j;
  j["n"] = g.n;
  j["values"] = rel_string(g);
  return j;
}

ordered_json setfunction_to_json(const NonBordaConstruction& c) {
  ordered_json j = setfunction_to_json(c.g);
  j["family"] = std::string(1, c.family.kind);
  j["k"] = c.family.k;
  j["base"] = c.family.base;
  return j;
}

SetFunctionWTL setfunction_from_json(const json& j) {
  if (!j.is_object() || !j.contains("n") || !j.contains("values"))
    throw std::invalid_argument("set-function file needs \"n\" and \"values\"");
  int n = j.at("n").get<int>();
  if (n < 1 || n > kMaxVoters) throw std::invalid_argument("n out of range");
  const std::string values = j.at("values").get<std::string>();
  SetFunctionWTL g(n);
  if (values.size() != g.size())
    throw std::invalid_argument("values length != 2^n");
  for (SubsetMask u = 0; u < g.size(); ++u) g.set(u, rel_from_char(values[u]));
  return g;
}

ordered_json group_to_json(const PermutationGroup& g) {
  ordered_json j;
  j["n"] = g.n;
  j["generators"] = g.generators;
  return j;
}

PermutationGroup group_from_json(const json& j) {
  if (!j.is_object() || !j.contains("n") || !j.contains("generators"))
    throw std::invalid_argument("group file needs \"n\" and \"generators\"");
  PermutationGroup g;
  g.n = j.at("n").get<int>();
  g.generators = j.at("generators").get<std::vector<std::vector<int>>>();
  validate_group(g);
  return g;
}

ordered_json surd_to_json(const SurdEigen& e) {
  ordered_json j;
  j["s"] = rat_str(e.s);
  j["t"] = rat_str(e.t);
  j["u"] = e.u.get_str();
  return j;
}

namespace {

std::string assignment_string(const std::vector<Rel>& a) {
  std::string s;
  s.reserve(a.size());
  for (Rel r : a) s.push_back(rel_char(r));
  return s;
}

std::vector<Rel> assignment_parse(const std::string& s) {
  std::vector<Rel> a;
  a.reserve(s.size());
  for (char c : s) a.push_back(rel_from_char(c));
  return a;
}

BordaKind kind_parse(const std::string& name) {
  for (BordaKind k :
       {BordaKind::PositiveUnweighted, BordaKind::NegativeUnweighted, BordaKind::TieRule,
        BordaKind::WeaklyBordaPositive, BordaKind::WeaklyBordaNegative,
        BordaKind::StronglyNonBorda, BordaKind::UnclassifiedWithoutTA})
    if (name == borda_kind_name(k)) return k;
  throw std::invalid_argument("unknown classification: " + name);
}

}  // namespace

ordered_json search_report_to_json(const SearchReport& rep) {
  ordered_json j;
  j["n"] = rep.n;
  j["group"] = rep.group_desc;
  j["mode"] = rep.conjecture_mode ? "conjecture" : "enumerate";
  if (rep.conjecture_mode) j["observational"] = true;
  j["nodes_visited"] = rep.nodes_visited;
  j["complete"] = rep.complete;
  if (!rep.complete) j["frontier"] = std::vector<int>(rep.frontier.begin(), rep.frontier.end());
  ordered_json found = ordered_json::array();
  for (const FoundFunction& fn : rep.found) {
    ordered_json f;
    f["assignment"] = assignment_string(fn.assignment);
    f["classification"] = borda_kind_name(fn.kind);
    if (rep.conjecture_mode) {
      f["counterexample"] = fn.conjecture_violation;
      if (fn.conjecture_violation) f["witness_mask"] = fn.witness_mask;
    }
    found.push_back(std::move(f));
  }
  j["found"] = std::move(found);
  j["counterexamples"] = rep.counterexamples;
  return j;
}

SearchReport search_report_from_json(const json& j) {
  SearchReport rep;
  rep.n = j.at("n").get<int>();
  rep.group_desc = j.at("group").get<std::string>();
  rep.conjecture_mode = j.at("mode").get<std::string>() == "conjecture";
  rep.nodes_visited = j.at("nodes_visited").get<long long>();
  rep.complete = j.at("complete").get<bool>();
  if (j.contains("frontier"))
    for (int v : j.at("frontier")) rep.frontier.push_back(static_cast<std::int8_t>(v));
  for (const auto& f : j.at("found")) {
    FoundFunction fn;
    fn.assignment = assignment_parse(f.at("assignment").get<std::string>());
    fn.kind = kind_parse(f.at("classification").get<std::string>());
    if (f.contains("counterexample")) {
      fn.conjecture_violation = f.at("counterexample").get<bool>();
      if (f.contains("witness_mask")) fn.witness_mask = f.at("witness_mask").get<SubsetMask>();
    }
    rep.found.push_back(std::move(fn));
  }
  rep.counterexamples = j.at("counterexamples").get<long long>();
  return rep;
}

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  json j;
  in >> j;
  return j;
}

void save_json(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot write " + path);
  out << j.dump(2) << "\n";
}

}  // namespace swf::io
