#include "specm/report.hpp"

namespace specm {

Json to_json(const Rational& q) { return to_pq_string(q); }

Json to_json(const AlgebraicReal& a) {
  if (a.is_rational()) return to_json(a.rational());
  Json j;
  j["poly"] = a.poly().to_string();
  j["interval"] = Json::array({to_json(a.lo()), to_json(a.hi())});
  return j;
}

Json to_json(const ZInterval& iv) {
  return Json::array({iv.lo ? to_json(*iv.lo) : Json("-inf"), iv.hi ? to_json(*iv.hi) : Json("inf"), iv.lo_closed,
                      iv.hi_closed});
}

Json to_json(const AccumFamily& f) {
  Json j;
  j["anchor"] = to_json(f.anchor());
  j["side"] = to_string(f.side());
  j["c"] = to_json(f.c());
  j["r"] = to_json(f.r());
  j["k_min"] = f.k_min().get_str();
  return j;
}

Json to_json(const ZeroSet& z) {
  Json j;
  j["intervals"] = Json::array();
  for (const auto& iv : z.intervals) j["intervals"].push_back(to_json(iv));
  j["points"] = Json::array();
  for (const auto& p : z.points) j["points"].push_back(to_json(p));
  j["families"] = Json::array();
  for (const auto& f : z.families) j["families"].push_back(to_json(f));
  return j;
}

Json to_json(const UnitWitness& w) {
  Json j;
  j["kind"] = w.to_string();
  j["point"] = to_json(w.point);
  j["side"] = to_string(w.side);
  return j;
}

Json to_json(const CleanCertificate& c) {
  Json j;
  j["reason"] = c.reason;
  j["anchor"] = c.anchor ? to_json(*c.anchor) : Json(nullptr);
  j["side"] = c.side ? Json(to_string(*c.side)) : Json(nullptr);
  j["range"] = c.range ? Json::array({to_json(c.range->first), to_json(c.range->second)}) : Json(nullptr);
  j["witnesses"] = Json::array();
  for (const auto& w : c.witnesses) j["witnesses"].push_back(to_json(w));
  return j;
}

Json to_json(const Block& b) {
  Json j;
  j["anchor"] = to_json(b.anchor);
  j["side"] = to_string(b.side);
  j["kind"] = to_string(b.kind);
  j["families"] = Json::array();
  for (const auto& f : b.families) j["families"].push_back(to_json(f));
  return j;
}

Json to_json(const ClosedSetDescriptor& V) {
  Json j;
  j["m_locus"] = to_json(V.m_locus);
  j["blocks"] = Json::array();
  for (const auto& b : V.blocks) j["blocks"].push_back(to_json(b));
  j["absent"] = Json::array();
  for (const auto& [x, s] : V.absent) j["absent"].push_back(Json::array({to_json(x), to_string(s)}));
  j["j_plus"] = V.j_plus;
  j["j_minus"] = V.j_minus;
  return j;
}

Json to_json(const SearchReport& r) {
  Json j;
  j["found"] = r.found;
  j["depth"] = r.depth;
  j["leaves"] = r.leaves;
  j["distinct_functions"] = r.distinct_functions;
  j["expressions"] = r.expressions;
  j["pairs_checked"] = r.pairs_checked;
  j["pairs_pruned"] = r.pairs_pruned;
  j["anchors"] = Json::array();
  for (const auto& a : r.anchors) j["anchors"].push_back(to_json(a));
  j["epsilons"] = Json::array();
  for (const auto& e : r.epsilons) j["epsilons"].push_back(to_json(e));
  return j;
}

Json to_json(const ComponentCount& c) { return c.infinite ? Json("infinite") : Json(c.count); }

Json to_json(const CommandReport& r) {
  Json j;
  j["command"] = r.command;
  j["inputs"] = r.inputs;
  j["verdict"] = r.verdict;
  j["witnesses"] = r.witnesses;
  j["certificates"] = r.certificates;
  return j;
}

namespace {

std::string compact(const Json& j) { return j.is_string() ? j.get<std::string>() : j.dump(); }

}  // namespace

std::string to_text(const CommandReport& r) {
  std::string args;
  if (r.inputs.contains("args"))
    for (const auto& a : r.inputs["args"]) args += " " + compact(a);
  std::string s = r.command + args + ": " + r.verdict + "\n";
  for (const auto& [k, v] : r.witnesses.items()) s += "  " + k + ": " + compact(v) + "\n";
  for (const auto& [k, v] : r.certificates.items()) s += "  " + k + ": " + compact(v) + "\n";
  return s;
}

CommandReport error_report(const std::string& command, Json inputs, const Error& e) {
  CommandReport r;
  r.command = command;
  r.inputs = std::move(inputs);
  r.verdict = "Error";
  r.certificates["code"] = std::string(error_id(e.code()));
  r.certificates["name"] = std::string(error_name(e.code()));
  r.certificates["message"] = e.what();
  r.error = e.code();
  return r;
}

int exit_code(const std::vector<CommandReport>& reports) {
  int code = 0;
  for (const auto& r : reports) {
    if (!r.error) continue;
    if (*r.error == ErrorCode::ParseError) return 3;
    if (*r.error == ErrorCode::OutsideFragment) code = 2;
    else if (code == 0) code = 1;
  }
  return code;
}

}  // namespace specm
