#include "relrank/report.hpp"

#include <sstream>

namespace relrank {

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "?";
}

void RunReport::pass(std::string name, std::optional<nat> bound) {
  checks.push_back({std::move(name), Verdict::pass, bound, nullptr});
}

void RunReport::fail(std::string name, json detail, std::optional<nat> bound) {
  checks.push_back({std::move(name), Verdict::fail, bound, std::move(detail)});
}

void RunReport::inconclusive(std::string name, std::optional<nat> bound, json detail) {
  checks.push_back({std::move(name), Verdict::inconclusive, bound, std::move(detail)});
}

void RunReport::add(Check c) { checks.push_back(std::move(c)); }

nat RunReport::count(Verdict v) const {
  nat n = 0;
  for (const auto& c : checks)
    if (c.verdict == v) ++n;
  return n;
}

std::string to_json(const RunReport& r, int indent) {
  json out;
  out["schema"] = "1";
  out["command"] = r.command;
  out["parameters"] = r.parameters;
  json checks = json::array();
  for (const auto& c : r.checks) {
    json jc;
    jc["name"] = c.name;
    jc["verdict"] = verdict_name(c.verdict);
    if (c.bound) jc["bound"] = *c.bound;
    if (!c.detail.is_null()) jc["detail"] = c.detail;
    checks.push_back(std::move(jc));
  }
  out["checks"] = std::move(checks);
  out["summary"] = {{"pass", r.count(Verdict::pass)},
                    {"fail", r.count(Verdict::fail)},
                    {"inconclusive", r.count(Verdict::inconclusive)}};
  if (r.wall_ms) out["wall_ms"] = *r.wall_ms;
  return out.dump(indent) + "\n";
}

std::string to_table(const RunReport& r) {
  std::ostringstream os;
  os << "command: " << r.command << "\n";
  if (!r.parameters.empty()) {
    os << "params:";
    for (auto it = r.parameters.begin(); it != r.parameters.end(); ++it) {
      os << " " << it.key() << "=";
      if (it->is_string())
        os << it->get<std::string>();
      else
        os << it->dump();
    }
    os << "\n";
  }
  for (const auto& c : r.checks) {
    os << "  [" << verdict_name(c.verdict) << "] " << c.name;
    if (c.bound) os << "  (bound " << *c.bound << ")";
    if (!c.detail.is_null()) os << "  " << c.detail.dump();
    os << "\n";
  }
  os << "summary: " << r.count(Verdict::pass) << " pass, " << r.count(Verdict::fail)
     << " fail, " << r.count(Verdict::inconclusive) << " inconclusive";
  if (r.wall_ms) os << "  (" << *r.wall_ms << " ms)";
  os << "\n";
  return os.str();
}

}  // namespace relrank
