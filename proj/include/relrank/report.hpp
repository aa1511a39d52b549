#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "relrank/nat.hpp"

namespace relrank {

using json = nlohmann::ordered_json;

// Bounded checks can pass, fail with a witness, or stay inconclusive (the
// search exhausted its budget without deciding).
enum class Verdict { pass, fail, inconclusive };

const char* verdict_name(Verdict v);

struct Check {
  std::string name;
  Verdict verdict = Verdict::pass;
  std::optional<nat> bound;  // how far the check looked, when bounded
  json detail;               // witness or extra data; omitted when null
};

struct RunReport {
  std::string command;
  json parameters = json::object();
  std::vector<Check> checks;
  // Set by the caller only when timing output is wanted; reports must
  // otherwise be byte-identical across runs with the same seed.
  std::optional<double> wall_ms;

  void pass(std::string name, std::optional<nat> bound = std::nullopt);
  void fail(std::string name, json detail, std::optional<nat> bound = std::nullopt);
  void inconclusive(std::string name, std::optional<nat> bound = std::nullopt,
                    json detail = nullptr);
  void add(Check c);

  nat count(Verdict v) const;
  bool all_passed() const { return count(Verdict::fail) == 0; }
  // 0 when nothing failed (inconclusive included), 1 otherwise.
  int exit_code() const { return all_passed() ? 0 : 1; }
};

std::string to_json(const RunReport& r, int indent = 2);
std::string to_table(const RunReport& r);

}  // namespace relrank
