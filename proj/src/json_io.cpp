#include "hexshuffle/json_io.hpp"

#include <json.hpp>

#include <ostream>
#include <stdexcept>

namespace hexshuffle {

using nlohmann::json;

std::string family_to_json(const PathFamily& family) {
  json j;
  j["N"] = family.box.N;
  j["T"] = family.box.T;
  j["S"] = family.box.S;
  json rows = json::array();
  for (int t = 0; t <= family.box.T; ++t) {
    json row = json::array();
    for (int i = 0; i < family.box.N; ++i) row.push_back(family.at(t, i));
    rows.push_back(std::move(row));
  }
  j["X"] = std::move(rows);
  return j.dump();
}

PathFamily family_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw std::runtime_error(std::string("family JSON parse error: ") + e.what());
  }
  if (!j.is_object() || !j.contains("N") || !j.contains("T") || !j.contains("S") ||
      !j.contains("X"))
    throw std::runtime_error("family JSON must carry N, T, S and X");
  BoxDims box{j["N"].get<int>(), j["T"].get<int>(), j["S"].get<int>()};
  if (!box.valid()) throw std::runtime_error("family JSON has invalid dimensions");
  const json& rows = j["X"];
  if (!rows.is_array() || (int)rows.size() != box.T + 1)
    throw std::runtime_error("family JSON: X must hold T+1 rows");
  PathFamily family(box);
  for (int t = 0; t <= box.T; ++t) {
    const json& row = rows[t];
    if (!row.is_array() || (int)row.size() != box.N)
      throw std::runtime_error("family JSON: each row of X must hold N heights");
    for (int i = 0; i < box.N; ++i) family.at(t, i) = row[i].get<int>();
  }
  const ValidationReport rep = validate(family);
  if (!rep.ok)
    throw std::runtime_error("family JSON fails validation at t=" + std::to_string(rep.t) +
                             " i=" + std::to_string(rep.i) + ": " + rep.reason);
  return family;
}

void write_trajectory_line(std::ostream& os, int r, const PathFamily& state) {
  json j;
  j["r"] = r;
  j["S"] = state.box.S;
  json rows = json::array();
  for (int t = 0; t <= state.box.T; ++t) {
    json row = json::array();
    for (int i = 0; i < state.box.N; ++i) row.push_back(state.at(t, i));
    rows.push_back(std::move(row));
  }
  j["X"] = std::move(rows);
  os << j.dump() << '\n';
}

std::string config_hash(const std::string& canonical) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : canonical) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", (unsigned long long)h);
  return std::string(buf);
}

}  // namespace hexshuffle
