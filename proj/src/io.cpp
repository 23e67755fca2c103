#include "mmlp/io.hpp"

#include <fstream>
#include <map>
#include <sstream>

namespace mmlp {


namespace {

Json rows_to_json(std::span<const SparseRow> rows) {
  Json out = Json::array();
  for (const auto& row : rows) {
    Json coeffs = Json::object();
    for (const auto& e : row.entries) coeffs[std::to_string(e.agent)] = e.value;
    out.push_back({{"id", row.id}, {"coeffs", std::move(coeffs)}});
  }
  return out;
}

std::vector<SparseRow> rows_from_json(const Json& rows, const char* key) {
  if (!rows.is_array()) throw std::invalid_argument(std::string(key) + " must be an array");
  std::vector<SparseRow> out;
  for (const auto& r : rows) {
    SparseRow row;
    row.id = r.at("id").get<std::int64_t>();
    for (const auto& [agent, value] : r.at("coeffs").items()) {
      std::size_t used = 0;
      const auto id = std::stoll(agent, &used);
      if (used != agent.size()) throw std::invalid_argument("bad agent key '" + agent + "'");
      row.entries.push_back({id, value.get<double>()});
    }
    out.push_back(std::move(row));
  }
  return out;
}

}  // namespace

Json instance_to_json(const Instance& instance) {
  Json doc;
  doc["agents"] = std::vector<AgentId>(instance.agents().begin(), instance.agents().end());
  doc["resources"] = rows_to_json(instance.resources());
  doc["beneficiaries"] = rows_to_json(instance.beneficiaries());
  return doc;
}

Instance instance_from_json(const Json& doc) {
  return Instance(doc.at("agents").get<std::vector<AgentId>>(),
                  rows_from_json(doc.at("resources"), "resources"),
                  rows_from_json(doc.at("beneficiaries"), "beneficiaries"));
}

Json assignment_to_json(const Assignment& assignment) {
  Json values = Json::object();
  for (std::size_t i = 0; i < assignment.size(); ++i) {
    values[std::to_string(assignment.agents()[i])] =
        assignment.values()(static_cast<Eigen::Index>(i));
  }
  return Json{{"values", values}};
}

Assignment assignment_from_json(const Json& doc) {
  std::map<AgentId, double> sorted;
  for (const auto& [agent, value] : doc.at("values").items()) {
    sorted[std::stoll(agent)] = value.get<double>();
  }
  std::vector<AgentId> agents;
  Eigen::VectorXd values(static_cast<Eigen::Index>(sorted.size()));
  Eigen::Index i = 0;
  for (const auto& [a, x] : sorted) {
    agents.push_back(a);
    values(i++) = x;
  }
  return Assignment(std::move(agents), std::move(values));
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return Json::parse(in);
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

void write_json_file(const std::filesystem::path& path, const Json& doc) {
  write_text_file(path, doc.dump(2) + "\n");
}

}  // namespace mmlp
