#include "blab/experiments/report.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace blab::experiments {

void Table::add(std::vector<std::string> row) {
  if (row.size() != header.size())
    throw ContractError("table " + name + ": row has " + std::to_string(row.size()) +
                        " cells, header has " + std::to_string(header.size()));
  rows.push_back(std::move(row));
}

std::string Table::csv() const {
  std::ostringstream os;
  auto line = [&os](const std::vector<std::string>& r) {
    for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << r[i];
    os << "\n";
  };
  line(header);
  for (const auto& r : rows) line(r);
  return os.str();
}

std::string cell(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string cell(int v) { return std::to_string(v); }

std::string cell(const std::string& v) {
  if (v.find_first_of(",\"\n") == std::string::npos) return v;
  std::string q = "\"";
  for (char c : v) q += c == '"' ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

std::vector<std::string> cells(Complex v) { return {cell(v.real()), cell(v.imag())}; }

std::string CriterionResult::line() const {
  return std::string(passed ? "PASS" : "FAIL") + " criterion " + std::to_string(id) + " [" + name +
         "] " + detail;
}

bool ReportBundle::passed() const {
  for (const auto& c : criteria)
    if (!c.passed) return false;
  return true;
}

std::string ReportBundle::summary() const {
  std::ostringstream os;
  os << "scenario: " << scenario << "\n";
  int npass = 0;
  for (const auto& c : criteria) npass += c.passed;
  os << "criteria: " << criteria.size() << " (" << npass << " passed)\n";
  for (const auto& c : criteria) os << c.line() << "\n";
  os << "result: " << (passed() ? "PASS" : "FAIL") << "\n";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", seconds);
  os << "wall_seconds: " << buf << "\n";
  os << "\n[provenance]\n";
  for (const auto& [k, v] : provenance) os << k << ": " << v << "\n";
  os << "\n[config]\n" << config_echo;
  return os.str();
}

Table& ReportBundle::table(const std::string& name, std::vector<std::string> header) {
  for (auto& t : tables)
    if (t.name == name) return t;
  tables.push_back({name, std::move(header), {}});
  return tables.back();
}

namespace {

void write_file(const std::filesystem::path& p, const std::string& text) {
  std::ofstream os(p, std::ios::binary);
  if (!os) throw Error("cannot open " + p.string() + " for writing");
  os << text;
  if (!os) throw Error("write failed: " + p.string());
}

}  // namespace

void emit_report(const ReportBundle& bundle, const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error("cannot create " + dir + ": " + ec.message());
  const std::filesystem::path root(dir);
  for (const auto& t : bundle.tables) write_file(root / (t.name + ".csv"), t.csv());
  if (!bundle.config_echo.empty()) write_file(root / "config.json", bundle.config_echo);
  write_file(root / "summary.txt", bundle.summary());
}

}  // namespace blab::experiments
