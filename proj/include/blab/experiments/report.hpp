#pragma once

#include <deque>
#include <string>
#include <utility>
#include <vector>

#include "blab/core.hpp"

namespace blab::experiments {

struct Table {
  std::string name;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  void add(std::vector<std::string> row);
  std::string csv() const;
};

/// Fixed formatting for CSV cells.
std::string cell(double v);
std::string cell(int v);
std::string cell(const std::string& v);
/// Re/Im column pair.
std::vector<std::string> cells(Complex v);

struct CriterionResult {
  int id = 0;  // acceptance criterion number
  std::string name;
  bool passed = false;
  std::string detail;

  std::string line() const;
};

struct ReportBundle {
  std::string scenario;
  std::deque<Table> tables;  // references from table() stay valid
  std::vector<CriterionResult> criteria;
  std::vector<std::pair<std::string, std::string>> provenance;
  std::string config_echo;
  double seconds = 0.0;

  bool passed() const;
  std::string summary() const;
  Table& table(const std::string& name, std::vector<std::string> header);
};

/// Writes summary.txt, config.json and <table>.csv into `dir` (created if
/// missing).  I/O failures throw Error naming the path.
void emit_report(const ReportBundle& bundle, const std::string& dir);

}  // namespace blab::experiments
