#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace fairaudit {

enum class ChargeDegree { Felony, Misdemeanor };

std::string to_string(ChargeDegree d);

/// One scored defendant row.
struct Record {
  std::string id;
  std::string group;            // source race label, e.g. "African-American"
  int score = 0;                // decile, 1..10
  int outcome = 0;              // 1 = recidivated within two years
  ChargeDegree charge_degree = ChargeDegree::Felony;
  int priors = 0;               // non-negative prior count
  std::map<std::string, std::string> extra;  // passthrough columns
};

/// Column-name mapping applied at parse time. Defaults match the published
/// ProPublica two-year file.
struct ColumnMapping {
  std::string id = "id";
  std::string group = "race";
  std::string score = "decile_score";
  std::string outcome = "two_year_recid";
  std::string charge_degree = "c_charge_degree";
  std::string priors = "priors_count";
};

struct Dataset {
  std::vector<Record> records;  // source-file order
  ColumnMapping schema;

  bool empty() const { return records.empty(); }
  std::size_t size() const { return records.size(); }
};

struct ParseOptions {
  bool strict = true;           // false: count and skip invalid rows
  bool keep_extra = false;      // retain unmapped columns in Record::extra
};

struct ParseResult {
  Dataset dataset;
  std::size_t accepted = 0;
  std::size_t rejected = 0;
  std::vector<std::string> diagnostics;  // one entry per rejected row
};

/// Parse a UTF-8, RFC-4180 CSV stream into a Dataset.
///
/// Strict mode throws ParseError on the first invalid row; otherwise invalid
/// rows are counted and reported in diagnostics with their row numbers.
/// Throws SchemaError if a mapped column is missing or the file is empty.
ParseResult parse_dataset(std::istream& source, const ColumnMapping& schema,
                          const ParseOptions& options = {});

ParseResult parse_dataset_file(const std::string& path, const ColumnMapping& schema,
                               const ParseOptions& options = {});

/// Keep only records whose group label is in `groups`. Order preserved.
/// Throws DomainError if `groups` is empty.
Dataset filter_cohort(const Dataset& d, const std::set<std::string>& groups);

/// Keep records matching (group, outcome). Throws EmptySliceError when empty.
/// outcome = -1 means "any outcome".
Dataset slice(const Dataset& d, const std::string& group, int outcome);

/// Write the mapped columns back out in the ingest CSV schema.
void write_csv(const Dataset& d, std::ostream& out);

}  // namespace fairaudit
