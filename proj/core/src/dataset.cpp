#include "fairaudit/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "fairaudit/errors.hpp"

namespace fairaudit {

std::string to_string(ChargeDegree d) {
  return d == ChargeDegree::Felony ? "F" : "M";
}

namespace {

// RFC-4180 field splitter; quoted fields may contain commas, doubled quotes
// and newlines. Returns false at end of stream.
bool read_csv_row(std::istream& in, std::vector<std::string>& fields) {
  fields.clear();
  int c = in.get();
  if (c == EOF) return false;
  std::string field;
  bool quoted = false;
  while (true) {
    if (quoted) {
      if (c == EOF) break;  // unterminated quote, treat as end of field
      if (c == '"') {
        int peek = in.get();
        if (peek == '"') {
          field.push_back('"');
        } else {
          quoted = false;
          c = peek;
          continue;
        }
      } else {
        field.push_back(static_cast<char>(c));
      }
    } else {
      if (c == EOF || c == '\n') break;
      if (c == '\r') {
        int peek = in.peek();
        if (peek == '\n') in.get();
        break;
      }
      if (c == '"' && field.empty()) {
        quoted = true;
      } else if (c == ',') {
        fields.push_back(std::move(field));
        field.clear();
      } else {
        field.push_back(static_cast<char>(c));
      }
    }
    c = in.get();
  }
  fields.push_back(std::move(field));
  return true;
}

bool parse_int(const std::string& s, int& out) {
  const char* begin = s.data();
  const char* end = begin + s.size();
  auto [ptr, ec] = std::from_chars(begin, end, out);
  return ec == std::errc{} && ptr == end && !s.empty();
}

bool parse_charge_degree(std::string s, ChargeDegree& out) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char ch) { return std::tolower(ch); });
  if (s == "f" || s == "felony") {
    out = ChargeDegree::Felony;
    return true;
  }
  if (s == "m" || s == "misdemeanor") {
    out = ChargeDegree::Misdemeanor;
    return true;
  }
  return false;
}

std::size_t find_column(const std::vector<std::string>& header,
                        const std::string& name) {
  auto it = std::find(header.begin(), header.end(), name);
  if (it == header.end())
    throw SchemaError("missing mapped column: " + name);
  return static_cast<std::size_t>(it - header.begin());
}

}  // namespace

ParseResult parse_dataset(std::istream& source, const ColumnMapping& schema,
                          const ParseOptions& options) {
  std::vector<std::string> header;
  if (!read_csv_row(source, header) || (header.size() == 1 && header[0].empty()))
    throw SchemaError("empty input: no header row");

  // Strip a UTF-8 BOM if present.
  if (!header.empty() && header[0].rfind("\xEF\xBB\xBF", 0) == 0)
    header[0].erase(0, 3);

  const std::size_t col_group = find_column(header, schema.group);
  const std::size_t col_score = find_column(header, schema.score);
  const std::size_t col_outcome = find_column(header, schema.outcome);
  const std::size_t col_degree = find_column(header, schema.charge_degree);
  const std::size_t col_priors = find_column(header, schema.priors);
  // The id column is optional; rows without one get their row number.
  std::size_t col_id = header.size();
  if (auto it = std::find(header.begin(), header.end(), schema.id); it != header.end())
    col_id = static_cast<std::size_t>(it - header.begin());

  ParseResult result;
  result.dataset.schema = schema;
  std::vector<std::string> fields;
  std::size_t row = 1;  // header was row 1
  while (read_csv_row(source, fields)) {
    ++row;
    if (fields.size() == 1 && fields[0].empty()) continue;  // blank line
    std::string problem;
    Record rec;
    if (fields.size() != header.size()) {
      problem = "expected " + std::to_string(header.size()) + " fields, got " +
                std::to_string(fields.size());
    } else {
      rec.id = col_id < header.size() ? fields[col_id] : std::to_string(row);
      rec.group = fields[col_group];
      if (!parse_int(fields[col_score], rec.score) || rec.score < 1 || rec.score > 10)
        problem = "invalid " + schema.score + ": '" + fields[col_score] + "'";
      else if (!parse_int(fields[col_outcome], rec.outcome) ||
               (rec.outcome != 0 && rec.outcome != 1))
        problem = "invalid " + schema.outcome + ": '" + fields[col_outcome] + "'";
      else if (!parse_charge_degree(fields[col_degree], rec.charge_degree))
        problem = "invalid " + schema.charge_degree + ": '" + fields[col_degree] + "'";
      else if (!parse_int(fields[col_priors], rec.priors) || rec.priors < 0)
        problem = "invalid " + schema.priors + ": '" + fields[col_priors] + "'";
    }
    if (!problem.empty()) {
      std::string message = "row " + std::to_string(row) + ": " + problem;
      if (options.strict) throw ParseError(message);
      ++result.rejected;
      result.diagnostics.push_back(std::move(message));
      continue;
    }
    if (options.keep_extra) {
      for (std::size_t i = 0; i < header.size(); ++i) {
        if (i == col_id || i == col_group || i == col_score || i == col_outcome ||
            i == col_degree || i == col_priors)
          continue;
        rec.extra.emplace(header[i], fields[i]);
      }
    }
    ++result.accepted;
    result.dataset.records.push_back(std::move(rec));
  }
  return result;
}

ParseResult parse_dataset_file(const std::string& path, const ColumnMapping& schema,
                               const ParseOptions& options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SchemaError("cannot open dataset file: " + path);
  return parse_dataset(in, schema, options);
}

Dataset filter_cohort(const Dataset& d, const std::set<std::string>& groups) {
  if (groups.empty()) throw DomainError("filter_cohort: empty group set");
  Dataset out;
  out.schema = d.schema;
  for (const Record& r : d.records)
    if (groups.count(r.group)) out.records.push_back(r);
  return out;
}

Dataset slice(const Dataset& d, const std::string& group, int outcome) {
  Dataset out;
  out.schema = d.schema;
  for (const Record& r : d.records)
    if (r.group == group && (outcome == -1 || r.outcome == outcome))
      out.records.push_back(r);
  if (out.empty())
    throw EmptySliceError("empty slice: group '" + group + "', outcome " +
                          (outcome == -1 ? std::string("any") : std::to_string(outcome)));
  return out;
}

namespace {

// Quote a field only when it needs quoting, per RFC 4180.
std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\"\"";
    out.push_back(c);
  }
  out += "\"";
  return out;
}

}  // namespace

void write_csv(const Dataset& d, std::ostream& out) {
  const ColumnMapping& m = d.schema;
  out << m.id << ',' << m.group << ',' << m.score << ',' << m.outcome << ','
      << m.charge_degree << ',' << m.priors << '\n';
  for (const Record& r : d.records) {
    out << csv_escape(r.id) << ',' << csv_escape(r.group) << ',' << r.score << ','
        << r.outcome << ',' << to_string(r.charge_degree) << ',' << r.priors << '\n';
  }
}

}  // namespace fairaudit
