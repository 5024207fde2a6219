#include "cumdiff/csv.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>

#include "cumdiff/error.hpp"

namespace cumdiff {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

bool is_missing(const std::string& cell) {
  std::string lower;
  for (char c : cell) lower.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  return lower.empty() || lower == "na" || lower == "nan" || lower == "null";
}

double parse_number(const std::string& cell, std::size_t row, const std::string& column) {
  const char* first = cell.data();
  const char* last = first + cell.size();
  if (first != last && *first == '+') ++first;
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || !std::isfinite(value)) {
    throw Error(ErrorKind::InvalidRecord,
                "row " + std::to_string(row) + ", column '" + column +
                    "': cannot parse '" + cell + "'",
                row);
  }
  return value;
}

class Reader {
 public:
  explicit Reader(std::istream& in) : in_(in) {
    std::string line;
    if (!std::getline(in_, line)) throw Error(ErrorKind::SchemaError, "missing header row");
    header_ = split_csv_line(line);
  }

  std::size_t locate(const std::string& name) const {
    const auto it = std::find(header_.begin(), header_.end(), name);
    if (it == header_.end()) throw Error(ErrorKind::SchemaError, "unknown column '" + name + "'");
    return static_cast<std::size_t>(it - header_.begin());
  }

  // Advances to the next nonblank data row.
  bool next() {
    std::string line;
    while (std::getline(in_, line)) {
      if (trim(line).empty()) continue;
      cells_ = split_csv_line(line);
      row_ = next_row_++;
      return true;
    }
    return false;
  }

  std::size_t row() const { return row_; }

  const std::string& cell(std::size_t idx) const {
    static const std::string kEmpty;
    return idx < cells_.size() ? cells_[idx] : kEmpty;
  }

 private:
  std::istream& in_;
  std::vector<std::string> header_;
  std::vector<std::string> cells_;
  std::size_t row_ = 0;
  std::size_t next_row_ = 0;
};

}  // namespace

void ColumnMap::validate() const {
  if (covariates.empty()) throw Error(ErrorKind::SchemaError, "no covariate columns given");
  std::set<std::string> seen;
  auto add = [&](const std::string& name) {
    if (name.empty()) throw Error(ErrorKind::SchemaError, "empty column name");
    if (!seen.insert(name).second) {
      throw Error(ErrorKind::SchemaError, "column '" + name + "' mapped twice");
    }
  };
  for (const auto& c : covariates) add(c);
  add(q);
  add(r);
  if (weight) add(*weight);
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cell.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cell.push_back(c);
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      cells.push_back(trim(cell));
      cell.clear();
    } else if (c != '\r') {
      cell.push_back(c);
    }
  }
  cells.push_back(trim(cell));
  return cells;
}

IngestResult ingest_csv(std::istream& in, const ColumnMap& map) {
  map.validate();
  Reader reader(in);
  std::vector<std::size_t> cov_idx;
  for (const auto& c : map.covariates) cov_idx.push_back(reader.locate(c));
  const std::size_t q_idx = reader.locate(map.q);
  const std::size_t r_idx = reader.locate(map.r);
  const std::optional<std::size_t> w_idx =
      map.weight ? std::optional<std::size_t>(reader.locate(*map.weight)) : std::nullopt;

  IngestResult out;
  out.covariates.cols = map.covariates.size();
  while (reader.next()) {
    const std::size_t row = reader.row();
    bool missing = is_missing(reader.cell(q_idx)) || is_missing(reader.cell(r_idx)) ||
                   (w_idx && is_missing(reader.cell(*w_idx)));
    for (auto idx : cov_idx) missing = missing || is_missing(reader.cell(idx));
    if (missing) {
      ++out.dropped;
      continue;
    }

    PairedRecord rec;
    rec.q = parse_number(reader.cell(q_idx), row, map.q);
    rec.r = parse_number(reader.cell(r_idx), row, map.r);
    rec.weight = w_idx ? parse_number(reader.cell(*w_idx), row, *map.weight) : 1.0;
    for (std::size_t k = 0; k < cov_idx.size(); ++k) {
      out.covariates.values.push_back(parse_number(reader.cell(cov_idx[k]), row, map.covariates[k]));
    }
    rec.score = out.covariates.values[out.covariates.values.size() - cov_idx.size()];
    validate_record(rec, row);
    out.dataset.records.push_back(rec);
    ++out.covariates.rows;
  }
  if (out.dataset.empty()) throw Error(ErrorKind::EmptyInput, "no usable rows in CSV input");
  return out;
}

IngestResult ingest_csv(const std::filesystem::path& path, const ColumnMap& map) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::IoError, "cannot open '" + path.string() + "'");
  return ingest_csv(in, map);
}

CovariateTable read_covariates(std::istream& in, const std::vector<std::string>& names) {
  if (names.empty()) throw Error(ErrorKind::SchemaError, "no covariate columns given");
  Reader reader(in);
  std::vector<std::size_t> idx;
  for (const auto& name : names) idx.push_back(reader.locate(name));

  CovariateTable out;
  out.covariates.cols = names.size();
  while (reader.next()) {
    bool missing = false;
    for (auto i : idx) missing = missing || is_missing(reader.cell(i));
    if (missing) {
      ++out.dropped;
      continue;
    }
    for (std::size_t k = 0; k < idx.size(); ++k) {
      out.covariates.values.push_back(parse_number(reader.cell(idx[k]), reader.row(), names[k]));
    }
    out.rows.push_back(reader.row());
    ++out.covariates.rows;
  }
  if (out.rows.empty()) throw Error(ErrorKind::EmptyInput, "no usable rows in CSV input");
  return out;
}

CovariateTable read_covariates(const std::filesystem::path& path,
                               const std::vector<std::string>& names) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::IoError, "cannot open '" + path.string() + "'");
  return read_covariates(in, names);
}

}  // namespace cumdiff
