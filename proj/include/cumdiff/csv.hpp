#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "cumdiff/hilbert.hpp"
#include "cumdiff/sample.hpp"

namespace cumdiff {

struct ColumnMap {
  std::vector<std::string> covariates;
  std::string q;
  std::string r;
  std::optional<std::string> weight;

  // Throws SchemaError on duplicate names or no covariates.
  void validate() const;
};

struct IngestResult {
  // Scores hold the raw first covariate; `analyze` replaces them.
  PairedDataset dataset;
  // Raw covariates of the kept rows, columns in ColumnMap order.
  hilbert::CovariateMatrix covariates;
  std::size_t dropped = 0;
};

/*
 * Reads a headed CSV. Rows with any mapped field empty or NA/NaN are
 * dropped and counted. Unparseable numbers and nonpositive weights raise
 * InvalidRecord with the 0-based data row; unknown columns raise
 * SchemaError; no surviving rows raise EmptyInput.
 */
IngestResult ingest_csv(std::istream& in, const ColumnMap& map);
IngestResult ingest_csv(const std::filesystem::path& path, const ColumnMap& map);

struct CovariateTable {
  hilbert::CovariateMatrix covariates;
  // 0-based data-row number of each kept row.
  std::vector<std::size_t> rows;
  std::size_t dropped = 0;
};

// Covariate columns only, with the same missing-value rules.
CovariateTable read_covariates(std::istream& in, const std::vector<std::string>& names);
CovariateTable read_covariates(const std::filesystem::path& path,
                               const std::vector<std::string>& names);

// Splits one CSV line, honouring double quotes and "" escapes.
std::vector<std::string> split_csv_line(const std::string& line);

}  // namespace cumdiff
