#pragma once

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "rdh/pipeline.hpp"

namespace rdh {

/// One CSV/JSON report line. Image rows describe one (image, t0, t1) cell;
/// mean rows average a (t0, t1) cell over the corpus.
struct ReportRow {
  std::string row_type;  ///< "image" or "mean"
  std::string image_id;
  std::string path;
  std::size_t images = 1;
  int width = 0;
  int height = 0;
  int T = 1;
  int t0 = 1;
  int t1 = 1;
  bool selected = false;
  double boundary_before = 0;
  double boundary_after = 0;
  double map_bits_before = 0;
  double map_bits_after = 0;
  std::optional<double> r0_pct;
  std::optional<double> r1_pct;
  double max_payload_before = 0;
  double r_emb_before = 0;
  double max_payload_bits = 0;
  double r_emb = 0;
  /// nullopt: not embeddable; +inf: identical images.
  std::optional<double> psnr_db;
};

/// Stable column order of the CSV schema.
const std::vector<std::string>& report_columns();

ReportRow image_row(const std::string& image_id, const std::string& path, const GrayImage& img,
                    int T, const SweepRecord& rec);

/// Mean rows, one per (t0, t1) present in `rows` (image rows only), in
/// lexicographic order. Undefined ratios and non-finite PSNRs are left out of
/// their column's mean.
std::vector<ReportRow> mean_rows(const std::vector<ReportRow>& rows);

/// RFC 4180 CSV with a header row. Sentinels: "na" for undefined, "inf".
void write_csv(std::ostream& out, const std::vector<ReportRow>& rows);
/// Array of objects keyed by column name; "na" becomes null.
void write_json(std::ostream& out, const std::vector<ReportRow>& rows);

std::string csv_escape(const std::string& field);

struct AnalyzeOptions {
  int T = 1;
  int t0 = 1;
  int t1 = 4;
  bool sweep = false;
  std::vector<int> thresholds;  ///< sweep grid; 1..16 when empty
  std::optional<std::filesystem::path> maps_dir;
  std::optional<std::filesystem::path> histogram_dir;
  unsigned threads = 0;  ///< 0 picks hardware concurrency
};

struct AnalyzeResult {
  std::vector<ReportRow> rows;        ///< image rows sorted by id, then mean rows
  std::vector<std::string> warnings;  ///< one per skipped file
};

/// Every *.pgm under `dir` (non-recursive), sorted.
std::vector<std::filesystem::path> list_pgm_files(const std::filesystem::path& dir);

/// Evaluates every file. Images are processed concurrently but the output is
/// independent of scheduling. Unreadable files are skipped with a warning.
AnalyzeResult analyze_corpus(const std::vector<std::filesystem::path>& files,
                             const AnalyzeOptions& options, const Embedder& emb);

}  // namespace rdh
