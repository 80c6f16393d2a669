#include "rdh/report.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <numeric>
#include <thread>

#include "json.hpp"

#include "rdh/pgm_io.hpp"

namespace rdh {

namespace {

std::string fixed(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  return buf;
}

std::string opt_fixed(const std::optional<double>& v, int decimals) {
  if (!v) return "na";
  if (std::isinf(*v)) return "inf";
  return fixed(*v, decimals);
}

/// Integer-valued columns print without decimals on image rows.
std::string count_field(const ReportRow& r, double v) {
  return r.row_type == "image" ? fixed(v, 0) : fixed(v, 3);
}

std::vector<std::string> fields_of(const ReportRow& r) {
  return {r.row_type,
          r.image_id,
          r.path,
          std::to_string(r.images),
          r.row_type == "image" ? std::to_string(r.width) : "",
          r.row_type == "image" ? std::to_string(r.height) : "",
          std::to_string(r.T),
          std::to_string(r.t0),
          std::to_string(r.t1),
          r.selected ? "1" : "0",
          count_field(r, r.boundary_before),
          count_field(r, r.boundary_after),
          count_field(r, r.map_bits_before),
          count_field(r, r.map_bits_after),
          opt_fixed(r.r0_pct, 4),
          opt_fixed(r.r1_pct, 4),
          count_field(r, r.max_payload_before),
          fixed(r.r_emb_before, 6),
          count_field(r, r.max_payload_bits),
          fixed(r.r_emb, 6),
          opt_fixed(r.psnr_db, 4)};
}

struct MeanAccumulator {
  std::size_t n = 0;
  double sum = 0;
  void add(double v) { sum += v, ++n; }
  std::optional<double> mean() const {
    if (n == 0) return std::nullopt;
    return sum / static_cast<double>(n);
  }
};

}  // namespace

const std::vector<std::string>& report_columns() {
  static const std::vector<std::string> kColumns{
      "row_type",        "image_id",       "path",           "images",
      "width",           "height",         "T",              "t0",
      "t1",              "selected",       "boundary_before", "boundary_after",
      "map_bits_before", "map_bits_after", "r0_pct",         "r1_pct",
      "max_payload_before", "r_emb_before", "max_payload_bits", "r_emb",
      "psnr_db"};
  return kColumns;
}

ReportRow image_row(const std::string& image_id, const std::string& path, const GrayImage& img,
                    int T, const SweepRecord& rec) {
  ReportRow r;
  r.row_type = "image";
  r.image_id = image_id;
  r.path = path;
  r.width = img.width();
  r.height = img.height();
  r.T = T;
  r.t0 = rec.t0;
  r.t1 = rec.t1;
  r.selected = rec.selected;
  r.boundary_before = static_cast<double>(rec.boundary_before);
  r.boundary_after = static_cast<double>(rec.boundary_after);
  r.map_bits_before = static_cast<double>(rec.map_bits_before);
  r.map_bits_after = static_cast<double>(rec.map_bits_after);
  r.r0_pct = rec.r0;
  r.r1_pct = rec.r1;
  r.max_payload_before = static_cast<double>(rec.max_payload_before);
  r.r_emb_before = rec.r_emb_before;
  r.max_payload_bits = static_cast<double>(rec.max_payload_bits);
  r.r_emb = rec.r_emb;
  if (rec.psnr)
    r.psnr_db = rec.psnr->is_infinite() ? std::numeric_limits<double>::infinity() : rec.psnr->db();
  return r;
}

std::vector<ReportRow> mean_rows(const std::vector<ReportRow>& rows) {
  struct Acc {
    int T = 1;
    std::size_t images = 0;
    MeanAccumulator bb, ba, mb, ma, r0, r1, pb, rb, pa, ra, ps;
  };
  std::map<std::pair<int, int>, Acc> cells;
  for (const auto& r : rows) {
    if (r.row_type != "image") continue;
    auto& a = cells[{r.t0, r.t1}];
    a.T = r.T;
    ++a.images;
    a.bb.add(r.boundary_before);
    a.ba.add(r.boundary_after);
    a.mb.add(r.map_bits_before);
    a.ma.add(r.map_bits_after);
    if (r.r0_pct) a.r0.add(*r.r0_pct);
    if (r.r1_pct) a.r1.add(*r.r1_pct);
    a.pb.add(r.max_payload_before);
    a.rb.add(r.r_emb_before);
    a.pa.add(r.max_payload_bits);
    a.ra.add(r.r_emb);
    if (r.psnr_db && std::isfinite(*r.psnr_db)) a.ps.add(*r.psnr_db);
  }
  std::vector<ReportRow> out;
  for (const auto& [key, a] : cells) {
    ReportRow m;
    m.row_type = "mean";
    m.image_id = "*";
    m.images = a.images;
    m.T = a.T;
    m.t0 = key.first;
    m.t1 = key.second;
    m.boundary_before = *a.bb.mean();
    m.boundary_after = *a.ba.mean();
    m.map_bits_before = *a.mb.mean();
    m.map_bits_after = *a.ma.mean();
    m.r0_pct = a.r0.mean();
    m.r1_pct = a.r1.mean();
    m.max_payload_before = *a.pb.mean();
    m.r_emb_before = *a.rb.mean();
    m.max_payload_bits = *a.pa.mean();
    m.r_emb = *a.ra.mean();
    m.psnr_db = a.ps.mean();
    out.push_back(std::move(m));
  }
  return out;
}

std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

void write_csv(std::ostream& out, const std::vector<ReportRow>& rows) {
  const auto& cols = report_columns();
  for (std::size_t k = 0; k < cols.size(); ++k) out << (k ? "," : "") << cols[k];
  out << "\r\n";
  for (const auto& r : rows) {
    const auto f = fields_of(r);
    for (std::size_t k = 0; k < f.size(); ++k) out << (k ? "," : "") << csv_escape(f[k]);
    out << "\r\n";
  }
}

void write_json(std::ostream& out, const std::vector<ReportRow>& rows) {
  using nlohmann::json;
  const auto& cols = report_columns();
  json arr = json::array();
  for (const auto& r : rows) {
    const auto f = fields_of(r);
    json obj = json::object();
    for (std::size_t k = 0; k < cols.size(); ++k) {
      const auto& v = f[k];
      if (k < 3 || v == "inf") {
        obj[cols[k]] = v;
      } else if (v == "na" || v.empty()) {
        obj[cols[k]] = nullptr;
      } else {
        obj[cols[k]] = std::stod(v);
      }
    }
    arr.push_back(std::move(obj));
  }
  out << arr.dump(2) << "\n";
}

std::vector<std::filesystem::path> list_pgm_files(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::directory_iterator it(dir, ec);
  if (ec) fail(ErrorKind::Io, "cannot list " + dir.string() + ": " + ec.message());
  std::vector<std::filesystem::path> files;
  for (const auto& entry : it)
    if (entry.is_regular_file() && entry.path().extension() == ".pgm") files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  return files;
}

namespace {

struct ImageOutcome {
  std::vector<ReportRow> rows;
  std::optional<std::string> warning;
};

void export_histogram(const std::filesystem::path& file, const GrayImage& img) {
  const auto h = joint_histogram(img);
  std::ofstream out(file, std::ios::binary);
  if (!out) fail(ErrorKind::Io, "cannot create " + file.string());
  out << "pixel,prediction,count\r\n";
  for (int v = 0; v < 256; ++v)
    for (int p = 0; p < 256; ++p)
      if (h[v][p]) out << v << ',' << p << ',' << h[v][p] << "\r\n";
}

ImageOutcome analyze_one(const std::filesystem::path& file, const AnalyzeOptions& opt,
                         const std::vector<int>& grid, const Embedder& emb) {
  ImageOutcome res;
  const std::string id = file.stem().string();
  GrayImage img;
  try {
    img = read_pgm_file(file);
    require_min_size(img);
  } catch (const Error& e) {
    res.warning = file.string() + ": skipped (" + e.what() + ")";
    return res;
  }

  std::vector<SweepRecord> recs;
  if (opt.sweep) {
    recs = sweep(img, grid, opt.T, emb);
  } else {
    recs.push_back(evaluate(img, opt.T, opt.t0, opt.t1, emb));
    recs.back().selected = true;
  }
  for (const auto& rec : recs) res.rows.push_back(image_row(id, file.string(), img, opt.T, rec));

  if (opt.maps_dir) {
    write_pgm_file(*opt.maps_dir / (id + "_before.pgm"), mask_image(binary_boundary_map(img, opt.T)));
    const auto& chosen = opt.sweep ? selected_record(recs) : recs.front();
    const auto pre = preprocess::forward(img, {opt.T, chosen.t0, chosen.t1});
    write_pgm_file(*opt.maps_dir / (id + "_after_t0-" + std::to_string(chosen.t0) + "_t1-" +
                                    std::to_string(chosen.t1) + ".pgm"),
                   mask_image(pre.locmap));
  }
  if (opt.histogram_dir) export_histogram(*opt.histogram_dir / (id + "_joint_hist.csv"), img);
  return res;
}

}  // namespace

AnalyzeResult analyze_corpus(const std::vector<std::filesystem::path>& files,
                             const AnalyzeOptions& options, const Embedder& emb) {
  PreprocessParams{options.T, options.t0, options.t1}.validate();
  std::vector<int> grid = options.thresholds;
  if (grid.empty()) {
    grid.resize(16);
    std::iota(grid.begin(), grid.end(), 1);
  }
  for (int t : grid) PreprocessParams{options.T, t, t}.validate();

  std::vector<std::filesystem::path> sorted = files;
  std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) {
    return a.stem().string() != b.stem().string() ? a.stem().string() < b.stem().string()
                                                  : a.string() < b.string();
  });

  std::vector<ImageOutcome> outcomes(sorted.size());
  std::vector<std::exception_ptr> errors(sorted.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k; (k = next.fetch_add(1)) < sorted.size();) {
      try {
        outcomes[k] = analyze_one(sorted[k], options, grid, emb);
      } catch (...) {
        errors[k] = std::current_exception();
      }
    }
  };
  unsigned n = options.threads ? options.threads : std::max(1u, std::thread::hardware_concurrency());
  n = static_cast<unsigned>(std::min<std::size_t>(n, std::max<std::size_t>(1, sorted.size())));
  {
    std::vector<std::jthread> pool;
    for (unsigned t = 1; t < n; ++t) pool.emplace_back(worker);
    worker();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);

  AnalyzeResult result;
  for (auto& o : outcomes) {
    if (o.warning) result.warnings.push_back(*o.warning);
    for (auto& r : o.rows) result.rows.push_back(std::move(r));
  }
  auto means = mean_rows(result.rows);
  result.rows.insert(result.rows.end(), means.begin(), means.end());
  return result;
}

}  // namespace rdh
