#include "cli.hpp"

#include <filesystem>
#include <fstream>
#include <numeric>

#include "CLI11.hpp"
#include "rdh/fixtures.hpp"
#include "rdh/pgm_io.hpp"
#include "rdh/pipeline.hpp"
#include "rdh/report.hpp"

namespace fs = std::filesystem;

namespace rdh::cli {

std::vector<std::uint8_t> write_side_file(const CompressedMap& map, const PreprocessParams& params) {
  params.validate();
  auto bytes = serialize(map);
  bytes.push_back(static_cast<std::uint8_t>(params.T));
  bytes.push_back(static_cast<std::uint8_t>(params.t0));
  bytes.push_back(static_cast<std::uint8_t>(params.t1));
  return bytes;
}

SideFile read_side_file(std::span<const std::uint8_t> bytes) {
  std::size_t used = 0;
  SideFile sf;
  sf.map = parse_compressed_map(bytes, &used);
  if (bytes.size() - used != 3)
    fail(ErrorKind::Corruption, "map file: expected 3 parameter bytes after the map, found " +
                                    std::to_string(bytes.size() - used));
  sf.params = {bytes[used], bytes[used + 1], bytes[used + 2]};
  try {
    sf.params.validate();
  } catch (const Error& e) {
    fail(ErrorKind::Corruption, std::string("map file: ") + e.what());
  }
  if (sf.map.alphabet_size != 2 * sf.params.T + 1)
    fail(ErrorKind::Corruption, "map file: alphabet does not match T");
  return sf;
}

namespace {

struct Thresholds {
  int T = 1;
  int t0 = 1;
  int t1 = 4;
};

void add_params(CLI::App* cmd, Thresholds& p) {
  cmd->add_option("--T", p.T, "boundary half-width")->capture_default_str();
  cmd->add_option("--t0", p.t0, "threshold of the even-cell pass")->capture_default_str();
  cmd->add_option("--t1", p.t1, "threshold of the odd-cell pass")->capture_default_str();
}

BitStream load_payload(const fs::path& file, std::optional<std::size_t> bits) {
  const auto bytes = read_file(file);
  const std::size_t n = bits.value_or(bytes.size() * 8);
  if (n > bytes.size() * 8)
    fail(ErrorKind::Validation, "--bits " + std::to_string(n) + " exceeds the " +
                                    std::to_string(bytes.size() * 8) + " bits in " + file.string());
  return BitStream::from_bytes(bytes, n);
}

std::vector<int> default_grid() {
  std::vector<int> g(16);
  std::iota(g.begin(), g.end(), 1);
  return g;
}

void write_manifest(const fs::path& file, const std::vector<Fixture>& fixtures) {
  std::ofstream out(file, std::ios::binary);
  if (!out) fail(ErrorKind::Io, "cannot create " + file.string());
  out << "file,kind,width,height,seed,target_boundary_fraction,boundary_count_T1,boundary_fraction_T1\r\n";
  for (const auto& fx : fixtures) {
    const auto count = count_boundary_pixels(fx.image, 1);
    char frac[32], target[32];
    std::snprintf(target, sizeof target, "%.4f", fx.target_boundary_fraction);
    std::snprintf(frac, sizeof frac, "%.4f",
                  static_cast<double>(count) / static_cast<double>(fx.image.size()));
    out << fx.name << ".pgm," << to_string(fx.kind) << ',' << fx.image.width() << ','
        << fx.image.height() << ',' << fx.seed << ',' << target << ',' << count << ',' << frac
        << "\r\n";
  }
  if (!out) fail(ErrorKind::Io, "write error on " + file.string());
}

}  // namespace

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, out, err);
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Reversible data embedding for covers with many boundary pixels", "rdhtool"};
  app.require_subcommand(1);
  const HistogramShiftEmbedder emb;

  // preprocess
  auto* pre = app.add_subcommand("preprocess", "write the boundary-free image X and its location map");
  std::string pre_in, pre_out, pre_map;
  Thresholds pre_p;
  bool pre_ascii = false;
  pre->add_option("input", pre_in, "cover PGM")->required();
  pre->add_option("output", pre_out, "preprocessed PGM")->required();
  pre->add_option("map", pre_map, "compressed location map file")->required();
  add_params(pre, pre_p);
  pre->add_flag("--ascii", pre_ascii, "write P2 instead of P5");

  // restore
  auto* res = app.add_subcommand("restore", "invert preprocessing");
  std::string res_in, res_map, res_out;
  res->add_option("input", res_in, "preprocessed PGM")->required();
  res->add_option("map", res_map, "location map file from preprocess")->required();
  res->add_option("output", res_out, "restored PGM")->required();

  // embed
  auto* emb_cmd = app.add_subcommand("embed", "preprocess and embed a payload");
  std::string emb_in, emb_payload, emb_out;
  Thresholds emb_p;
  bool emb_auto = false;
  std::optional<std::size_t> emb_bits;
  emb_cmd->add_option("input", emb_in, "cover PGM")->required();
  emb_cmd->add_option("payload", emb_payload, "payload file (raw bytes)")->required();
  emb_cmd->add_option("output", emb_out, "marked PGM")->required();
  add_params(emb_cmd, emb_p);
  emb_cmd->add_flag("--auto", emb_auto, "pick t0, t1 in 1..16 maximising capacity");
  emb_cmd->add_option("--bits", emb_bits, "payload length in bits (default 8 x file size)");

  // extract
  auto* ext = app.add_subcommand("extract", "recover payload and cover from a marked image");
  std::string ext_in, ext_payload, ext_out;
  ext->add_option("input", ext_in, "marked PGM")->required();
  ext->add_option("payload", ext_payload, "recovered payload file")->required();
  ext->add_option("output", ext_out, "restored cover PGM")->required();

  // analyze
  auto* ana = app.add_subcommand("analyze", "boundary and side-information report over a corpus");
  std::string ana_dir, ana_out;
  Thresholds ana_p;
  bool ana_sweep = false, ana_json = false;
  std::string ana_maps, ana_hist;
  std::vector<int> ana_grid;
  unsigned ana_threads = 0;
  ana->add_option("corpus", ana_dir, "directory of PGM files")->required();
  ana->add_option("--out", ana_out, "report file (default: stdout)");
  add_params(ana, ana_p);
  ana->add_flag("--sweep", ana_sweep, "evaluate the full t0 x t1 grid");
  ana->add_option("--grid", ana_grid, "threshold values for --sweep (default 1..16)");
  ana->add_flag("--json", ana_json, "emit a JSON record array instead of CSV");
  ana->add_option("--maps", ana_maps, "directory for boundary-map visualisations");
  ana->add_option("--histograms", ana_hist, "directory for pixel/prediction joint histograms");
  ana->add_option("--threads", ana_threads, "worker threads (0 = all cores)");

  // gen-fixtures
  auto* gen = app.add_subcommand("gen-fixtures", "write a deterministic synthetic corpus");
  std::string gen_dir;
  std::uint64_t gen_seed = 1;
  int gen_per_kind = 2, gen_w = 64, gen_h = 64, gen_heavy = 0;
  gen->add_option("outdir", gen_dir, "output directory")->required();
  gen->add_option("--seed", gen_seed)->capture_default_str();
  gen->add_option("--per-kind", gen_per_kind, "images per model")->capture_default_str();
  gen->add_option("--width", gen_w)->capture_default_str();
  gen->add_option("--height", gen_h)->capture_default_str();
  gen->add_option("--heavy", gen_heavy, "boundary-heavy images only (overrides --per-kind)");

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return exit_code(ErrorKind::Validation);
  }

  try {
    if (pre->parsed()) {
      const PreprocessParams params{pre_p.T, pre_p.t0, pre_p.t1};
      params.validate();
      const GrayImage o = read_pgm_file(pre_in);
      const PreprocessOutput result = preprocess::forward(o, params);
      const CompressedMap map = compress(result.locmap);
      write_pgm_file(pre_out, result.x, pre_ascii ? PgmFlavor::Ascii : PgmFlavor::Binary);
      write_file(pre_map, write_side_file(map, params));
      out << "boundary_before " << count_boundary_pixels(o, params.T) << "\n"
          << "boundary_after " << boundary_count_after(result) << "\n"
          << "map_bits_before " << compress_binary_baseline(o, params.T).bit_length << "\n"
          << "map_bits_after " << map.bit_length << "\n";
    } else if (res->parsed()) {
      const GrayImage x = read_pgm_file(res_in);
      const SideFile sf = read_side_file(read_file(res_map));
      if (sf.map.width != x.width() || sf.map.height != x.height())
        fail(ErrorKind::Validation, "map is " + std::to_string(sf.map.width) + "x" +
                                        std::to_string(sf.map.height) + " but image is " +
                                        std::to_string(x.width()) + "x" +
                                        std::to_string(x.height()));
      const LocationMap l = decompress(sf.map);
      write_pgm_file(res_out, preprocess::inverse(x, l, sf.params));
    } else if (emb_cmd->parsed()) {
      const GrayImage o = read_pgm_file(emb_in);
      const BitStream payload = load_payload(emb_payload, emb_bits);
      PreprocessParams params{emb_p.T, emb_p.t0, emb_p.t1};
      params.validate();
      require_min_size(o);
      if (emb_auto) {
        const auto grid = default_grid();
        const auto& best = selected_record(sweep(o, grid, params.T, emb));
        params.t0 = best.t0;
        params.t1 = best.t1;
      }
      const EmbedResult r = embed_full(o, payload, params, emb);
      write_pgm_file(emb_out, r.marked);
      out << "T " << params.T << "\nt0 " << params.t0 << "\nt1 " << params.t1 << "\n"
          << "payload_bits " << r.payload_bits << "\n"
          << "max_payload_bits " << r.max_payload_bits << "\n"
          << "side_info_bits " << r.side_info_bits << "\n"
          << "r_emb " << r.r_emb << "\n"
          << "psnr_db " << r.psnr.to_string() << "\n";
    } else if (ext->parsed()) {
      const GrayImage y = read_pgm_file(ext_in);
      const Recovered r = extract_full(y, emb);
      write_file(ext_payload, r.payload.to_bytes());
      write_pgm_file(ext_out, r.original);
      out << "T " << r.params.T << "\nt0 " << r.params.t0 << "\nt1 " << r.params.t1 << "\n"
          << "payload_bits " << r.payload.size() << "\n";
    } else if (ana->parsed()) {
      AnalyzeOptions opt;
      opt.T = ana_p.T;
      opt.t0 = ana_p.t0;
      opt.t1 = ana_p.t1;
      opt.sweep = ana_sweep;
      opt.thresholds = ana_grid;
      opt.threads = ana_threads;
      if (!ana_maps.empty()) {
        fs::create_directories(ana_maps);
        opt.maps_dir = ana_maps;
      }
      if (!ana_hist.empty()) {
        fs::create_directories(ana_hist);
        opt.histogram_dir = ana_hist;
      }
      const AnalyzeResult result = analyze_corpus(list_pgm_files(ana_dir), opt, emb);
      for (const auto& w : result.warnings) err << "warning: " << w << "\n";
      auto emit = [&](std::ostream& os) {
        if (ana_json) write_json(os, result.rows);
        else write_csv(os, result.rows);
      };
      if (ana_out.empty()) {
        emit(out);
      } else {
        std::ofstream f(ana_out, std::ios::binary);
        if (!f) fail(ErrorKind::Io, "cannot create " + ana_out);
        emit(f);
        if (!f) fail(ErrorKind::Io, "write error on " + ana_out);
      }
      if (!result.warnings.empty()) return exit_code(ErrorKind::Io);
    } else if (gen->parsed()) {
      std::error_code ec;
      fs::create_directories(gen_dir, ec);
      if (ec) fail(ErrorKind::Io, "cannot create " + gen_dir + ": " + ec.message());
      if (gen_w < 2 || gen_h < 2) fail(ErrorKind::Validation, "fixtures must be at least 2x2");
      const auto fixtures = gen_heavy > 0 ? boundary_heavy_corpus(gen_seed, gen_heavy, gen_w, gen_h)
                                          : generate_corpus(gen_seed, gen_per_kind, gen_w, gen_h);
      for (const auto& fx : fixtures) write_pgm_file(fs::path(gen_dir) / (fx.name + ".pgm"), fx.image);
      write_manifest(fs::path(gen_dir) / "manifest.csv", fixtures);
      out << "wrote " << fixtures.size() << " images to " << gen_dir << "\n";
    }
  } catch (const CapacityError& e) {
    err << "error: " << e.what() << "\n";
    return exit_code(e.kind());
  } catch (const Error& e) {
    err << "error (" << to_string(e.kind()) << "): " << e.what() << "\n";
    return exit_code(e.kind());
  } catch (const fs::filesystem_error& e) {
    err << "error (io): " << e.what() << "\n";
    return exit_code(ErrorKind::Io);
  }
  return 0;
}

}  // namespace rdh::cli
