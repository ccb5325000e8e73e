#include "confpoly/cli.hpp"

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "confpoly/analysis.hpp"
#include "confpoly/combinatorics.hpp"
#include "confpoly/geometry.hpp"
#include "confpoly/io.hpp"
#include "confpoly/polytope.hpp"

#ifndef CONFPOLY_VERSION
#define CONFPOLY_VERSION "0.0.0"
#endif

namespace confpoly {

namespace {

// Accumulates output for stdout or a file; a file gets a manifest sidecar.
class Sink {
 public:
  explicit Sink(std::string path) : path_(std::move(path)) {
    if (!path_.empty()) {
      file_.open(path_, std::ios::binary);
      if (!file_) throw std::runtime_error("cannot open for writing: " + path_);
    }
  }

  std::ostream& os() { return path_.empty() ? std::cout : file_; }

  void finish(const RunManifest& m) {
    if (path_.empty()) return;  // stdout emits no data file, so no manifest
    file_.flush();
    if (!file_) throw std::runtime_error("write failed: " + path_);
    file_.close();
    write_manifest(path_ + ".manifest.json", m);
  }

 private:
  std::string path_;
  std::ofstream file_;
};

RunManifest make_manifest(
    const std::string& command,
    std::vector<std::pair<std::string, std::string>> params,
    std::uint64_t seed, int workers) {
  RunManifest m;
  m.command = command;
  m.parameters = std::move(params);
  m.seed = seed;
  m.worker_count = workers;
  m.artifact_version = CONFPOLY_VERSION;
  m.timestamp = iso8601_utc_now();
  return m;
}

std::string join_ints(const std::vector<int>& v) {
  std::ostringstream os;
  for (std::size_t i = 0; i < v.size(); ++i)
    os << (i ? "," : "") << v[i];
  return os.str();
}

// Splits `count` draws over `workers` streams; chunk w is rendered with
// stream worker(w) and chunks are concatenated in worker order, so output
// bytes depend only on (seed, count, workers).
template <class RenderChunk>
void run_chunked(std::ostream& os, long long count, int workers,
                 RenderChunk render) {
  workers = static_cast<int>(std::min<long long>(workers, count));
  const long long chunk = count / workers;
  const long long rem = count % workers;
  if (workers == 1) {
    render(0, 0, count, os);
    return;
  }
  std::vector<std::string> parts(workers);
  std::vector<std::thread> pool;
  long long start = 0;
  for (int w = 0; w < workers; ++w) {
    const long long c = chunk + (w < rem ? 1 : 0);
    pool.emplace_back([&parts, w, start, c, &render] {
      std::ostringstream buf;
      render(w, start, c, buf);
      parts[w] = buf.str();
    });
    start += c;
  }
  for (auto& t : pool) t.join();
  for (const auto& p : parts) os << p;
}

void run_sample(int n, long long count, std::uint64_t seed, int threads,
                const std::string& format, Sink& sink) {
  RngState base(seed);
  auto render = [&](int w, long long start, long long c, std::ostream& os) {
    RngState rng = base.worker(w);
    Eigen::Matrix3Xd vertices;
    Eigen::VectorXd d, theta;
    for (long long k = 0; k < c; ++k) {
      sample_polygon_into(n, rng, vertices, d, theta);
      if (format == "csv") {
        Polygon p;
        p.vertices = vertices;
        write_polygon_csv(os, p, start + k == 0);
      } else {
        nlohmann::ordered_json j;
        j["n"] = n;
        auto verts = nlohmann::ordered_json::array();
        for (int i = 0; i < n; ++i)
          verts.push_back({vertices(0, i), vertices(1, i), vertices(2, i)});
        j["vertices"] = std::move(verts);
        j["seed"] = seed;
        j["index"] = start + k;
        os << j.dump() << '\n';
      }
    }
  };
  run_chunked(sink.os(), count, threads, render);
}

void run_sample_diagonals(int n, long long count, std::uint64_t seed,
                          int threads, Sink& sink) {
  RngState base(seed);
  const int m = n - 3;
  {
    std::ostream& os = sink.os();
    for (int i = 1; i <= m; ++i) os << "d_" << i << (i == m ? '\n' : ',');
  }
  auto render = [&](int w, long long, long long c, std::ostream& os) {
    RngState rng = base.worker(w);
    Eigen::VectorXd d(m);
    for (long long k = 0; k < c; ++k) {
      sample_diagonals_into(n, rng, d);
      for (int i = 0; i < m; ++i)
        os << format_double(d[i]) << (i + 1 == m ? '\n' : ',');
    }
  };
  run_chunked(sink.os(), count, threads, render);
}

void run_coords(const std::string& input, const std::string& direction,
                Sink& sink) {
  std::ifstream in(input);
  if (!in) throw std::runtime_error("cannot open input: " + input);
  std::ostream& os = sink.os();
  if (direction == "to-action-angle") {
    auto polys = read_polygon_csv(in);
    const int n = polys.front().n();
    write_action_angle_header(os, n);
    Eigen::VectorXd d, theta;
    for (const auto& p : polys) {
      if (p.n() != n)
        throw std::runtime_error("coords: all polygons must share one n");
      extract_action_angle_into(p.vertices, d, theta);
      write_action_angle_row(os, d, theta);
    }
  } else {
    auto rows = read_action_angle_csv(in);
    Eigen::Matrix3Xd vertices;
    bool first = true;
    for (const auto& c : rows) {
      reconstruct_into(c.diagonals.d, c.dihedrals.theta, vertices);
      Polygon p;
      p.vertices = vertices;
      write_polygon_csv(os, p, first);
      first = false;
    }
  }
}

void run_tables(int max_n, const std::string& kind, const std::string& route,
                Sink& sink) {
  std::ostream& os = sink.os();
  if (kind == "extensions") {
    LinearExtensionTable t = route == "recursive" ? ez_table_recursive(max_n)
                                                  : ez_table_entringer(max_n);
    os << "n,i,value\n";
    for (int n = 1; n <= max_n; ++n)
      for (int i = 1; i <= n; ++i)
        os << n << ',' << i << ',' << t.at(n, i).str() << '\n';
  } else {
    auto t = entringer_table(max_n);
    os << "n,k,value\n";
    for (int n = 0; n <= max_n; ++n)
      for (int k = 0; k <= n; ++k)
        os << n << ',' << k << ',' << t.at(n, k).str() << '\n';
  }
}

void run_chords(int n, long long count, std::uint64_t seed, int threads,
                int exact_limit, Sink& sink) {
  DiagonalStats stats = diagonal_stats(n, count, RngState(seed), threads);
  std::vector<BigRational> exact;
  if (n - 3 <= exact_limit) exact = expected_chord_lengths_all(n);
  std::ostream& os = sink.os();
  os << "i,empirical_mean,exact_mean\n";
  for (int i = 0; i < n - 3; ++i) {
    os << (i + 1) << ',' << format_double(stats.mean[i]) << ',';
    if (!exact.empty())
      os << format_double(exact[i].convert_to<double>());
    os << '\n';
  }
}

void run_curvature_scan(const std::vector<int>& n_list, long long count,
                        std::uint64_t seed, int threads, Sink& sink) {
  std::ostream& os = sink.os();
  os << "n,count,mean_turning_angle,se_turning_angle,mean_total_curvature,"
        "rejection_rate,mean_attempts\n";
  for (int n : n_list) {
    EnsembleStats s = ensemble_stats(n, count, RngState(seed), threads);
    os << n << ',' << s.count << ',' << format_double(s.mean_turning_angle)
       << ',' << format_double(s.se_turning_angle) << ','
       << format_double(s.mean_total_curvature) << ','
       << format_double(s.rejection_rate) << ','
       << format_double(s.mean_attempts) << '\n';
  }
}

void run_rejection_stats(const std::vector<int>& n_list, long long count,
                         std::uint64_t seed, int threads, Sink& sink) {
  std::ostream& os = sink.os();
  os << "n,count,rejection_rate,mean_attempts\n";
  for (int n : n_list) {
    DiagonalStats s = diagonal_stats(n, count, RngState(seed), threads);
    os << n << ',' << s.count << ',' << format_double(s.rejection_rate) << ','
       << format_double(s.mean_attempts) << '\n';
  }
}

void run_integrate(const std::string& method, double tol, long long qmc_points,
                   std::uint64_t qmc_seed, Sink& sink) {
  const QuadMethod m = method == "qmc" ? QuadMethod::quasi_monte_carlo
                                       : QuadMethod::gauss_legendre;
  IntegralResult r = asymptotic_turning_angle(tol, m, qmc_points, qmc_seed);
  std::ostream& os = sink.os();
  os << "value,error_estimate,evaluations\n";
  os << format_double(r.value) << ',' << format_double(r.error_estimate) << ','
     << r.evaluations << '\n';
}

void run_fit(const std::string& input, Sink& sink) {
  std::ifstream in(input);
  if (!in) throw std::runtime_error("cannot open input: " + input);
  CsvTable t = read_csv_table(in);
  std::size_t cn = 0, cm = 1;
  for (std::size_t i = 0; i < t.header.size(); ++i) {
    if (t.header[i] == "n") cn = i;
    if (t.header[i] == "mean_turning_angle") cm = i;
  }
  std::vector<std::pair<double, double>> points;
  for (const auto& row : t.rows) {
    if (row.size() <= std::max(cn, cm))
      throw std::runtime_error("fit: row with too few columns");
    if (std::isnan(row[cn]) || std::isnan(row[cm])) continue;
    points.emplace_back(row[cn], row[cm]);
  }
  FitResult f = fit_reciprocal_model(points);
  std::ostream& os = sink.os();
  os << "a,b,r_squared\n";
  os << format_double(f.a) << ',' << format_double(f.b) << ','
     << format_double(f.r_squared) << '\n';
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  CLI::App app{
      "Sampling and analysis of equilateral closed polygons confined to the "
      "unit ball, with the exact combinatorics behind them"};
  app.set_version_flag("--version", CONFPOLY_VERSION);
  app.require_subcommand(1);

  // sample
  auto* sample = app.add_subcommand(
      "sample", "Draw confined polygons and emit their vertices");
  int sample_n = 0;
  long long sample_count = 1;
  std::uint64_t sample_seed = 0;
  int sample_threads = 1;
  std::string sample_format = "csv";
  std::string sample_out;
  sample->add_option("--n", sample_n, "number of edges (>= 4)")
      ->required()
      ->check(CLI::Range(4, 10000000));
  sample->add_option("--count", sample_count, "number of polygons")
      ->check(CLI::PositiveNumber);
  sample->add_option("--seed", sample_seed, "RNG seed");
  sample->add_option("--threads", sample_threads, "worker count")
      ->check(CLI::PositiveNumber);
  sample->add_option("--format", sample_format, "csv or jsonl")
      ->check(CLI::IsMember({"csv", "jsonl"}));
  sample->add_option("--out", sample_out,
                     "output file (stdout if omitted); a .manifest.json "
                     "sidecar is written next to it");

  // sample-diagonals
  auto* sdiag = app.add_subcommand(
      "sample-diagonals", "Draw fan-diagonal vectors without the geometry");
  int sdiag_n = 0;
  long long sdiag_count = 1;
  std::uint64_t sdiag_seed = 0;
  int sdiag_threads = 1;
  std::string sdiag_out;
  sdiag->add_option("--n", sdiag_n, "number of edges (>= 4)")
      ->required()
      ->check(CLI::Range(4, 10000000));
  sdiag->add_option("--count", sdiag_count, "number of draws")
      ->check(CLI::PositiveNumber);
  sdiag->add_option("--seed", sdiag_seed, "RNG seed");
  sdiag->add_option("--threads", sdiag_threads, "worker count")
      ->check(CLI::PositiveNumber);
  sdiag->add_option("--out", sdiag_out, "output file (stdout if omitted)");

  // coords
  auto* coords = app.add_subcommand(
      "coords", "Convert between vertex CSV and action-angle CSV");
  std::string coords_input, coords_direction, coords_out;
  coords->add_option("--input", coords_input, "input CSV file")->required();
  coords
      ->add_option("--direction", coords_direction,
                   "to-action-angle or to-vertices")
      ->required()
      ->check(CLI::IsMember({"to-action-angle", "to-vertices"}));
  coords->add_option("--out", coords_out, "output file (stdout if omitted)");

  // tables
  auto* tables = app.add_subcommand(
      "tables", "Exact count tables (linear extensions or first-entry counts)");
  int tables_max_n = 10;
  std::string tables_kind = "extensions";
  std::string tables_route = "formula";
  std::string tables_out;
  tables->add_option("--max-n", tables_max_n, "largest n in the table")
      ->check(CLI::Range(1, 300));
  tables->add_option("--kind", tables_kind, "extensions or entringer")
      ->check(CLI::IsMember({"extensions", "entringer"}));
  tables
      ->add_option("--route", tables_route,
                   "extensions only: formula or recursive computation")
      ->check(CLI::IsMember({"formula", "recursive"}));
  tables->add_option("--out", tables_out, "output file (stdout if omitted)");

  // chords
  auto* chords = app.add_subcommand(
      "chords", "Empirical vs exact expected fan-diagonal lengths");
  int chords_n = 0;
  long long chords_count = 100000;
  std::uint64_t chords_seed = 0;
  int chords_threads = 1;
  int chords_exact_limit = 80;
  std::string chords_out;
  chords->add_option("--n", chords_n, "number of edges (>= 4)")
      ->required()
      ->check(CLI::Range(4, 10000000));
  chords->add_option("--count", chords_count, "number of draws")
      ->check(CLI::PositiveNumber);
  chords->add_option("--seed", chords_seed, "RNG seed");
  chords->add_option("--threads", chords_threads, "worker count")
      ->check(CLI::PositiveNumber);
  chords->add_option(
      "--exact-limit", chords_exact_limit,
      "emit exact means only when n-3 is at most this (the exact table "
      "is cubic in n); larger n leaves the column blank");
  chords->add_option("--out", chords_out, "output file (stdout if omitted)");

  // curvature-scan
  auto* scan = app.add_subcommand(
      "curvature-scan", "Turning-angle ensemble statistics across n");
  std::vector<int> scan_n_list;
  long long scan_count = 100000;
  std::uint64_t scan_seed = 0;
  int scan_threads = 1;
  std::string scan_out;
  scan->add_option("--n-list", scan_n_list, "comma-separated n values")
      ->required()
      ->delimiter(',');
  scan->add_option("--count", scan_count, "polygons per n")
      ->check(CLI::PositiveNumber);
  scan->add_option("--seed", scan_seed, "RNG seed");
  scan->add_option("--threads", scan_threads, "worker count")
      ->check(CLI::PositiveNumber);
  scan->add_option("--out", scan_out, "output file (stdout if omitted)");

  // rejection-stats
  auto* rej = app.add_subcommand(
      "rejection-stats", "Accept/reject behaviour of the diagonal sampler");
  std::vector<int> rej_n_list;
  long long rej_count = 100000;
  std::uint64_t rej_seed = 0;
  int rej_threads = 1;
  std::string rej_out;
  rej->add_option("--n-list", rej_n_list, "comma-separated n values")
      ->required()
      ->delimiter(',');
  rej->add_option("--count", rej_count, "draws per n")
      ->check(CLI::PositiveNumber);
  rej->add_option("--seed", rej_seed, "RNG seed");
  rej->add_option("--threads", rej_threads, "worker count")
      ->check(CLI::PositiveNumber);
  rej->add_option("--out", rej_out, "output file (stdout if omitted)");

  // integrate-phi
  auto* integ = app.add_subcommand(
      "integrate-phi", "Limiting expected turning angle by quadrature");
  std::string integ_method = "gauss";
  double integ_tol = 1e-4;
  long long integ_points = 100000000;
  std::uint64_t integ_seed = 20260819;
  std::string integ_out;
  integ->add_option("--method", integ_method, "gauss or qmc")
      ->check(CLI::IsMember({"gauss", "qmc"}));
  integ->add_option("--tol", integ_tol, "agreement tolerance")
      ->check(CLI::PositiveNumber);
  integ->add_option("--qmc-points", integ_points,
                    "points per scrambling (qmc only)")
      ->check(CLI::PositiveNumber);
  integ->add_option("--qmc-seed", integ_seed, "shift seed (qmc only)");
  integ->add_option("--out", integ_out, "output file (stdout if omitted)");

  // fit
  auto* fit = app.add_subcommand(
      "fit", "Fit mean turning angle against 1/n");
  std::string fit_input, fit_out;
  fit->add_option("--input", fit_input,
                  "CSV with columns n and mean_turning_angle (header "
                  "optional; falls back to the first two columns)")
      ->required();
  fit->add_option("--out", fit_out, "output file (stdout if omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*sample) {
      Sink sink(sample_out);
      run_sample(sample_n, sample_count, sample_seed, sample_threads,
                 sample_format, sink);
      sink.finish(make_manifest("sample",
                                {{"n", std::to_string(sample_n)},
                                 {"count", std::to_string(sample_count)},
                                 {"seed", std::to_string(sample_seed)},
                                 {"threads", std::to_string(sample_threads)},
                                 {"format", sample_format},
                                 {"out", sample_out}},
                                sample_seed, sample_threads));
    } else if (*sdiag) {
      Sink sink(sdiag_out);
      run_sample_diagonals(sdiag_n, sdiag_count, sdiag_seed, sdiag_threads,
                           sink);
      sink.finish(make_manifest("sample-diagonals",
                                {{"n", std::to_string(sdiag_n)},
                                 {"count", std::to_string(sdiag_count)},
                                 {"seed", std::to_string(sdiag_seed)},
                                 {"threads", std::to_string(sdiag_threads)},
                                 {"out", sdiag_out}},
                                sdiag_seed, sdiag_threads));
    } else if (*coords) {
      Sink sink(coords_out);
      run_coords(coords_input, coords_direction, sink);
      sink.finish(make_manifest("coords",
                                {{"input", coords_input},
                                 {"direction", coords_direction},
                                 {"out", coords_out}},
                                0, 1));
    } else if (*tables) {
      Sink sink(tables_out);
      run_tables(tables_max_n, tables_kind, tables_route, sink);
      sink.finish(make_manifest("tables",
                                {{"max-n", std::to_string(tables_max_n)},
                                 {"kind", tables_kind},
                                 {"route", tables_route},
                                 {"out", tables_out}},
                                0, 1));
    } else if (*chords) {
      Sink sink(chords_out);
      run_chords(chords_n, chords_count, chords_seed, chords_threads,
                 chords_exact_limit, sink);
      sink.finish(
          make_manifest("chords",
                        {{"n", std::to_string(chords_n)},
                         {"count", std::to_string(chords_count)},
                         {"seed", std::to_string(chords_seed)},
                         {"threads", std::to_string(chords_threads)},
                         {"exact-limit", std::to_string(chords_exact_limit)},
                         {"out", chords_out}},
                        chords_seed, chords_threads));
    } else if (*scan) {
      Sink sink(scan_out);
      run_curvature_scan(scan_n_list, scan_count, scan_seed, scan_threads,
                         sink);
      sink.finish(make_manifest("curvature-scan",
                                {{"n-list", join_ints(scan_n_list)},
                                 {"count", std::to_string(scan_count)},
                                 {"seed", std::to_string(scan_seed)},
                                 {"threads", std::to_string(scan_threads)},
                                 {"out", scan_out}},
                                scan_seed, scan_threads));
    } else if (*rej) {
      Sink sink(rej_out);
      run_rejection_stats(rej_n_list, rej_count, rej_seed, rej_threads, sink);
      sink.finish(make_manifest("rejection-stats",
                                {{"n-list", join_ints(rej_n_list)},
                                 {"count", std::to_string(rej_count)},
                                 {"seed", std::to_string(rej_seed)},
                                 {"threads", std::to_string(rej_threads)},
                                 {"out", rej_out}},
                                rej_seed, rej_threads));
    } else if (*integ) {
      Sink sink(integ_out);
      run_integrate(integ_method, integ_tol, integ_points, integ_seed, sink);
      sink.finish(make_manifest("integrate-phi",
                                {{"method", integ_method},
                                 {"tol", format_double(integ_tol)},
                                 {"qmc-points", std::to_string(integ_points)},
                                 {"qmc-seed", std::to_string(integ_seed)},
                                 {"out", integ_out}},
                                integ_seed, 1));
    } else if (*fit) {
      Sink sink(fit_out);
      run_fit(fit_input, sink);
      sink.finish(make_manifest(
          "fit", {{"input", fit_input}, {"out", fit_out}}, 0, 1));
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace confpoly
