#include <CLI11.hpp>
#include <dioph/dioph.h>
#include <unistd.h>

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

struct Failure {
  int code;
  std::string message;
};

void check(dioph_status s, const std::string& what) {
  if (s == DIOPH_OK) return;
  std::string msg = what + ": " + dioph_status_string(s);
  const char* detail = dioph_last_error();
  if (detail && *detail) msg += " (" + std::string(detail) + ")";
  throw Failure{1, msg};
}

std::string take(char* s) {
  std::string out = s ? s : "";
  dioph_string_free(s);
  return out;
}

void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Failure{1, "cannot write " + path};
  f << text;
}

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw Failure{1, "cannot read " + path};
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

struct NumberDeleter {
  void operator()(dioph_number* p) const { dioph_number_free(p); }
};
struct SequenceDeleter {
  void operator()(dioph_sequence* p) const { dioph_sequence_free(p); }
};
using NumberPtr = std::unique_ptr<dioph_number, NumberDeleter>;
using SequencePtr = std::unique_ptr<dioph_sequence, SequenceDeleter>;

struct Config {
  std::string number_file;
  std::string preset;
  bool normalize = false;
  int n = 0;
  int m = 0;
  std::int64_t hmax = 0;
  std::int64_t hpool = 0;
  std::string qmin = "0";
  std::string qmax;
  unsigned steps = 100;
  unsigned long cap = 0;
  std::string window;
  std::size_t threshold = 3;
  std::size_t k0 = 1;
  std::size_t k = 0;
  std::uint64_t seed = 1;
  std::uint64_t samples = 0;
  unsigned jobs = 1;
  bool oracle = false;
  std::string out;
  std::string csv;
  std::string text;
  std::string n_range;
  std::string t_list = "auto";
  std::string h_coeffs;
};

NumberPtr load_number(const Config& c) {
  if (c.number_file.empty() == c.preset.empty())
    throw Failure{1, "give exactly one of --number FILE or --preset NAME"};
  dioph_number* raw = nullptr;
  if (!c.preset.empty())
    check(dioph_number_preset(c.preset.c_str(), &raw), "preset " + c.preset);
  else
    check(dioph_number_from_json(slurp(c.number_file).c_str(), &raw), "number " + c.number_file);
  NumberPtr num(raw);
  if (c.normalize) {
    dioph_number* norm = nullptr;
    check(dioph_number_normalized(num.get(), &norm), "normalize");
    num.reset(norm);
  }
  return num;
}

void require_positive(long long v, const char* flag) {
  if (v <= 0) throw Failure{1, std::string(flag) + " must be a positive integer"};
}

void progress_cb(int64_t h, void* user) {
  auto hmax = *static_cast<std::int64_t*>(user);
  if (h == hmax || h % 16 == 0) {
    std::fprintf(stderr, "\rheight %lld/%lld", static_cast<long long>(h), static_cast<long long>(hmax));
    if (h == hmax) std::fputc('\n', stderr);
    std::fflush(stderr);
  }
}

SequencePtr compute_sequence(const Config& c, const dioph_number* num, int n) {
  require_positive(n, "--n");
  require_positive(c.hmax, "--hmax");
  std::int64_t hmax = c.hmax;
  dioph_best_approx_options o{};
  o.cap = c.cap;
  o.jobs = c.jobs;
  o.oracle = c.oracle ? 1 : 0;
  if (isatty(STDERR_FILENO)) {
    o.progress = progress_cb;
    o.progress_user = &hmax;
  }
  dioph_sequence* raw = nullptr;
  check(dioph_best_approx(num, n, c.hmax, &o, &raw), "best-approx");
  return SequencePtr(raw);
}

// "a..b"; the upper end may be K (last admissible index), returned as 0
std::pair<long long, long long> parse_range(const std::string& s, const char* flag) {
  auto dots = s.find("..");
  try {
    if (dots == std::string::npos) {
      long long v = std::stoll(s);
      return {v, v};
    }
    long long a = std::stoll(s.substr(0, dots));
    std::string b = s.substr(dots + 2);
    return {a, b == "K" || b == "k" ? 0 : std::stoll(b)};
  } catch (const std::exception&) {
    throw Failure{1, std::string(flag) + " expects a..b, got '" + s + "'"};
  }
}

std::string cache_path(const Config& c, const dioph_number* num) {
  const char* dir = std::getenv("DIOPH_CACHE_DIR");
  if (!dir || !*dir) return {};
  std::string desc = take([&] {
    char* d = nullptr;
    check(dioph_number_describe(num, &d), "describe");
    return d;
  }());
  std::string key = desc + "|" + std::to_string(c.n) + "|" + std::to_string(c.hmax) + "|" +
                    std::to_string(c.cap) + (c.oracle ? "|oracle" : "");
  std::ostringstream name;
  name << std::hex << std::hash<std::string>{}(key);
  std::filesystem::create_directories(dir);
  return (std::filesystem::path(dir) / ("bestapprox-" + name.str())).string();
}

int run_best_approx(const Config& c) {
  NumberPtr num = load_number(c);
  std::string cache = cache_path(c, num.get());
  if (!cache.empty() && std::filesystem::exists(cache + ".jsonl") &&
      (c.csv.empty() || std::filesystem::exists(cache + ".csv"))) {
    emit(c.out, slurp(cache + ".jsonl"));
    if (!c.csv.empty()) emit(c.csv, slurp(cache + ".csv"));
    return 0;
  }
  SequencePtr seq = compute_sequence(c, num.get(), c.n);
  char* jl = nullptr;
  check(dioph_sequence_jsonl(seq.get(), &jl), "jsonl");
  std::string jsonl = take(jl);
  char* cs = nullptr;
  check(dioph_sequence_csv(seq.get(), &cs), "csv");
  std::string csv = take(cs);
  if (!cache.empty()) {
    std::ofstream(cache + ".jsonl", std::ios::binary) << jsonl;
    std::ofstream(cache + ".csv", std::ios::binary) << csv;
  }
  emit(c.out, jsonl);
  if (!c.csv.empty()) emit(c.csv, csv);
  return 0;
}

std::pair<std::size_t, std::size_t> window_of(const Config& c) {
  if (c.window.empty()) return {0, 0};
  auto [a, b] = parse_range(c.window, "--window");
  if (a < 0 || b < 0) throw Failure{1, "--window bounds must be nonnegative"};
  return {static_cast<std::size_t>(a), static_cast<std::size_t>(b)};
}

int run_span_scan(const Config& c) {
  NumberPtr num = load_number(c);
  SequencePtr seq = compute_sequence(c, num.get(), c.n);
  auto [lo, hi] = window_of(c);
  char *csv = nullptr, *json = nullptr;
  check(dioph_span_scan(seq.get(), lo, hi, c.threshold, &csv, &json), "span-scan");
  std::string j = take(json), cs = take(csv);
  emit(c.out, j);
  if (!c.csv.empty()) emit(c.csv, cs);
  return 0;
}

int run_lambda_det(const Config& c) {
  char* json = nullptr;
  if (!c.h_coeffs.empty()) {
    std::vector<int64_t> h;
    std::stringstream ss(c.h_coeffs);
    std::string item;
    try {
      while (std::getline(ss, item, ',')) h.push_back(std::stoll(item));
    } catch (const std::exception&) {
      throw Failure{1, "--coeffs expects comma-separated integers"};
    }
    check(dioph_lambda_det(c.n, h.data(), h.size(), &json), "lambda-det");
  } else {
    NumberPtr num = load_number(c);
    SequencePtr seq = compute_sequence(c, num.get(), c.n);
    require_positive(static_cast<long long>(c.k), "--k");
    check(dioph_lambda_det_sequence(seq.get(), c.k, &json), "lambda-det");
  }
  emit(c.out, take(json));
  return 0;
}

int run_ss_graph(const Config& c) {
  require_positive(c.m, "--m");
  require_positive(c.hpool, "--hpool");
  if (c.n > 0 && (c.m < c.n || c.m > 2 * c.n - 1))
    throw Failure{1, "--m must lie in [n, 2n-1] when --n is given"};
  if (c.qmax.empty()) throw Failure{1, "--qmax is required"};
  NumberPtr num = load_number(c);
  char *csv = nullptr, *manifest = nullptr;
  check(dioph_ss_graph(num.get(), c.m, c.qmin.c_str(), c.qmax.c_str(), c.steps, c.hpool, c.jobs,
                       &csv, &manifest),
        "ss-graph");
  std::string cs = take(csv), mf = take(manifest);
  if (!c.csv.empty()) {
    emit(c.csv, cs);
    emit(c.out, mf);
  } else {
    emit(c.out, cs);
    std::cerr << mf;
  }
  return 0;
}

int run_exponents(const Config& c) {
  NumberPtr num = load_number(c);
  SequencePtr seq = compute_sequence(c, num.get(), c.n);
  char* json = nullptr;
  check(dioph_exponents(seq.get(), c.k0, &json), "exponents");
  emit(c.out, take(json));
  return 0;
}

int run_bounds(const Config& c) {
  auto [lo, hi] = parse_range(c.n_range.empty() ? std::to_string(c.n) : c.n_range, "--n");
  if (hi == 0) throw Failure{1, "--n needs an explicit upper end"};
  std::vector<double> ts;
  if (c.t_list != "auto") {
    std::stringstream ss(c.t_list);
    std::string item;
    try {
      while (std::getline(ss, item, ',')) ts.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw Failure{1, "--t expects auto or a comma-separated list"};
    }
  }
  char* csv = nullptr;
  check(dioph_bounds_csv(static_cast<int>(lo), static_cast<int>(hi), ts.data(), ts.size(), &csv),
        "bounds");
  emit(c.out, take(csv));
  return 0;
}

int run_audit(const Config& c) {
  NumberPtr num = load_number(c);
  SequencePtr seq = compute_sequence(c, num.get(), c.n);
  SequencePtr lower;
  if (c.n >= 2) lower = compute_sequence(c, num.get(), c.n - 1);
  auto [lo, hi] = window_of(c);
  char *json = nullptr, *text = nullptr;
  int violation = 0;
  check(dioph_audit(seq.get(), lower.get(), lo, hi, c.threshold, c.k0, &json, &text, &violation),
        "audit");
  std::string j = take(json), t = take(text);
  emit(c.out, j);
  if (c.text.empty())
    std::cerr << t;
  else
    emit(c.text, t);
  return violation ? 2 : 0;
}

int run_gelfond(const Config& c) {
  require_positive(c.n, "--n");
  require_positive(c.hmax, "--hmax");
  char* json = nullptr;
  check(dioph_gelfond(c.n, c.hmax, c.samples, c.seed, &json), "gelfond");
  emit(c.out, take(json));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact best-approximation and exponent laboratory"};
  app.require_subcommand(1);
  Config c;

  auto number_opts = [&](CLI::App* s) {
    s->add_option("--number", c.number_file, "number descriptor JSON file");
    s->add_option("--preset", c.preset, "built-in number name");
    s->add_flag("--normalize", c.normalize, "shift zeta into [0,1)");
  };
  auto seq_opts = [&](CLI::App* s) {
    number_opts(s);
    s->add_option("--n", c.n, "polynomial degree bound")->required();
    s->add_option("--hmax", c.hmax, "height horizon")->required();
    s->add_option("--cap", c.cap, "precision cap in bits");
    s->add_option("--jobs", c.jobs, "worker threads");
    s->add_flag("--oracle", c.oracle, "unpruned enumeration");
  };

  auto* ba = app.add_subcommand("best-approx", "best approximation polynomial records");
  seq_opts(ba);
  ba->add_option("--out", c.out, "JSONL output (default stdout)");
  ba->add_option("--csv", c.csv, "CSV output");

  auto* ss = app.add_subcommand("span-scan", "span(m) ranks and psi estimates");
  seq_opts(ss);
  ss->add_option("--window", c.window, "k range a..b or a..K");
  ss->add_option("--threshold", c.threshold, "witnesses needed per m");
  ss->add_option("--out", c.out, "JSON summary (default stdout)");
  ss->add_option("--csv", c.csv, "CSV rows");

  auto* ld = app.add_subcommand("lambda-det", "Lambda_n matrix and Phi_n");
  number_opts(ld);
  ld->add_option("--n", c.n, "even degree")->required();
  ld->add_option("--coeffs", c.h_coeffs, "3n+3 comma-separated coefficients");
  ld->add_option("--hmax", c.hmax, "height horizon when reading from a sequence");
  ld->add_option("--k", c.k, "middle record index");
  ld->add_option("--cap", c.cap, "precision cap in bits");
  ld->add_option("--out", c.out, "JSON output");

  auto* sg = app.add_subcommand("ss-graph", "parametric successive minima");
  number_opts(sg);
  sg->add_option("--m", c.m, "dimension parameter")->required();
  sg->add_option("--n", c.n, "degree, checks m in [n, 2n-1]");
  sg->add_option("--hpool", c.hpool, "pool height")->required();
  sg->add_option("--qmin", c.qmin, "rational lower end of q");
  sg->add_option("--qmax", c.qmax, "rational upper end of q")->required();
  sg->add_option("--steps", c.steps, "number of q steps");
  sg->add_option("--jobs", c.jobs, "worker threads");
  sg->add_option("--out", c.out, "CSV, or the manifest when --csv is given");
  sg->add_option("--csv", c.csv, "CSV output");

  auto* ex = app.add_subcommand("exponents", "finite-horizon exponent estimates");
  seq_opts(ex);
  ex->add_option("--k0", c.k0, "first index for the uniform proxy");
  ex->add_option("--out", c.out, "JSON output");

  auto* bd = app.add_subcommand("bounds", "closed-form bound table");
  bd->add_option("--n", c.n_range, "range a..b")->required();
  bd->add_option("--t", c.t_list, "auto or comma-separated t values");
  bd->add_option("--out", c.out, "CSV output");

  auto* au = app.add_subcommand("audit", "inequality audit");
  seq_opts(au);
  au->add_option("--window", c.window, "k range a..b or a..K");
  au->add_option("--threshold", c.threshold, "witnesses needed per m");
  au->add_option("--k0", c.k0, "first index for the uniform proxy");
  au->add_option("--out", c.out, "JSON output");
  au->add_option("--text", c.text, "text report (default stderr)");

  auto* gf = app.add_subcommand("gelfond", "height product ratios");
  gf->add_option("--n", c.n, "degree bound")->required();
  gf->add_option("--hmax", c.hmax, "height bound")->required();
  gf->add_option("--samples", c.samples, "random pairs, 0 for exhaustive");
  gf->add_option("--seed", c.seed, "RNG seed");
  gf->add_option("--out", c.out, "JSON output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (ba->parsed()) return run_best_approx(c);
    if (ss->parsed()) return run_span_scan(c);
    if (ld->parsed()) return run_lambda_det(c);
    if (sg->parsed()) return run_ss_graph(c);
    if (ex->parsed()) return run_exponents(c);
    if (bd->parsed()) return run_bounds(c);
    if (au->parsed()) return run_audit(c);
    if (gf->parsed()) return run_gelfond(c);
  } catch (const Failure& f) {
    std::cerr << "dioph: " << f.message << '\n';
    return f.code;
  } catch (const std::exception& e) {
    std::cerr << "dioph: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
