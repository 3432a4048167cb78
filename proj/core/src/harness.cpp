#include "dppdisc/harness.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "dppdisc/errors.hpp"
#include "dppdisc/io.hpp"
#include "dppdisc/parallel.hpp"
#include "dppdisc/rng.hpp"
#include "dppdisc/sampler.hpp"
#include "dppdisc/special_functions.hpp"
#include "dppdisc/tails.hpp"
#include "dppdisc/variance.hpp"

namespace dppdisc {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double median(std::vector<double> v) {
  if (v.empty()) return kNaN;
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  return (v.size() % 2 == 1) ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

void append_double(std::string& out, double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  out += buf;
}

[[noreturn]] void bad_config(const std::string& what) {
  throw validation_error("config: " + what);
}

}  // namespace

ExperimentConfig parse_config_text(const std::string& json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    bad_config(std::string("malformed JSON: ") + e.what());
  }
  if (!j.is_object()) bad_config("top level must be an object");

  static const char* known[] = {"space", "ensemble", "levels", "radii",
                                "net_n", "reps",     "pairs",  "workers",
                                "seed",  "out",      "format"};
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool ok = false;
    for (const char* k : known) ok = ok || (it.key() == k);
    if (!ok) bad_config("unknown key '" + it.key() + "'");
  }
  for (const char* k : {"space", "ensemble", "levels", "radii", "seed"}) {
    if (!j.contains(k)) bad_config(std::string("missing required key '") + k + "'");
  }

  ExperimentConfig c;
  try {
    c.space_id = j.at("space").get<std::string>();
    c.ensemble = j.at("ensemble").get<std::string>();
    c.levels = j.at("levels").get<std::vector<int>>();
    c.radii = j.at("radii").get<std::vector<double>>();
    if (!j.at("seed").is_number_unsigned() && !j.at("seed").is_number_integer()) {
      bad_config("seed must be an integer");
    }
    c.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("net_n")) c.net_n = j.at("net_n").get<int>();
    if (j.contains("reps")) c.reps = j.at("reps").get<int>();
    if (j.contains("pairs")) c.pairs = j.at("pairs").get<std::int64_t>();
    if (j.contains("workers")) c.workers = j.at("workers").get<int>();
    if (j.contains("out")) c.out = j.at("out").get<std::string>();
    if (j.contains("format")) c.format = j.at("format").get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    bad_config(std::string("bad field type: ") + e.what());
  }

  const Space space = Space::from_id(c.space_id);
  if (c.ensemble != "harmonic" && c.ensemble != "projective") {
    bad_config("ensemble must be 'harmonic' or 'projective'");
  }
  if (c.ensemble == "projective" &&
      space.kind != SpaceKind::complex_projective) {
    bad_config("the projective ensemble lives on cp<d> spaces");
  }
  if (c.levels.empty()) bad_config("levels must be nonempty");
  for (std::size_t i = 0; i < c.levels.size(); ++i) {
    if (c.levels[i] < 0) bad_config("levels must be >= 0");
    if (i > 0 && c.levels[i] <= c.levels[i - 1]) {
      bad_config("levels must be strictly ascending");
    }
  }
  if (c.radii.empty()) bad_config("radii must be nonempty");
  for (double r : c.radii) {
    if (!(r > 0.0) || r > space.diameter) {
      bad_config("radii must lie in (0, diameter=" +
                 std::to_string(space.diameter) + "]");
    }
  }
  if (c.net_n < -1) bad_config("net_n must be -1 (auto), 0 (off) or >= 1");
  if (c.reps < 2) bad_config("reps must be >= 2");
  if (c.pairs < 2) bad_config("pairs must be >= 2");
  if (c.workers < 0) bad_config("workers must be >= 0");
  if (c.format != "csv" && c.format != "json") {
    bad_config("format must be 'csv' or 'json'");
  }
  return c;
}

ExperimentConfig parse_config_file(const std::string& path) {
  return parse_config_text(read_text_file(path));
}

std::vector<ScanRow> run_scaling(const ExperimentConfig& config) {
  const Space space = Space::from_id(config.space_id);
  std::vector<ScanRow> rows;
  rows.reserve(config.levels.size() * config.radii.size());

  for (std::size_t li = 0; li < config.levels.size(); ++li) {
    const int level = config.levels[li];
    const EnsembleKernel kernel =
        config.ensemble == "harmonic"
            ? EnsembleKernel::harmonic(space, level)
            : EnsembleKernel::projective(space.index, level);

    for (std::size_t ri = 0; ri < config.radii.size(); ++ri) {
      const double radius = config.radii[ri];
      const std::size_t row_index = li * config.radii.size() + ri;
      const std::uint64_t row_seed =
          derive_seed(config.seed, seed_tag::row, row_index);

      ScanRow row;
      row.space_id = config.space_id;
      row.ensemble = config.ensemble;
      row.level = level;
      row.n_points = kernel.trace;
      row.radius = radius;
      row.seed = row_seed;
      row.var_emp = row.var_emp_se = row.var_mc = row.var_mc_se = kNaN;
      row.var_bound = row.disc_net = row.disc_slack = row.threshold_t = kNaN;

      const Ball ball = make_ball(space, basis_point(space), radius);

      std::optional<BallNet> net;
      if (config.net_n != 0) {
        const int n = config.net_n > 0
                          ? config.net_n
                          : static_cast<int>(std::ceil(std::sqrt(
                                static_cast<double>(kernel.trace))));
        try {
          net = build_net(space, n, row_seed);
        } catch (const std::exception& e) {
          std::fprintf(stderr, "scan row %zu: net construction failed: %s\n",
                       row_index, e.what());
        }
      }

      try {
        std::vector<double> counts(static_cast<std::size_t>(config.reps));
        std::vector<double> sups(net ? counts.size() : 0);
        parallel_for(counts.size(), config.workers, [&](std::size_t rep) {
          SampleSet s = sample_dpp(
              kernel, derive_seed(row_seed, seed_tag::replicate, rep));
          const std::span<const Point> pts(s.points.data(), s.points.size());
          counts[rep] = count_in_ball(space, pts, ball);
          if (net) sups[rep] = discrepancy_sup(space, pts, *net, 1).net_sup;
        });
        double mean = 0.0;
        for (double c : counts) mean += c;
        mean /= static_cast<double>(counts.size());
        double var = 0.0;
        for (double c : counts) var += (c - mean) * (c - mean);
        var /= static_cast<double>(counts.size() - 1);
        row.var_emp = var;
        row.var_emp_se = var * std::sqrt(2.0 / (config.reps - 1));
        if (net) {
          row.disc_net = median(sups);
          row.disc_slack = net_slack(*net, kernel.trace);
        }
      } catch (const std::exception& e) {
        std::fprintf(stderr, "scan row %zu: replicates failed: %s\n", row_index,
                     e.what());
      }

      try {
        const PairEstimate mc =
            variance_exact_mc(kernel, ball, config.pairs, row_seed, config.workers);
        row.var_mc = mc.value;
        row.var_mc_se = mc.std_error;
      } catch (const std::exception& e) {
        std::fprintf(stderr, "scan row %zu: pair estimate failed: %s\n",
                     row_index, e.what());
      }

      try {
        row.var_bound =
            config.ensemble == "harmonic"
                ? variance_bound_harmonic(space, level, radius)
                : variance_bound_projective(space.index, level, radius);
      } catch (const std::exception& e) {
        std::fprintf(stderr, "scan row %zu: quadrature bound failed: %s\n",
                     row_index, e.what());
      }

      try {
        const double c_exp =
            net ? net->exponent_c() : static_cast<double>(space.dim_real) + 1.0;
        if (std::isfinite(row.var_emp)) {
          row.threshold_t =
              deviation_threshold(kernel.trace, 1.0, c_exp, row.var_emp);
        }
      } catch (const std::exception& e) {
        std::fprintf(stderr, "scan row %zu: threshold failed: %s\n", row_index,
                     e.what());
      }

      rows.push_back(std::move(row));
    }
  }
  return rows;
}

std::string emit_csv(std::span<const ScanRow> rows) {
  std::string out = kScanCsvHeader;
  out += '\n';
  for (const ScanRow& r : rows) {
    out += r.space_id;
    out += ',';
    out += r.ensemble;
    out += ',';
    out += std::to_string(r.level);
    out += ',';
    out += std::to_string(r.n_points);
    out += ',';
    append_double(out, r.radius);
    out += ',';
    append_double(out, r.var_emp);
    out += ',';
    append_double(out, r.var_emp_se);
    out += ',';
    append_double(out, r.var_mc);
    out += ',';
    append_double(out, r.var_mc_se);
    out += ',';
    append_double(out, r.var_bound);
    out += ',';
    append_double(out, r.disc_net);
    out += ',';
    append_double(out, r.disc_slack);
    out += ',';
    append_double(out, r.threshold_t);
    out += ',';
    out += std::to_string(r.seed);
    out += '\n';
  }
  return out;
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  for (;;) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
}

double parse_double_field(const std::string& s) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size() || s.empty()) {
    throw validation_error("bad numeric CSV field '" + s + "'");
  }
  return v;
}

}  // namespace

std::vector<ScanRow> parse_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw validation_error("empty CSV input");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kScanCsvHeader) {
    throw validation_error("unexpected CSV header '" + line + "'");
  }
  std::vector<ScanRow> rows;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const std::vector<std::string> f = split_csv_line(line);
    if (f.size() != 14) {
      throw validation_error("CSV row has " + std::to_string(f.size()) +
                             " fields, expected 14");
    }
    ScanRow r;
    r.space_id = f[0];
    r.ensemble = f[1];
    r.level = static_cast<int>(parse_double_field(f[2]));
    r.n_points = static_cast<std::int64_t>(parse_double_field(f[3]));
    r.radius = parse_double_field(f[4]);
    r.var_emp = parse_double_field(f[5]);
    r.var_emp_se = parse_double_field(f[6]);
    r.var_mc = parse_double_field(f[7]);
    r.var_mc_se = parse_double_field(f[8]);
    r.var_bound = parse_double_field(f[9]);
    r.disc_net = parse_double_field(f[10]);
    r.disc_slack = parse_double_field(f[11]);
    r.threshold_t = parse_double_field(f[12]);
    char* end = nullptr;
    r.seed = std::strtoull(f[13].c_str(), &end, 10);
    if (end != f[13].c_str() + f[13].size() || f[13].empty()) {
      throw validation_error("bad seed CSV field '" + f[13] + "'");
    }
    rows.push_back(std::move(r));
  }
  return rows;
}

ScalingFit fit_exponent(std::span<const std::pair<double, double>> xy,
                        double target, double tolerance) {
  if (xy.size() < 3) {
    throw validation_error("exponent fit needs at least 3 points");
  }
  if (!(tolerance >= 0.0)) throw validation_error("tolerance must be >= 0");
  double sx = 0.0, sy = 0.0;
  for (const auto& [x, y] : xy) {
    if (!(x > 0.0) || !(y > 0.0)) {
      throw validation_error("exponent fit needs positive coordinates");
    }
    sx += std::log(x);
    sy += std::log(y);
  }
  const double n = static_cast<double>(xy.size());
  const double mx = sx / n, my = sy / n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (const auto& [x, y] : xy) {
    const double dx = std::log(x) - mx;
    const double dy = std::log(y) - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  if (!(sxx > 0.0)) {
    throw validation_error("exponent fit needs at least two distinct x values");
  }
  ScalingFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  const double ss_res = syy - fit.slope * sxy;
  fit.r_squared = syy > 0.0 ? std::clamp(1.0 - ss_res / syy, 0.0, 1.0) : 1.0;
  fit.target = target;
  fit.tolerance = tolerance;
  fit.pass = std::abs(fit.slope - target) <= tolerance;
  return fit;
}

}  // namespace dppdisc
