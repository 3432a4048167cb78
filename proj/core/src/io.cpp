#include "dppdisc/io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

#include <json.hpp>

#include "dppdisc/errors.hpp"

namespace dppdisc {

using ordered_json = nlohmann::ordered_json;

namespace {

ordered_json kernel_header(const EnsembleKernel& kernel) {
  ordered_json j;
  j["space"] = kernel.space.id;
  j["ensemble"] = kernel.ensemble_name();
  j["level"] = kernel.level;
  j["trace"] = kernel.trace;
  return j;
}

EnsembleKernel kernel_from_header(const ordered_json& j) {
  const Space space = Space::from_id(j.at("space").get<std::string>());
  const std::string ensemble = j.at("ensemble").get<std::string>();
  const int level = j.at("level").get<int>();
  EnsembleKernel kernel;
  if (ensemble == "harmonic") {
    kernel = EnsembleKernel::harmonic(space, level);
  } else if (ensemble == "projective") {
    if (space.kind != SpaceKind::complex_projective) {
      throw validation_error("projective ensemble requires a cp<d> space");
    }
    kernel = EnsembleKernel::projective(space.index, level);
  } else {
    throw validation_error("unknown ensemble '" + ensemble + "'");
  }
  if (j.contains("trace") &&
      j.at("trace").get<std::int64_t>() != kernel.trace) {
    throw validation_error("file trace does not match the kernel");
  }
  return kernel;
}

}  // namespace

std::string samples_to_json(const EnsembleKernel& kernel,
                            std::span<const SampleSet> replicates,
                            std::uint64_t master_seed) {
  ordered_json j;
  j["schema"] = "dppdisc-samples-v1";
  ordered_json hdr = kernel_header(kernel);
  for (auto it = hdr.begin(); it != hdr.end(); ++it) j[it.key()] = it.value();
  j["seed"] = master_seed;
  ordered_json reps = ordered_json::array();
  for (const SampleSet& s : replicates) {
    ordered_json r;
    r["seed"] = s.seed;
    r["proposals"] = s.stats.proposals;
    r["rejected"] = s.stats.rejected;
    r["degenerate_retries"] = s.stats.degenerate_retries;
    r["refactorizations"] = s.stats.refactorizations;
    ordered_json pts = ordered_json::array();
    for (const Point& p : s.points) {
      ordered_json coords = ordered_json::array();
      for (Eigen::Index i = 0; i < p.coords.size(); ++i) {
        coords.push_back(p.coords[i]);
      }
      pts.push_back(std::move(coords));
    }
    r["points"] = std::move(pts);
    reps.push_back(std::move(r));
  }
  j["replicates"] = std::move(reps);
  return j.dump(2) + "\n";
}

SampleFile samples_from_json(const std::string& text) {
  if (text.empty()) throw validation_error("empty sample file");
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw validation_error(std::string("malformed sample JSON: ") + e.what());
  }
  try {
    if (j.at("schema").get<std::string>() != "dppdisc-samples-v1") {
      throw validation_error("unknown sample schema");
    }
    SampleFile file;
    file.kernel = kernel_from_header(j);
    file.master_seed = j.at("seed").get<std::uint64_t>();
    for (const auto& r : j.at("replicates")) {
      SampleSet s;
      s.kernel = file.kernel;
      s.seed = r.at("seed").get<std::uint64_t>();
      if (r.contains("proposals")) {
        s.stats.proposals = r.at("proposals").get<std::uint64_t>();
        s.stats.rejected = r.at("rejected").get<std::uint64_t>();
        s.stats.degenerate_retries =
            r.at("degenerate_retries").get<std::uint64_t>();
        s.stats.refactorizations = r.at("refactorizations").get<std::uint64_t>();
      }
      for (const auto& pt : r.at("points")) {
        Eigen::VectorXd v(pt.size());
        for (std::size_t i = 0; i < pt.size(); ++i) {
          v[static_cast<Eigen::Index>(i)] = pt[i].get<double>();
        }
        s.points.push_back(make_point(file.kernel.space, v));
      }
      if (static_cast<std::int64_t>(s.points.size()) != file.kernel.trace) {
        throw validation_error("replicate has " +
                               std::to_string(s.points.size()) +
                               " points, expected " +
                               std::to_string(file.kernel.trace));
      }
      file.replicates.push_back(std::move(s));
    }
    return file;
  } catch (const nlohmann::json::exception& e) {
    throw validation_error(std::string("bad sample file field: ") + e.what());
  }
}

std::string discrepancy_to_json(const BallNet& net,
                                std::span<const DiscrepancyResult> replicates) {
  ordered_json j;
  j["schema"] = "dppdisc-discrepancy-v1";
  j["space"] = net.space.id;
  ordered_json nj;
  nj["n"] = net.n;
  nj["epsilon"] = net.epsilon;
  nj["delta"] = net.delta;
  nj["centers"] = net.centers.size();
  nj["radius_count"] = net.radius_count;
  nj["cardinality"] = net.cardinality();
  nj["maximality_declared"] = net.maximality_declared;
  nj["proposal_cap_hit"] = net.proposal_cap_hit;
  nj["covering_max_gap"] = net.covering_max_gap;
  nj["ahlfors_c1"] = net.ahlfors_c1;
  nj["ahlfors_c2"] = net.ahlfors_c2;
  nj["observed_center_constant"] = net.observed_center_constant;
  nj["exponent_c"] = net.exponent_c();
  nj["seed"] = net.seed;
  j["net"] = std::move(nj);
  ordered_json reps = ordered_json::array();
  std::vector<double> sups, certs;
  for (const DiscrepancyResult& d : replicates) {
    ordered_json r;
    r["net_sup"] = d.net_sup;
    r["slack"] = d.slack;
    r["certified_upper"] = d.certified_upper;
    r["argmax_center"] = d.argmax_center;
    r["argmax_radius"] = d.argmax_radius;
    r["argmax_count"] = d.argmax_count;
    reps.push_back(std::move(r));
    sups.push_back(d.net_sup);
    certs.push_back(d.certified_upper);
  }
  j["replicates"] = std::move(reps);
  auto med = [](std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t m = v.size() / 2;
    return v.size() % 2 == 1 ? v[m] : 0.5 * (v[m - 1] + v[m]);
  };
  ordered_json summary;
  if (!sups.empty()) {
    summary["median_net_sup"] = med(sups);
    summary["median_certified_upper"] = med(certs);
  }
  j["summary"] = std::move(summary);
  return j.dump(2) + "\n";
}

std::string variance_report_to_json(const VarianceReport& report) {
  ordered_json j;
  j["schema"] = "dppdisc-variance-v1";
  ordered_json hdr = kernel_header(report.kernel);
  for (auto it = hdr.begin(); it != hdr.end(); ++it) j[it.key()] = it.value();
  j["radius"] = report.radius;
  ordered_json emp;
  emp["mean"] = report.empirical.mean;
  emp["variance"] = report.empirical.variance;
  emp["std_error"] = report.empirical.std_error;
  emp["reps"] = report.empirical.reps;
  j["empirical"] = std::move(emp);
  ordered_json mc;
  mc["value"] = report.exact_mc.value;
  mc["std_error"] = report.exact_mc.std_error;
  mc["pairs"] = report.exact_mc.pairs;
  j["exact_mc"] = std::move(mc);
  j["quadrature_bound"] = report.quadrature_bound;
  if (report.regions) {
    ordered_json rg;
    rg["r1"] = report.regions->r1;
    rg["r2"] = report.regions->r2;
    rg["r3"] = report.regions->r3;
    rg["r4"] = report.regions->r4;
    rg["undivided"] = report.regions->undivided;
    rg["valid_subdivision"] = report.regions->valid_subdivision;
    j["regions"] = std::move(rg);
  }
  return j.dump(2) + "\n";
}

std::string tails_to_csv(std::span<const TailRow> rows) {
  std::string out = "t,frequency,bound\n";
  char buf[140];
  for (const TailRow& r : rows) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", r.t, r.frequency,
                  r.bound);
    out += buf;
  }
  return out;
}

std::string fit_to_json(const ScalingFit& fit) {
  ordered_json j;
  j["schema"] = "dppdisc-fit-v1";
  j["slope"] = fit.slope;
  j["intercept"] = fit.intercept;
  j["r_squared"] = fit.r_squared;
  j["target"] = fit.target;
  j["tolerance"] = fit.tolerance;
  j["pass"] = fit.pass;
  return j.dump(2) + "\n";
}

std::string scan_rows_to_json(std::span<const ScanRow> rows) {
  ordered_json arr = ordered_json::array();
  for (const ScanRow& r : rows) {
    ordered_json j;
    j["space"] = r.space_id;
    j["ensemble"] = r.ensemble;
    j["L"] = r.level;
    j["N"] = r.n_points;
    j["radius"] = r.radius;
    j["var_emp"] = r.var_emp;
    j["var_emp_se"] = r.var_emp_se;
    j["var_mc"] = r.var_mc;
    j["var_mc_se"] = r.var_mc_se;
    j["var_bound"] = r.var_bound;
    j["disc_net"] = r.disc_net;
    j["disc_slack"] = r.disc_slack;
    j["threshold_t"] = r.threshold_t;
    j["seed"] = r.seed;
    arr.push_back(std::move(j));
  }
  return arr.dump(2) + "\n";
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw validation_error("cannot open '" + path + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw validation_error("failed reading '" + path + "'");
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw validation_error("cannot open '" + path + "' for writing");
  out << text;
  out.flush();
  if (!out) throw validation_error("failed writing '" + path + "'");
}

}  // namespace dppdisc
