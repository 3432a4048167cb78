#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dppdisc/discrepancy.hpp"
#include "dppdisc/harness.hpp"
#include "dppdisc/sampler.hpp"
#include "dppdisc/tails.hpp"
#include "dppdisc/variance.hpp"

namespace dppdisc {

// Replicated draws, serialized with full double precision so files round-trip
// bit-exactly. Field order is fixed; rereading and rewriting a file is a
// byte-identical operation.
std::string samples_to_json(const EnsembleKernel& kernel,
                            std::span<const SampleSet> replicates,
                            std::uint64_t master_seed);

struct SampleFile {
  EnsembleKernel kernel;
  std::vector<SampleSet> replicates;
  std::uint64_t master_seed = 0;
};

SampleFile samples_from_json(const std::string& text);

std::string discrepancy_to_json(const BallNet& net,
                                std::span<const DiscrepancyResult> replicates);

struct VarianceReport {
  EnsembleKernel kernel;
  double radius = 0.0;
  MomentEstimate empirical;
  PairEstimate exact_mc;
  double quadrature_bound = 0.0;
  std::optional<RegionIntegrals> regions;
};

std::string variance_report_to_json(const VarianceReport& report);

std::string tails_to_csv(std::span<const TailRow> rows);

std::string fit_to_json(const ScalingFit& fit);

std::string scan_rows_to_json(std::span<const ScanRow> rows);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace dppdisc
