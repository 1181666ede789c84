#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "ambieb/ambiguity.hpp"
#include "ambieb/covariance.hpp"
#include "ambieb/shrinkage.hpp"
#include "ambieb/signal.hpp"
#include "ambieb/tfr.hpp"

namespace ambieb {

struct PipelineConfig {
    double delta = 0.5;
    Correction correction = Correction::clip;
    double alpha = 0.5;
    std::string kernel = "delta";
    bool demean = true;
    bool compute_tfr = true;
    FitOptions fit;
};

// Every intermediate of one analysis run.
struct PipelineResult {
    AnalyticSeries z;
    AmbiguityGrid raw_af;
    AmbiguityGrid normalized_af;
    FitResult fit;
    bool converged = true;
    bool zero_signal = false;
    ThresholdField theta;
    AmbiguityGrid af_eb;
    LagTimeMoments moments_eb;
    HermitianCovariance cov_uncorrected;
    HermitianCovariance cov_eb;
    std::optional<TFRGrid> tfr;
    double retained_fraction = 0.0;
};

// Shrunk moments only: emaf, normalize, fit, threshold, invert. No eigensolve.
struct MomentEstimate {
    FitResult fit;
    bool converged = true;
    LagTimeMoments moments;
    double retained_fraction = 0.0;
};

MomentEstimate estimate_moments(const AnalyticSeries& z, double delta = 0.5, const FitOptions& opts = {});

PipelineResult run_pipeline(const TimeSeries& x, const PipelineConfig& cfg = {});

// Writes emaf.mat, psi.txt, theta.mat, af_eb.mat, moments_eb.mat, cov_eb.mat,
// tfr.mat, qq_re.txt, qq_im.txt and summary.txt into outdir.
void write_outputs(const PipelineResult& r, const PipelineConfig& cfg, const std::string& outdir);

}  // namespace ambieb
