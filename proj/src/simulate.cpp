#include "specsub/simulate.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "specsub/dsp.hpp"
#include "specsub/gain.hpp"
#include "specsub/noise_estimator.hpp"

namespace specsub {

double GaussianSource::uniform01() {
    // 53 random mantissa bits -> uniform in (0, 1].
    const std::uint64_t bits = engine_() >> 11;
    return (static_cast<double>(bits) + 1.0) * 0x1.0p-53;
}

double GaussianSource::next() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    const double u1 = uniform01();
    const double u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * kPi * u2;
    spare_ = r * std::sin(theta);
    have_spare_ = true;
    return r * std::cos(theta);
}

MusicalNoiseSimResult run_musical_noise_sim(const MusicalNoiseSimConfig& config) {
    if (config.frames == 0) {
        throw ConfigError("simulate: frame count must be positive");
    }
    if (!is_power_of_two(config.frame_len) || config.frame_len < 8) {
        throw ConfigError("simulate: frame length must be a power of two >= 8");
    }
    if (!(config.alpha >= 0.0)) {
        throw ConfigError("simulate: alpha must be >= 0");
    }
    if (!(config.lambda >= 0.0 && config.lambda <= 1.0)) {
        throw ConfigError("simulate: lambda must lie in [0, 1]");
    }

    const std::size_t bins = config.frame_len / 2 + 1;
    GaussianSource rng(config.seed);
    MinBufferBank bank(bins, config.segment_len_frames);

    GainParams params;
    params.variant = GainVariant::Floored;
    params.lambda = config.lambda;
    params.alpha.mode = AlphaSchedule::Mode::Fixed;
    params.alpha.alpha_fixed = config.alpha;

    MusicalNoiseSimResult result;
    result.per_frame.reserve(config.frames);
    std::vector<double> mags(bins);
    std::vector<double> processed(bins);

    for (std::size_t f = 0; f < config.frames; ++f) {
        for (double& m : mags) {
            m = std::abs(rng.next());
        }
        bank.update(mags);
        const std::vector<double>& noise = bank.noise_estimate();
        const std::vector<double> gains = compute_gain(params, mags, mags, noise);
        for (std::size_t k = 0; k < bins; ++k) {
            processed[k] = gains[k] * mags[k];
        }
        const MusicalNoiseFrameStats stats = musical_noise_frame_stats(processed);
        result.mean_peak_count += static_cast<double>(stats.peaks_above_3x_median);
        result.mean_median_magnitude += stats.median_magnitude;
        result.mean_kurtosis += stats.kurtosis;
        result.per_frame.push_back(stats);
    }
    const double count = static_cast<double>(config.frames);
    result.mean_peak_count /= count;
    result.mean_median_magnitude /= count;
    result.mean_kurtosis /= count;
    return result;
}

void write_sim_csv(const MusicalNoiseSimResult& result, const std::string& path) {
    std::ofstream out(path);
    if (!out) {
        throw FormatError("cannot create '" + path + "'");
    }
    out << "frame,kurtosis,peaks_above_3x_median,median_magnitude\n";
    char buf[128];
    for (std::size_t f = 0; f < result.per_frame.size(); ++f) {
        const MusicalNoiseFrameStats& s = result.per_frame[f];
        std::snprintf(buf, sizeof(buf), "%zu,%.6f,%zu,%.6f\n", f, s.kurtosis,
                      s.peaks_above_3x_median, s.median_magnitude);
        out << buf;
    }
    if (!out) {
        throw FormatError("failed writing '" + path + "'");
    }
}

}  // namespace specsub
