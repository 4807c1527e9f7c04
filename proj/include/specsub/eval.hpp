#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "specsub/dsp.hpp"
#include "specsub/errors.hpp"

namespace specsub {

// 10 log10(sum clean^2 / sum (test - clean)^2). Equal lengths required.
// Returns +infinity when the residual is exactly zero.
double global_snr_db(std::span<const double> clean, std::span<const double> test);

// Shifts `test` back by latency_samples (test[p + latency] lines up with
// clean[p]) and measures the SNR over the overlap.
double global_snr_db_aligned(std::span<const double> clean,
                             std::span<const double> test,
                             std::size_t latency_samples);

// Magnitude STFT in dB: rows are frames, columns the N/2+1 half-spectrum
// bins, values 20 log10(|X| + 1e-10).
struct SpectrogramMatrix {
    std::size_t frame_len = 0;
    std::size_t hop = 0;
    double sample_rate = 0.0;
    std::size_t bins = 0;
    std::vector<std::vector<double>> rows_db;

    double bin_frequency_hz(std::size_t bin) const {
        return static_cast<double>(bin) * sample_rate / static_cast<double>(frame_len);
    }
    double row_time_seconds(std::size_t row) const {
        return static_cast<double>(row * hop) / sample_rate;
    }
};

inline constexpr double kSpectrogramEpsilon = 1e-10;

SpectrogramMatrix spectrogram(std::span<const double> audio, std::size_t frame_len,
                              std::size_t hop, std::span<const double> window,
                              double sample_rate);

// CSV: header `time_s,<f0>,<f1>,...`, then one row per frame with the frame
// start time and dB values, six decimal places.
void write_spectrogram_csv(const SpectrogramMatrix& m, const std::string& path);

// Binary PGM (P5), width = bins, height = frames, [min, max] dB mapped
// linearly onto [0, 255].
void write_spectrogram_pgm(const SpectrogramMatrix& m, const std::string& path);

// Per-frame statistics that make musical noise visible: isolated surviving
// peaks raise the count of bins above 3x the frame median, and the spectral
// kurtosis tracks how peaky the frame is.
struct MusicalNoiseFrameStats {
    double kurtosis = 0.0;
    std::size_t peaks_above_3x_median = 0;
    double median_magnitude = 0.0;
};

MusicalNoiseFrameStats musical_noise_frame_stats(std::span<const double> magnitudes);

}  // namespace specsub
