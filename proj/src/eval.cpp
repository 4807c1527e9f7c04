#include "specsub/eval.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>

namespace specsub {

double global_snr_db(std::span<const double> clean, std::span<const double> test) {
    if (clean.size() != test.size()) {
        throw ConfigError("global_snr_db: lengths differ (" +
                          std::to_string(clean.size()) + " vs " +
                          std::to_string(test.size()) + ")");
    }
    double clean_power = 0.0;
    double residual_power = 0.0;
    for (std::size_t i = 0; i < clean.size(); ++i) {
        clean_power += clean[i] * clean[i];
        const double d = test[i] - clean[i];
        residual_power += d * d;
    }
    if (clean_power <= 0.0) {
        throw std::domain_error("global_snr_db: clean signal has zero power");
    }
    if (residual_power == 0.0) {
        return std::numeric_limits<double>::infinity();
    }
    return 10.0 * std::log10(clean_power / residual_power);
}

double global_snr_db_aligned(std::span<const double> clean,
                             std::span<const double> test,
                             std::size_t latency_samples) {
    if (test.size() <= latency_samples) {
        throw ConfigError("global_snr_db_aligned: latency exceeds test length");
    }
    const std::size_t overlap = std::min(clean.size(), test.size() - latency_samples);
    return global_snr_db(clean.subspan(0, overlap),
                         test.subspan(latency_samples, overlap));
}

SpectrogramMatrix spectrogram(std::span<const double> audio, std::size_t frame_len,
                              std::size_t hop, std::span<const double> window,
                              double sample_rate) {
    if (audio.size() < frame_len) {
        throw ConfigError("spectrogram: input shorter than one frame");
    }
    if (hop == 0) {
        throw ConfigError("spectrogram: hop must be positive");
    }
    if (window.size() != frame_len) {
        throw ConfigError("spectrogram: window length mismatch");
    }
    SpectrogramMatrix m;
    m.frame_len = frame_len;
    m.hop = hop;
    m.sample_rate = sample_rate;
    m.bins = frame_len / 2 + 1;

    const std::size_t rows = (audio.size() - frame_len) / hop + 1;
    m.rows_db.reserve(rows);
    std::vector<double> frame(frame_len);
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t t = 0; t < frame_len; ++t) {
            frame[t] = audio[r * hop + t] * window[t];
        }
        const Spectrum spec = fft_forward(frame);
        std::vector<double> row(m.bins);
        for (std::size_t k = 0; k < m.bins; ++k) {
            row[k] = 20.0 * std::log10(std::abs(spec[k]) + kSpectrogramEpsilon);
        }
        m.rows_db.push_back(std::move(row));
    }
    return m;
}

void write_spectrogram_csv(const SpectrogramMatrix& m, const std::string& path) {
    std::ofstream out(path);
    if (!out) {
        throw FormatError("cannot create '" + path + "'");
    }
    out << "time_s";
    char buf[64];
    for (std::size_t k = 0; k < m.bins; ++k) {
        std::snprintf(buf, sizeof(buf), ",%g", m.bin_frequency_hz(k));
        out << buf;
    }
    out << "\n";
    for (std::size_t r = 0; r < m.rows_db.size(); ++r) {
        std::snprintf(buf, sizeof(buf), "%.6f", m.row_time_seconds(r));
        out << buf;
        for (double v : m.rows_db[r]) {
            std::snprintf(buf, sizeof(buf), ",%.6f", v);
            out << buf;
        }
        out << "\n";
    }
    if (!out) {
        throw FormatError("failed writing '" + path + "'");
    }
}

void write_spectrogram_pgm(const SpectrogramMatrix& m, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw FormatError("cannot create '" + path + "'");
    }
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (const auto& row : m.rows_db) {
        for (double v : row) {
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
    }
    out << "P5\n" << m.bins << " " << m.rows_db.size() << "\n255\n";
    const double span = hi - lo;
    for (const auto& row : m.rows_db) {
        for (double v : row) {
            const double unit = span > 0.0 ? (v - lo) / span : 0.0;
            const int pixel = static_cast<int>(std::lround(unit * 255.0));
            out.put(static_cast<char>(std::clamp(pixel, 0, 255)));
        }
    }
    if (!out) {
        throw FormatError("failed writing '" + path + "'");
    }
}

MusicalNoiseFrameStats musical_noise_frame_stats(std::span<const double> magnitudes) {
    MusicalNoiseFrameStats stats;
    const std::size_t n = magnitudes.size();
    if (n == 0) {
        return stats;
    }

    std::vector<double> sorted(magnitudes.begin(), magnitudes.end());
    std::sort(sorted.begin(), sorted.end());
    stats.median_magnitude = (n % 2 == 1)
                                 ? sorted[n / 2]
                                 : 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);

    const double threshold = 3.0 * stats.median_magnitude;
    for (double v : magnitudes) {
        if (v > threshold) {
            ++stats.peaks_above_3x_median;
        }
    }

    double mean = 0.0;
    for (double v : magnitudes) {
        mean += v;
    }
    mean /= static_cast<double>(n);
    double m2 = 0.0;
    double m4 = 0.0;
    for (double v : magnitudes) {
        const double d = v - mean;
        m2 += d * d;
        m4 += d * d * d * d;
    }
    m2 /= static_cast<double>(n);
    m4 /= static_cast<double>(n);
    stats.kurtosis = m2 > 0.0 ? m4 / (m2 * m2) : 0.0;
    return stats;
}

}  // namespace specsub
