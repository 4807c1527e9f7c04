#include "specsub/noise_estimator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace specsub {

SmoothingMode smoothing_mode_from_name(const std::string& name) {
    if (name == "off") return SmoothingMode::Off;
    if (name == "mag" || name == "magnitude") return SmoothingMode::Magnitude;
    if (name == "power") return SmoothingMode::Power;
    throw ConfigError("unknown smoothing mode '" + name + "'");
}

std::string smoothing_mode_name(SmoothingMode mode) {
    switch (mode) {
        case SmoothingMode::Off: return "off";
        case SmoothingMode::Magnitude: return "mag";
        case SmoothingMode::Power: return "power";
    }
    throw ConfigError("unknown smoothing mode enum value");
}

double pole_from_tau(double tau_seconds, double frame_period_seconds) {
    if (!(tau_seconds > 0.0)) {
        throw ConfigError("smoothing time constant must be positive");
    }
    if (!(frame_period_seconds > 0.0)) {
        throw ConfigError("frame period must be positive");
    }
    return std::exp(-frame_period_seconds / tau_seconds);
}

Smoother::Smoother(SmoothingMode mode, double k_pole, std::size_t bin_count)
    : mode_(mode), k_pole_(k_pole), state_(bin_count, 0.0) {
    if (!(k_pole >= 0.0 && k_pole < 1.0)) {
        throw ConfigError("smoothing pole must lie in [0, 1)");
    }
}

std::vector<double> Smoother::smooth(std::span<const double> magnitudes) {
    if (magnitudes.size() != state_.size()) {
        throw ConfigError("smooth: bin count mismatch");
    }
    std::vector<double> out(magnitudes.size());
    switch (mode_) {
        case SmoothingMode::Off:
            std::copy(magnitudes.begin(), magnitudes.end(), out.begin());
            break;
        case SmoothingMode::Magnitude:
            for (std::size_t k = 0; k < out.size(); ++k) {
                state_[k] = (1.0 - k_pole_) * magnitudes[k] + k_pole_ * state_[k];
                out[k] = state_[k];
            }
            break;
        case SmoothingMode::Power:
            for (std::size_t k = 0; k < out.size(); ++k) {
                const double p = magnitudes[k] * magnitudes[k];
                state_[k] = (1.0 - k_pole_) * p + k_pole_ * state_[k];
                out[k] = std::sqrt(state_[k]);
            }
            break;
    }
    return out;
}

void Smoother::reset() {
    std::fill(state_.begin(), state_.end(), 0.0);
}

MinBufferBank::MinBufferBank(std::size_t bin_count, std::size_t segment_len_frames,
                             double noise_smoothing_pole)
    : bin_count_(bin_count),
      segment_len_(segment_len_frames),
      noise_smoother_(SmoothingMode::Magnitude, noise_smoothing_pole, bin_count),
      estimate_(bin_count, 0.0) {
    if (bin_count_ == 0) {
        throw ConfigError("MinBufferBank: bin count must be positive");
    }
    if (segment_len_ == 0) {
        throw ConfigError("MinBufferBank: segment length must be positive");
    }
    for (auto& buf : buffers_) {
        buf.assign(bin_count_, std::numeric_limits<double>::infinity());
    }
}

void MinBufferBank::update(std::span<const double> frame_magnitudes) {
    if (frame_magnitudes.size() != bin_count_) {
        throw ConfigError("MinBufferBank::update: bin count mismatch");
    }
    for (double m : frame_magnitudes) {
        if (!(m >= 0.0)) {
            throw ConfigError("MinBufferBank::update: magnitudes must be nonnegative");
        }
    }
    for (std::size_t k = 0; k < bin_count_; ++k) {
        buffers_[0][k] = std::min(frame_magnitudes[k], buffers_[0][k]);
    }
    ++frames_in_segment_;
    ++total_updates_;
    if (frames_in_segment_ == segment_len_) {
        rotate(frame_magnitudes);
    }
    recompute_estimate();
}

void MinBufferBank::rotate(std::span<const double> current_frame_magnitudes) {
    buffers_[3] = std::move(buffers_[2]);
    buffers_[2] = std::move(buffers_[1]);
    buffers_[1] = std::move(buffers_[0]);
    buffers_[0].assign(current_frame_magnitudes.begin(), current_frame_magnitudes.end());
    frames_in_segment_ = 0;
    ++rotations_;
}

void MinBufferBank::recompute_estimate() {
    std::vector<double> raw(bin_count_);
    for (std::size_t k = 0; k < bin_count_; ++k) {
        raw[k] = std::min(std::min(buffers_[0][k], buffers_[1][k]),
                          std::min(buffers_[2][k], buffers_[3][k]));
    }
    estimate_ = noise_smoother_.smooth(raw);
}

const std::vector<double>& MinBufferBank::noise_estimate() const {
    if (total_updates_ == 0) {
        throw ConfigError("noise_estimate queried before any update");
    }
    return estimate_;
}

std::size_t MinBufferBank::effective_memory_frames() const {
    // M2..M4 hold up to three full segments; M1 holds the rotation frame plus
    // the updates accumulated since.
    const std::size_t reach = 3 * segment_len_ + 1 + frames_in_segment_;
    return std::min(reach, total_updates_);
}

void MinBufferBank::reset() {
    for (auto& buf : buffers_) {
        buf.assign(bin_count_, std::numeric_limits<double>::infinity());
    }
    frames_in_segment_ = 0;
    rotations_ = 0;
    total_updates_ = 0;
    noise_smoother_.reset();
    std::fill(estimate_.begin(), estimate_.end(), 0.0);
}

}  // namespace specsub
