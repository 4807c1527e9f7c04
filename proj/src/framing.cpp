#include "specsub/framing.hpp"

#include <algorithm>

#include "specsub/dsp.hpp"

namespace specsub {

void FrameConfig::validate() const {
    if (!is_power_of_two(frame_len)) {
        throw ConfigError("frame_len must be a power of two, got " +
                          std::to_string(frame_len));
    }
    if (oversampling < 2) {
        throw ConfigError("oversampling must be >= 2, got " +
                          std::to_string(oversampling));
    }
    if (frame_len % oversampling != 0) {
        throw ConfigError("oversampling must divide frame_len");
    }
    if (!(sample_rate > 0.0)) {
        throw ConfigError("sample_rate must be positive");
    }
}

std::size_t pipeline_latency(const FrameConfig& config, bool residual_reduction) {
    config.validate();
    const std::size_t base = config.frame_len - config.increment();
    return base + (residual_reduction ? config.increment() : 0);
}

OverlapAdd::OverlapAdd(const FrameConfig& config, std::vector<double> window,
                       double cola_constant)
    : config_(config),
      window_(std::move(window)),
      inv_cola_(0.0),
      input_ring_(config.frame_len, 0.0),
      output_acc_(config.frame_len, 0.0) {
    config_.validate();
    if (window_.size() != config_.frame_len) {
        throw ConfigError("window length does not match frame_len");
    }
    if (!(cola_constant > 0.0)) {
        throw ConfigError("COLA constant must be positive");
    }
    inv_cola_ = 1.0 / cola_constant;
}

std::vector<double> OverlapAdd::analysis_next(std::span<const double> new_samples) {
    const std::size_t n = config_.frame_len;
    const std::size_t inc = config_.increment();
    if (new_samples.size() != inc) {
        throw ConfigError("analysis_next: expected " + std::to_string(inc) +
                          " samples, got " + std::to_string(new_samples.size()));
    }
    std::copy(input_ring_.begin() + static_cast<std::ptrdiff_t>(inc),
              input_ring_.end(), input_ring_.begin());
    std::copy(new_samples.begin(), new_samples.end(),
              input_ring_.end() - static_cast<std::ptrdiff_t>(inc));

    std::vector<double> frame(n);
    for (std::size_t t = 0; t < n; ++t) {
        frame[t] = window_[t] * input_ring_[t];
    }
    return frame;
}

std::vector<double> OverlapAdd::synthesis_add(std::span<const double> processed_frame) {
    const std::size_t n = config_.frame_len;
    const std::size_t inc = config_.increment();
    if (processed_frame.size() != n) {
        throw ConfigError("synthesis_add: expected " + std::to_string(n) +
                          " samples, got " + std::to_string(processed_frame.size()));
    }
    for (std::size_t t = 0; t < n; ++t) {
        output_acc_[t] += window_[t] * processed_frame[t];
    }
    std::vector<double> out(inc);
    for (std::size_t s = 0; s < inc; ++s) {
        out[s] = output_acc_[s] * inv_cola_;
    }
    std::copy(output_acc_.begin() + static_cast<std::ptrdiff_t>(inc),
              output_acc_.end(), output_acc_.begin());
    std::fill(output_acc_.end() - static_cast<std::ptrdiff_t>(inc),
              output_acc_.end(), 0.0);
    ++frames_emitted_;
    return out;
}

}  // namespace specsub
