#include "specsub/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace specsub {

EnhancerConfig EnhancerConfig::preset(const std::string& name) {
    EnhancerConfig cfg;
    if (name == "basic") {
        return cfg;
    }
    if (name == "paper-final" || name == "all-on") {
        cfg.window = WindowKind::SqrtHanning;
        cfg.gain = GainVariant::V443;
        cfg.alpha.mode = AlphaSchedule::Mode::SnrAdaptive;
        cfg.delta_enabled = true;
        cfg.smoothing = SmoothingMode::Power;
        cfg.noise_smoothing = true;
        cfg.residual_reduction = (name == "all-on");
        return cfg;
    }
    throw ConfigError("unknown preset '" + name + "'");
}

std::size_t EnhancerConfig::segment_len_frames() const {
    // 2.5 s of 8 ms increments is 312.5 frames; truncation gives the
    // documented 312-frame segment.
    const double frames = mmse_segment_seconds * sample_rate /
                          static_cast<double>(increment());
    return std::max<std::size_t>(1, static_cast<std::size_t>(frames));
}

double EnhancerConfig::resolved_tau_ms() const {
    if (tau_ms > 0.0) {
        return tau_ms;
    }
    return smoothing == SmoothingMode::Power ? 25.0 : 30.0;
}

void EnhancerConfig::validate() const {
    frame_config().validate();
    if (frame_len < 8) {
        throw ConfigError("frame_len must be >= 8");
    }
    if (!(lambda >= 0.0 && lambda <= 1.0)) {
        throw ConfigError("lambda must lie in [0, 1]");
    }
    if (alpha.alpha_fixed && !(*alpha.alpha_fixed >= 0.0)) {
        throw ConfigError("alpha must be >= 0");
    }
    if (!(mmse_segment_seconds > 0.0)) {
        throw ConfigError("mmse_segment_seconds must be positive");
    }
    if (tau_ms < 0.0) {
        throw ConfigError("tau-ms must be >= 0");
    }
    if (!(noise_tau_ms > 0.0)) {
        throw ConfigError("noise smoothing time constant must be positive");
    }
}

std::vector<double> residual_reduce(std::span<const double> prev_mag,
                                    std::span<const double> mid_mag,
                                    std::span<const double> next_mag) {
    if (prev_mag.size() != mid_mag.size() || next_mag.size() != mid_mag.size()) {
        throw ConfigError("residual_reduce: bin count mismatch");
    }
    std::vector<double> out(mid_mag.size());
    for (std::size_t k = 0; k < out.size(); ++k) {
        out[k] = std::min({prev_mag[k], mid_mag[k], next_mag[k]});
    }
    return out;
}

namespace {

EnhancerConfig validated(EnhancerConfig cfg) {
    cfg.validate();
    return cfg;
}

GainParams make_gain_params(const EnhancerConfig& cfg) {
    GainParams params;
    params.variant = cfg.gain;
    params.lambda = cfg.lambda;
    params.alpha = cfg.alpha;
    params.delta_enabled = cfg.delta_enabled;
    params.delta = cfg.delta;
    params.snr_granularity = cfg.snr_granularity;
    params.sample_rate = cfg.sample_rate;
    params.smoothing_on = cfg.smoothing != SmoothingMode::Off;
    return params;
}

}  // namespace

Enhancer::Enhancer(EnhancerConfig config)
    : config_(validated(std::move(config))),
      window_(make_window(config_.window, config_.frame_len)),
      ola_(config_.frame_config(), window_,
           cola_constant(window_, config_.oversampling)),
      magnitude_smoother_(config_.smoothing,
                          config_.smoothing == SmoothingMode::Off
                              ? 0.0
                              : pole_from_tau(config_.resolved_tau_ms() / 1000.0,
                                              config_.frame_config().increment_seconds()),
                          config_.bin_count()),
      bank_(config_.bin_count(), config_.segment_len_frames(),
            config_.noise_smoothing
                ? pole_from_tau(config_.noise_tau_ms / 1000.0,
                                config_.frame_config().increment_seconds())
                : 0.0),
      gain_params_(make_gain_params(config_)),
      warmup_increments_(config_.oversampling - 1 +
                         (config_.residual_reduction ? 1 : 0)) {
    pending_input_.reserve(config_.increment());
}

std::vector<double> Enhancer::run_frame(std::span<const double> samples) {
    const std::size_t n = config_.frame_len;

    std::vector<double> frame = ola_.analysis_next(samples);
    Spectrum spectrum = fft_forward(frame);
    std::vector<double> mags = half_spectrum_magnitudes(spectrum);

    // The smoothed magnitude is what the minimum tracker sees (and what the
    // P-denominator variants divide by); the raw magnitude drives the SNR.
    std::vector<double> smoothed = magnitude_smoother_.smooth(mags);
    bank_.update(smoothed);
    const std::vector<double>& noise = bank_.noise_estimate();

    std::vector<double> gains = compute_gain(gain_params_, mags, smoothed, noise);
    Spectrum shaped = apply_gain(spectrum, gains);

    Spectrum to_synthesize;
    if (config_.residual_reduction) {
        to_synthesize = deliver_with_residual(
            ProcessedFrame{std::move(shaped), half_spectrum_magnitudes(shaped)});
    } else {
        to_synthesize = std::move(shaped);
    }

    Spectrum time = fft_inverse(to_synthesize);
    std::vector<double> out_frame(n);
    for (std::size_t t = 0; t < n; ++t) {
        out_frame[t] = time[t].real();  // imaginary residue is finite-precision noise
    }
    return ola_.synthesis_add(out_frame);
}

Spectrum Enhancer::deliver_with_residual(ProcessedFrame frame) {
    residual_ring_.push_back(std::move(frame));
    if (residual_ring_.size() == 1) {
        // No previous frame to deliver yet; one increment of lookahead.
        return Spectrum(config_.frame_len, Complex(0.0, 0.0));
    }
    if (residual_ring_.size() == 2) {
        // Middle frame has no left neighbour; pass it through unmodified.
        return residual_ring_[0].spectrum;
    }
    const ProcessedFrame& prev = residual_ring_[0];
    const ProcessedFrame& mid = residual_ring_[1];
    const ProcessedFrame& next = residual_ring_[2];
    std::vector<double> floor_mag =
        residual_reduce(prev.magnitudes, mid.magnitudes, next.magnitudes);
    // Re-scale the middle frame onto the minimum magnitudes; the ratio is a
    // real gain in [0, 1], so phase and symmetry carry over.
    std::vector<double> ratio(floor_mag.size());
    for (std::size_t k = 0; k < ratio.size(); ++k) {
        ratio[k] = mid.magnitudes[k] > 0.0 ? floor_mag[k] / mid.magnitudes[k] : 0.0;
    }
    Spectrum delivered = apply_gain(mid.spectrum, ratio);
    residual_ring_.pop_front();
    return delivered;
}

IncrementResult Enhancer::process_increment(std::span<const double> samples) {
    if (flushed_) {
        throw ConfigError("process_increment called after flush");
    }
    const std::size_t inc = config_.increment();
    if (samples.size() != inc) {
        throw ConfigError("process_increment: expected " + std::to_string(inc) +
                          " samples, got " + std::to_string(samples.size()));
    }
    if (!pending_input_.empty()) {
        throw ConfigError("process_increment: partial input pending; use process()");
    }
    samples_in_ += inc;
    std::vector<double> out = run_frame(samples);
    const std::size_t index = increments_processed_++;
    if (index < warmup_increments_) {
        return std::nullopt;
    }
    samples_out_ += out.size();
    return out;
}

std::vector<double> Enhancer::process(std::span<const double> samples) {
    if (flushed_) {
        throw ConfigError("process called after flush");
    }
    const std::size_t inc = config_.increment();
    std::vector<double> out;
    samples_in_ += samples.size();
    std::size_t pos = 0;
    while (pos < samples.size()) {
        const std::size_t want = inc - pending_input_.size();
        const std::size_t take = std::min(want, samples.size() - pos);
        pending_input_.insert(pending_input_.end(), samples.begin() + pos,
                              samples.begin() + pos + take);
        pos += take;
        if (pending_input_.size() < inc) {
            break;
        }
        std::vector<double> emitted = run_frame(pending_input_);
        pending_input_.clear();
        const std::size_t index = increments_processed_++;
        if (index >= warmup_increments_) {
            out.insert(out.end(), emitted.begin(), emitted.end());
        }
    }
    samples_out_ += out.size();
    return out;
}

std::vector<double> Enhancer::flush() {
    if (flushed_) {
        return {};
    }
    flushed_ = true;
    const std::size_t inc = config_.increment();
    std::vector<double> out;

    if (!pending_input_.empty()) {
        std::vector<double> padded = pending_input_;
        padded.resize(inc, 0.0);
        pending_input_.clear();
        std::vector<double> emitted = run_frame(padded);
        if (increments_processed_++ >= warmup_increments_) {
            out.insert(out.end(), emitted.begin(), emitted.end());
        }
    }

    const std::vector<double> zeros(inc, 0.0);
    for (std::size_t d = 0; d < warmup_increments_; ++d) {
        std::vector<double> emitted = run_frame(zeros);
        if (increments_processed_++ >= warmup_increments_) {
            out.insert(out.end(), emitted.begin(), emitted.end());
        }
    }

    // Drop the padding so output length matches input length exactly.
    const std::size_t total = samples_out_ + out.size();
    if (total > samples_in_) {
        out.resize(out.size() - (total - samples_in_));
    }
    samples_out_ += out.size();
    return out;
}

}  // namespace specsub
