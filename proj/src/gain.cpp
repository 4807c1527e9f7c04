#include "specsub/gain.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace specsub {

namespace {
// Keeps log ratios finite when a magnitude underflows to zero.
constexpr double kMagnitudeFloor = 1e-12;
}

GainVariant gain_variant_from_name(const std::string& name) {
    if (name == "basic") return GainVariant::BasicClamped;
    if (name == "floored") return GainVariant::Floored;
    if (name == "v441") return GainVariant::V441;
    if (name == "v442") return GainVariant::V442;
    if (name == "v443") return GainVariant::V443;
    if (name == "v444") return GainVariant::V444;
    if (name == "power") return GainVariant::PowerDomain;
    if (name == "full") return GainVariant::Full;
    throw ConfigError("unknown gain variant '" + name + "'");
}

std::string gain_variant_name(GainVariant variant) {
    switch (variant) {
        case GainVariant::BasicClamped: return "basic";
        case GainVariant::Floored: return "floored";
        case GainVariant::V441: return "v441";
        case GainVariant::V442: return "v442";
        case GainVariant::V443: return "v443";
        case GainVariant::V444: return "v444";
        case GainVariant::PowerDomain: return "power";
        case GainVariant::Full: return "full";
    }
    throw ConfigError("unknown gain variant enum value");
}

double alpha_of_snr(double snr_db) {
    const double a = AlphaSchedule::kAlphaMax - AlphaSchedule::kSlopePerDb * snr_db;
    return std::clamp(a, AlphaSchedule::kAlphaMin, AlphaSchedule::kAlphaMax);
}

DeltaTable::DeltaTable(std::vector<Band> bands) : bands_(std::move(bands)) {
    if (bands_.empty()) {
        throw ConfigError("delta table must contain at least one band");
    }
    if (bands_.front().edge_hz != 0.0) {
        throw ConfigError("delta table must start at 0 Hz");
    }
    for (std::size_t i = 0; i < bands_.size(); ++i) {
        if (!(bands_[i].factor > 0.0)) {
            throw ConfigError("delta factors must be positive");
        }
        if (i > 0 && !(bands_[i].edge_hz > bands_[i - 1].edge_hz)) {
            throw ConfigError("delta band edges must be strictly increasing");
        }
    }
}

DeltaTable DeltaTable::paper_default() {
    return DeltaTable({{0.0, 1.0}, {1000.0, 2.5}, {2000.0, 1.5}});
}

DeltaTable DeltaTable::parse(const std::string& text) {
    std::vector<Band> bands;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const std::size_t colon = item.find(':');
        if (colon == std::string::npos) {
            throw ConfigError("--delta entries must look like edge:factor, got '" +
                              item + "'");
        }
        try {
            bands.push_back({std::stod(item.substr(0, colon)),
                             std::stod(item.substr(colon + 1))});
        } catch (const std::exception&) {
            throw ConfigError("--delta entry '" + item + "' is not numeric");
        }
    }
    return DeltaTable(std::move(bands));
}

double DeltaTable::factor_at_hz(double frequency_hz) const {
    if (!(frequency_hz >= 0.0)) {
        throw ConfigError("delta lookup requires a nonnegative frequency");
    }
    double factor = bands_.front().factor;
    for (const Band& band : bands_) {
        if (frequency_hz >= band.edge_hz) {
            factor = band.factor;
        } else {
            break;
        }
    }
    return factor;
}

double delta_of_bin(const DeltaTable& table, std::size_t bin, double sample_rate,
                    std::size_t frame_len) {
    if (bin > frame_len / 2) {
        throw ConfigError("delta_of_bin: bin " + std::to_string(bin) +
                          " is beyond the half spectrum");
    }
    const double f = static_cast<double>(bin) * sample_rate /
                     static_cast<double>(frame_len);
    return table.factor_at_hz(f);
}

std::vector<double> frame_snr_db(std::span<const double> signal_mag,
                                 std::span<const double> noise_mag,
                                 SnrGranularity granularity) {
    if (signal_mag.size() != noise_mag.size()) {
        throw ConfigError("frame_snr_db: bin count mismatch");
    }
    std::vector<double> snr(signal_mag.size());
    if (granularity == SnrGranularity::Bin) {
        for (std::size_t k = 0; k < snr.size(); ++k) {
            const double x = std::max(signal_mag[k], kMagnitudeFloor);
            const double n = std::max(noise_mag[k], kMagnitudeFloor);
            snr[k] = 20.0 * std::log10(x / n);
        }
    } else {
        double sig_power = 0.0;
        double noise_power = 0.0;
        for (std::size_t k = 0; k < snr.size(); ++k) {
            sig_power += signal_mag[k] * signal_mag[k];
            noise_power += noise_mag[k] * noise_mag[k];
        }
        sig_power = std::max(sig_power, kMagnitudeFloor * kMagnitudeFloor);
        noise_power = std::max(noise_power, kMagnitudeFloor * kMagnitudeFloor);
        std::fill(snr.begin(), snr.end(), 10.0 * std::log10(sig_power / noise_power));
    }
    return snr;
}

void GainParams::validate() const {
    if (!(lambda >= 0.0 && lambda <= 1.0)) {
        throw ConfigError("lambda must lie in [0, 1]");
    }
    if (alpha.alpha_fixed && !(*alpha.alpha_fixed >= 0.0)) {
        throw ConfigError("alpha must be >= 0");
    }
    if (!(sample_rate > 0.0)) {
        throw ConfigError("sample_rate must be positive");
    }
}

std::vector<double> compute_gain(const GainParams& params,
                                 std::span<const double> x_mag,
                                 std::span<const double> p_mag,
                                 std::span<const double> n_mag) {
    params.validate();
    const std::size_t bins = x_mag.size();
    if (p_mag.size() != bins || n_mag.size() != bins) {
        throw ConfigError("compute_gain: bin count mismatch");
    }
    const bool snr_adaptive =
        params.variant == GainVariant::Full ||
        params.alpha.mode == AlphaSchedule::Mode::SnrAdaptive;
    const bool delta_on = params.variant == GainVariant::Full || params.delta_enabled;
    const double alpha_fixed = params.alpha.resolve_fixed(params.smoothing_on);
    const double lambda = params.lambda;
    // Half spectrum of a frame of length 2*(bins-1).
    const std::size_t frame_len = 2 * (bins - 1);

    std::vector<double> snr;
    if (snr_adaptive) {
        snr = frame_snr_db(x_mag, n_mag, params.snr_granularity);
    }

    std::vector<double> gains(bins);
    for (std::size_t k = 0; k < bins; ++k) {
        const double x = x_mag[k];
        const double p = p_mag[k];
        const double n = n_mag[k];
        if (!(x >= 0.0 && p >= 0.0 && n >= 0.0)) {
            throw ConfigError("compute_gain: magnitudes must be nonnegative");
        }
        double a = snr_adaptive ? alpha_of_snr(snr[k]) : alpha_fixed;
        if (delta_on) {
            a *= delta_of_bin(params.delta, k, params.sample_rate, frame_len);
        }

        double g = lambda;
        if (n == 0.0) {
            g = 1.0;  // nothing to subtract
        } else {
            const bool power_denominator = params.variant == GainVariant::V443 ||
                                           params.variant == GainVariant::V444;
            const double denom = power_denominator ? p : x;
            if (denom == 0.0) {
                g = lambda;  // silent bin, keep the masking floor
            } else {
                const double sub = 1.0 - a * n / denom;
                switch (params.variant) {
                    case GainVariant::BasicClamped:
                        g = std::max(0.0, sub);
                        break;
                    case GainVariant::Floored:
                    case GainVariant::Full:
                    case GainVariant::V444:
                        g = std::max(lambda, sub);
                        break;
                    case GainVariant::V441:
                        g = std::max(lambda * n / denom, sub);
                        break;
                    case GainVariant::V442:
                        g = std::max(lambda * p / denom, sub);
                        break;
                    case GainVariant::V443:
                        g = std::max(lambda * n / denom, sub);
                        break;
                    case GainVariant::PowerDomain: {
                        const double r = a * n / denom;
                        g = std::max(lambda, std::sqrt(std::max(0.0, 1.0 - r * r)));
                        break;
                    }
                }
            }
        }
        gains[k] = std::min(g, 1.0);
    }
    return gains;
}

Spectrum apply_gain(const Spectrum& spectrum, std::span<const double> gains) {
    const std::size_t n = spectrum.size();
    if (n == 0 || n % 2 != 0) {
        throw ConfigError("apply_gain: spectrum length must be even and nonzero");
    }
    if (gains.size() != n / 2 + 1) {
        throw ConfigError("apply_gain: expected " + std::to_string(n / 2 + 1) +
                          " gains, got " + std::to_string(gains.size()));
    }
    Spectrum out(n);
    for (std::size_t k = 0; k <= n / 2; ++k) {
        out[k] = spectrum[k] * gains[k];
    }
    for (std::size_t k = n / 2 + 1; k < n; ++k) {
        out[k] = std::conj(out[n - k]);
    }
    return out;
}

}  // namespace specsub
