#include "specsub/dsp.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace specsub {

bool is_power_of_two(std::size_t n) {
    return n != 0 && (n & (n - 1)) == 0;
}

namespace {

void require_power_of_two(std::size_t n, const char* who) {
    if (!is_power_of_two(n)) {
        throw ConfigError(std::string(who) + ": length " + std::to_string(n) +
                          " is not a power of two");
    }
}

// Standard iterative radix-2 butterfly pass over bit-reversed data.
void fft_in_place(Spectrum& a, bool inverse) {
    const std::size_t n = a.size();
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) {
            j ^= bit;
        }
        j ^= bit;
        if (i < j) {
            std::swap(a[i], a[j]);
        }
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double angle = (inverse ? 2.0 : -2.0) * kPi / static_cast<double>(len);
        const Complex w_len(std::cos(angle), std::sin(angle));
        for (std::size_t base = 0; base < n; base += len) {
            Complex w(1.0, 0.0);
            for (std::size_t k = 0; k < len / 2; ++k) {
                const Complex u = a[base + k];
                const Complex v = a[base + k + len / 2] * w;
                a[base + k] = u + v;
                a[base + k + len / 2] = u - v;
                w *= w_len;
            }
        }
    }
    if (inverse) {
        const double scale = 1.0 / static_cast<double>(n);
        for (Complex& x : a) {
            x *= scale;
        }
    }
}

}  // namespace

Spectrum fft_forward(const Spectrum& frame) {
    require_power_of_two(frame.size(), "fft_forward");
    Spectrum out = frame;
    fft_in_place(out, false);
    return out;
}

Spectrum fft_forward(std::span<const double> real_frame) {
    require_power_of_two(real_frame.size(), "fft_forward");
    Spectrum out(real_frame.size());
    for (std::size_t i = 0; i < real_frame.size(); ++i) {
        out[i] = Complex(real_frame[i], 0.0);
    }
    fft_in_place(out, false);
    return out;
}

Spectrum fft_inverse(const Spectrum& spectrum) {
    require_power_of_two(spectrum.size(), "fft_inverse");
    Spectrum out = spectrum;
    fft_in_place(out, true);
    return out;
}

Spectrum dft_oracle(const Spectrum& frame) {
    const std::size_t n = frame.size();
    if (n == 0) {
        throw ConfigError("dft_oracle: empty frame");
    }
    Spectrum out(n);
    for (std::size_t k = 0; k < n; ++k) {
        Complex acc(0.0, 0.0);
        for (std::size_t t = 0; t < n; ++t) {
            // Reduce k*t mod n before forming the angle so large products do
            // not lose precision in the trig argument.
            const std::size_t phase_index = (k * t) % n;
            const double angle = -2.0 * kPi * static_cast<double>(phase_index) /
                                 static_cast<double>(n);
            acc += frame[t] * Complex(std::cos(angle), std::sin(angle));
        }
        out[k] = acc;
    }
    return out;
}

std::vector<double> half_spectrum_magnitudes(const Spectrum& spectrum) {
    const std::size_t n = spectrum.size();
    if (n == 0 || n % 2 != 0) {
        throw ConfigError("half_spectrum_magnitudes: even nonzero length required");
    }
    std::vector<double> mags(n / 2 + 1);
    for (std::size_t k = 0; k <= n / 2; ++k) {
        mags[k] = std::abs(spectrum[k]);
    }
    return mags;
}

WindowKind window_kind_from_name(const std::string& name) {
    if (name == "sqrt-hamming-paper") return WindowKind::SqrtHammingPaper;
    if (name == "sqrt-hanning") return WindowKind::SqrtHanning;
    if (name == "sqrt-gaussian") return WindowKind::SqrtGaussian;
    if (name == "sqrt-bh3" || name == "sqrt-blackman-harris-3") {
        return WindowKind::SqrtBlackmanHarris3;
    }
    throw ConfigError("unknown window kind '" + name + "'");
}

std::string window_kind_name(WindowKind kind) {
    switch (kind) {
        case WindowKind::SqrtHammingPaper: return "sqrt-hamming-paper";
        case WindowKind::SqrtHanning: return "sqrt-hanning";
        case WindowKind::SqrtGaussian: return "sqrt-gaussian";
        case WindowKind::SqrtBlackmanHarris3: return "sqrt-bh3";
    }
    throw ConfigError("unknown window kind enum value");
}

std::vector<double> make_window(WindowKind kind, std::size_t length) {
    if (length < 8) {
        throw ConfigError("make_window: length must be >= 8, got " +
                          std::to_string(length));
    }
    const double n = static_cast<double>(length);
    std::vector<double> w(length);
    switch (kind) {
        case WindowKind::SqrtHammingPaper:
            for (std::size_t t = 0; t < length; ++t) {
                const double theta = (2.0 * static_cast<double>(t) + 1.0) * kPi / n;
                w[t] = std::sqrt(1.0 - 0.85185 * std::cos(theta));
            }
            break;
        case WindowKind::SqrtHanning:
            for (std::size_t t = 0; t < length; ++t) {
                const double theta = (2.0 * static_cast<double>(t) + 1.0) * kPi / n;
                w[t] = std::sqrt(0.5 - 0.5 * std::cos(theta));
            }
            break;
        case WindowKind::SqrtGaussian:
            // Gaussian with shape parameter 2.5 (sigma = (N-1)/5), centred on
            // the same half-sample grid as the cosine windows.
            for (std::size_t t = 0; t < length; ++t) {
                const double x = (static_cast<double>(t) - (n - 1.0) / 2.0) /
                                 ((n - 1.0) / 2.0);
                w[t] = std::sqrt(std::exp(-0.5 * (2.5 * x) * (2.5 * x)));
            }
            break;
        case WindowKind::SqrtBlackmanHarris3:
            for (std::size_t t = 0; t < length; ++t) {
                const double theta = (2.0 * static_cast<double>(t) + 1.0) * kPi / n;
                const double b = 0.42323 - 0.49755 * std::cos(theta) +
                                 0.07922 * std::cos(2.0 * theta);
                w[t] = std::sqrt(b);
            }
            break;
        default:
            throw ConfigError("make_window: unknown window kind");
    }
    return w;
}

double cola_constant(std::span<const double> window, std::size_t oversampling) {
    const std::size_t n = window.size();
    if (oversampling == 0 || n % oversampling != 0) {
        throw ConfigError("cola_constant: oversampling must divide the window length");
    }
    const std::size_t hop = n / oversampling;
    double lo = 0.0;
    double hi = 0.0;
    double total = 0.0;
    for (std::size_t t = 0; t < hop; ++t) {
        double s = 0.0;
        for (std::size_t m = 0; m < oversampling; ++m) {
            const double v = window[t + m * hop];
            s += v * v;
        }
        if (t == 0) {
            lo = hi = s;
        } else {
            lo = std::min(lo, s);
            hi = std::max(hi, s);
        }
        total += s;
    }
    const double mean = total / static_cast<double>(hop);
    if (mean <= 0.0 || (hi - lo) > 1e-6 * mean) {
        throw ColaError("window fails the constant-overlap-add condition at oversampling " +
                        std::to_string(oversampling));
    }
    return mean;
}

double cola_constant(WindowKind kind, std::size_t length, std::size_t oversampling) {
    const std::vector<double> w = make_window(kind, length);
    return cola_constant(w, oversampling);
}

}  // namespace specsub
