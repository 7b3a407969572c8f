#pragma once

#include <cmath>
#include <deque>
#include <span>
#include <utility>

#include "dca/core.hpp"
#include "dca/error.hpp"

namespace dca {

/// Raw host telemetry as captured by a sensor or a trace: pre-counted rates,
/// not packets. pamp derives from the ICMP error rate, danger from the
/// outbound packet rate, safe from the stability of the packet rate.
struct RawTelemetry {
    double t = 0;  // seconds, monotone non-negative
    double icmp_errors_per_sec = 0;
    double packets_sent_per_sec = 0;

    void validate() const {
        if (!std::isfinite(t) || t < 0)
            throw ValidationError("telemetry timestamp must be finite and >= 0");
        for (double r : {icmp_errors_per_sec, packets_sent_per_sec})
            if (!std::isfinite(r) || r < 0)
                throw ValidationError("telemetry rate must be finite and >= 0");
    }
};

struct NormalizationConfig {
    double pamp_cap = 10;    // ICMP errors/sec mapping to pamp = 100
    double danger_cap = 500; // packets/sec mapping to danger = 100
    double safe_cap = 50;    // |rate of change| mapping safe to 0
    double ma_window = 2.0;  // seconds of packet-rate history in the moving average
    double tick = 1.0;       // signal emission period, seconds

    void validate() const {
        for (double v : {pamp_cap, danger_cap, safe_cap, ma_window, tick})
            if (!std::isfinite(v) || v <= 0)
                throw ValidationError("normalization parameters must be positive");
    }
};

/// Mean of the (t, rate) samples with t in (t_now - window, t_now]; 0 when
/// the window is empty. Samples must be time-ordered.
inline double moving_average(std::span<const std::pair<double, double>> samples,
                             double window, double t_now) {
    if (window <= 0) throw ValidationError("moving-average window must be > 0");
    double sum = 0;
    std::size_t n = 0;
    double prev_t = -1;
    for (const auto& [t, rate] : samples) {
        if (t < prev_t) throw ValidationError("moving-average samples out of order");
        prev_t = t;
        if (t > t_now - window && t <= t_now) {
            sum += rate;
            ++n;
        }
    }
    return n == 0 ? 0.0 : sum / static_cast<double>(n);
}

inline double rate_of_change(double ma_prev, double ma_now, double dt) {
    if (!(dt > 0)) throw ValidationError("rate_of_change requires dt > 0");
    return (ma_now - ma_prev) / dt;
}

/// Raw telemetry -> normalized concentrations. pamp and danger scale
/// linearly up to their caps; safe is the inverse magnitude of the packet
/// rate of change, so a stable rate reads as maximally safe.
inline SignalVector normalize(const RawTelemetry& raw, double roc,
                              const NormalizationConfig& cfg) {
    cfg.validate();
    raw.validate();
    if (!std::isfinite(roc)) throw ValidationError("rate of change must be finite");
    SignalVector s;
    s.pamp = 100.0 * std::min(raw.icmp_errors_per_sec / cfg.pamp_cap, 1.0);
    s.danger = 100.0 * std::min(raw.packets_sent_per_sec / cfg.danger_cap, 1.0);
    s.safe = 100.0 * std::max(0.0, 1.0 - std::abs(roc) / cfg.safe_cap);
    return s;
}

/// Accumulating tissue-client state: ingests raw telemetry as it arrives and
/// emits one normalized SignalVector per tick. pamp/danger read the latest
/// telemetry; safe reads the rate of change of the windowed moving average
/// between consecutive ticks (0 at the first tick).
class SignalPipeline {
public:
    explicit SignalPipeline(NormalizationConfig cfg = {}) : cfg_(cfg) { cfg_.validate(); }

    const NormalizationConfig& config() const { return cfg_; }

    void ingest(const RawTelemetry& raw) {
        raw.validate();
        if (raw.t < last_ingest_t_)
            throw ValidationError("telemetry timestamps must be non-decreasing");
        last_ingest_t_ = raw.t;
        latest_ = raw;
        window_.emplace_back(raw.t, raw.packets_sent_per_sec);
    }

    /// Emits the signal for tick time t_now and advances the pipeline's
    /// moving-average state. Tick times must be strictly increasing.
    SignalVector sample(double t_now) {
        if (has_prev_ma_ && t_now <= prev_tick_t_)
            throw ValidationError("tick times must be strictly increasing");
        while (!window_.empty() && window_.front().first <= t_now - cfg_.ma_window)
            window_.pop_front();
        double ma = moving_average({window_.begin(), window_.end()}, cfg_.ma_window, t_now);
        double roc = has_prev_ma_ ? rate_of_change(prev_ma_, ma, t_now - prev_tick_t_) : 0.0;
        prev_ma_ = ma;
        prev_tick_t_ = t_now;
        has_prev_ma_ = true;
        return normalize(latest_, roc, cfg_);
    }

private:
    NormalizationConfig cfg_;
    std::deque<std::pair<double, double>> window_;  // (t, packets_sent_per_sec)
    RawTelemetry latest_;  // zero rates until the first ingest
    double last_ingest_t_ = 0;
    double prev_ma_ = 0;
    double prev_tick_t_ = 0;
    bool has_prev_ma_ = false;
};

}  // namespace dca
