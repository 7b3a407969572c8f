#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dca/core.hpp"
#include "dca/encoding.hpp"
#include "dca/error.hpp"
#include "dca/rng.hpp"

namespace dca {

struct ThresholdRange {
    double min = 100;
    double max = 300;
};

struct TissueConfig {
    std::size_t population_size = 100;
    std::size_t antigen_fanout = 1;  // cells sampling each antigen event
    ThresholdRange threshold_range;
    WeightMatrix weights;
    std::uint64_t rng_seed = 0;
    bool flush_at_end = false;        // force-migrate leftover cells in finalize
    std::size_t antigen_capacity = 50;

    void validate() const {
        if (population_size < 1) throw ConfigError("population_size must be >= 1");
        if (antigen_fanout < 1 || antigen_fanout > population_size)
            throw ConfigError("antigen_fanout must be in [1, population_size]");
        if (!(threshold_range.min > 0) || !(threshold_range.min <= threshold_range.max))
            throw ConfigError("threshold range must satisfy 0 < min <= max");
        if (antigen_capacity < 1) throw ConfigError("antigen_capacity must be >= 1");
        weights.validate();
    }

    /// Canonical textual form, the basis of the metadata fingerprint.
    std::string canonical_text() const {
        std::string s;
        s += "population=" + std::to_string(population_size);
        s += " fanout=" + std::to_string(antigen_fanout);
        s += " threshold=" + canon_num(threshold_range.min) + "," + canon_num(threshold_range.max);
        s += " weights=";
        for (const WeightRow* row : {&weights.csm, &weights.semi, &weights.mature})
            for (double v : {row->pamp, row->danger, row->safe}) s += canon_num(v) + ",";
        s += " seed=" + std::to_string(rng_seed);
        s += " flush=" + std::string(flush_at_end ? "1" : "0");
        s += " capacity=" + std::to_string(antigen_capacity);
        return s;
    }
};

struct RunMetadata {
    std::uint64_t seed = 0;
    std::uint64_t config_hash = 0;
    std::size_t signal_ticks = 0;
    std::size_t antigen_events = 0;
    std::size_t antigen_sampled = 0;  // antigen_events * fanout
    std::size_t antigen_evicted = 0;  // lost to store-capacity eviction
};

/// The tissue server: a fixed-size population of immature cells fed by one
/// totally ordered stream of signal ticks and antigen events. Matured cells
/// append their presentations to a log and are replaced immediately, so
/// sampling capacity stays constant.
///
/// Deterministic replay contract (fixed across implementations): a master
/// SplitMix64 is seeded with rng_seed and split twice, first into the
/// threshold stream, then into the fanout stream. Thresholds are drawn
/// uniformly from [min,max], for the initial pool in index order and later
/// for each replacement cell in migration order. Each antigen event draws
/// uniform indices in [0, population) from the fanout stream until
/// antigen_fanout distinct cells are selected (duplicates consume a draw and
/// are rejected). Within a tick every cell first accumulates the signal,
/// then maturation is checked in pool-index order.
class TissueEngine {
public:
    explicit TissueEngine(TissueConfig cfg) : cfg_(std::move(cfg)) {
        cfg_.validate();
        SplitMix64 master(cfg_.rng_seed);
        threshold_rng_ = master.split();
        fanout_rng_ = master.split();
        meta_.seed = cfg_.rng_seed;
        meta_.config_hash = fnv1a64(cfg_.canonical_text());
        pool_.reserve(cfg_.population_size);
        for (std::size_t i = 0; i < cfg_.population_size; ++i) pool_.push_back(fresh_cell());
    }

    const TissueConfig& config() const { return cfg_; }
    const std::vector<DendriticCell>& pool() const { return pool_; }
    const std::vector<PresentedAntigen>& presented() const { return presented_; }
    double clock() const { return clock_; }
    const RunMetadata& metadata() const { return meta_; }

    /// Broadcasts one signal tick to the whole pool, then migrates every
    /// cell whose csm has reached its threshold.
    void on_signal_tick(const SignalVector& s, double t) {
        require_open("on_signal_tick");
        advance_clock(t);
        s.validate();
        ++meta_.signal_ticks;
        for (auto& cell : pool_) cell.process_signals(s, cfg_.weights);
        for (auto& cell : pool_) {
            if (auto context = cell.check_maturation()) {
                append_presentations(cell.present(*context));
                cell = fresh_cell();
            }
        }
    }

    /// Delivers one antigen to antigen_fanout distinct randomly chosen cells.
    void on_antigen(const Antigen& a, double t) {
        require_open("on_antigen");
        advance_clock(t);
        ++meta_.antigen_events;
        auto recipients = choose_recipients();
        for (std::size_t idx : recipients) {
            if (pool_[idx].sample_antigen(a)) ++meta_.antigen_evicted;
            ++meta_.antigen_sampled;
        }
    }

    /// Ends the run. With flush_at_end, leftover immature cells are
    /// force-migrated under their current semi/mature comparison; otherwise
    /// their collected antigen is discarded. Idempotent.
    const std::vector<PresentedAntigen>& finalize() {
        if (finalized_) return presented_;
        finalized_ = true;
        if (cfg_.flush_at_end) {
            for (auto& cell : pool_) {
                Context context = cell.outputs().mature > cell.outputs().semi
                                      ? Context::mature
                                      : Context::semi_mature;
                append_presentations(cell.present(context));
            }
        }
        return presented_;
    }

    bool finalized() const { return finalized_; }

private:
    DendriticCell fresh_cell() {
        double threshold =
            threshold_rng_.uniform(cfg_.threshold_range.min, cfg_.threshold_range.max);
        return DendriticCell(threshold, cfg_.antigen_capacity);
    }

    std::vector<std::size_t> choose_recipients() {
        std::vector<std::size_t> chosen;
        chosen.reserve(cfg_.antigen_fanout);
        while (chosen.size() < cfg_.antigen_fanout) {
            std::size_t idx = fanout_rng_.uniform_index(cfg_.population_size);
            if (std::find(chosen.begin(), chosen.end(), idx) == chosen.end())
                chosen.push_back(idx);
        }
        return chosen;
    }

    void append_presentations(std::vector<PresentedAntigen>&& batch) {
        for (auto& p : batch) presented_.push_back(std::move(p));
    }

    void advance_clock(double t) {
        if (!std::isfinite(t) || t < clock_)
            throw ValidationError("event timestamps must be finite and non-decreasing");
        clock_ = t;
    }

    void require_open(const char* op) const {
        if (finalized_) throw std::logic_error(std::string(op) + " after finalize");
    }

    TissueConfig cfg_;
    std::vector<DendriticCell> pool_;
    std::vector<PresentedAntigen> presented_;
    double clock_ = 0;
    SplitMix64 threshold_rng_{0};
    SplitMix64 fanout_rng_{0};
    RunMetadata meta_;
    bool finalized_ = false;
};

}  // namespace dca
