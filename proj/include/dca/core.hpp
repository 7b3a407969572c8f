#pragma once

#include <cmath>
#include <cstdint>
#include <deque>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "dca/error.hpp"

namespace dca {

using AntigenId = std::uint64_t;

/// One unit of antigen: the identifier of a monitored entity (a process ID)
/// plus an optional human-readable label. Identity is the id alone.
struct Antigen {
    AntigenId id = 0;
    std::string label;  // may be empty

    friend bool operator==(const Antigen& a, const Antigen& b) { return a.id == b.id; }
};

/// Normalized signal concentrations at one instant. Components live in
/// [0,100]: pamp (signature-based evidence), danger (activity correlated
/// with harm), safe (activity correlated with normal behaviour).
struct SignalVector {
    double pamp = 0;
    double danger = 0;
    double safe = 0;

    void validate() const {
        for (double v : {pamp, danger, safe})
            if (!std::isfinite(v) || v < 0 || v > 100)
                throw ValidationError("signal concentration out of [0,100]: " + std::to_string(v));
    }
};

/// Coefficients mapping the three input signals to one output.
struct WeightRow {
    double pamp = 0;
    double danger = 0;
    double safe = 0;

    double dot(const SignalVector& s) const {
        return pamp * s.pamp + danger * s.danger + safe * s.safe;
    }
};

/// 3x3 signal-fusion coefficients, one row per output quantity.
///
/// Constraints: all entries finite; the csm row nonnegative so costimulation
/// never decreases under valid signals; the safe->mature entry nonpositive so
/// safe signals suppress maturation.
struct WeightMatrix {
    WeightRow csm{2, 1, 2};
    WeightRow semi{0, 0, 1};
    WeightRow mature{2, 1, -1};

    void validate() const {
        for (const WeightRow* row : {&csm, &semi, &mature})
            for (double v : {row->pamp, row->danger, row->safe})
                if (!std::isfinite(v)) throw ValidationError("non-finite weight");
        if (csm.pamp < 0 || csm.danger < 0 || csm.safe < 0)
            throw ValidationError("csm weights must be nonnegative");
        if (mature.safe > 0)
            throw ValidationError("safe->mature weight must be <= 0");
    }
};

inline WeightMatrix default_weights(double safe_mature_weight = -1) {
    WeightMatrix w;
    w.mature.safe = safe_mature_weight;
    return w;
}

/// Cumulative per-cell output concentrations. semi/mature may go negative;
/// only their comparison matters and clamping would break additivity.
struct CellOutputs {
    double csm = 0;
    double semi = 0;
    double mature = 0;
};

enum class CellState { immature, presented_semi, presented_mature };

enum class Context { semi_mature, mature };

inline CellState presented_state(Context c) {
    return c == Context::mature ? CellState::presented_mature : CellState::presented_semi;
}

/// An antigen stamped with the presenting cell's terminal context.
struct PresentedAntigen {
    Antigen antigen;
    Context context = Context::semi_mature;

    friend bool operator==(const PresentedAntigen& a, const PresentedAntigen& b) {
        return a.antigen.id == b.antigen.id && a.context == b.context;
    }
};

/// One artificial dendritic cell. While immature it accumulates weighted
/// signal outputs and samples antigen into a bounded store; once csm reaches
/// the migration threshold it presents every stored antigen under a single
/// context and leaves the sampling population for good.
class DendriticCell {
public:
    DendriticCell(double migration_threshold, std::size_t antigen_capacity)
        : threshold_(migration_threshold), capacity_(antigen_capacity) {
        if (!std::isfinite(migration_threshold) || migration_threshold <= 0)
            throw ValidationError("migration threshold must be positive");
        if (antigen_capacity == 0)
            throw ValidationError("antigen capacity must be >= 1");
    }

    const CellOutputs& outputs() const { return outputs_; }
    const std::deque<Antigen>& antigen_store() const { return store_; }
    double migration_threshold() const { return threshold_; }
    CellState state() const { return state_; }

    /// Accumulates one tick of weighted signal input:
    /// outputs.o += sum_over_inputs w[o][input] * s[input].
    void process_signals(const SignalVector& s, const WeightMatrix& w) {
        require_immature("process_signals");
        s.validate();
        w.validate();
        outputs_.csm += w.csm.dot(s);
        outputs_.semi += w.semi.dot(s);
        outputs_.mature += w.mature.dot(s);
    }

    /// Appends antigen to the store; at capacity the oldest entry is evicted.
    /// Returns the evicted antigen, if any.
    std::optional<Antigen> sample_antigen(Antigen a) {
        require_immature("sample_antigen");
        std::optional<Antigen> evicted;
        if (store_.size() == capacity_) {
            evicted = std::move(store_.front());
            store_.pop_front();
        }
        store_.push_back(std::move(a));
        return evicted;
    }

    /// Decides whether the cell migrates now: nullopt while csm is below the
    /// threshold, otherwise the terminal context. A mature-vs-semi tie
    /// resolves to semi_mature, biasing against false positives.
    std::optional<Context> check_maturation() const {
        require_immature("check_maturation");
        if (outputs_.csm < threshold_) return std::nullopt;
        return outputs_.mature > outputs_.semi ? Context::mature : Context::semi_mature;
    }

    /// Stamps every stored antigen with the given context (multiplicity
    /// preserved, store order) and moves the cell to its presented state.
    std::vector<PresentedAntigen> present(Context context) {
        require_immature("present");
        std::vector<PresentedAntigen> out;
        out.reserve(store_.size());
        for (auto& a : store_) out.push_back({std::move(a), context});
        store_.clear();
        state_ = presented_state(context);
        return out;
    }

private:
    void require_immature(const char* op) const {
        if (state_ != CellState::immature)
            throw std::logic_error(std::string(op) + " on a presented cell");
    }

    CellOutputs outputs_;
    std::deque<Antigen> store_;
    double threshold_;
    std::size_t capacity_;
    CellState state_ = CellState::immature;
};

}  // namespace dca
