#pragma once

#include <atomic>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <vector>

namespace hspsim {

/// Opaque oracle symbol. Single labels use one entry; sampled-tuple oracles
/// use one entry per sample point. Ordered so symbols work as map keys.
using OracleSymbol = std::vector<std::uint64_t>;

/// A hiding function f: X -> S, constant on the left cosets of a hidden
/// subgroup and distinct across cosets, with a query counter.
///
/// The counter is shared across copies and atomically incremented, so
/// concurrent trials may query one oracle freely.
///
/// `ground_truth` carries the hidden subgroup in whatever description type
/// the ambient group uses. The quantum-sampling side of the simulator reads
/// it to produce exact measurement distributions (a real device would get the
/// same statistics from superposed queries); classical reconstruction code
/// must touch only operator() and the counter.
template <typename X, typename Truth>
class BasicOracle {
public:
    BasicOracle() = default;
    BasicOracle(std::function<OracleSymbol(const X&)> fn, std::optional<Truth> truth = std::nullopt)
        : fn_(std::move(fn)),
          truth_(std::move(truth)),
          queries_(std::make_shared<std::atomic<std::uint64_t>>(0)) {}

    OracleSymbol operator()(const X& x) const {
        queries_->fetch_add(1, std::memory_order_relaxed);
        return fn_(x);
    }

    std::uint64_t queries() const { return queries_->load(std::memory_order_relaxed); }
    void reset_queries() const { queries_->store(0, std::memory_order_relaxed); }

    bool has_ground_truth() const { return truth_.has_value(); }
    const Truth& ground_truth() const { return truth_.value(); }

    /// Charge n queries without evaluating (used when one logical query is
    /// accounted against a coset-state preparation).
    void charge(std::uint64_t n) const { queries_->fetch_add(n, std::memory_order_relaxed); }

private:
    std::function<OracleSymbol(const X&)> fn_;
    std::optional<Truth> truth_;
    std::shared_ptr<std::atomic<std::uint64_t>> queries_;
};

}  // namespace hspsim
