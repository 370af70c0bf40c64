#include "hspsim/distribution.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <stdexcept>

#include <json.hpp>

namespace hspsim {

namespace {

// Shortest decimal that round-trips to the same double; keeps emitted
// artifacts byte-stable across runs.
std::string format_double(double v) {
    char buf[64];
    for (int prec = 15; prec <= 17; ++prec) {
        std::snprintf(buf, sizeof buf, "%.*g", prec, v);
        if (std::strtod(buf, nullptr) == v) break;
    }
    return buf;
}

}  // namespace

void OutcomeDistribution::add(const Outcome& outcome, double prob) {
    if (outcome.size() != fields_.size())
        throw std::invalid_argument("OutcomeDistribution::add: outcome arity mismatch");
    if (prob != 0.0) pmf_[outcome] += prob;
}

double OutcomeDistribution::probability(const Outcome& outcome) const {
    auto it = pmf_.find(outcome);
    return it == pmf_.end() ? 0.0 : it->second;
}

double OutcomeDistribution::total_mass() const {
    double s = 0;
    for (auto& [o, p] : pmf_) s += p;
    return s;
}

void OutcomeDistribution::prune(double eps) {
    for (auto it = pmf_.begin(); it != pmf_.end();) {
        if (std::abs(it->second) < eps) it = pmf_.erase(it);
        else ++it;
    }
}

Outcome OutcomeDistribution::sample(std::mt19937_64& rng) const {
    if (pmf_.empty()) throw std::logic_error("OutcomeDistribution::sample: empty support");
    double u = std::uniform_real_distribution<double>(0.0, total_mass())(rng);
    for (auto& [o, p] : pmf_) {
        u -= p;
        if (u <= 0) return o;
    }
    return pmf_.rbegin()->first;
}

Outcome OutcomeDistribution::argmax() const {
    if (pmf_.empty()) throw std::logic_error("OutcomeDistribution::argmax: empty support");
    const Outcome* best = nullptr;
    double best_p = -1;
    for (auto& [o, p] : pmf_) {
        if (p > best_p) { best_p = p; best = &o; }
    }
    return *best;
}

void OutcomeDistribution::write_csv(std::ostream& os) const {
    for (size_t i = 0; i < fields_.size(); ++i) os << fields_[i] << ",";
    os << "probability\r\n";
    for (auto& [o, p] : pmf_) {
        for (i64 v : o) os << v << ",";
        os << format_double(p) << "\r\n";
    }
}

void OutcomeDistribution::write_json(std::ostream& os) const {
    nlohmann::json j;
    j["schema"] = 1;
    j["fields"] = fields_;
    j["metadata"] = metadata_;
    auto& rows = j["pmf"] = nlohmann::json::array();
    for (auto& [o, p] : pmf_) {
        nlohmann::json row;
        row["outcome"] = o;
        row["probability"] = p;
        rows.push_back(std::move(row));
    }
    os << j.dump(2) << "\n";
}

double l1_distance(const OutcomeDistribution& x, const OutcomeDistribution& y) {
    double s = 0;
    for (auto& [o, p] : x.pmf()) s += std::abs(p - y.probability(o));
    for (auto& [o, p] : y.pmf()) {
        if (x.probability(o) == 0.0) s += std::abs(p);
    }
    return s;
}

double total_variation(const OutcomeDistribution& x, const OutcomeDistribution& y) {
    return 0.5 * l1_distance(x, y);
}

}  // namespace hspsim
