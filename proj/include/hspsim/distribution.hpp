#pragma once

#include <map>
#include <ostream>
#include <random>
#include <string>
#include <vector>

#include "hspsim/modmath.hpp"

namespace hspsim {

/// One measurement outcome: a tuple of integer labels, one per field.
using Outcome = std::vector<i64>;

/// A finite probability distribution over labelled integer tuples.
///
/// Outcomes are kept in a sorted map so emission order, and hence emitted
/// bytes, are deterministic. Metadata travels with the distribution into the
/// CSV/JSON headers.
class OutcomeDistribution {
public:
    OutcomeDistribution() = default;
    explicit OutcomeDistribution(std::vector<std::string> fields) : fields_(std::move(fields)) {}

    const std::vector<std::string>& fields() const { return fields_; }
    const std::map<Outcome, double>& pmf() const { return pmf_; }
    std::map<std::string, std::string>& metadata() { return metadata_; }
    const std::map<std::string, std::string>& metadata() const { return metadata_; }

    void add(const Outcome& outcome, double prob);
    double probability(const Outcome& outcome) const;
    double total_mass() const;
    size_t support_size() const { return pmf_.size(); }

    /// Drops outcomes below `eps` and rescales nothing (mass is preserved up
    /// to the dropped tail); used to keep emitted artifacts readable.
    void prune(double eps);

    Outcome sample(std::mt19937_64& rng) const;
    Outcome argmax() const;

    void write_csv(std::ostream& os) const;
    void write_json(std::ostream& os) const;

private:
    std::vector<std::string> fields_;
    std::map<Outcome, double> pmf_;
    std::map<std::string, std::string> metadata_;
};

/// (1/2) sum |P - Q| over the union of supports.
double total_variation(const OutcomeDistribution& x, const OutcomeDistribution& y);

/// sum |P - Q| over the union of supports.
double l1_distance(const OutcomeDistribution& x, const OutcomeDistribution& y);

}  // namespace hspsim
