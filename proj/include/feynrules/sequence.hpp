#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "feynrules/pair.hpp"

namespace feynrules {

// Set of labels observed at one measurement slot; atomic when it has one.
class Outcome {
public:
    Outcome() = default;
    explicit Outcome(std::vector<int> labels);  // sorted, deduplicated, non-empty
    Outcome(std::initializer_list<int> labels) : Outcome(std::vector<int>(labels)) {}

    const std::vector<int>& labels() const noexcept { return labels_; }
    bool atomic() const noexcept { return labels_.size() == 1; }
    bool disjoint(const Outcome& o) const;
    bool subset_of(const std::vector<int>& allowed) const;
    Outcome united(const Outcome& o) const;
    std::string to_string() const;

    friend bool operator==(const Outcome&, const Outcome&) = default;
    friend auto operator<=>(const Outcome&, const Outcome&) = default;

private:
    std::vector<int> labels_;
};

// Ordered outcomes over a chain of set-ups. A series composite keeps the
// chain of set-up ids so that composition stays associative.
class Sequence {
public:
    Sequence(std::string setup_id, std::vector<Outcome> outcomes);
    Sequence(std::vector<std::string> setup_chain, std::vector<Outcome> outcomes);

    const std::vector<std::string>& setup() const noexcept { return setup_; }
    const std::vector<Outcome>& outcomes() const noexcept { return outcomes_; }
    std::size_t size() const noexcept { return outcomes_.size(); }
    std::string to_string() const;

    friend bool operator==(const Sequence&, const Sequence&) = default;

private:
    std::vector<std::string> setup_;
    std::vector<Outcome> outcomes_;
};

// Same set-up and length; they differ at exactly one interior slot where the
// outcomes are disjoint.
bool parallel_combinable(const Sequence& a, const Sequence& b);
Sequence parallel(const Sequence& a, const Sequence& b);  // throws SequenceError

// a ends where b starts.
bool series_combinable(const Sequence& a, const Sequence& b);
Sequence series(const Sequence& a, const Sequence& b);  // throws SequenceError

struct Setup {
    std::string id;
    std::vector<std::vector<int>> slots;  // atomic labels per slot
};

// Pair amplitude for each (from, to) label transition of one interval.
struct IntervalTable {
    std::map<std::pair<int, int>, Pair> entries;

    const Pair& at(int from, int to) const;  // throws MissingAmplitude
};

struct AmplitudeAssignment {
    std::vector<std::string> setup;
    std::vector<IntervalTable> intervals;
};

AmplitudeAssignment concat(const AmplitudeAssignment& first, const AmplitudeAssignment& second);

// Rejects wrong length, foreign set-up or labels outside a slot's declaration.
void validate(const Sequence& s, const Setup& setup);

// Sum over atomic refinements of the product of interval amplitudes.
Pair amplitude(const Sequence& s, const AmplitudeAssignment& asg);
double probability(const Sequence& s, const AmplitudeAssignment& asg);

struct IntervalCheck {
    std::size_t interval = 0;
    bool square = false;
    double unitarity_defect = 0;  // max |T T^H - I|
};
struct LabelTotal {
    int label = 0;
    double coarse_total = 0;   // sum_j P([i; all; ...; all; j])
    double atomic_total = 0;   // sum over fully atomic chains
};
struct NormalizationReport {
    std::vector<IntervalCheck> intervals;
    std::vector<LabelTotal> totals;
    bool preserving = false;  // every table square and unitary
    double max_total_error = 0;
    double max_interleave_change = 0;
    int interleave_cases = 0;
};

NormalizationReport normalization_check(const Setup& setup, const AmplitudeAssignment& asg, double tol = 1e-12);

// Setup and assignment with an extra trivial measurement after slot k: same
// labels as slot k, identity table into it.
std::pair<Setup, AmplitudeAssignment> interleave_trivial(const Setup& setup, const AmplitudeAssignment& asg,
                                                         std::size_t k);
Sequence interleave_trivial(const Sequence& s, const Setup& setup, std::size_t k);

struct GeneratorConfig {
    std::uint64_t seed = 7;
    int instances = 200;  // per law
    int labels = 4;
    int max_length = 6;
};

struct LawResult {
    std::string law;
    int instances = 0;
    int failures = 0;
    std::string witness;  // first failure, if any

    bool passed() const noexcept { return failures == 0; }
    std::string status() const;  // "pass", "fail" or "no instances"
};

struct SymmetryReport {
    GeneratorConfig config;
    std::vector<LawResult> laws;
    bool all_passed() const noexcept;
};

// Sequence-level laws: parallel commutativity and associativity, series
// associativity, both distributive laws, and the amplitude homomorphism.
SymmetryReport check_symmetries(const GeneratorConfig& cfg);

}  // namespace feynrules
