#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "moedr/dataset.hpp"
#include "moedr/encoding.hpp"
#include "moedr/rng.hpp"
#include "moedr/wrapper.hpp"

namespace moedr {

/// Both objectives are minimized: f1 = -(sum of cut information gains), f2 = CV error.
struct ObjectiveVector {
    double f1 = 0.0;
    double f2 = 1.0;

    double gain() const noexcept { return 0.0 - f1; }
    friend bool operator==(const ObjectiveVector&, const ObjectiveVector&) = default;
};

/// Objectives given to chromosomes that select no feature.
inline constexpr ObjectiveVector kInfeasibleObjectives{0.0, 1.0};

/// Pareto dominance under minimization.
constexpr bool dominates(const ObjectiveVector& a, const ObjectiveVector& b) noexcept {
    return a.f1 <= b.f1 && a.f2 <= b.f2 && (a.f1 < b.f1 || a.f2 < b.f2);
}

struct Individual {
    Chromosome chromosome;
    ObjectiveVector objectives;
    bool feasible = true;
    /// 1-based front index.
    std::size_t rank = 0;
    double crowding = 0.0;
};

struct FrontPartition {
    std::vector<std::vector<std::size_t>> fronts;

    std::size_t size() const noexcept { return fronts.size(); }
    friend bool operator==(const FrontPartition&, const FrontPartition&) = default;
};

/// Deb's fast non-dominated sort; each front lists indices in ascending order.
FrontPartition fast_nondominated_sort(std::span<const ObjectiveVector> objectives);

/// Crowding distance within one front. Per objective, the extreme members get +inf
/// and interior members add (next - prev) / range; a zero range adds nothing.
std::vector<double> crowding_distance(std::span<const ObjectiveVector> front);

/// Sorts `population`'s objectives and writes rank and crowding into each member.
FrontPartition assign_rank_and_crowding(std::vector<Individual>& population);

/// Crowded-comparison winner of a and b: lower rank, then larger crowding, then a coin flip.
std::size_t tournament_winner(std::span<const Individual> population, std::size_t a, std::size_t b,
                              Rng& rng);

/// Binary tournament between two distinct random members; returns the winner's index.
std::size_t tournament_select(std::span<const Individual> population, Rng& rng);

/// Uniform mask over gene positions; whole genes move together.
std::pair<Chromosome, Chromosome> scattered_crossover(const Chromosome& p1, const Chromosome& p2,
                                                      Rng& rng);

/// Same as above with an explicit mask (mask[i] true: child1 takes p1's gene i).
std::pair<Chromosome, Chromosome> scattered_crossover(const Chromosome& p1, const Chromosome& p2,
                                                      const std::vector<bool>& mask);

/// Per gene with probability `rate`: cut += N(0, sigma_fraction * (ub - lb)), clipped
/// to bounds. Independently, each bit flips with probability `rate`.
Chromosome gaussian_mutation(const Chromosome& c, const Bounds& bounds, Rng& rng, double rate,
                             double sigma_fraction);

struct EngineConfig {
    std::size_t population = 50;
    std::size_t generations = 1000;
    double crossover_rate = 0.8;
    /// Per-gene mutation probability; nullopt means 1 / gene count.
    std::optional<double> mutation_rate;
    double sigma_fraction = 0.1;
    /// Stop once front-1 mean objectives move less than this for `stall_generations`
    /// consecutive generations.
    double function_tolerance = 1e-3;
    std::size_t stall_generations = 50;
    /// Wall-clock seconds without such movement before stopping.
    double stall_seconds = 600.0;
    /// Optional cap on the share of the next population drawn from front 1.
    std::optional<double> pareto_fraction;
    std::size_t threads = 1;

    void validate() const;
};

enum class StopReason { generations, tolerance, stall_time };
std::string to_string(StopReason reason);

/// Objective function. `stream_seed` is derived from (master seed, generation,
/// individual index) for evaluators that need randomness.
using Evaluator = std::function<Individual(const Chromosome&, std::uint64_t stream_seed)>;

struct GenerationSnapshot {
    std::size_t generation = 0;
    /// Parents plus offspring (the initial population at generation 0).
    std::span<const Individual> merged;
    const FrontPartition* merged_fronts = nullptr;
    /// Survivors forming the next population.
    std::span<const Individual> population;
    double elapsed_seconds = 0.0;
};

using GenerationObserver = std::function<void(const GenerationSnapshot&)>;

/// CSV header and row for the per-generation log.
std::string generation_log_header();
std::string generation_log_line(const GenerationSnapshot& snapshot);

struct EvolveResult {
    std::vector<Individual> population;
    /// Non-dominated sort of the final population.
    FrontPartition fronts;
    /// Front count of the last merged (parents + offspring) population.
    std::size_t merged_front_count = 0;
    std::size_t generations_run = 0;
    StopReason stop = StopReason::generations;
};

EvolveResult evolve(const Bounds& bounds, const EngineConfig& config, const Evaluator& evaluate,
                    Rng& rng, const GenerationObserver& observer = {});

/// The feature-selection / discretization problem: objectives are
/// (-discretization_fitness, wrapper error) of the decoded chromosome.
class SelectionProblem {
public:
    SelectionProblem(const Dataset& dataset, const WrapperConfig& wrapper);

    Individual evaluate(const Chromosome& chromosome) const;
    Evaluator evaluator() const;
    Bounds bounds() const;
    const Dataset& dataset() const noexcept { return *dataset_; }
    const WrapperFitness& wrapper() const noexcept { return wrapper_; }

private:
    const Dataset* dataset_;
    WrapperFitness wrapper_;
    std::vector<bool> nominal_;
};

EvolveResult evolve(const Dataset& dataset, const EngineConfig& config, const WrapperConfig& wrapper,
                    Rng& rng, const GenerationObserver& observer = {});

}  // namespace moedr
