#include "moedr/nsga2.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "moedr/entropy.hpp"

namespace moedr {

FrontPartition fast_nondominated_sort(std::span<const ObjectiveVector> objectives) {
    const std::size_t n = objectives.size();
    std::vector<std::vector<std::size_t>> dominated(n);
    std::vector<std::size_t> dominators(n, 0);
    FrontPartition out;
    std::vector<std::size_t> current;
    for (std::size_t p = 0; p < n; ++p) {
        for (std::size_t q = 0; q < n; ++q) {
            if (p == q) continue;
            if (dominates(objectives[p], objectives[q]))
                dominated[p].push_back(q);
            else if (dominates(objectives[q], objectives[p]))
                ++dominators[p];
        }
        if (dominators[p] == 0) current.push_back(p);
    }
    while (!current.empty()) {
        std::vector<std::size_t> next;
        for (auto p : current) {
            for (auto q : dominated[p])
                if (--dominators[q] == 0) next.push_back(q);
        }
        std::sort(next.begin(), next.end());
        out.fronts.push_back(std::move(current));
        current = std::move(next);
    }
    return out;
}

std::vector<double> crowding_distance(std::span<const ObjectiveVector> front) {
    const std::size_t n = front.size();
    constexpr double inf = std::numeric_limits<double>::infinity();
    std::vector<double> dist(n, 0.0);
    if (n <= 2) {
        std::fill(dist.begin(), dist.end(), inf);
        return dist;
    }
    std::vector<std::size_t> order(n);
    for (int obj = 0; obj < 2; ++obj) {
        const auto value = [&](std::size_t i) { return obj == 0 ? front[i].f1 : front[i].f2; };
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return value(a) < value(b); });
        dist[order.front()] = inf;
        dist[order.back()] = inf;
        const double range = value(order.back()) - value(order.front());
        if (range <= 0.0) continue;
        for (std::size_t i = 1; i + 1 < n; ++i)
            dist[order[i]] += (value(order[i + 1]) - value(order[i - 1])) / range;
    }
    return dist;
}

FrontPartition assign_rank_and_crowding(std::vector<Individual>& population) {
    std::vector<ObjectiveVector> obj(population.size());
    for (std::size_t i = 0; i < population.size(); ++i) obj[i] = population[i].objectives;
    auto fronts = fast_nondominated_sort(obj);
    std::vector<ObjectiveVector> members;
    for (std::size_t f = 0; f < fronts.size(); ++f) {
        members.clear();
        for (auto i : fronts.fronts[f]) members.push_back(obj[i]);
        const auto cd = crowding_distance(members);
        for (std::size_t k = 0; k < fronts.fronts[f].size(); ++k) {
            auto& ind = population[fronts.fronts[f][k]];
            ind.rank = f + 1;
            ind.crowding = cd[k];
        }
    }
    return fronts;
}

std::size_t tournament_winner(std::span<const Individual> population, std::size_t a, std::size_t b,
                              Rng& rng) {
    const auto& x = population[a];
    const auto& y = population[b];
    if (x.rank != y.rank) return x.rank < y.rank ? a : b;
    if (x.crowding != y.crowding) return x.crowding > y.crowding ? a : b;
    return rng.coin() ? a : b;
}

std::size_t tournament_select(std::span<const Individual> population, Rng& rng) {
    if (population.empty()) throw std::invalid_argument("tournament_select: empty population");
    if (population.size() == 1) return 0;
    const auto a = rng.below(population.size());
    auto b = rng.below(population.size() - 1);
    if (b >= a) ++b;
    return tournament_winner(population, a, b, rng);
}

std::pair<Chromosome, Chromosome> scattered_crossover(const Chromosome& p1, const Chromosome& p2,
                                                      const std::vector<bool>& mask) {
    if (p1.size() != p2.size() || mask.size() != p1.size())
        throw std::invalid_argument("scattered_crossover: length mismatch");
    std::pair<Chromosome, Chromosome> kids{p1, p2};
    for (std::size_t i = 0; i < mask.size(); ++i) {
        if (!mask[i]) {
            kids.first.genes[i] = p2.genes[i];
            kids.second.genes[i] = p1.genes[i];
        }
    }
    return kids;
}

std::pair<Chromosome, Chromosome> scattered_crossover(const Chromosome& p1, const Chromosome& p2,
                                                      Rng& rng) {
    std::vector<bool> mask(p1.size());
    for (std::size_t i = 0; i < mask.size(); ++i) mask[i] = rng.coin();
    return scattered_crossover(p1, p2, mask);
}

Chromosome gaussian_mutation(const Chromosome& c, const Bounds& bounds, Rng& rng, double rate,
                             double sigma_fraction) {
    if (rate < 0.0 || rate > 1.0) throw std::invalid_argument("gaussian_mutation: rate outside [0,1]");
    Chromosome out = c;
    for (std::size_t j = 0; j < out.genes.size(); ++j) {
        auto& g = out.genes[j];
        const auto [lb, ub] = bounds[j];
        if (rng.bernoulli(rate)) {
            const double sigma = sigma_fraction * (ub - lb);
            if (sigma > 0.0) g.cut = std::clamp(g.cut + rng.normal(0.0, sigma), lb, ub);
        }
        if (rng.bernoulli(rate)) g.select = !g.select;
        if (rng.bernoulli(rate)) g.discretize = !g.discretize;
    }
    return out;
}

void EngineConfig::validate() const {
    if (population < 2) throw std::invalid_argument("population must be at least 2");
    if (crossover_rate < 0.0 || crossover_rate > 1.0)
        throw std::invalid_argument("crossover rate must lie in [0,1]");
    if (mutation_rate && (*mutation_rate < 0.0 || *mutation_rate > 1.0))
        throw std::invalid_argument("mutation rate must lie in [0,1]");
    if (sigma_fraction < 0.0) throw std::invalid_argument("sigma fraction must be non-negative");
    if (function_tolerance < 0.0) throw std::invalid_argument("function tolerance must be non-negative");
    if (stall_seconds <= 0.0) throw std::invalid_argument("stall seconds must be positive");
    if (pareto_fraction && (*pareto_fraction <= 0.0 || *pareto_fraction > 1.0))
        throw std::invalid_argument("pareto fraction must lie in (0,1]");
    if (threads == 0) throw std::invalid_argument("threads must be positive");
}

std::string to_string(StopReason reason) {
    switch (reason) {
        case StopReason::generations: return "generations";
        case StopReason::tolerance: return "tolerance";
        case StopReason::stall_time: return "stall_time";
    }
    return "?";
}

std::string generation_log_header() { return "generation,front1_size,best_error,best_gain,elapsed_s"; }

std::string generation_log_line(const GenerationSnapshot& s) {
    std::size_t front1 = 0;
    double best_error = std::numeric_limits<double>::infinity();
    double best_gain = -std::numeric_limits<double>::infinity();
    for (const auto& ind : s.population) {
        if (ind.rank == 1) ++front1;
        best_error = std::min(best_error, ind.objectives.f2);
        best_gain = std::max(best_gain, ind.objectives.gain());
    }
    std::ostringstream os;
    os << s.generation << ',' << front1 << ',' << std::setprecision(6) << std::fixed << best_error
       << ',' << best_gain << ',' << std::setprecision(3) << s.elapsed_seconds;
    return os.str();
}

namespace {

void evaluate_batch(std::vector<Chromosome>& batch, std::vector<Individual>& out,
                    const Evaluator& evaluate, std::uint64_t seed, std::size_t generation,
                    std::size_t threads) {
    out.resize(batch.size());
    const auto work = [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            out[i] = evaluate(batch[i], derive_seed(seed, {generation, i}));
            out[i].chromosome = std::move(batch[i]);
        }
    };
    const std::size_t workers = std::min(threads, batch.size());
    if (workers <= 1) {
        work(0, batch.size());
        return;
    }
    std::vector<std::jthread> pool;
    const std::size_t chunk = (batch.size() + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
        const std::size_t b = w * chunk;
        const std::size_t e = std::min(batch.size(), b + chunk);
        if (b < e) pool.emplace_back(work, b, e);
    }
}

/// Front-by-front fill; the boundary front is truncated by descending crowding.
std::vector<Individual> environmental_selection(const std::vector<Individual>& merged,
                                                const FrontPartition& fronts, std::size_t target,
                                                std::optional<double> pareto_fraction) {
    std::vector<std::size_t> chosen;
    chosen.reserve(target);
    const auto by_crowding = [&](std::vector<std::size_t> members) {
        std::stable_sort(members.begin(), members.end(), [&](std::size_t a, std::size_t b) {
            return merged[a].crowding > merged[b].crowding;
        });
        return members;
    };

    std::vector<std::size_t> deferred;
    for (std::size_t f = 0; f < fronts.size() && chosen.size() < target; ++f) {
        auto members = fronts.fronts[f];
        std::size_t room = target - chosen.size();
        if (f == 0 && pareto_fraction) {
            const auto cap = std::max<std::size_t>(
                1, static_cast<std::size_t>(std::floor(*pareto_fraction * static_cast<double>(target))));
            if (members.size() > cap) {
                members = by_crowding(std::move(members));
                deferred.assign(members.begin() + static_cast<std::ptrdiff_t>(cap), members.end());
                members.resize(cap);
            }
        }
        if (members.size() <= room) {
            chosen.insert(chosen.end(), members.begin(), members.end());
        } else {
            members = by_crowding(std::move(members));
            chosen.insert(chosen.end(), members.begin(), members.begin() + static_cast<std::ptrdiff_t>(room));
        }
    }
    for (std::size_t i = 0; chosen.size() < target && i < deferred.size(); ++i) chosen.push_back(deferred[i]);

    std::vector<Individual> next;
    next.reserve(chosen.size());
    for (auto i : chosen) next.push_back(merged[i]);
    return next;
}

std::pair<double, double> front1_means(const std::vector<Individual>& population) {
    double f1 = 0.0, f2 = 0.0;
    std::size_t n = 0;
    for (const auto& ind : population) {
        if (ind.rank != 1) continue;
        f1 += ind.objectives.f1;
        f2 += ind.objectives.f2;
        ++n;
    }
    if (n == 0) return {0.0, 0.0};
    return {f1 / static_cast<double>(n), f2 / static_cast<double>(n)};
}

}  // namespace

EvolveResult evolve(const Bounds& bounds, const EngineConfig& config, const Evaluator& evaluate,
                    Rng& rng, const GenerationObserver& observer) {
    config.validate();
    using clock = std::chrono::steady_clock;
    const auto start = clock::now();
    const auto elapsed = [&] { return std::chrono::duration<double>(clock::now() - start).count(); };

    const std::size_t npop = config.population;
    const double mutation_rate = config.mutation_rate.value_or(
        bounds.empty() ? 0.0 : 1.0 / static_cast<double>(bounds.size()));
    const std::uint64_t eval_seed = rng.next();

    std::vector<Chromosome> batch;
    batch.reserve(npop);
    for (std::size_t i = 0; i < npop; ++i) batch.push_back(random_chromosome(bounds, rng));
    std::vector<Individual> population;
    evaluate_batch(batch, population, evaluate, eval_seed, 0, config.threads);
    auto fronts = assign_rank_and_crowding(population);

    EvolveResult result;
    result.merged_front_count = fronts.size();
    if (observer) observer({0, population, &fronts, population, elapsed()});

    auto last_means = front1_means(population);
    std::size_t stalled = 0;
    double last_move = elapsed();

    std::vector<Individual> offspring;
    std::vector<Individual> merged;
    for (std::size_t gen = 1; gen <= config.generations; ++gen) {
        batch.clear();
        while (batch.size() < npop) {
            const auto a = tournament_select(population, rng);
            const auto b = tournament_select(population, rng);
            const auto& p1 = population[a].chromosome;
            const auto& p2 = population[b].chromosome;
            if (rng.bernoulli(config.crossover_rate)) {
                auto [c1, c2] = scattered_crossover(p1, p2, rng);
                batch.push_back(std::move(c1));
                if (batch.size() < npop) batch.push_back(std::move(c2));
            } else {
                batch.push_back(gaussian_mutation(p1, bounds, rng, mutation_rate, config.sigma_fraction));
                if (batch.size() < npop)
                    batch.push_back(gaussian_mutation(p2, bounds, rng, mutation_rate, config.sigma_fraction));
            }
        }
        evaluate_batch(batch, offspring, evaluate, eval_seed, gen, config.threads);

        merged = population;
        merged.insert(merged.end(), std::make_move_iterator(offspring.begin()),
                      std::make_move_iterator(offspring.end()));
        const auto merged_fronts = assign_rank_and_crowding(merged);
        population = environmental_selection(merged, merged_fronts, npop, config.pareto_fraction);
        result.merged_front_count = merged_fronts.size();
        result.generations_run = gen;
        if (observer) observer({gen, merged, &merged_fronts, population, elapsed()});

        const auto means = front1_means(population);
        const double moved = std::max(std::abs(means.first - last_means.first),
                                      std::abs(means.second - last_means.second));
        last_means = means;
        if (moved < config.function_tolerance) {
            ++stalled;
        } else {
            stalled = 0;
            last_move = elapsed();
        }
        if (stalled >= config.stall_generations) {
            result.stop = StopReason::tolerance;
            break;
        }
        if (elapsed() - last_move > config.stall_seconds) {
            result.stop = StopReason::stall_time;
            break;
        }
    }

    result.fronts = assign_rank_and_crowding(population);
    result.population = std::move(population);
    return result;
}

SelectionProblem::SelectionProblem(const Dataset& dataset, const WrapperConfig& wrapper)
    : dataset_(&dataset), wrapper_(dataset, wrapper), nominal_(nominal_flags(dataset)) {}

Individual SelectionProblem::evaluate(const Chromosome& chromosome) const {
    Individual ind;
    const auto view = decode(chromosome, nominal_);
    if (!view.feasible()) {
        ind.feasible = false;
        ind.objectives = kInfeasibleObjectives;
        return ind;
    }
    ind.objectives.f1 = 0.0 - discretization_fitness(*dataset_, view);
    ind.objectives.f2 = wrapper_.error(view);
    return ind;
}

Evaluator SelectionProblem::evaluator() const {
    return [this](const Chromosome& c, std::uint64_t) { return evaluate(c); };
}

Bounds SelectionProblem::bounds() const { return compute_bounds(*dataset_); }

EvolveResult evolve(const Dataset& dataset, const EngineConfig& config, const WrapperConfig& wrapper,
                    Rng& rng, const GenerationObserver& observer) {
    const SelectionProblem problem(dataset, wrapper);
    return evolve(problem.bounds(), config, problem.evaluator(), rng, observer);
}

}  // namespace moedr
