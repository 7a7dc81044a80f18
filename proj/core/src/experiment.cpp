#include "moedr/experiment.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "moedr/entropy.hpp"

namespace moedr {

namespace {

std::string fixed(double v, int digits) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(digits) << v;
    return os.str();
}

double sample_std(std::span<const double> xs) {
    if (xs.size() < 2) return 0.0;
    const double n = static_cast<double>(xs.size());
    const double mean = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
    double ss = 0.0;
    for (double x : xs) ss += (x - mean) * (x - mean);
    return std::sqrt(ss / (n - 1.0));
}

void write_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << text;
    if (!out) throw std::runtime_error("write failed for " + path.string());
}

}  // namespace

void ExperimentConfig::validate() const {
    if (runs < 1) throw std::invalid_argument("runs must be at least 1");
    if (folds < 2) throw std::invalid_argument("folds must be at least 2");
    if (wrapper_folds < 2) throw std::invalid_argument("wrapper folds must be at least 2");
    engine.validate();
}

void RunReport::aggregate() {
    if (runs.empty()) return;
    std::vector<double> base, prop;
    double sel = 0.0, disc = 0.0, fronts = 0.0;
    for (const auto& r : runs) {
        base.push_back(r.baseline_accuracy);
        prop.push_back(r.proposed_accuracy);
        sel += static_cast<double>(r.selected);
        disc += static_cast<double>(r.discretized);
        fronts += static_cast<double>(r.front_count);
    }
    const double n = static_cast<double>(runs.size());
    baseline_mean = std::accumulate(base.begin(), base.end(), 0.0) / n;
    proposed_mean = std::accumulate(prop.begin(), prop.end(), 0.0) / n;
    baseline_std = sample_std(base);
    proposed_std = sample_std(prop);
    mean_selected = sel / n;
    mean_discretized = disc / n;
    mean_fronts = fronts / n;
}

std::size_t select_best_solution(std::span<const Individual> front1) {
    if (front1.empty()) throw std::invalid_argument("select_best_solution: empty front");
    const auto selected = [](const Individual& ind) {
        return std::count_if(ind.chromosome.genes.begin(), ind.chromosome.genes.end(),
                             [](const Gene& g) { return g.select; });
    };
    std::size_t best = 0;
    for (std::size_t i = 1; i < front1.size(); ++i) {
        const auto& a = front1[i].objectives;
        const auto& b = front1[best].objectives;
        if (a.f2 != b.f2) {
            if (a.f2 < b.f2) best = i;
            continue;
        }
        if (a.gain() != b.gain()) {
            if (a.gain() > b.gain()) best = i;
            continue;
        }
        if (selected(front1[i]) < selected(front1[best])) best = i;
    }
    return best;
}

CvResult evaluate_final(const Dataset& dataset, const DecodedView& view, const LearnerKind& learner,
                        std::size_t folds, std::uint64_t seed) {
    const Dataset reduced = transform(dataset, view);
    return cross_validate(reduced, make_fold_plan(dataset, folds, seed), learner);
}

ParetoExport make_pareto_export(const EvolveResult& result, std::size_t run,
                                const std::vector<bool>& nominal) {
    ParetoExport out;
    out.run = run;
    for (std::size_t f = 0; f < result.fronts.size(); ++f) {
        for (auto i : result.fronts.fronts[f]) {
            const auto& ind = result.population[i];
            const auto view = decode(ind.chromosome, nominal);
            out.rows.push_back({f + 1, ind.objectives.gain(), ind.objectives.f2, view.selected.size(),
                                view.discretized.size()});
        }
    }
    return out;
}

RunSeeds run_seeds(std::uint64_t master, std::size_t run) {
    const std::uint64_t run_seed = derive_seed(master, {1, run});
    return {derive_seed(run_seed, {2}), derive_seed(run_seed, {3}), derive_seed(master, {4, run})};
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
    LoadStats stats;
    const Dataset dataset = load_csv(config.data_path, config.load, &stats);
    return run_experiment(config, dataset);
}

ExperimentResult run_experiment(const ExperimentConfig& config, const Dataset& dataset) {
    config.validate();
    ExperimentResult result;
    RunReport& report = result.report;
    report.dataset = dataset.name;
    report.features = dataset.cols();
    report.learner = config.learner.name();
    report.wrapper = config.wrapper_learner().name();

    if (!config.out_dir.empty()) std::filesystem::create_directories(config.out_dir);

    const auto identity = DecodedView::identity(dataset.cols());
    const auto nominal = nominal_flags(dataset);
    for (std::size_t r = 0; r < config.runs; ++r) {
        const auto seeds = run_seeds(config.seed, r);
        RunRecord rec;
        rec.run = r;
        rec.seed = seeds.engine;

        const auto base = evaluate_final(dataset, identity, config.learner, config.folds, seeds.outer);
        rec.baseline_accuracy = base.mean;
        rec.baseline_fold_std = base.stddev;

        WrapperConfig wrapper{config.wrapper_learner(), config.wrapper_folds, seeds.wrapper};
        Rng rng(seeds.engine);
        std::ofstream gen_log;
        GenerationObserver observer;
        if (config.log_generations && !config.out_dir.empty()) {
            gen_log.open(config.out_dir / ("generations_run" + std::to_string(r) + ".csv"));
            gen_log << generation_log_header() << '\n';
            observer = [&](const GenerationSnapshot& s) { gen_log << generation_log_line(s) << '\n'; };
        }
        const auto evolved = evolve(dataset, config.engine, wrapper, rng, observer);

        std::vector<Individual> front1;
        for (auto i : evolved.fronts.fronts.front()) front1.push_back(evolved.population[i]);
        const auto& best = front1[select_best_solution(front1)];
        rec.best_view = decode(best.chromosome, nominal);
        rec.selected = rec.best_view.selected.size();
        rec.discretized = rec.best_view.discretized.size();
        rec.front_count = evolved.merged_front_count;
        rec.generations_run = evolved.generations_run;
        rec.stop = evolved.stop;
        rec.gain = best.objectives.gain();
        rec.wrapper_accuracy = 1.0 - best.objectives.f2;

        if (!rec.best_view.feasible()) throw InfeasibleError();
        if (config.report_wrapper_score) {
            rec.proposed_accuracy = rec.wrapper_accuracy;
        } else {
            const auto prop = evaluate_final(dataset, rec.best_view, config.learner, config.folds, seeds.outer);
            rec.proposed_accuracy = prop.mean;
            rec.proposed_fold_std = prop.stddev;
        }

        result.fronts.push_back(make_pareto_export(evolved, r, nominal));
        if (!config.out_dir.empty()) {
            write_file(config.out_dir / ("recipe_run" + std::to_string(r) + ".json"),
                       recipe_json(rec.best_view, &dataset) + "\n");
            if (config.emit_front)
                write_file(config.out_dir / ("pareto_run" + std::to_string(r) + ".csv"),
                           pareto_csv(result.fronts.back()));
        }
        report.runs.push_back(std::move(rec));
    }
    report.aggregate();
    if (!config.out_dir.empty()) emit_report(report, config.out_dir);
    return result;
}

std::string summary_header() {
    return "dataset,features,selected,discretized,fronts,accuracy,std,proposed_accuracy,proposed_std";
}

std::string summary_row(const RunReport& r) {
    std::ostringstream os;
    os << r.dataset << ',' << r.features << ',' << fixed(r.mean_selected, 2) << ','
       << fixed(r.mean_discretized, 2) << ',' << fixed(r.mean_fronts, 2) << ','
       << fixed(r.baseline_mean, 3) << ',' << fixed(r.baseline_std, 3) << ','
       << fixed(r.proposed_mean, 3) << ',' << fixed(r.proposed_std, 3);
    return os.str();
}

std::string report_json(const RunReport& r) {
    nlohmann::ordered_json j;
    j["dataset"] = r.dataset;
    j["features"] = r.features;
    j["learner"] = r.learner;
    j["wrapper"] = r.wrapper;
    j["aggregate"] = {{"baseline_accuracy", r.baseline_mean},
                      {"baseline_std", r.baseline_std},
                      {"proposed_accuracy", r.proposed_mean},
                      {"proposed_std", r.proposed_std},
                      {"mean_selected", r.mean_selected},
                      {"mean_discretized", r.mean_discretized},
                      {"mean_fronts", r.mean_fronts}};
    auto runs = nlohmann::ordered_json::array();
    for (const auto& rec : r.runs) {
        nlohmann::ordered_json x;
        x["run"] = rec.run;
        x["seed"] = rec.seed;
        x["baseline_accuracy"] = rec.baseline_accuracy;
        x["baseline_fold_std"] = rec.baseline_fold_std;
        x["proposed_accuracy"] = rec.proposed_accuracy;
        x["proposed_fold_std"] = rec.proposed_fold_std;
        x["wrapper_accuracy"] = rec.wrapper_accuracy;
        x["gain"] = rec.gain;
        x["selected"] = rec.selected;
        x["discretized"] = rec.discretized;
        x["fronts"] = rec.front_count;
        x["generations"] = rec.generations_run;
        x["stop"] = to_string(rec.stop);
        x["selected_indices"] = rec.best_view.selected;
        auto cuts = nlohmann::ordered_json::array();
        for (const auto& [idx, cut] : rec.best_view.discretized) cuts.push_back({{"index", idx}, {"cut", cut}});
        x["discretized_cuts"] = std::move(cuts);
        runs.push_back(std::move(x));
    }
    j["runs"] = std::move(runs);
    return j.dump(2);
}

std::string pareto_csv(const ParetoExport& pareto) {
    std::ostringstream os;
    os << "rank,gain,error,selected,discretized\n";
    os << std::setprecision(10);
    for (const auto& row : pareto.rows)
        os << row.rank << ',' << row.gain << ',' << row.error << ',' << row.selected << ','
           << row.discretized << '\n';
    return os.str();
}

void emit_report(const RunReport& report, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    write_file(dir / "summary.csv", summary_header() + "\n" + summary_row(report) + "\n");
    write_file(dir / "report.json", report_json(report) + "\n");
}

}  // namespace moedr
