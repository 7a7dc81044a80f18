// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit if any fails.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "moedr/c45.hpp"
#include "moedr/entropy.hpp"
#include "moedr/experiment.hpp"
#include "moedr/nsga2.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace moedr;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t) {
    return std::chrono::duration<double>(Clock::now() - t).count();
}

struct Outcome {
    bool pass = true;
    std::ostringstream detail;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            detail << " [failed: " << what << "]";
        }
    }
};

int failures = 0;

void report(int id, const std::string& title, const std::function<void(Outcome&)>& body) {
    Outcome out;
    const auto start = Clock::now();
    try {
        body(out);
    } catch (const std::exception& e) {
        out.pass = false;
        out.detail << " [exception: " << e.what() << "]";
    }
    if (!out.pass) ++failures;
    std::printf("%s criterion %d: %s (%.2fs)%s\n", out.pass ? "PASS" : "FAIL", id, title.c_str(),
                seconds_since(start), out.detail.str().c_str());
    std::fflush(stdout);
}

bool near(double a, double b, double tol) { return std::abs(a - b) <= tol; }

std::string fmt(double v, int digits = 4) {
    std::ostringstream os;
    os.setf(std::ios::fixed);
    os.precision(digits);
    os << v;
    return os.str();
}

// ---------------------------------------------------------------------------------------------

void worked_example(Outcome& out) {
    const auto start = Clock::now();
    const auto& iris = fixtures::dataset("iris");
    const auto all = ClassDistribution::of(iris.labels, 3);
    const auto col = iris.values.column(1);
    std::vector<std::size_t> above(3, 0), below(3, 0);
    for (std::size_t r = 0; r < iris.rows(); ++r)
        ++(col[r] > 2.32 ? above : below)[static_cast<std::size_t>(iris.labels[r])];
    const double h = class_entropy(all);
    const double h1 = class_entropy(ClassDistribution(above));
    const double h2 = class_entropy(ClassDistribution(below));
    const double hs = split_entropy(ClassDistribution(above), ClassDistribution(below));
    const double g = info_gain(iris.labels, col, 2.32, 3);
    const double elapsed = seconds_since(start);
    out.detail << " Ent(S)=" << fmt(h) << " Ent(S1)=" << fmt(h1) << " Ent(S2)=" << fmt(h2)
               << " Ent(S,a)=" << fmt(hs) << " Gain=" << fmt(g);
    out.require(near(h, 1.5850, 1e-4), "Ent(S)");
    out.require(near(h1, 1.5832, 1e-4), "Ent(S1)");
    out.require(near(h2, 1.0613, 1e-4), "Ent(S2)");
    out.require(near(hs, 1.5554, 1e-4), "split entropy");
    out.require(near(g, 0.0296, 1e-4), "gain");
    out.require(elapsed < 1.0, "runtime");
}

void transform_parity(Outcome& out) {
    const auto& iris = fixtures::dataset("iris");
    const double rows[3][4] = {{5.1, 3.5, 1.4, 0.2}, {7.0, 3.2, 4.7, 1.4}, {5.8, 2.7, 5.1, 1.9}};
    const double want[3][3] = {{5.1, 1, 0}, {7.0, 1, 0}, {5.8, 0, 1}};
    std::vector<std::size_t> idx;
    for (const auto& q : rows) {
        for (std::size_t r = 0; r < iris.rows(); ++r) {
            const auto v = iris.values.row(r);
            if (std::equal(v.begin(), v.end(), std::begin(q))) {
                idx.push_back(r);
                break;
            }
        }
    }
    out.require(idx.size() == 3, "rows present in iris");
    if (idx.size() != 3) return;
    const auto t = transform(iris.subset(idx), decode(fixtures::iris_worked_chromosome()));
    out.require(t.cols() == 3, "three output columns");
    std::vector<std::size_t> mismatched;
    for (std::size_t r = 0; r < 3; ++r) {
        out.detail << " (";
        bool row_ok = t.cols() == 3;
        for (std::size_t c = 0; c < t.cols(); ++c) {
            out.detail << (c ? "," : "") << t.values(r, c);
            row_ok = row_ok && c < 3 && t.values(r, c) == want[r][c];
        }
        out.detail << ")";
        if (!row_ok) mismatched.push_back(r + 1);
    }
    for (auto r : mismatched) out.require(false, "row " + std::to_string(r) + " differs from the expected transform");
}

void oracle_suites(Outcome& out) {
    const auto start = Clock::now();
    Rng rng(20240601);

    int gain_bad = 0;
    for (int t = 0; t < 200; ++t) {
        const std::size_t m = 1 + rng.below(64);
        const std::size_t k = 2 + rng.below(3);
        std::vector<int> y(m);
        std::vector<double> x(m);
        for (std::size_t i = 0; i < m; ++i) {
            y[i] = static_cast<int>(rng.below(k));
            x[i] = std::round(rng.uniform(0, 20)) / 2;
        }
        const double cut = x[rng.below(m)] + (rng.coin() ? 0.25 : 0.0);
        if (std::abs(info_gain(y, x, cut, k) - oracle::info_gain(y, x, cut)) > 1e-12) ++gain_bad;
    }

    int sort_bad = 0;
    int crowd_bad = 0;
    for (int t = 0; t < 100; ++t) {
        std::vector<ObjectiveVector> pts(1 + rng.below(50));
        for (auto& p : pts) {
            p.f1 = -static_cast<double>(rng.below(10)) / 4;
            p.f2 = static_cast<double>(rng.below(10)) / 10;
        }
        auto got = fast_nondominated_sort(pts).fronts;
        auto want = oracle::peel_fronts(pts);
        for (auto& f : got) std::sort(f.begin(), f.end());
        for (auto& f : want) std::sort(f.begin(), f.end());
        if (got != want) ++sort_bad;
        for (const auto& f : got) {
            std::vector<ObjectiveVector> members;
            for (auto i : f) members.push_back(pts[i]);
            const auto a = crowding_distance(members);
            const auto b = oracle::crowding(members);
            for (std::size_t i = 0; i < a.size(); ++i) {
                const bool ok = (std::isinf(a[i]) && std::isinf(b[i])) || std::abs(a[i] - b[i]) <= 1e-9;
                if (!ok) ++crowd_bad;
            }
        }
    }

    int split_bad = 0;
    for (int t = 0; t < 50; ++t) {
        Matrix x(12, 3);
        std::vector<int> y(12);
        for (std::size_t r = 0; r < 12; ++r) {
            for (std::size_t c = 0; c < 3; ++c) x(r, c) = static_cast<double>(rng.below(6));
            y[r] = static_cast<int>(rng.below(2 + (t % 2)));
        }
        const std::size_t k = 2 + (t % 2);
        std::vector<std::size_t> rows(12);
        for (std::size_t i = 0; i < 12; ++i) rows[i] = i;
        const auto got = choose_split(x, y, rows, k, {}, TreeParams{});
        const auto want = oracle::root_split(x, y, k, 2);
        if (got.has_value() != want.has_value()) {
            ++split_bad;
        } else if (got && (got->attribute != want->attribute || std::abs(got->threshold - want->threshold) > 1e-12)) {
            ++split_bad;
        }
    }
    const double elapsed = seconds_since(start);
    out.detail << " gain_mismatch=" << gain_bad << "/200 sort_mismatch=" << sort_bad
               << "/100 crowding_mismatch=" << crowd_bad << " c45_root_mismatch=" << split_bad << "/50";
    out.require(gain_bad == 0, "info gain");
    out.require(sort_bad == 0, "non-dominated sort");
    out.require(crowd_bad == 0, "crowding");
    out.require(split_bad == 0, "C4.5 root split");
    out.require(elapsed < 30.0, "runtime");
}

double baseline(const Dataset& ds, const LearnerKind& kind, std::size_t runs, std::uint64_t seed) {
    double sum = 0.0;
    for (std::size_t r = 0; r < runs; ++r)
        sum += evaluate_final(ds, DecodedView::identity(ds.cols()), kind, 10, run_seeds(seed, r).outer).mean;
    return sum / static_cast<double>(runs);
}

void baselines(Outcome& out) {
    const auto start = Clock::now();
    struct Case {
        const char* data;
        LearnerKind kind;
        double target;
    };
    const Case cases[] = {{"wisconsin", LearnerKind::nb(), 0.966},
                          {"pima", LearnerKind::nb(), 0.734},
                          {"newthyroid", LearnerKind::nb(), 0.967},
                          {"wisconsin", LearnerKind::svm_linear(), 0.969},
                          {"wisconsin", LearnerKind::c45(), 0.946}};
    for (const auto& c : cases) {
        const double acc = baseline(fixtures::dataset(c.data), c.kind, 10, 1);
        out.detail << ' ' << c.data << '-' << c.kind.name() << '=' << fmt(acc, 3) << "(target " << c.target << ")";
        out.require(near(acc, c.target, 0.03), std::string(c.data) + "-" + c.kind.name());
    }
    out.require(seconds_since(start) < 120.0, "runtime");
}

void proposed_vs_baseline(Outcome& out) {
    const auto start = Clock::now();
    int not_worse = 0, better = 0;
    for (const char* name : {"wisconsin", "pima", "newthyroid", "heart", "saheart"}) {
        ExperimentConfig cfg;
        cfg.learner = LearnerKind::nb();
        cfg.runs = 5;
        cfg.engine.population = 30;
        cfg.engine.generations = 50;
        cfg.seed = 1;
        const auto rep = run_experiment(cfg, fixtures::dataset(name)).report;
        not_worse += rep.proposed_mean >= rep.baseline_mean - 0.01;
        better += rep.proposed_mean > rep.baseline_mean;
        out.detail << ' ' << name << ' ' << fmt(rep.baseline_mean, 3) << "->" << fmt(rep.proposed_mean, 3);
        std::fflush(stdout);
    }
    out.detail << " not_worse=" << not_worse << "/5 better=" << better << "/5";
    out.require(not_worse >= 4, "at least 4 of 5 within 0.01 of baseline");
    out.require(better >= 2, "at least 2 of 5 strictly better");
    out.require(seconds_since(start) < 1200.0, "runtime");
}

void engine_invariants(Outcome& out) {
    const auto& iris = fixtures::dataset("iris");
    EngineConfig cfg;
    cfg.population = 20;
    cfg.generations = 40;
    cfg.stall_generations = 1000;
    const WrapperConfig wrapper{LearnerKind::nb(), 5, 3};

    bool size_ok = true, elitist = true, sound = true;
    double best_f1 = std::numeric_limits<double>::infinity();
    double best_f2 = best_f1;
    std::size_t checks = 0;
    Rng rng(99);
    const auto res = evolve(iris, cfg, wrapper, rng, [&](const GenerationSnapshot& s) {
        size_ok = size_ok && s.population.size() == cfg.population;
        double f1 = std::numeric_limits<double>::infinity(), f2 = f1;
        for (const auto& ind : s.population) {
            f1 = std::min(f1, ind.objectives.f1);
            f2 = std::min(f2, ind.objectives.f2);
        }
        elitist = elitist && f1 <= best_f1 && f2 <= best_f2;
        best_f1 = f1;
        best_f2 = f2;
        if (s.generation % 10 == 0 && s.merged_fronts) {
            ++checks;
            for (auto p : s.merged_fronts->fronts.front())
                for (const auto& q : s.merged) sound = sound && !dominates(q.objectives, s.merged[p].objectives);
        }
    });
    out.require(size_ok, "population size constant");
    out.require(elitist, "per-objective best never regresses");
    out.require(sound && checks >= 4, "first front non-dominated on the merged population");
    out.require(res.population.size() == cfg.population, "final population size");

    ExperimentConfig exp;
    exp.runs = 2;
    exp.engine.population = 12;
    exp.engine.generations = 6;
    exp.seed = 5;
    const auto a = run_experiment(exp, iris);
    const auto b = run_experiment(exp, iris);
    const bool same = report_json(a.report) == report_json(b.report) &&
                      pareto_csv(a.fronts[0]) == pareto_csv(b.fronts[0]) &&
                      pareto_csv(a.fronts[1]) == pareto_csv(b.fronts[1]);
    out.require(same, "same seed reproduces byte-identical outputs");
    out.detail << " generations=" << res.generations_run << " front_checks=" << checks;
}

void label_copy_recovery(Outcome& out) {
    // Feature 0 is the label; three noise features follow.
    Dataset ds;
    ds.name = "label_copy";
    const std::size_t m = 80;
    ds.values = Matrix(m, 4);
    ds.class_names = {"0", "1"};
    Rng data_rng(314);
    for (std::size_t r = 0; r < m; ++r) {
        const int y = static_cast<int>(r % 2);
        ds.labels.push_back(y);
        ds.values(r, 0) = y;
        for (std::size_t c = 1; c < 4; ++c) ds.values(r, c) = std::round(data_rng.uniform(0, 4));
    }
    for (std::size_t c = 0; c < 4; ++c) {
        AttributeMeta meta;
        meta.name = "a" + std::to_string(c);
        ds.attributes.push_back(meta);
    }
    const auto b = compute_bounds(ds);
    for (std::size_t c = 0; c < 4; ++c) {
        ds.attributes[c].lower_bound = b[c].first;
        ds.attributes[c].upper_bound = b[c].second;
    }

    // Exhaustive oracle over every bit pattern with cuts on a fixed grid.
    const WrapperConfig wrapper{LearnerKind::nb(), 5, 17};
    const SelectionProblem problem(ds, wrapper);
    const std::vector<double> grid{0.5, 1.5, 2.5};
    std::vector<ObjectiveVector> all;
    std::function<void(std::size_t, Chromosome&)> enumerate = [&](std::size_t j, Chromosome& c) {
        if (j == 4) {
            all.push_back(problem.evaluate(c).objectives);
            return;
        }
        for (int bits = 0; bits < 4; ++bits) {
            c.genes[j].select = bits & 1;
            c.genes[j].discretize = bits & 2;
            const auto& cuts = c.genes[j].discretize ? grid : std::vector<double>{grid[0]};
            for (double cut : cuts) {
                c.genes[j].cut = cut;
                enumerate(j + 1, c);
            }
        }
    };
    Chromosome c;
    c.genes.resize(4);
    enumerate(0, c);
    const auto oracle_fronts = oracle::peel_fronts(all);
    bool oracle_zero = false;
    for (auto i : oracle_fronts.front()) oracle_zero = oracle_zero || all[i].f2 == 0.0;
    out.require(oracle_zero, "oracle front contains an f2=0 solution");

    EngineConfig cfg;
    cfg.population = 20;
    cfg.generations = 20;
    std::size_t first_hit = 0;
    bool hit = false;
    Rng rng(2718);
    const auto res = evolve(problem.bounds(), cfg, problem.evaluator(), rng, [&](const GenerationSnapshot& s) {
        if (hit) return;
        for (const auto& ind : s.population)
            if (ind.rank == 1 && ind.objectives.f2 == 0.0) {
                hit = true;
                first_hit = s.generation;
            }
    });
    bool final_zero = false;
    for (auto i : res.fronts.fronts.front()) final_zero = final_zero || res.population[i].objectives.f2 == 0.0;
    out.detail << " oracle_patterns=" << all.size() << " first_generation_with_f2=0: "
               << (hit ? std::to_string(first_hit) : std::string("none"));
    out.require(hit && final_zero, "engine reaches f2=0 on front 1 within 20 generations");
}

}  // namespace

int main() {
    report(1, "worked information-gain example", worked_example);
    report(2, "transform parity on worked rows", transform_parity);
    report(3, "oracle suites", oracle_suites);
    report(4, "10x10-fold baseline accuracies", baselines);
    report(5, "proposed vs baseline (NB, pop 30, 50 gens, 5 runs)", proposed_vs_baseline);
    report(6, "engine invariants", engine_invariants);
    report(7, "label-copy recovery", label_copy_recovery);
    std::printf("%s: %d criteria failed\n", failures ? "FAIL" : "PASS", failures);
    return failures ? 1 : 0;
}
