// Acceptance suite: one numbered criterion per run (or all, with no
// argument). Each criterion prints a single [PASS]/[FAIL] line, with
// indented detail lines for any failing clause.

#include <algorithm>
#include <array>
#include <chrono>
#include <cstdio>
#include <cstring>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <vector>
#include <sys/wait.h>

#include "credal/credal.hpp"
#include "oracles.hpp"

using namespace credal;

namespace {

struct Checker {
    bool ok = true;
    std::vector<std::string> notes;

    void expect(bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            notes.push_back(what);
        }
    }
    void info(const std::string& what) { notes.push_back("(info) " + what); }
};

void report(int criterion, const std::string& label, const Checker& c) {
    std::printf("[%s] criterion %d: %s\n", c.ok ? "PASS" : "FAIL", criterion, label.c_str());
    for (const auto& note : c.notes) std::printf("       - %s\n", note.c_str());
}

std::string data_path(const std::string& file) {
    return std::string(CREDAL_DATA_DIR) + "/" + file;
}

DissimilarityMatrix countries() { return load_dissimilarity_csv(data_path("countries.csv")); }

EcmddParams countries_params() {
    EcmddParams p;
    p.alpha = 0.95;
    p.beta = 2.0;
    p.delta = 100.0;
    p.eta = 1.0;
    p.gamma = 1.0;
    return p;
}

// Reference grouping of the twelve countries (object order as in the CSV):
// group 0 {Belgium, France, Israel, USA}, group 1 {Brazil, India, Zaire},
// group 2 {China, Cuba, USSR, Yugoslavia}; Egypt belongs to the meta class
// of groups 0 and 1.
constexpr std::array<int, 12> kCountriesGroup{0, 1, 2, 2, -1, 0, 1, 0, 0, 2, 2, 1};
constexpr int kEgypt = 4;

// Published per-init pignistic tables for the countries benchmark, columns
// ordered (group0, group1, group2), rows in CSV object order.
constexpr std::array<std::array<double, 3>, 12> kBetpInitA{{
    {1.0000, 0.0000, 0.0000}, {0.0000, 1.0000, 0.0000}, {0.2323, 0.2294, 0.5383},
    {0.2778, 0.2636, 0.4586}, {0.3755, 0.3686, 0.2558}, {0.4932, 0.2633, 0.2435},
    {0.3125, 0.3650, 0.3226}, {0.4144, 0.3119, 0.2738}, {0.4503, 0.2994, 0.2503},
    {0.2509, 0.2260, 0.5231}, {0.3478, 0.2488, 0.4034}, {0.3081, 0.4336, 0.2583},
}};
constexpr std::array<std::array<double, 3>, 12> kBetpInitB{{
    {1.0000, 0.0000, 0.0000}, {0.0000, 1.0000, 0.0000}, {0.0000, 0.0000, 1.0000},
    {0.2899, 0.2794, 0.4307}, {0.3845, 0.3777, 0.2378}, {0.5149, 0.2555, 0.2297},
    {0.2787, 0.3740, 0.3473}, {0.4231, 0.3051, 0.2719}, {0.4684, 0.2920, 0.2396},
    {0.3167, 0.2849, 0.3984}, {0.3579, 0.2526, 0.3895}, {0.3068, 0.4312, 0.2619},
}};

// Published converged memberships for the fuzzy baseline, same layout; the
// columns follow each run's init order.
constexpr std::array<std::array<double, 3>, 12> kFuzzyInitA{{
    {0.2685, 0.4773, 0.2543}, {0.2820, 0.3419, 0.3761}, {0.4126, 0.2731, 0.3143},
    {0.5374, 0.2235, 0.2391}, {0.2870, 0.3444, 0.3687}, {0.2829, 0.4453, 0.2719},
    {0.0000, 0.0000, 1.0000}, {0.0000, 1.0000, 0.0000}, {0.2371, 0.5319, 0.2311},
    {1.0000, 0.0000, 0.0000}, {0.4478, 0.2819, 0.2703}, {0.2942, 0.3099, 0.3959},
}};
constexpr std::array<std::array<double, 3>, 12> kFuzzyInitB{{
    {0.0000, 0.0000, 1.0000}, {0.3506, 0.2880, 0.3613}, {0.2707, 0.4714, 0.2579},
    {0.0000, 1.0000, 0.0000}, {0.3493, 0.2948, 0.3558}, {1.0000, 0.0000, 0.0000},
    {0.3257, 0.3485, 0.3257}, {0.3627, 0.2215, 0.4158}, {0.4531, 0.1391, 0.4078},
    {0.2312, 0.5342, 0.2346}, {0.2875, 0.4156, 0.2969}, {0.3321, 0.2778, 0.3901},
}};

using Perm = std::array<int, 3>;
const std::array<Perm, 6> kPerms{{{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}}};

// Max abs difference between our pignistic matrix (columns permuted so that
// our cluster perm[g] plays reference group g) and a reference table.
double betp_diff(const std::vector<std::vector<double>>& ours,
                 const std::array<std::array<double, 3>, 12>& ref, const Perm& perm) {
    double worst = 0.0;
    for (std::size_t i = 0; i < 12; ++i)
        for (int g = 0; g < 3; ++g)
            worst = std::max(worst, std::abs(ours[i][static_cast<std::size_t>(perm[static_cast<std::size_t>(g)])] -
                                             ref[i][static_cast<std::size_t>(g)]));
    return worst;
}

Perm best_perm(const std::vector<std::vector<double>>& ours,
               const std::array<std::array<double, 3>, 12>& ref) {
    Perm best = kPerms[0];
    double best_diff = 1e300;
    for (const auto& p : kPerms) {
        const double d = betp_diff(ours, ref, p);
        if (d < best_diff) {
            best_diff = d;
            best = p;
        }
    }
    return best;
}

// Do the hard credal labels reproduce the reference grouping (three crisp
// groups plus Egypt in the meta class of groups 0 and 1) under cluster
// permutation `perm`?
bool labels_match_reference(const std::vector<FocalSet>& hard, const Perm& perm) {
    for (std::size_t i = 0; i < 12; ++i) {
        if (static_cast<int>(i) == kEgypt) {
            const FocalSet want{(1u << perm[0]) | (1u << perm[1])};
            if (!(hard[i] == want)) return false;
        } else {
            const int g = kCountriesGroup[i];
            if (!(hard[i] == FocalSet::singleton(perm[static_cast<std::size_t>(g)]))) return false;
        }
    }
    return true;
}

std::string cli_run(const std::string& args, int* exit_code = nullptr) {
    const std::string cmd = std::string(CREDAL_CLI_PATH) + " " + args + " 2>/dev/null";
    std::string out;
    std::array<char, 4096> buf{};
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return out;
    std::size_t got;
    while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), got);
    const int status = pclose(pipe);
    if (exit_code) *exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return out;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// ---------------------------------------------------------------------------

bool criterion_1() {
    Checker c;
    auto d = countries();
    const EcmddParams params = countries_params();
    const std::vector<std::vector<int>> inits{{9, 7, 6}, {5, 3, 0}};
    const std::array<const std::array<std::array<double, 3>, 12>*, 2> refs{&kBetpInitA,
                                                                           &kBetpInitB};
    for (std::size_t run = 0; run < inits.size(); ++run) {
        const std::string tag = run == 0 ? "init A" : "init B";
        const auto t0 = std::chrono::steady_clock::now();
        auto res = ecmdd_cluster(d, 3, params, inits[run]);
        const double secs = seconds_since(t0);
        c.expect(secs < 1.0, tag + ": runtime " + std::to_string(secs) + "s exceeds 1s");
        c.expect(res.converged, tag + ": did not converge");
        std::vector<int> medoids = res.state.medoids.specific;
        std::sort(medoids.begin(), medoids.end());
        c.expect(medoids == std::vector<int>{0, 1, 2},
                 tag + ": specific medoids are not {Belgium, Brazil, China}");
        const auto betp = pignistic_matrix(res.state.masses);
        const auto hard = harden_max_mass(res.state.masses);
        const Perm perm = best_perm(betp, *refs[run]);
        c.expect(labels_match_reference(hard, perm),
                 tag + ": hard credal labels do not match the reference grouping");
        const double diff = betp_diff(betp, *refs[run], perm);
        c.expect(diff <= 0.05, tag + ": pignistic values deviate by " + std::to_string(diff) +
                                   " (> 0.05) from the published run");
    }
    // Context: the published converged values are a genuine fixed point of
    // this implementation, reproduced far inside the tolerance.
    auto fixed = ecmdd_cluster(d, 3, params, {0, 1, 2});
    const auto betp = pignistic_matrix(fixed.state.masses);
    const Perm identity{0, 1, 2};
    c.info("fixed point {Belgium, Brazil, China}: max pignistic deviation " +
           std::to_string(betp_diff(betp, kBetpInitB, identity)) +
           ", labels match: " +
           (labels_match_reference(harden_max_mass(fixed.state.masses), identity) ? "yes" : "no"));
    report(1, "countries ecmdd reproduction from both documented inits", c);
    return c.ok;
}

bool criterion_2() {
    Checker c;
    auto d = countries();
    FcmddParams params;
    {
        const auto t0 = std::chrono::steady_clock::now();
        auto res = fcmdd_cluster(d, 3, params, {9, 7, 6});
        c.expect(seconds_since(t0) < 1.0, "init A: runtime exceeds 1s");
        c.expect(res.converged, "init A: did not converge");
        std::vector<int> medoids = res.medoids;
        std::sort(medoids.begin(), medoids.end());
        c.expect(medoids == std::vector<int>{6, 7, 9},
                 "init A: medoids are not {Israel, India, USSR}");
        double worst = 0.0;
        for (int i = 0; i < 12; ++i)
            for (int j = 0; j < 3; ++j)
                worst = std::max(worst, std::abs(res.memberships.membership(i, j) -
                                                 kFuzzyInitA[static_cast<std::size_t>(i)]
                                                            [static_cast<std::size_t>(j)]));
        c.expect(worst <= 0.02, "init A: memberships deviate by " + std::to_string(worst));
    }
    {
        const auto t0 = std::chrono::steady_clock::now();
        auto res = fcmdd_cluster(d, 3, params, {5, 3, 0});
        c.expect(seconds_since(t0) < 1.0, "init B: runtime exceeds 1s");
        c.expect(res.converged, "init B: did not converge");
        std::vector<int> medoids = res.medoids;
        std::sort(medoids.begin(), medoids.end());
        c.expect(medoids == std::vector<int>{0, 3, 5},
                 "init B: medoids are not {Belgium, France, Cuba}");
        double worst = 0.0;
        for (int i = 0; i < 12; ++i)
            for (int j = 0; j < 3; ++j)
                worst = std::max(worst, std::abs(res.memberships.membership(i, j) -
                                                 kFuzzyInitB[static_cast<std::size_t>(i)]
                                                            [static_cast<std::size_t>(j)]));
        c.expect(worst <= 0.02, "init B: memberships deviate by " + std::to_string(worst));
    }
    report(2, "countries fcmdd reproduction incl. the clumped-init local minimum", c);
    return c.ok;
}

struct RandomInstance {
    DissimilarityMatrix d;
    int c;
    std::vector<int> init;
};

RandomInstance make_instance(std::mt19937_64& rng) {
    const int n = 5 + static_cast<int>(rng() % 46);  // [5, 50]
    const int c = 2 + static_cast<int>(rng() % 2);   // {2, 3}
    DissimilarityMatrix d(n, oracles::random_symmetric(n, rng));
    std::vector<int> init = random_medoids(n, c, rng());
    return RandomInstance{std::move(d), c, std::move(init)};
}

bool criterion_3(std::vector<CredalPartition>* keep_masses = nullptr) {
    Checker c;
    std::mt19937_64 rng(987654321);
    int worst_iters = 0;
    for (int t = 0; t < 100; ++t) {
        RandomInstance inst = make_instance(rng);
        EcmddParams ep;
        auto eres = ecmdd_cluster(inst.d, inst.c, ep, inst.init);
        c.expect(eres.converged && eres.state.iteration < 200,
                 "ecmdd instance " + std::to_string(t) + " did not converge before 200 iterations");
        for (std::size_t s = 1; s < eres.trace.size(); ++s)
            c.expect(eres.trace[s] <= eres.trace[s - 1] + 1e-12,
                     "ecmdd instance " + std::to_string(t) + " objective increased at step " +
                         std::to_string(s));
        worst_iters = std::max(worst_iters, eres.state.iteration);
        FcmddParams fp;
        auto fres = fcmdd_cluster(inst.d, inst.c, fp, inst.init);
        c.expect(fres.converged && fres.iterations < 200,
                 "fcmdd instance " + std::to_string(t) + " did not converge before 200 iterations");
        for (std::size_t s = 1; s < fres.trace.size(); ++s)
            c.expect(fres.trace[s] <= fres.trace[s - 1] + 1e-12,
                     "fcmdd instance " + std::to_string(t) + " objective increased at step " +
                         std::to_string(s));
        if (keep_masses) keep_masses->push_back(eres.state.masses);
    }
    c.info("slowest run used " + std::to_string(worst_iters) + " iterations");
    report(3, "objective monotonicity and termination on 100 random instances", c);
    return c.ok;
}

bool criterion_4() {
    Checker c;
    std::mt19937_64 rng(24601);
    std::uniform_real_distribution<double> unif(0.05, 1.0);
    for (int t = 0; t < 20; ++t) {
        const int n = 3 + static_cast<int>(rng() % 3);  // [3, 5]
        DissimilarityMatrix d(n, oracles::random_symmetric(n, rng));
        std::vector<int> medoid_pair = random_medoids(n, 2, rng());
        EcmddParams p;
        p.alpha = unif(rng);
        p.delta = 0.5 + unif(rng);
        auto assign = make_assignment(d, medoid_pair, p);
        auto grid = focal_grid(d, assign, p);
        auto masses = update_masses(grid, p);
        for (int i = 0; i < n; ++i) {
            const std::vector<double> analytic = masses.row(i);
            const std::vector<double> dists{0.0, grid.at(i, 1), grid.at(i, 2), grid.at(i, 3)};
            const double j_analytic =
                oracles::row_objective(analytic, dists, 2, p.alpha, p.beta, p.effective_delta());
            double best_grid = 1e300;
            std::vector<double> point(4, 0.0);
            oracles::enumerate_simplex(4, 0.05, point, 0, 1.0,
                                       [&](const std::vector<double>& q) {
                                           best_grid = std::min(
                                               best_grid,
                                               oracles::row_objective(q, dists, 2, p.alpha, p.beta,
                                                                      p.effective_delta()));
                                       });
            c.expect(j_analytic <= best_grid + 1e-12,
                     "instance " + std::to_string(t) + " row " + std::to_string(i) +
                         ": grid search beat the analytic row");
            double best_random = 1e300;
            for (int r = 0; r < 10000; ++r) {
                std::vector<double> q(4);
                double total = 0.0;
                for (double& v : q) {
                    v = -std::log(1.0 - std::uniform_real_distribution<double>(0.0, 1.0)(rng));
                    total += v;
                }
                for (double& v : q) v /= total;
                best_random = std::min(best_random,
                                       oracles::row_objective(q, dists, 2, p.alpha, p.beta,
                                                              p.effective_delta()));
            }
            c.expect(j_analytic <= best_random + 1e-12,
                     "instance " + std::to_string(t) + " row " + std::to_string(i) +
                         ": a random row beat the analytic row");
        }
    }
    report(4, "analytic mass rows dominate grid search and random rows", c);
    return c.ok;
}

bool criterion_5() {
    Checker c;
    std::mt19937_64 rng(555);
    for (int t = 0; t < 50; ++t) {
        const std::size_t n = 2 + rng() % 40;
        std::vector<int> pred(n), ref(n);
        for (std::size_t i = 0; i < n; ++i) {
            pred[i] = static_cast<int>(rng() % 5);
            ref[i] = static_cast<int>(rng() % 5);
        }
        auto classic = precision_recall_ri(pred, ref);
        auto ev = evidential_metrics(crisp_to_singletons(pred), ref);
        c.expect(ev.ep == classic.precision && ev.er == classic.recall &&
                     ev.eri == classic.rand_index,
                 "crisp partition " + std::to_string(t) + " broke the degeneracy identity");
    }
    report(5, "evidential metrics collapse exactly to the classical ones on crisp labels", c);
    return c.ok;
}

bool criterion_6() {
    Checker c;
    std::mt19937_64 rng(31415);
    for (int t = 0; t < 100; ++t) {
        const int frame = 2 + static_cast<int>(rng() % 3);  // c in {2,3,4}
        MassVector m{frame, oracles::random_mass(frame, rng)};
        const auto got = pignistic(m);
        const auto want = oracles::pignistic_bruteforce(m.values, frame);
        for (int k = 0; k < frame; ++k)
            c.expect(std::abs(got[static_cast<std::size_t>(k)] -
                              want[static_cast<std::size_t>(k)]) <= 1e-12,
                     "mass vector " + std::to_string(t) + ": pignistic mismatch");
        for (unsigned a = 1; a < (1u << frame); ++a)
            c.expect(credibility(m, FocalSet{a}) <= plausibility(m, FocalSet{a}) + 1e-12,
                     "mass vector " + std::to_string(t) + ": Bel > Pl");
    }
    report(6, "pignistic oracle agreement at 1e-12 and Bel <= Pl", c);
    return c.ok;
}

bool criterion_7() {
    Checker c;
    std::vector<CredalPartition> partitions;
    {
        // same instances as criterion 3
        std::mt19937_64 rng(987654321);
        for (int t = 0; t < 100; ++t) {
            RandomInstance inst = make_instance(rng);
            EcmddParams ep;
            auto eres = ecmdd_cluster(inst.d, inst.c, ep, inst.init);
            FcmddParams fp;
            fcmdd_cluster(inst.d, inst.c, fp, inst.init);
            partitions.push_back(eres.state.masses);
        }
    }
    for (std::size_t t = 0; t < partitions.size(); ++t) {
        const double v = validity_index(partitions[t]);
        c.expect(v >= 0.0 && v <= 1.0,
                 "run " + std::to_string(t) + ": validity index " + std::to_string(v) +
                     " out of [0,1]");
    }
    {
        CredalPartition specific(2, 3, {0, 1, 0, 0, 0, 0, 1, 0, 0, 1, 0, 0});
        c.expect(validity_index(specific) == 0.0, "fully specific partition is not exactly 0");
        CredalPartition frame(3, 2, {0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 1});
        c.expect(validity_index(frame) == 1.0, "all-mass-on-frame partition is not exactly 1");
    }
    report(7, "validity index bounded on all runs, exact at the anchors", c);
    return c.ok;
}

bool criterion_8() {
    Checker c;
    Graph g = load_edge_list(data_path("karate.edges"), Indexing::OneBased);
    c.expect(g.n == 34 && g.edges.size() == 78, "karate graph has the wrong shape");
    auto d = jaccard_dissimilarity(g, /*include_self=*/true);
    EcmddParams p;
    p.alpha = 0.05;
    p.beta = 2.0;
    p.delta = 100.0;
    p.eta = 1.0;
    p.gamma = 1.0;
    auto init = farthest_first(d, 2, 0);
    auto res = ecmdd_cluster(d, 2, p, init);
    c.expect(res.converged, "karate run did not converge");
    for (int i = 0; i < 34; ++i) {
        double sum = 0.0;
        for (std::size_t j = 0; j < res.state.masses.focal_count(); ++j)
            sum += res.state.masses.mass(i, j);
        c.expect(std::abs(sum - 1.0) <= 1e-9,
                 "mass row " + std::to_string(i) + " is not normalized");
    }
    auto ref = load_labels(data_path("karate_labels.txt"));
    require_label_count(ref, 34, "karate labels");
    auto classic = precision_recall_ri(harden_max_pignistic(res.state.masses), ref.labels);
    auto ev = evidential_metrics(harden_max_mass(res.state.masses), ref.labels);
    c.expect(ev.ep >= classic.precision,
             "evidential precision " + std::to_string(ev.ep) + " fell below precision " +
                 std::to_string(classic.precision));
    char line[160];
    std::snprintf(line, sizeof line,
                  "P=%.4f R=%.4f RI=%.4f EP=%.4f ER=%.4f ERI=%.4f (published Jaccard row: "
                  "EP=0.7277 ER=0.5092 ERI=0.6684, reported not asserted)",
                  classic.precision, classic.recall, classic.rand_index, ev.ep, ev.er, ev.eri);
    c.info(line);
    report(8, "karate workflow completes with EP >= P", c);
    return c.ok;
}

bool criterion_9() {
    Checker c;
    const std::string ecmdd_cmd = "cluster --input " + data_path("countries.csv") +
                                  " --c 3 --alpha 0.95 --init-indices 9,7,6";
    const std::string fcmdd_cmd = "cluster --input " + data_path("countries.csv") +
                                  " --algorithm fcmdd --c 3 --init-indices 9,7,6";
    for (const auto& [tag, cmd] : std::vector<std::pair<std::string, std::string>>{
             {"ecmdd", ecmdd_cmd}, {"fcmdd", fcmdd_cmd}}) {
        int code1 = -1, code2 = -1;
        const std::string a = cli_run(cmd, &code1);
        const std::string b = cli_run(cmd, &code2);
        c.expect(code1 == 0 && code2 == 0, tag + ": cli run failed");
        c.expect(!a.empty() && a == b, tag + ": repeated runs are not byte-identical");
    }
    report(9, "repeated runs emit byte-identical reports", c);
    return c.ok;
}

}  // namespace

int main(int argc, char** argv) {
    const std::vector<std::function<bool()>> criteria{
        [] { return criterion_1(); }, [] { return criterion_2(); },
        [] { return criterion_3(); }, [] { return criterion_4(); },
        [] { return criterion_5(); }, [] { return criterion_6(); },
        [] { return criterion_7(); }, [] { return criterion_8(); },
        [] { return criterion_9(); }};
    bool all_ok = true;
    if (argc > 1) {
        const int pick = std::atoi(argv[1]);
        if (pick < 1 || pick > static_cast<int>(criteria.size())) {
            std::fprintf(stderr, "usage: %s [1-%zu]\n", argv[0], criteria.size());
            return 2;
        }
        all_ok = criteria[static_cast<std::size_t>(pick - 1)]();
    } else {
        for (const auto& run : criteria) all_ok = run() && all_ok;
    }
    return all_ok ? 0 : 1;
}
