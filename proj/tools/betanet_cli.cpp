// betanet: command line front end for the beta tables, the score and the
// bound calculators. Outputs are CSV (header row, %.17g floats); every run
// can drop a JSON manifest next to its output.

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "betanet/bayesnet.hpp"
#include "betanet/betatable.hpp"
#include "betanet/bounds.hpp"
#include "betanet/errors.hpp"
#include "betanet/experiment.hpp"
#include "betanet/iproj.hpp"
#include "betanet/mcint.hpp"
#include "betanet/numeric.hpp"
#include "betanet/score.hpp"
#include "betanet/stepcdf.hpp"

using namespace betanet;
using json = nlohmann::json;

namespace {

constexpr int kExitDomain = 2;
constexpr int kExitNoConvergence = 3;

struct Output {
    std::string path = "-";
    std::string manifest;
    std::ofstream file;

    std::ostream& open() {
        if (path == "-") return std::cout;
        file.open(path);
        if (!file) throw LoadError(path, 0, "cannot open for writing");
        return file;
    }
};

struct Manifest {
    json j;
    Manifest(const std::string& command, std::uint64_t seed = 0) {
        j["command"] = command;
        j["seed"] = seed;
        j["parameters"] = json::object();
        j["artifacts"] = json::array();
    }
    template <class T>
    void param(const std::string& k, const T& v) { j["parameters"][k] = v; }
    void write(const Output& out) {
        if (out.path != "-") j["artifacts"].push_back(out.path);
        std::string where = out.manifest;
        if (where.empty() && out.path != "-") where = out.path + ".manifest.json";
        if (where.empty()) return;
        std::ofstream f(where);
        if (!f) throw LoadError(where, 0, "cannot open for writing");
        f << j.dump(2) << "\n";
    }
};

void add_output(CLI::App* cmd, Output& out) {
    cmd->add_option("-o,--out", out.path, "output file, - for stdout");
    cmd->add_option("--manifest", out.manifest, "run manifest path (default <out>.manifest.json)");
}

void set_threads(int p) {
    if (p > 0) omp_set_num_threads(p);
}

std::string table_path_or_env(const std::string& given) {
    if (!given.empty()) return given;
    if (const char* e = std::getenv("BETA_TABLE_PATH")) return e;
    throw LoadError("<none>", 0, "no table given (--table or BETA_TABLE_PATH)");
}

std::string dag_string(const Dag& g) {
    std::string s;
    for (int v = 0; v < g.n; ++v) {
        if (v) s += ';';
        s += std::to_string(v) + ':';
        if (g.parents[v].empty()) s += '-';
        for (size_t i = 0; i < g.parents[v].size(); ++i) {
            if (i) s += ',';
            s += std::to_string(g.parents[v][i]);
        }
    }
    return s;
}

// ---- beta-exact ----
struct ExactArgs {
    int N = 0;
    double eta = 0.01;
    std::vector<double> gammas;
    int parallel = 1;
    int ceiling = 300;
    Output out;
};

int cmd_beta_exact(const ExactArgs& a) {
    if (a.N > a.ceiling)
        throw DomainError("N = " + std::to_string(a.N) + " exceeds the exact ceiling " + std::to_string(a.ceiling) +
                          "; use beta-mc");
    set_threads(a.parallel);
    StepCdf cdf = a.parallel > 1 ? exact_beta_cdf_parallel(a.N, a.eta, 4, a.parallel) : exact_beta_cdf(a.N, a.eta);
    Output out = {a.out.path, a.out.manifest, {}};
    std::ostream& os = out.open();
    if (a.gammas.empty()) {
        os << "tau,mass,cdf\n";
        double c = 0;
        for (const auto& [k, m] : cdf.jumps()) {
            c += m;
            os << fmt17(k) << ',' << fmt17(m) << ',' << fmt17(c) << '\n';
        }
    } else {
        os << "gamma,beta\n";
        for (double g : a.gammas) os << fmt17(g) << ',' << fmt17(cdf.cumulative_at(g)) << '\n';
    }
    Manifest m("beta-exact");
    m.param("n_samples", a.N);
    m.param("eta", a.eta);
    m.param("gamma", a.gammas);
    m.param("parallel", a.parallel);
    m.j["total_mass"] = cdf.total_mass();
    m.write(out);
    return 0;
}

// ---- beta-mc ----
struct McArgs {
    int N = 0;
    double eta = 0.01, gamma = 0;
    std::uint64_t seed = 1;
    McParams mc;
    Output out;
};

void add_mc_flags(CLI::App* c, McParams& mc) {
    c->add_option("--precision-percent", mc.precision_percent, "stopping precision in percent")->capture_default_str();
    c->add_option("--confidence", mc.confidence, "stopping confidence")->capture_default_str();
    c->add_option("--max-iterations", mc.max_iterations)->capture_default_str();
    c->add_option("--record-freq", mc.record_freq)->capture_default_str();
    c->add_option("--stop-check-freq", mc.stop_check_freq)->capture_default_str();
}

int cmd_beta_mc(McArgs& a) {
    IntegrandContext ctx{a.eta, a.N, a.gamma};
    McResult r = monte_carlo_integrate(ctx, a.mc, a.seed);
    Output out = {a.out.path, a.out.manifest, {}};
    std::ostream& os = out.open();
    os << "iteration,estimate\n";
    for (const auto& [n, v] : r.iterations) os << n << ',' << fmt17(v) << '\n';
    std::cerr << "beta=" << fmt17(r.final_estimate) << " iterations=" << r.iterations_run
              << (r.stopped_by_criterion ? " stopped by criterion" : " NOT converged") << "\n";
    Manifest m("beta-mc", a.seed);
    m.param("n_samples", a.N);
    m.param("eta", a.eta);
    m.param("gamma", a.gamma);
    m.param("precision_percent", a.mc.precision_percent);
    m.param("confidence", a.mc.confidence);
    m.param("max_iterations", a.mc.max_iterations);
    m.j["final_estimate"] = r.final_estimate;
    m.j["converged"] = r.stopped_by_criterion;
    m.write(out);
    return r.stopped_by_criterion ? 0 : kExitNoConvergence;
}

// ---- build-table ----
struct BuildArgs {
    double eta = 0.01;
    BuildOptions opts;
    int threads = 0;
    std::vector<int> skip;
    Output out;
};

int cmd_build_table(BuildArgs& a) {
    if (a.out.path == "-") throw DomainError("build-table needs --out");
    set_threads(a.threads);
    a.opts.parallel = a.threads != 1;
    TableGrids grids;
    std::erase_if(grids.n_list, [&](int N) { return std::find(a.skip.begin(), a.skip.end(), N) != a.skip.end(); });
    BuildReport rep;
    BetaTable t = build_table(a.eta, grids, a.opts, &rep);
    t.save(a.out.path);
    std::cerr << "exact cells " << rep.exact_cells << ", mc cells " << rep.mc_cells << ", unconverged "
              << rep.unconverged << ", dropped " << rep.dropped << "\n";
    Manifest m("build-table", a.opts.seed);
    m.param("eta", a.eta);
    m.param("exact_cutoff", a.opts.exact_cutoff);
    m.param("precision_percent", a.opts.mc.precision_percent);
    m.param("confidence", a.opts.mc.confidence);
    m.param("skip_n", a.skip);
    m.j["report"] = {{"exact", rep.exact_cells}, {"mc", rep.mc_cells}, {"unconverged", rep.unconverged},
                     {"dropped", rep.dropped}};
    m.write(a.out);
    return rep.unconverged ? kExitNoConvergence : 0;
}

// ---- learn ----
struct LearnArgs {
    std::string data, table, collection = "all";
    double kappa = 0.5;
    int d = 2;
    int threads = 0;
    bool no_boost = false, total_n = false;
    Output out;
};

ScoreConfig make_config(const std::string& table, double kappa, int d, const std::string& coll, bool no_boost,
                        bool total_n) {
    ScoreConfig cfg;
    cfg.kappa = kappa;
    cfg.use_boost = !no_boost;
    cfg.stratum_n = !total_n;
    cfg.collection.d = d;
    if (coll == "parent") cfg.collection.kind = SeparatingCollection::Kind::ParentBased;
    else if (coll != "all") throw DomainError("collection must be all or parent");
    if (cfg.use_boost) cfg.table = std::make_shared<const BetaTable>(BetaTable::load(table_path_or_env(table)));
    return cfg;
}

void write_score_row(std::ostream& os, const Dag& g, const ScoreBreakdown& s) {
    os << dag_string(g) << ',' << g.edge_count() << ',' << fmt17(s.log_likelihood) << ','
       << fmt17(s.complexity_penalty) << ',' << fmt17(s.sparsity_boost) << ',' << fmt17(s.total) << '\n';
}

int cmd_learn(LearnArgs& a) {
    set_threads(a.threads);
    std::ifstream in(a.data);
    if (!in) throw LoadError(a.data, 0, "cannot open");
    EmpiricalCounts counts = read_counts(in, a.data);
    ScoreConfig cfg = make_config(a.table, a.kappa, a.d, a.collection, a.no_boost, a.total_n);
    LearnResult r = learn_all(counts, a.d, cfg);
    Output out = {a.out.path, a.out.manifest, {}};
    std::ostream& os = out.open();
    os << "dag,edges,log_likelihood,complexity_penalty,sparsity_boost,total\n";
    write_score_row(os, r.best, r.best_score);
    for (const auto& c : r.candidates)
        if (!(c.dag == r.best)) write_score_row(os, c.dag, c.score);
    std::cerr << "best: " << dag_string(r.best) << "  score " << fmt17(r.best_score.total) << "\n";
    Manifest m("learn");
    m.param("data", a.data);
    m.param("table", cfg.table ? table_path_or_env(a.table) : std::string());
    m.param("kappa", a.kappa);
    m.param("d", a.d);
    m.param("collection", a.collection);
    m.j["best"] = dag_string(r.best);
    m.write(out);
    return 0;
}

// ---- experiment ----
struct ExperimentArgs {
    std::string generator = "independent", network, table, collection = "all";
    double tau = 0.1, kappa = 0.5, confidence = 0.95;
    int nodes = 3, d = 2, trials = 100, threads = 0;
    long N = 500;
    std::uint64_t seed = 1;
    Output out;
};

int cmd_experiment(ExperimentArgs& a) {
    set_threads(a.threads);
    std::unique_ptr<BayesNet> truth;
    if (!a.network.empty()) {
        std::ifstream in(a.network);
        if (!in) throw LoadError(a.network, 0, "cannot open");
        truth = std::make_unique<BayesNet>(read_network(in, a.network));
    } else if (a.generator == "independent") {
        truth = std::make_unique<BayesNet>(two_node_network(0));
    } else if (a.generator == "dependent") {
        truth = std::make_unique<BayesNet>(two_node_network(a.tau));
    } else if (a.generator == "chain") {
        truth = std::make_unique<BayesNet>(chain_network(a.nodes, a.tau));
    } else if (a.generator == "collider") {
        truth = std::make_unique<BayesNet>(collider_network());
    } else {
        throw DomainError("unknown generator " + a.generator);
    }
    if (truth->dag.n > 4) throw DomainError("experiments are limited to n <= 4");
    ScoreConfig cfg = make_config(a.table, a.kappa, a.d, a.collection, false, false);
    RecoverySummary s = run_recovery(*truth, a.N, a.trials, a.seed, a.d, cfg, a.confidence);
    Output out = {a.out.path, a.out.manifest, {}};
    std::ostream& os = out.open();
    os << "trial,seed,recovered,learned,total_score\n";
    for (const auto& t : s.trials)
        os << t.trial << ',' << t.seed << ',' << int(t.recovered) << ',' << dag_string(t.learned) << ','
           << fmt17(t.score.total) << '\n';
    double frac = double(s.recovered) / a.trials;
    std::cerr << "recovered " << s.recovered << "/" << a.trials << " = " << fmt17(frac) << ", Wilson "
              << a.confidence << " interval [" << fmt17(s.wilson.lo) << ", " << fmt17(s.wilson.hi) << "]\n";
    Manifest m("experiment", a.seed);
    m.param("generator", a.network.empty() ? a.generator : a.network);
    m.param("tau", a.tau);
    m.param("n_samples", a.N);
    m.param("trials", a.trials);
    m.param("kappa", a.kappa);
    m.param("d", a.d);
    m.param("table", table_path_or_env(a.table));
    m.j["recovered"] = s.recovered;
    m.j["wilson"] = {s.wilson.lo, s.wilson.hi};
    m.write(out);
    return 0;
}

// ---- bounds ----
struct BoundsArgs {
    BoundParams p;
    std::string theorem = "all", format = "csv";
    bool plain_w = false;
    Output out;
};

int cmd_bounds(BoundsArgs& a) {
    a.p.form.exp_form = !a.plain_w;
    std::vector<Theorem> which =
        a.theorem == "all" ? all_theorems() : std::vector<Theorem>{theorem_from_name(a.theorem)};
    Output out = {a.out.path, a.out.manifest, {}};
    std::ostream& os = out.open();
    bool csv = a.format == "csv";
    if (!csv && a.format != "text") throw DomainError("format must be csv or text");
    if (csv) os << "theorem,quantity,value\n";
    int failures = 0;
    for (Theorem t : which) {
        std::string name = theorem_name(t);
        try {
            auto qs = theorem_quantities(t, a.p);
            double mx = 0;
            for (const auto& q : qs) {
                mx = std::max(mx, q.value);
                if (csv) os << name << ",\"" << q.label << "\"," << fmt17(q.value) << '\n';
                else os << std::left << std::setw(26) << name << std::setw(20) << fmt17(q.value) << q.label << '\n';
            }
            if (csv) os << name << ",max," << fmt17(mx) << '\n';
            else os << std::left << std::setw(26) << name << std::setw(20) << fmt17(mx) << "max\n";
        } catch (const DomainError& e) {
            ++failures;
            if (csv) os << name << ",\"not applicable: " << e.what() << "\",nan\n";
            else os << std::left << std::setw(26) << name << "not applicable: " << e.what() << '\n';
        }
    }
    Manifest m("bounds");
    const auto& p = a.p;
    m.j["parameters"] = {{"epsilon", p.epsilon}, {"eta", p.eta}, {"delta", p.delta}, {"zeta", p.zeta},
                         {"kappa", p.kappa}, {"lambda", p.lambda}, {"mu", p.mu}, {"theta", p.theta},
                         {"big_theta", p.big_theta}, {"n", p.n}, {"d", p.d}, {"L", p.L}, {"m", p.m},
                         {"m_hat", p.m_hat}, {"x_card", p.x_card}, {"g_params", p.g_params},
                         {"edges", p.edges}, {"exp_form", p.form.exp_form}, {"theorem", a.theorem}};
    m.write(out);
    return failures && a.theorem != "all" ? kExitDomain : 0;
}

// ---- iproj ----
struct IprojArgs {
    double eta = 0.05, gamma = 0;
    int resolution = 10000;
    Output out;
};

int cmd_iproj(IprojArgs& a) {
    KlCurve c = kl_curve(a.eta, a.gamma, a.resolution);
    Output out = {a.out.path, a.out.manifest, {}};
    std::ostream& os = out.open();
    os << "x,kl\n";
    for (const auto& s : c.samples) os << fmt17(s.x) << ',' << fmt17(s.kl) << '\n';
    std::ostringstream summary;
    summary << "minima (" << c.method << "):";
    for (const auto& m : c.minima) summary << " x=" << fmt17(m.x) << " kl=" << fmt17(m.kl);
    std::cerr << summary.str() << "\n";
    Manifest m("iproj");
    m.param("eta", a.eta);
    m.param("gamma", a.gamma);
    m.param("resolution", a.resolution);
    m.j["method"] = c.method;
    m.j["construction"] = "equal-marginal product moved along its fixed-marginal path to tau = gamma";
    json mins = json::array();
    for (const auto& mm : c.minima) mins.push_back({mm.x, mm.kl});
    m.j["minima"] = mins;
    auto th = conjecture_threshold();
    m.j["threshold"] = {{"t", th.t}, {"eta", th.eta}};
    m.write(out);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"beta tables, sparsity-boosted structure scores and sample-size bounds"};
    app.require_subcommand(1);

    ExactArgs ex;
    auto* c_ex = app.add_subcommand("beta-exact", "exact beta_N CDF by type enumeration");
    c_ex->add_option("--n-samples", ex.N, "N")->required();
    c_ex->add_option("--eta", ex.eta)->capture_default_str();
    c_ex->add_option("--gamma", ex.gammas, "evaluate at these gammas instead of dumping the CDF");
    c_ex->add_option("--parallel", ex.parallel, "threads and branch modulus")->capture_default_str();
    c_ex->add_option("--exact-ceiling", ex.ceiling)->capture_default_str();
    add_output(c_ex, ex.out);

    McArgs mc;
    auto* c_mc = app.add_subcommand("beta-mc", "Monte Carlo estimate of beta_N(gamma)");
    c_mc->add_option("--n-samples", mc.N)->required();
    c_mc->add_option("--eta", mc.eta)->capture_default_str();
    c_mc->add_option("--gamma", mc.gamma)->required();
    c_mc->add_option("--seed", mc.seed)->capture_default_str();
    add_mc_flags(c_mc, mc.mc);
    add_output(c_mc, mc.out);

    BuildArgs bt;
    auto* c_bt = app.add_subcommand("build-table", "compute and save a log beta table");
    c_bt->add_option("--eta", bt.eta)->capture_default_str();
    c_bt->add_option("--seed", bt.opts.seed)->capture_default_str();
    c_bt->add_option("--exact-cutoff", bt.opts.exact_cutoff)->capture_default_str();
    c_bt->add_option("--parallel", bt.threads, "threads (0: OpenMP default, 1: serial)")->capture_default_str();
    c_bt->add_option("--skip-n", bt.skip, "leave these N out of the grid");
    add_mc_flags(c_bt, bt.opts.mc);
    add_output(c_bt, bt.out);

    LearnArgs ln;
    auto* c_ln = app.add_subcommand("learn", "exhaustive structure search on a counts file");
    c_ln->add_option("--data", ln.data, "counts file")->required();
    c_ln->add_option("--table", ln.table, "beta table (default $BETA_TABLE_PATH)");
    c_ln->add_option("--kappa", ln.kappa)->capture_default_str();
    c_ln->add_option("--d", ln.d, "maximum in-degree")->capture_default_str();
    c_ln->add_option("--collection", ln.collection, "all | parent")->capture_default_str();
    c_ln->add_option("--parallel", ln.threads)->capture_default_str();
    c_ln->add_flag("--no-boost", ln.no_boost, "plain MDL score");
    c_ln->add_flag("--total-n", ln.total_n, "look up beta at N instead of the stratum count");
    add_output(c_ln, ln.out);

    ExperimentArgs xp;
    auto* c_xp = app.add_subcommand("experiment", "seeded recovery sweep");
    c_xp->add_option("--generator", xp.generator, "independent | dependent | chain | collider")
        ->capture_default_str();
    c_xp->add_option("--network", xp.network, "network file instead of a generator");
    c_xp->add_option("--tau", xp.tau, "dependence of generated links")->capture_default_str();
    c_xp->add_option("--nodes", xp.nodes, "chain length")->capture_default_str();
    c_xp->add_option("--n-samples", xp.N)->capture_default_str();
    c_xp->add_option("--trials", xp.trials)->capture_default_str();
    c_xp->add_option("--seed", xp.seed)->capture_default_str();
    c_xp->add_option("--table", xp.table);
    c_xp->add_option("--kappa", xp.kappa)->capture_default_str();
    c_xp->add_option("--d", xp.d)->capture_default_str();
    c_xp->add_option("--confidence", xp.confidence)->capture_default_str();
    c_xp->add_option("--parallel", xp.threads)->capture_default_str();
    add_output(c_xp, xp.out);

    BoundsArgs bd;
    auto* c_bd = app.add_subcommand("bounds", "sample-size bounds");
    c_bd->add_option("--theorem", bd.theorem, "all or one of the theorem names")->capture_default_str();
    c_bd->add_option("--format", bd.format, "csv | text")->capture_default_str();
    c_bd->add_option("--epsilon", bd.p.epsilon)->capture_default_str();
    c_bd->add_option("--eta", bd.p.eta)->capture_default_str();
    c_bd->add_option("--delta", bd.p.delta)->capture_default_str();
    c_bd->add_option("--zeta", bd.p.zeta)->capture_default_str();
    c_bd->add_option("--kappa", bd.p.kappa)->capture_default_str();
    c_bd->add_option("--lambda", bd.p.lambda)->capture_default_str();
    c_bd->add_option("--mu", bd.p.mu)->capture_default_str();
    c_bd->add_option("--theta", bd.p.theta)->capture_default_str();
    c_bd->add_option("--big-theta", bd.p.big_theta)->capture_default_str();
    c_bd->add_option("--n", bd.p.n)->capture_default_str();
    c_bd->add_option("--d", bd.p.d)->capture_default_str();
    c_bd->add_option("--L", bd.p.L)->capture_default_str();
    c_bd->add_option("--m", bd.p.m)->capture_default_str();
    c_bd->add_option("--m-hat", bd.p.m_hat)->capture_default_str();
    c_bd->add_option("--x-card", bd.p.x_card)->capture_default_str();
    c_bd->add_option("--g-params", bd.p.g_params, "|G|; 0 = n 2^d - 1")->capture_default_str();
    c_bd->add_option("--edges", bd.p.edges, "|E(G)|; 0 = n d - 1")->capture_default_str();
    c_bd->add_flag("--plain-w", bd.plain_w, "use 1/(12 W(D/8)) in F~");
    add_output(c_bd, bd.out);

    IprojArgs ip;
    auto* c_ip = app.add_subcommand("iproj", "KL curve over equal-marginal products");
    c_ip->add_option("--eta", ip.eta)->capture_default_str();
    c_ip->add_option("--gamma", ip.gamma)->capture_default_str();
    c_ip->add_option("--resolution", ip.resolution)->capture_default_str();
    add_output(c_ip, ip.out);

    CLI11_PARSE(app, argc, argv);

    try {
        if (c_ex->parsed()) return cmd_beta_exact(ex);
        if (c_mc->parsed()) return cmd_beta_mc(mc);
        if (c_bt->parsed()) return cmd_build_table(bt);
        if (c_ln->parsed()) return cmd_learn(ln);
        if (c_xp->parsed()) return cmd_experiment(xp);
        if (c_bd->parsed()) return cmd_bounds(bd);
        if (c_ip->parsed()) return cmd_iproj(ip);
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitDomain;
    } catch (const LoadError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitDomain;
    }
    return 0;
}
