// Command-line front end. `run_cli` is the whole program; the executable in
// tools/ only forwards argv and the standard streams to it.
//
// Exit codes: 0 success, 1 invalid input or usage, 2 solver infeasible.
#pragma once

#include <fstream>
#include <iostream>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "coordination/dsbs.hpp"
#include "coordination/info.hpp"
#include "coordination/io.hpp"
#include "coordination/pmf.hpp"
#include "coordination/region.hpp"
#include "coordination/simulator.hpp"
#include "coordination/ulsr.hpp"
#include "coordination/wyner.hpp"

namespace coordination::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalid = 1;
inline constexpr int kExitInfeasible = 2;

namespace detail {

inline std::ofstream open_output(const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::invalid_argument("cannot write " + path);
    return f;
}

inline RateTriple rate_triple(const std::vector<double>& v) {
    return RateTriple::make(v.at(0), v.at(1), v.at(2));
}

struct SolverFlags {
    std::string dist;
    std::optional<std::size_t> card;
    std::size_t restarts = 50;
    double tol = 1e-9;
    std::uint64_t seed = 0;
    std::string out;
};

inline void add_solver_flags(CLI::App* cmd, SolverFlags& f) {
    cmd->add_option("--dist", f.dist, "distribution file (JSON)")->required()->check(CLI::ExistingFile);
    cmd->add_option("--card", f.card, "auxiliary alphabet size")->check(CLI::PositiveNumber);
    cmd->add_option("--restarts", f.restarts, "number of restarts")->check(CLI::PositiveNumber);
    cmd->add_option("--tol", f.tol, "objective change tolerance")->check(CLI::PositiveNumber);
    cmd->add_option("--seed", f.seed, "random seed");
    cmd->add_option("--out", f.out, "write result JSON here");
}

inline SolverOptions solver_options(const SolverFlags& f, std::size_t threads) {
    SolverOptions o;
    o.restarts = f.restarts;
    o.tol_objective = f.tol;
    o.seed = f.seed;
    o.threads = threads;
    return o;
}

}  // namespace detail

inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Rate trade-offs and scheme simulation for coordinated generation of correlated sources",
                 "coordination"};
    app.require_subcommand(1);
    app.fallthrough();
    std::size_t threads = 1;
    app.add_option("--threads", threads, "worker threads (0 = all cores)");

    // info
    auto* info = app.add_subcommand("info", "entropy, mutual information or distance from independence");
    std::string info_dist;
    std::string measure;
    info->add_option("--dist", info_dist, "distribution file (JSON)")->required()->check(CLI::ExistingFile);
    info->add_option("--measure", measure, "entropy | mi | tv")
        ->required()
        ->check(CLI::IsMember({"entropy", "mi", "tv"}));

    // wyner
    auto* wyner = app.add_subcommand("wyner", "Wyner common information (no shared randomness rate)");
    detail::SolverFlags wflags;
    detail::add_solver_flags(wyner, wflags);

    // ulsr
    auto* ulsr = app.add_subcommand("ulsr", "optimal rate under unlimited shared randomness");
    detail::SolverFlags uflags;
    detail::add_solver_flags(ulsr, uflags);
    std::string form = "maxavg";
    ulsr->add_option("--form", form, "maxpair | maxavg")->check(CLI::IsMember({"maxpair", "maxavg"}));

    // dsbs
    auto* dsbs_cmd = app.add_subcommand("dsbs", "interpolated-channel curve for a doubly symmetric binary source");
    double a = 0.0;
    std::size_t points = 101;
    std::string dsbs_out;
    bool want_tstar = false;
    dsbs_cmd->add_option("--a", a, "crossover probability")->required();
    dsbs_cmd->add_option("--points", points, "grid size including both endpoints");
    dsbs_cmd->add_option("--out", dsbs_out, "write the curve CSV here");
    dsbs_cmd->add_flag("--tstar", want_tstar, "print t* only");

    // region
    auto* region = app.add_subcommand("region", "rate-region membership");
    region->require_subcommand(1);
    auto* check = region->add_subcommand("check", "inner bound for a given auxiliary");
    std::string region_dist;
    std::string region_aux;
    std::vector<double> region_rates;
    check->add_option("--dist", region_dist, "distribution file (JSON)")->required()->check(CLI::ExistingFile);
    check->add_option("--aux", region_aux, "auxiliary channel file (JSON)")->required()->check(CLI::ExistingFile);
    check->add_option("--rates", region_rates, "R,R1,R2")->required()->delimiter(',')->expected(3);
    auto* xy_equal = region->add_subcommand("xy-equal", "exact region when X = Y");
    double hx = 0.0;
    std::vector<double> xy_rates;
    xy_equal->add_option("--hx", hx, "H(X) in bits")->required();
    xy_equal->add_option("--rates", xy_rates, "R,R1,R2")->required()->delimiter(',')->expected(3);

    // simulate
    auto* simulate = app.add_subcommand("simulate", "Monte Carlo run of the coding scheme");
    std::string sim_dist;
    std::string sim_aux;
    std::size_t n = 0;
    std::vector<double> sim_rates;
    std::size_t trials = 0;
    std::uint64_t sim_seed = 0;
    double eps = 0.1;
    std::string sim_out;
    simulate->add_option("--dist", sim_dist, "distribution file (JSON)")->required()->check(CLI::ExistingFile);
    simulate->add_option("--aux", sim_aux, "channel p(u|x,y) file (JSON)")->required()->check(CLI::ExistingFile);
    simulate->add_option("--n", n, "block length")->required()->check(CLI::PositiveNumber);
    simulate->add_option("--rates", sim_rates, "R0,RSTAR,RT1,RT2")->required()->delimiter(',')->expected(4);
    simulate->add_option("--trials", trials, "number of trials")->required()->check(CLI::PositiveNumber);
    simulate->add_option("--seed", sim_seed, "random seed")->required();
    simulate->add_option("--eps", eps, "joint type tolerance")->check(CLI::PositiveNumber);
    simulate->add_option("--out", sim_out, "write the report JSON here");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n\n" << app.help();
        return kExitInvalid;
    }

    try {
        if (*info) {
            const JointPmf q = load_joint_pmf(info_dist);
            double v = 0.0;
            if (measure == "entropy") {
                v = entropy(q);
            } else if (measure == "mi") {
                v = mutual_information(q);
            } else {
                v = tv_distance(q, JointPmf::product(marginal(q, Axis::X), marginal(q, Axis::Y)));
            }
            out << format_number(v) << '\n';
        } else if (*wyner) {
            const JointPmf q = load_joint_pmf(wflags.dist);
            const std::size_t card = wflags.card.value_or(q.nx() * q.ny());
            const WynerResult r = wyner_ci(q, card, detail::solver_options(wflags, threads));
            if (wflags.out.empty()) {
                out << format_number(r.value) << '\n';
            } else {
                nlohmann::json j;
                j["value"] = r.value;
                j["markov_defect"] = r.markov_defect;
                j["lower_bound"] = r.lower_bound;
                j["upper_bound"] = r.upper_bound;
                j["channel"] = to_json(r.channel);
                detail::open_output(wflags.out) << j.dump(2) << '\n';
                out << "wyner value " << format_number(r.value) << " markov_defect "
                    << format_number(r.markov_defect) << " written to " << wflags.out << '\n';
            }
        } else if (*ulsr) {
            const JointPmf q = load_joint_pmf(uflags.dist);
            const UlsrForm f = form == "maxpair" ? UlsrForm::MaxPair : UlsrForm::MaxAvg;
            const UlsrResult r = ulsr_rate(q, f, detail::solver_options(uflags, threads), uflags.card.value_or(0));
            if (uflags.out.empty()) {
                out << format_number(r.value) << '\n';
            } else {
                nlohmann::json j;
                j["value"] = r.value;
                j["form"] = form;
                j["term_cond"] = r.term_cond;
                j["term_joint"] = r.term_joint;
                j["channel"] = to_json(r.channel);
                detail::open_output(uflags.out) << j.dump(2) << '\n';
                out << "ulsr value " << format_number(r.value) << " written to " << uflags.out << '\n';
            }
        } else if (*dsbs_cmd) {
            if (want_tstar) {
                out << format_number(dsbs::t_star(a)) << '\n';
            } else {
                const auto curve = dsbs::emit_curve(a, points);
                if (dsbs_out.empty()) {
                    dsbs::write_curve_csv(out, curve);
                } else {
                    auto f = detail::open_output(dsbs_out);
                    dsbs::write_curve_csv(f, curve);
                    out << "wrote " << curve.size() << " points to " << dsbs_out << '\n';
                }
            }
        } else if (*region) {
            bool member = false;
            if (*check) {
                const JointPmf q = load_joint_pmf(region_dist);
                const AuxChannel aux = load_aux_channel(region_aux, q.nx(), q.ny());
                member = in_achievable_region(q, aux, detail::rate_triple(region_rates));
            } else {
                member = xy_equal_region(hx, detail::rate_triple(xy_rates));
            }
            out << (member ? "member" : "not-member") << '\n';
        } else if (*simulate) {
            const JointPmf q = load_joint_pmf(sim_dist);
            sim::SimConfig cfg{q,
                               load_aux_channel(sim_aux, q.nx(), q.ny()),
                               n,
                               sim::SimRates::make(sim_rates.at(0), sim_rates.at(1), sim_rates.at(2), sim_rates.at(3)),
                               eps,
                               trials,
                               sim_seed,
                               threads};
            const sim::SimReport report = sim::run_trials(cfg);
            const nlohmann::json j = sim::to_json(report, cfg);
            if (sim_out.empty()) {
                out << j.dump(2) << '\n';
            } else {
                detail::open_output(sim_out) << j.dump(2) << '\n';
                out << "tv_per_letter " << format_number(report.tv_per_letter) << " mstar_failure_rate "
                    << format_number(report.mstar_failure_rate) << " trials " << report.trials_run << '\n';
            }
        }
    } catch (const SolverInfeasible& e) {
        err << "error: " << e.what() << '\n';
        return kExitInfeasible;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitInvalid;
    }
    return kExitOk;
}

}  // namespace coordination::cli
