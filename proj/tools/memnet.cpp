#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "memnet/bounds.hpp"
#include "memnet/io.hpp"
#include "memnet/memorizer.hpp"
#include "memnet/projector.hpp"

namespace {

using namespace memnet;

void print_report(std::ostream& os, const MemorizationReport& rep) {
    os << "S=" << rep.params.S << " T=" << rep.params.T << " N=" << rep.params.N
       << " d=" << rep.params.d << " C=" << rep.params.C << "\n";
    os << "R=" << rat_to_string(rep.params.R) << "\n";
    os << "rho=" << rep.params.rho << "\n";
    os << "c=" << rep.params.c << "\n";
    os << "W1=" << rep.params.W1 << "\n";
    os << "W1_used=" << rep.W1_used << "\n";
    os << "L1=" << rep.params.L1 << "\n";
    os << "target_W=" << rep.params.target_W.get_str() << "\n";
    os << "target_L=" << rep.params.target_L << "\n";
    os << "achieved_W=" << rep.achieved_W << "\n";
    os << "achieved_L=" << rep.achieved_L << "\n";
    os << "param_count=" << rep.param_count.get_str() << "\n";
    os << "projection_trials=" << rep.projection_trials << "\n";
    os << "bounded_width_choice=" << (rep.params.bounded_width_choice ? 1 : 0) << "\n";
    os << "strict_constants_ok=" << (rep.strict_constants_ok ? 1 : 0) << "\n";
    os << "verified=" << (rep.verified ? 1 : 0) << "\n";
    os << "mismatch_count=" << rep.mismatches.size() << "\n";
    for (const auto& m : rep.mismatches)
        os << "mismatch index=" << m.index << " expected=" << rat_to_string(m.expected)
           << " got=" << rat_to_string(m.got) << "\n";
    if (!rep.width_note.empty()) os << "width_note=" << rep.width_note << "\n";
}

int run(int argc, char** argv) {
    CLI::App app{"Exact-arithmetic ReLU memorization networks"};
    app.require_subcommand(1);

    // gen
    auto* gen = app.add_subcommand("gen", "Generate a separated dataset");
    int g_N = 10, g_d = 2, g_C = 2;
    std::string g_delta = "1/10", g_out;
    unsigned long g_seed = 1;
    gen->add_option("--N", g_N)->required();
    gen->add_option("--d", g_d)->required();
    gen->add_option("--C", g_C)->required();
    gen->add_option("--delta", g_delta)->required();
    gen->add_option("--seed", g_seed);
    gen->add_option("--out", g_out)->required();

    // construct
    auto* con = app.add_subcommand("construct", "Build a memorizing network");
    std::string c_data, c_out_net, c_report;
    int c_S = 1, c_T = 1, c_max_trials = 64;
    unsigned long c_seed = 1;
    bool c_strict = false;
    con->add_option("--data", c_data)->required();
    con->add_option("--S", c_S)->required();
    con->add_option("--T", c_T)->required();
    con->add_option("--seed", c_seed);
    con->add_option("--max-trials", c_max_trials);
    con->add_flag("--strict-constants", c_strict);
    con->add_option("--out-net", c_out_net);
    con->add_option("--report", c_report);

    // verify
    auto* ver = app.add_subcommand("verify", "Exactly verify a network on a dataset");
    std::string v_net, v_data;
    ver->add_option("--net", v_net)->required();
    ver->add_option("--data", v_data)->required();

    // sweep
    auto* swp = app.add_subcommand("sweep", "Width-depth trade-off table");
    std::string s_data;
    std::vector<int> s_S, s_T;
    unsigned long s_seed = 1;
    long s_limit = 2000;
    swp->add_option("--data", s_data)->required();
    swp->add_option("--S-list", s_S)->required()->delimiter(',');
    swp->add_option("--T-list", s_T)->required()->delimiter(',');
    swp->add_option("--seed", s_seed);
    swp->add_option("--max-build-width", s_limit);

    // bounds
    auto* bnd = app.add_subcommand("bounds", "Capacity lower-bound calculators");
    int b_W = 2, b_L = 1, b_C = 2;
    long long b_N = 2;
    std::string b_delta = "1/10";
    bool b_prop33 = false;
    bnd->add_option("--W", b_W)->required();
    bnd->add_option("--L", b_L)->required();
    bnd->add_option("--N", b_N)->required();
    bnd->add_option("--C", b_C)->required();
    bnd->add_option("--delta", b_delta)->required();
    bnd->add_flag("--prop33", b_prop33);

    // pieces
    auto* pcs = app.add_subcommand("pieces", "Piece count of a 1-D network");
    std::string p_net;
    pcs->add_option("--net", p_net)->required();

    // patterns
    auto* pat = app.add_subcommand("patterns", "Sample sign patterns of random nets");
    int t_W = 2, t_L = 1, t_points = 8, t_C = 2, t_samples = 1000;
    unsigned long t_seed = 1;
    pat->add_option("--W", t_W)->required();
    pat->add_option("--L", t_L)->required();
    pat->add_option("--points", t_points)->required();
    pat->add_option("--C", t_C)->required();
    pat->add_option("--samples", t_samples);
    pat->add_option("--seed", t_seed);

    CLI11_PARSE(app, argc, argv);

    if (gen->parsed()) {
        LabeledDataset ds = gen_dataset(g_N, g_d, g_C, rat_from_string(g_delta), g_seed);
        write_dataset_file(g_out, ds);
        std::cout << "wrote " << g_out << " (N=" << ds.N() << ", d=" << ds.d
                  << ", C=" << ds.C << ")\n";
        return 0;
    }
    if (con->parsed()) {
        LabeledDataset ds = read_dataset_file(c_data);
        ConstructOptions opt;
        opt.seed = c_seed;
        opt.max_trials = c_max_trials;
        opt.strict_constants = c_strict;
        auto [net, rep] = construct(ds, c_S, c_T, opt);
        if (!c_out_net.empty()) write_network_file(c_out_net, net);
        print_report(std::cout, rep);
        if (!c_report.empty()) {
            std::ofstream rf(c_report, std::ios::binary);
            if (!rf) throw std::runtime_error("cannot open for writing: " + c_report);
            print_report(rf, rep);
        }
        return rep.verified && (!c_strict || rep.strict_constants_ok) ? 0 : 1;
    }
    if (ver->parsed()) {
        LabeledDataset ds = read_dataset_file(v_data);
        ReluNetwork net = read_network_file(v_net);
        MemorizationReport rep = verify(net, ds);
        std::cout << "verified=" << (rep.verified ? 1 : 0) << "\n";
        std::cout << "mismatch_count=" << rep.mismatches.size() << "\n";
        for (const auto& m : rep.mismatches)
            std::cout << "mismatch index=" << m.index
                      << " expected=" << rat_to_string(m.expected)
                      << " got=" << rat_to_string(m.got) << "\n";
        return rep.verified ? 0 : 1;
    }
    if (swp->parsed()) {
        LabeledDataset ds = read_dataset_file(s_data);
        SweepOptions opt;
        opt.seed = s_seed;
        opt.max_build_width = s_limit;
        std::vector<SweepRow> rows = sweep(ds, s_S, s_T, opt);
        std::cout << "S\tT\ttarget_W\ttarget_L\t(WL)^2\tparams\tbounded_width\tverified\tnote\n";
        bool all_ok = true;
        for (const auto& r : rows) {
            std::cout << r.S << "\t" << r.T << "\t" << r.target_W.get_str() << "\t"
                      << r.target_L << "\t" << r.WL_sq.get_str() << "\t"
                      << r.param_count.get_str() << "\t" << (r.bounded_width_choice ? 1 : 0)
                      << "\t" << (r.verified ? 1 : 0) << "\t" << r.error << "\n";
            if (!r.verified && r.error.find("build limit") == std::string::npos) all_ok = false;
        }
        for (const auto& r : rows)
            std::cout << "row S=" << r.S << " T=" << r.T
                      << " target_W=" << r.target_W.get_str() << " target_L=" << r.target_L
                      << " WL_sq=" << r.WL_sq.get_str() << " verified=" << (r.verified ? 1 : 0)
                      << "\n";
        return all_ok ? 0 : 1;
    }
    if (bnd->parsed()) {
        const Rat delta = rat_from_string(b_delta);
        Thm32Report t = thm32_feasibility(b_W, b_L, b_N, b_C, delta);
        std::cout << "necessary condition on (W,L) for universal memorization"
                     " (never sufficient)\n";
        std::cout << "T_pack=" << t.T_pack.get_str() << "\n";
        std::cout << "lhs_upper=" << rat_to_string(t.lhs) << "\n";
        std::cout << "rhs_lower=" << rat_to_string(t.rhs) << "\n";
        std::cout << "necessary_condition_holds=" << (t.necessary_condition_holds ? 1 : 0)
                  << "\n";
        std::cout << "lower_bound_value=" << rat_to_string(t.lower_bound_value)
                  << " (up to the absolute constant)\n";
        bool ok = t.necessary_condition_holds;
        if (b_prop33) {
            Prop33Report p = prop33_check(b_W, b_L, b_N, delta);
            const char* regime = p.regime == Regime::exp_small_delta ? "exp-small-delta"
                                 : p.regime == Regime::mid_delta     ? "mid-delta"
                                                                     : "none";
            std::cout << "prop33_regime=" << regime << "\n";
            std::cout << "prop33_ambiguous=" << (p.ambiguous ? 1 : 0) << "\n";
            if (p.regime != Regime::none) {
                std::cout << "prop33_inequality=" << p.inequality << "\n";
                std::cout << "prop33_implied_N_ceiling=" << p.implied_N_ceiling.get_str()
                          << "\n";
                std::cout << "prop33_holds=" << (p.holds ? 1 : 0) << "\n";
                ok = ok && p.holds;
            }
        }
        return ok ? 0 : 1;
    }
    if (pcs->parsed()) {
        ReluNetwork net = read_network_file(p_net);
        PwlFunction g = to_pwl(net);
        Int bound = serra_bound(std::max(1, net.width()), std::max(1, net.depth()));
        std::cout << "pieces=" << g.piece_count() << "\n";
        std::cout << "serra_bound=" << bound.get_str() << "\n";
        return Int(g.piece_count()) <= bound ? 0 : 1;
    }
    if (pat->parsed()) {
        std::vector<Rat> inputs;
        for (int i = 0; i < t_points; ++i)
            inputs.push_back(t_points == 1 ? Rat(0)
                                           : Rat(-1) + Rat(2) * i / (t_points - 1));
        const long count = sample_sign_patterns(t_W, t_L, inputs, t_C, t_samples, t_seed);
        const Int P = (Int(t_L) - 1) * t_W * t_W + (Int(t_L) + 2) * t_W + 1;
        std::cout << "distinct_patterns=" << count << "\n";
        std::cout << "param_count=" << P.get_str() << "\n";
        return 0;
    }
    return 1;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
