// cuspdet: command-line front end.
//
//   cuspdet spectrum --group thrice-punctured-sphere --max-length 6
//   cuspdet trace --group thrice-punctured-sphere --cutoff 10 --t 0.5,1,2
//   cuspdet det --group thrice-punctured-sphere --cutoff 12
//   cuspdet scatter-check --model model.json --t 0.5,1,2
//   cuspdet pinch-sweep --spectrum base.json --pinch 0 --ell-log 0.1,0.001,21 --baseline 0
//   cuspdet selfcheck
//
// Any option may come from a JSON object given with --config; keys are option
// names with '-' or '_'. Options on the command line win. CUSPDET_THREADS
// sets the default thread count.
//
// Exit status: 0 success, 2 precondition violation, 3 numerical failure,
// 4 I/O or parse error. Failures print one JSON object on stderr.

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "checks.hpp"
#include "cuspdet/cusp_model.hpp"
#include "cuspdet/degeneration.hpp"
#include "cuspdet/error.hpp"
#include "cuspdet/fuchsian.hpp"
#include "cuspdet/io.hpp"
#include "cuspdet/trace_terms.hpp"
#include "cuspdet/zeta.hpp"

using namespace cuspdet;
using io::json;

namespace {

int exit_code(Errc c)
{
    switch (c) {
    case Errc::non_convergence:
    case Errc::expansion_mismatch:
    case Errc::tail_unbounded:
    case Errc::overflow:
    case Errc::budget_exceeded:
        return 3;
    case Errc::io:
    case Errc::parse:
        return 4;
    default:
        return 2;
    }
}

int fail(const std::string& kind, const std::string& message, int code, const json& extra = json::object())
{
    json j = {{"error", kind}, {"message", message}, {"exit_code", code}};
    j.update(extra);
    std::cerr << j.dump() << '\n';
    return code;
}

int default_threads()
{
    if (const char* s = std::getenv("CUSPDET_THREADS")) {
        const int n = std::atoi(s);
        if (n >= 1) return n;
    }
    return 1;
}

std::string lower_ext(const std::string& path)
{
    const auto dot = path.rfind('.');
    if (dot == std::string::npos) return "";
    std::string e = path.substr(dot + 1);
    for (auto& ch : e) ch = char(std::tolower(static_cast<unsigned char>(ch)));
    return e;
}

// --config support: JSON object -> argv tokens, skipping options already on the command line
std::vector<std::string> config_args(const std::string& path, const std::set<std::string>& explicit_opts,
                                     bool have_command)
{
    const json j = io::parse_json(io::read_file(path));
    if (!j.is_object()) throw Error(Errc::parse, "--config must hold a JSON object");
    std::vector<std::string> out;
    if (j.contains("command") && !have_command) out.push_back(j.at("command").get<std::string>());
    for (const auto& [key, value] : j.items()) {
        if (key == "command") continue;
        std::string name = key;
        for (auto& ch : name)
            if (ch == '_') ch = '-';
        if (explicit_opts.count(name)) continue;
        const std::string flag = "--" + name;
        if (value.is_boolean()) {
            if (value.get<bool>()) out.push_back(flag);
        } else if (value.is_array()) {
            std::string joined;
            for (const auto& v : value) {
                if (!joined.empty()) joined += ',';
                joined += v.is_string() ? v.get<std::string>() : v.dump();
            }
            out.push_back(flag);
            out.push_back(joined);
        } else if (value.is_string()) {
            out.push_back(flag);
            out.push_back(value.get<std::string>());
        } else if (value.is_number()) {
            out.push_back(flag);
            out.push_back(value.is_number_float() ? io::format_double(value.get<double>()) : value.dump());
        } else {
            throw Error(Errc::parse, "--config: unsupported value for '" + key + "'");
        }
    }
    return out;
}

struct Source {
    std::string group;
    std::string spectrum_path;
    double cutoff = 0;
    int max_word_length = 5000;
    double prune_factor = 16.0;
};

void add_source_options(CLI::App* sub, Source& src)
{
    sub->add_option("--group", src.group, "built-in group: thrice-punctured-sphere | once-punctured-torus(x)");
    sub->add_option("--spectrum", src.spectrum_path, "length spectrum file (.json or .csv)");
    sub->add_option("--cutoff,--max-length", src.cutoff, "length cutoff when enumerating --group");
    sub->add_option("--max-word-length", src.max_word_length, "word length bound for enumeration")->capture_default_str();
    sub->add_option("--prune-factor", src.prune_factor, "Frobenius-norm pruning factor")->capture_default_str();
}

fuchsian::LengthSpectrum load_spectrum(const Source& src, int threads)
{
    if (!src.spectrum_path.empty() == !src.group.empty())
        throw Error(Errc::domain, "give exactly one of --group or --spectrum");
    if (!src.spectrum_path.empty()) {
        const std::string text = io::read_file(src.spectrum_path);
        if (lower_ext(src.spectrum_path) == "csv") {
            std::istringstream is(text);
            return io::read_spectrum_csv(is);
        }
        return io::spectrum_from_json(io::parse_json(text));
    }
    if (!(src.cutoff > 0.0)) throw Error(Errc::domain, "--cutoff is required with --group");
    fuchsian::EnumerationOptions opt;
    opt.threads = threads;
    opt.prune_factor = src.prune_factor;
    return fuchsian::enumerate_length_spectrum(fuchsian::builtin_group(src.group), src.cutoff, src.max_word_length, opt);
}

cusp_model::CuspFamily load_starts(const std::vector<double>& starts, int cusps)
{
    if (starts.empty()) return cusp_model::CuspFamily::reference(cusps);
    if (int(starts.size()) != cusps) throw Error(Errc::domain, "--starts needs one value per cusp");
    cusp_model::CuspFamily f{starts};
    f.validate();
    return f;
}

// every option of the subcommand with its effective value, for CSV headers
io::Provenance provenance(const CLI::App* sub)
{
    io::Provenance p;
    p.emplace_back("command", "cuspdet " + sub->get_name());
    for (const CLI::Option* o : sub->get_options()) {
        if (o->get_lnames().empty() || o->get_lnames()[0] == "help") continue;
        std::string value;
        if (o->count()) {
            for (const auto& r : o->results()) value += (value.empty() ? "" : ",") + r;
        } else {
            value = o->get_default_str();
        }
        if (value.empty()) value = "(unset)";
        p.emplace_back(o->get_lnames()[0], value);
    }
    return p;
}

void emit(const std::string& path, const std::string& content)
{
    if (path.empty() || path == "-") {
        std::cout << content;
        std::cout.flush();
    } else {
        io::write_file(path, content);
    }
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Spectral invariants of hyperbolic surfaces with cusps"};
    app.name("cuspdet");
    app.require_subcommand(1);
    std::string config_path;
    app.add_option("--config", config_path, "JSON file with option values");

    int threads = default_threads();
    std::string output = "-";
    std::string format = "csv";
    auto add_common = [&](CLI::App* sub, bool with_format) {
        sub->add_option("--threads", threads, "worker threads (default from CUSPDET_THREADS)")->capture_default_str();
        sub->add_option("-o,--output", output, "output file, '-' for stdout")->capture_default_str();
        if (with_format)
            sub->add_option("--format", format, "csv | json")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
    };

    // spectrum
    auto* spectrum_cmd = app.add_subcommand("spectrum", "enumerate a length spectrum");
    std::string sp_group;
    double sp_max_length = 0;
    int sp_max_word = 5000;
    fuchsian::EnumerationOptions sp_opt;
    spectrum_cmd->add_option("--group", sp_group, "built-in group")->required();
    spectrum_cmd->add_option("--max-length", sp_max_length, "largest geodesic length")->required();
    spectrum_cmd->add_option("--max-word-length", sp_max_word, "word length bound")->capture_default_str();
    spectrum_cmd->add_option("--prune-factor", sp_opt.prune_factor, "Frobenius-norm pruning factor")->capture_default_str();
    spectrum_cmd->add_option("--merge-tol", sp_opt.merge_tol, "lengths closer than this are merged")->capture_default_str();
    spectrum_cmd->add_option("--max-nodes", sp_opt.max_nodes, "search budget")->capture_default_str();
    add_common(spectrum_cmd, true);

    // trace
    auto* trace_cmd = app.add_subcommand("trace", "geometric side of the relative heat trace");
    Source tr_src;
    std::vector<double> tr_t, tr_starts;
    add_source_options(trace_cmd, tr_src);
    trace_cmd->add_option("--t", tr_t, "times")->required()->delimiter(',');
    trace_cmd->add_option("--starts", tr_starts, "cusp start heights a_j (default all 1)")->delimiter(',');
    add_common(trace_cmd, true);

    // det
    auto* det_cmd = app.add_subcommand("det", "relative determinant");
    Source det_src;
    double det_t_max = 0;
    zeta::DeterminantOptions det_opt;
    std::vector<double> det_starts;
    add_source_options(det_cmd, det_src);
    det_cmd->add_option("--t-max", det_t_max, "large-t cut (default: largest the truncation rule allows)");
    det_cmd->add_option("--trunc-eps", det_opt.trunc_eps, "spectrum truncation tolerance")->capture_default_str();
    det_cmd->add_option("--min-decay-rate", det_opt.engine.min_decay_rate, "smallest accepted tail decay")->capture_default_str();
    det_cmd->add_option("--rel-tol", det_opt.engine.rel_tol, "quadrature relative tolerance")->capture_default_str();
    det_cmd->add_option("--abs-tol", det_opt.engine.abs_tol, "quadrature absolute tolerance")->capture_default_str();
    det_cmd->add_option("--starts", det_starts, "cusp start heights a_j (default all 1)")->delimiter(',');
    add_common(det_cmd, false);

    // scatter-check
    auto* scat_cmd = app.add_subcommand("scatter-check", "scattering integral against its resonance sum");
    std::string model_path;
    std::vector<double> sc_t;
    double sc_tol = 1e-6;
    scat_cmd->add_option("--model", model_path, "ScatteringModel JSON")->required();
    scat_cmd->add_option("--t", sc_t, "times")->required()->delimiter(',');
    scat_cmd->add_option("--tolerance", sc_tol, "largest accepted relative residual")->capture_default_str();
    add_common(scat_cmd, true);

    // pinch-sweep
    auto* sweep_cmd = app.add_subcommand("pinch-sweep", "log-determinant along a pinching family");
    Source sw_src;
    std::vector<int> sw_pinch;
    std::vector<double> sw_ell, sw_ell_log;
    double sw_baseline = NAN;
    std::string sw_eigs_path;
    double sw_eig_scale = 1.0;
    degeneration::SweepOptions sw_opt;
    add_source_options(sweep_cmd, sw_src);
    sweep_cmd->add_option("--pinch", sw_pinch, "indices of the pinched entries")->delimiter(',');
    auto* ell_opt = sweep_cmd->add_option("--ell", sw_ell, "decreasing pinch lengths")->delimiter(',');
    auto* ell_log_opt =
        sweep_cmd->add_option("--ell-log", sw_ell_log, "from,to,count: log-spaced decreasing grid")->delimiter(',')->expected(3);
    ell_opt->excludes(ell_log_opt);
    sweep_cmd->add_option("--baseline", sw_baseline, "log det_hyp^alpha of the limit surface")->required();
    sweep_cmd->add_option("--small-eigs", sw_eigs_path, "JSON {\"<ell>\": [eigenvalues]}; default one scale*ell^2 per pinched entry");
    sweep_cmd->add_option("--small-eig-scale", sw_eig_scale, "scale of the default small-eigenvalue model")->capture_default_str();
    sweep_cmd->add_option("--wolpert-tol", sw_opt.wolpert_tol, "absolute tolerance of the Wolpert sums")->capture_default_str();
    sweep_cmd->add_option("--cross-check-t-max", sw_opt.cross_check_t_max, "t_max for the relative determinant cross-check, 0 = off")
        ->capture_default_str();
    add_common(sweep_cmd, true);

    // selfcheck
    auto* self_cmd = app.add_subcommand("selfcheck", "run the oracle checks");
    add_common(self_cmd, false);

    // merge --config into the arguments
    std::vector<std::string> args(argv + 1, argv + argc);
    try {
        std::set<std::string> explicit_opts;
        bool have_command = false;
        for (std::size_t i = 0; i < args.size(); ++i) {
            const auto& a = args[i];
            if (a == "--config" && i + 1 < args.size()) config_path = args[i + 1];
            else if (a.rfind("--", 0) == 0) explicit_opts.insert(a.substr(2, a.find('=') - 2));
            else if (app.get_subcommand_no_throw(a)) have_command = true;
        }
        if (!config_path.empty()) {
            auto extra = config_args(config_path, explicit_opts, have_command);
            // options go after the subcommand name
            std::size_t pos = 0;
            for (; pos < args.size(); ++pos)
                if (app.get_subcommand_no_throw(args[pos])) break;
            if (pos == args.size()) {
                args.insert(args.end(), extra.begin(), extra.end());
            } else {
                args.insert(args.begin() + pos + 1, extra.begin(), extra.end());
            }
        }
    } catch (const Error& e) {
        return fail(errc_name(e.code()), e.what(), exit_code(e.code()));
    } catch (const std::exception& e) {
        return fail("parse", e.what(), 4);
    }

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        return fail("usage", e.what(), 2);
    }

    try {
        if (threads < 1) throw Error(Errc::domain, "--threads must be >= 1");

        if (*spectrum_cmd) {
            sp_opt.threads = threads;
            const auto s = fuchsian::enumerate_length_spectrum(fuchsian::builtin_group(sp_group), sp_max_length,
                                                               sp_max_word, sp_opt);
            if (format == "json") {
                emit(output, io::to_json(s).dump(2) + "\n");
            } else {
                std::ostringstream os;
                io::write_spectrum_csv(os, s, provenance(spectrum_cmd));
                emit(output, os.str());
            }
            return 0;
        }

        if (*trace_cmd) {
            const auto spec = load_spectrum(tr_src, threads);
            const auto starts = load_starts(tr_starts, spec.surface.cusps);
            std::vector<std::vector<double>> rows;
            for (double t : tr_t) {
                const auto b = trace::relative_heat_trace_terms(spec.surface, spec, starts, t);
                rows.push_back({t, b.identity, b.hyperbolic, b.parabolic, b.cusp_block, b.starts, b.total});
            }
            const std::vector<std::string> cols{"t", "identity", "hyperbolic", "parabolic", "cusp_block", "starts",
                                                "relative_trace"};
            if (format == "json") {
                json a = json::array();
                for (const auto& r : rows) {
                    json o;
                    for (std::size_t i = 0; i < cols.size(); ++i) o[cols[i]] = r[i];
                    a.push_back(o);
                }
                emit(output, a.dump(2) + "\n");
            } else {
                std::ostringstream os;
                auto prov = provenance(trace_cmd);
                prov.emplace_back("spectrum_cutoff", io::format_double(spec.cutoff));
                prov.emplace_back("classes", std::to_string(spec.total_multiplicity()));
                io::write_table_csv(os, cols, rows, prov);
                emit(output, os.str());
            }
            return 0;
        }

        if (*det_cmd) {
            const auto spec = load_spectrum(det_src, threads);
            const auto starts = load_starts(det_starts, spec.surface.cusps);
            const double t_max = det_t_max > 0.0 ? det_t_max : zeta::max_t_for_cutoff(spec.cutoff, det_opt.trunc_eps);
            const auto d = zeta::relative_determinant(spec.surface, spec, starts, t_max, det_opt);
            json j = io::to_json(d.relative);
            j["det_hyp"] = d.det_hyp;
            j["log_det_hyp"] = d.log_det_hyp;
            j["a_tilde"] = d.a_tilde;
            j["xi_prime0"] = d.xi_prime0;
            j["t_max"] = t_max;
            j["cutoff"] = spec.cutoff;
            j["required_cutoff"] = d.required_cutoff;
            j["trunc_eps"] = det_opt.trunc_eps;
            emit(output, j.dump(2) + "\n");
            return 0;
        }

        if (*scat_cmd) {
            const auto model = io::scattering_model_from_json(io::parse_json(io::read_file(model_path)));
            std::vector<std::vector<double>> rows;
            double worst = 0.0;
            for (double t : sc_t) {
                const double a = trace::scattering_integral(model, t);
                const double b = trace::scattering_erfc_sum(model, t);
                const double res = std::fabs(a - b) / std::max(std::fabs(a), 1e-300);
                worst = std::max(worst, res);
                rows.push_back({t, a, b, res});
            }
            if (format == "json") {
                json a = json::array();
                for (const auto& r : rows)
                    a.push_back({{"t", r[0]}, {"integral", r[1]}, {"erfc_sum", r[2]}, {"residual", r[3]}});
                emit(output, json({{"rows", a}, {"max_residual", worst}, {"tolerance", sc_tol}}).dump(2) + "\n");
            } else {
                std::ostringstream os;
                io::write_table_csv(os, {"t", "integral", "erfc_sum", "residual"}, rows, provenance(scat_cmd));
                emit(output, os.str());
            }
            if (!(worst <= sc_tol))
                return fail("residual", "scattering identity residual above tolerance", 3,
                            {{"max_residual", worst}, {"tolerance", sc_tol}});
            return 0;
        }

        if (*sweep_cmd) {
            const auto base = load_spectrum(sw_src, threads);
            std::vector<double> grid = sw_ell;
            if (!sw_ell_log.empty()) {
                const double from = sw_ell_log[0], to = sw_ell_log[1];
                const int n = int(sw_ell_log[2]);
                if (!(from > 0.0) || !(to > 0.0) || n < 2 || sw_ell_log[2] != double(n))
                    throw Error(Errc::domain, "--ell-log needs from > 0, to > 0 and an integer count >= 2");
                for (int i = 0; i < n; ++i) grid.push_back(from * std::pow(to / from, double(i) / (n - 1)));
            }
            if (grid.empty()) throw Error(Errc::domain, "give --ell or --ell-log");
            std::map<double, trace::EigenvalueList> eigs;
            if (!sw_eigs_path.empty()) {
                const json j = io::parse_json(io::read_file(sw_eigs_path));
                if (!j.is_object()) throw Error(Errc::parse, "--small-eigs must hold a JSON object");
                std::map<double, trace::EigenvalueList> given;
                for (const auto& [k, v] : j.items()) {
                    std::size_t used = 0;
                    const double ell = std::stod(k, &used);
                    if (used != k.size()) throw Error(Errc::parse, "--small-eigs key '" + k + "' is not a number");
                    given[ell].values = v.get<std::vector<double>>();
                }
                // match grid points by value up to rounding of the decimal keys
                for (double ell : grid) {
                    auto it = given.lower_bound(ell * (1 - 1e-12));
                    if (it == given.end() || std::fabs(it->first - ell) > 1e-12 * ell)
                        throw Error(Errc::index, "--small-eigs has no entry for ell=" + io::format_double(ell));
                    eigs[ell] = it->second;
                }
            } else {
                eigs = degeneration::default_small_eigs(grid, int(sw_pinch.size()), sw_eig_scale);
            }
            sw_opt.threads = threads;
            const auto rows = degeneration::pinch_sweep(base, sw_pinch, grid, eigs, sw_baseline, base.surface, sw_opt);
            if (format == "json") {
                emit(output, io::to_json(rows).dump(2) + "\n");
            } else {
                std::ostringstream os;
                auto prov = provenance(sweep_cmd);
                prov.emplace_back("xi_constant", io::format_double(zeta::xi_constant()));
                prov.emplace_back("note", "log_det_estimate omits the unknown o(1) offset of the limit relation");
                io::write_sweep_csv(os, rows, prov);
                emit(output, os.str());
            }
            return 0;
        }

        if (*self_cmd) {
            const auto results = checks::run_selfcheck();
            std::ostringstream os;
            int failed = 0;
            for (const auto& r : results) {
                os << (r.pass ? "[PASS] " : "[FAIL] ") << r.name << ": " << r.detail << '\n';
                if (!r.pass) ++failed;
            }
            emit(output, os.str());
            if (failed) return fail("selfcheck", std::to_string(failed) + " check(s) failed", 3);
            return 0;
        }
    } catch (const QuadratureError& e) {
        return fail(errc_name(e.code()), e.what(), exit_code(e.code()),
                    {{"best_estimate", e.best_estimate}, {"achieved_error", e.achieved_error}});
    } catch (const Error& e) {
        return fail(errc_name(e.code()), e.what(), exit_code(e.code()));
    } catch (const json::exception& e) {
        return fail("parse", e.what(), 4);
    } catch (const std::exception& e) {
        return fail("internal", e.what(), 3);
    }
    return 0;
}
