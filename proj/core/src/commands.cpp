#include "tsfrac/commands.hpp"

#include <fstream>

#include "tsfrac/errors.hpp"
#include "tsfrac/format.hpp"
#include "tsfrac/fractional.hpp"
#include "tsfrac/delta_calculus.hpp"
#include "tsfrac/output.hpp"
#include "tsfrac/sobolev.hpp"
#include "tsfrac/solver.hpp"
#include "tsfrac/verify.hpp"

namespace tsfrac {

int run_verify(const RunSpec& spec, const std::string& only, std::ostream& out, std::ostream& err) {
    try {
        VerifyOptions opts;
        opts.only = only;
        opts.h_max = spec.h_max;
        opts.seed = spec.solver.seed;
        if (!spec.scale.name.empty() || !spec.scale.segments.empty()) {
            const std::string label = spec.scale.name.empty() ? "custom" : spec.scale.name;
            opts.scales.emplace_back(label, resolve_scale(spec.scale));
        }
        const VerifyReport report = run_properties(opts);
        for (const auto& r : report.results) out << format_line(r) << '\n';
        out << (report.pass() ? "verify: all properties hold\n" : "verify: FAILED\n");
        return report.pass() ? exit_code::ok : exit_code::verification_failure;
    } catch (const SchemaError& e) {
        err << "config error [" << e.field() << "]: " << e.what() << '\n';
        return exit_code::config_error;
    } catch (const Error& e) {
        err << "numerical failure: " << e.what() << '\n';
        return exit_code::numerical_failure;
    }
}

namespace {

void print_summary(std::ostream& out, const std::string& label, const SolverResult& r) {
    out << label << ": status=" << to_string(r.status) << " classification=" << to_string(r.classification)
        << " energy=" << format_double(r.energy) << " grad_norm=" << format_double(r.grad_norm)
        << " sup_norm=" << format_double(sup_norm(r.u)) << " iterations=" << r.iterations << '\n';
}

void print_embedding(std::ostream& out, const SolverResult& r, const RunSpec& spec) {
    try {
        const auto report = verify_embeddings(r.u, SobolevParams::make(spec.alpha, spec.p));
        for (const auto& c : report.checks)
            out << "  " << c.name << ": lhs=" << format_double(c.lhs) << " rhs=" << format_double(c.rhs)
                << (c.pass ? " holds" : " VIOLATED") << '\n';
    } catch (const Error& e) {
        out << "  embedding report unavailable: " << e.what() << '\n';
    }
}

void write_solution(const std::filesystem::path& csv, const SolverResult& r, double alpha) {
    auto file = open_output(csv);
    write_csv(file, r.u, rl_derivative(r.u, alpha));
}

} // namespace

int run_solve(const RunSpec& spec, std::ostream& out, std::ostream& err, const std::filesystem::path& base) {
    try {
        if (spec.command != Command::solve) throw SchemaError("command", "expected a solve spec");
        validate(spec);
        if (spec.out.empty()) throw SchemaError("out", "missing output path (--out or \"out\")");
        const EnergyModel model = assemble(build_problem(spec, base));
        const SolverConfig cfg = solver_config(spec);
        const bool superlinear = spec.nonlinearity.type == NonlinearitySpec::Type::power;

        auto method = spec.solver.method;
        if (method == SolverSpec::Method::automatic)
            method = superlinear ? SolverSpec::Method::mountain_pass : SolverSpec::Method::minimize;

        if (method == SolverSpec::Method::multistart) {
            const auto ms = multistart(model, spec.solver.starts, spec.solver.seed, cfg);
            for (const auto& f : ms.failures) err << "start failed: " << f << '\n';
            const std::filesystem::path target(spec.out);
            const auto stem = (target.parent_path() / target.stem()).string();
            std::vector<IndexEntry> index;
            for (std::size_t k = 0; k < ms.pairs.size(); ++k) {
                const auto& pair = ms.pairs[k];
                const std::string file = stem + "_" + std::to_string(k) + ".csv";
                write_solution(file, pair.solution, spec.alpha);
                index.push_back({std::filesystem::path(file).filename().string(), pair.solution.energy,
                                 pair.solution.grad_norm, to_string(pair.solution.classification)});
                print_summary(out, "solution " + std::to_string(k), pair.solution);
                out << "  mirror: energy=" << format_double(pair.mirror.energy)
                    << " grad_norm=" << format_double(pair.mirror.grad_norm)
                    << " energy_gap=" << format_double(pair.energy_gap) << '\n';
                print_embedding(out, pair.solution, spec);
            }
            auto idx = open_output(stem + "_index.csv");
            write_index(idx, index);
            if (!spec.svg.empty() && !ms.pairs.empty()) {
                auto svg = open_output(spec.svg);
                write_svg(svg, ms.pairs.front().solution.u, "u (solution 0)");
            }
            out << "retained " << ms.pairs.size() << " symmetric pair(s) from " << spec.solver.starts << " starts\n";
            return ms.pairs.empty() ? exit_code::numerical_failure : exit_code::ok;
        }

        SolverResult r = method == SolverSpec::Method::mountain_pass
                             ? mountain_pass(model, cfg)
                             : minimize(model, EnergyModel::Vector(0.1 * bump(model)), cfg);
        write_solution(spec.out, r, spec.alpha);
        if (!spec.svg.empty()) {
            auto svg = open_output(spec.svg);
            write_svg(svg, r.u, "u");
        }
        print_summary(out, "solution", r);
        print_embedding(out, r, spec);
        return r.status == SolverStatus::converged ? exit_code::ok : exit_code::numerical_failure;
    } catch (const SchemaError& e) {
        err << "config error [" << e.field() << "]: " << e.what() << '\n';
        return exit_code::config_error;
    } catch (const Error& e) {
        err << "numerical failure: " << e.what() << '\n';
        return exit_code::numerical_failure;
    }
}

int run_bounds(const RunSpec& spec, std::ostream& out, std::ostream& err) {
    try {
        validate(spec);
        const TimeScale scale = resolve_scale(spec.scale);
        const auto params = SobolevParams::make(spec.alpha, spec.p);
        const double a = scale.min(), b = scale.max();
        const auto c = embedding_bounds(params, a, b);
        out << "alpha=" << format_double(spec.alpha) << " p=" << format_double(spec.p) << " a=" << format_double(a)
            << " b=" << format_double(b) << '\n';
        out << "c_lp=" << format_double(c.c_lp) << '\n';
        if (c.c_sup)
            out << "c_sup=" << format_double(*c.c_sup) << '\n';
        else
            out << "c_sup=absent (requires α > 1/p)\n";
        if (params.embeds_in_continuous())
            out << "holder_modulus=" << format_double(holder_modulus(params, 1.0)) << " (unit seminorm, exponent "
                << format_double(spec.alpha - 1.0 / spec.p) << ")\n";
        else
            out << "holder_modulus=absent (requires α > 1/p)\n";
        if (!c.a_is_zero) {
            out << "c_lp_shifted=" << format_double(c.c_lp_shifted) << " (b - a in place of b)\n";
            if (c.c_sup_shifted) out << "c_sup_shifted=" << format_double(*c.c_sup_shifted) << '\n';
        }
        return exit_code::ok;
    } catch (const SchemaError& e) {
        err << "config error [" << e.field() << "]: " << e.what() << '\n';
        return exit_code::config_error;
    } catch (const Error& e) {
        err << "config error: " << e.what() << '\n';
        return exit_code::config_error;
    }
}

} // namespace tsfrac
