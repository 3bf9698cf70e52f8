// thetaphase: discrete phase-space analysis of periodic sampled signals.
//
// Subcommands: wigner, q, bridge-verify, reconstruct, render.
// Exit codes: 0 success, 1 tolerance failure, 2 input contract violation,
// 3 I/O or parse error.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "thetaphase/thetaphase.hpp"

namespace tp = thetaphase;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitTolerance = 1;
constexpr int kExitContract = 2;
constexpr int kExitIo = 3;

struct ContractError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void write_output(const std::string& path, const std::string& data) {
    if (path.empty()) {
        std::cout << data;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::ios_base::failure("cannot open output file: " + path);
    out << data;
    if (!out)
        throw std::ios_base::failure("failed writing output file: " + path);
}

tp::StateVector ingest_signal(const std::string& path, bool pad_to_odd, bool no_normalize) {
    tp::SignalFile sig = tp::read_signal_file(path);
    for (size_t i = 0; i < sig.samples.size(); ++i)
        if (!std::isfinite(sig.samples[i].real()) || !std::isfinite(sig.samples[i].imag()))
            throw ContractError("non-finite sample at index " + std::to_string(i));
    if (sig.samples.size() < 2)
        throw ContractError("need at least 2 samples");
    if (sig.samples.size() % 2 == 0) {
        if (!pad_to_odd)
            throw ContractError("sample count " + std::to_string(sig.samples.size()) +
                                " is even; the pipeline needs odd M (use --pad-to-odd)");
        std::cerr << "warning: padding signal with one zero sample (M=" << sig.samples.size()
                  << " -> " << sig.samples.size() + 1 << ")\n";
        sig.samples.emplace_back(0.0, 0.0);
    }
    tp::StateVector state(tp::SpaceDim(static_cast<int>(sig.samples.size())), tp::Rep::position,
                          sig.samples);
    if (no_normalize)
        return state;
    return tp::normalized(state);
}

tp::GridFile to_grid_file(const tp::WignerGrid& w) {
    tp::GridFile g;
    g.kind = tp::GridKind::wigner;
    g.m_dim = w.dim.m();
    g.mu = 0.0;  // not used by the Wigner transform
    g.order = "qp";
    g.normalization = "none";
    g.version = tp::kVersion;
    g.values = w.v;
    return g;
}

tp::GridFile to_grid_file(const tp::QGrid& q, double mu) {
    tp::GridFile g;
    g.kind = tp::GridKind::q;
    g.m_dim = q.dim.m();
    g.mu = mu;
    g.order = "qp";
    g.normalization = (q.norm == tp::QNorm::unit) ? "unit" : "raw";
    g.version = tp::kVersion;
    g.values = q.v;
    return g;
}

int cmd_wigner(const std::string& input, const std::string& output, bool pad_to_odd,
               bool no_normalize) {
    const tp::StateVector state = ingest_signal(input, pad_to_odd, no_normalize);
    const tp::OperatorMatrix rho = tp::outer(state, state);
    const tp::WignerGrid w = tp::wigner_function(rho);

    const int m_dim = state.dim.m();
    double total = 0.0, total_sq = 0.0;
    for (double v : w.v) {
        total += v;
        total_sq += v * v;
    }
    std::cerr << "normalization (1/M) sum W   = " << tp::fmt_g17(total / m_dim) << "\n";
    std::cerr << "purity        (1/M) sum W^2 = " << tp::fmt_g17(total_sq / m_dim) << "\n";

    write_output(output, tp::write_grid_text(to_grid_file(w)));
    return kExitOk;
}

int cmd_q(const std::string& input, const std::string& output, double mu0, bool raw,
          bool pad_to_odd, bool no_normalize) {
    if (!(mu0 >= 0.1 && mu0 <= 10.0))
        throw ContractError("--mu0 must be in [0.1, 10]");
    const tp::StateVector state = ingest_signal(input, pad_to_odd, no_normalize);
    const tp::SqueezeParam squeeze(state.dim, mu0 * tp::kPi / state.dim.m());
    tp::OperatorMatrix rho = tp::outer(state, state);
    rho.hermitian = true;
    const tp::QGrid q =
        tp::q_function(rho, squeeze, raw ? tp::QNorm::raw : tp::QNorm::unit);
    write_output(output, tp::write_grid_text(to_grid_file(q, squeeze.mu)));
    return kExitOk;
}

struct Check {
    std::string name;
    double deviation;
    double tolerance;
};

int cmd_bridge_verify(int m_dim) {
    if (m_dim < 3 || m_dim % 2 == 0 || m_dim > 31)
        throw ContractError("bridge-verify needs odd M with 3 <= M <= 31");
    const tp::SpaceDim dim(m_dim);
    const tp::SqueezeParam squeeze(dim, tp::kPi / m_dim);
    std::mt19937_64 rng(20240901u + static_cast<unsigned>(m_dim));
    std::normal_distribution<double> gauss(0.0, 1.0);

    auto random_density = [&]() {
        tp::OperatorMatrix a(dim);
        for (tp::cplx& x : a.a)
            x = tp::cplx{gauss(rng), gauss(rng)};
        tp::OperatorMatrix rho = tp::matmul(a, tp::dagger(a));
        const double tr = tp::trace(rho).real();
        for (tp::cplx& x : rho.a)
            x /= tr;
        rho.hermitian = true;
        return rho;
    };

    std::vector<Check> checks;

    checks.push_back({"displacement matrix-element orthogonality",
                      tp::matrix_element_orthogonality(dim), 1e-11 * m_dim});
    checks.push_back({"phase-point operator orthogonality",
                      tp::phase_point_orthogonality(dim), 1e-11});
    checks.push_back({"coherent-state completeness", tp::completeness_check(squeeze), 1e-11});

    {
        double worst = 0.0;
        for (int trial = 0; trial < 5; ++trial) {
            const tp::OperatorMatrix a = random_density();
            const tp::OperatorMatrix b = random_density();
            const double lhs = tp::overlap(tp::wigner_function(a), tp::wigner_function(b));
            const double rhs = tp::trace(tp::matmul(a, b)).real();
            worst = std::max(worst, std::abs(lhs - rhs) / std::max(1e-300, std::abs(rhs)));
        }
        checks.push_back({"overlap rule (1/M) sum W_A W_B = Tr AB", worst, 1e-10});
    }

    const tp::BridgeKernel kern = tp::bridge_kernel(dim);
    {
        double worst = 0.0;
        for (int q = 0; q < m_dim; ++q)
            for (int p = 0; p < m_dim; ++p) {
                const tp::StateVector cs =
                    tp::coherent_state(tp::CoherentLabel(squeeze, q, p));
                worst = std::max(worst,
                                 tp::max_abs_diff(tp::q_kernel_operator(kern, tp::PhasePoint(dim, q, p)),
                                                  tp::outer(cs, cs)));
            }
        checks.push_back({"chord expansion rebuilds coherent projectors", worst, 1e-10});
    }

    {
        double worst = 0.0;
        for (int trial = 0; trial < 5; ++trial) {
            const tp::OperatorMatrix rho = random_density();
            const tp::QGrid direct = tp::q_function(rho, squeeze);
            const tp::QGrid conv = tp::q_from_w(tp::wigner_function(rho), kern);
            for (size_t i = 0; i < direct.v.size(); ++i)
                worst = std::max(worst, std::abs(direct.v[i] - conv.v[i]));
        }
        checks.push_back({"smoothed Wigner equals direct Q", worst, 1e-10});
    }

    {
        double worst = 0.0;
        for (int trial = 0; trial < 5; ++trial) {
            const tp::OperatorMatrix rho = random_density();
            worst = std::max(worst, tp::max_abs_diff(tp::reconstruct(tp::wigner_function(rho)), rho));
        }
        checks.push_back({"reconstruction roundtrip", worst, 1e-11});
    }

    bool ok = true;
    for (const Check& c : checks) {
        const bool pass = c.deviation <= c.tolerance;
        ok = ok && pass;
        std::printf("%-45s max dev %.3e  (tol %.1e)  %s\n", c.name.c_str(), c.deviation,
                    c.tolerance, pass ? "ok" : "FAIL");
    }
    return ok ? kExitOk : kExitTolerance;
}

int cmd_reconstruct(const std::string& input, const std::string& output) {
    const tp::GridFile grid = tp::read_grid_file(input);
    if (grid.kind != tp::GridKind::wigner)
        throw ContractError("reconstruct needs a grid with kind=wigner");
    if (grid.m_dim % 2 == 0)
        throw ContractError("reconstruct needs odd M: the Wigner map is not invertible for even M");
    tp::WignerGrid w{tp::SpaceDim(grid.m_dim)};
    w.v = grid.values;
    const tp::OperatorMatrix rho = tp::reconstruct(w);
    std::cerr << "hermiticity residue = " << tp::fmt_g17(tp::max_nonhermiticity(rho)) << "\n";
    std::cerr << "trace               = " << tp::fmt_g17(tp::trace(rho).real()) << "\n";
    write_output(output, tp::write_matrix_text(rho));
    return kExitOk;
}

int cmd_render(const std::string& input, const std::string& output, const std::string& format) {
    const tp::GridFile grid = tp::read_grid_file(input);
    tp::RenderResult res;
    if (format == "pgm")
        res = tp::render_pgm(grid);
    else if (format == "ascii")
        res = tp::render_ascii(grid);
    else
        throw ContractError("--format must be pgm or ascii");
    if (res.degenerate)
        std::cerr << "warning: constant grid, rendering mid-gray\n";
    write_output(output, res.data);
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"discrete Wigner / Q phase-space analysis of periodic signals"};
    app.require_subcommand(1);
    app.set_version_flag("--version", tp::kVersion);

    std::string input, output, format = "pgm";
    bool pad_to_odd = false, no_normalize = false, raw = false;
    double mu0 = 1.0;
    int m_dim = 0;

    CLI::App* wigner = app.add_subcommand("wigner", "Wigner function of a sampled signal");
    wigner->add_option("input", input, "signal file")->required();
    wigner->add_option("-o,--output", output, "output grid file (default: stdout)");
    wigner->add_flag("--pad-to-odd", pad_to_odd, "append one zero sample to an even-length signal");
    wigner->add_flag("--no-normalize", no_normalize, "keep the raw sample norm");

    CLI::App* q = app.add_subcommand("q", "Q function (coherent-state spectrogram) of a signal");
    q->add_option("input", input, "signal file")->required();
    q->add_option("-o,--output", output, "output grid file (default: stdout)");
    q->add_option("--mu0", mu0, "squeezing mu = mu0*pi/M, mu0 in [0.1,10]")->capture_default_str();
    q->add_flag("--raw", raw, "raw normalization instead of unit");
    q->add_flag("--pad-to-odd", pad_to_odd, "append one zero sample to an even-length signal");
    q->add_flag("--no-normalize", no_normalize, "keep the raw sample norm");

    CLI::App* verify = app.add_subcommand("bridge-verify", "run the phase-space identity battery");
    verify->add_option("M", m_dim, "odd dimension, 3..31")->required();

    CLI::App* rec = app.add_subcommand("reconstruct", "density matrix from a Wigner grid");
    rec->add_option("input", input, "wigner grid file")->required();
    rec->add_option("-o,--output", output, "output matrix file (default: stdout)");

    CLI::App* render = app.add_subcommand("render", "render a grid as an image");
    render->add_option("input", input, "grid file")->required();
    render->add_option("-o,--output", output, "output file (default: stdout)");
    render->add_option("--format", format, "pgm or ascii")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) ? kExitContract : kExitOk;
    }

    try {
        if (wigner->parsed())
            return cmd_wigner(input, output, pad_to_odd, no_normalize);
        if (q->parsed())
            return cmd_q(input, output, mu0, raw, pad_to_odd, no_normalize);
        if (verify->parsed())
            return cmd_bridge_verify(m_dim);
        if (rec->parsed())
            return cmd_reconstruct(input, output);
        if (render->parsed())
            return cmd_render(input, output, format);
    } catch (const tp::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const std::ios_base::failure& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const ContractError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitContract;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitContract;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitContract;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    }
    return kExitContract;
}
