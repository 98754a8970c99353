#include "qtutte/hhl.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <fstream>
#include <numbers>
#include <numeric>
#include <sstream>
#include <utility>

#include <json.hpp>

#include "qtutte/classical.hpp"
#include "qtutte/errors.hpp"

namespace qtutte {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::vector<std::size_t> iota_range(std::size_t begin, std::size_t count) {
    std::vector<std::size_t> v(count);
    std::iota(v.begin(), v.end(), begin);
    return v;
}

double l2_norm(const std::vector<double>& v) {
    double n2 = 0.0;
    for (double x : v) n2 += x * x;
    return std::sqrt(n2);
}

} // namespace

double gershgorin_bound(const Matrix& a) {
    if (a.rows() != a.cols() || a.rows() == 0) throw invalid_input("gershgorin: matrix must be square");
    double bound = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        double row = a.at(i, i);
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (j != i) row += std::abs(a.at(i, j));
        bound = std::max(bound, row);
    }
    return bound;
}

double calibrated_time(double lambda_hat_max, std::size_t clock_qubits) {
    if (!(lambda_hat_max > 0.0)) throw invalid_input("calibrated_time: spectral bound must be positive");
    if (clock_qubits == 0) throw invalid_input("calibrated_time: need at least one clock qubit");
    const double bins = std::ldexp(1.0, static_cast<int>(clock_qubits));
    return kTwoPi * (bins - 1.0) / (bins * lambda_hat_max);
}

PreparedInput prepare_b(const std::vector<double>& b, std::size_t solution_qubits) {
    const std::uint64_t dim = std::uint64_t{1} << solution_qubits;
    if (b.empty() || b.size() > dim) throw invalid_input("prepare_b: right-hand side does not fit register");
    double n2 = 0.0;
    for (double x : b) n2 += x * x;
    if (n2 == 0.0) throw invalid_input("prepare_b: right-hand side is zero");
    const double norm = std::sqrt(n2);
    std::vector<std::complex<double>> amps(dim, {0.0, 0.0});
    for (std::size_t i = 0; i < b.size(); ++i) amps[i] = b[i] / norm;
    return {StateVector::from_amplitudes(solution_qubits, std::move(amps)), norm};
}

Circuit qft_circuit(std::size_t total_qubits, const std::vector<std::size_t>& qubits) {
    Circuit c(total_qubits);
    const std::size_t r = qubits.size();
    // After this block qubit[k] carries the phase for OUTPUT bit r-1-k; the
    // swap pass at the end puts everything in place.
    for (std::size_t k = r; k-- > 0;) {
        c.push(Gate::h(), {qubits[k]});
        for (std::size_t m = k; m-- > 0;) {
            const double theta = std::ldexp(std::numbers::pi, -static_cast<int>(k - m));
            c.push(Gate::controlled(Gate::p(theta), {qubits[m]}), {qubits[k]});
        }
    }
    for (std::size_t i = 0; i < r / 2; ++i) {
        const std::size_t a = qubits[i], b = qubits[r - 1 - i];
        c.push(Gate::cx(), {a, b});
        c.push(Gate::cx(), {b, a});
        c.push(Gate::cx(), {a, b});
    }
    return c;
}

Circuit inverse_qft_circuit(std::size_t total_qubits, const std::vector<std::size_t>& qubits) {
    return adjoint(qft_circuit(total_qubits, qubits));
}

void append_phase_estimation(Circuit& c, std::size_t clock_begin, std::size_t clock_qubits,
                             const ControlledPowerFn& powers) {
    if (clock_qubits == 0) throw invalid_input("phase estimation: need at least one clock qubit");
    const auto clock = iota_range(clock_begin, clock_qubits);
    for (std::size_t q : clock) c.push(Gate::h(), {q});
    for (std::size_t k = 0; k < clock_qubits; ++k) powers(c, k, clock_begin + k);
    c.append(inverse_qft_circuit(c.qubits, clock));
}

StateVector phase_estimation(const StateVector& b_state, std::size_t clock_qubits,
                             const ControlledPowerFn& powers) {
    Circuit c(b_state.qubit_count() + clock_qubits);
    append_phase_estimation(c, b_state.qubit_count(), clock_qubits, powers);
    return run(c, b_state.extended(clock_qubits));
}

RotationOps conditional_rotation_ops(std::size_t total_qubits, std::size_t clock_begin,
                                     std::size_t clock_qubits, std::size_t ancilla,
                                     double rotation_constant, double evolution_time) {
    if (clock_qubits == 0 || clock_qubits > 26)
        throw invalid_input("conditional rotation: clock register out of range");
    if (clock_begin + clock_qubits > total_qubits || ancilla >= total_qubits)
        throw invalid_input("conditional rotation: registers outside circuit");
    if (ancilla >= clock_begin && ancilla < clock_begin + clock_qubits)
        throw invalid_input("conditional rotation: ancilla collides with clock");
    if (!(rotation_constant > 0.0)) throw invalid_input("conditional rotation: c must be positive");
    if (!(evolution_time > 0.0)) throw invalid_input("conditional rotation: t must be positive");

    RotationOps out;
    out.circuit = Circuit(total_qubits);
    const std::uint64_t count = std::uint64_t{1} << clock_qubits;
    out.lambda_tilde.assign(count, 0.0);
    out.clamped.assign(count, false);
    const auto clock = iota_range(clock_begin, clock_qubits);
    const double bins = std::ldexp(1.0, static_cast<int>(clock_qubits));

    for (std::uint64_t k = 1; k < count; ++k) {
        const double lam = kTwoPi * static_cast<double>(k) / (bins * evolution_time);
        out.lambda_tilde[k] = lam;
        double ratio = rotation_constant / lam;
        if (ratio > 1.0) {
            ratio = 1.0;
            out.clamped[k] = true;
        }
        const double keep = std::sqrt(std::max(0.0, 1.0 - ratio * ratio));
        // Ry(2*asin(ratio)) on the ancilla, fired only for clock value k.
        const std::array<std::complex<double>, 4> rot{
            {{keep, 0.0}, {-ratio, 0.0}, {ratio, 0.0}, {keep, 0.0}}};
        std::vector<CircuitOp> wrap;
        for (std::size_t b = 0; b < clock_qubits; ++b)
            if (((k >> b) & 1) == 0) wrap.push_back({Gate::x(), {clock_begin + b}});
        for (const auto& op : wrap) out.circuit.push(op.gate, op.targets);
        out.circuit.push(Gate::controlled(Gate::two_level(rot, 0, 1), clock), {ancilla});
        for (const auto& op : wrap) out.circuit.push(op.gate, op.targets);
    }
    return out;
}

ExtractedSolution extract_solution(const StateVector& state, std::size_t dim, std::uint64_t block_offset,
                                   const std::vector<double>& b) {
    if (dim == 0 || b.size() != dim) throw invalid_input("extract_solution: dimension mismatch");
    if (block_offset >= state.dimension() || state.dimension() - block_offset < dim)
        throw invalid_input("extract_solution: block outside register");

    const auto& amps = state.amplitudes();
    double n2 = 0.0;
    std::size_t top = 0;
    double top_mag = -1.0;
    for (std::size_t i = 0; i < dim; ++i) {
        const double mag = std::norm(amps[block_offset + i]);
        n2 += mag;
        if (mag > top_mag) {
            top_mag = mag;
            top = i;
        }
    }
    if (n2 < 1e-200) throw numerical_failure("extract_solution: solution block is empty");

    // Strip the global phase against the dominant entry, then read real parts.
    const std::complex<double> anchor = amps[block_offset + top];
    const std::complex<double> phase = anchor / std::abs(anchor);
    ExtractedSolution out;
    out.block_norm = std::sqrt(n2);
    out.values.resize(dim);
    double im2 = 0.0, re2 = 0.0;
    for (std::size_t i = 0; i < dim; ++i) {
        const std::complex<double> v = amps[block_offset + i] / phase;
        out.values[i] = v.real();
        re2 += v.real() * v.real();
        im2 += v.imag() * v.imag();
    }
    out.imaginary_mass = im2 / n2;
    if (re2 < 1e-200) throw numerical_failure("extract_solution: solution block is not real");
    const double inv = 1.0 / std::sqrt(re2);
    for (double& v : out.values) v *= inv;

    std::size_t first = dim;
    for (std::size_t i = 0; i < dim; ++i)
        if (b[i] != 0.0) {
            first = i;
            break;
        }
    if (first == dim) throw invalid_input("extract_solution: right-hand side is zero");
    if (std::abs(out.values[first]) <= 1e-12)
        throw numerical_failure("extract_solution: sign-alignment entry vanished");
    if (out.values[first] < 0.0)
        for (double& v : out.values) v = -v;
    return out;
}

double measure_expectation(const StateVector& state, const Matrix& m) {
    if (m.rows() != m.cols()) throw invalid_input("measure_expectation: observable must be square");
    if (!m.is_symmetric()) throw invalid_input("measure_expectation: observable must be symmetric");
    if (m.rows() > state.dimension()) throw invalid_input("measure_expectation: observable too large");
    const auto& amps = state.amplitudes();
    std::complex<double> acc = 0.0;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            acc += std::conj(amps[i]) * m.at(i, j) * amps[j];
    return acc.real();
}

SampledExpectation measure_expectation_sampled(const StateVector& state, const Matrix& m,
                                               std::size_t shots, Rng& rng) {
    if (shots == 0) throw invalid_input("measure_expectation_sampled: need at least one shot");
    if (m.rows() != m.cols() || m.rows() != state.dimension())
        throw invalid_input("measure_expectation_sampled: observable must span the register");
    const SymmetricEigen eig = jacobi_eigen(m);
    const std::size_t d = m.rows();
    const auto& amps = state.amplitudes();

    std::vector<double> probs(d, 0.0);
    for (std::size_t k = 0; k < d; ++k) {
        std::complex<double> overlap = 0.0;
        for (std::size_t i = 0; i < d; ++i) overlap += eig.vectors.at(i, k) * amps[i];
        probs[k] = std::norm(overlap);
    }

    double sum = 0.0, sum2 = 0.0;
    for (std::size_t s = 0; s < shots; ++s) {
        double u = rng.next_double();
        std::size_t pick = d - 1;
        for (std::size_t k = 0; k < d; ++k) {
            if (u < probs[k]) {
                pick = k;
                break;
            }
            u -= probs[k];
        }
        const double v = eig.values[pick];
        sum += v;
        sum2 += v * v;
    }
    SampledExpectation out;
    out.mean = sum / static_cast<double>(shots);
    if (shots > 1) {
        const double var = std::max(0.0, (sum2 - sum * sum / static_cast<double>(shots)) /
                                             static_cast<double>(shots - 1));
        out.std_error = std::sqrt(var / static_cast<double>(shots));
    }
    return out;
}

HhlConfig parse_hhl_config(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw invalid_input(std::string("hhl config: ") + e.what());
    }
    if (!j.is_object()) throw invalid_input("hhl config: expected a JSON object");

    HhlConfig cfg;
    for (const auto& [key, val] : j.items()) {
        if (key == "r") {
            if (!val.is_number_unsigned()) throw invalid_input("hhl config: r must be a nonnegative integer");
            cfg.clock_qubits = val.get<std::size_t>();
        } else if (key == "t_override") {
            if (!val.is_number() || !(val.get<double>() > 0.0))
                throw invalid_input("hhl config: t_override must be a positive number");
            cfg.evolution_time = val.get<double>();
        } else if (key == "c_override") {
            if (!val.is_number() || !(val.get<double>() > 0.0))
                throw invalid_input("hhl config: c_override must be a positive number");
            cfg.rotation_constant = val.get<double>();
        } else if (key == "epsilon") {
            if (!val.is_number() || !(val.get<double>() > 0.0))
                throw invalid_input("hhl config: epsilon must be a positive number");
            cfg.epsilon = val.get<double>();
        } else if (key == "mode") {
            const std::string mode = val.is_string() ? val.get<std::string>() : std::string();
            if (mode == "oracle")
                cfg.mode = CompileMode::oracle;
            else if (mode == "strict")
                cfg.mode = CompileMode::strict;
            else
                throw invalid_input("hhl config: mode must be \"oracle\" or \"strict\"");
        } else if (key == "seed") {
            if (!val.is_number_unsigned()) throw invalid_input("hhl config: seed must be a nonnegative integer");
            cfg.seed = val.get<std::uint64_t>();
        } else if (key == "max_attempts") {
            if (!val.is_number_unsigned())
                throw invalid_input("hhl config: max_attempts must be a nonnegative integer");
            cfg.max_attempts = val.get<std::size_t>();
        } else if (key == "rotation_policy") {
            const std::string policy = val.is_string() ? val.get<std::string>() : std::string();
            if (policy == "lambda_min")
                cfg.rotation_policy = RotationPolicy::classical_lambda_min;
            else if (policy == "floor")
                cfg.rotation_policy = RotationPolicy::representable_floor;
            else
                throw invalid_input("hhl config: rotation_policy must be \"lambda_min\" or \"floor\"");
        } else {
            throw invalid_input("hhl config: unknown key \"" + key + "\"");
        }
    }
    if (cfg.clock_qubits == 0 || cfg.clock_qubits > 24)
        throw invalid_input("hhl config: r must be between 1 and 24");
    return cfg;
}

HhlConfig load_hhl_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open hhl config: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_hhl_config(buf.str());
}

HhlResult solve_hhl(const TutteSystem& sys, Axis axis, const HhlConfig& cfg) {
    const std::size_t dim = sys.dim;
    if (dim == 0 || sys.a.rows() != dim || sys.a.cols() != dim)
        throw invalid_input("solve_hhl: malformed system");
    const std::vector<double>& b = axis == Axis::x ? sys.b_x : sys.b_y;
    if (b.size() != dim) throw invalid_input("solve_hhl: right-hand side size mismatch");
    const std::size_t r = cfg.clock_qubits;
    if (r == 0 || r > 24) throw invalid_input("solve_hhl: clock register out of range");
    if (cfg.mode == CompileMode::strict && !(cfg.epsilon > 0.0))
        throw invalid_input("solve_hhl: strict mode requires positive epsilon");

    const std::size_t padded = padded_dimension(dim);
    std::size_t qs = 0;
    while ((std::size_t{1} << qs) < padded) ++qs;

    const PreparedInput prep = prepare_b(b, qs);

    const SymmetricEigen eig = jacobi_eigen(sys.a);
    const double lam_min = eig.values.front();
    const double lam_max = eig.values.back();
    if (lam_min <= 0.0) throw numerical_failure("solve_hhl: system is not positive definite");

    double spectral_bound = gershgorin_bound(sys.a);
    if (padded > dim) spectral_bound = std::max(spectral_bound, 1.0); // padding rows sit at 1
    const double t = cfg.evolution_time.value_or(calibrated_time(spectral_bound, r));
    if (!(t > 0.0)) throw invalid_input("solve_hhl: evolution time must be positive");
    if (std::max(lam_max, padded > dim ? 1.0 : 0.0) * t >= kTwoPi)
        throw invalid_input("solve_hhl: evolution time wraps the top eigenphase");

    const double bins = std::ldexp(1.0, static_cast<int>(r));
    const double floor_c = kTwoPi / (t * bins);
    const double c = cfg.rotation_constant.value_or(
        cfg.rotation_policy == RotationPolicy::classical_lambda_min ? 0.99 * lam_min : floor_c);
    if (!(c > 0.0)) throw invalid_input("solve_hhl: rotation constant must be positive");

    // The simulated unitary is exp(+i*a*t): a plan at -t makes the clock read
    // phases with a positive sign, matching lambda_tilde(k) = 2*pi*k/(2^r*t).
    const TrotterPlan plan = trotter_plan(sys.a, sparsity_graph(sys.a), -t,
                                          cfg.mode == CompileMode::strict ? cfg.epsilon : 1.0, cfg.mode);

    RegisterLayout lay;
    lay.solution_qubits = qs;
    lay.memory_qubits = cfg.mode == CompileMode::strict ? plan.memory_qubits : 0;
    lay.clock_qubits = r;
    lay.memory_begin = qs;
    lay.clock_begin = qs + lay.memory_qubits;
    lay.ancilla = lay.clock_begin + r;
    lay.total = lay.ancilla + 1;

    const auto reg = iota_range(0, qs);
    Circuit qpe(lay.total);
    if (cfg.mode == CompileMode::oracle) {
        // Basis-change conjugation is hoisted out of the power ladder:
        // C-(E D E^T) = E (C-D) E^T, and E commutes with every clock gate.
        for (const auto& op : orthogonal_to_two_level_ops(transpose(plan.spectrum.vectors), reg))
            qpe.push(op.gate, op.targets);
        append_phase_estimation(qpe, lay.clock_begin, r,
                                [&](Circuit& cc, std::size_t k, std::size_t control) {
                                    std::vector<std::complex<double>> ph(plan.padded_dim);
                                    const double scale = plan.t * std::ldexp(1.0, static_cast<int>(k));
                                    for (std::size_t j = 0; j < plan.padded_dim; ++j)
                                        ph[j] = std::polar(1.0, -plan.spectrum.values[j] * scale);
                                    cc.push(Gate::controlled(Gate::diag(std::move(ph)), {control}), reg);
                                });
        for (const auto& op : orthogonal_to_two_level_ops(plan.spectrum.vectors, reg))
            qpe.push(op.gate, op.targets);
    } else {
        append_phase_estimation(qpe, lay.clock_begin, r,
                                [&](Circuit& cc, std::size_t k, std::size_t control) {
                                    cc.append(controlled_power(plan, k, control, CompileMode::strict,
                                                               lay.total));
                                });
    }

    StateVector state = run(qpe, prep.state.extended(lay.total - qs));

    const RotationOps rot =
        conditional_rotation_ops(lay.total, lay.clock_begin, r, lay.ancilla, c, t);

    HhlResult res;
    res.layout = lay;
    res.evolution_time = t;
    res.rotation_constant = c;
    res.trotter_steps = cfg.mode == CompileMode::strict ? plan.steps : 0;

    {
        // Clamping only taints the result when a clamped clock value actually
        // carries amplitude after phase estimation.
        const std::uint64_t span = (std::uint64_t{1} << r) - 1;
        std::vector<double> clock_mass(std::uint64_t{1} << r, 0.0);
        const auto& amps = state.amplitudes();
        for (std::uint64_t idx = 0; idx < state.dimension(); ++idx)
            clock_mass[(idx >> lay.clock_begin) & span] += std::norm(amps[idx]);
        for (std::uint64_t k = 0; k <= span; ++k)
            if (rot.clamped[k] && clock_mass[k] > 1e-12) res.clamped_populated = true;
    }

    state = run(rot.circuit, state);
    state = run(adjoint(qpe), state);

    const double p1 = branch_probability(state, lay.ancilla, 1);
    res.success_probability = p1;
    if (p1 < 1e-12) throw numerical_failure("solve_hhl: post-selection probability vanished");

    StateVector post = [&]() -> StateVector {
        if (cfg.max_attempts == 0) return project(state, lay.ancilla, 1);
        Rng rng(derive_seed(cfg.seed, static_cast<std::uint64_t>(axis), r));
        for (std::size_t attempt = 1; attempt <= cfg.max_attempts; ++attempt) {
            MeasureResult m = measure_qubit(state, lay.ancilla, rng);
            if (m.bit == 1) {
                res.attempts = attempt;
                return std::move(m.state);
            }
        }
        throw numerical_failure("solve_hhl: post-selection failed within max_attempts");
    }();

    const std::uint64_t block_offset = std::uint64_t{1} << lay.ancilla;
    const ExtractedSolution ext = extract_solution(post, dim, block_offset, b);
    res.imaginary_mass = ext.imaginary_mass;

    {
        const std::uint64_t span = (std::uint64_t{1} << r) - 1;
        const auto& amps = post.amplitudes();
        double cz = 0.0;
        for (std::uint64_t idx = 0; idx < post.dimension(); ++idx)
            if (((idx >> lay.clock_begin) & span) == 0) cz += std::norm(amps[idx]);
        res.clock_zero_probability = cz;
    }

    res.norm_estimate = std::sqrt(p1) / c;
    res.solution.resize(dim);
    for (std::size_t i = 0; i < dim; ++i)
        res.solution[i] = prep.norm * res.norm_estimate * ext.values[i];

    const std::vector<double> xc = cholesky_solve(sys.a, b);
    const double xc_norm = l2_norm(xc);
    double dot = 0.0;
    for (std::size_t i = 0; i < dim; ++i) dot += ext.values[i] * xc[i];
    res.fidelity_vs_classical = xc_norm > 0.0 ? std::abs(dot) / xc_norm : 0.0;

    double diff2 = 0.0;
    for (std::size_t i = 0; i < dim; ++i) {
        const double d = res.solution[i] - xc[i];
        diff2 += d * d;
    }
    res.relative_l2_error = xc_norm > 0.0 ? std::sqrt(diff2) / xc_norm : 0.0;

    const std::vector<double> ax = mat_vec(sys.a, res.solution);
    double r2 = 0.0;
    for (std::size_t i = 0; i < dim; ++i) {
        const double d = ax[i] - b[i];
        r2 += d * d;
    }
    res.residual = std::sqrt(r2) / prep.norm;

    if (res.clamped_populated)
        res.warnings.push_back("conditional rotation clamped a populated clock value");
    if (res.imaginary_mass > 1e-3)
        res.warnings.push_back("solution block carries non-negligible imaginary mass");
    if (1.0 - res.clock_zero_probability > 1e-3)
        res.warnings.push_back("phase estimation left residual mass outside the clock-zero block");
    if (padded > dim && lam_min > 1.0 + 1e-12)
        res.warnings.push_back("padding rows sit below the system spectrum; harmless because they carry no amplitude");
    res.degraded = res.clamped_populated || res.imaginary_mass > 1e-3 ||
                   1.0 - res.clock_zero_probability > 1e-3;
    return res;
}

} // namespace qtutte
