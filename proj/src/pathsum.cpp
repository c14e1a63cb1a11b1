#include "biphoton/pathsum.hpp"

#include <cmath>
#include <numbers>

#include "biphoton/error.hpp"

namespace biphoton {
namespace {

struct PhotonBranch {
  Polarization pol;
  Complex coefficient;
  double delay_fs;
};

std::vector<PhotonBranch> propagate(const std::vector<ArmElement>& arm, Polarization start) {
  std::vector<PhotonBranch> branches{{start, {1.0, 0.0}, 0.0}};
  for (const ArmElement& element : arm) {
    std::vector<PhotonBranch> next;
    for (const PhotonBranch& b : branches) {
      if (const auto* rod = std::get_if<QuartzRod>(&element)) {
        next.push_back({b.pol, b.coefficient, b.delay_fs + rod_delays(*rod).of(b.pol)});
      } else if (const auto* trombone = std::get_if<TromboneDelay>(&element)) {
        next.push_back({b.pol, b.coefficient, b.delay_fs + trombone->delay_fs});
      } else {
        const JonesVector out = hwp_action(b.pol, std::get<HalfWavePlate>(element).angle_deg);
        if (out.h != 0.0) next.push_back({Polarization::H, b.coefficient * out.h, b.delay_fs});
        if (out.v != 0.0) next.push_back({Polarization::V, b.coefficient * out.v, b.delay_fs});
      }
    }
    branches = std::move(next);
  }
  return branches;
}

// exp(i·ν·delay) along one grid axis.
std::vector<Complex> phase_ramp(const FrequencyGrid& grid, double delay_fs) {
  std::vector<Complex> out(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) out[i] = std::polar(1.0, grid.points[i] * delay_fs);
  return out;
}

}  // namespace

std::array<PairTerm, 2> PairState::terms() const {
  const double w = 1.0 / std::numbers::sqrt2;
  return {{
      {Polarization::H, Ray::ordinary, Polarization::V, Ray::extraordinary, {w, 0.0}},
      {Polarization::V, Ray::extraordinary, Polarization::H, Ray::ordinary,
       std::polar(w, relative_phase_rad)},
  }};
}

const char* to_string(PathLabel label) noexcept { return label == PathLabel::rr ? "rr" : "tt"; }

std::vector<PathAmplitude> enumerate_paths(const ExperimentConfig& config) {
  config.validate();
  return enumerate_paths(build_chain(config), PairState{config.pair_phase_rad});
}

std::vector<PathAmplitude> enumerate_paths(const ElementChain& chain, const PairState& pair) {
  chain.validate();
  std::vector<PathAmplitude> paths;
  for (const PairTerm& term : pair.terms()) {
    for (const PhotonBranch& p1 : propagate(chain.arm1, term.photon1)) {
      for (const PhotonBranch& p2 : propagate(chain.arm2, term.photon2)) {
        const PbsOutput out1 = pbs_action(Arm::one, p1.pol);
        const PbsOutput out2 = pbs_action(Arm::two, p2.pol);
        if (out1.port == out2.port) continue;  // both photons at one detector

        const bool photon1_at_a = out1.port == Port::A;
        const PhotonBranch& at_a = photon1_at_a ? p1 : p2;
        const PhotonBranch& at_b = photon1_at_a ? p2 : p1;
        const bool reflected1 = p1.pol == Polarization::V;
        const bool reflected2 = p2.pol == Polarization::V;
        if (reflected1 != reflected2)
          fail(ErrorKind::contract, "mixed reflection/transmission coincidence path");

        PathAmplitude path;
        path.label = reflected1 ? PathLabel::rr : PathLabel::tt;
        path.coefficient = term.amplitude * p1.coefficient * p2.coefficient *
                           out1.coefficient * out2.coefficient *
                           analyzer_projection(at_a.pol, chain.analyzer_port_a.angle_deg) *
                           analyzer_projection(at_b.pol, chain.analyzer_port_b.angle_deg);
        path.delay_a_fs = at_a.delay_fs;
        path.delay_b_fs = at_b.delay_fs;
        path.swapped = !photon1_at_a;
        paths.push_back(path);
      }
    }
  }
  return paths;
}

CoincidenceAmplitude assemble_amplitude(std::span<const PathAmplitude> paths,
                                        const JointSpectralAmplitude& jsa,
                                        const FrequencyGrid& grid) {
  if (!same_grid(jsa.grid, grid))
    fail(ErrorKind::contract, "JSA and amplitude grids differ");
  const std::size_t n = grid.size();
  CoincidenceAmplitude out{grid, ComplexMatrix(n)};
  for (const PathAmplitude& path : paths) {
    const auto ramp_a = phase_ramp(grid, path.delay_a_fs);
    const auto ramp_b = phase_ramp(grid, path.delay_b_fs);
    for (std::size_t i = 0; i < n; ++i) {
      const Complex row_factor = path.coefficient * ramp_a[i];
      for (std::size_t j = 0; j < n; ++j) {
        const Complex f = path.swapped ? jsa.values(j, i) : jsa.values(i, j);
        out.values(i, j) += row_factor * f * ramp_b[j];
      }
    }
  }
  return out;
}

double integrate_amplitude(const CoincidenceAmplitude& amplitude) {
  double sum = 0.0;
  for (std::size_t i = 0; i < amplitude.values.size(); ++i) {
    double row = 0.0;
    const Complex* a = amplitude.values.row(i);
    for (std::size_t j = 0; j < amplitude.values.size(); ++j) row += std::norm(a[j]);
    sum += row;
  }
  return sum * amplitude.grid.weight * amplitude.grid.weight;
}

Complex path_overlap(std::span<const PathAmplitude> paths, const JointSpectralAmplitude& jsa,
                     const FrequencyGrid& grid) {
  if (paths.size() != 2)
    fail(ErrorKind::contract, "path overlap needs exactly two paths (got " +
                                  std::to_string(paths.size()) + ")");
  const CoincidenceAmplitude first = assemble_amplitude(paths.subspan(0, 1), jsa, grid);
  const CoincidenceAmplitude second = assemble_amplitude(paths.subspan(1, 1), jsa, grid);
  Complex inner{0.0, 0.0};
  double norm0 = 0.0;
  double norm1 = 0.0;
  const auto& a = first.values.data();
  const auto& b = second.values.data();
  for (std::size_t k = 0; k < a.size(); ++k) {
    inner += std::conj(a[k]) * b[k];
    norm0 += std::norm(a[k]);
    norm1 += std::norm(b[k]);
  }
  if (!(norm0 > 0.0) || !(norm1 > 0.0))
    fail(ErrorKind::contract, "overlap undefined: a path has zero amplitude");
  return inner / (norm0 == norm1 ? norm0 : std::sqrt(norm0 * norm1));
}

SwappableJsa::SwappableJsa(JointSpectralAmplitude jsa)
    : jsa_(std::move(jsa)), transposed_(jsa_.values.transposed()) {}

double integrated_rate(std::span<const PathAmplitude> paths, const SwappableJsa& source) {
  const FrequencyGrid& grid = source.grid();
  const std::size_t n = grid.size();
  const double w2 = grid.weight * grid.weight;
  if (paths.empty()) return 0.0;

  std::vector<std::vector<Complex>> ramps_a, ramps_b;
  for (const PathAmplitude& path : paths) {
    ramps_a.push_back(phase_ramp(grid, path.delay_a_fs));
    ramps_b.push_back(phase_ramp(grid, path.delay_b_fs));
  }

  double total = 0.0;
  if (paths.size() == 2) {
    // Hot loop in split real arithmetic; std::complex multiplication carries
    // NaN recovery branches that block vectorization.
    std::vector<double> b0re(n), b0im(n), b1re(n), b1im(n);
    for (std::size_t j = 0; j < n; ++j) {
      b0re[j] = ramps_b[0][j].real();
      b0im[j] = ramps_b[0][j].imag();
      b1re[j] = ramps_b[1][j].real();
      b1im[j] = ramps_b[1][j].imag();
    }
    for (std::size_t i = 0; i < n; ++i) {
      const Complex r0 = paths[0].coefficient * ramps_a[0][i];
      const Complex r1 = paths[1].coefficient * ramps_a[1][i];
      const double r0re = r0.real(), r0im = r0.imag();
      const double r1re = r1.real(), r1im = r1.imag();
      const double* f0 = reinterpret_cast<const double*>(source.row(i, paths[0].swapped));
      const double* f1 = reinterpret_cast<const double*>(source.row(i, paths[1].swapped));
      double row = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        const double g0re = f0[2 * j] * b0re[j] - f0[2 * j + 1] * b0im[j];
        const double g0im = f0[2 * j] * b0im[j] + f0[2 * j + 1] * b0re[j];
        const double g1re = f1[2 * j] * b1re[j] - f1[2 * j + 1] * b1im[j];
        const double g1im = f1[2 * j] * b1im[j] + f1[2 * j + 1] * b1re[j];
        const double are = r0re * g0re - r0im * g0im + r1re * g1re - r1im * g1im;
        const double aim = r0re * g0im + r0im * g0re + r1re * g1im + r1im * g1re;
        row += are * are + aim * aim;
      }
      total += row;
    }
    return total * w2;
  }

  std::vector<Complex> acc(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::fill(acc.begin(), acc.end(), Complex{});
    for (std::size_t p = 0; p < paths.size(); ++p) {
      const Complex r = paths[p].coefficient * ramps_a[p][i];
      const Complex* f = source.row(i, paths[p].swapped);
      for (std::size_t j = 0; j < n; ++j) acc[j] += r * f[j] * ramps_b[p][j];
    }
    double row = 0.0;
    for (const Complex& a : acc) row += std::norm(a);
    total += row;
  }
  return total * w2;
}

}  // namespace biphoton
