#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <freqconv/crw.hpp>
#include <freqconv/dressed.hpp>
#include <freqconv/lattice.hpp>

#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <optional>
#include <random>
#include <string>
#include <vector>

using namespace freqconv;
using cplx = std::complex<double>;

namespace {

constexpr double k_pi = std::numbers::pi;

const AtomConfig k_atom{0.9, 0.6, 0.6, 0.1};
const CrwConfig k_cfg{1.0, 0.2, 0.3, 0};

template <class F>
std::optional<errc> error_code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return std::nullopt;
}

double norm2(const std::vector<cplx>& v) {
  double s = 0.0;
  for (const cplx& z : v) s += std::norm(z);
  return s;
}

}  // namespace

TEST_CASE("construction, indexing, and validation") {
  const LatticeModel model(k_atom, k_cfg, 64);
  CHECK(model.sites() == 64);
  CHECK(model.dimension() == 129);
  CHECK(model.atom_site() == 32);  // default ceil(N/2)
  CHECK(model.index_negative(1) == 0);
  CHECK(model.index_negative(64) == 63);
  CHECK(model.index_positive(1) == 64);
  CHECK(model.index_atom() == 128);
  CHECK(model.hopping() == doctest::Approx(-0.2).epsilon(1e-15));

  const double theta = dressed_pair(k_atom).theta;
  CHECK(model.coupling_negative() ==
        doctest::Approx(-0.3 * std::cos(theta / 2)).epsilon(1e-14));
  CHECK(model.coupling_positive() ==
        doctest::Approx(0.3 * std::sin(theta / 2)).epsilon(1e-14));

  const LatticeModel odd(k_atom, k_cfg, 65, 0);
  CHECK(odd.atom_site() == 33);
  const LatticeModel custom(k_atom, k_cfg, 64, 10);
  CHECK(custom.atom_site() == 10);

  CHECK(error_code_of([] { LatticeModel(k_atom, k_cfg, 15); }) ==
        errc::invalid_argument);
  CHECK(error_code_of([] { LatticeModel(k_atom, k_cfg, 64, 65); }) ==
        errc::invalid_argument);
  CHECK(error_code_of([] { LatticeModel(k_atom, k_cfg, 64, -1); }) ==
        errc::invalid_argument);
}

TEST_CASE("dense matrix is symmetric and matches the matrix-free apply") {
  const LatticeModel model(k_atom, k_cfg, 20, 7);
  const int dim = model.dimension();
  const std::vector<double> h = model.dense();
  REQUIRE(static_cast<int>(h.size()) == dim * dim);

  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < i; ++j)
      CHECK(h[static_cast<size_t>(i) * dim + j] == h[static_cast<size_t>(j) * dim + i]);

  // Spot-check structure: hopping, on-site terms, atom couplings.
  const DressedPair pair = dressed_pair(k_atom);
  CHECK(h[0] == doctest::Approx(1.0 + pair.nu_minus).epsilon(1e-14));
  CHECK(h[static_cast<size_t>(model.index_positive(3)) * dim + model.index_positive(3)] ==
        doctest::Approx(1.0 + pair.nu_plus).epsilon(1e-14));
  CHECK(h[static_cast<size_t>(model.index_atom()) * dim + model.index_atom()] ==
        doctest::Approx(0.9).epsilon(1e-15));
  CHECK(h[0 * dim + 1] == doctest::Approx(-0.2).epsilon(1e-15));
  CHECK(h[static_cast<size_t>(model.index_negative(20)) * dim + model.index_positive(1)] ==
        0.0);  // hard wall, no wrap-around and no inter-chain hopping
  CHECK(h[static_cast<size_t>(model.index_negative(7)) * dim + model.index_atom()] ==
        doctest::Approx(model.coupling_negative()).epsilon(1e-15));
  CHECK(h[static_cast<size_t>(model.index_positive(7)) * dim + model.index_atom()] ==
        doctest::Approx(model.coupling_positive()).epsilon(1e-15));

  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  std::vector<cplx> in(dim), out(dim), ref(dim, cplx(0.0, 0.0));
  for (cplx& z : in) z = cplx(uni(rng), uni(rng));
  model.apply(in.data(), out.data());
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j)
      ref[i] += h[static_cast<size_t>(i) * dim + j] * in[j];
  for (int i = 0; i < dim; ++i) CHECK(std::abs(out[i] - ref[i]) < 1e-13);
}

TEST_CASE("uncoupled chains reproduce the hard-wall spectrum") {
  CrwConfig uncoupled = k_cfg;
  uncoupled.coupling = 0.0;
  const int n = 30;
  const LatticeModel model(k_atom, uncoupled, n);
  const DressedPair pair = dressed_pair(k_atom);

  std::vector<double> expected;
  expected.push_back(0.9);  // detached atom level
  for (int j = 1; j <= n; ++j) {
    const double cosine = std::cos(k_pi * j / (n + 1));
    expected.push_back(1.0 + pair.nu_minus - 2.0 * 0.2 * cosine);
    expected.push_back(1.0 + pair.nu_plus - 2.0 * 0.2 * cosine);
  }
  std::sort(expected.begin(), expected.end());

  const std::vector<double> eigs = model.eigenvalues();
  REQUIRE(eigs.size() == expected.size());
  for (size_t i = 0; i < eigs.size(); ++i)
    CHECK(eigs[i] == doctest::Approx(expected[i]).epsilon(1e-10));
}

TEST_CASE("lattice bound states converge to the closed-form energies") {
  const LatticeModel model(k_atom, k_cfg, 300);
  const std::vector<double> lattice = model.bound_states();
  const std::vector<double> closed_form = bound_state_energies(k_atom, k_cfg);
  REQUIRE(lattice.size() == closed_form.size());
  for (size_t i = 0; i < lattice.size(); ++i)
    CHECK(lattice[i] == doctest::Approx(closed_form[i]).epsilon(1e-6));
}

TEST_CASE("initial packet is normalized, localized, and validated") {
  const LatticeModel model(k_atom, k_cfg, 400);
  WavepacketSpec spec;
  spec.k0 = k_pi / 2;
  spec.sigma_x = 15.0;
  const std::vector<cplx> psi = initial_packet(model, spec);
  REQUIRE(static_cast<int>(psi.size()) == model.dimension());
  CHECK(norm2(psi) == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(std::abs(psi[model.index_atom()]) == 0.0);

  // Center of mass sits at the default launch point a - 7.5 sigma.
  double center = 0.0;
  for (int n = 1; n <= model.sites(); ++n)
    center += n * std::norm(psi[model.index_negative(n)]);
  CHECK(center == doctest::Approx(model.atom_site() - 7.5 * 15.0).epsilon(1e-6));

  // Positive channel is empty initially.
  double pos = 0.0;
  for (int n = 1; n <= model.sites(); ++n)
    pos += std::norm(psi[model.index_positive(n)]);
  CHECK(pos == 0.0);

  WavepacketSpec bad = spec;
  bad.k0 = 0.0;
  CHECK(error_code_of([&] { initial_packet(model, bad); }) == errc::invalid_argument);
  bad.k0 = k_pi / 2;
  bad.sigma_x = -1.0;
  CHECK(error_code_of([&] { initial_packet(model, bad); }) == errc::invalid_argument);
  bad.sigma_x = 15.0;
  bad.x0 = 30.0;  // 5 sigma support pokes past the left wall
  CHECK(error_code_of([&] { initial_packet(model, bad); }) == errc::invalid_argument);
  bad.x0 = 390.0;  // support crosses the atom site
  CHECK(error_code_of([&] { initial_packet(model, bad); }) == errc::invalid_argument);
}

TEST_CASE("propagation preserves norm, is linear, and has a trivial t=0 limit") {
  const LatticeModel model(k_atom, k_cfg, 60);
  const int dim = model.dimension();
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  std::vector<cplx> psi(dim);
  for (cplx& z : psi) z = cplx(uni(rng), uni(rng));
  const double scale = 1.0 / std::sqrt(norm2(psi));
  for (cplx& z : psi) z *= scale;

  const std::vector<cplx> still = propagate(model, psi, 0.0);
  for (int i = 0; i < dim; ++i) CHECK(std::abs(still[i] - psi[i]) < 1e-12);

  const std::vector<cplx> later = propagate(model, psi, 37.5);
  CHECK(std::abs(norm2(later) - 1.0) < 1e-10);

  // Linearity: evolving a sum equals the sum of evolutions.
  std::vector<cplx> phi(dim);
  for (cplx& z : phi) z = cplx(uni(rng), uni(rng));
  const double scale2 = 1.0 / std::sqrt(norm2(phi));
  for (cplx& z : phi) z *= scale2;
  std::vector<cplx> mix(dim);
  for (int i = 0; i < dim; ++i) mix[i] = 0.6 * psi[i] + cplx(0.0, 0.8) * phi[i];
  const std::vector<cplx> mixed = propagate(model, mix, 37.5);
  const std::vector<cplx> phi_later = propagate(model, phi, 37.5);
  for (int i = 0; i < dim; ++i)
    CHECK(std::abs(mixed[i] - (0.6 * later[i] + cplx(0.0, 0.8) * phi_later[i])) < 1e-9);
}

TEST_CASE("polynomial propagation matches the eigensolver") {
  const LatticeModel model(k_atom, k_cfg, 30, 11);
  const int dim = model.dimension();
  const std::vector<double> h = model.dense();

  std::vector<cplx> psi(dim, cplx(0.0, 0.0));
  psi[model.index_negative(5)] = cplx(0.6, 0.0);
  psi[model.index_positive(20)] = cplx(0.0, 0.8);

  // Independent reference: dense exp(-i H t) by Taylor series on a tiny time
  // slice, then repeated squaring.
  const double t = 100.0;
  const int squarings = 16;
  const double dt = t / (1 << squarings);
  const int dim2 = dim * dim;
  std::vector<cplx> expm(dim2, cplx(0.0, 0.0));
  {
    // exp(-i H dt) by Taylor series; |H| dt is tiny so this converges fast.
    std::vector<cplx> term(dim2, cplx(0.0, 0.0));
    for (int i = 0; i < dim; ++i) term[static_cast<size_t>(i) * dim + i] = 1.0;
    expm = term;
    for (int order = 1; order <= 24; ++order) {
      std::vector<cplx> next(dim2, cplx(0.0, 0.0));
      for (int i = 0; i < dim; ++i)
        for (int l = 0; l < dim; ++l) {
          const double hil = h[static_cast<size_t>(i) * dim + l];
          if (hil == 0.0) continue;
          const cplx f = cplx(0.0, -dt) * hil / static_cast<double>(order);
          for (int j = 0; j < dim; ++j)
            next[static_cast<size_t>(i) * dim + j] +=
                f * term[static_cast<size_t>(l) * dim + j];
        }
      term.swap(next);
      for (int i = 0; i < dim2; ++i) expm[i] += term[i];
    }
    for (int s = 0; s < squarings; ++s) {
      std::vector<cplx> sq(dim2, cplx(0.0, 0.0));
      for (int i = 0; i < dim; ++i)
        for (int l = 0; l < dim; ++l) {
          const cplx f = expm[static_cast<size_t>(i) * dim + l];
          if (f == cplx(0.0, 0.0)) continue;
          for (int j = 0; j < dim; ++j)
            sq[static_cast<size_t>(i) * dim + j] +=
                f * expm[static_cast<size_t>(l) * dim + j];
        }
      expm.swap(sq);
    }
  }
  std::vector<cplx> reference(dim, cplx(0.0, 0.0));
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j)
      reference[i] += expm[static_cast<size_t>(i) * dim + j] * psi[j];

  const std::vector<cplx> evolved = propagate(model, psi, t);
  for (int i = 0; i < dim; ++i) CHECK(std::abs(evolved[i] - reference[i]) < 1e-8);

  PropagatorOptions strict;
  strict.degree_multiplier = 2;
  strict.step_multiplier = 3;
  const std::vector<cplx> evolved2 = propagate(model, psi, t, strict);
  for (int i = 0; i < dim; ++i) CHECK(std::abs(evolved2[i] - evolved[i]) < 1e-9);
}

TEST_CASE("measurement rejects states still stuck on the atom") {
  const LatticeModel model(k_atom, k_cfg, 64);
  std::vector<cplx> psi(model.dimension(), cplx(0.0, 0.0));
  psi[model.index_atom()] = cplx(1.0, 0.0);
  WavepacketSpec spec;
  spec.k0 = k_pi / 2;
  spec.sigma_x = 5.0;
  CHECK(error_code_of([&] { measure_flows(model, psi, spec); }) ==
        errc::premature_measurement);
}

TEST_CASE("wavepacket flows agree with the closed-form amplitudes") {
  const LatticeModel model(k_atom, k_cfg, 800);
  WavepacketSpec spec;
  spec.k0 = k_pi / 2;  // omega_k = 1.0, the conversion resonance
  spec.sigma_x = 20.0;
  const OracleFlows flows = scatter_packet(model, spec);
  CHECK(flows.leak < 1e-6);
  CHECK(flows.atom_residual < 1e-4);
  CHECK(flows.norm_error < 1e-7);

  const ScatteringResult analytic = scatter_crw(k_atom, k_cfg, spec.k0);
  const FlowComparison cmp = compare_flows(k_atom, k_cfg, analytic, flows, spec);
  CHECK(cmp.pass);
  CHECK(cmp.dev_r <= cmp.tol_r);
  CHECK(cmp.dev_t <= cmp.tol_t);
  CHECK(cmp.dev_tr <= cmp.tol_tr);
  CHECK(cmp.oracle_tr == doctest::Approx(analytic.flow_tr).epsilon(0.05));

  SUBCASE("mismatched spec is rejected") {
    WavepacketSpec other = spec;
    other.k0 = spec.k0 + 0.1;
    CHECK(error_code_of([&] { compare_flows(k_atom, k_cfg, analytic, flows, other); }) ==
          errc::parameter_mismatch);
  }
}

TEST_CASE("packet containment is checked before propagating") {
  const LatticeModel model(k_atom, k_cfg, 400);
  WavepacketSpec spec;
  spec.k0 = k_pi / 2;
  spec.sigma_x = 10.0;
  spec.t_final = 5000.0;  // scattered packets would hit the walls
  CHECK(error_code_of([&] { scatter_packet(model, spec); }) == errc::invalid_argument);
}

TEST_CASE("state dump format") {
  const LatticeModel model(k_atom, k_cfg, 16, 8);
  std::vector<cplx> psi(model.dimension(), cplx(0.0, 0.0));
  psi[model.index_negative(2)] = cplx(0.5, -0.25);
  psi[model.index_atom()] = cplx(0.0, 1.0);
  const std::string path = "state_dump_test.txt";
  write_state(model, psi, path);

  std::ifstream in(path);
  REQUIRE(in.good());
  std::string header;
  while (in.peek() == '#') std::getline(in, header);  // metadata lines
  int negative_lines = 0, positive_lines = 0, atom_lines = 0;
  bool found_site2 = false;
  int site;
  std::string channel;
  double re, im;
  while (in >> site >> channel >> re >> im) {
    if (channel == "negative") {
      ++negative_lines;
      if (site == 2) {
        found_site2 = true;
        CHECK(re == doctest::Approx(0.5).epsilon(1e-12));
        CHECK(im == doctest::Approx(-0.25).epsilon(1e-12));
      }
    } else if (channel == "positive") {
      ++positive_lines;
    } else if (channel == "atom") {
      ++atom_lines;
      CHECK(im == doctest::Approx(1.0).epsilon(1e-12));
    }
  }
  CHECK(negative_lines == 16);
  CHECK(positive_lines == 16);
  CHECK(atom_lines == 1);
  CHECK(found_site2);
  std::remove(path.c_str());
}
