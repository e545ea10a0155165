#include <freqconv/dressed.hpp>
#include <freqconv/lattice.hpp>

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <numeric>

namespace freqconv {

namespace {

constexpr double k_pi = std::numbers::pi;

using cvec = std::vector<std::complex<double>>;

double resolve_x0(const LatticeModel& model, const WavepacketSpec& spec) {
  return spec.x0 > 0.0 ? spec.x0 : model.atom_site() - 7.5 * spec.sigma_x;
}

void validate_packet_spec(const WavepacketSpec& spec) {
  if (!std::isfinite(spec.k0) || !std::isfinite(spec.sigma_x) || !std::isfinite(spec.x0) ||
      !std::isfinite(spec.t_final) || !std::isfinite(spec.error_budget)) {
    fail(errc::invalid_argument, "wavepacket parameters must be finite");
  }
  if (!(spec.k0 > 0.0 && spec.k0 < k_pi) || std::sin(spec.k0) <= 1e-6) {
    fail(errc::invalid_argument,
         "carrier wavevector must lie strictly inside (0, pi), away from the band edges");
  }
  if (!(spec.sigma_x > 0.0)) fail(errc::invalid_argument, "sigma_x must be > 0");
  if (!(spec.error_budget > 0.0)) fail(errc::invalid_argument, "error budget must be > 0");
}

// J_0..J_M at x > 0 by downward recurrence, normalized through
// J_0 + 2 sum_{m even} J_m = 1.
std::vector<double> bessel_j_table(int degree, double x) {
  const int start = degree + static_cast<int>(std::ceil(20.0 + 1.5 * std::sqrt(x + degree)));
  std::vector<double> js(start + 2, 0.0);
  js[start] = 1e-300;
  for (int m = start; m >= 1; --m) {
    js[m - 1] = (2.0 * m / x) * js[m] - js[m + 1];
    if (std::abs(js[m - 1]) > 1e200) {
      for (int i = m - 1; i <= start + 1; ++i) js[i] *= 1e-200;
    }
  }
  double sum = js[0];
  for (int m = 2; m <= start; m += 2) sum += 2.0 * js[m];
  if (sum == 0.0 || !std::isfinite(sum)) {
    fail(errc::no_convergence, "Bessel normalization failed");
  }
  js.resize(degree + 1);
  for (double& v : js) v /= sum;
  return js;
}

}  // namespace

LatticeModel::LatticeModel(const AtomConfig& atom, const CrwConfig& cfg, int site_count,
                           int atom_site)
    : m_atom(atom), m_cfg(cfg), m_pair(dressed_pair(atom)), m_sites(site_count) {
  cfg.validate();
  if (site_count < 16) {
    fail(errc::invalid_argument, "lattice needs at least 16 sites per chain");
  }
  m_atom_site = atom_site == 0 ? (site_count + 1) / 2 : atom_site;
  if (m_atom_site < 1 || m_atom_site > site_count) {
    fail(errc::invalid_argument, "atom site must lie in [1, sites]");
  }
  m_diag_neg = cfg.omega + m_pair.nu_minus;
  m_diag_pos = cfg.omega + m_pair.nu_plus;
  m_diag_atom = atom.omega_e;
  m_couple_neg = -cfg.coupling * std::cos(0.5 * m_pair.theta);
  m_couple_pos = cfg.coupling * std::sin(0.5 * m_pair.theta);
}

void LatticeModel::apply(const std::complex<double>* in, std::complex<double>* out) const {
  const int n = m_sites;
  const double xi = m_cfg.xi;
  for (int chain = 0; chain < 2; ++chain) {
    const int off = chain * n;
    const double diag = chain == 0 ? m_diag_neg : m_diag_pos;
    out[off] = diag * in[off] - xi * in[off + 1];
    for (int i = 1; i < n - 1; ++i) {
      out[off + i] = diag * in[off + i] - xi * (in[off + i - 1] + in[off + i + 1]);
    }
    out[off + n - 1] = diag * in[off + n - 1] - xi * in[off + n - 2];
  }
  const int ia = index_atom();
  const int in_ = index_negative(m_atom_site);
  const int ip = index_positive(m_atom_site);
  out[ia] = m_diag_atom * in[ia] + m_couple_neg * in[in_] + m_couple_pos * in[ip];
  out[in_] += m_couple_neg * in[ia];
  out[ip] += m_couple_pos * in[ia];
}

std::vector<double> LatticeModel::dense() const {
  const int dim = dimension();
  if (dim > 6000) {
    fail(errc::precondition, "dense form is guarded to dimension <= 6000");
  }
  std::vector<double> h(static_cast<size_t>(dim) * dim, 0.0);
  auto at = [&](int r, int c) -> double& { return h[static_cast<size_t>(r) * dim + c]; };
  const int n = m_sites;
  for (int chain = 0; chain < 2; ++chain) {
    const int off = chain * n;
    const double diag = chain == 0 ? m_diag_neg : m_diag_pos;
    for (int i = 0; i < n; ++i) at(off + i, off + i) = diag;
    for (int i = 0; i + 1 < n; ++i) {
      at(off + i, off + i + 1) = -m_cfg.xi;
      at(off + i + 1, off + i) = -m_cfg.xi;
    }
  }
  const int ia = index_atom();
  at(ia, ia) = m_diag_atom;
  at(ia, index_negative(m_atom_site)) = m_couple_neg;
  at(index_negative(m_atom_site), ia) = m_couple_neg;
  at(ia, index_positive(m_atom_site)) = m_couple_pos;
  at(index_positive(m_atom_site), ia) = m_couple_pos;
  return h;
}

std::vector<double> LatticeModel::eigenvalues() const {
  const int dim = dimension();
  const std::vector<double> h = dense();
  Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>
      mat(h.data(), dim, dim);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(mat, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    fail(errc::no_convergence, "dense eigensolve did not converge");
  }
  std::vector<double> evals(solver.eigenvalues().data(), solver.eigenvalues().data() + dim);
  std::sort(evals.begin(), evals.end());
  return evals;
}

std::vector<double> LatticeModel::bound_states() const {
  const double margin = 10.0 * m_cfg.xi / (static_cast<double>(m_sites) * m_sites);
  const double neg_lo = m_diag_neg - 2.0 * m_cfg.xi - margin;
  const double neg_hi = m_diag_neg + 2.0 * m_cfg.xi + margin;
  const double pos_lo = m_diag_pos - 2.0 * m_cfg.xi - margin;
  const double pos_hi = m_diag_pos + 2.0 * m_cfg.xi + margin;
  std::vector<double> out;
  for (double e : eigenvalues()) {
    const bool in_neg = e >= neg_lo && e <= neg_hi;
    const bool in_pos = e >= pos_lo && e <= pos_hi;
    if (!in_neg && !in_pos) out.push_back(e);
  }
  return out;
}

std::vector<std::complex<double>> initial_packet(const LatticeModel& model,
                                                 const WavepacketSpec& spec) {
  validate_packet_spec(spec);
  const double x0 = resolve_x0(model, spec);
  const double lo = x0 - 5.0 * spec.sigma_x;
  const double hi = x0 + 5.0 * spec.sigma_x;
  if (!(lo >= 1.0 && hi <= model.atom_site() - 1.0)) {
    fail(errc::invalid_argument,
         "packet support (x0 +- 5 sigma_x) must fit between the wall and the atom");
  }
  cvec psi(model.dimension(), 0.0);
  const double inv4s2 = 1.0 / (4.0 * spec.sigma_x * spec.sigma_x);
  double norm2 = 0.0;
  for (int n = 1; n <= model.sites(); ++n) {
    const double d = n - x0;
    const double amp = std::exp(-d * d * inv4s2);
    psi[model.index_negative(n)] = std::polar(amp, spec.k0 * n);
    norm2 += amp * amp;
  }
  const double scale = 1.0 / std::sqrt(norm2);
  for (auto& v : psi) v *= scale;
  return psi;
}

std::vector<std::complex<double>> propagate(const LatticeModel& model,
                                            std::vector<std::complex<double>> psi,
                                            double t, const PropagatorOptions& opts) {
  if (psi.size() != static_cast<size_t>(model.dimension())) {
    fail(errc::invalid_argument, "state has the wrong dimension");
  }
  if (!std::isfinite(t) || t < 0.0) {
    fail(errc::invalid_argument, "evolution time must be finite and >= 0");
  }
  if (opts.degree_multiplier < 1 || opts.step_multiplier < 1 ||
      !(opts.error_budget > 0.0)) {
    fail(errc::invalid_argument, "propagator options out of range");
  }
  if (t == 0.0) return psi;

  const double reach =
      2.0 * model.config().xi + std::abs(model.coupling_negative()) +
      std::abs(model.coupling_positive());
  const double dmin = std::min({model.config().omega + model.pair().nu_minus,
                                model.config().omega + model.pair().nu_plus,
                                model.atom().omega_e});
  const double dmax = std::max({model.config().omega + model.pair().nu_minus,
                                model.config().omega + model.pair().nu_plus,
                                model.atom().omega_e});
  const double lo = dmin - reach;
  const double hi = dmax + reach;
  const double center = 0.5 * (hi + lo);
  const double half_width = 0.5 * (hi - lo);

  const long chunks =
      std::max<long>(1, static_cast<long>(std::ceil(half_width * t / 128.0))) *
      opts.step_multiplier;
  const double dt = t / static_cast<double>(chunks);
  const double x = half_width * dt;

  const int degree =
      opts.degree_multiplier *
      static_cast<int>(std::ceil(x + 40.0 + 1.5 * std::sqrt(x)));
  const std::vector<double> js = bessel_j_table(degree, x);

  // c_m = (2 - delta_m0) e^{-i center dt} (-i)^m J_m(half_width dt)
  std::vector<std::complex<double>> coeff(degree + 1);
  const std::complex<double> phase = std::polar(1.0, -center * dt);
  std::complex<double> ipow(1.0, 0.0);
  for (int m = 0; m <= degree; ++m) {
    coeff[m] = (m == 0 ? 1.0 : 2.0) * phase * ipow * js[m];
    ipow *= std::complex<double>(0.0, -1.0);
  }

  const double norm_in = std::sqrt(
      std::accumulate(psi.begin(), psi.end(), 0.0,
                      [](double acc, const std::complex<double>& v) { return acc + std::norm(v); }));

  const int dim = model.dimension();
  cvec tprev(dim), tcur(dim), tnext(dim), acc(dim);
  auto htilde = [&](const cvec& in, cvec& out) {
    model.apply(in.data(), out.data());
    for (int i = 0; i < dim; ++i) out[i] = (out[i] - center * in[i]) / half_width;
  };

  for (long c = 0; c < chunks; ++c) {
    tprev = psi;
    htilde(tprev, tcur);
    for (int i = 0; i < dim; ++i) acc[i] = coeff[0] * tprev[i] + coeff[1] * tcur[i];
    for (int m = 2; m <= degree; ++m) {
      htilde(tcur, tnext);
      for (int i = 0; i < dim; ++i) tnext[i] = 2.0 * tnext[i] - tprev[i];
      const std::complex<double> cm = coeff[m];
      for (int i = 0; i < dim; ++i) acc[i] += cm * tnext[i];
      std::swap(tprev, tcur);
      std::swap(tcur, tnext);
    }
    psi.swap(acc);
  }

  double norm_out2 = 0.0;
  for (const auto& v : psi) norm_out2 += std::norm(v);
  const double norm_out = std::sqrt(norm_out2);
  if (!(std::abs(norm_out - norm_in) <= opts.error_budget * std::max(norm_in, 1e-300))) {
    fail(errc::no_convergence,
         "propagation lost norm beyond the error budget; raise degree_multiplier or "
         "step_multiplier");
  }
  return psi;
}

OracleFlows measure_flows(const LatticeModel& model,
                          const std::vector<std::complex<double>>& psi,
                          const WavepacketSpec& spec) {
  validate_packet_spec(spec);
  if (psi.size() != static_cast<size_t>(model.dimension())) {
    fail(errc::invalid_argument, "state has the wrong dimension");
  }
  const int n = model.sites();
  const int a = model.atom_site();
  const int guard = static_cast<int>(std::ceil(5.0 * spec.sigma_x));
  if (!(guard + 1 <= a - 1 && a <= n - guard)) {
    fail(errc::invalid_argument, "guard zones reach the atom site; lattice too small");
  }
  auto p = [&](int idx) { return std::norm(psi[idx]); };
  OracleFlows flows;
  for (int s = 1; s <= n; ++s) {
    const double pn = p(model.index_negative(s));
    const double pp = p(model.index_positive(s));
    if (s <= guard || s > n - guard) {
      flows.leak += pn + pp;
      continue;
    }
    if (s <= a - 1) {
      flows.reflect += pn;
    } else {
      flows.transmit += pn;
    }
    flows.transfer += pp;
  }
  flows.atom_residual = p(model.index_atom());
  const double total =
      flows.reflect + flows.transmit + flows.transfer + flows.leak + flows.atom_residual;
  flows.norm_error = std::abs(total - 1.0);
  if (flows.atom_residual >= 1e-4) {
    fail(errc::premature_measurement,
         "atom still holds >= 1e-4 probability; increase t_final");
  }
  return flows;
}

OracleFlows scatter_packet(const LatticeModel& model, const WavepacketSpec& spec,
                           const PropagatorOptions& opts) {
  validate_packet_spec(spec);
  WavepacketSpec resolved = spec;
  resolved.x0 = resolve_x0(model, spec);

  const double v_in = 2.0 * model.config().xi * std::sin(spec.k0);
  const double omega_in = dispersion(model.config(), spec.k0);
  const Partner partner = partner_wavevector(model.config(), model.pair(), omega_in);
  double v_slow = v_in;
  double v_fast = v_in;
  if (partner.branch == PartnerBranch::propagating) {
    const double v_q = 2.0 * model.config().xi * std::sin(partner.value);
    v_slow = std::min(v_in, v_q);
    v_fast = std::max(v_in, v_q);
  }
  const double t_hit = (model.atom_site() - resolved.x0) / v_in;
  if (resolved.t_final <= 0.0) {
    resolved.t_final = t_hit + 6.0 * spec.sigma_x / v_slow;
  }
  const double dwell = resolved.t_final - t_hit;
  if (!(dwell > 0.0)) {
    fail(errc::invalid_argument, "t_final precedes the packet's arrival at the atom");
  }
  if (!(model.atom_site() - v_in * dwell >= 1.0 + 4.5 * spec.sigma_x)) {
    fail(errc::invalid_argument,
         "reflected packet would reach the left wall before t_final");
  }
  if (!(model.atom_site() + v_fast * dwell <= model.sites() - 4.5 * spec.sigma_x)) {
    fail(errc::invalid_argument,
         "outgoing packet would reach the right wall before t_final");
  }

  PropagatorOptions effective = opts;
  effective.error_budget = spec.error_budget;
  cvec psi = initial_packet(model, resolved);
  psi = propagate(model, std::move(psi), resolved.t_final, effective);
  OracleFlows flows = measure_flows(model, psi, resolved);
  flows.t_final = resolved.t_final;
  return flows;
}

void write_state(const LatticeModel& model, const std::vector<std::complex<double>>& psi,
                 const std::string& path) {
  if (psi.size() != static_cast<size_t>(model.dimension())) {
    fail(errc::invalid_argument, "state has the wrong dimension");
  }
  std::ofstream out(path);
  if (!out) fail(errc::io_failure, "cannot open '" + path + "' for writing");
  out.precision(17);
  out << "# lattice state: sites " << model.sites() << ", atom site " << model.atom_site()
      << "\n";
  out << "# columns: site channel re im\n";
  for (int s = 1; s <= model.sites(); ++s) {
    const auto& v = psi[model.index_negative(s)];
    out << s << " negative " << v.real() << " " << v.imag() << "\n";
  }
  for (int s = 1; s <= model.sites(); ++s) {
    const auto& v = psi[model.index_positive(s)];
    out << s << " positive " << v.real() << " " << v.imag() << "\n";
  }
  const auto& v = psi[model.index_atom()];
  out << model.atom_site() << " atom " << v.real() << " " << v.imag() << "\n";
  if (!out) fail(errc::io_failure, "write to '" + path + "' failed");
}

FlowComparison compare_flows(const AtomConfig& atom, const CrwConfig& cfg,
                             const ScatteringResult& analytic, const OracleFlows& oracle,
                             const WavepacketSpec& spec) {
  if (std::abs(analytic.incident_k - spec.k0) > 1e-9) {
    fail(errc::parameter_mismatch,
         "closed-form result and wavepacket spec disagree on the incident wavevector");
  }
  FlowComparison cmp;
  cmp.omega_k = analytic.incident_omega;
  cmp.k0 = spec.k0;
  cmp.analytic_r = analytic.flow_r;
  cmp.analytic_t = analytic.flow_t;
  cmp.analytic_tr = analytic.flow_tr;
  cmp.oracle_r = oracle.reflect;
  cmp.oracle_t = oracle.transmit;
  cmp.oracle_tr = oracle.transfer;
  cmp.atom_residual = oracle.atom_residual;
  cmp.leak = oracle.leak;
  cmp.t_final = oracle.t_final;

  const double sigma_omega = 2.0 * cfg.xi * std::sin(spec.k0) / (2.0 * spec.sigma_x);
  const double band_lo = cfg.omega - 2.0 * cfg.xi;
  const double band_hi = cfg.omega + 2.0 * cfg.xi;
  const double h = std::min(sigma_omega,
                            0.45 * std::min(cmp.omega_k - band_lo, band_hi - cmp.omega_k));
  double slope_r = 0.0, slope_t = 0.0, slope_tr = 0.0;
  if (h > 0.0) {
    const ScatteringResult up = scatter_crw_frequency(atom, cfg, cmp.omega_k + h);
    const ScatteringResult dn = scatter_crw_frequency(atom, cfg, cmp.omega_k - h);
    slope_r = (up.flow_r - dn.flow_r) / (2.0 * h);
    slope_t = (up.flow_t - dn.flow_t) / (2.0 * h);
    slope_tr = (up.flow_tr - dn.flow_tr) / (2.0 * h);
  }
  const double floor = 0.02;
  cmp.tol_r = std::max(floor, 3.0 * sigma_omega * std::abs(slope_r));
  cmp.tol_t = std::max(floor, 3.0 * sigma_omega * std::abs(slope_t));
  cmp.tol_tr = std::max(floor, 3.0 * sigma_omega * std::abs(slope_tr));
  cmp.dev_r = std::abs(cmp.analytic_r - cmp.oracle_r);
  cmp.dev_t = std::abs(cmp.analytic_t - cmp.oracle_t);
  cmp.dev_tr = std::abs(cmp.analytic_tr - cmp.oracle_tr);
  cmp.pass = cmp.dev_r <= cmp.tol_r && cmp.dev_t <= cmp.tol_t && cmp.dev_tr <= cmp.tol_tr;
  return cmp;
}

}  // namespace freqconv
