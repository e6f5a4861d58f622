#include "fluxon/lattice.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <mutex>
#include <sstream>
#include <stdexcept>

#include "fluxon/constants.hpp"
#include "fluxon/errors.hpp"
#include "fluxon/parallel.hpp"

namespace fluxon::lattice {

namespace {

using constants::pi;

constexpr double kRealGaugeTol = 1e-12;

std::vector<int> active_index_map(const LatticeModel& m, std::vector<int>* site_of_active) {
    std::vector<int> map(static_cast<std::size_t>(m.width) * m.height, -1);
    int next = 0;
    for (int y = 0; y < m.height; ++y) {
        for (int x = 0; x < m.width; ++x) {
            if (m.active(x, y)) {
                map[m.site_index(x, y)] = next++;
                if (site_of_active) site_of_active->push_back(m.site_index(x, y));
            }
        }
    }
    return map;
}

}  // namespace

int LatticeModel::active_sites() const {
    int n = 0;
    for (const auto h : hole_mask) n += (h == 0);
    return n;
}

double LatticeModel::link_phase(int x0, int y0, int x1, int y1) const {
    const int dx = x1 - x0, dy = y1 - y0;
    if (dx * dx + dy * dy != 1 || !in_bounds(x0, y0) || !in_bounds(x1, y1))
        throw std::domain_error("link_phase: sites are not nearest neighbors");
    if (dx == 1) return phase_right[x0 + y0 * (width - 1)];
    if (dx == -1) return -phase_right[x1 + y1 * (width - 1)];
    if (dy == 1) return phase_up[x0 + y0 * width];
    return -phase_up[x1 + y1 * width];
}

double LatticeModel::plaquette_phase(int px, int py) const {
    if (px < 0 || px >= width - 1 || py < 0 || py >= height - 1)
        throw std::domain_error("plaquette_phase: plaquette outside the lattice");
    return link_phase(px, py, px + 1, py) + link_phase(px + 1, py, px + 1, py + 1) +
           link_phase(px + 1, py + 1, px, py + 1) + link_phase(px, py + 1, px, py);
}

double LatticeModel::loop_phase(const std::vector<std::pair<int, int>>& loop) const {
    if (loop.size() < 4) throw std::domain_error("loop_phase: loop too short");
    double sum = 0.0;
    for (std::size_t i = 0; i < loop.size(); ++i) {
        const auto [x0, y0] = loop[i];
        const auto [x1, y1] = loop[(i + 1) % loop.size()];
        sum += link_phase(x0, y0, x1, y1);
    }
    return sum;
}

bool LatticeModel::real_gauge() const {
    auto is_real = [](double theta) {
        return std::abs(std::sin(theta)) < kRealGaugeTol;
    };
    return std::all_of(phase_up.begin(), phase_up.end(), is_real) &&
           std::all_of(phase_right.begin(), phase_right.end(), is_real);
}

LatticeModel build_lattice(int width, int height, double hopping,
                           const std::vector<std::pair<int, int>>& holes,
                           const std::vector<FluxonSite>& fluxons, StringDir dir) {
    if (width < 2 || height < 2) throw std::domain_error("build_lattice: lattice too small");
    if (!(hopping > 0.0)) throw std::domain_error("build_lattice: hopping must be positive");

    LatticeModel m;
    m.width = width;
    m.height = height;
    m.hopping = hopping;
    m.hole_mask.assign(static_cast<std::size_t>(width) * height, 0);
    m.phase_up.assign(static_cast<std::size_t>(width) * (height - 1), 0.0);
    m.phase_right.assign(static_cast<std::size_t>(width - 1) * height, 0.0);
    m.fluxons = fluxons;

    for (const auto& [hx, hy] : holes) {
        if (!m.in_bounds(hx, hy)) throw std::domain_error("build_lattice: hole site outside lattice");
        m.hole_mask[m.site_index(hx, hy)] = 1;
    }

    for (const auto& f : fluxons) {
        if (f.px < 0 || f.px >= width - 1 || f.py < 0 || f.py >= height - 1)
            throw std::domain_error("build_lattice: fluxon on a nonexistent plaquette");
        if (!std::isfinite(f.alpha))
            throw std::domain_error("build_lattice: non-finite flux fraction");
        const double phase = 2.0 * pi * f.alpha;
        if (dir == StringDir::PlusX) {
            for (int x = f.px + 1; x < width; ++x) m.phase_up[x + f.py * width] += phase;
        } else {
            for (int x = 0; x <= f.px; ++x) m.phase_up[x + f.py * width] -= phase;
        }
    }
    return m;
}

namespace {

void check_dense_cap(int n, const SpectrumOptions& opt) {
    if (n > opt.max_dense_sites) {
        std::ostringstream msg;
        msg << "spectrum: " << n << " active sites exceed the dense-solver cap "
            << opt.max_dense_sites
            << "; raise SpectrumOptions::max_dense_sites to accept the O(n^3) cost";
        throw CutoffError(msg.str());
    }
}

template <typename Matrix>
void fill_hamiltonian(const LatticeModel& m, const std::vector<int>& idx, Matrix& h) {
    for (int y = 0; y < m.height; ++y) {
        for (int x = 0; x < m.width; ++x) {
            if (!m.active(x, y)) continue;
            const int i = idx[m.site_index(x, y)];
            if (x + 1 < m.width && m.active(x + 1, y)) {
                const int j = idx[m.site_index(x + 1, y)];
                const double theta = m.link_phase(x, y, x + 1, y);
                if constexpr (std::is_same_v<typename Matrix::Scalar, double>) {
                    h(i, j) = -m.hopping * std::cos(theta);
                    h(j, i) = h(i, j);
                } else {
                    h(i, j) = -m.hopping * std::exp(std::complex<double>(0.0, theta));
                    h(j, i) = std::conj(h(i, j));
                }
            }
            if (y + 1 < m.height && m.active(x, y + 1)) {
                const int j = idx[m.site_index(x, y + 1)];
                const double theta = m.link_phase(x, y, x, y + 1);
                if constexpr (std::is_same_v<typename Matrix::Scalar, double>) {
                    h(i, j) = -m.hopping * std::cos(theta);
                    h(j, i) = h(i, j);
                } else {
                    h(i, j) = -m.hopping * std::exp(std::complex<double>(0.0, theta));
                    h(j, i) = std::conj(h(i, j));
                }
            }
        }
    }
}

}  // namespace

std::vector<double> spectrum(const LatticeModel& model, const SpectrumOptions& opt) {
    const int n = model.active_sites();
    if (n == 0) throw std::domain_error("spectrum: no active sites");
    check_dense_cap(n, opt);
    const std::vector<int> idx = active_index_map(model, nullptr);

    Eigen::VectorXd vals;
    if (model.real_gauge()) {
        Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n, n);
        fill_hamiltonian(model, idx, h);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h, Eigen::EigenvaluesOnly);
        if (solver.info() != Eigen::Success) throw NumericError("spectrum: eigensolver failed");
        vals = solver.eigenvalues();
    } else {
        Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(n, n);
        fill_hamiltonian(model, idx, h);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h, Eigen::EigenvaluesOnly);
        if (solver.info() != Eigen::Success) throw NumericError("spectrum: eigensolver failed");
        vals = solver.eigenvalues();
    }
    std::vector<double> out(vals.data(), vals.data() + vals.size());
    std::sort(out.begin(), out.end());
    return out;
}

RealSpectrum real_spectrum(const LatticeModel& model, const SpectrumOptions& opt) {
    if (!model.real_gauge())
        throw std::domain_error("real_spectrum: model carries complex phases");
    const int n = model.active_sites();
    if (n == 0) throw std::domain_error("real_spectrum: no active sites");
    check_dense_cap(n, opt);

    RealSpectrum rs;
    const std::vector<int> idx = active_index_map(model, &rs.site_of_active);
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n, n);
    fill_hamiltonian(model, idx, h);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h);
    if (solver.info() != Eigen::Success) throw NumericError("real_spectrum: eigensolver failed");

    rs.eigenvalues.assign(solver.eigenvalues().data(), solver.eigenvalues().data() + n);
    rs.eigenvectors.resize(n);
    for (int s = 0; s < n; ++s) {
        Eigen::VectorXd v = solver.eigenvectors().col(s);
        int arg_max = 0;
        for (int i = 1; i < n; ++i)
            if (std::abs(v[i]) > std::abs(v[arg_max])) arg_max = i;
        if (v[arg_max] < 0.0) v = -v;  // deterministic sign
        rs.eigenvectors[s].assign(v.data(), v.data() + n);
    }
    return rs;
}

double filled_energy(const std::vector<double>& eigenvalues, int n_particles, double hopping) {
    const int n = static_cast<int>(eigenvalues.size());
    if (n_particles < 1 || n_particles > n)
        throw std::domain_error("filled_energy: filling out of range");
    if (n_particles < n) {
        const double gap = eigenvalues[n_particles] - eigenvalues[n_particles - 1];
        if (!(gap > 1e-8 * hopping)) {
            std::ostringstream msg;
            msg << "filled_energy: Fermi gap " << gap << " at N=" << n_particles
                << " is below the closed-shell guard 1e-8 t";
            throw DegeneracyError(msg.str());
        }
    }
    long double sum = 0.0L;
    for (int i = 0; i < n_particles; ++i) sum += eigenvalues[i];
    return static_cast<double>(sum);
}

double filled_energy(const LatticeModel& model, int n_particles, const SpectrumOptions& opt) {
    return filled_energy(spectrum(model, opt), n_particles, model.hopping);
}

namespace {

// Closed-shell filling nearest the target that keeps a Fermi gap open in
// every spectrum of a sweep, so one canonical N serves all points. A robust
// gap is preferred; the 1e-8 t guard is the hard floor.
int common_closed_shell(const std::vector<std::vector<double>>& spectra, int target,
                        double min_gap) {
    const int n = static_cast<int>(spectra.front().size());
    const int radius = std::max(2, target / 25);
    auto min_gap_at = [&](int cand) {
        double gap = std::numeric_limits<double>::max();
        for (const auto& eigs : spectra) gap = std::min(gap, eigs[cand] - eigs[cand - 1]);
        return gap;
    };
    for (const double wanted : {1e-3, min_gap}) {
        for (int d = 0; d <= radius; ++d) {
            for (const int cand : {target - d, target + d}) {
                if (cand < 1 || cand >= n) continue;
                if (min_gap_at(cand) >= wanted) return cand;
            }
        }
    }
    throw DegeneracyError("no common closed shell near the requested filling");
}

}  // namespace

InteractionCurve interaction_curve(int lattice_size, std::pair<double, double> alphas,
                                   const std::vector<int>& separations, double filling,
                                   double hopping) {
    if (lattice_size < 8) throw std::domain_error("interaction_curve: lattice too small");
    if (separations.size() < 2)
        throw std::domain_error("interaction_curve: need at least two separations");
    if (!(filling > 0.0) || filling >= 1.0)
        throw std::domain_error("interaction_curve: filling fraction must lie in (0, 1)");
    for (const int a : separations) {
        if (a < 2 || a % 2 != 0)
            throw std::domain_error("interaction_curve: separations must be even and >= 2 "
                                    "(symmetric placement about the center)");
        if (a > lattice_size / 4)
            throw std::domain_error("interaction_curve: separation exceeds L/4");
    }
    if (!std::is_sorted(separations.begin(), separations.end()))
        throw std::domain_error("interaction_curve: separations must be ascending");

    const int pc = (lattice_size - 2) / 2;  // central plaquette index
    std::vector<std::vector<double>> spectra(separations.size());
    std::exception_ptr first_error;
    std::mutex error_mutex;
    parallel_for_index(separations.size(), [&](std::size_t i) {
        try {
            const int a = separations[i];
            const LatticeModel m = build_lattice(
                lattice_size, lattice_size, hopping, {},
                {FluxonSite{pc - a / 2, pc, alphas.first}, FluxonSite{pc + a / 2, pc, alphas.second}});
            spectra[i] = spectrum(m);
        } catch (...) {
            std::scoped_lock lock(error_mutex);
            if (!first_error) first_error = std::current_exception();
        }
    });
    if (first_error) std::rethrow_exception(first_error);

    const int sites = lattice_size * lattice_size;
    const int target = std::max(1, static_cast<int>(std::lround(filling * sites)));
    const int n_fill = common_closed_shell(spectra, target, 1e-8 * hopping);

    InteractionCurve curve;
    curve.lattice_size = lattice_size;
    curve.n_particles = n_fill;
    curve.filling_actual = static_cast<double>(n_fill) / sites;
    std::vector<double> log_a;
    for (std::size_t i = 0; i < separations.size(); ++i) {
        curve.separations.push_back(separations[i]);
        curve.energies.push_back(filled_energy(spectra[i], n_fill, hopping));
        log_a.push_back(std::log(static_cast<double>(separations[i])));
    }
    curve.reference_energy = curve.energies.front();
    for (const double e : curve.energies) curve.w.push_back(e - curve.reference_energy);

    curve.fit = linear_fit(log_a, curve.w);
    curve.poor_fit = curve.fit.r_squared < 0.9;

    // W(a) = xi (pi/16) (n2 hbar^2 / m_eff) ln a with m_eff = hbar^2/(2t) and
    // n2 = N / active sites (lattice spacing = 1), so xi = 8 slope / (pi t n2).
    curve.xi_estimate = 8.0 * curve.fit.slope / (pi * hopping * curve.filling_actual);
    return curve;
}

std::vector<std::pair<int, int>> interior_hole_plaquettes(int lattice_size, double hole_radius) {
    const double cx = 0.5 * (lattice_size - 1);
    const double cy = cx;
    auto in_hole = [&](int x, int y) {
        const double dx = x - cx, dy = y - cy;
        return std::sqrt(dx * dx + dy * dy) < hole_radius;
    };
    std::vector<std::pair<int, int>> out;
    for (int py = 0; py < lattice_size - 1; ++py) {
        for (int px = 0; px < lattice_size - 1; ++px) {
            bool deep = true;
            // Corners and their neighbors must all be removed sites, so the
            // plaquette touches no active site.
            for (int dy = 0; dy <= 1 && deep; ++dy) {
                for (int dx = 0; dx <= 1 && deep; ++dx) {
                    const int x = px + dx, y = py + dy;
                    deep = in_hole(x, y) && in_hole(x + 1, y) && in_hole(x - 1, y) &&
                           in_hole(x, y + 1) && in_hole(x, y - 1);
                }
            }
            if (deep) out.emplace_back(px, py);
        }
    }
    return out;
}

HoleInvarianceReport hole_invariance_check(int lattice_size, double hole_radius, double alpha,
                                           const std::vector<std::pair<int, int>>& positions,
                                           int n_particles) {
    if (positions.size() < 2)
        throw std::domain_error("hole_invariance_check: need at least two positions");

    const double cx = 0.5 * (lattice_size - 1);
    std::vector<std::pair<int, int>> holes;
    for (int y = 0; y < lattice_size; ++y) {
        for (int x = 0; x < lattice_size; ++x) {
            const double dx = x - cx, dy = y - cx;
            if (std::sqrt(dx * dx + dy * dy) < hole_radius) holes.emplace_back(x, y);
        }
    }

    const auto interior = interior_hole_plaquettes(lattice_size, hole_radius);
    for (const auto& pos : positions) {
        if (std::find(interior.begin(), interior.end(), pos) == interior.end()) {
            std::ostringstream msg;
            msg << "hole_invariance_check: plaquette (" << pos.first << "," << pos.second
                << ") is adjacent to an active site";
            throw std::domain_error(msg.str());
        }
    }

    HoleInvarianceReport rep;
    rep.positions = positions;
    rep.n_particles = n_particles;
    rep.energies.resize(positions.size());
    std::exception_ptr first_error;
    std::mutex error_mutex;
    parallel_for_index(positions.size(), [&](std::size_t i) {
        try {
            const LatticeModel m =
                build_lattice(lattice_size, lattice_size, 1.0, holes,
                              {FluxonSite{positions[i].first, positions[i].second, alpha}});
            rep.energies[i] = filled_energy(m, n_particles);
        } catch (...) {
            std::scoped_lock lock(error_mutex);
            if (!first_error) first_error = std::current_exception();
        }
    });
    if (first_error) std::rethrow_exception(first_error);

    for (std::size_t i = 0; i < rep.energies.size(); ++i)
        for (std::size_t j = i + 1; j < rep.energies.size(); ++j)
            rep.max_pairwise_delta =
                std::max(rep.max_pairwise_delta, std::abs(rep.energies[i] - rep.energies[j]));
    rep.threshold = 1e-9;  // in units of t = 1
    rep.passed = rep.max_pairwise_delta <= rep.threshold;
    return rep;
}

std::vector<std::pair<int, int>> ring_sites(const LatticeModel& model, int px, int py, int k) {
    const int x_lo = px + 1 - k, x_hi = px + k;
    const int y_lo = py + 1 - k, y_hi = py + k;
    if (x_lo < 0 || y_lo < 0 || x_hi >= model.width || y_hi >= model.height) return {};
    std::vector<std::pair<int, int>> loop;
    for (int x = x_lo; x <= x_hi; ++x) loop.emplace_back(x, y_lo);
    for (int y = y_lo + 1; y <= y_hi; ++y) loop.emplace_back(x_hi, y);
    for (int x = x_hi - 1; x >= x_lo; --x) loop.emplace_back(x, y_hi);
    for (int y = y_hi - 1; y > y_lo; --y) loop.emplace_back(x_lo, y);
    for (const auto& [x, y] : loop)
        if (!model.active(x, y)) return {};
    return loop;
}

int loop_sign_product(const LatticeModel& model, const std::vector<std::pair<int, int>>& loop) {
    if (!model.real_gauge())
        throw std::domain_error("loop_sign_product: model carries complex phases");
    int product = 1;
    for (std::size_t i = 0; i < loop.size(); ++i) {
        const auto [x0, y0] = loop[i];
        const auto [x1, y1] = loop[(i + 1) % loop.size()];
        product *= std::cos(model.link_phase(x0, y0, x1, y1)) < 0.0 ? -1 : 1;
    }
    return product;
}

NullLineReport null_line_diagnostic(const LatticeModel& model, int eigenvector_index) {
    if (!model.real_gauge())
        throw std::domain_error("null_line_diagnostic: complex phases present; the "
                                "diagnostic needs the real semi-fluxon gauge");
    if (model.fluxons.size() != 1)
        throw std::domain_error("null_line_diagnostic: expects exactly one fluxon");

    const RealSpectrum rs = real_spectrum(model);
    if (eigenvector_index < 0 ||
        eigenvector_index >= static_cast<int>(rs.eigenvalues.size()))
        throw std::domain_error("null_line_diagnostic: eigenvector index out of range");
    const std::vector<double>& psi = rs.eigenvectors[eigenvector_index];

    std::vector<int> active_of_site(static_cast<std::size_t>(model.width) * model.height, -1);
    for (std::size_t a = 0; a < rs.site_of_active.size(); ++a)
        active_of_site[rs.site_of_active[a]] = static_cast<int>(a);

    double psi_max = 0.0;
    for (const double v : psi) psi_max = std::max(psi_max, std::abs(v));
    const double zero_tol = 1e-12 * psi_max;

    NullLineReport rep;
    rep.eigenvector_index = eigenvector_index;
    rep.all_sign_products_negative = true;

    const auto& f = model.fluxons.front();
    for (int k = 1;; ++k) {
        const auto loop = ring_sites(model, f.px, f.py, k);
        if (loop.empty()) break;
        RingReport ring;
        ring.k = k;
        ring.sign_product = loop_sign_product(model, loop);
        for (std::size_t i = 0; i < loop.size(); ++i) {
            const auto [x0, y0] = loop[i];
            const auto [x1, y1] = loop[(i + 1) % loop.size()];
            const double p0 = psi[active_of_site[model.site_index(x0, y0)]];
            const double p1 = psi[active_of_site[model.site_index(x1, y1)]];
            if (std::abs(p0) <= zero_tol || std::abs(p1) <= zero_tol) {
                ++ring.near_zero_sites;
                continue;
            }
            const double link_sign =
                std::cos(model.link_phase(x0, y0, x1, y1)) < 0.0 ? -1.0 : 1.0;
            if (p0 * p1 * link_sign < 0.0) ++ring.wall_crossings;
        }
        ring.odd_parity = (ring.wall_crossings % 2) == 1;
        rep.all_sign_products_negative &= (ring.sign_product == -1);
        rep.rings.push_back(ring);
    }
    if (rep.rings.empty())
        throw std::domain_error("null_line_diagnostic: no complete ring fits around the fluxon");
    return rep;
}

}  // namespace fluxon::lattice
