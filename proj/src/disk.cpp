#include "fluxon/disk.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <map>
#include <sstream>
#include <stdexcept>

#include "fluxon/bessel.hpp"
#include "fluxon/constants.hpp"
#include "fluxon/errors.hpp"

namespace fluxon::disk {

namespace {

double reduce_period(double alpha) {
    if (!std::isfinite(alpha)) throw std::domain_error("disk: non-finite flux fraction");
    double frac = std::fmod(alpha, 1.0);
    if (frac < 0.0) frac += 1.0;
    if (frac == 1.0) frac = 0.0;
    return frac;
}

bool level_less(const Level& a, const Level& b) {
    if (a.energy != b.energy) return a.energy < b.energy;
    const int aa = std::abs(a.l), ab = std::abs(b.l);
    if (aa != ab) return aa < ab;
    if (a.l != b.l) return a.l < b.l;
    return a.k < b.k;
}

}  // namespace

double effective_order(int l, double alpha) {
    if (!(alpha >= 0.0) || alpha >= 1.0)
        throw std::domain_error("effective_order: alpha must lie in [0, 1)");
    return std::abs(static_cast<double>(l) + alpha);
}

DiskSpectrum disk_spectrum(double alpha, double radius, int l_max, int k_max) {
    if (!(radius > 0.0)) throw std::domain_error("disk_spectrum: radius must be positive");
    if (l_max < 0 || k_max < 1) throw std::domain_error("disk_spectrum: bad cutoffs");
    if (l_max + 1 > 200)
        throw CutoffError("disk_spectrum: l_max exceeds the supported Bessel order cap (200)");

    const double frac = reduce_period(alpha);

    DiskSpectrum s;
    s.alpha = frac;
    s.radius = radius;
    s.l_max = l_max;
    s.k_max = k_max;
    s.levels.reserve(static_cast<std::size_t>(2 * l_max + 2) * k_max);

    const double two_r2 = 2.0 * radius * radius;
    const double nu_cut = static_cast<double>(l_max) + 1.0;

    // Zeros depend only on the effective order; +l and -(l+1) channels share
    // one order when 2*frac is integral, so cache per order value.
    std::map<double, std::vector<double>> zero_cache;
    for (int l = -l_max - 1; l <= l_max; ++l) {
        const double nu = effective_order(l, frac);
        if (!(nu < nu_cut)) continue;
        auto [it, inserted] = zero_cache.try_emplace(nu);
        if (inserted) {
            it->second.resize(k_max);
            for (int k = 1; k <= k_max; ++k) it->second[k - 1] = bessel_zero(nu, k);
        }
        for (int k = 1; k <= k_max; ++k) {
            const double j = it->second[k - 1];
            s.levels.push_back(Level{l, k, nu, j * j / two_r2});
        }
    }
    std::sort(s.levels.begin(), s.levels.end(), level_less);
    return s;
}

double fermi_gap(const DiskSpectrum& s, int n) {
    if (n < 1 || n + 1 > static_cast<int>(s.levels.size()))
        throw std::domain_error("fermi_gap: filling out of range");
    return s.levels[n].energy - s.levels[n - 1].energy;
}

int closed_shell_near(const DiskSpectrum& s, int target, double min_gap) {
    const int count = static_cast<int>(s.levels.size());
    if (target < 1 || target >= count)
        throw std::domain_error("closed_shell_near: target filling out of range");
    const int radius = std::max(1, target / 5);
    for (int d = 0; d <= radius; ++d) {
        for (const int n : {target - d, target + d}) {
            if (n < 1 || n + 1 > count) continue;
            if (fermi_gap(s, n) >= min_gap) return n;
        }
    }
    std::ostringstream msg;
    msg << "closed_shell_near: no shell with gap >= " << min_gap << " within 20% of N="
        << target;
    throw CutoffError(msg.str());
}

double fill_states(const DiskSpectrum& s, int n_particles) {
    if (n_particles < 1) throw std::domain_error("fill_states: need a positive filling");
    if (n_particles > static_cast<int>(s.levels.size()))
        throw CutoffError("fill_states: filling exceeds the enumerated level count");

    int max_abs_l = 0, max_k = 0;
    long double sum = 0.0L;
    for (int i = 0; i < n_particles; ++i) {
        const Level& lv = s.levels[i];
        sum += lv.energy;
        max_abs_l = std::max(max_abs_l, std::abs(lv.l));
        max_k = std::max(max_k, lv.k);
    }
    if (max_abs_l > 0.8 * s.l_max || max_k > 0.8 * s.k_max) {
        std::ostringstream msg;
        msg << "fill_states: filled set reaches (|l|=" << max_abs_l << ", k=" << max_k
            << "), within 20% of cutoffs (l_max=" << s.l_max << ", k_max=" << s.k_max
            << "); enlarge the cutoffs";
        throw CutoffError(msg.str());
    }
    return static_cast<double>(sum);
}

namespace {

void auto_cutoffs(int n_particles, int& l_max, int& k_max) {
    // The number of Dirichlet levels below j <= X grows like X^2/4, so the
    // Fermi scale sits near 2 sqrt(N); pad so the 20% guard margin holds.
    const double x_est = 2.0 * std::sqrt(static_cast<double>(n_particles)) + 6.0;
    l_max = static_cast<int>(std::ceil(x_est / 0.8)) + 2;
    k_max = static_cast<int>(std::ceil(x_est / (0.8 * constants::pi))) + 4;
    if (l_max + 1 > 200)
        throw CutoffError("insertion_energy_numeric: required angular cutoff exceeds the "
                          "supported Bessel order cap (200); reduce N");
}

}  // namespace

double insertion_energy_numeric(double alpha, double radius, int n_particles) {
    int l_max = 0, k_max = 0;
    auto_cutoffs(n_particles, l_max, k_max);
    const double frac = reduce_period(alpha);
    if (frac == 0.0) return 0.0;  // integer flux is a gauge artifact
    const DiskSpectrum with_flux = disk_spectrum(frac, radius, l_max, k_max);
    const DiskSpectrum no_flux = disk_spectrum(0.0, radius, l_max, k_max);
    return fill_states(with_flux, n_particles) - fill_states(no_flux, n_particles);
}

int choose_filling(double radius, double n2, double min_gap) {
    if (!(n2 > 0.0)) throw std::domain_error("choose_filling: n2 must be positive");
    const int target =
        std::max(1, static_cast<int>(std::lround(n2 * constants::pi * radius * radius)));
    int l_max = 0, k_max = 0;
    auto_cutoffs(target, l_max, k_max);
    const DiskSpectrum ref = disk_spectrum(0.0, radius, l_max, k_max);
    return closed_shell_near(ref, target, min_gap);
}

}  // namespace fluxon::disk
