#pragma once

#include <vector>

namespace fluxon::disk {

// Single-particle level of a charged particle on a hard-wall disk threaded by
// a central flux line; natural units hbar = m = a0 = 1.
struct Level {
    int l;          // angular momentum
    int k;          // radial index, >= 1
    double nu;      // effective Bessel order |l + alpha|
    double energy;  // j_{nu,k}^2 / (2 R^2)
};

struct DiskSpectrum {
    double alpha;   // flux fraction reduced to [0, 1)
    double radius;
    int l_max;
    int k_max;
    std::vector<Level> levels;  // ascending energy; ties by (|l|, l, k)
};

// Order shift induced by the flux: |l + alpha|, i.e. |l| + alpha for l >= 0
// and |l| - alpha for l < 0 when alpha is in [0, 1).
double effective_order(int l, double alpha);

// Enumerate all levels with effective order below l_max + 1 and radial index
// up to k_max. Selecting channels by effective order (rather than by a
// symmetric window in l) keeps the order multiset exactly invariant under
// alpha -> alpha + 1 and alpha -> -alpha at any finite cutoff.
DiskSpectrum disk_spectrum(double alpha, double radius, int l_max, int k_max);

// Energy gap above the N-th filled level.
double fermi_gap(const DiskSpectrum& s, int n);

// Largest-gap filling closest to target; throws CutoffError when no shell
// with gap >= min_gap exists within 20% of the target.
int closed_shell_near(const DiskSpectrum& s, int target, double min_gap = 1e-8);

// Sum of the N lowest levels (spinless fermions, one particle per level).
// Requires the filled set to sit at least 20% below both cutoffs.
double fill_states(const DiskSpectrum& s, int n_particles);

// fill_states(alpha) - fill_states(0) at identical radius and filling N;
// cutoffs are chosen internally from N with guard margins.
double insertion_energy_numeric(double alpha, double radius, int n_particles);

// Closed-shell particle count for a disk of the given radius at one-layer
// density n2 (natural units), used by sweeps to fix canonical fillings.
int choose_filling(double radius, double n2, double min_gap = 1e-8);

}  // namespace fluxon::disk
