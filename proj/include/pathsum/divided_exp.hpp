// divided_exp.hpp - the phase factor of a path: the divided difference of
// e^{-i x t} over the path energies, with a confluent route for clustered or
// exactly repeated energies where the literal alternating sum would blow up.
#pragma once

#include <vector>

#include "pathsum/types.hpp"

namespace pathsum {

struct SpectrumNode {
    double energy = 0.0;
    int multiplicity = 1;
};

/// Energies grouped into clusters; each cluster is represented by the mean of
/// its members and carries the member count as multiplicity.
struct ClusteredSpectrum {
    std::vector<SpectrumNode> nodes;
    double cluster_tolerance = kDefaultDegeneracyTol;

    int total_multiplicity() const {
        int m = 0;
        for (const auto& nd : nodes) m += nd.multiplicity;
        return m;
    }
    bool all_singletons() const {
        for (const auto& nd : nodes)
            if (nd.multiplicity > 1) return false;
        return true;
    }
};

/// Deterministic single-linkage clustering of the (sorted) energies; adjacent
/// values closer than tol * max(1, |a|, |b|) share a cluster.
ClusteredSpectrum cluster_energies(const std::vector<double>& energies,
                                   double tol = kDefaultDegeneracyTol);

/// sum_i (-1)^{i-1} e^{-i E_i t} / d_i for pairwise distinct energies; throws
/// degenerate_energies_error when some pair is within tol so the caller can
/// reroute to the confluent evaluator.
Complex phase_factor(const std::vector<double>& energies, double t,
                     double tol = kDefaultDegeneracyTol);

/// Confluent divided difference of e^{-i x t} over the cluster nodes: the
/// continuous extension of phase_factor as energies coalesce. Bidiagonal
/// matrix-function route by default, shifted Taylor series when
/// spread * |t| < 1.
Complex phase_factor_confluent(const ClusteredSpectrum& spectrum, double t);

/// Confluent divided difference of x^n over the cluster nodes; the coincident-
/// energy counterpart of the closed-form coefficient C_l^n.
double coeff_confluent(const ClusteredSpectrum& spectrum, int n);

/// Router used by the path sums: clusters the energy multiset, then evaluates
/// the phase by the distinct or the confluent route.
Complex path_phase(const std::vector<double>& energies, double t,
                   double tol = kDefaultDegeneracyTol);

/// Same routing for the monomial weight x^n.
double path_coeff(const std::vector<double>& energies, int n,
                  double tol = kDefaultDegeneracyTol);

}  // namespace pathsum
