#pragma once

// Complexity measures on sign matrices and the lower-bound evaluators built on
// them. Every evaluator reports the main term of its bound; additive
// constants are not instantiated and are flagged in the warnings instead.

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "commbound/boolfn.hpp"
#include "commbound/composer.hpp"
#include "commbound/matrix.hpp"

namespace commbound {

/// Upper bound on Grothendieck's constant K_G.
inline constexpr double kGrothendieckUpper = 1.7823;
inline constexpr std::size_t kDefaultEnumerationCap = 24;

/// Probability distribution over matrix entries.
class DistributionMatrix {
public:
    /// Throws ArgumentError on negative entries or total mass off 1 by > 1e-12.
    explicit DistributionMatrix(RealMatrix p);
    static DistributionMatrix uniform(std::size_t rows, std::size_t cols);

    std::size_t rows() const { return p_.rows(); }
    std::size_t cols() const { return p_.cols(); }
    double operator()(std::size_t r, std::size_t c) const { return p_(r, c); }
    const RealMatrix& matrix() const { return p_; }

private:
    RealMatrix p_;
};

/// Worker count for enumerations: COMMBOUND_THREADS if set, else hardware.
std::size_t worker_threads();

/// disc_P(A) = max over row set x and column set y of |x^T (A o P) y|.
/// Enumerates subsets of the smaller side; throws ResourceError when that
/// side exceeds the cap. The result does not depend on the thread count.
double discrepancy(const SignMatrix& a, const DistributionMatrix& p,
                   std::size_t cap = kDefaultEnumerationCap);

struct ShaltielReport {
    double normalized_norm = 0.0;  // ||A|| / sqrt(size)
    double lhs = 0.0;              // normalized_norm^3 / 108
    double disc = 0.0;             // disc_U(A)
    bool holds = false;            // lhs <= disc + 1e-9
};

ShaltielReport shaltiel_verify(const SignMatrix& a, std::size_t cap = kDefaultEnumerationCap);

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
};

/// [disc_P(A), K_G disc_P(A)], an enclosure of gamma_2^*(A o P).
Interval gamma2_star_interval(const SignMatrix& a, const DistributionMatrix& p,
                              std::size_t cap = kDefaultEnumerationCap);

struct SpectralDiscCert {
    std::vector<std::size_t> rows;
    std::vector<std::size_t> cols;
    RealMatrix mu;  // distribution on the submatrix
    double r = 0.0;
};

struct SpectralDiscReport {
    double balance = 0.0;      // sum mu o A'
    double signed_norm = 0.0;  // ||A' o mu||
    double abs_norm = 0.0;     // || |A' o mu| ||
    bool balanced = false;
    bool signed_ok = false;    // signed_norm <= r / sqrt(size) + 1e-9
    bool abs_ok = false;       // abs_norm <= (1 + r) / sqrt(size) + 1e-9
    double minimal_r = 0.0;    // least r meeting both norm conditions for this (A', mu)
    bool holds() const { return balanced && signed_ok && abs_ok; }
};

/// Throws ArgumentError on bad index sets or a malformed distribution.
SpectralDiscReport verify_spectral_disc(const SignMatrix& a, const SpectralDiscCert& cert);

struct TraceLowerBound {
    double numerator = 0.0;  // <A,B> - eps ||B||_1
    double trace_lb = 0.0;
    double gamma2_lb = 0.0;
    std::optional<double> qcc_main_term;  // log2(gamma2_lb), absent when gamma2_lb <= 0
    bool applicable = false;
};

/// Dual lower bound on the eps-approximate trace norm from a witness B.
/// Throws ArgumentError on dimension mismatch or ||B|| = 0.
TraceLowerBound approx_trace_lower(const SignMatrix& a, const RealMatrix& b, double epsilon);
TraceLowerBound approx_trace_lower(const SignMatrix& a, const WitnessMatrix& b, double epsilon);

struct BoundReport {
    std::string theorem;
    std::optional<double> main_term;
    std::vector<std::pair<std::string, double>> intermediates;
    std::vector<std::string> warnings;
    bool applicable = false;
    std::string reason;

    std::optional<double> intermediate(const std::string& name) const;
};

/// deg_{eps0}(f) * log2(sqrt(size(g)) / ||g||) for strongly balanced g.
BoundReport sherstov_bound(const BoolFunction& f, const SignMatrix& g, double epsilon0);

/// (1/3) deg_{1/3}(f) (log2(1/disc_U(g)) - 7).
BoundReport disc_bound(const BoolFunction& f, const SignMatrix& g,
                       std::size_t cap = kDefaultEnumerationCap);

/// deg_{eps0}(f), provided K_G disc_mu(g) <= deg_{eps0}(f) / (2 e n).
/// Throws PreconditionError unless mu is balanced with respect to g.
BoundReport shizhu_bound(const BoolFunction& f, const SignMatrix& g, const DistributionMatrix& mu,
                         double epsilon0, std::size_t cap = kDefaultEnumerationCap);

}  // namespace commbound
