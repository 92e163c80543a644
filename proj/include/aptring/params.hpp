#ifndef APTRING_PARAMS_HPP
#define APTRING_PARAMS_HPP

#include <map>
#include <string>
#include <utility>

#include "aptring/errors.hpp"

namespace aptring {

/// Material and interface constants for the two-ring heat system.
///
/// Stored in the internal mm-kg-s-K unit system. Public constructors take SI
/// and convert once at the boundary; nothing downstream converts again.
struct PhysicalParams {
    double D;    // diffusivity [mm^2/s]
    double rho;  // density [kg/mm^3]
    double c;    // heat capacity [mm^2/(s^2 K)]
    double k_i;  // interface conductivity [kg mm/(s^3 K)]
    double d;    // interface thickness [mm]
    double b;    // ring thickness [mm]

    /// Build from SI inputs: m^2/s, kg/m^3, J/(kg K), W/(m K), m, m.
    static PhysicalParams from_si(double D_m2_per_s, double rho_kg_per_m3,
                                  double c_J_per_kgK, double k_i_W_per_mK,
                                  double d_m, double b_m);

    /// Throws ParamDomainError unless every field is strictly positive and finite.
    void validate() const;
};

/// Ring geometry. deltaR and anything built on it is metadata only; the
/// dynamics live on the inner edge.
struct RingGeometry {
    double R;       // inner radius [mm]
    double deltaR;  // radial width [mm], unused by the dynamics

    double circumference() const;  // 2*pi*R [mm]

    static RingGeometry from_si(double R_m, double deltaR_m = 0.0);
    void validate() const;  // requires R > 0
};

/// Discrete ring harmonic: nonzero signed mode number and its wavenumber n/R.
struct ModeSpec {
    int n;         // mode number, n != 0
    double kappa;  // wavenumber n/R [1/mm]
};

ModeSpec make_mode(int n, const RingGeometry& geom);

/// Heat exchange rate between the rings, h_c = k_i/(d rho c b) [1/s].
double derive_hc(const PhysicalParams& p);

/// Interface exchange coefficient h = k_i/d [kg/(s^3 K)].
double derive_h(const PhysicalParams& p);

/// Tangential speed at which the two modal eigenvectors coalesce: h_c/|kappa|.
/// kappa = 0 has no such point and is a domain error.
double v_ep(double h_c, double kappa);

/// Dimensionless coupling group h_c R^2 / (D n^2).
double epsilon_of(const PhysicalParams& p, double R, int n);

/// Decay-rate multiplier lambda = 1 + 1/epsilon; lambda*h_c = h_c + kappa^2 D.
double lambda_of(const PhysicalParams& p, double R, int n);

/// Dimensionless coordinates (z, tau) = (sqrt(h_c(lambda-1)/D) x, h_c t).
/// Requires lambda > 1.
std::pair<double, double> nondimensionalize(double x, double t,
                                            const PhysicalParams& p,
                                            double lambda);

// ---------------------------------------------------------------------------
// key = value configuration text format
//
// Line-oriented UTF-8: blank lines and `#` comments ignored, one `key = value`
// per line. Unit conventions are documented per key in the file header as
// `# key  unit` comments. Unknown and duplicate keys are errors.
// ---------------------------------------------------------------------------

using KeyValues = std::map<std::string, std::string>;

KeyValues parse_key_value_file(const std::string& path);
KeyValues parse_key_value_text(const std::string& text, const std::string& origin);

double get_double(const KeyValues& kv, const std::string& key);
double get_double_or(const KeyValues& kv, const std::string& key, double fallback);
long get_long(const KeyValues& kv, const std::string& key);

/// Material keys, SI units: D [m^2/s], rho [kg/m^3], c [J/(kg K)],
/// k_i [W/(m K)], d [m], b [m]. Missing key -> ConfigError.
PhysicalParams physical_params_from_config(const KeyValues& kv);

/// Rejects keys outside `allowed`. `what` names the file kind for the message.
void validate_keys(const KeyValues& kv, const std::map<std::string, int>& allowed,
                   const std::string& what);

} // namespace aptring

#endif
