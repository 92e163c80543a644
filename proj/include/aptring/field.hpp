#ifndef APTRING_FIELD_HPP
#define APTRING_FIELD_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "aptring/params.hpp"

namespace aptring {

/// Uniform periodic grid on the inner edge of a ring, x_j = j * dx,
/// dx = 2 pi R / N. Requires N >= 16.
struct Grid {
    int N;
    RingGeometry geom;

    Grid(int n_samples, RingGeometry g);

    double dx() const;
    double x(int j) const;
    bool operator==(const Grid& other) const;
};

/// Sampled temperature deviations of both rings at one instant.
/// T1/T2 hold deviations from the reference temperature T0.
struct FieldState {
    Grid grid;
    std::vector<double> T1;  // [K]
    std::vector<double> T2;  // [K]
    double time = 0.0;       // [s]
    double T0 = 0.0;         // reference [K]

    explicit FieldState(Grid g);
    void validate() const;  // equal lengths, finite values
};

/// T1 = T2 = A cos(n x / R).
FieldState cos_cos_field(const Grid& grid, int n, double A, double T0 = 0.0);

/// T1 = A cos(n x / R), T2 = A sin(n x / R).
FieldState cos_sin_field(const Grid& grid, int n, double A, double T0 = 0.0);

/// T1 = A cos(n x / R), T2 = -A sin(n x / R); the pair that rides rigidly
/// at the coalescence speed.
FieldState cos_negsin_field(const Grid& grid, int n, double A, double T0 = 0.0);

// Snapshot CSV: one `# t_s=... T0_K=...` header line, then
// `x_mm,T1_K,T2_K` rows at 17 significant digits.
void write_snapshot(std::ostream& out, const FieldState& state);
void write_snapshot_file(const std::string& path, const FieldState& state);
FieldState read_snapshot(std::istream& in, const RingGeometry& geom,
                         const std::string& origin);
FieldState read_snapshot_file(const std::string& path, const RingGeometry& geom);

/// 17-significant-digit scientific notation used by every CSV emitter.
std::string format_float(double value);

} // namespace aptring

#endif
