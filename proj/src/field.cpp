#include "aptring/field.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <ostream>
#include <sstream>

namespace aptring {

Grid::Grid(int n_samples, RingGeometry g) : N(n_samples), geom(g) {
    if (N < 16) {
        throw ParamDomainError("grid needs at least 16 samples, got " + std::to_string(N));
    }
    geom.validate();
}

double Grid::dx() const { return 2.0 * std::numbers::pi * geom.R / static_cast<double>(N); }

double Grid::x(int j) const { return static_cast<double>(j) * dx(); }

bool Grid::operator==(const Grid& other) const {
    return N == other.N && geom.R == other.geom.R;
}

FieldState::FieldState(Grid g)
    : grid(g),
      T1(static_cast<std::size_t>(g.N), 0.0),
      T2(static_cast<std::size_t>(g.N), 0.0) {}

void FieldState::validate() const {
    const auto n = static_cast<std::size_t>(grid.N);
    if (T1.size() != n || T2.size() != n) {
        throw ParamDomainError("field arrays do not match the grid size");
    }
    for (std::size_t j = 0; j < n; ++j) {
        if (!std::isfinite(T1[j]) || !std::isfinite(T2[j])) {
            throw NumericalError("non-finite field value at sample " + std::to_string(j));
        }
    }
}

namespace {

FieldState harmonic_field(const Grid& grid, int n, double A, double T0,
                          double phase2, double sign2) {
    FieldState f(grid);
    f.T0 = T0;
    const double k = static_cast<double>(n) / grid.geom.R;
    for (int j = 0; j < grid.N; ++j) {
        const double arg = k * grid.x(j);
        f.T1[j] = A * std::cos(arg);
        f.T2[j] = sign2 * A * std::cos(arg - phase2);
    }
    return f;
}

} // namespace

FieldState cos_cos_field(const Grid& grid, int n, double A, double T0) {
    return harmonic_field(grid, n, A, T0, 0.0, 1.0);
}

FieldState cos_sin_field(const Grid& grid, int n, double A, double T0) {
    return harmonic_field(grid, n, A, T0, 0.5 * std::numbers::pi, 1.0);
}

FieldState cos_negsin_field(const Grid& grid, int n, double A, double T0) {
    return harmonic_field(grid, n, A, T0, 0.5 * std::numbers::pi, -1.0);
}

std::string format_float(double value) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.16e", value);
    return buf;
}

void write_snapshot(std::ostream& out, const FieldState& state) {
    out << "# t_s=" << format_float(state.time) << " T0_K=" << format_float(state.T0)
        << "\n";
    out << "x_mm,T1_K,T2_K\n";
    for (int j = 0; j < state.grid.N; ++j) {
        out << format_float(state.grid.x(j)) << ',' << format_float(state.T1[j]) << ','
            << format_float(state.T2[j]) << '\n';
    }
}

void write_snapshot_file(const std::string& path, const FieldState& state) {
    std::ofstream f(path);
    if (!f) throw ConfigError("cannot open `" + path + "` for writing");
    write_snapshot(f, state);
}

FieldState read_snapshot(std::istream& in, const RingGeometry& geom,
                         const std::string& origin) {
    std::string line;
    double t = 0.0, T0 = 0.0;
    std::vector<double> xs, t1, t2;
    bool saw_columns = false;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        if (line[0] == '#') {
            std::sscanf(line.c_str(), "# t_s=%lf T0_K=%lf", &t, &T0);
            continue;
        }
        if (!saw_columns) {
            if (line.rfind("x_mm,T1_K,T2_K", 0) != 0) {
                throw ConfigError(origin + ":" + std::to_string(lineno) +
                                  ": expected header `x_mm,T1_K,T2_K`");
            }
            saw_columns = true;
            continue;
        }
        double x, a, b;
        if (std::sscanf(line.c_str(), "%lf,%lf,%lf", &x, &a, &b) != 3) {
            throw ConfigError(origin + ":" + std::to_string(lineno) + ": bad sample row");
        }
        xs.push_back(x);
        t1.push_back(a);
        t2.push_back(b);
    }
    if (xs.size() < 16) {
        throw ConfigError(origin + ": snapshot has fewer than 16 samples");
    }
    Grid grid(static_cast<int>(xs.size()), geom);
    const double dx = grid.dx();
    for (std::size_t j = 0; j < xs.size(); ++j) {
        if (std::abs(xs[j] - static_cast<double>(j) * dx) > 1e-9 * geom.R) {
            throw ConfigError(origin + ": sample abscissae do not match a uniform ring grid of radius " +
                              std::to_string(geom.R) + " mm");
        }
    }
    FieldState f(grid);
    f.T1 = std::move(t1);
    f.T2 = std::move(t2);
    f.time = t;
    f.T0 = T0;
    f.validate();
    return f;
}

FieldState read_snapshot_file(const std::string& path, const RingGeometry& geom) {
    std::ifstream f(path);
    if (!f) throw ConfigError("cannot open snapshot file `" + path + "`");
    return read_snapshot(f, geom, path);
}

} // namespace aptring
